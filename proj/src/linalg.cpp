// Copyright 2026 The spinsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinsearch/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

namespace spinsearch {

namespace {

Operator single_spin(Axis axis) {
  Operator op = Operator::Zero(2, 2);
  switch (axis) {
    case Axis::X:
      op(0, 1) = 0.5;
      op(1, 0) = 0.5;
      break;
    case Axis::Y:
      op(0, 1) = Complex(0.0, -0.5);
      op(1, 0) = Complex(0.0, 0.5);
      break;
    case Axis::Z:
      op(0, 0) = 0.5;
      op(1, 1) = -0.5;
      break;
    case Axis::Plus:
      op(0, 1) = 1.0;
      break;
    case Axis::Minus:
      op(1, 0) = 1.0;
      break;
  }
  return op;
}

}  // namespace

SpinSystem::SpinSystem(int n_work, int n_aux) : n_work_(n_work), n_aux_(n_aux) {
  if (n_work < 1) {
    throw ConfigurationError("spin system needs at least one work qubit");
  }
  if (n_aux != 0 && n_aux != 2) {
    throw ConfigurationError("auxiliary qubit count must be 0 or 2, got " +
                             std::to_string(n_aux));
  }
  if (n_work + n_aux > 14) {
    throw ConfigurationError("dense representation limited to 14 qubits");
  }
}

Operator identity(Index dim) { return Operator::Identity(dim, dim); }

Operator kron(const Operator &a, const Operator &b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Operator spin_op(const SpinSystem &system, int k, Axis axis) {
  if (k < 1 || k > system.n_total()) {
    throw IndexError("qubit index " + std::to_string(k) + " outside [1, " +
                     std::to_string(system.n_total()) + "]");
  }
  const Index left = Index{1} << (k - 1);
  const Index right = Index{1} << (system.n_total() - k);
  // I_left (x) op (x) I_right without materialising the identities.
  const Operator op = single_spin(axis);
  Operator out = Operator::Zero(system.dim(), system.dim());
  for (Index l = 0; l < left; ++l) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        if (op(a, b) == Complex(0.0)) continue;
        for (Index r = 0; r < right; ++r) {
          out((l * 2 + a) * right + r, (l * 2 + b) * right + r) = op(a, b);
        }
      }
    }
  }
  return out;
}

Operator total_op(const SpinSystem &system, Axis axis) {
  if (axis == Axis::Plus || axis == Axis::Minus) {
    throw DomainError("total_op is defined for x, y, z only");
  }
  Operator out = Operator::Zero(system.dim(), system.dim());
  for (int k = 1; k <= system.n_work(); ++k) out += spin_op(system, k, axis);
  return out;
}

Operator dagger(const Operator &a) { return a.adjoint(); }

Operator commutator(const Operator &a, const Operator &b) {
  return a * b - b * a;
}

Operator anticommutator(const Operator &a, const Operator &b) {
  return a * b + b * a;
}

Operator conjugate(const Operator &u, const Operator &a) {
  return u * a * u.adjoint();
}

Complex hs_inner(const Operator &a, const Operator &b) {
  return (a.adjoint() * b).trace();
}

double max_abs(const Operator &a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double spectral_norm(const Operator &a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Operator> svd(a);
  return svd.singularValues()(0);
}

double hermiticity_residual(const Operator &a) {
  return max_abs(a - a.adjoint());
}

double unitarity_residual(const Operator &u) {
  return max_abs(u.adjoint() * u - identity(u.rows()));
}

bool is_diagonal(const Operator &a, double tol) {
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (i != j && std::abs(a(i, j)) > tol) return false;
    }
  }
  return true;
}

int qubit_count(Index dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw DomainError("dimension " + std::to_string(dim) +
                      " is not a power of two");
  }
  int d = 0;
  while ((Index{1} << d) < dim) ++d;
  return d;
}

Operator expm_unitary(const Operator &h, double t) {
  if (h.rows() != h.cols()) throw ContractViolation("generator is not square");
  const double scale = std::max(1.0, max_abs(h));
  if (hermiticity_residual(h) > 1e-10 * scale) {
    throw ContractViolation("expm_unitary requires a Hermitian generator");
  }
  const Index dim = h.rows();
  if (is_diagonal(h)) {
    Operator out = Operator::Zero(dim, dim);
    for (Index i = 0; i < dim; ++i) {
      out(i, i) = std::exp(Complex(0.0, -h(i, i).real() * t));
    }
    return out;
  }
  const Operator herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> eig(herm);
  const auto &vals = eig.eigenvalues();
  const Operator &vecs = eig.eigenvectors();
  Eigen::VectorXcd phases(dim);
  for (Index i = 0; i < dim; ++i) {
    phases(i) = std::exp(Complex(0.0, -vals(i) * t));
  }
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

Operator matrix_log_skew(const Operator &u, double branch_tol) {
  if (u.rows() != u.cols()) throw ContractViolation("matrix is not square");
  const Index dim = u.rows();
  if (unitarity_residual(u) > 1e-8) {
    throw ContractViolation("matrix_log_skew expects a unitary matrix");
  }
  if (is_diagonal(u)) {
    Operator out = Operator::Zero(dim, dim);
    for (Index i = 0; i < dim; ++i) {
      const double phase = std::arg(u(i, i));
      if (kPi - std::abs(phase) < branch_tol) {
        throw BranchAmbiguityError("eigenphase at the branch cut (pi)");
      }
      out(i, i) = phase;
    }
    return out;
  }
  Eigen::ComplexSchur<Operator> schur(u);
  const Operator &q = schur.matrixU();
  const Operator &tri = schur.matrixT();
  Eigen::VectorXcd phases(dim);
  for (Index i = 0; i < dim; ++i) {
    const double phase = std::arg(tri(i, i));
    if (kPi - std::abs(phase) < branch_tol) {
      throw BranchAmbiguityError("eigenphase at the branch cut (pi)");
    }
    phases(i) = phase;
  }
  Operator h = q * phases.asDiagonal() * q.adjoint();
  return 0.5 * (h + h.adjoint());
}

}  // namespace spinsearch
