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

#include "spinsearch/mq_algebra.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <string>

namespace spinsearch {

namespace {

int popcount(Index k) { return std::popcount(static_cast<unsigned long long>(k)); }

Operator zero_order_part(const Operator &rho, bool keep_zero_quantum) {
  const Index dim = rho.rows();
  qubit_count(dim);
  Operator out = Operator::Zero(dim, dim);
  for (Index k = 0; k < dim; ++k) {
    for (Index j = 0; j < dim; ++j) {
      const bool keep = keep_zero_quantum ? coherence_order(j, k) == 0 : j == k;
      if (keep) out(j, k) = rho(j, k);
    }
  }
  return out;
}

Operator projector(Index k, Index dim) {
  Operator d = Operator::Zero(dim, dim);
  d(k, k) = 1.0;
  return d;
}

Operator y_rotation(int n) {
  return expm_unitary(total_op(SpinSystem(n), Axis::Y), kPi / 2);
}

}  // namespace

int coherence_order(Index j, Index k) { return popcount(k) - popcount(j); }

double magnetic_number(Index k, int n) { return 0.5 * (n - 2 * popcount(k)); }

const Operator &CoherenceDecomposition::order(int m) const {
  auto it = components.find(m);
  if (it == components.end()) {
    throw IndexError("coherence order " + std::to_string(m) + " outside [-n, n]");
  }
  return it->second;
}

Operator CoherenceDecomposition::reconstruct() const {
  Operator out = Operator::Zero(components.begin()->second.rows(),
                                components.begin()->second.cols());
  for (const auto &[m, part] : components) out += part;
  return out;
}

std::vector<int> CoherenceDecomposition::support(double tol) const {
  std::vector<int> out;
  for (const auto &[m, part] : components) {
    if (max_abs(part) > tol) out.push_back(m);
  }
  return out;
}

CoherenceDecomposition decompose_orders(const Operator &a, const SpinSystem &system) {
  if (a.rows() != system.dim() || a.cols() != system.dim()) {
    throw DomainError("operator dimension does not match the spin system");
  }
  const int n = system.n_total();
  CoherenceDecomposition out;
  out.n = n;
  for (int m = -n; m <= n; ++m) out.components[m] = Operator::Zero(a.rows(), a.cols());
  for (Index k = 0; k < a.cols(); ++k) {
    for (Index j = 0; j < a.rows(); ++j) {
      out.components[coherence_order(j, k)](j, k) = a(j, k);
    }
  }
  return out;
}

CoherenceDecomposition decompose_orders(const Operator &a) {
  return decompose_orders(a, SpinSystem(qubit_count(a.rows())));
}

Operator gradient_crush(const Operator &rho) { return zero_order_part(rho, true); }

Operator zq_dephase(const Operator &rho) { return zero_order_part(rho, false); }

double nonzero_order_residual(const Operator &a) {
  return max_abs(a - gradient_crush(a));
}

Index qubit_mask(const std::vector<int> &qubits, int n) {
  Index mask = 0;
  for (int k : qubits) {
    if (k < 1 || k > n) throw IndexError("qubit index out of range");
    const Index bit = Index{1} << (n - k);
    if (mask & bit) throw DomainError("repeated qubit in set");
    mask |= bit;
  }
  return mask;
}

Operator LomsoBasis::x_product(Index l) const {
  return conjugate(y_rotation(n), z.at(static_cast<std::size_t>(l)));
}

Operator LomsoBasis::x_product_from_projectors(Index l) const {
  const Index dim = size();
  Operator diag = Operator::Zero(dim, dim);
  for (Index j = 0; j < dim; ++j) diag(j, j) = a_inv(l, j);
  return conjugate(y_rotation(n), diag);
}

Operator LomsoBasis::projector_from_basis(Index k) const {
  const Index dim = size();
  Operator out = Operator::Zero(dim, dim);
  for (Index l = 0; l < dim; ++l) out += a(k, l) * z[static_cast<std::size_t>(l)];
  return out;
}

Operator LomsoBasis::operator_function(const Eigen::VectorXd &b) const {
  const Index dim = size();
  if (b.size() != dim) throw DomainError("coefficient vector must have 2^n entries");
  // sum_l b_l sum_j (A^-1)_lj D_j is diagonal with entries (A^-T b)_j.
  const Eigen::VectorXd weights = a_inv.transpose() * b;
  Operator diag = Operator::Zero(dim, dim);
  for (Index j = 0; j < dim; ++j) diag(j, j) = weights(j);
  return conjugate(y_rotation(n), diag);
}

LomsoBasis lomso_transform(int n) {
  if (n < 1 || n > 8) throw DomainError("LOMSO basis supports 1 <= n <= 8");
  const SpinSystem system(n);
  const Index dim = system.dim();
  LomsoBasis out;
  out.n = n;
  out.z.reserve(static_cast<std::size_t>(dim));
  for (Index l = 0; l < dim; ++l) {
    Operator zl = identity(dim);
    for (int k = 1; k <= n; ++k) {
      if ((l >> (n - k)) & 1) zl = zl * spin_op(system, k, Axis::Z);
    }
    if (l != 0) zl *= std::ldexp(1.0, popcount(l) - 1);
    out.z.push_back(std::move(zl));
  }
  out.a.resize(dim, dim);
  for (Index k = 0; k < dim; ++k) {
    for (Index l = 0; l < dim; ++l) {
      const Operator &zl = out.z[static_cast<std::size_t>(l)];
      // Tr(D_k Z_l) / Tr(Z_l^2); the Z_l are diagonal and mutually orthogonal.
      out.a(k, l) = zl(k, k).real() / hs_inner(zl, zl).real();
    }
  }
  out.a_inv = out.a.inverse();
  return out;
}

Operator phase_cycle_project(const Operator &f_op, int n1, int target_order) {
  const int n = qubit_count(f_op.rows());
  if (n1 < 2 * n + 1) {
    throw AliasingError("phase cycle of " + std::to_string(n1) +
                        " steps aliases coherence orders; need N1 >= " +
                        std::to_string(2 * n + 1));
  }
  const Operator fz = total_op(SpinSystem(n), Axis::Z);
  Operator out = Operator::Zero(f_op.rows(), f_op.cols());
  for (int k = 0; k < n1; ++k) {
    const double phi = 2.0 * kPi * k / n1;
    const Operator rot = expm_unitary(fz, phi);
    out += std::exp(Complex(0.0, phi * target_order)) * conjugate(rot, f_op);
  }
  return out / static_cast<double>(n1);
}

Operator mq_generator(const std::vector<int> &qubits, int n, GeneratorVariant variant) {
  if (qubits.empty()) throw DomainError("generator needs at least one qubit");
  const SpinSystem system(n);
  qubit_mask(qubits, n);  // validates the set
  const Index dim = system.dim();
  Operator xl = identity(dim) * std::ldexp(1.0, static_cast<int>(qubits.size()) - 1);
  for (int k : qubits) xl = xl * spin_op(system, k, Axis::X);
  const Operator d0 = projector(0, dim);
  const Operator dn = projector(dim - 1, dim);
  if (variant == GeneratorVariant::Commutator) return kI * commutator(xl, d0 - dn);
  return anticommutator(xl, d0 + dn);
}

}  // namespace spinsearch
