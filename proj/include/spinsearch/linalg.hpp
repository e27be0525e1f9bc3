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

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "spinsearch/errors.hpp"

namespace spinsearch {

using Complex = std::complex<double>;

/**
 * Dense complex square matrix of dimension 2^d. Carries density operators,
 * Hamiltonians and propagators alike.
 */
using Operator = Eigen::MatrixXcd;
using Index = Eigen::Index;

constexpr double kPi = 3.14159265358979323846;
inline const Complex kI{0.0, 1.0};

/** Single-spin operator selector. Plus/Minus are I^± = I_x ± i I_y. */
enum class Axis { X, Y, Z, Plus, Minus };

/**
 * Qubit bookkeeping for a register of work qubits optionally followed by two
 * auxiliary qubits.
 *
 * Qubit 1 is the most significant tensor factor; work qubits occupy factors
 * 1..n_work and auxiliary qubits the trailing factors, so the computational
 * basis index of |x>|a>|b> is 4x + 2a + b when two auxiliaries are present.
 */
class SpinSystem {
 public:
  explicit SpinSystem(int n_work, int n_aux = 0);

  int n_work() const { return n_work_; }
  int n_aux() const { return n_aux_; }
  int n_total() const { return n_work_ + n_aux_; }
  Index dim() const { return Index{1} << n_total(); }
  Index work_dim() const { return Index{1} << n_work_; }
  Index aux_dim() const { return Index{1} << n_aux_; }

  bool operator==(const SpinSystem &) const = default;

 private:
  int n_work_;
  int n_aux_;
};

/** Spin-1/2 operator of qubit k (1-based, hbar = 1) embedded in the system. */
Operator spin_op(const SpinSystem &system, int k, Axis axis);

/** F_mu = sum of I_k,mu over the work qubits. axis must be X, Y or Z. */
Operator total_op(const SpinSystem &system, Axis axis);

Operator identity(Index dim);
Operator kron(const Operator &a, const Operator &b);
Operator dagger(const Operator &a);
Operator commutator(const Operator &a, const Operator &b);
Operator anticommutator(const Operator &a, const Operator &b);

/** u a u^dagger */
Operator conjugate(const Operator &u, const Operator &a);

/** Hilbert-Schmidt inner product Tr(a^dagger b). */
Complex hs_inner(const Operator &a, const Operator &b);

double max_abs(const Operator &a);
double spectral_norm(const Operator &a);

/** max |A - A^dagger| entrywise. */
double hermiticity_residual(const Operator &a);
/** max |U^dagger U - E| entrywise. */
double unitarity_residual(const Operator &u);

bool is_diagonal(const Operator &a, double tol = 0.0);

/** log2 of a power-of-two dimension; throws DomainError otherwise. */
int qubit_count(Index dim);

/**
 * exp(-i H t) for Hermitian H.
 *
 * Diagonal inputs are exponentiated elementwise; everything else goes through
 * a Hermitian eigendecomposition, so the result is unitary to roundoff.
 * Throws ContractViolation if H is not Hermitian within 1e-10 (scaled by
 * max(1, max|H|)).
 */
Operator expm_unitary(const Operator &h, double t);

/**
 * Hermitian H with U = exp(i H) and eigenphases in (-pi, pi].
 *
 * Uses a complex Schur factorisation, which is diagonal for normal matrices.
 * An eigenphase within branch_tol of pi makes the principal branch ambiguous
 * and raises BranchAmbiguityError.
 */
Operator matrix_log_skew(const Operator &u, double branch_tol = 1e-8);

}  // namespace spinsearch
