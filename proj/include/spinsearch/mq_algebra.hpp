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

#include <map>
#include <vector>

#include "spinsearch/linalg.hpp"

namespace spinsearch {

/** Coherence order of matrix element (j, k): M_j - M_k = popcount(k) - popcount(j). */
int coherence_order(Index j, Index k);

/** Magnetic quantum number M_k = (n - 2 popcount(k)) / 2 of basis state k. */
double magnetic_number(Index k, int n);

/**
 * An operator split into its coherence-order components. All 2n+1 orders are
 * present, including the empty ones.
 */
struct CoherenceDecomposition {
  int n = 0;
  std::map<int, Operator> components;

  const Operator &order(int m) const;
  Operator reconstruct() const;
  /** Orders whose component exceeds tol in max-abs norm. */
  std::vector<int> support(double tol = 1e-12) const;
};

/** Grades every entry of a by its coherence order over all qubits of system. */
CoherenceDecomposition decompose_orders(const Operator &a, const SpinSystem &system);
/** Same, with the qubit count inferred from the dimension. */
CoherenceDecomposition decompose_orders(const Operator &a);

/** Idealised z-gradient: keeps only the zero-quantum part. */
Operator gradient_crush(const Operator &rho);

/** Idealised zero-quantum dephasing: keeps only the diagonal (LOMSO) part. */
Operator zq_dephase(const Operator &rho);

/** max-abs of everything outside order zero. */
double nonzero_order_residual(const Operator &a);

/** Bitmask of a 1-based qubit set, qubit 1 being the most significant bit. */
Index qubit_mask(const std::vector<int> &qubits, int n);

/**
 * Longitudinal-magnetisation/spin-order product basis and its relation to the
 * diagonal projectors.
 *
 * Z_l for a bitmask l is 2^{|l|-1} times the product of I_kz over the qubits in
 * l (Z_0 = E). The transform A satisfies D_k = sum_l A_kl Z_l.
 */
struct LomsoBasis {
  int n = 0;
  std::vector<Operator> z;
  Eigen::MatrixXd a;
  Eigen::MatrixXd a_inv;

  Index size() const { return Index{1} << n; }
  /** exp(-i pi/2 F_y) Z_l exp(i pi/2 F_y). */
  Operator x_product(Index l) const;
  /** X_l assembled from projectors as exp(-i pi/2 F_y)[sum_j (A^-1)_lj D_j](...)^dagger. */
  Operator x_product_from_projectors(Index l) const;
  /** sum_l A_kl Z_l. */
  Operator projector_from_basis(Index k) const;
  /** f = sum_l b_l X_l, built through the projector route. */
  Operator operator_function(const Eigen::VectorXd &b) const;
};

LomsoBasis lomso_transform(int n);

/**
 * Fourier phase-cycle selection of one coherence order:
 * (1/N1) sum_k e^{i phi_k m} exp(-i phi_k F_z) f exp(i phi_k F_z), phi_k = 2 pi k / N1.
 *
 * Throws AliasingError unless N1 >= 2n + 1.
 */
Operator phase_cycle_project(const Operator &f_op, int n1, int target_order);

enum class GeneratorVariant { Commutator, Anticommutator };

/**
 * i[X_l, D_0 - D_{N-1}] (Commutator) or [X_l, D_0 + D_{N-1}]_+ (Anticommutator)
 * for X_l = 2^{l-1} prod_{k in qubits} I_kx. Both carry orders +-l only.
 */
Operator mq_generator(const std::vector<int> &qubits, int n, GeneratorVariant variant);

}  // namespace spinsearch
