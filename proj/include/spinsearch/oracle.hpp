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

#include <vector>

#include "spinsearch/linalg.hpp"

namespace spinsearch {

/** U_f applications consumed by one U_o(theta) = U_f V_S(theta) U_f. */
constexpr int kOracleCallsPerUo = 2;

/**
 * The unique solution s of an n-qubit search problem together with its sign
 * vector: a_k = +1 when bit k of s (qubit 1 most significant) is 0, -1 when
 * it is 1.
 */
class MarkedState {
 public:
  MarkedState(Index s, int n);
  static MarkedState from_signs(const std::vector<int> &signs);

  Index index() const { return s_; }
  int n() const { return n_; }
  Index dim() const { return Index{1} << n_; }
  const std::vector<int> &signs() const { return signs_; }
  /** a_k for 1-based qubit k. */
  int sign(int k) const { return signs_.at(static_cast<std::size_t>(k - 1)); }

  bool operator==(const MarkedState &) const = default;

 private:
  Index s_;
  int n_;
  std::vector<int> signs_;
};

enum class OracleMode { ExplicitUf, SelectiveCs };

/** How an oracle phase shift is realised. Explicit U_f needs two auxiliaries. */
struct OracleSpec {
  MarkedState marked;
  double theta = 0.0;
  OracleMode mode = OracleMode::SelectiveCs;

  /** Throws ConfigurationError when the mode does not fit the system. */
  void validate(const SpinSystem &system) const;
};

std::vector<int> sign_vector(Index s, int n);
Index index_from_signs(const std::vector<int> &signs);

/** D_s as the tensor product of (E/2 + a_k I_kz) factors. */
Operator diag_projector(const MarkedState &marked);

/** C_s(theta) = exp(-i theta D_s) = E + (exp(-i theta) - 1) D_s. */
Operator selective_phase(const MarkedState &marked, double theta);

/** |x>|a>|b> -> |x>|a xor f(x)>|b> on a system with two auxiliaries. */
Operator oracle_uf(const MarkedState &marked, const SpinSystem &system);

/** V_S(theta): phase exp(-i theta) on auxiliary states with a = b = 1. */
Operator conditional_phase(const SpinSystem &system, double theta);

/** U_o(theta) = U_f V_S(theta) U_f. Consumes kOracleCallsPerUo calls. */
Operator oracle_uo(const MarkedState &marked, const SpinSystem &system,
                   double theta);

/** |0><0| (x) |1><1| on the two-qubit auxiliary factor (4x4). */
Operator aux_pure_state(const SpinSystem &system);

/** Block of a full-system operator between auxiliary basis states |ab>. */
Operator aux_sector(const Operator &op, const SpinSystem &system, int a, int b);

/** U_ox(theta) = prod_k exp(-i theta a_k I_kx) over the work qubits. */
Operator oracle_x_rotation(const MarkedState &marked, double theta);

/** D_s^x = exp(-i pi/2 F_y) D_s exp(i pi/2 F_y) = (x)_k (E/2 + a_k I_kx). */
Operator x_projector(const MarkedState &marked);

}  // namespace spinsearch
