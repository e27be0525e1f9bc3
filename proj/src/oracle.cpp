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

#include "spinsearch/oracle.hpp"

#include <string>

namespace spinsearch {

MarkedState::MarkedState(Index s, int n) : s_(s), n_(n) {
  signs_ = sign_vector(s, n);
}

MarkedState MarkedState::from_signs(const std::vector<int> &signs) {
  return MarkedState(index_from_signs(signs), static_cast<int>(signs.size()));
}

void OracleSpec::validate(const SpinSystem &system) const {
  if (system.n_work() != marked.n()) {
    throw ConfigurationError("marked state and spin system disagree on n");
  }
  if (mode == OracleMode::ExplicitUf && system.n_aux() != 2) {
    throw ConfigurationError("explicit U_f needs two auxiliary qubits");
  }
  if (mode == OracleMode::SelectiveCs && system.n_aux() != 0) {
    throw ConfigurationError("selective C_s runs without auxiliary qubits");
  }
}

std::vector<int> sign_vector(Index s, int n) {
  if (n < 1 || n > 30) throw DomainError("qubit count out of range");
  if (s < 0 || s >= (Index{1} << n)) {
    throw DomainError("marked index " + std::to_string(s) + " outside [0, 2^" +
                      std::to_string(n) + ")");
  }
  std::vector<int> signs(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const bool bit = (s >> (n - k)) & 1;
    signs[static_cast<std::size_t>(k - 1)] = bit ? -1 : 1;
  }
  return signs;
}

Index index_from_signs(const std::vector<int> &signs) {
  if (signs.empty()) throw DomainError("empty sign vector");
  Index s = 0;
  for (int a : signs) {
    if (a != 1 && a != -1) throw DomainError("sign entries must be +1 or -1");
    s = (s << 1) | (a == -1 ? 1 : 0);
  }
  return s;
}

Operator diag_projector(const MarkedState &marked) {
  Operator out = Operator::Identity(1, 1);
  for (int a : marked.signs()) {
    Operator factor = Operator::Zero(2, 2);
    factor(0, 0) = 0.5 + 0.5 * a;
    factor(1, 1) = 0.5 - 0.5 * a;
    out = kron(out, factor);
  }
  return out;
}

Operator selective_phase(const MarkedState &marked, double theta) {
  Operator out = identity(marked.dim());
  out(marked.index(), marked.index()) = std::exp(Complex(0.0, -theta));
  return out;
}

Operator oracle_uf(const MarkedState &marked, const SpinSystem &system) {
  OracleSpec{marked, 0.0, OracleMode::ExplicitUf}.validate(system);
  const Index dim = system.dim();
  Operator out = Operator::Zero(dim, dim);
  for (Index x = 0; x < system.work_dim(); ++x) {
    const int f = x == marked.index() ? 1 : 0;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const Index from = 4 * x + 2 * a + b;
        const Index to = 4 * x + 2 * (a ^ f) + b;
        out(to, from) = 1.0;
      }
    }
  }
  return out;
}

Operator conditional_phase(const SpinSystem &system, double theta) {
  if (system.n_aux() != 2) {
    throw ConfigurationError("V_S acts on two auxiliary qubits");
  }
  Operator out = identity(system.dim());
  const Complex phase = std::exp(Complex(0.0, -theta));
  for (Index x = 0; x < system.work_dim(); ++x) out(4 * x + 3, 4 * x + 3) = phase;
  return out;
}

Operator oracle_uo(const MarkedState &marked, const SpinSystem &system,
                   double theta) {
  const Operator uf = oracle_uf(marked, system);
  return uf * conditional_phase(system, theta) * uf;
}

Operator aux_pure_state(const SpinSystem &system) {
  if (system.n_aux() != 2) {
    throw ConfigurationError("auxiliary state needs two auxiliary qubits");
  }
  Operator out = Operator::Zero(4, 4);
  out(1, 1) = 1.0;  // |a=0, b=1>
  return out;
}

Operator aux_sector(const Operator &op, const SpinSystem &system, int a, int b) {
  if (system.n_aux() != 2) {
    throw ConfigurationError("no auxiliary sector without auxiliary qubits");
  }
  const Index n = system.work_dim();
  const Index offset = 2 * a + b;
  Operator out(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) out(i, j) = op(4 * i + offset, 4 * j + offset);
  }
  return out;
}

Operator oracle_x_rotation(const MarkedState &marked, double theta) {
  const SpinSystem system(marked.n());
  Operator out = identity(system.dim());
  for (int k = 1; k <= marked.n(); ++k) {
    out = out * expm_unitary(spin_op(system, k, Axis::X), theta * marked.sign(k));
  }
  return out;
}

Operator x_projector(const MarkedState &marked) {
  const SpinSystem system(marked.n());
  const Operator ry = expm_unitary(total_op(system, Axis::Y), kPi / 2);
  return conjugate(ry, diag_projector(marked));
}

}  // namespace spinsearch
