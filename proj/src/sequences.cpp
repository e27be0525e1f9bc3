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

#include "spinsearch/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "spinsearch/mq_algebra.hpp"

namespace spinsearch {

namespace {

Operator projector(Index k, Index dim) {
  Operator d = Operator::Zero(dim, dim);
  d(k, k) = 1.0;
  return d;
}

void check_epsilons(const std::vector<double> &epsilons, int n) {
  if (static_cast<int>(epsilons.size()) != n) {
    throw DomainError("need one polarization per work qubit");
  }
  for (double e : epsilons) {
    if (!std::isfinite(e)) throw DomainError("polarizations must be finite");
  }
}

Operator y_pulse(const SpinSystem &system) {
  return expm_unitary(total_op(system, Axis::Y), kPi / 2);
}

// Coefficients of I_kz (per work qubit) in a final deviation state, normalised
// by Tr(I_kz^2) on the work space so that a pure sum c_k I_kz returns c_k.
std::vector<double> iz_coefficients(const Operator &rho, const SpinSystem &system) {
  const double norm = static_cast<double>(system.work_dim()) / 4.0;
  std::vector<double> out;
  for (int k = 1; k <= system.n_work(); ++k) {
    out.push_back(hs_inner(spin_op(system, k, Axis::Z), rho).real() / norm);
  }
  return out;
}

Operator iz_sum(const std::vector<double> &c, const SpinSystem &system) {
  Operator out = Operator::Zero(system.dim(), system.dim());
  for (int k = 1; k <= system.n_work(); ++k) {
    out += c[static_cast<std::size_t>(k - 1)] * spin_op(system, k, Axis::Z);
  }
  return out;
}

// Runs the readout half of the search sequence on a state already conjugated
// by the oracle.
Operator readout_sequence(const Operator &rho, const SpinSystem &system) {
  return zq_dephase(gradient_crush(conjugate(y_pulse(system), rho)));
}

}  // namespace

EnsembleState initial_state(const SpinSystem &system, const std::vector<double> &epsilons,
                            Axis p) {
  if (p != Axis::X && p != Axis::Y && p != Axis::Z) {
    throw DomainError("initial magnetisation axis must be x, y or z");
  }
  check_epsilons(epsilons, system.n_work());
  const SpinSystem work(system.n_work());
  Operator dev = Operator::Zero(work.dim(), work.dim());
  for (int k = 1; k <= work.n_work(); ++k) {
    dev += epsilons[static_cast<std::size_t>(k - 1)] * spin_op(work, k, p);
  }
  EnsembleState out;
  out.system = system;
  out.epsilons = epsilons;
  out.is_deviation = true;
  out.rho = system.n_aux() == 2 ? kron(dev, aux_pure_state(system)) : dev;
  return out;
}

Operator conjugate_selective(const Operator &rho, const MarkedState &marked, double theta) {
  const Operator d = diag_projector(marked);
  if (rho.rows() != d.rows()) throw DomainError("state and marked state disagree on n");
  const double c = 1.0 - std::cos(theta);
  const double s = std::sin(theta);
  return rho - c * anticommutator(rho, d) + kI * s * commutator(rho, d) +
         (c * c + s * s) * d * rho * d;
}

Operator conjugate_multi_selective(const Operator &rho, const std::vector<MarkedState> &markeds,
                                   const std::vector<double> &thetas) {
  if (markeds.size() != thetas.size()) {
    throw DomainError("marked states and phases must pair up");
  }
  std::set<Index> seen;
  for (const auto &m : markeds) {
    if (!seen.insert(m.index()).second) {
      throw DomainError("duplicate marked index " + std::to_string(m.index()));
    }
  }
  const std::size_t count = markeds.size();
  std::vector<Operator> d;
  std::vector<double> c(count), s(count);
  Operator sum_c = Operator::Zero(rho.rows(), rho.cols());
  Operator sum_s = Operator::Zero(rho.rows(), rho.cols());
  for (std::size_t k = 0; k < count; ++k) {
    d.push_back(diag_projector(markeds[k]));
    if (d.back().rows() != rho.rows()) {
      throw DomainError("state and marked state disagree on n");
    }
    c[k] = 1.0 - std::cos(thetas[k]);
    s[k] = std::sin(thetas[k]);
    sum_c += c[k] * d[k];
    sum_s += s[k] * d[k];
  }
  Operator out = rho - anticommutator(rho, sum_c) + kI * commutator(rho, sum_s);
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t l = 0; l < count; ++l) {
      out += (c[k] * c[l] + s[k] * s[l]) * d[k] * rho * d[l];
    }
  }
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t l = k + 1; l < count; ++l) {
      const double w = s[k] * c[l] - s[l] * c[k];
      out += kI * w * (d[k] * rho * d[l] - d[l] * rho * d[k]);
    }
  }
  return out;
}

SearchResult simple_search(const MarkedState &marked, const std::vector<double> &epsilons,
                           double theta, OracleMode mode) {
  const int n = marked.n();
  check_epsilons(epsilons, n);
  for (double e : epsilons) {
    if (e == 0.0) throw DomainError("every polarization must be nonzero");
  }
  const SpinSystem system(n, mode == OracleMode::ExplicitUf ? 2 : 0);
  OracleSpec{marked, theta, mode}.validate(system);

  const EnsembleState start = initial_state(system, epsilons, Axis::Y);
  Operator rho;
  if (mode == OracleMode::ExplicitUf) {
    rho = conjugate(oracle_uo(marked, system, theta), start.rho);
  } else {
    rho = conjugate_selective(start.rho, marked, theta);
  }
  const Operator final_state = readout_sequence(rho, system);

  SearchResult out;
  out.oracle_calls = kOracleCallsPerUo;
  out.per_qubit_signal = iz_coefficients(final_state, system);
  Operator expected = iz_sum(out.per_qubit_signal, system);
  if (system.n_aux() == 2) {
    // The auxiliary pseudo-pure state rides along unchanged.
    const SpinSystem work(n);
    expected = kron(iz_sum(out.per_qubit_signal, work), aux_pure_state(system));
  }
  out.span_residual = max_abs(final_state - expected);

  double eps_max = 0.0;
  for (double e : epsilons) eps_max = std::max(eps_max, std::abs(e));
  const double threshold = kReadoutThreshold * eps_max;
  double min_abs = std::numeric_limits<double>::infinity();
  for (double c : out.per_qubit_signal) min_abs = std::min(min_abs, std::abs(c));
  out.confidence = min_abs / threshold;
  if (min_abs < threshold) {
    throw AmbiguousReadoutError("readout coefficient " + std::to_string(min_abs) +
                                " below ambiguity threshold " + std::to_string(threshold));
  }
  // c_k carries sign(sin theta) eps_k a_k.
  const double orientation = std::sin(theta) >= 0.0 ? 1.0 : -1.0;
  for (int k = 0; k < n; ++k) {
    const double v = out.per_qubit_signal[static_cast<std::size_t>(k)] * orientation *
                     epsilons[static_cast<std::size_t>(k)];
    out.recovered_signs.push_back(v > 0.0 ? 1 : -1);
  }
  out.recovered_s = index_from_signs(out.recovered_signs);

  double num = 0.0, den = 0.0;
  for (int k = 0; k < n; ++k) {
    const double w = epsilons[static_cast<std::size_t>(k)] * out.recovered_signs[static_cast<std::size_t>(k)];
    num += out.per_qubit_signal[static_cast<std::size_t>(k)] * w;
    den += w * w;
  }
  out.measured_prefactor = num / den;
  for (int k = 0; k < n; ++k) {
    const double w = epsilons[static_cast<std::size_t>(k)] * out.recovered_signs[static_cast<std::size_t>(k)];
    out.proportionality_residual =
        std::max(out.proportionality_residual,
                 std::abs(out.per_qubit_signal[static_cast<std::size_t>(k)] -
                          out.measured_prefactor * w));
  }
  const double big_n = static_cast<double>(marked.dim());
  out.nominal_prefactor = 2.0 / big_n;
  out.predicted_prefactor = 2.0 / big_n * std::sin(theta);
  return out;
}

Operator spin_echo_hamiltonian(const MarkedState &marked, int k) {
  const int n = marked.n();
  if (k < 0 || k > n - 1) {
    throw DomainError("spin-echo depth k must lie in [0, n-1]");
  }
  const SpinSystem system(n);
  Operator h = diag_projector(marked);
  for (int step = 1; step <= k; ++step) {
    const int qubit = n - step + 1;
    const Operator flip = expm_unitary(spin_op(system, qubit, Axis::X), kPi);
    h = h + conjugate(flip, h);
  }
  return h;
}

int spin_echo_uo_applications(int k) {
  if (k < 0 || k > 30) throw DomainError("spin-echo depth out of range");
  return 1 << k;
}

EchoSearchSignal echo_search_signal(const MarkedState &marked,
                                    const std::vector<double> &epsilons, int k,
                                    double theta) {
  const int n = marked.n();
  check_epsilons(epsilons, n);
  const SpinSystem system(n);
  const Operator vos = expm_unitary(spin_echo_hamiltonian(marked, k), theta);
  const EnsembleState start = initial_state(system, epsilons, Axis::Y);
  const Operator final_state = readout_sequence(conjugate(vos, start.rho), system);
  EchoSearchSignal out;
  out.k = k;
  out.per_qubit_signal = iz_coefficients(final_state, system);
  out.uo_applications = spin_echo_uo_applications(k);
  out.oracle_calls = out.uo_applications * kOracleCallsPerUo;
  return out;
}

Operator last_projector(int n) {
  const Index dim = Index{1} << n;
  return projector(dim - 1, dim);
}

Operator grover_propagator(const MarkedState &marked, int m) {
  if (m < 0) throw DomainError("iteration count must be non-negative");
  const Index dim = marked.dim();
  const Operator step = expm_unitary(last_projector(marked.n()), kPi) *
                        expm_unitary(x_projector(marked), kPi);
  Operator u = identity(dim);
  for (int i = 0; i < m; ++i) u = step * u;
  return u;
}

Operator grover_iterate(int n, int m) {
  if (m < 0) throw DomainError("iteration count must be non-negative");
  const MarkedState zero(0, n);
  const Operator step =
      expm_unitary(x_projector(zero), kPi) * expm_unitary(diag_projector(zero), kPi);
  Operator g = identity(zero.dim());
  for (int i = 0; i < m; ++i) g = step * g;
  return g;
}

Operator grover_propagator_reexpressed(const MarkedState &marked, int m) {
  const SpinSystem system(marked.n());
  const Operator w = expm_unitary(total_op(system, Axis::Y), kPi / 2) *
                     expm_unitary(total_op(system, Axis::X), kPi / 2) *
                     oracle_x_rotation(marked, -kPi / 2);
  return conjugate(w, grover_iterate(marked.n(), m));
}

GroverCoefficients grover_coefficients(int m, Index big_n) {
  if (m < 0) throw DomainError("iteration count must be non-negative");
  if (big_n < 2 || (big_n & (big_n - 1)) != 0) throw DomainError("N must be 2^n, n >= 1");
  const double nn = static_cast<double>(big_n);
  const double theta = std::acos(-1.0 + 2.0 / nn);
  const double f = nn / (nn - 1.0);
  const double c = std::cos(m * theta);
  const double s = std::sin(m * theta);
  const double r = std::sqrt(nn - 1.0);
  GroverCoefficients out;
  out.m = m;
  out.big_n = big_n;
  out.alpha[0] = -f * (1.0 - c);
  out.alpha[1] = out.alpha[0];
  out.alpha[2] = -f * (-1.0 + c + r * s);
  out.alpha[3] = f * (1.0 - c + r * s);
  out.gamma = grover_gammas(out.alpha, big_n);
  return out;
}

Alpha grover_alpha_recursion(int m, Index big_n) {
  if (m < 0) throw DomainError("iteration count must be non-negative");
  const double nn = static_cast<double>(big_n);
  Alpha a{};
  for (int i = 0; i < m; ++i) {
    const Complex a1 = (-1.0 + 4.0 / nn) * a[0] + (2.0 / nn) * a[2] - 2.0;
    const Complex a3 = -2.0 * a[0] - a[2];
    const Complex a2 = -a[1] - (2.0 / nn) * a[3] - 2.0;
    const Complex a4 = 2.0 * a[1] + (-1.0 + 4.0 / nn) * a[3] + 4.0;
    a = {a1, a2, a3, a4};
  }
  return a;
}

Alpha grover_alpha_extract(const Operator &g, Complex *e_coefficient) {
  const int n = qubit_count(g.rows());
  const MarkedState zero(0, n);
  const Operator d0 = diag_projector(zero);
  const Operator d0x = x_projector(zero);
  const std::array<Operator, 5> basis = {identity(g.rows()), d0, d0x, d0 * d0x, d0x * d0};
  Eigen::Matrix<Complex, 5, 5> gram;
  Eigen::Matrix<Complex, 5, 1> rhs;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) gram(i, j) = hs_inner(basis[i], basis[j]);
    rhs(i) = hs_inner(basis[i], g);
  }
  const Eigen::Matrix<Complex, 5, 1> coef = gram.fullPivLu().solve(rhs);
  if (e_coefficient != nullptr) *e_coefficient = coef(0);
  return {coef(1), coef(2), coef(3), coef(4)};
}

Operator grover_closed_algebra(const Alpha &alpha, int n) {
  const MarkedState zero(0, n);
  const Operator d0 = diag_projector(zero);
  const Operator d0x = x_projector(zero);
  return identity(zero.dim()) + alpha[0] * d0 + alpha[1] * d0x + alpha[2] * d0 * d0x +
         alpha[3] * d0x * d0;
}

Gamma grover_gammas(const Alpha &alpha, Index big_n) {
  const double nn = static_cast<double>(big_n);
  const Complex a1 = alpha[0], a2 = alpha[1], a3 = alpha[2], a4 = alpha[3];
  Gamma g;
  g[0] = (std::conj(a1) * a3 + a1 * std::conj(a3) + std::conj(a3) * a3) / (2.0 * nn);
  g[1] = 0.5 * (a2 + std::conj(a2) + std::conj(a2) * a2 + std::conj(a2) * a4 / nn +
                a2 * std::conj(a4) / nn);
  g[2] = 0.5 * (a3 + a1 * std::conj(a2) + std::conj(a2) * a3 + a3 * std::conj(a4) / nn);
  g[3] = 0.5 * (std::conj(a3) + std::conj(a1) * a2 + a2 * std::conj(a3) +
                std::conj(a3) * a4 / nn);
  g[4] = a1;
  g[5] = std::conj(a1);
  g[6] = a4;
  g[7] = std::conj(a4);
  return g;
}

double conversion_coefficient(int m, Index big_n, const std::vector<double> &epsilons, int k) {
  if (k < 1 || k > static_cast<int>(epsilons.size())) throw IndexError("qubit index out of range");
  const double ek = epsilons[static_cast<std::size_t>(k - 1)];
  if (ek == 0.0) throw DomainError("eps_k must be nonzero");
  const double nn = static_cast<double>(big_n);
  const Gamma g = grover_coefficients(m, big_n).gamma;
  const double ratio = std::accumulate(epsilons.begin(), epsilons.end(), 0.0) / ek;
  return (1.0 + (g[4] + g[5]) / nn - (2.0 / nn) * ratio * g[0]).real();
}

double measured_conversion_coefficient(const MarkedState &marked, int m,
                                       const std::vector<double> &epsilons, int k) {
  const int n = marked.n();
  check_epsilons(epsilons, n);
  if (k < 1 || k > n) throw IndexError("qubit index out of range");
  const double ek = epsilons[static_cast<std::size_t>(k - 1)];
  if (ek == 0.0) throw DomainError("eps_k must be nonzero");
  const SpinSystem system(n);
  const Operator rho0 = initial_state(system, epsilons, Axis::Z).rho;
  const Operator rho = conjugate(grover_propagator(marked, m), rho0);
  const double norm = static_cast<double>(system.dim()) / 4.0;
  return hs_inner(spin_op(system, k, Axis::Z), rho).real() / (ek * norm);
}

GammaPeakScan scan_gamma_peaks(Index big_n) {
  GammaPeakScan out;
  out.big_n = big_n;
  out.m_max = static_cast<int>(std::floor(4.0 * std::sqrt(static_cast<double>(big_n))));
  std::vector<double> g1;
  for (int m = 1; m <= out.m_max; ++m) {
    const Gamma g = grover_coefficients(m, big_n).gamma;
    g1.push_back(std::abs(g[0]));
    if (std::abs(g[0]) > out.max_abs_gamma1) {
      out.max_abs_gamma1 = std::abs(g[0]);
      out.argmax_gamma1 = m;
    }
    out.max_abs_gamma5 = std::max(out.max_abs_gamma5, std::abs(g[4]));
    out.max_abs_gamma6 = std::max(out.max_abs_gamma6, std::abs(g[5]));
  }
  for (std::size_t i = 0; i < g1.size(); ++i) {
    const bool left = i == 0 || g1[i] >= g1[i - 1];
    const bool right = i + 1 == g1.size() || g1[i] >= g1[i + 1];
    if (left && right) {
      out.first_peak_gamma1 = static_cast<int>(i) + 1;
      break;
    }
  }
  return out;
}

}  // namespace spinsearch
