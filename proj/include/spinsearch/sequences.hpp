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

#include <array>
#include <vector>

#include "spinsearch/linalg.hpp"
#include "spinsearch/oracle.hpp"

namespace spinsearch {

/** Oracle phase used by simple_search unless told otherwise; maximises |sin theta|. */
constexpr double kDefaultSearchTheta = -kPi / 2;

/** Readout coefficients below this fraction of max|eps_k| count as ambiguous. */
constexpr double kReadoutThreshold = 1e-9;

/**
 * Ensemble state of the work qubits, optionally tensored with the auxiliary
 * pseudo-pure state. Only the traceless deviation part is carried.
 */
struct EnsembleState {
  SpinSystem system{1};
  Operator rho;
  std::vector<double> epsilons;
  bool is_deviation = true;
};

/** sum_k eps_k I_kp on the work qubits (times |0><0| (x) |1><1| with auxiliaries). */
EnsembleState initial_state(const SpinSystem &system, const std::vector<double> &epsilons,
                            Axis p);

/** C_s(theta) rho C_s(theta)^dagger evaluated through its four-term expansion. */
Operator conjugate_selective(const Operator &rho, const MarkedState &marked, double theta);

/**
 * Conjugation by prod_k C_k(theta_k) over distinct marked states, evaluated
 * through the closed-form double-sum expansion. Duplicate indices throw
 * DomainError.
 */
Operator conjugate_multi_selective(const Operator &rho, const std::vector<MarkedState> &markeds,
                                   const std::vector<double> &thetas);

struct SearchResult {
  Index recovered_s = 0;
  std::vector<int> recovered_signs;
  /** Coefficient c_k of I_kz in the final state, per work qubit. */
  std::vector<double> per_qubit_signal;
  /** min |c_k| over the ambiguity threshold. */
  double confidence = 0.0;
  int oracle_calls = 0;
  /** Least-squares lambda in c_k = lambda eps_k a_k. */
  double measured_prefactor = 0.0;
  /** The nominal 2/N prefactor, without the sin(theta) factor. */
  double nominal_prefactor = 0.0;
  /** (2/N) sin(theta), what the full pipeline actually predicts. */
  double predicted_prefactor = 0.0;
  /** max-abs of the final state outside span{I_kz}. */
  double span_residual = 0.0;
  /** max |c_k - lambda eps_k a_k|. */
  double proportionality_residual = 0.0;
};

/**
 * Ensemble search: y-magnetisation, oracle conjugation, 90_y pulse on the work
 * qubits, gradient crush, zero-quantum dephasing, then projection onto the I_kz.
 *
 * Throws AmbiguousReadoutError when any |c_k| falls below
 * kReadoutThreshold * max|eps_k|.
 */
SearchResult simple_search(const MarkedState &marked, const std::vector<double> &epsilons,
                           double theta = kDefaultSearchTheta,
                           OracleMode mode = OracleMode::SelectiveCs);

/**
 * D_s(n-k) built by k spin-echo doublings starting from D_s. Equals the product
 * of (E/2 + a_l I_lz) over qubits 1..n-k times identity on the rest.
 */
Operator spin_echo_hamiltonian(const MarkedState &marked, int k);

/** U_o applications inside V_os(k, theta) = exp(-i theta D_s(n-k)). */
int spin_echo_uo_applications(int k);

struct EchoSearchSignal {
  int k = 0;
  std::vector<double> per_qubit_signal;
  int uo_applications = 0;
  int oracle_calls = 0;
};

/** The simple-search pipeline with V_os(k, theta) in place of U_o(theta). */
EchoSearchSignal echo_search_signal(const MarkedState &marked,
                                    const std::vector<double> &epsilons, int k,
                                    double theta = kDefaultSearchTheta);

/** Projector onto |N-1> = |1...1>. */
Operator last_projector(int n);

/** U(m) = [exp(-i pi D_{N-1}) exp(-i pi D_s^x)]^m by direct multiplication. */
Operator grover_propagator(const MarkedState &marked, int m);

/**
 * U(m) = W G(m) W^dagger with W = exp(-i pi/2 F_y) exp(-i pi/2 F_x) U_ox(-pi/2)
 * and G(m) = [exp(-i pi D_0^x) exp(-i pi D_0)]^m.
 */
Operator grover_propagator_reexpressed(const MarkedState &marked, int m);

/** G(m) by direct multiplication. */
Operator grover_iterate(int n, int m);

using Alpha = std::array<Complex, 4>;
using Gamma = std::array<Complex, 8>;

struct GroverCoefficients {
  int m = 0;
  Index big_n = 0;
  Alpha alpha{};
  Gamma gamma{};
};

/** alpha from the closed-form solution and gamma_1..gamma_8 from alpha. */
GroverCoefficients grover_coefficients(int m, Index big_n);

/** alpha(m) by iterating the linear recursion from alpha(0) = 0. */
Alpha grover_alpha_recursion(int m, Index big_n);

/**
 * alpha from a G(m) matrix by least squares over {E, D0, D0x, D0 D0x, D0x D0}
 * through the Gram matrix. The coefficient of E is returned in e_coefficient.
 */
Alpha grover_alpha_extract(const Operator &g, Complex *e_coefficient = nullptr);

/** E + a1 D0 + a2 D0x + a3 D0 D0x + a4 D0x D0. */
Operator grover_closed_algebra(const Alpha &alpha, int n);

/** gamma_1..gamma_8 as functions of alpha. */
Gamma grover_gammas(const Alpha &alpha, Index big_n);

/**
 * Fraction of the initial I_kz magnetisation surviving m iterations,
 * 1 + (g5 + g6)/N - (2/N)(sum_l eps_l / eps_k) g1.
 */
double conversion_coefficient(int m, Index big_n, const std::vector<double> &epsilons, int k);

/** The same quantity measured from U(m) rho_I(0) U(m)^dagger, rho_I(0) = sum eps_l I_lz. */
double measured_conversion_coefficient(const MarkedState &marked, int m,
                                       const std::vector<double> &epsilons, int k);

struct GammaPeakScan {
  Index big_n = 0;
  int m_max = 0;
  double max_abs_gamma1 = 0.0;
  double max_abs_gamma5 = 0.0;
  double max_abs_gamma6 = 0.0;
  int argmax_gamma1 = 0;
  /** First local maximum of |gamma_1(m)| for m >= 1. */
  int first_peak_gamma1 = 0;
};

/** Scans m in [1, floor(4 sqrt N)]. */
GammaPeakScan scan_gamma_peaks(Index big_n);

}  // namespace spinsearch
