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
#include <optional>
#include <vector>

#include "spinsearch/linalg.hpp"
#include "spinsearch/oracle.hpp"
#include "spinsearch/sequences.hpp"

namespace spinsearch {

enum class HamiltonianKind { WeakCoupling, UniformFz, Custom };

/**
 * Evolution Hamiltonian for the t1 period. Offsets are in rad/s, couplings in
 * Hz (J_kl for k < l, stored in the upper triangle), omega in rad/s.
 */
struct SpinHamiltonian {
  HamiltonianKind kind = HamiltonianKind::Custom;
  std::vector<double> offsets;
  Eigen::MatrixXd couplings;
  double omega = 0.0;
  Operator matrix;

  /** sum Omega_k I_kz + sum_{k<l} 2 pi J_kl I_kz I_lz. */
  static SpinHamiltonian weak_coupling(const std::vector<double> &offsets,
                                       const Eigen::MatrixXd &couplings);
  /** omega F_z. */
  static SpinHamiltonian uniform_fz(int n, double omega);
  static SpinHamiltonian custom(const Operator &h);
};

struct PipelineConfig {
  Operator u_seq;
  Operator v_seq;
  SpinHamiltonian h_evol;
  double dwell = 0.0;
  int points = 0;
  Axis detect_axis = Axis::Z;
  double phi = 0.0;

  /** Throws ConfigurationError (shape, grid) or SamplingError (Nyquist). */
  void validate(Index dim) const;
};

/** All transition frequencies omega_jk = E_j - E_k of H. */
std::vector<double> transition_frequencies(const Operator &h);

/**
 * s(t1) = Tr{F_q V exp(-i H t1) U rho0 U^dagger exp(i H t1) V^dagger} on
 * t1 = 0, dwell, ..., (points-1) dwell, by literal conjugation at each point.
 */
std::vector<Complex> run_pipeline(const EnsembleState &rho0, const PipelineConfig &cfg);

/**
 * Coherence-order selection by phase cycling: the pipeline is repeated n1
 * times with the excitation followed by exp(-i phi_k F_z), phi_k = 2 pi k / n1,
 * and the records are summed with receiver weights exp(i m phi_k) / n1. This
 * keeps exactly the orders congruent to target_order modulo n1 in
 * P = U rho0 U^dagger. Throws AliasingError when n1 < 2n + 1.
 */
std::vector<Complex> run_pipeline_phase_cycled(const EnsembleState &rho0,
                                               const PipelineConfig &cfg, int n1,
                                               int target_order);

/** P = U rho0 U^dagger. */
Operator pipeline_p(const EnsembleState &rho0, const PipelineConfig &cfg);
/** Q = V^dagger F_q V. */
Operator pipeline_q(const PipelineConfig &cfg, Index dim);

struct TransitionLine {
  double omega = 0.0;
  Complex amplitude;
};

/**
 * Lines of sum_jk Q*_jk P_jk exp(-i omega_jk t) in the eigenbasis of H. Lines at
 * the same frequency (within 1e-9 relative) are merged and negligible ones
 * dropped; the list is sorted by frequency.
 */
std::vector<TransitionLine> eigen_expand(const Operator &p, const Operator &q,
                                         const SpinHamiltonian &h);

/** Evaluates the line sum at each t. */
std::vector<Complex> resum(const std::vector<TransitionLine> &lines, double dwell, int points);

struct InphaseCheck {
  bool holds = false;
  double residual = 0.0;
};

/** Tests Q^dagger = exp(-i phi F_z) P exp(i phi F_z) for P = U F_p U^dagger, Q = V^dagger F_q V. */
InphaseCheck inphase_check(const Operator &u, const Operator &v, double phi, Axis p, Axis q);

/** A reconversion V satisfying the in-phase condition for given U, phi, p and q. */
Operator inphase_reconversion(const Operator &u, double phi, Axis p, Axis q);

struct Peak {
  double omega = 0.0;
  Complex amplitude;
  std::optional<int> order;
};

struct Spectrum {
  std::vector<double> frequencies;
  std::vector<Complex> amplitudes;
  std::vector<Peak> peaks;
  double bin_width = 0.0;
  double parseval_residual = 0.0;
};

/** Peaks below this fraction of the largest magnitude are ignored. */
constexpr double kPeakThreshold = 1e-6;

/**
 * X(omega_k) = (1/M) sum_j s(j dwell) exp(+i omega_k j dwell) on the centred
 * grid omega_k = 2 pi k / (M dwell), k in [-M/2, M/2). A tone a exp(-i w t) on
 * the grid shows up as amplitude a at +w. When label_omega is nonzero each peak
 * is assigned order round(omega / label_omega).
 */
Spectrum spectrum(const std::vector<Complex> &series, double dwell, double label_omega = 0.0);

/** I(m) = sum over M_j - M_k = m of Q*_jk P_jk, in the computational basis. */
std::map<int, Complex> order_intensities(const Operator &p, const Operator &q);

/** Zero-quantum projection of f_s + f_r through an N1-step phase cycle, Hermitised. */
Operator cross_zq_hamiltonian(const Operator &f_s, const Operator &f_r, int n1);

struct InteractionFrame {
  Operator exact;
  Operator series;
};

/**
 * exp(i t H_r) H_s exp(-i t H_r) both exactly and as the nested-commutator
 * series sum_j (it)^j / j! ad_{H_r}^j(H_s) truncated at series_order <= 6.
 */
InteractionFrame interaction_frame(const Operator &h_s, const Operator &h_r, double t,
                                   int series_order);

/**
 * Oracle-driven excitation on n qubits: U = exp(-i pi D_s^x), V = U^dagger,
 * H = omega F_z, detection along z.
 */
PipelineConfig oracle_excitation_config(const MarkedState &marked, double omega, double dwell,
                                        int points);

struct CrossPeakDemo {
  PipelineConfig config;
  double omega_a = 0.0;
  double omega_b = 0.0;
  /** Polarizations of the starting z state (uniform). */
  std::vector<double> epsilons;
  /** Phase-cycle length and the selected coherence order (zero). */
  int phase_cycle_steps = 0;
  int target_order = 0;
};

/**
 * Four qubits split into subsystems {1,2} at omega_a and {3,4} at omega_b.
 * Excitation by exp(-i (pi/2)(D_s^x + D_r^x)), a zero-order phase cycle of
 * length 9 to keep only zero-quantum coherence, evolution under the
 * subsystem offsets, reconversion V = U^dagger and z detection. Run it with
 * run_pipeline_phase_cycled(rho0, config, phase_cycle_steps, target_order).
 */
CrossPeakDemo cross_peak_demo(const MarkedState &marked, Index r_index, double omega_a,
                              double omega_b, double dwell, int points);

}  // namespace spinsearch
