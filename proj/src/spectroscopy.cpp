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

#include "spinsearch/spectroscopy.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "spinsearch/mq_algebra.hpp"

namespace spinsearch {

namespace {

bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

// Eigen-decomposition of H as (energies, basis); the computational basis is
// used when H is already diagonal so that orders stay attached to basis labels.
std::pair<Eigen::VectorXd, Operator> eigensystem(const Operator &h) {
  const Index dim = h.rows();
  if (is_diagonal(h)) {
    Eigen::VectorXd e(dim);
    for (Index i = 0; i < dim; ++i) e(i) = h(i, i).real();
    return {e, identity(dim)};
  }
  Eigen::SelfAdjointEigenSolver<Operator> solver(0.5 * (h + h.adjoint()));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Operator detection_operator(Axis q, Index dim) {
  return total_op(SpinSystem(qubit_count(dim)), q);
}

// R with R^dagger F_q R = F_p, found among quarter-turn rotations.
Operator axis_map(Axis p, Axis q, int n) {
  const SpinSystem system(n);
  const Operator fp = total_op(system, p);
  const Operator fq = total_op(system, q);
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    for (double beta : {0.0, kPi / 2, -kPi / 2, kPi}) {
      const Operator r = expm_unitary(total_op(system, a), beta);
      if (max_abs(conjugate(dagger(r), fq) - fp) < 1e-12) return r;
    }
  }
  throw DomainError("no quarter-turn rotation maps the detection axis onto F_p");
}

}  // namespace

SpinHamiltonian SpinHamiltonian::weak_coupling(const std::vector<double> &offsets,
                                               const Eigen::MatrixXd &couplings) {
  const int n = static_cast<int>(offsets.size());
  const SpinSystem system(n);
  if (couplings.size() != 0 && (couplings.rows() != n || couplings.cols() != n)) {
    throw ConfigurationError("coupling matrix must be n x n");
  }
  SpinHamiltonian h;
  h.kind = HamiltonianKind::WeakCoupling;
  h.offsets = offsets;
  h.couplings = couplings.size() == 0 ? Eigen::MatrixXd::Zero(n, n) : couplings;
  h.matrix = Operator::Zero(system.dim(), system.dim());
  for (int k = 1; k <= n; ++k) h.matrix += offsets[static_cast<std::size_t>(k - 1)] * spin_op(system, k, Axis::Z);
  for (int k = 1; k <= n; ++k) {
    for (int l = k + 1; l <= n; ++l) {
      const double j = h.couplings(k - 1, l - 1);
      if (j != 0.0) {
        h.matrix += 2.0 * kPi * j * spin_op(system, k, Axis::Z) * spin_op(system, l, Axis::Z);
      }
    }
  }
  return h;
}

SpinHamiltonian SpinHamiltonian::uniform_fz(int n, double omega) {
  SpinHamiltonian h;
  h.kind = HamiltonianKind::UniformFz;
  h.omega = omega;
  h.matrix = omega * total_op(SpinSystem(n), Axis::Z);
  return h;
}

SpinHamiltonian SpinHamiltonian::custom(const Operator &m) {
  if (hermiticity_residual(m) > 1e-10 * std::max(1.0, max_abs(m))) {
    throw ContractViolation("evolution Hamiltonian must be Hermitian");
  }
  SpinHamiltonian h;
  h.kind = HamiltonianKind::Custom;
  h.matrix = m;
  return h;
}

std::vector<double> transition_frequencies(const Operator &h) {
  const Eigen::VectorXd e = eigensystem(h).first;
  std::vector<double> out;
  for (Index j = 0; j < e.size(); ++j) {
    for (Index k = 0; k < e.size(); ++k) out.push_back(e(j) - e(k));
  }
  return out;
}

void PipelineConfig::validate(Index dim) const {
  if (u_seq.rows() != dim || v_seq.rows() != dim || h_evol.matrix.rows() != dim) {
    throw ConfigurationError("pipeline operators do not match the state dimension");
  }
  if (!(dwell > 0.0) || !std::isfinite(dwell)) throw ConfigurationError("dwell time must be positive");
  if (!is_power_of_two(points)) {
    throw ConfigurationError("t1 point count must be a power of two, got " + std::to_string(points));
  }
  if (detect_axis != Axis::X && detect_axis != Axis::Y && detect_axis != Axis::Z) {
    throw ConfigurationError("detection axis must be x, y or z");
  }
  if (unitarity_residual(u_seq) > 1e-10 || unitarity_residual(v_seq) > 1e-10) {
    throw ContractViolation("excitation and reconversion must be unitary");
  }
  double max_freq = 0.0;
  for (double w : transition_frequencies(h_evol.matrix)) max_freq = std::max(max_freq, std::abs(w));
  const double nyquist = kPi / dwell;
  if (max_freq >= nyquist) {
    throw SamplingError("transition frequency " + std::to_string(max_freq) +
                        " rad/s is at or beyond the Nyquist limit " + std::to_string(nyquist) +
                        " rad/s");
  }
}

Operator pipeline_p(const EnsembleState &rho0, const PipelineConfig &cfg) {
  return conjugate(cfg.u_seq, rho0.rho);
}

Operator pipeline_q(const PipelineConfig &cfg, Index dim) {
  return conjugate(dagger(cfg.v_seq), detection_operator(cfg.detect_axis, dim));
}

std::vector<Complex> run_pipeline(const EnsembleState &rho0, const PipelineConfig &cfg) {
  const Index dim = rho0.rho.rows();
  cfg.validate(dim);
  const Operator fq = detection_operator(cfg.detect_axis, dim);
  const Operator excited = conjugate(cfg.u_seq, rho0.rho);
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(cfg.points));
  for (int i = 0; i < cfg.points; ++i) {
    const Operator evolve = expm_unitary(cfg.h_evol.matrix, i * cfg.dwell);
    const Operator rho = conjugate(cfg.v_seq * evolve, excited);
    out.push_back((fq * rho).trace());
  }
  return out;
}

std::vector<Complex> run_pipeline_phase_cycled(const EnsembleState &rho0,
                                               const PipelineConfig &cfg, int n1,
                                               int target_order) {
  const Index dim = rho0.rho.rows();
  const int n = qubit_count(dim);
  if (n1 < 2 * n + 1) {
    throw AliasingError("phase cycle of length " + std::to_string(n1) +
                        " aliases coherence orders of " + std::to_string(n) + " qubits");
  }
  const Operator fz = total_op(SpinSystem(n), Axis::Z);
  std::vector<Complex> sum(static_cast<std::size_t>(cfg.points), Complex(0.0));
  for (int k = 0; k < n1; ++k) {
    const double phi = 2.0 * kPi * k / n1;
    PipelineConfig step = cfg;
    step.u_seq = expm_unitary(fz, phi) * cfg.u_seq;
    const Complex weight = std::exp(Complex(0.0, target_order * phi)) / double(n1);
    const auto record = run_pipeline(rho0, step);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += weight * record[i];
  }
  return sum;
}

std::vector<TransitionLine> eigen_expand(const Operator &p, const Operator &q,
                                         const SpinHamiltonian &h) {
  const auto [energies, basis] = eigensystem(h.matrix);
  const Operator pe = basis.adjoint() * p * basis;
  const Operator qe = basis.adjoint() * q * basis;
  const Index dim = p.rows();
  std::vector<TransitionLine> raw;
  double scale = 0.0;
  for (Index j = 0; j < dim; ++j) {
    for (Index k = 0; k < dim; ++k) {
      const Complex amp = std::conj(qe(j, k)) * pe(j, k);
      raw.push_back({energies(j) - energies(k), amp});
      scale = std::max(scale, std::abs(amp));
    }
  }
  std::sort(raw.begin(), raw.end(),
            [](const TransitionLine &a, const TransitionLine &b) { return a.omega < b.omega; });
  double freq_scale = 1.0;
  for (const auto &line : raw) freq_scale = std::max(freq_scale, std::abs(line.omega));
  std::vector<TransitionLine> merged;
  for (const auto &line : raw) {
    if (!merged.empty() && std::abs(line.omega - merged.back().omega) <= 1e-9 * freq_scale) {
      merged.back().amplitude += line.amplitude;
    } else {
      merged.push_back(line);
    }
  }
  std::vector<TransitionLine> out;
  for (const auto &line : merged) {
    if (std::abs(line.amplitude) > 1e-13 * std::max(scale, 1e-300)) out.push_back(line);
  }
  return out;
}

std::vector<Complex> resum(const std::vector<TransitionLine> &lines, double dwell, int points) {
  std::vector<Complex> out(static_cast<std::size_t>(points), Complex{});
  for (int i = 0; i < points; ++i) {
    const double t = i * dwell;
    for (const auto &line : lines) {
      out[static_cast<std::size_t>(i)] += line.amplitude * std::exp(Complex(0.0, -line.omega * t));
    }
  }
  return out;
}

InphaseCheck inphase_check(const Operator &u, const Operator &v, double phi, Axis p, Axis q) {
  const Index dim = u.rows();
  const int n = qubit_count(dim);
  const SpinSystem system(n);
  const Operator pm = conjugate(u, total_op(system, p));
  const Operator qm = conjugate(dagger(v), total_op(system, q));
  const Operator rot = expm_unitary(total_op(system, Axis::Z), phi);
  InphaseCheck out;
  out.residual = max_abs(dagger(qm) - conjugate(rot, pm));
  out.holds = out.residual <= 1e-9;
  return out;
}

Operator inphase_reconversion(const Operator &u, double phi, Axis p, Axis q) {
  const int n = qubit_count(u.rows());
  const Operator r = axis_map(p, q, n);
  // V^dagger F_q V = exp(-i phi F_z) U F_p U^dagger exp(i phi F_z).
  return r * dagger(u) * expm_unitary(total_op(SpinSystem(n), Axis::Z), -phi);
}

Spectrum spectrum(const std::vector<Complex> &series, double dwell, double label_omega) {
  const long m = static_cast<long>(series.size());
  if (!is_power_of_two(m)) throw ConfigurationError("series length must be a power of two");
  if (!(dwell > 0.0)) throw ConfigurationError("dwell time must be positive");

  std::vector<Complex> in(series), raw(static_cast<std::size_t>(m));
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(m), reinterpret_cast<fftw_complex *>(in.data()),
                                    reinterpret_cast<fftw_complex *>(raw.data()), FFTW_BACKWARD,
                                    FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  Spectrum out;
  out.bin_width = 2.0 * kPi / (static_cast<double>(m) * dwell);
  out.frequencies.resize(static_cast<std::size_t>(m));
  out.amplitudes.resize(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) {
    const long k = i - m / 2;
    const long src = (k + m) % m;
    out.frequencies[static_cast<std::size_t>(i)] = k * out.bin_width;
    out.amplitudes[static_cast<std::size_t>(i)] = raw[static_cast<std::size_t>(src)] / static_cast<double>(m);
  }

  double time_energy = 0.0, freq_energy = 0.0, peak_max = 0.0;
  for (const Complex &s : series) time_energy += std::norm(s);
  for (const Complex &x : out.amplitudes) {
    freq_energy += std::norm(x);
    peak_max = std::max(peak_max, std::abs(x));
  }
  freq_energy *= static_cast<double>(m);
  out.parseval_residual =
      time_energy > 0.0 ? std::abs(time_energy - freq_energy) / time_energy : freq_energy;

  if (peak_max == 0.0) return out;
  const double threshold = kPeakThreshold * peak_max;
  for (long i = 0; i < m; ++i) {
    const double here = std::abs(out.amplitudes[static_cast<std::size_t>(i)]);
    const double left = std::abs(out.amplitudes[static_cast<std::size_t>((i + m - 1) % m)]);
    const double right = std::abs(out.amplitudes[static_cast<std::size_t>((i + 1) % m)]);
    if (here < threshold || here <= left || here < right) continue;
    Peak peak{out.frequencies[static_cast<std::size_t>(i)], out.amplitudes[static_cast<std::size_t>(i)],
              std::nullopt};
    if (label_omega != 0.0) peak.order = static_cast<int>(std::lround(peak.omega / label_omega));
    out.peaks.push_back(peak);
  }
  return out;
}

std::map<int, Complex> order_intensities(const Operator &p, const Operator &q) {
  const Index dim = p.rows();
  const int n = qubit_count(dim);
  std::map<int, Complex> out;
  for (int m = -n; m <= n; ++m) out[m] = Complex{};
  for (Index j = 0; j < dim; ++j) {
    for (Index k = 0; k < dim; ++k) out[coherence_order(j, k)] += std::conj(q(j, k)) * p(j, k);
  }
  return out;
}

Operator cross_zq_hamiltonian(const Operator &f_s, const Operator &f_r, int n1) {
  const Operator h = phase_cycle_project(f_s + f_r, n1, 0);
  return 0.5 * (h + h.adjoint());
}

InteractionFrame interaction_frame(const Operator &h_s, const Operator &h_r, double t,
                                   int series_order) {
  if (series_order < 0 || series_order > 6) throw DomainError("series order must lie in [0, 6]");
  InteractionFrame out;
  out.exact = conjugate(expm_unitary(h_r, -t), h_s);
  out.series = h_s;
  Operator nested = h_s;
  Complex factor = 1.0;
  for (int j = 1; j <= series_order; ++j) {
    nested = commutator(h_r, nested);
    factor *= kI * t / static_cast<double>(j);
    out.series += factor * nested;
  }
  return out;
}

PipelineConfig oracle_excitation_config(const MarkedState &marked, double omega, double dwell,
                                        int points) {
  PipelineConfig cfg;
  cfg.u_seq = expm_unitary(x_projector(marked), kPi);
  cfg.v_seq = dagger(cfg.u_seq);
  cfg.h_evol = SpinHamiltonian::uniform_fz(marked.n(), omega);
  cfg.dwell = dwell;
  cfg.points = points;
  cfg.detect_axis = Axis::Z;
  return cfg;
}

CrossPeakDemo cross_peak_demo(const MarkedState &marked, Index r_index, double omega_a,
                              double omega_b, double dwell, int points) {
  if (marked.n() != 4) throw ConfigurationError("the cross-peak demo uses four qubits");
  const MarkedState other(r_index, 4);
  CrossPeakDemo demo;
  demo.omega_a = omega_a;
  demo.omega_b = omega_b;
  demo.epsilons = {1.0, 1.0, 1.0, 1.0};
  demo.phase_cycle_steps = 9;
  demo.target_order = 0;
  demo.config.u_seq = expm_unitary(x_projector(marked) + x_projector(other), kPi / 2);
  demo.config.v_seq = dagger(demo.config.u_seq);
  demo.config.h_evol = SpinHamiltonian::weak_coupling({omega_a, omega_a, omega_b, omega_b},
                                                      Eigen::MatrixXd::Zero(4, 4));
  demo.config.dwell = dwell;
  demo.config.points = points;
  demo.config.detect_axis = Axis::Z;
  return demo;
}

}  // namespace spinsearch
