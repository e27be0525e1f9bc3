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


// Acceptance suite: one PASS/FAIL line per criterion, followed by the
// measured quantities. Exits nonzero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spinsearch/cli.hpp"
#include "spinsearch/composition.hpp"
#include "spinsearch/mq_algebra.hpp"
#include "spinsearch/sequences.hpp"
#include "spinsearch/spectroscopy.hpp"
#include "support/oracles.hpp"

using namespace spinsearch;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::vector<std::string> details;
};

std::string fmt(const char *format, double value) {
  char buf[128];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

std::string sci(double v) { return fmt("%.3e", v); }

// 1. Oracle equivalence on the auxiliary |0>|1> sector.
Outcome oracle_equivalence() {
  double worst = 0.0;
  int cases = 0;
  for (int n = 1; n <= 3; ++n) {
    const SpinSystem sys(n, 2);
    for (Index s = 0; s < (Index{1} << n); ++s) {
      const MarkedState marked(s, n);
      for (double theta : {0.0, kPi / 4, kPi / 2, kPi}) {
        const Operator uo = oracle_uo(marked, sys, theta);
        worst = std::max(worst, max_abs(aux_sector(uo, sys, 0, 1) - selective_phase(marked, theta)));
        ++cases;
      }
    }
  }
  return {worst <= 1e-12, {std::to_string(cases) + " (n, s, theta) cases, max residual " +
                           sci(worst) + " (tol 1e-12)"}};
}

// 2. Closed-form single and multi selective conjugation against brute force.
Outcome conjugation_identities() {
  std::mt19937_64 rng(20260101);
  double single = 0.0, multi = 0.0;
  for (int n = 2; n <= 4; ++n) {
    const Index dim = Index{1} << n;
    std::uniform_int_distribution<Index> pick(0, dim - 1);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int trial = 0; trial < 100; ++trial) {
      const Operator rho = testing::random_hermitian(dim, rng);
      const MarkedState marked(pick(rng), n);
      const double theta = angle(rng);
      const Operator c = selective_phase(marked, theta);
      single = std::max(single, max_abs(conjugate_selective(rho, marked, theta) -
                                        testing::brute_conjugate(c, rho)));
      Index s2 = pick(rng);
      if (s2 == marked.index()) s2 = (s2 + 1) % dim;
      const std::vector<MarkedState> markeds = {marked, MarkedState(s2, n)};
      const std::vector<double> thetas = {theta, angle(rng)};
      const Operator c2 = selective_phase(markeds[0], thetas[0]) * selective_phase(markeds[1], thetas[1]);
      multi = std::max(multi, max_abs(conjugate_multi_selective(rho, markeds, thetas) -
                                      testing::brute_conjugate(c2, rho)));
    }
  }
  return {std::max(single, multi) <= 1e-10,
          {"100 seeded random Hermitians per n in {2,3,4}",
           "single selective max residual " + sci(single) + ", two selective " + sci(multi) +
               " (tol 1e-10)"}};
}

// 3. Search recovery, oracle-call count and runtime.
Outcome search_correctness() {
  const auto start = std::chrono::steady_clock::now();
  int runs = 0, failures = 0, bad_calls = 0;
  for (int n = 1; n <= 5; ++n) {
    const std::vector<double> eps(static_cast<std::size_t>(n), 1.0);
    for (Index s = 0; s < (Index{1} << n); ++s) {
      const SearchResult res = simple_search(MarkedState(s, n), eps);
      ++runs;
      if (res.recovered_s != s) ++failures;
      if (res.oracle_calls != 2) ++bad_calls;
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {failures == 0 && bad_calls == 0 && seconds <= 60.0,
          {std::to_string(runs) + " runs (n = 1..5, every s), " + std::to_string(failures) +
               " wrong recoveries, " + std::to_string(bad_calls) + " runs with oracle calls != 2",
           "runtime " + fmt("%.2f", seconds) + " s (limit 60 s)"}};
}

// 4. Final-state proportionality and the prefactor against 2/N.
Outcome final_state_claim() {
  double span = 0.0, prop = 0.0, pref = 0.0;
  for (int n = 1; n <= 5; ++n) {
    std::vector<double> eps;
    for (int k = 1; k <= n; ++k) eps.push_back(0.5 + 0.25 * k);
    for (Index s = 0; s < (Index{1} << n); ++s) {
      const SearchResult res = simple_search(MarkedState(s, n), eps);
      span = std::max(span, res.span_residual);
      prop = std::max(prop, res.proportionality_residual);
      pref = std::max(pref, std::abs(res.measured_prefactor - res.predicted_prefactor));
    }
  }
  // The run report must carry the prefactor comparison and its explanation.
  const cli::RunReport report =
      cli::cmd_search(cli::validate_config("search", cli::Json{{"n", 3}, {"s", 5}}));
  const cli::Json &p = report.result["prefactor"];
  const bool documented = p.contains("two_over_n") && p.contains("measured") && p.contains("note");
  Outcome out;
  out.pass = span <= 1e-10 && prop <= 1e-10 && pref <= 1e-10 && documented;
  out.details = {
      "outside span{I_kz}: " + sci(span) + ", deviation from lambda eps_k a_k: " + sci(prop) +
          " (tol 1e-10)",
      "n = 3, theta = -pi/2: measured lambda " + fmt("%.12f", p["measured"].get<double>()) +
          ", 2/N = " + fmt("%.12f", p["two_over_n"].get<double>()) + ", ratio " +
          fmt("%.12f", p["ratio_measured_to_two_over_n"].get<double>()),
      "lambda = (2/N) sin(theta) everywhere (max deviation " + sci(pref) +
          "); the bare 2/N holds only for sin(theta) = 1, stated in report.json",
  };
  return out;
}

// 5. Grover coefficients: closed form, recursion and matrix extraction.
Outcome grover_three_way() {
  double worst = 0.0, m1 = 0.0;
  for (int n : {2, 3, 4}) {
    const Index big_n = Index{1} << n;
    for (int m = 0; m <= 25; ++m) {
      const Alpha closed = grover_coefficients(m, big_n).alpha;
      const Alpha rec = grover_alpha_recursion(m, big_n);
      const Alpha extracted = grover_alpha_extract(grover_iterate(n, m));
      for (std::size_t i = 0; i < 4; ++i) {
        worst = std::max({worst, std::abs(closed[i] - rec[i]), std::abs(closed[i] - extracted[i]),
                          std::abs(rec[i] - extracted[i])});
      }
    }
    const Alpha one = grover_coefficients(1, big_n).alpha;
    const double expect[] = {-2.0, -2.0, 0.0, 4.0};
    for (std::size_t i = 0; i < 4; ++i) m1 = std::max(m1, std::abs(one[i] - expect[i]));
  }
  return {worst <= 1e-9 && m1 <= 1e-12,
          {"N in {4, 8, 16}, m in [0, 25]: max pairwise residual " + sci(worst) + " (tol 1e-9)",
           "m = 1 against (-2, -2, 0, 4): " + sci(m1) + " (tol 1e-12)"}};
}

// 6. Conversion-coefficient scan and the gamma_1 peak position.
Outcome conversion_scan() {
  Outcome out;
  std::vector<double> loss;
  std::string losses = "max_m (1 - C_m), measured, n = 2..7:";
  double agreement = 0.0;
  for (int n = 2; n <= 7; ++n) {
    const Index big_n = Index{1} << n;
    const int m_max = static_cast<int>(std::floor(4.0 * std::sqrt(static_cast<double>(big_n))));
    const std::vector<double> eps(static_cast<std::size_t>(n), 1.0);
    double worst = 0.0;
    for (int m = 0; m <= m_max; ++m) {
      const double measured = measured_conversion_coefficient(MarkedState(0, n), m, eps, 1);
      agreement = std::max(agreement, std::abs(measured - conversion_coefficient(m, big_n, eps, 1)));
      worst = std::max(worst, 1.0 - measured);
    }
    loss.push_back(worst);
    losses += " " + fmt("%.4f", worst);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < loss.size(); ++i) monotone = monotone && loss[i] < loss[i - 1];
  std::vector<double> big_ns, tail;
  for (std::size_t i = 1; i < loss.size(); ++i) {
    big_ns.push_back(std::ldexp(1.0, static_cast<int>(i) + 2));
    tail.push_back(loss[i]);
  }
  out.details.push_back(losses + (monotone ? " (decreasing)" : " (NOT decreasing)") +
                        "; analytic vs measured " + sci(agreement));
  out.details.push_back("log-log slope of the loss against N over n = 3..7: " +
                        fmt("%.3f", fit_order(big_ns, tail)) + " (recorded, not asserted)");

  bool in_range = true;
  double margin = 0.0;
  for (Index big_n : {Index{16}, Index{64}, Index{256}}) {
    const GammaPeakScan scan = scan_gamma_peaks(big_n);
    const double root = std::sqrt(static_cast<double>(big_n));
    const bool ok = scan.argmax_gamma1 >= 0.5 * root && scan.argmax_gamma1 <= 2.0 * root;
    in_range = in_range && ok;
    const double at_first =
        std::abs(grover_coefficients(scan.first_peak_gamma1, big_n).gamma[0]);
    margin = std::max(margin, scan.max_abs_gamma1 / at_first - 1.0);
    out.details.push_back(
        "N = " + std::to_string(big_n) + ": |gamma_1| arg-max over m in [1, " +
        std::to_string(scan.m_max) + "] is m = " + std::to_string(scan.argmax_gamma1) + " (|gamma_1| " +
        fmt("%.4f", scan.max_abs_gamma1) + "), window [" + fmt("%g", 0.5 * root) + ", " +
        fmt("%g", 2.0 * root) + "] " + (ok ? "holds" : "VIOLATED") + "; first peak m = " +
        std::to_string(scan.first_peak_gamma1) + " (|gamma_1| " + fmt("%.4f", at_first) + ")");
  }
  if (!in_range) {
    out.details.push_back(
        "analysis: |gamma_1(m)| is quasi-periodic in m with nearly equal maxima close to 1/2. "
        "The first maximum always falls inside [sqrt(N)/2, 2 sqrt(N)], but later revivals "
        "exceed it by up to " + fmt("%.2f", 100.0 * margin) + "%, so the global arg-max jumps "
        "out of the window for N = 16 and N = 256. The window statement holds for the first "
        "peak only; the criterion as stated (global arg-max) is not met.");
  }
  out.pass = monotone && agreement <= 1e-9 && in_range;
  return out;
}

// 7. Phase cycling against grading; generator support.
Outcome coherence_orders() {
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      const Operator f = testing::random_hermitian(Index{1} << n, rng);
      const CoherenceDecomposition dec = decompose_orders(f);
      for (int m = -n; m <= n; ++m) {
        worst = std::max(worst, max_abs(phase_cycle_project(f, 2 * n + 1, m) - dec.order(m)));
      }
    }
  }
  double leak = 0.0;
  bool present = true;
  const int n = 4;
  for (int l = 1; l <= 3; ++l) {
    std::vector<int> qubits;
    for (int q = 1; q <= l; ++q) qubits.push_back(q);
    for (GeneratorVariant v : {GeneratorVariant::Commutator, GeneratorVariant::Anticommutator}) {
      const CoherenceDecomposition dec = decompose_orders(mq_generator(qubits, n, v));
      for (int m = -n; m <= n; ++m) {
        if (std::abs(m) != l) leak = std::max(leak, max_abs(dec.order(m)));
        else present = present && max_abs(dec.order(m)) > 1e-3;
      }
    }
  }
  return {worst <= 1e-11 && leak <= 1e-12 && present,
          {"phase cycle vs grading, 50 random operators per n in {2,3,4}: " + sci(worst) +
               " (tol 1e-11)",
           "generators l = 1..3 (n = 4): content outside orders +-l " + sci(leak) +
               (present ? ", orders +-l populated" : ", orders +-l MISSING")}};
}

// 8. Pipeline against eigen-expansion; n = 3 multiple-quantum spectrum.
Outcome spectroscopy_consistency() {
  std::mt19937_64 rng(88);
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const Index dim = Index{1} << n;
    PipelineConfig pc;
    pc.u_seq = testing::random_unitary(dim, rng);
    pc.v_seq = testing::random_unitary(dim, rng);
    std::vector<double> offsets;
    for (int k = 0; k < n; ++k) offsets.push_back(2.0 * kPi * (12.0 + 7.5 * k));
    Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, 4.0);
    pc.h_evol = SpinHamiltonian::weak_coupling(offsets, j);
    pc.dwell = 1.0 / 400.0;
    pc.points = 128;
    const EnsembleState rho0 = initial_state(SpinSystem(n), std::vector<double>(n, 1.0), Axis::Z);
    const auto series = run_pipeline(rho0, pc);
    const auto expected = resum(eigen_expand(pipeline_p(rho0, pc), pipeline_q(pc, dim), pc.h_evol),
                                pc.dwell, pc.points);
    for (std::size_t i = 0; i < series.size(); ++i) worst = std::max(worst, std::abs(series[i] - expected[i]));
  }
  const int n = 3;
  const double omega = 2.0 * kPi * 10.0;
  PipelineConfig pc;
  pc.u_seq = expm_unitary(x_projector(MarkedState(5, n)), kPi / 2);
  pc.v_seq = testing::random_unitary(8, rng);
  pc.h_evol = SpinHamiltonian::uniform_fz(n, omega);
  pc.dwell = 1.0 / 160.0;
  pc.points = 64;
  const EnsembleState rho0 = initial_state(SpinSystem(n), {1.0, 1.0, 1.0}, Axis::Z);
  const Spectrum sp = spectrum(run_pipeline(rho0, pc), pc.dwell, omega);
  std::set<long> orders;
  double off = 0.0;
  for (const auto &peak : sp.peaks) {
    const double k = peak.omega / omega;
    off = std::max(off, std::abs(k - std::round(k)));
    orders.insert(std::lround(k));
  }
  std::string list;
  for (long k : orders) list += (list.empty() ? "" : ", ") + std::to_string(k);
  return {worst <= 1e-9 && sp.peaks.size() <= 7 && off <= 1e-9,
          {"pipeline vs eigen-expansion (random U, V, coupled H, n = 1..3): " + sci(worst) +
               " (tol 1e-9)",
           "n = 3, H = omega F_z: " + std::to_string(sp.peaks.size()) + " peaks at orders {" + list +
               "}, max off-grid " + sci(off) + " omega"}};
}

// 9. Zero-quantum cross peaks of the 2 + 2 demo.
Outcome cross_peak_demo_check() {
  const double wa = 2.0 * kPi * 100.0, wb = 2.0 * kPi * 60.0, delta = wa - wb;
  int configs = 0, with_cross = 0;
  double off_bins = 0.0;
  std::string example;
  for (const auto &[s, r] : std::vector<std::pair<Index, Index>>{{6, 9}, {0, 15}, {5, 10}, {3, 12}}) {
    const CrossPeakDemo demo = cross_peak_demo(MarkedState(s, 4), r, wa, wb, 1.0 / 1280.0, 512);
    const EnsembleState rho0 = initial_state(SpinSystem(4), demo.epsilons, Axis::Z);
    const Spectrum sp = spectrum(
        run_pipeline_phase_cycled(rho0, demo.config, demo.phase_cycle_steps, demo.target_order),
        demo.config.dwell);
    bool cross = false;
    std::string peaks;
    for (const auto &peak : sp.peaks) {
      const double k = peak.omega / delta;
      off_bins = std::max(off_bins, std::abs(k - std::round(k)) * std::abs(delta) / sp.bin_width);
      if (std::lround(k) != 0) cross = true;
      peaks += (peaks.empty() ? "" : ", ") + std::to_string(std::lround(k));
    }
    ++configs;
    if (cross) ++with_cross;
    if (example.empty()) {
      example = "(s, r) = (" + std::to_string(s) + ", " + std::to_string(r) + "): peaks at k = {" +
                peaks + "} x (omega_a - omega_b)";
    }
  }
  return {off_bins <= 0.5 && with_cross == configs,
          {example,
           std::to_string(configs) + " (s, r) pairs, all with cross peaks: " +
               (with_cross == configs ? "yes" : "no") + "; max distance from k(omega_a - omega_b) " +
               fmt("%.2e", off_bins) + " bins (tol 0.5)"}};
}

// 10. Composition error orders.
Outcome composition_orders() {
  const Operator iz = spin_op(SpinSystem(1), 1, Axis::Z);
  const Operator ix = spin_op(SpinSystem(1), 1, Axis::X);
  const double trotter = trotter_product({ix, iz}, 1.0, 64).fitted_order;
  std::mt19937_64 rng(99);
  const Operator a = testing::random_hermitian(4, rng);
  const Operator b = testing::random_hermitian(4, rng);
  const auto sandwich = symmetric_sandwich(a, b, 0.2);
  const double even = sandwich_even_content(a, b, 0.2, OuterSide::A);
  const auto cross = cross_interaction(iz, ix, 0.1, 2);
  const double rel = cross.generator_error / spectral_norm(cross.target_generator);
  return {std::abs(trotter - 1.0) <= 0.2 && std::abs(sandwich.fitted_order - 3.0) <= 0.2 &&
              even <= 1e-10 && rel <= 0.05 && std::abs(cross.generator_order - 5.0) <= 0.5,
          {"Trotter order " + fmt("%.4f", trotter) + " (1 +- 0.2); sandwich order " +
               fmt("%.4f", sandwich.fitted_order) + " (3 +- 0.2), even-in-x content " + sci(even),
           "level-2 cross interaction (I_z, I_x, x = 0.1): relative deviation " + sci(rel) +
               " (tol 5%), residual exponent " + fmt("%.4f", cross.generator_order) + " (5 +- 0.5)"}};
}

// 11. Byte-identical outputs from repeated runs of the driver.
Outcome determinism() {
  const fs::path configs = SPINSEARCH_CONFIG_DIR;
  const fs::path scratch = fs::path(SPINSEARCH_SCRATCH_DIR) / "acceptance";
  int files = 0, differing = 0, failed_runs = 0;
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"search", "search_n3_s5.json"},        {"grover-scan", "grover_scan.json"},
      {"spectrum", "spectrum_n3_oracle.json"}, {"spectrum", "spectrum_cross_peak.json"},
      {"compose-bench", "compose_bench.json"}, {"selftest", ""}};
  for (const auto &[cmd, file] : runs) {
    const std::string tag = cmd + (file.empty() ? "" : "_" + fs::path(file).stem().string());
    for (const char *rep : {"a", "b"}) {
      std::string line = std::string(SPINSEARCH_BINARY) + " " + cmd;
      if (!file.empty()) line += " --config " + (configs / file).string();
      line += " --out " + (scratch / tag / rep).string() + " 2>/dev/null";
      const int status = std::system(line.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) ++failed_runs;
    }
    for (const auto &entry : fs::directory_iterator(scratch / tag / "a")) {
      auto slurp = [](const fs::path &p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
      };
      ++files;
      if (slurp(entry.path()) != slurp(scratch / tag / "b" / entry.path().filename())) ++differing;
    }
  }
  return {failed_runs == 0 && differing == 0 && files > 0,
          {std::to_string(runs.size()) + " commands run twice, " + std::to_string(files) +
           " output files compared, " + std::to_string(differing) + " differ, " +
           std::to_string(failed_runs) + " failed runs"}};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence on the auxiliary sector", oracle_equivalence},
      {"closed-form selective conjugations", conjugation_identities},
      {"search correctness", search_correctness},
      {"final-state proportionality and prefactor", final_state_claim},
      {"Grover coefficient three-way agreement", grover_three_way},
      {"conversion-coefficient scan and gamma_1 peak", conversion_scan},
      {"coherence-order machinery", coherence_orders},
      {"spectroscopy consistency", spectroscopy_consistency},
      {"zero-quantum cross-peak demo", cross_peak_demo_check},
      {"composition error orders", composition_orders},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception &e) {
      out = {false, {std::string("exception: ") + e.what()}};
    }
    if (!out.pass) ++failures;
    std::printf("%s %2zu  %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str());
    for (const auto &d : out.details) std::printf("          %s\n", d.c_str());
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
  return failures == 0 ? 0 : 1;
}
