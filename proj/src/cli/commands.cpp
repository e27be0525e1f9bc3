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


#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>

#include "spinsearch/cli.hpp"
#include "spinsearch/composition.hpp"
#include "spinsearch/errors.hpp"
#include "spinsearch/mq_algebra.hpp"
#include "spinsearch/sequences.hpp"
#include "spinsearch/spectroscopy.hpp"

namespace spinsearch::cli {

namespace {

std::vector<double> doubles(const Json &v) { return v.get<std::vector<double>>(); }

Axis axis_of(const std::string &name) {
  if (name == "x") return Axis::X;
  if (name == "y") return Axis::Y;
  return Axis::Z;
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

RunReport cmd_search(const Json &config) {
  const int n = config["n"].get<int>();
  const MarkedState marked(config["s"].get<Index>(), n);
  const auto eps = doubles(config["epsilons"]);
  const double theta = config["theta"].get<double>();
  const OracleMode mode =
      config["oracle_mode"] == "explicit" ? OracleMode::ExplicitUf : OracleMode::SelectiveCs;
  const SearchResult res = simple_search(marked, eps, theta, mode);

  RunReport report;
  report.command = "search";
  report.config = config;
  report.oracle_calls = res.oracle_calls;
  Json &r = report.result;
  r["recovered_s"] = res.recovered_s;
  r["recovered_signs"] = res.recovered_signs;
  r["per_qubit_signal"] = res.per_qubit_signal;
  r["confidence"] = res.confidence;
  r["success"] = res.recovered_s == marked.index();
  r["prefactor"] = {
      {"measured", res.measured_prefactor},
      {"two_over_n", res.nominal_prefactor},
      {"two_over_n_sin_theta", res.predicted_prefactor},
      {"ratio_measured_to_two_over_n", res.measured_prefactor / res.nominal_prefactor},
      {"note",
       "The final state is proportional to sum_k eps_k a_k I_kz with constant (2/N) sin(theta). "
       "The bare 2/N value is reproduced only for sin(theta) = 1; the sign and magnitude of "
       "the reported ratio equal sin(theta)."}};
  r["span_residual"] = res.span_residual;
  r["proportionality_residual"] = res.proportionality_residual;
  report.max_residual =
      std::max({res.span_residual, res.proportionality_residual,
                std::abs(res.measured_prefactor - res.predicted_prefactor)});

  CsvTable table{"search.csv", {"qubit", "epsilon", "marked_sign", "recovered_sign", "signal"}, {}};
  for (int k = 1; k <= n; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    table.rows.push_back({std::int64_t{k}, eps[i], std::int64_t{marked.sign(k)},
                          std::int64_t{res.recovered_signs[i]}, res.per_qubit_signal[i]});
  }
  report.tables.push_back(std::move(table));
  return report;
}

RunReport cmd_grover_scan(const Json &config) {
  const int n_lo = config["n_range"][0].get<int>();
  const int n_hi = config["n_range"][1].get<int>();
  const int m_lo = config["m_range"][0].get<int>();
  const int m_hi = config["m_range"][1].get<int>();
  const int k = config["k"].get<int>();
  const Index s = config["s"].get<Index>();
  const auto eps_all = doubles(config["epsilons"]);

  RunReport report;
  report.command = "grover-scan";
  report.config = config;
  CsvTable rows{"grover_scan.csv",
                {"n", "N", "m", "alpha1", "alpha2", "alpha3", "alpha4", "gamma1", "gamma2",
                 "gamma3", "gamma4", "gamma5", "gamma6", "gamma7", "gamma8", "C_m_analytic",
                 "C_m_measured", "residual"},
                {}};
  CsvTable summary{"grover_summary.csv",
                   {"n", "N", "max_one_minus_C", "argmax_m", "gamma1_argmax", "gamma1_first_peak",
                    "half_sqrt_N", "two_sqrt_N"},
                   {}};
  double imag_residual = 0.0;
  Json per_n = Json::array();
  for (int n = n_lo; n <= n_hi; ++n) {
    const Index big_n = Index{1} << n;
    const std::vector<double> eps(eps_all.begin(), eps_all.begin() + n);
    // The dense measurement costs O(m N^3); it is skipped above 128 states.
    const bool measure = n <= 7;
    double worst = -1.0;
    int worst_m = m_lo;
    for (int m = m_lo; m <= m_hi; ++m) {
      const GroverCoefficients g = grover_coefficients(m, big_n);
      const Alpha rec = grover_alpha_recursion(m, big_n);
      double residual = 0.0;
      std::vector<CsvCell> row{std::int64_t{n}, std::int64_t(big_n), std::int64_t{m}};
      for (std::size_t i = 0; i < 4; ++i) {
        row.emplace_back(g.alpha[i].real());
        imag_residual = std::max(imag_residual, std::abs(g.alpha[i].imag()));
        residual = std::max(residual, std::abs(g.alpha[i] - rec[i]));
      }
      for (std::size_t i = 0; i < 8; ++i) {
        row.emplace_back(g.gamma[i].real());
        imag_residual = std::max(imag_residual, std::abs(g.gamma[i].imag()));
      }
      const double c = conversion_coefficient(m, big_n, eps, k);
      row.emplace_back(c);
      if (measure) {
        const double cm = measured_conversion_coefficient(MarkedState(s, n), m, eps, k);
        row.emplace_back(cm);
        residual = std::max(residual, std::abs(c - cm));
        report.oracle_calls += m;
      } else {
        row.emplace_back(std::string());
      }
      row.emplace_back(residual);
      report.max_residual = std::max(report.max_residual, residual);
      rows.rows.push_back(std::move(row));
      if (1.0 - c > worst) {
        worst = 1.0 - c;
        worst_m = m;
      }
    }
    const GammaPeakScan scan = scan_gamma_peaks(big_n);
    const double root = std::sqrt(static_cast<double>(big_n));
    summary.rows.push_back({std::int64_t{n}, std::int64_t(big_n), worst, std::int64_t{worst_m},
                            std::int64_t{scan.argmax_gamma1},
                            std::int64_t{scan.first_peak_gamma1}, 0.5 * root, 2.0 * root});
    per_n.push_back({{"n", n},
                     {"N", big_n},
                     {"max_one_minus_C", worst},
                     {"argmax_m", worst_m},
                     {"gamma1_argmax", scan.argmax_gamma1},
                     {"gamma1_first_peak", scan.first_peak_gamma1},
                     {"gamma1_scan_m_max", scan.m_max},
                     {"measured", measure}});
  }
  bool monotone = true;
  for (std::size_t i = 1; i < per_n.size(); ++i) {
    if (!(per_n[i]["max_one_minus_C"].get<double>() < per_n[i - 1]["max_one_minus_C"].get<double>())) {
      monotone = false;
    }
  }
  // Empirical scaling of the worst loss with N, over n >= 3 (n = 2 saturates at 1).
  std::vector<double> ns, losses;
  for (const auto &entry : per_n) {
    if (entry["n"].get<int>() >= 3) {
      ns.push_back(entry["N"].get<double>());
      losses.push_back(entry["max_one_minus_C"].get<double>());
    }
  }
  report.result["per_n"] = per_n;
  report.result["max_one_minus_C_decreasing"] = monotone;
  report.result["loss_exponent_vs_N"] =
      ns.size() >= 2 ? Json(fit_order(ns, losses)) : Json(nullptr);
  report.result["imaginary_residual"] = imag_residual;
  report.max_residual = std::max(report.max_residual, imag_residual);
  report.tables.push_back(std::move(rows));
  report.tables.push_back(std::move(summary));
  return report;
}

RunReport cmd_spectrum(const Json &config) {
  RunReport report;
  report.command = "spectrum";
  report.config = config;

  PipelineConfig pc;
  EnsembleState rho0;
  int cycle_steps = 0;
  int cycle_order = 0;
  double label = 0.0;
  if (config.contains("preset")) {
    const double wa = config["omega_a"].get<double>();
    const double wb = config["omega_b"].get<double>();
    const CrossPeakDemo demo =
        cross_peak_demo(MarkedState(config["s"].get<Index>(), 4), config["r"].get<Index>(), wa,
                        wb, config["dwell"].get<double>(), config["points"].get<int>());
    pc = demo.config;
    rho0 = initial_state(SpinSystem(4), demo.epsilons, Axis::Z);
    cycle_steps = demo.phase_cycle_steps;
    cycle_order = demo.target_order;
    label = wa - wb;
    report.result["order_label_unit"] = "omega_a - omega_b";
  } else {
    const int n = config["n"].get<int>();
    const Index dim = Index{1} << n;
    rho0 = initial_state(SpinSystem(n), doubles(config["epsilons"]),
                         axis_of(config["initial_axis"]));
    const Json &ex = config["excitation"];
    pc.u_seq = identity(dim);
    if (ex["kind"] == "oracle") {
      pc.u_seq = expm_unitary(x_projector(MarkedState(ex["s"].get<Index>(), n)),
                              ex["theta"].get<double>());
    }
    pc.detect_axis = axis_of(config["detect"]);
    pc.phi = config["phi"].get<double>();
    const std::string recon = config["reconversion"];
    if (recon == "adjoint") pc.v_seq = dagger(pc.u_seq);
    else if (recon == "identity") pc.v_seq = identity(dim);
    else pc.v_seq = inphase_reconversion(pc.u_seq, pc.phi, axis_of(config["initial_axis"]), pc.detect_axis);
    const Json &h = config["hamiltonian"];
    if (h["kind"] == "uniform_fz") {
      label = h["omega"].get<double>();
      pc.h_evol = SpinHamiltonian::uniform_fz(n, label);
      report.result["order_label_unit"] = "omega";
    } else {
      Eigen::MatrixXd j(n, n);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) j(a, b) = h["couplings"][a][b].get<double>();
      }
      pc.h_evol = SpinHamiltonian::weak_coupling(doubles(h["offsets"]), j);
    }
    pc.dwell = config["dwell"].get<double>();
    pc.points = config["points"].get<int>();
    if (config.contains("phase_cycle")) {
      cycle_steps = config["phase_cycle"]["steps"].get<int>();
      cycle_order = config["phase_cycle"]["order"].get<int>();
    }
  }

  const Index dim = rho0.rho.rows();
  pc.validate(dim);
  std::vector<Complex> series;
  Operator p = pipeline_p(rho0, pc);
  if (cycle_steps > 0) {
    series = run_pipeline_phase_cycled(rho0, pc, cycle_steps, cycle_order);
    p = phase_cycle_project(p, cycle_steps, cycle_order);
  } else {
    series = run_pipeline(rho0, pc);
  }
  // Cross-check against the eigen-expansion of the same signal.
  const auto lines = eigen_expand(p, pipeline_q(pc, dim), pc.h_evol);
  const auto expected = resum(lines, pc.dwell, pc.points);
  double resum_residual = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    resum_residual = std::max(resum_residual, std::abs(series[i] - expected[i]));
  }
  const Spectrum sp = spectrum(series, pc.dwell, label);

  const bool oracle_excited = config.contains("preset") ||
                              config["excitation"]["kind"] == "oracle";
  const std::int64_t transients = std::int64_t{pc.points} * std::max(1, cycle_steps);
  report.oracle_calls = oracle_excited ? 2 * transients : 0;
  report.max_residual = std::max(resum_residual, sp.parseval_residual);

  CsvTable ts{"timeseries.csv", {"t", "re", "im"}, {}};
  for (std::size_t i = 0; i < series.size(); ++i) {
    ts.rows.push_back({static_cast<double>(i) * pc.dwell, series[i].real(), series[i].imag()});
  }
  CsvTable spec{"spectrum.csv", {"frequency", "re", "im", "order"}, {}};
  for (std::size_t i = 0; i < sp.frequencies.size(); ++i) {
    CsvCell order = std::string();
    if (label != 0.0) order = static_cast<std::int64_t>(std::lround(sp.frequencies[i] / label));
    spec.rows.push_back({sp.frequencies[i], sp.amplitudes[i].real(), sp.amplitudes[i].imag(), order});
  }
  Json peaks = Json::array();
  for (const auto &pk : sp.peaks) {
    Json entry{{"omega", pk.omega}, {"amplitude", complex_json(pk.amplitude)},
               {"magnitude", std::abs(pk.amplitude)}};
    entry["order"] = pk.order ? Json(*pk.order) : Json(nullptr);
    if (label != 0.0) {
      const double ratio = pk.omega / label;
      entry["off_grid"] = std::abs(ratio - std::round(ratio)) * std::abs(label);
    }
    peaks.push_back(entry);
  }
  Json &r = report.result;
  r["bin_width"] = sp.bin_width;
  r["peak_count"] = sp.peaks.size();
  r["peaks"] = peaks;
  r["parseval_residual"] = sp.parseval_residual;
  r["eigen_expansion_residual"] = resum_residual;
  if (cycle_steps > 0) r["phase_cycle"] = {{"steps", cycle_steps}, {"order", cycle_order}};
  if (config.contains("preset")) {
    // Largest cross line against the subsystem-internal (zero-frequency) line; reported only.
    double cross = 0.0, internal = 0.0;
    for (const auto &pk : sp.peaks) {
      if (pk.order && *pk.order != 0) cross = std::max(cross, std::abs(pk.amplitude));
      if (pk.order && *pk.order == 0) internal = std::abs(pk.amplitude);
    }
    r["cross_over_internal_amplitude"] = internal > 0.0 ? Json(cross / internal) : Json(nullptr);
  }
  report.tables.push_back(std::move(ts));
  report.tables.push_back(std::move(spec));
  return report;
}

RunReport cmd_compose_bench(const Json &config) {
  RunReport report;
  report.command = "compose-bench";
  report.config = config;

  const Json &ops = config["operators"];
  Operator a, b;
  if (ops["kind"] == "random") {
    std::mt19937_64 rng(config["seed"].get<std::uint64_t>());
    std::normal_distribution<double> normal(0.0, 1.0);
    const Index dim = ops["dim"].get<Index>();
    const double scale = ops["scale"].get<double>();
    auto draw = [&]() {
      Operator m(dim, dim);
      for (Index j = 0; j < dim; ++j) {
        for (Index i = 0; i < dim; ++i) m(i, j) = Complex(normal(rng), normal(rng));
      }
      return Operator(0.5 * scale * (m + m.adjoint()));
    };
    a = draw();
    b = draw();
  } else {
    const SpinSystem one(1);
    a = spin_op(one, 1, Axis::Z);
    b = ops["kind"] == "su2" ? spin_op(one, 1, Axis::X) : Operator(0.5 * spin_op(one, 1, Axis::Z));
  }

  CsvTable table{"compose_bench.csv",
                 {"method", "parameter", "value", "error_norm", "generator_error", "fitted_order",
                  "generator_order", "oracle_calls"},
                 {}};
  Json benches = Json::array();
  for (const Json &bench : config["benches"]) {
    const std::string method = bench["method"];
    const OuterSide side = bench.value("side", std::string("A")) == "B" ? OuterSide::B : OuterSide::A;
    const bool by_m = method == "trotter" || method == "commutator";
    const std::string param = by_m ? "m" : "t";
    std::vector<double> steps, errors;
    for (const Json &value : bench[param]) {
      CompositionResult res;
      if (method == "trotter") {
        res = trotter_product({a, b}, bench["t"].get<double>(), value.get<int>());
      } else if (method == "commutator") {
        res = commutator_product(a, b, value.get<int>());
      } else if (method == "sandwich") {
        res = symmetric_sandwich(a, b, value.get<double>(), side);
      } else if (method == "cross_interaction") {
        res = cross_interaction(a, b, value.get<double>(), bench["level"].get<int>());
      } else {
        const std::vector<double> p =
            bench["p"].is_string() ? suzuki_triplet() : bench["p"].get<std::vector<double>>();
        const FractalMode mode =
            bench["mode"] == "difference" ? FractalMode::Difference : FractalMode::Product;
        res = fractal_compose(a, b, value.get<double>(), p, side, mode);
      }
      const bool generator_based = method == "cross_interaction" ||
                                   (method == "fractal" && bench["mode"] == "difference");
      steps.push_back(by_m ? 1.0 / value.get<double>() : value.get<double>());
      errors.push_back(generator_based ? res.generator_error : res.error_norm);
      CsvCell v = by_m ? CsvCell(value.get<std::int64_t>()) : CsvCell(value.get<double>());
      // Methods without a fitted generator leave those columns empty.
      const bool has_generator_fit =
          method == "sandwich" || method == "cross_interaction" || generator_based;
      CsvCell gen_err = has_generator_fit ? CsvCell(res.generator_error) : CsvCell(std::string());
      CsvCell gen_order = has_generator_fit ? CsvCell(res.generator_order) : CsvCell(std::string());
      table.rows.push_back({method, param, v, res.error_norm, gen_err, res.fitted_order, gen_order,
                            std::int64_t{res.oracle_calls}});
      report.oracle_calls += res.oracle_calls;
      report.max_residual = std::max(report.max_residual, unitarity_residual(res.propagator));
    }
    Json summary{{"method", method}, {"parameter", param}};
    if (steps.size() >= 2) {
      const double fit = fit_order(steps, errors);
      summary["order_across_values"] = std::isnan(fit) ? Json(nullptr) : Json(fit);
    }
    if (method == "sandwich") {
      summary["even_content"] = sandwich_even_content(a, b, bench["t"][0].get<double>(), side);
    }
    benches.push_back(summary);
  }
  report.result["benches"] = benches;
  report.tables.push_back(std::move(table));
  return report;
}

double tolerance_scale_from_env() {
  const char *raw = std::getenv("SPINSEARCH_TOL_SCALE");
  if (raw == nullptr || *raw == '\0') return 1.0;
  char *end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !std::isfinite(v) || v < 0.0) {
    throw ConfigurationError(std::string("SPINSEARCH_TOL_SCALE must be a non-negative number, got '") +
                             raw + "'");
  }
  return v;
}

const std::vector<std::string> &command_names() {
  static const std::vector<std::string> names = {"search", "grover-scan", "spectrum",
                                                 "compose-bench", "selftest"};
  return names;
}

namespace {

void write_text(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigurationError("cannot write " + path.string());
  out << text;
}

}  // namespace

int run_command(const std::string &command, const std::filesystem::path *config_path,
                const std::filesystem::path &out_dir, bool include_timing,
                std::ostream &diagnostics) {
  try {
    Json raw = Json::object();
    if (config_path != nullptr) {
      raw = load_config(*config_path);
    } else if (command != "selftest") {
      throw ConfigurationError(command + " needs --config");
    }
    const Json config = validate_config(command, raw);
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    if (command == "search") report = cmd_search(config);
    else if (command == "grover-scan") report = cmd_grover_scan(config);
    else if (command == "spectrum") report = cmd_spectrum(config);
    else if (command == "compose-bench") report = cmd_compose_bench(config);
    else report = cmd_selftest(tolerance_scale_from_env());
    report.config = config;
    report.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::filesystem::create_directories(out_dir);
    write_text(out_dir / "report.json", report.to_json(include_timing).dump(2) + "\n");
    for (const auto &t : report.tables) write_text(out_dir / t.file_name, t.render());
    if (report.exit_code == kExitSelftestFailed) {
      diagnostics << "selftest failed:";
      for (const auto &g : report.result["groups"]) {
        if (!g["passed"].get<bool>()) diagnostics << ' ' << g["name"].get<std::string>();
      }
      diagnostics << '\n';
    }
    return report.exit_code;
  } catch (const AmbiguousReadoutError &e) {
    diagnostics << "ambiguous readout: " << e.what() << '\n';
    return kExitAmbiguousReadout;
  } catch (const SamplingError &e) {
    diagnostics << "sampling error: " << e.what() << '\n';
    return kExitSamplingError;
  } catch (const BranchAmbiguityError &e) {
    diagnostics << "matrix-log branch error: " << e.what() << '\n';
    return kExitBranchError;
  } catch (const Error &e) {
    diagnostics << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::filesystem::filesystem_error &e) {
    diagnostics << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const nlohmann::json::exception &e) {
    diagnostics << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace spinsearch::cli
