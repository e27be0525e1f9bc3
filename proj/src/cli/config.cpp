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


#include <climits>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "spinsearch/cli.hpp"
#include "spinsearch/errors.hpp"
#include "spinsearch/linalg.hpp"

namespace spinsearch::cli {

namespace {

constexpr int kMaxQubits = 8;

/** Collects schema violations with JSON-pointer-like paths. */
class Checker {
 public:
  void fail(const std::string &path, const std::string &what) {
    problems_.push_back(path + ": " + what);
  }

  void only_keys(const Json &obj, const std::string &path, std::set<std::string> allowed) {
    allowed.insert({"command", "seed", "description"});
    for (const auto &[key, value] : obj.items()) {
      if (allowed.count(key) == 0) fail(path + "/" + key, "unknown key");
    }
  }

  bool require(const Json &obj, const std::string &key, const std::string &path) {
    if (!obj.contains(key)) {
      fail(path + "/" + key, "required key missing");
      return false;
    }
    return true;
  }

  std::optional<std::int64_t> integer(const Json &v, const std::string &path, std::int64_t lo,
                                      std::int64_t hi) {
    if (!v.is_number_integer()) {
      fail(path, "expected an integer");
      return std::nullopt;
    }
    const auto x = v.get<std::int64_t>();
    if (x < lo || x > hi) {
      fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      return std::nullopt;
    }
    return x;
  }

  std::optional<double> real(const Json &v, const std::string &path) {
    if (!v.is_number()) {
      fail(path, "expected a number");
      return std::nullopt;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      fail(path, "must be finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<double> positive(const Json &v, const std::string &path) {
    const auto x = real(v, path);
    if (x && !(*x > 0.0)) {
      fail(path, "must be positive");
      return std::nullopt;
    }
    return x;
  }

  std::optional<std::string> choice(const Json &v, const std::string &path,
                                    const std::set<std::string> &options) {
    if (!v.is_string() || options.count(v.get<std::string>()) == 0) {
      std::string list;
      for (const auto &o : options) list += (list.empty() ? "" : ", ") + o;
      fail(path, "expected one of {" + list + "}");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  bool real_array(const Json &v, const std::string &path, std::size_t expected_size,
                  bool nonzero) {
    if (!v.is_array()) {
      fail(path, "expected an array of numbers");
      return false;
    }
    if (expected_size != 0 && v.size() != expected_size) {
      fail(path, "expected " + std::to_string(expected_size) + " entries, got " +
                     std::to_string(v.size()));
      return false;
    }
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto x = real(v[i], path + "/" + std::to_string(i));
      if (!x) {
        ok = false;
      } else if (nonzero && *x == 0.0) {
        fail(path + "/" + std::to_string(i), "must be nonzero");
        ok = false;
      }
    }
    return ok;
  }

  std::optional<std::pair<std::int64_t, std::int64_t>> range(const Json &v,
                                                             const std::string &path,
                                                             std::int64_t lo, std::int64_t hi) {
    if (!v.is_array() || v.size() != 2) {
      fail(path, "expected [first, last]");
      return std::nullopt;
    }
    const auto a = integer(v[0], path + "/0", lo, hi);
    const auto b = integer(v[1], path + "/1", lo, hi);
    if (!a || !b) return std::nullopt;
    if (*a > *b) {
      fail(path, "range is empty (first > last)");
      return std::nullopt;
    }
    return std::pair{*a, *b};
  }

  void finish(const std::string &command) const {
    if (problems_.empty()) return;
    std::ostringstream msg;
    msg << "invalid " << command << " config:";
    for (const auto &p : problems_) msg << "\n  " << p;
    throw ConfigurationError(msg.str());
  }

 private:
  std::vector<std::string> problems_;
};

Json uniform(std::int64_t n) { return Json(std::vector<double>(static_cast<std::size_t>(n), 1.0)); }

void common_fields(Checker &ck, Json &cfg) {
  if (cfg.contains("seed")) ck.integer(cfg["seed"], "/seed", 0, INT64_MAX);
  else cfg["seed"] = 0;
  if (cfg.contains("description") && !cfg["description"].is_string()) {
    ck.fail("/description", "expected a string");
  }
}

Json validate_search(Json cfg) {
  Checker ck;
  ck.only_keys(cfg, "", {"n", "s", "epsilons", "theta", "oracle_mode"});
  common_fields(ck, cfg);
  std::optional<std::int64_t> n;
  if (ck.require(cfg, "n", "")) n = ck.integer(cfg["n"], "/n", 1, kMaxQubits);
  if (ck.require(cfg, "s", "") && n) ck.integer(cfg["s"], "/s", 0, (std::int64_t{1} << *n) - 1);
  if (n) {
    if (cfg.contains("epsilons")) ck.real_array(cfg["epsilons"], "/epsilons", *n, true);
    else cfg["epsilons"] = uniform(*n);
  }
  if (cfg.contains("theta")) ck.real(cfg["theta"], "/theta");
  else cfg["theta"] = -kPi / 2;
  if (cfg.contains("oracle_mode")) ck.choice(cfg["oracle_mode"], "/oracle_mode", {"selective", "explicit"});
  else cfg["oracle_mode"] = "selective";
  ck.finish("search");
  return cfg;
}

Json validate_grover_scan(Json cfg) {
  Checker ck;
  ck.only_keys(cfg, "", {"n", "n_range", "m_range", "epsilons", "k", "s"});
  common_fields(ck, cfg);
  std::optional<std::pair<std::int64_t, std::int64_t>> nr;
  if (cfg.contains("n") && cfg.contains("n_range")) {
    ck.fail("/n", "give either n or n_range, not both");
  } else if (cfg.contains("n")) {
    if (auto n = ck.integer(cfg["n"], "/n", 1, kMaxQubits)) {
      nr = std::pair{*n, *n};
      cfg.erase("n");
      cfg["n_range"] = {*n, *n};
    }
  } else if (ck.require(cfg, "n_range", "")) {
    nr = ck.range(cfg["n_range"], "/n_range", 1, kMaxQubits);
  }
  if (ck.require(cfg, "m_range", "")) ck.range(cfg["m_range"], "/m_range", 0, 256);
  if (nr) {
    if (cfg.contains("epsilons")) ck.real_array(cfg["epsilons"], "/epsilons", nr->second, true);
    else cfg["epsilons"] = uniform(nr->second);
    if (cfg.contains("k")) ck.integer(cfg["k"], "/k", 1, nr->first);
    else cfg["k"] = 1;
    if (cfg.contains("s")) ck.integer(cfg["s"], "/s", 0, (std::int64_t{1} << nr->first) - 1);
    else cfg["s"] = 0;
  }
  ck.finish("grover-scan");
  return cfg;
}

void validate_hamiltonian(Checker &ck, Json &h, std::int64_t n) {
  if (!h.is_object()) {
    ck.fail("/hamiltonian", "expected an object");
    return;
  }
  if (!ck.require(h, "kind", "/hamiltonian")) return;
  const auto kind = ck.choice(h["kind"], "/hamiltonian/kind", {"uniform_fz", "weak_coupling"});
  if (!kind) return;
  if (*kind == "uniform_fz") {
    ck.only_keys(h, "/hamiltonian", {"kind", "omega"});
    if (ck.require(h, "omega", "/hamiltonian")) ck.real(h["omega"], "/hamiltonian/omega");
    return;
  }
  ck.only_keys(h, "/hamiltonian", {"kind", "offsets", "couplings"});
  if (ck.require(h, "offsets", "/hamiltonian")) {
    ck.real_array(h["offsets"], "/hamiltonian/offsets", static_cast<std::size_t>(n), false);
  }
  if (!h.contains("couplings")) {
    h["couplings"] = Json::array();
    for (std::int64_t i = 0; i < n; ++i) h["couplings"].push_back(Json(std::vector<double>(n, 0.0)));
    return;
  }
  const Json &j = h["couplings"];
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n)) {
    ck.fail("/hamiltonian/couplings", "expected an n x n matrix");
    return;
  }
  for (std::size_t r = 0; r < j.size(); ++r) {
    ck.real_array(j[r], "/hamiltonian/couplings/" + std::to_string(r), n, false);
  }
}

Json validate_spectrum(Json cfg) {
  Checker ck;
  if (cfg.contains("preset")) {
    ck.only_keys(cfg, "", {"preset", "s", "r", "omega_a", "omega_b", "dwell", "points"});
    common_fields(ck, cfg);
    ck.choice(cfg["preset"], "/preset", {"cross_peak"});
    if (ck.require(cfg, "s", "")) ck.integer(cfg["s"], "/s", 0, 15);
    if (ck.require(cfg, "r", "")) ck.integer(cfg["r"], "/r", 0, 15);
    if (!cfg.contains("omega_a")) cfg["omega_a"] = 2.0 * kPi * 100.0;
    if (!cfg.contains("omega_b")) cfg["omega_b"] = 2.0 * kPi * 60.0;
    if (!cfg.contains("dwell")) cfg["dwell"] = 1.0 / 1280.0;
    if (!cfg.contains("points")) cfg["points"] = 512;
    ck.real(cfg["omega_a"], "/omega_a");
    ck.real(cfg["omega_b"], "/omega_b");
    ck.positive(cfg["dwell"], "/dwell");
    ck.integer(cfg["points"], "/points", 2, 1 << 16);
    ck.finish("spectrum");
    return cfg;
  }
  ck.only_keys(cfg, "", {"n", "epsilons", "initial_axis", "excitation", "reconversion",
                         "hamiltonian", "dwell", "points", "detect", "phi", "phase_cycle"});
  common_fields(ck, cfg);
  std::optional<std::int64_t> n;
  if (ck.require(cfg, "n", "")) n = ck.integer(cfg["n"], "/n", 1, kMaxQubits);
  if (n) {
    if (cfg.contains("epsilons")) ck.real_array(cfg["epsilons"], "/epsilons", *n, false);
    else cfg["epsilons"] = uniform(*n);
  }
  if (!cfg.contains("initial_axis")) cfg["initial_axis"] = "z";
  ck.choice(cfg["initial_axis"], "/initial_axis", {"x", "y", "z"});
  if (!cfg.contains("excitation")) cfg["excitation"] = {{"kind", "identity"}};
  Json &ex = cfg["excitation"];
  if (!ex.is_object()) {
    ck.fail("/excitation", "expected an object");
  } else if (ck.require(ex, "kind", "/excitation")) {
    const auto kind = ck.choice(ex["kind"], "/excitation/kind", {"identity", "oracle"});
    if (kind == "identity") {
      ck.only_keys(ex, "/excitation", {"kind"});
    } else if (kind == "oracle") {
      ck.only_keys(ex, "/excitation", {"kind", "s", "theta"});
      if (ck.require(ex, "s", "/excitation") && n) {
        ck.integer(ex["s"], "/excitation/s", 0, (std::int64_t{1} << *n) - 1);
      }
      if (!ex.contains("theta")) ex["theta"] = kPi;
      ck.real(ex["theta"], "/excitation/theta");
    }
  }
  if (!cfg.contains("reconversion")) cfg["reconversion"] = "adjoint";
  ck.choice(cfg["reconversion"], "/reconversion", {"adjoint", "identity", "inphase"});
  if (ck.require(cfg, "hamiltonian", "") && n) validate_hamiltonian(ck, cfg["hamiltonian"], *n);
  if (ck.require(cfg, "dwell", "")) ck.positive(cfg["dwell"], "/dwell");
  if (ck.require(cfg, "points", "")) ck.integer(cfg["points"], "/points", 2, 1 << 16);
  if (!cfg.contains("detect")) cfg["detect"] = "z";
  ck.choice(cfg["detect"], "/detect", {"x", "y", "z"});
  if (!cfg.contains("phi")) cfg["phi"] = 0.0;
  ck.real(cfg["phi"], "/phi");
  if (cfg.contains("phase_cycle")) {
    Json &pc = cfg["phase_cycle"];
    if (!pc.is_object()) {
      ck.fail("/phase_cycle", "expected an object");
    } else {
      ck.only_keys(pc, "/phase_cycle", {"steps", "order"});
      if (ck.require(pc, "steps", "/phase_cycle")) ck.integer(pc["steps"], "/phase_cycle/steps", 1, 1024);
      if (!pc.contains("order")) pc["order"] = 0;
      ck.integer(pc["order"], "/phase_cycle/order", -kMaxQubits, kMaxQubits);
    }
  }
  ck.finish("spectrum");
  return cfg;
}

Json default_benches() {
  return Json::array({
      {{"method", "trotter"}, {"t", 1.0}, {"m", {8, 16, 32, 64}}},
      {{"method", "commutator"}, {"m", {25, 100, 400}}},
      {{"method", "sandwich"}, {"side", "A"}, {"t", {0.4, 0.2, 0.1}}},
      {{"method", "cross_interaction"}, {"level", 2}, {"t", {0.4, 0.2, 0.1}}},
      {{"method", "fractal"}, {"p", "suzuki"}, {"mode", "product"}, {"t", {0.4, 0.2}}},
  });
}

void validate_bench(Checker &ck, Json &b, const std::string &path) {
  if (!b.is_object()) {
    ck.fail(path, "expected an object");
    return;
  }
  if (!ck.require(b, "method", path)) return;
  const auto method = ck.choice(b["method"], path + "/method",
                                {"trotter", "commutator", "sandwich", "cross_interaction", "fractal"});
  if (!method) return;
  auto list = [&](const std::string &key, bool integers) {
    if (!ck.require(b, key, path)) return;
    const Json &v = b[key];
    if (!v.is_array() || v.empty()) {
      ck.fail(path + "/" + key, "expected a nonempty array");
      return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string p = path + "/" + key + "/" + std::to_string(i);
      if (integers) ck.integer(v[i], p, 1, 1 << 20);
      else ck.positive(v[i], p);
    }
  };
  auto side = [&]() {
    if (!b.contains("side")) b["side"] = "A";
    ck.choice(b["side"], path + "/side", {"A", "B"});
  };
  if (*method == "trotter") {
    ck.only_keys(b, path, {"method", "t", "m"});
    if (!b.contains("t")) b["t"] = 1.0;
    ck.real(b["t"], path + "/t");
    list("m", true);
  } else if (*method == "commutator") {
    ck.only_keys(b, path, {"method", "m"});
    list("m", true);
  } else if (*method == "sandwich") {
    ck.only_keys(b, path, {"method", "side", "t"});
    side();
    list("t", false);
  } else if (*method == "cross_interaction") {
    ck.only_keys(b, path, {"method", "level", "t"});
    if (!b.contains("level")) b["level"] = 2;
    ck.integer(b["level"], path + "/level", 2, 4);
    if (b["level"].is_number_integer() && b["level"].get<int>() == 3) {
      ck.fail(path + "/level", "level must be 2 or 4");
    }
    list("t", false);
  } else {
    ck.only_keys(b, path, {"method", "p", "mode", "side", "t"});
    side();
    if (!b.contains("p")) b["p"] = "suzuki";
    if (!(b["p"].is_string() && b["p"] == "suzuki")) ck.real_array(b["p"], path + "/p", 0, true);
    if (!b.contains("mode")) b["mode"] = "product";
    ck.choice(b["mode"], path + "/mode", {"product", "difference"});
    list("t", false);
  }
}

Json validate_compose_bench(Json cfg) {
  Checker ck;
  ck.only_keys(cfg, "", {"operators", "benches"});
  common_fields(ck, cfg);
  if (!cfg.contains("operators")) cfg["operators"] = {{"kind", "su2"}};
  Json &ops = cfg["operators"];
  if (!ops.is_object()) {
    ck.fail("/operators", "expected an object");
  } else if (ck.require(ops, "kind", "/operators")) {
    const auto kind = ck.choice(ops["kind"], "/operators/kind", {"su2", "random", "commuting"});
    if (kind == "random") {
      ck.only_keys(ops, "/operators", {"kind", "dim", "scale"});
      if (!ops.contains("dim")) ops["dim"] = 4;
      if (!ops.contains("scale")) ops["scale"] = 1.0;
      if (auto d = ck.integer(ops["dim"], "/operators/dim", 2, 64); d && (*d & (*d - 1)) != 0) {
        ck.fail("/operators/dim", "must be a power of two");
      }
      ck.positive(ops["scale"], "/operators/scale");
    } else if (kind) {
      ck.only_keys(ops, "/operators", {"kind"});
    }
  }
  if (!cfg.contains("benches")) cfg["benches"] = default_benches();
  if (!cfg["benches"].is_array() || cfg["benches"].empty()) {
    ck.fail("/benches", "expected a nonempty array");
  } else {
    for (std::size_t i = 0; i < cfg["benches"].size(); ++i) {
      validate_bench(ck, cfg["benches"][i], "/benches/" + std::to_string(i));
    }
  }
  ck.finish("compose-bench");
  return cfg;
}

}  // namespace

Json load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config file " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error &e) {
    throw ConfigurationError("config " + path.string() + " is not valid JSON: " + e.what());
  }
}

Json validate_config(const std::string &command, const Json &config) {
  if (!config.is_object()) throw ConfigurationError("config must be a JSON object");
  if (config.contains("command") &&
      (!config["command"].is_string() || config["command"].get<std::string>() != command)) {
    throw ConfigurationError("config is for command " + config["command"].dump() +
                             ", not " + command);
  }
  if (command == "search") return validate_search(config);
  if (command == "grover-scan") return validate_grover_scan(config);
  if (command == "spectrum") return validate_spectrum(config);
  if (command == "compose-bench") return validate_compose_bench(config);
  if (command == "selftest") {
    Checker ck;
    Json cfg = config;
    ck.only_keys(cfg, "", {});
    common_fields(ck, cfg);
    ck.finish("selftest");
    return cfg;
  }
  throw ConfigurationError("unknown command " + command);
}

}  // namespace spinsearch::cli
