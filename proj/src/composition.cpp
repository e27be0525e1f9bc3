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

#include "spinsearch/composition.hpp"

#include <cmath>
#include <limits>

namespace spinsearch {

namespace {

// exp(i s H), i.e. exp(x H) at x = i s.
Operator expi(const Operator &h, double s) { return expm_unitary(h, -s); }

void check_pair(const Operator &a, const Operator &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError("operator pair must share a dimension");
  }
}

Operator sandwich(const Operator &a, const Operator &b, double t, OuterSide side) {
  const Operator &outer = side == OuterSide::A ? a : b;
  const Operator &inner = side == OuterSide::A ? b : a;
  const Operator half = expi(outer, t / 2);
  return half * expi(inner, t) * half;
}

// Symmetric composition of two generators: exp(i g1/2) exp(i s g2) exp(i g1/2).
Operator symmetric_of(const Operator &g1, const Operator &g2, double s) {
  const Operator half = expi(g1, 0.5);
  return half * expi(g2, s) * half;
}

Operator level2_generator(const Operator &a, const Operator &b, double t, OuterSide side) {
  const Operator ha = matrix_log_skew(sandwich(a, b, t, OuterSide::A));
  const Operator hb = matrix_log_skew(sandwich(a, b, t, OuterSide::B));
  if (side == OuterSide::A) return matrix_log_skew(symmetric_of(ha, hb, -1.0));
  return matrix_log_skew(symmetric_of(hb, ha, -1.0));
}

Operator level4_generator(const Operator &a, const Operator &b, double t) {
  const Operator ha3 = level2_generator(a, b, t, OuterSide::A);
  const Operator hb3 = level2_generator(a, b, t, OuterSide::B);
  return matrix_log_skew(symmetric_of(ha3, hb3, 1.0));
}

Operator fractal_product(const Operator &a, const Operator &b, double t,
                         const std::vector<double> &p, OuterSide side) {
  Operator out = identity(a.rows());
  for (double pk : p) out = out * sandwich(a, b, pk * t, side);
  return out;
}

}  // namespace

double fit_order(const std::vector<double> &steps, const std::vector<double> &errors) {
  if (steps.size() != errors.size() || steps.size() < 2) {
    throw DomainError("order fit needs at least two matched samples");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(errors[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double x = std::log(steps[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

CompositionResult trotter_product(const std::vector<Operator> &h_list, double t, int m) {
  if (m < 1) throw DomainError("Trotter step count must be >= 1");
  if (h_list.empty()) throw DomainError("Trotter product needs at least one Hamiltonian");
  const Index dim = h_list.front().rows();
  Operator total = Operator::Zero(dim, dim);
  for (const auto &h : h_list) {
    if (h.rows() != dim) throw DomainError("Hamiltonians must share a dimension");
    total += h;
  }
  const Operator exact = expm_unitary(total, t);
  auto product = [&](int steps) {
    Operator slice = identity(dim);
    for (const auto &h : h_list) slice = slice * expm_unitary(h, t / steps);
    Operator out = identity(dim);
    for (int i = 0; i < steps; ++i) out = out * slice;
    return out;
  };
  CompositionResult out;
  out.propagator = product(m);
  out.target_generator = -t * total;
  out.error_norm = spectral_norm(out.propagator - exact);
  std::vector<double> steps, errors;
  for (int mult : {1, 2, 4}) {
    steps.push_back(1.0 / (m * mult));
    errors.push_back(mult == 1 ? out.error_norm : spectral_norm(product(m * mult) - exact));
  }
  out.fitted_order = fit_order(steps, errors);
  out.oracle_calls = m;
  return out;
}

CompositionResult commutator_product(const Operator &a, const Operator &b, int m) {
  if (m < 1) throw DomainError("step count must be >= 1");
  check_pair(a, b);
  const Index dim = a.rows();
  const Operator k = kI * commutator(a, b);  // exp(-[A,B]) = exp(i K)
  const Operator exact = expi(k, 1.0);
  auto product = [&](int steps) {
    const double s = 1.0 / std::sqrt(static_cast<double>(steps));
    const Operator cycle = expi(a, s) * expi(b, s) * expi(a, -s) * expi(b, -s);
    Operator out = identity(dim);
    for (int i = 0; i < steps; ++i) out = out * cycle;
    return out;
  };
  CompositionResult out;
  out.propagator = product(m);
  out.target_generator = k;
  out.error_norm = spectral_norm(out.propagator - exact);
  std::vector<double> steps, errors;
  for (int mult : {1, 4, 16}) {
    steps.push_back(1.0 / (m * mult));
    errors.push_back(mult == 1 ? out.error_norm : spectral_norm(product(m * mult) - exact));
  }
  out.fitted_order = fit_order(steps, errors);
  out.oracle_calls = 2 * m;
  return out;
}

CompositionResult symmetric_sandwich(const Operator &a, const Operator &b, double t,
                                     OuterSide side) {
  check_pair(a, b);
  const Operator sum = a + b;
  auto measure = [&](double s, CompositionResult *full) {
    const Operator prop = sandwich(a, b, s, side);
    const Operator gen = matrix_log_skew(prop);
    const double perr = spectral_norm(prop - expi(sum, s));
    const double gerr = spectral_norm(gen - s * sum);
    if (full != nullptr) {
      full->propagator = prop;
      full->generator_estimate = gen;
      full->error_norm = perr;
      full->generator_error = gerr;
    }
    return std::pair{perr, gerr};
  };
  CompositionResult out;
  out.target_generator = t * sum;
  std::vector<double> steps, perrs, gerrs;
  for (double s : {t, t / 2, t / 4}) {
    const auto [perr, gerr] = measure(s, s == t ? &out : nullptr);
    steps.push_back(std::abs(s));
    perrs.push_back(perr);
    gerrs.push_back(gerr);
  }
  out.fitted_order = fit_order(steps, perrs);
  out.generator_order = fit_order(steps, gerrs);
  out.oracle_calls = side == OuterSide::A ? 1 : 2;
  return out;
}

double sandwich_even_content(const Operator &a, const Operator &b, double t, OuterSide side) {
  check_pair(a, b);
  const Operator sum = a + b;
  const Operator dplus = matrix_log_skew(sandwich(a, b, t, side)) - t * sum;
  const Operator dminus = matrix_log_skew(sandwich(a, b, -t, side)) + t * sum;
  return max_abs(0.5 * (dplus + dminus));
}

Operator double_commutator_term(const Operator &a, const Operator &b) {
  return commutator(b, commutator(b, a)) - commutator(a, commutator(a, b));
}

int cross_interaction_oracle_calls(int level, OuterSide side) {
  if (level != 2 && level != 4) throw DomainError("cross-interaction level must be 2 or 4");
  const int m = level / 2;
  int p = 1;
  for (int i = 0; i <= m; ++i) p *= 3;
  return side == OuterSide::A ? (p - 1) / 2 : (p + 1) / 2;
}

CompositionResult cross_interaction(const Operator &a, const Operator &b, double t, int level) {
  if (level != 2 && level != 4) throw DomainError("cross-interaction level must be 2 or 4");
  check_pair(a, b);
  const Operator term = double_commutator_term(a, b);
  auto generator = [&](double s) {
    return level == 2 ? level2_generator(a, b, s, OuterSide::A) : level4_generator(a, b, s);
  };
  auto target = [&](double s) -> Operator {
    if (level == 2) return -(s * s * s / 8.0) * term;
    return Operator::Zero(a.rows(), a.cols());
  };
  CompositionResult out;
  out.oracle_calls = cross_interaction_oracle_calls(level, OuterSide::A);
  std::vector<double> steps, gerrs, perrs;
  for (double s : {t, t / 2, t / 4}) {
    const Operator gen = generator(s);
    const Operator tgt = target(s);
    const Operator prop = expi(gen, 1.0);
    const double gerr = spectral_norm(gen - tgt);
    const double perr = spectral_norm(prop - expi(tgt, 1.0));
    if (s == t) {
      out.propagator = prop;
      out.generator_estimate = gen;
      out.target_generator = tgt;
      out.generator_error = gerr;
      out.error_norm = perr;
    }
    steps.push_back(std::abs(s));
    gerrs.push_back(gerr);
    perrs.push_back(perr);
  }
  out.fitted_order = fit_order(steps, perrs);
  out.generator_order = fit_order(steps, gerrs);
  return out;
}

std::vector<double> suzuki_triplet() {
  const double p1 = 1.0 / (2.0 - std::cbrt(2.0));
  return {p1, 1.0 - 2.0 * p1, p1};
}

CompositionResult fractal_compose(const Operator &a, const Operator &b, double t,
                                  const std::vector<double> &p_list, OuterSide side,
                                  FractalMode mode) {
  check_pair(a, b);
  if (p_list.empty()) throw DomainError("fractal composition needs at least one factor");
  double sum = 0.0;
  for (double p : p_list) sum += p;
  if (std::abs(sum - 1.0) > 1e-12) throw DomainError("fractal parameters must sum to 1");
  const std::size_t r = p_list.size();
  for (std::size_t j = 0; j < r; ++j) {
    if (std::abs(p_list[j] - p_list[r - 1 - j]) > 1e-12) {
      throw DomainError("fractal parameters must be palindromic");
    }
  }
  const Operator total = a + b;
  CompositionResult out;
  std::vector<double> steps, perrs, gerrs;
  const int per_factor_calls = side == OuterSide::A ? 1 : 2;
  if (mode == FractalMode::Product) {
    out.target_generator = t * total;
    out.oracle_calls = static_cast<int>(r) * per_factor_calls;
    for (double s : {t, t / 2, t / 4}) {
      const Operator prop = fractal_product(a, b, s, p_list, side);
      const double perr = spectral_norm(prop - expi(total, s));
      if (s == t) {
        out.propagator = prop;
        out.error_norm = perr;
        // The generator is only well defined away from the branch cut.
        try {
          out.generator_estimate = matrix_log_skew(prop);
          out.generator_error = spectral_norm(*out.generator_estimate - out.target_generator);
        } catch (const BranchAmbiguityError &) {
          out.generator_estimate.reset();
        }
      }
      steps.push_back(std::abs(s));
      perrs.push_back(perr);
    }
    out.fitted_order = fit_order(steps, perrs);
    return out;
  }
  // Difference mode: sqrt(f^B) (f^A)^{-1} sqrt(f^B).
  out.target_generator = Operator::Zero(a.rows(), a.cols());
  out.oracle_calls = static_cast<int>(r) * 3;
  for (double s : {t, t / 2, t / 4}) {
    const Operator ha = matrix_log_skew(fractal_product(a, b, s, p_list, OuterSide::A));
    const Operator hb = matrix_log_skew(fractal_product(a, b, s, p_list, OuterSide::B));
    const Operator prop = symmetric_of(hb, ha, -1.0);
    const Operator gen = matrix_log_skew(prop);
    const double gerr = spectral_norm(gen);
    const double perr = spectral_norm(prop - identity(a.rows()));
    if (s == t) {
      out.propagator = prop;
      out.generator_estimate = gen;
      out.generator_error = gerr;
      out.error_norm = perr;
    }
    steps.push_back(std::abs(s));
    gerrs.push_back(gerr);
    perrs.push_back(perr);
  }
  out.fitted_order = fit_order(steps, perrs);
  out.generator_order = fit_order(steps, gerrs);
  return out;
}

}  // namespace spinsearch
