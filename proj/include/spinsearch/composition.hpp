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

#include <optional>
#include <vector>

#include "spinsearch/linalg.hpp"

namespace spinsearch {

/**
 * Outcome of a composed propagator. Compositions written in the imaginary time
 * x = i t are carried with real t, so every factor exp(x A) is the unitary
 * exp(i t A) and generators are Hermitian H with U = exp(i H).
 */
struct CompositionResult {
  Operator propagator;
  /** log of the propagator; absent where the method gives it no meaning. */
  std::optional<Operator> generator_estimate;
  Operator target_generator;
  /** Spectral norm of (propagator - exp(i target_generator)) unless noted. */
  double error_norm = 0.0;
  /** Spectral norm of (generator_estimate - target_generator). */
  double generator_error = 0.0;
  /** Log-log slope of error_norm over three step sizes in geometric progression. */
  double fitted_order = 0.0;
  /** Same for generator_error. */
  double generator_order = 0.0;
  /** Applications of the oracle-dependent factor. */
  int oracle_calls = 0;
};

/** Least-squares slope of log(error) against log(step). NaN if any error is 0. */
double fit_order(const std::vector<double> &steps, const std::vector<double> &errors);

/**
 * (prod_k exp(-i H_k t/m))^m against exp(-i sum H_k t). The order is fitted
 * over m, 2m, 4m with step 1/m. The last Hamiltonian counts as the oracle
 * factor, so oracle_calls = m. No generator is produced.
 */
CompositionResult trotter_product(const std::vector<Operator> &h_list, double t, int m);

/**
 * (e^{iA/sqrt m} e^{iB/sqrt m} e^{-iA/sqrt m} e^{-iB/sqrt m})^m against exp(-[A,B]).
 * Order fitted over m, 4m, 16m with step 1/m.
 */
CompositionResult commutator_product(const Operator &a, const Operator &b, int m);

enum class OuterSide { A, B };

/**
 * S_A = exp(xA/2) exp(xB) exp(xA/2) (or the B-outer form) with x = i t.
 * Target generator t(A + B); orders fitted over t, t/2, t/4.
 */
CompositionResult symmetric_sandwich(const Operator &a, const Operator &b, double t,
                                     OuterSide side = OuterSide::A);

/**
 * Even-in-t part of the sandwich generator deviation,
 * max-abs of ((H(t) - t(A+B)) + (H(-t) + t(A+B))) / 2.
 */
double sandwich_even_content(const Operator &a, const Operator &b, double t, OuterSide side);

/** Double commutator combination [B,[B,A]] - [A,[A,B]]. */
Operator double_commutator_term(const Operator &a, const Operator &b);

/**
 * Second (level 2) or fourth (level 4) order cross interaction by nested
 * symmetric compositions. Level 2 targets -(t^3/8)([B,[B,A]] - [A,[A,B]]); the
 * level-4 target is zero and the measured scaling is reported. Any other level
 * throws DomainError; a log branch failure propagates BranchAmbiguityError.
 */
CompositionResult cross_interaction(const Operator &a, const Operator &b, double t, int level);

/** Oracle factors for the level-l cross interaction on the given outer side. */
int cross_interaction_oracle_calls(int level, OuterSide side);

enum class FractalMode { Product, Difference };

/**
 * S(p_1 x) S(p_2 x) ... S(p_r x). The p_k must sum to 1 and be palindromic.
 * In Difference mode the A- and B-outer products f^A, f^B are combined as
 * sqrt(f^B) (f^A)^{-1} sqrt(f^B) and the generator of that is reported against
 * a zero target.
 */
CompositionResult fractal_compose(const Operator &a, const Operator &b, double t,
                                  const std::vector<double> &p_list, OuterSide side = OuterSide::A,
                                  FractalMode mode = FractalMode::Product);

/** Standard fourth-order symmetric triplet (p1, 1 - 2 p1, p1), p1 = 1/(2 - 2^{1/3}). */
std::vector<double> suzuki_triplet();

}  // namespace spinsearch
