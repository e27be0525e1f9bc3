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

// Brute-force reference computations shared by the unit and acceptance tests.
// Everything here is deliberately naive: explicit loops, no shortcuts taken
// from the library under test beyond the basic spin operators.

#include <cmath>
#include <random>
#include <vector>

#include "spinsearch/linalg.hpp"

namespace spinsearch::testing {

inline Operator random_hermitian(Index dim, std::mt19937_64 &rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Operator a(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) a(i, j) = Complex(normal(rng), normal(rng));
  }
  return scale * 0.5 * (a + a.adjoint());
}

inline Operator random_unitary(Index dim, std::mt19937_64 &rng) {
  return expm_unitary(random_hermitian(dim, rng), 1.0);
}

/** Plain u rho u^dagger, written out with explicit adjoint. */
inline Operator brute_conjugate(const Operator &u, const Operator &rho) {
  return u * rho * u.adjoint();
}

/** Diagonal 0/1 projector onto basis state k. */
inline Operator basis_projector(Index k, Index dim) {
  Operator d = Operator::Zero(dim, dim);
  d(k, k) = 1.0;
  return d;
}

/** Taylor-series matrix exponential exp(-i H t), independent of any eigensolver. */
inline Operator series_expm(const Operator &h, double t, int terms = 60) {
  const Index dim = h.rows();
  // Scaling and squaring keeps the series well conditioned.
  int squarings = 0;
  double norm = h.cwiseAbs().rowwise().sum().maxCoeff() * std::abs(t);
  while (norm > 0.5) {
    norm /= 2;
    ++squarings;
  }
  const Operator x = Complex(0.0, -t / std::ldexp(1.0, squarings)) * h;
  Operator term = Operator::Identity(dim, dim);
  Operator sum = term;
  for (int k = 1; k < terms; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/**
 * Hermitian H with U = exp(i H) from the Mercator series of log(U), after
 * Denman-Beavers square roots bring U close to the identity. Valid for
 * eigenphases away from pi; no eigensolver involved.
 */
inline Operator series_log_generator(const Operator &u, int terms = 80) {
  const Index dim = u.rows();
  const Operator eye = Operator::Identity(dim, dim);
  Operator root = u;
  int halvings = 0;
  while ((root - eye).cwiseAbs().rowwise().sum().maxCoeff() > 0.05 && halvings < 40) {
    Operator y = root;
    Operator z = eye;
    for (int it = 0; it < 60; ++it) {
      const Operator y_next = 0.5 * (y + z.inverse());
      z = 0.5 * (z + y.inverse());
      y = y_next;
    }
    root = y;
    ++halvings;
  }
  const Operator x = root - eye;
  Operator power = x;
  Operator sum = Operator::Zero(dim, dim);
  for (int k = 1; k <= terms; ++k) {
    sum += (k % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(k) * power;
    power = power * x;
  }
  const Operator h = Complex(0.0, -std::ldexp(1.0, halvings)) * sum;
  return 0.5 * (h + h.adjoint());
}

/**
 * i[X_l, D_0 - D_{N-1}] written as four tensor-product terms. The first l
 * qubits carry I^-/I^+ factors, the remaining ones (E/2 +- I_z) factors.
 */
inline Operator four_term_generator(int n, int l) {
  const Operator e = Operator::Identity(2, 2);
  Operator iz = Operator::Zero(2, 2);
  iz(0, 0) = 0.5;
  iz(1, 1) = -0.5;
  Operator iplus = Operator::Zero(2, 2);
  iplus(0, 1) = 1.0;
  const Operator iminus = iplus.adjoint();
  auto term = [&](const Operator &ladder, double zsign) {
    Operator out = Operator::Identity(1, 1);
    for (int k = 0; k < n; ++k) {
      out = kron(out, k < l ? ladder : Operator(0.5 * e + zsign * iz));
    }
    return out;
  };
  const Complex h = 0.5 * kI;
  return h * term(iminus, +1) - h * term(iplus, -1) - h * term(iplus, +1) + h * term(iminus, -1);
}

/** Direct O(M^2) DFT with the same normalisation and grid as spectrum(). */
inline std::vector<Complex> direct_dft(const std::vector<Complex> &s) {
  const long m = static_cast<long>(s.size());
  std::vector<Complex> out(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) {
    const long k = i - m / 2;
    Complex acc{};
    for (long j = 0; j < m; ++j) {
      acc += s[static_cast<std::size_t>(j)] * std::exp(Complex(0.0, 2.0 * kPi * k * j / m));
    }
    out[static_cast<std::size_t>(i)] = acc / static_cast<double>(m);
  }
  return out;
}

/** F_z built from its diagonal definition M_k = (n - 2 popcount k) / 2. */
inline Operator fz_diagonal(int n) {
  const Index dim = Index{1} << n;
  Operator fz = Operator::Zero(dim, dim);
  for (Index k = 0; k < dim; ++k) {
    int ones = 0;
    for (Index b = k; b != 0; b >>= 1) ones += static_cast<int>(b & 1);
    fz(k, k) = 0.5 * (n - 2 * ones);
  }
  return fz;
}

}  // namespace spinsearch::testing
