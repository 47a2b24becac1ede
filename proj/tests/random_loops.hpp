// Copyright 2026 The phrictl Authors
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

// Randomized loops shared by the unit and acceptance tests. Each loop is
//   G = g / (tau_1 s^beta + 1),  H = 1 / (tau_2 s + 1),
//   Y = 1 / (m_F s^alpha + b_F),  Z_eq = (m s^2 + b s + k) / s,
// kept both as library objects and as raw parameters for the oracles.

#pragma once

#include <random>

#include "oracles.hpp"
#include "phri/metrics.hpp"

namespace loops {

struct RandomLoop {
  double g, tau1, beta, tau2;
  double alpha, m_F, b_F;
  double m, b, k;

  phri::PlantModel plant() const {
    return {phri::FractionalTransferFunction({{g, 0.0}}, {{tau1, beta}, {1.0, 0.0}}),
            phri::FractionalTransferFunction({{1.0, 0.0}}, {{tau2, 1.0}, {1.0, 0.0}})};
  }
  phri::AdmittanceController controller() const { return {alpha, m_F, b_F}; }
  phri::EquivalentImpedance zeq() const { return {m, b, k}; }

  /// L(jw) from polar-form block responses.
  oracle::Complex loop(double w) const {
    using oracle::Complex;
    const Complex s(0.0, w);
    const Complex G = g / (tau1 * oracle::jw_power(beta, w) + 1.0);
    const Complex H = 1.0 / (tau2 * s + 1.0);
    const Complex Y = 1.0 / (m_F * oracle::jw_power(alpha, w) + b_F);
    const Complex Z = (m * s * s + b * s + k) / s;
    return G * Y * H * Z;
  }

  /// Closed-loop characteristic polynomial (integer orders only):
  /// (tau1 s + 1)(tau2 s + 1)(m_F s + b_F) s + g (m s^2 + b s + k).
  oracle::Poly characteristic() const {
    const oracle::Poly den = oracle::multiply(
        oracle::multiply(oracle::multiply({1.0, tau1}, {1.0, tau2}), {b_F, m_F}), {0.0, 1.0});
    return oracle::add(den, {g * k, g * b, g * m});
  }
};

inline RandomLoop draw_loop(std::mt19937_64& rng, bool integer_orders) {
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  RandomLoop l{};
  l.g = uniform(0.2, 20.0);
  l.tau1 = uniform(0.002, 0.5);
  l.beta = integer_orders ? 1.0 : uniform(0.3, 1.0);
  l.tau2 = uniform(0.002, 0.5);
  l.alpha = integer_orders ? 1.0 : uniform(0.1, 1.0);
  l.m_F = uniform(0.05, 3.0);
  l.b_F = uniform(0.05, 3.0);
  l.m = uniform(0.0, 2.0);
  l.b = uniform(0.0, 3.0);
  l.k = uniform(1.0, 400.0);
  return l;
}

}  // namespace loops
