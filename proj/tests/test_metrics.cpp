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

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "phri/errors.hpp"
#include "phri/metrics.hpp"
#include "random_loops.hpp"

using phri::Complex;

namespace {

const phri::PlantModel kUnity{};

// Default plant written out by hand: 10 Hz lag and 20 Hz 2nd-order Butterworth.
Complex default_G(double w) {
  return 1.0 / (Complex(0.0, w) / phri::hz_to_rad(10.0) + 1.0);
}
Complex default_H(double w) {
  const Complex s = Complex(0.0, w) / phri::hz_to_rad(20.0);
  return 1.0 / (s * s + std::sqrt(2.0) * s + 1.0);
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("weighting function") {
  const phri::WeightingFunction W;
  CHECK(W.order == 5);
  CHECK(W(W.cutoff) == 1.0 / std::sqrt(2.0));
  double previous = 1.0;
  for (const double w : phri::default_objective_grid()) {
    const double v = W(w);
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
    CHECK(v <= previous);
    CHECK(v == doctest::Approx(1.0 / std::sqrt(1.0 + std::pow(w / W.cutoff, 10))).epsilon(1e-14));
    previous = v;
  }
  CHECK_THROWS_AS(phri::WeightingFunction(0, 1.0), phri::ConfigError);
  CHECK_THROWS_AS(phri::WeightingFunction(2, 0.0), phri::ConfigError);
}

TEST_CASE("impedance bounds and scenarios") {
  const auto s1 = phri::ImpedanceBounds::scenario("S1");
  CHECK(s1.m == phri::Interval{0.0, 5.0});
  CHECK(s1.b == phri::Interval{0.0, 41.0});
  CHECK(s1.k == phri::Interval{0.0, 600.0});
  CHECK(phri::ImpedanceBounds::scenario("S2").k == phri::Interval{610.0, 1210.0});
  CHECK(phri::ImpedanceBounds::scenario("S3").k == phri::Interval{610.0, 1610.0});
  CHECK_THROWS_AS(phri::ImpedanceBounds::scenario("S4"), phri::ConfigError);
  CHECK_THROWS_AS(phri::ImpedanceBounds({1.0, 0.0}, {0.0, 1.0}, {0.0, 1.0}), phri::ConfigError);

  const auto corners = s1.corners(600.0);
  CHECK(corners[0] == phri::EquivalentImpedance(0.0, 0.0, 600.0));
  CHECK(corners[1] == phri::EquivalentImpedance(5.0, 0.0, 600.0));
  CHECK(corners[2] == phri::EquivalentImpedance(0.0, 41.0, 600.0));
  CHECK(corners[3] == phri::EquivalentImpedance(5.0, 41.0, 600.0));
}

TEST_CASE("parasitic magnitude") {
  CHECK(phri::parasitic_magnitude(kUnity, {1.0, 0.0, 2.0}, 0.7) == doctest::Approx(2.0));
  CHECK(phri::parasitic_magnitude(kUnity, {1.0, 1.0, 0.0}, 3.0) == doctest::Approx(3.0));

  const auto plant = phri::default_plant();
  const double w = phri::hz_to_rad(0.01);
  const double expect = std::abs(Complex(90.0, 3.2 * w)) / std::abs(default_G(w) * default_H(w));
  CHECK(relative(phri::parasitic_magnitude(plant, {1.0, 3.2, 90.0}, w), expect) < 1e-12);
}

TEST_CASE("transparency cost") {
  SUBCASE("flat weighting with unity plant sums log10 of b_F") {
    const auto grid = phri::make_log_grid(0.1, 100.0, 37);
    const phri::LoopSampler sampler(kUnity, 1.0, grid);
    const std::vector<double> ones(grid.size(), 1.0);
    CHECK(phri::transparency_cost(sampler, {1.0, 0.0, 10.0}, ones) == doctest::Approx(37.0));
  }

  SUBCASE("monotone in both parameters") {
    const auto plant = phri::default_plant();
    const auto grid = phri::default_objective_grid();
    const phri::WeightingFunction W;
    for (double alpha : {1.0, 0.7, 0.4}) {
      const double base = phri::transparency_cost(plant, {alpha, 1.0, 10.0}, grid, W);
      CHECK(base < phri::transparency_cost(plant, {alpha, 2.0, 10.0}, grid, W));
      CHECK(base < phri::transparency_cost(plant, {alpha, 1.0, 11.0}, grid, W));
    }
  }

  SUBCASE("default plant against a direct sum and the recorded value") {
    const auto plant = phri::default_plant();
    const auto grid = phri::default_objective_grid();
    const phri::WeightingFunction W;
    double direct = 0.0;
    for (const double w : grid) {
      const double weight = 1.0 / std::sqrt(1.0 + std::pow(w / phri::hz_to_rad(5.0), 10));
      const Complex gyh = default_G(w) * default_H(w) / Complex(90.0, 3.2 * w);
      direct += weight * std::log10(1.0 / std::abs(gyh));
    }
    const double C = phri::transparency_cost(plant, {1.0, 3.2, 90.0}, grid, W);
    CHECK(relative(C, direct) < 1e-12);
    // Golden value, recorded on first computation.
    CHECK(relative(C, 786.10004539195359) < 1e-12);
  }

  SUBCASE("vanishing GYH gives the infinite sentinel") {
    // G has a zero on the imaginary axis at w = 1: G = (s^2 + 1).
    const phri::PlantModel notch{phri::FractionalTransferFunction({{1.0, 2.0}, {1.0, 0.0}},
                                                                 {{1.0, 0.0}}),
                                 phri::FractionalTransferFunction::unity()};
    const phri::FrequencyGrid grid({0.5, 1.0, 2.0});
    CHECK(std::isinf(phri::parasitic_magnitude(notch, {1.0, 1.0, 1.0}, 1.0)));
    CHECK(std::isinf(phri::transparency_cost(notch, {1.0, 1.0, 1.0}, grid, {})));
  }
}

TEST_CASE("loop response") {
  CHECK(phri::loop_response(kUnity, {1.0, 0.0, 1.0}, {0.0, 1.0, 0.0}, 3.0) == Complex(1.0, 0.0));
  // Y = 1 with b_F = 1 and Z_eq resonance at w = 2.
  CHECK(std::abs(phri::loop_response(kUnity, {1.0, 0.0, 1.0}, {1.0, 2.0, 4.0}, 2.0) -
                 Complex(2.0, 0.0)) < 1e-15);

  const auto plant = phri::default_plant();
  const double w = 2.0 * oracle::kPi;
  const Complex Y = 1.0 / Complex(90.0, 3.2 * w);
  const Complex Z = Complex(41.0, 5.0 * w - 600.0 / w);
  const Complex expect = default_G(w) * Y * default_H(w) * Z;
  const Complex got = phri::loop_response(plant, {1.0, 3.2, 90.0}, {5.0, 41.0, 600.0}, w);
  CHECK(std::abs(got - expect) < 1e-12 * std::abs(expect));

  SUBCASE("sampler and single-call paths agree bit for bit") {
    const auto grid = phri::default_objective_grid();
    const phri::LoopSampler sampler(plant, 0.4, grid);
    const phri::AdmittanceController ctrl(0.4, 16.7, 56.0);
    const phri::EquivalentImpedance z(5.0, 41.0, 600.0);
    for (std::size_t i = 0; i < grid.size(); i += 37) {
      CHECK(sampler.loop(i, ctrl, z) == phri::loop_response(plant, ctrl, z, grid[i]));
    }
    CHECK_THROWS_AS(sampler.loop(0, {0.7, 1.0, 1.0}, z), phri::ContractViolation);
  }
}

TEST_CASE("Nyquist stability") {
  const auto nyquist = phri::default_nyquist_grid();

  SUBCASE("zero loop") {
    const auto v = phri::is_stable(kUnity, {1.0, 1.0, 1.0}, {0.0, 0.0, 0.0}, nyquist);
    CHECK(v.stable);
    CHECK(v.winding_number == 0);
    CHECK(v.min_distance_to_critical == 1.0);
  }

  SUBCASE("textbook third-order loop") {
    // G = 1/(s+1), Y = 1/(s+1), Z_eq = k/s: stable iff k < 2.
    const phri::PlantModel plant{
        phri::FractionalTransferFunction({{1.0, 0.0}}, {{1.0, 1.0}, {1.0, 0.0}}),
        phri::FractionalTransferFunction::unity()};
    CHECK(phri::is_stable(plant, {1.0, 1.0, 1.0}, {0.0, 0.0, 1.5}, nyquist).stable);
    const auto unstable = phri::is_stable(plant, {1.0, 1.0, 1.0}, {0.0, 0.0, 3.0}, nyquist);
    CHECK_FALSE(unstable.stable);
    // Two closed-loop poles in the right half plane.
    CHECK(unstable.winding_number == -2);
  }

  SUBCASE("randomized integer-order loops against characteristic roots") {
    std::mt19937_64 rng(2024);
    int checked = 0;
    int unstable = 0;
    while (checked < 40) {
      const auto loop = loops::draw_loop(rng, true);
      const double max_re = oracle::max_real_part(loop.characteristic());
      if (std::abs(max_re) < 1e-3) {
        continue;
      }
      const auto v = phri::is_stable(loop.plant(), loop.controller(), loop.zeq(), nyquist);
      CHECK(v.stable == (max_re < 0.0));
      unstable += max_re < 0.0 ? 0 : 1;
      ++checked;
    }
    // The sample must exercise both verdicts.
    CHECK(unstable > 0);
    CHECK(unstable < checked);
  }

  SUBCASE("reference IOAC at the S1 stiffness") {
    CHECK(phri::is_stable(phri::default_plant(), {1.0, 3.2, 90.0}, {0.0, 0.0, 600.0}, nyquist)
              .stable);
  }
}

TEST_CASE("vector margin") {
  const auto grid = phri::default_objective_grid();
  CHECK(phri::vector_margin(kUnity, {1.0, 1.0, 1.0}, {0.0, 0.0, 0.0}, grid) == 1.0);

  const phri::PlantModel plant{
      phri::FractionalTransferFunction({{1.0, 0.0}}, {{1.0, 1.0}, {1.0, 0.0}}),
      phri::FractionalTransferFunction::unity()};
  CHECK_THROWS_AS(phri::vector_margin(plant, {1.0, 1.0, 1.0}, {0.0, 0.0, 3.0}, grid),
                  phri::ContractViolation);

  SUBCASE("identity with the minimum return difference on random stable loops") {
    std::mt19937_64 rng(77);
    int checked = 0;
    while (checked < 30) {
      const auto loop = loops::draw_loop(rng, false);
      if (!phri::is_stable(loop.plant(), loop.controller(), loop.zeq(), phri::default_nyquist_grid())
               .stable) {
        continue;
      }
      double max_s = 0.0;
      double min_d = std::numeric_limits<double>::infinity();
      for (const double w : grid) {
        const Complex one_plus_l = 1.0 + loop.loop(w);
        max_s = std::max(max_s, std::abs(1.0 / one_plus_l));
        min_d = std::min(min_d, std::abs(one_plus_l));
      }
      const double rho = phri::vector_margin(loop.plant(), loop.controller(), loop.zeq(), grid);
      CHECK(std::abs(rho - 1.0 / max_s) < 1e-12);
      CHECK(std::abs(rho - min_d) < 1e-12);
      ++checked;
    }
  }

  SUBCASE("strictly proper loops keep rho at most one") {
    const auto plant_d = phri::default_plant();
    for (double alpha : {1.0, 0.7, 0.4}) {
      for (double b : {1.0, 50.0, 300.0}) {
        const auto rho = phri::worst_case_margin(plant_d, {alpha, 10.0, b},
                                                 phri::ImpedanceBounds::scenario("S1"), 600.0,
                                                 grid);
        if (rho) {
          CHECK(*rho > 0.0);
          CHECK(*rho <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("worst-case margin over corners") {
  const auto plant = phri::default_plant();
  const auto grid = phri::default_objective_grid();
  const auto s1 = phri::ImpedanceBounds::scenario("S1");

  SUBCASE("collapsed bounds reduce to a single vector margin") {
    const phri::ImpedanceBounds point({2.0, 2.0}, {10.0, 10.0}, {300.0, 300.0});
    const phri::AdmittanceController ctrl(0.7, 6.0, 74.0);
    const auto wc = phri::worst_case_margin(plant, ctrl, point, 300.0, grid);
    REQUIRE(wc.has_value());
    CHECK(*wc == phri::vector_margin(plant, ctrl, {2.0, 10.0, 300.0}, grid));
  }

  SUBCASE("no larger than any corner") {
    for (const phri::AdmittanceController ctrl :
         {phri::AdmittanceController(1.0, 3.2, 90.0), phri::AdmittanceController(0.7, 6.0, 74.0),
          phri::AdmittanceController(0.4, 16.7, 56.0)}) {
      const auto wc = phri::worst_case_margin(plant, ctrl, s1, 600.0, grid);
      REQUIRE(wc.has_value());
      for (const auto& z : s1.corners(600.0)) {
        CHECK(*wc <= phri::vector_margin(plant, ctrl, z, grid));
      }
    }
    // Golden value, recorded on first computation.
    CHECK(relative(*phri::worst_case_margin(plant, {1.0, 3.2, 90.0}, s1, 600.0, grid),
                   0.65594443350184428) < 1e-12);
  }

  SUBCASE("an unstable corner gives the sentinel") {
    const phri::PlantModel lag{
        phri::FractionalTransferFunction({{1.0, 0.0}}, {{1.0, 1.0}, {1.0, 0.0}}),
        phri::FractionalTransferFunction::unity()};
    const phri::ImpedanceBounds b({0.0, 0.0}, {0.0, 0.0}, {0.0, 3.0});
    CHECK(phri::worst_case_margin(lag, {1.0, 1.0, 1.0}, b, 1.5, grid).has_value());
    CHECK_FALSE(phri::worst_case_margin(lag, {1.0, 1.0, 1.0}, b, 3.0, grid).has_value());
  }
}

TEST_CASE("stability boundary") {
  const auto s1 = phri::ImpedanceBounds::scenario("S1");

  SUBCASE("no spring, nothing to bracket") {
    const auto boundary = phri::stability_boundary(kUnity, 1.0, 0.0, {0.5, 5.0, 50.0}, s1);
    REQUIRE(boundary.size() == 3);
    for (const auto& p : boundary) {
      CHECK_FALSE(p.b_F_critical.has_value());
    }
  }

  SUBCASE("bracketing and stiffness ordering on the default plant") {
    const auto plant = phri::default_plant();
    const auto nyquist = phri::default_nyquist_grid();
    const phri::LoopSampler sampler(plant, 1.0, nyquist);
    const std::vector<double> masses{20.0, 60.0, 100.0};
    const auto soft = phri::stability_boundary(plant, 1.0, 610.0, masses, s1);
    const auto stiff = phri::stability_boundary(plant, 1.0, 1210.0, masses, s1);
    int bracketed = 0;
    for (std::size_t i = 0; i < masses.size(); ++i) {
      if (stiff[i].b_F_critical) {
        ++bracketed;
        const double b = *stiff[i].b_F_critical;
        CHECK(phri::corners_stable(sampler, {1.0, masses[i], b}, s1, 1210.0));
        if (b - 0.5 > 0.001) {
          CHECK_FALSE(phri::corners_stable(sampler, {1.0, masses[i], b - 0.5}, s1, 1210.0));
        }
        if (soft[i].b_F_critical) {
          CHECK(*stiff[i].b_F_critical >= *soft[i].b_F_critical);
        }
      } else {
        // Unbracketed at 1210 means stable throughout, so 610 must be too.
        CHECK_FALSE(soft[i].b_F_critical.has_value());
      }
    }
    CHECK(bracketed > 0);
  }
}

TEST_CASE("cut-off frequency") {
  const auto grid = phri::default_objective_grid();

  SUBCASE("pure spring never rolls off") {
    const auto r = phri::cutoff_from_displayed_impedance(
        [](double w) { return Complex(0.0, -500.0 / w); }, grid);
    CHECK(r.saturated);
    CHECK(r.hz == doctest::Approx(30.0).epsilon(1e-12));
  }

  SUBCASE("spring and damper corner at k / b") {
    const double k = 40.0;
    const double b = 3.0;
    const auto r = phri::cutoff_from_displayed_impedance(
        [&](double w) { return Complex(b, -k / w); }, grid);
    CHECK_FALSE(r.saturated);
    CHECK(std::abs(r.hz - phri::rad_to_hz(k / b)) < 2e-3);
  }

  SUBCASE("displayed impedance of the default plant") {
    const auto plant = phri::default_plant();
    const phri::AdmittanceController ctrl(0.4, 16.7, 56.0);
    const phri::EquivalentImpedance env(0.0, 0.0, 610.0);
    const double w = 3.0;
    const Complex gyh = default_G(w) * default_H(w) / (16.7 * oracle::jw_power(0.4, w) + 56.0);
    const Complex expect = (1.0 + gyh * env.at_frequency(w)) / gyh;
    CHECK(std::abs(phri::displayed_impedance(plant, ctrl, env, w) - expect) <
          1e-12 * std::abs(expect));
    const auto r = phri::cutoff_frequency(plant, ctrl, env);
    CHECK_FALSE(r.saturated);
    // Golden value, recorded on first computation.
    CHECK(std::abs(r.hz - 1.6878191056700806) < 1e-9);
  }

  SUBCASE("stiffer environments raise the cut-off") {
    const auto plant = phri::default_plant();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> alpha(0.3, 1.0);
    std::uniform_real_distribution<double> m(1.0, 40.0);
    std::uniform_real_distribution<double> b(5.0, 200.0);
    for (int i = 0; i < 12; ++i) {
      const phri::AdmittanceController ctrl(alpha(rng), m(rng), b(rng));
      const auto lo = phri::cutoff_frequency(plant, ctrl, {0.0, 0.0, 610.0});
      const auto hi = phri::cutoff_frequency(plant, ctrl, {0.0, 0.0, 1010.0});
      CHECK(hi.hz > lo.hz);
    }
  }
}
