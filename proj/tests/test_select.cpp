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
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "phri/errors.hpp"
#include "phri/select.hpp"

namespace {

phri::ParetoFront simple_front(std::initializer_list<std::pair<double, double>> c_rho) {
  phri::ParetoFront f{0.5, {}};
  double m = 1.0;
  for (auto [c, rho] : c_rho) {
    f.points.push_back(fixture::point(0.5, m, 10.0, c, rho, {}, 3.0));
    m += 1.0;
  }
  return f;
}

// Random valid front: C and rho both increasing.
phri::ParetoFront random_front(std::mt19937_64& rng, double alpha, double c_shift = 0.0) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  phri::ParetoFront f{alpha, {}};
  double c = 5.0 + c_shift;
  double rho = 0.3;
  for (int i = 0; i < 12; ++i) {
    c += u(rng);
    rho += 0.03 * u(rng);
    f.points.push_back(fixture::point(alpha, 1.0 + i, 10.0, c, rho, {}, 1.5 + 2.0 * u(rng)));
  }
  return f;
}

bool same_points(const phri::ParetoFront& a, const phri::ParetoFront& b) {
  return a.points == b.points;
}

}  // namespace

TEST_CASE("constraint examples") {
  const auto front = simple_front({{10.0, 0.5}, {12.0, 0.6}});

  const auto none = phri::apply_constraints(front, {});
  CHECK(same_points(none.front, front));
  CHECK(none.diagnostic.empty());
  CHECK(none.eliminated.feasible == 2);

  phri::SelectionConstraints both;
  both.C_max = 11.0;
  both.rho_min = 0.55;
  const auto empty = phri::apply_constraints(front, both);
  CHECK(empty.front.empty());
  CHECK_FALSE(empty.diagnostic.empty());
  CHECK(empty.eliminated.by_C == 1);
  CHECK(empty.eliminated.by_rho == 1);
  CHECK(empty.eliminated.total == 2);

  const auto upper = simple_front({{10.0, 0.6}, {12.0, 0.7}});
  phri::SelectionConstraints c_only;
  c_only.C_max = 11.0;
  const auto first = phri::apply_constraints(upper, c_only);
  REQUIRE(first.front.size() == 1);
  CHECK(first.front.points[0] == upper.points[0]);
}

TEST_CASE("constraint properties") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto front = random_front(rng, 0.7);
    phri::SelectionConstraints cons;
    if (u(rng) < 0.7) cons.C_max = 6.0 + 8.0 * u(rng);
    if (u(rng) < 0.7) cons.rho_min = 0.3 + 0.3 * u(rng);
    if (u(rng) < 0.7) cons.omega_c_min_hz = 1.5 + 2.0 * u(rng);

    const auto once = phri::apply_constraints(front, cons);
    for (const auto& p : once.front.points) {
      CHECK(std::find(front.points.begin(), front.points.end(), p) != front.points.end());
    }
    CHECK(once.eliminated.total + once.eliminated.feasible == front.size());
    CHECK(same_points(phri::apply_constraints(once.front, cons).front, once.front));

    // One bound at a time, in two different orders.
    phri::SelectionConstraints c_only, rho_only, wc_only;
    c_only.C_max = cons.C_max;
    rho_only.rho_min = cons.rho_min;
    wc_only.omega_c_min_hz = cons.omega_c_min_hz;
    const auto a = phri::apply_constraints(
        phri::apply_constraints(phri::apply_constraints(front, c_only).front, rho_only).front,
        wc_only);
    const auto b = phri::apply_constraints(
        phri::apply_constraints(phri::apply_constraints(front, wc_only).front, c_only).front,
        rho_only);
    CHECK(same_points(a.front, once.front));
    CHECK(same_points(b.front, once.front));
  }
}

TEST_CASE("cut-off annotation") {
  auto front = simple_front({{10.0, 0.5}, {12.0, 0.6}});
  for (auto& p : front.points) p.omega_c_hz.reset();
  phri::SelectionConstraints cons;
  cons.omega_c_min_hz = 2.3;
  CHECK_THROWS_AS(phri::apply_constraints(front, cons), phri::ContractViolation);

  int calls = 0;
  const phri::CutoffEvaluator fake = [&](const phri::ParetoPoint& p) {
    ++calls;
    return p.m_F + 0.5;
  };
  const auto out = phri::apply_constraints(front, cons, fake);
  CHECK(calls == 2);
  REQUIRE(out.front.size() == 1);
  CHECK(out.front.points[0].omega_c_hz == 2.5);
  CHECK(out.eliminated.by_omega_c == 1);

  // Existing annotations are kept.
  front.points[0].omega_c_hz = 9.0;
  calls = 0;
  const auto kept = phri::apply_constraints(front, cons, fake);
  CHECK(calls == 1);
  CHECK(kept.front.size() == 2);
  CHECK(kept.front.points[0].omega_c_hz == 9.0);

  SUBCASE("plant evaluator agrees with the metric") {
    const auto plant = phri::default_plant();
    const auto eval = phri::plant_cutoff_evaluator(plant, 610.0);
    const auto p = fixture::point(0.4, 16.7, 56.0, 13.0, 0.594, {}, 0.0);
    CHECK(eval(p) == phri::cutoff_frequency(plant, {0.4, 16.7, 56.0}, {0.0, 0.0, 610.0}).hz);
  }

  phri::SelectionConstraints bad;
  bad.k_e_eval = 0.0;
  CHECK_THROWS_AS(phri::apply_constraints(front, bad), phri::ConfigError);
}

TEST_CASE("design choice") {
  SUBCASE("singleton") {
    const auto one = simple_front({{7.0, 0.4}});
    for (const auto& policy : {phri::SelectionPolicy::min_C(), phri::SelectionPolicy::max_rho(),
                               phri::SelectionPolicy::by_weight(0.3)}) {
      CHECK(phri::choose_design(one, policy) == one.points[0]);
    }
  }

  SUBCASE("tabulated optima") {
    phri::ParetoFront rows{1.0, {}};
    for (const auto& r : fixture::kTableOne) {
      rows.points.push_back(fixture::point(r.alpha, r.m_F, r.b_F, r.C, r.rho, r.w, 2.4));
    }
    const auto chosen = phri::choose_design(rows, phri::SelectionPolicy::min_C());
    CHECK(chosen.alpha == 0.4);
    CHECK(chosen.m_F == 16.7);
    CHECK(chosen.b_F == 56.0);
    CHECK(chosen.C == 13.0);
    CHECK(chosen.rho == 0.594);
  }

  SUBCASE("policies on random fronts") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
      const auto front = random_front(rng, 0.4);
      const auto by0 = phri::choose_design(front, phri::SelectionPolicy::by_weight(0.0));
      CHECK(by0 == phri::choose_design(front, phri::SelectionPolicy::max_rho()));
      // C rises with rho, so the cheapest point is the least robust.
      const auto cheapest = phri::choose_design(front, phri::SelectionPolicy::min_C());
      const auto least_robust = *std::min_element(
          front.points.begin(), front.points.end(),
          [](const auto& a, const auto& b) { return a.rho < b.rho; });
      CHECK(cheapest == least_robust);
    }
  }

  SUBCASE("ties go to the lower parameters") {
    auto front = simple_front({{5.0, 0.5}, {5.0, 0.5}});
    front.points[0].m_F = 4.0;
    CHECK(phri::choose_design(front, phri::SelectionPolicy::min_C()).m_F == 2.0);
  }

  CHECK_THROWS_AS(phri::choose_design(phri::ParetoFront{1.0, {}}, phri::SelectionPolicy::min_C()),
                  phri::DomainError);
}

TEST_CASE("fixture fronts") {
  phri::SelectionConstraints cons;
  cons.rho_min = 0.55;
  cons.omega_c_min_hz = 2.3;
  const auto fronts = fixture::fronts(fixture::kTableOne);
  for (std::size_t i = 0; i < fronts.size(); ++i) {
    CHECK(phri::front_violation(fronts[i]).empty());
    const auto feasible = phri::apply_constraints(fronts[i], cons);
    CHECK(feasible.eliminated.by_rho == 1);
    CHECK(feasible.eliminated.by_omega_c == 1);
    const auto chosen = phri::choose_design(feasible.front, phri::SelectionPolicy::min_C());
    CHECK(chosen.m_F == fixture::kTableOne[i].m_F);
    CHECK(chosen.b_F == fixture::kTableOne[i].b_F);
    CHECK(chosen.weight == fixture::kTableOne[i].w);
  }

  cons.rho_min = 0.553;
  const auto matched = fixture::fronts(fixture::kTableTwo);
  for (std::size_t i = 0; i < matched.size(); ++i) {
    const auto feasible = phri::apply_constraints(matched[i], cons);
    const auto chosen = phri::choose_design(feasible.front, phri::SelectionPolicy::min_C());
    CHECK(chosen.m_F == fixture::kTableTwo[i].m_F);
    CHECK(chosen.C == fixture::kTableTwo[i].C);
  }
}

TEST_CASE("front comparison") {
  std::mt19937_64 rng(17);
  std::vector<double> samples;
  for (int i = 0; i <= 40; ++i) samples.push_back(0.3 + 0.01 * i);

  SUBCASE("identical fronts are incomparable") {
    const auto a = random_front(rng, 1.0);
    const auto report = phri::compare_fronts(a, a, samples);
    CHECK(report.verdict == phri::DominanceVerdict::incomparable);
    CHECK_FALSE(report.matched_samples.empty());
  }

  SUBCASE("a cheaper copy dominates, and not the other way round") {
    const auto a = random_front(rng, 1.0);
    auto b = a;
    b.alpha = 0.4;
    for (auto& p : b.points) p.C -= 0.5;
    const auto forward = phri::compare_fronts(a, b, samples);
    CHECK(forward.verdict == phri::DominanceVerdict::challenger_dominates);
    CHECK(forward.reference_alpha == 1.0);
    CHECK(forward.challenger_alpha == 0.4);
    CHECK(phri::compare_fronts(b, a, samples).verdict ==
          phri::DominanceVerdict::reference_dominates);
  }

  SUBCASE("antisymmetry on random pairs") {
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = random_front(rng, 1.0);
      const auto b = random_front(rng, 0.4, trial % 3 == 0 ? -1.0 : 0.0);
      const auto ab = phri::compare_fronts(a, b, samples);
      const auto ba = phri::compare_fronts(b, a, samples);
      if (ab.verdict == phri::DominanceVerdict::challenger_dominates) {
        CHECK(ba.verdict == phri::DominanceVerdict::reference_dominates);
      }
      CHECK_FALSE((ab.verdict == phri::DominanceVerdict::challenger_dominates &&
                   ba.verdict == phri::DominanceVerdict::challenger_dominates));
    }
  }

  SUBCASE("disjoint robustness ranges") {
    const auto low = simple_front({{1.0, 0.1}, {2.0, 0.2}});
    const auto high = simple_front({{1.0, 0.5}, {2.0, 0.6}});
    const auto report = phri::compare_fronts(low, high, {0.15, 0.55});
    CHECK(report.verdict == phri::DominanceVerdict::incomparable);
    CHECK(report.matched_samples.empty());
  }

  SUBCASE("stepwise interpolation") {
    const auto f = simple_front({{1.0, 0.1}, {2.0, 0.2}, {4.0, 0.4}});
    CHECK_FALSE(phri::step_cost_at(f, 0.05).has_value());
    CHECK(phri::step_cost_at(f, 0.1) == 1.0);
    CHECK(phri::step_cost_at(f, 0.39) == 2.0);
    CHECK(phri::step_cost_at(f, 0.9) == 4.0);
  }
}

TEST_CASE("policy names") {
  CHECK(phri::SelectionPolicy::parse("min_C") == phri::SelectionPolicy::min_C());
  CHECK(phri::SelectionPolicy::parse("max_rho").name() == "max_rho");
  CHECK(phri::SelectionPolicy::parse("by_weight", 0.25).weight == 0.25);
  CHECK_THROWS_AS(phri::SelectionPolicy::parse("by_weight"), phri::ConfigError);
  CHECK_THROWS_AS(phri::SelectionPolicy::parse("by_weight", 1.5), phri::ConfigError);
  CHECK_THROWS_AS(phri::SelectionPolicy::parse("median"), phri::ConfigError);
  CHECK(phri::to_string(phri::DominanceVerdict::challenger_dominates) == "challenger_dominates");
}
