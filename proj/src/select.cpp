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

#include "phri/select.hpp"

#include <algorithm>
#include <cmath>

namespace phri {

namespace {

bool lower_params(const ParetoPoint& a, const ParetoPoint& b) {
  if (a.m_F != b.m_F) return a.m_F < b.m_F;
  return a.b_F < b.b_F;
}

}  // namespace

void SelectionConstraints::validate() const {
  for (const auto& bound : {C_max, rho_min, omega_c_min_hz}) {
    if (bound && !std::isfinite(*bound)) {
      throw ConfigError("selection bounds must be finite");
    }
  }
  if (!(k_e_eval > 0.0) || !std::isfinite(k_e_eval)) {
    throw ConfigError("k_e_eval must be positive");
  }
}

EliminationCounts& EliminationCounts::operator+=(const EliminationCounts& other) {
  by_C += other.by_C;
  by_rho += other.by_rho;
  by_omega_c += other.by_omega_c;
  total += other.total;
  feasible += other.feasible;
  return *this;
}

CutoffEvaluator plant_cutoff_evaluator(PlantModel plant, double k_e, FrequencyGrid grid) {
  const EquivalentImpedance spring(0.0, 0.0, k_e);
  return [plant = std::move(plant), spring, grid = std::move(grid)](const ParetoPoint& p) {
    return cutoff_frequency(plant, AdmittanceController(p.alpha, p.m_F, p.b_F), spring, grid).hz;
  };
}

ConstrainedFront apply_constraints(const ParetoFront& front, const SelectionConstraints& cons,
                                   const CutoffEvaluator& cutoff) {
  cons.validate();
  ConstrainedFront out{{front.alpha, {}}, {}, {}};
  for (ParetoPoint p : front.points) {
    if (!p.omega_c_hz && cutoff) {
      p.omega_c_hz = cutoff(p);
    }
    if (cons.omega_c_min_hz && !p.omega_c_hz) {
      throw ContractViolation("cut-off bound set but no cut-off available for a front point");
    }
    const bool fails_c = cons.C_max && p.C > *cons.C_max;
    const bool fails_rho = cons.rho_min && p.rho < *cons.rho_min;
    const bool fails_wc = cons.omega_c_min_hz && *p.omega_c_hz < *cons.omega_c_min_hz;
    out.eliminated.by_C += fails_c ? 1 : 0;
    out.eliminated.by_rho += fails_rho ? 1 : 0;
    out.eliminated.by_omega_c += fails_wc ? 1 : 0;
    if (fails_c || fails_rho || fails_wc) {
      ++out.eliminated.total;
    } else {
      ++out.eliminated.feasible;
      out.front.points.push_back(p);
    }
  }
  if (out.front.empty()) {
    out.diagnostic = front.empty() ? "front is empty"
                                   : "no front point satisfies every constraint";
  }
  return out;
}

ConstrainedFront apply_constraints(const ParetoFront& front, const SelectionConstraints& cons,
                                   const PlantModel& plant, const FrequencyGrid& grid) {
  return apply_constraints(front, cons, plant_cutoff_evaluator(plant, cons.k_e_eval, grid));
}

SelectionPolicy SelectionPolicy::by_weight(double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw ConfigError("policy weight must lie in [0, 1]");
  }
  return {Kind::by_weight, w};
}

std::string SelectionPolicy::name() const {
  switch (kind) {
    case Kind::min_C: return "min_C";
    case Kind::max_rho: return "max_rho";
    case Kind::by_weight: return "by_weight";
  }
  return {};
}

SelectionPolicy SelectionPolicy::parse(std::string_view name, std::optional<double> weight) {
  if (name == "min_C") return min_C();
  if (name == "max_rho") return max_rho();
  if (name == "by_weight") {
    if (!weight) {
      throw ConfigError("policy by_weight needs a weight");
    }
    return by_weight(*weight);
  }
  throw ConfigError("unknown policy '" + std::string(name) + "'");
}

ParetoPoint choose_design(const ParetoFront& front, const SelectionPolicy& policy) {
  if (front.empty()) {
    throw DomainError("cannot choose a design from an empty front");
  }
  const auto score = [&](const ParetoPoint& p) {
    switch (policy.kind) {
      case SelectionPolicy::Kind::min_C: return p.C;
      case SelectionPolicy::Kind::max_rho: return -p.rho;
      case SelectionPolicy::Kind::by_weight: return scalarize(p.C_n, p.rho_n, policy.weight);
    }
    return 0.0;
  };
  const ParetoPoint* best = &front.points.front();
  double best_score = score(*best);
  for (const auto& p : front.points) {
    const double s = score(p);
    if (s < best_score || (s == best_score && lower_params(p, *best))) {
      best = &p;
      best_score = s;
    }
  }
  return *best;
}

std::string_view to_string(DominanceVerdict verdict) {
  switch (verdict) {
    case DominanceVerdict::challenger_dominates: return "challenger_dominates";
    case DominanceVerdict::reference_dominates: return "reference_dominates";
    case DominanceVerdict::incomparable: return "incomparable";
  }
  return "incomparable";
}

std::optional<double> step_cost_at(const ParetoFront& front, double rho) {
  std::optional<double> c;
  double best_rho = 0.0;
  for (const auto& p : front.points) {
    if (p.rho <= rho && (!c || p.rho > best_rho)) {
      best_rho = p.rho;
      c = p.C;
    }
  }
  return c;
}

DominanceReport compare_fronts(const ParetoFront& reference, const ParetoFront& challenger,
                               const std::vector<double>& rho_samples) {
  DominanceReport report{reference.alpha, challenger.alpha, DominanceVerdict::incomparable, {}};
  if (reference.empty() || challenger.empty()) {
    return report;
  }
  const auto rho_range = [](const ParetoFront& f) {
    const auto [lo, hi] = std::minmax_element(
        f.points.begin(), f.points.end(),
        [](const ParetoPoint& a, const ParetoPoint& b) { return a.rho < b.rho; });
    return std::pair{lo->rho, hi->rho};
  };
  const auto [ref_lo, ref_hi] = rho_range(reference);
  const auto [ch_lo, ch_hi] = rho_range(challenger);
  const double lo = std::max(ref_lo, ch_lo);
  const double hi = std::min(ref_hi, ch_hi);

  bool challenger_never_worse = true;
  bool reference_never_worse = true;
  bool challenger_strictly_better = false;
  bool reference_strictly_better = false;
  for (double rho : rho_samples) {
    if (rho < lo || rho > hi) {
      continue;
    }
    const double c_ref = *step_cost_at(reference, rho);
    const double c_ch = *step_cost_at(challenger, rho);
    report.matched_samples.push_back({rho, c_ref, c_ch});
    challenger_never_worse = challenger_never_worse && c_ch <= c_ref;
    reference_never_worse = reference_never_worse && c_ref <= c_ch;
    challenger_strictly_better = challenger_strictly_better || c_ch < c_ref;
    reference_strictly_better = reference_strictly_better || c_ref < c_ch;
  }
  if (report.matched_samples.empty()) {
    return report;
  }
  if (challenger_never_worse && challenger_strictly_better) {
    report.verdict = DominanceVerdict::challenger_dominates;
  } else if (reference_never_worse && reference_strictly_better) {
    report.verdict = DominanceVerdict::reference_dominates;
  }
  return report;
}

}  // namespace phri
