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

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phri/pareto.hpp"

namespace phri {

/// Post-hoc bounds on the front. Unset bounds are not applied.
struct SelectionConstraints {
  std::optional<double> C_max;
  std::optional<double> rho_min;
  std::optional<double> omega_c_min_hz;
  double k_e_eval = 610.0;  // N/m, environment stiffness for the cut-off

  /// Throws ConfigError on non-finite bounds or k_e_eval <= 0.
  void validate() const;

  friend bool operator==(const SelectionConstraints&, const SelectionConstraints&) = default;
};

/// How many points each bound rejects (a point can fail several).
struct EliminationCounts {
  std::size_t by_C = 0;
  std::size_t by_rho = 0;
  std::size_t by_omega_c = 0;
  std::size_t total = 0;     // points failing at least one bound
  std::size_t feasible = 0;  // points passing every bound

  EliminationCounts& operator+=(const EliminationCounts& other);
  friend bool operator==(const EliminationCounts&, const EliminationCounts&) = default;
};

struct ConstrainedFront {
  ParetoFront front;
  EliminationCounts eliminated;
  std::string diagnostic;  // non-empty when nothing survived
};

/// Cut-off in Hz for one front point.
using CutoffEvaluator = std::function<double(const ParetoPoint&)>;

/// Cut-off of the displayed compliance against a pure spring k_e.
CutoffEvaluator plant_cutoff_evaluator(PlantModel plant, double k_e,
                                       FrequencyGrid grid = default_objective_grid());

/// Keeps points with C <= C_max, rho >= rho_min and omega_c >= omega_c_min.
/// Points that already carry an omega_c annotation keep it; the others are
/// annotated through `cutoff` when one is given. ContractViolation if the
/// cut-off bound is set and a point has neither.
ConstrainedFront apply_constraints(const ParetoFront& front, const SelectionConstraints& cons,
                                   const CutoffEvaluator& cutoff = {});
ConstrainedFront apply_constraints(const ParetoFront& front, const SelectionConstraints& cons,
                                   const PlantModel& plant,
                                   const FrequencyGrid& grid = default_objective_grid());

struct SelectionPolicy {
  enum class Kind { min_C, max_rho, by_weight };
  Kind kind = Kind::min_C;
  double weight = 0.0;  // by_weight only

  static SelectionPolicy min_C() { return {Kind::min_C, 0.0}; }
  static SelectionPolicy max_rho() { return {Kind::max_rho, 0.0}; }
  static SelectionPolicy by_weight(double w);

  std::string name() const;
  static SelectionPolicy parse(std::string_view name, std::optional<double> weight = {});

  friend bool operator==(const SelectionPolicy&, const SelectionPolicy&) = default;
};

/// Final design under a policy; ties go to the lowest m_F, then b_F.
/// DomainError on an empty front.
ParetoPoint choose_design(const ParetoFront& front, const SelectionPolicy& policy);

enum class DominanceVerdict { challenger_dominates, reference_dominates, incomparable };

std::string_view to_string(DominanceVerdict verdict);

struct MatchedSample {
  double rho = 0.0;
  double C_reference = 0.0;
  double C_challenger = 0.0;
};

struct DominanceReport {
  double reference_alpha = 0.0;
  double challenger_alpha = 0.0;
  DominanceVerdict verdict = DominanceVerdict::incomparable;
  std::vector<MatchedSample> matched_samples;
};

/// C of the point with the largest rho' <= rho; nullopt below the front.
std::optional<double> step_cost_at(const ParetoFront& front, double rho);

/// Compares two fronts at the sampled robustness levels inside their common
/// rho range. The challenger dominates when its C is never higher and at
/// least once lower.
DominanceReport compare_fronts(const ParetoFront& reference, const ParetoFront& challenger,
                               const std::vector<double>& rho_samples);

}  // namespace phri
