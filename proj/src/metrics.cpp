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

#include "phri/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace phri {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxPhaseStep = kPi / 2.0;
constexpr int kMaxRefinementDepth = 16;
constexpr int kArcSegments = 64;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Net rotation of f between two samples; bisects the parameter while a step
// turns by more than a quarter revolution.
template <class F>
double phase_change(const F& f, double t0, double t1, Complex z0, Complex z1, int depth) {
  if (z0 == Complex{} || z1 == Complex{}) {
    throw GridTooCoarse("1 + L passes through the origin");
  }
  const double step = std::arg(z1 / z0);
  if (std::abs(step) <= kMaxPhaseStep) {
    return step;
  }
  if (depth == 0) {
    throw GridTooCoarse("phase of 1 + L not resolved after refinement");
  }
  const double tm = 0.5 * (t0 + t1);
  const Complex zm = f(tm);
  return phase_change(f, t0, tm, z0, zm, depth - 1) + phase_change(f, tm, t1, zm, z1, depth - 1);
}

// Rotation of f(theta) along a circular arc from theta_begin to theta_end,
// with exact endpoint values supplied by the caller.
template <class F>
double arc_phase_change(const F& f, double theta_begin, double theta_end, Complex z_begin,
                        Complex z_end) {
  double total = 0.0;
  Complex prev = z_begin;
  double prev_theta = theta_begin;
  for (int k = 1; k <= kArcSegments; ++k) {
    const double theta =
        theta_begin + (theta_end - theta_begin) * static_cast<double>(k) / kArcSegments;
    const Complex z = (k == kArcSegments) ? z_end : f(theta);
    total += phase_change(f, prev_theta, theta, prev, z, kMaxRefinementDepth);
    prev = z;
    prev_theta = theta;
  }
  return total;
}

}  // namespace

WeightingFunction::WeightingFunction(int order_, double cutoff_rad_s)
    : order(order_), cutoff(cutoff_rad_s) {
  if (order < 1) {
    throw ConfigError("weighting order must be at least 1");
  }
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
    throw ConfigError("weighting cutoff must be positive");
  }
}

double WeightingFunction::operator()(double omega) const {
  return 1.0 / std::sqrt(1.0 + std::pow(omega / cutoff, 2.0 * order));
}

std::vector<double> WeightingFunction::sample(const FrequencyGrid& grid) const {
  std::vector<double> w;
  w.reserve(grid.size());
  for (double omega : grid) {
    w.push_back((*this)(omega));
  }
  return w;
}

ImpedanceBounds::ImpedanceBounds(Interval m_range, Interval b_range, Interval k_range)
    : m(m_range), b(b_range), k(k_range) {
  for (const Interval& r : {m, b, k}) {
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo < 0.0 || r.lo > r.hi) {
      throw ConfigError("impedance bounds need 0 <= lo <= hi");
    }
  }
}

ImpedanceBounds ImpedanceBounds::scenario(std::string_view name) {
  const Interval human_mass{0.0, 5.0};
  const Interval human_damping{0.0, 41.0};
  if (name == "S1") {
    return {human_mass, human_damping, {0.0, 600.0}};
  }
  if (name == "S2") {
    return {human_mass, human_damping, {610.0, 1210.0}};
  }
  if (name == "S3") {
    return {human_mass, human_damping, {610.0, 1610.0}};
  }
  throw ConfigError("unknown scenario '" + std::string(name) + "' (expected S1, S2 or S3)");
}

std::array<EquivalentImpedance, 4> ImpedanceBounds::corners(double k_eq) const {
  return {EquivalentImpedance(m.lo, b.lo, k_eq), EquivalentImpedance(m.hi, b.lo, k_eq),
          EquivalentImpedance(m.lo, b.hi, k_eq), EquivalentImpedance(m.hi, b.hi, k_eq)};
}

LoopSampler::LoopSampler(PlantModel plant, double alpha, FrequencyGrid grid)
    : plant_(std::move(plant)), alpha_(alpha), grid_(std::move(grid)) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("integration order must lie in (0, 1]");
  }
  gh_.reserve(grid_.size());
  s_alpha_.reserve(grid_.size());
  for (double omega : grid_) {
    gh_.push_back(plant_.G.at_frequency(omega) * plant_.H.at_frequency(omega));
    s_alpha_.push_back(eval_fractional_power(alpha_, omega));
  }
}

void LoopSampler::check_order(const AdmittanceController& ctrl) const {
  if (ctrl.alpha() != alpha_) {
    throw ContractViolation("controller order does not match the sampler");
  }
}

Complex LoopSampler::controller(std::size_t i, const AdmittanceController& ctrl) const {
  check_order(ctrl);
  return 1.0 / (ctrl.m_F() * s_alpha_[i] + ctrl.b_F());
}

Complex LoopSampler::loop(std::size_t i, const AdmittanceController& ctrl,
                          const EquivalentImpedance& zeq) const {
  return gh_[i] * controller(i, ctrl) * zeq.at_frequency(grid_[i]);
}

Complex LoopSampler::loop_at(Complex s, const AdmittanceController& ctrl,
                             const EquivalentImpedance& zeq) const {
  check_order(ctrl);
  const Complex gh = plant_.G.at(s) * plant_.H.at(s);
  const Complex y = 1.0 / (ctrl.m_F() * eval_power(s, alpha_) + ctrl.b_F());
  return gh * y * zeq.at(s);
}

double parasitic_magnitude(const PlantModel& plant, const AdmittanceController& ctrl,
                           double omega) {
  const Complex gh = plant.G.at_frequency(omega) * plant.H.at_frequency(omega);
  const double gyh = std::abs(gh * controller_response(ctrl, omega));
  return gyh == 0.0 ? kInf : 1.0 / gyh;
}

double transparency_cost(const LoopSampler& sampler, const AdmittanceController& ctrl,
                         const std::vector<double>& weights) {
  if (weights.size() != sampler.size()) {
    throw ContractViolation("weights do not match the frequency grid");
  }
  double cost = 0.0;
  for (std::size_t i = 0; i < sampler.size(); ++i) {
    const double gyh = std::abs(sampler.plant_response(i) * sampler.controller(i, ctrl));
    if (gyh == 0.0 || !std::isfinite(gyh)) {
      return kInf;
    }
    cost += weights[i] * std::log10(1.0 / gyh);
  }
  return cost;
}

double transparency_cost(const PlantModel& plant, const AdmittanceController& ctrl,
                         const FrequencyGrid& grid, const WeightingFunction& weighting) {
  const LoopSampler sampler(plant, ctrl.alpha(), grid);
  return transparency_cost(sampler, ctrl, weighting.sample(grid));
}

Complex loop_response(const PlantModel& plant, const AdmittanceController& ctrl,
                      const EquivalentImpedance& zeq, double omega) {
  const Complex gh = plant.G.at_frequency(omega) * plant.H.at_frequency(omega);
  return gh * controller_response(ctrl, omega) * zeq.at_frequency(omega);
}

FrequencyGrid default_nyquist_grid() { return make_log_grid(hz_to_rad(1e-3), hz_to_rad(1e4), 4000); }

FrequencyGrid default_objective_grid() { return make_log_grid(hz_to_rad(0.01), hz_to_rad(30.0), 500); }

StabilityVerdict is_stable(const LoopSampler& nyquist, const AdmittanceController& ctrl,
                           const EquivalentImpedance& zeq) {
  const FrequencyGrid& grid = nyquist.grid();
  const std::size_t n = grid.size();
  if (n < 2) {
    throw ContractViolation("Nyquist grid needs at least two points");
  }

  std::vector<Complex> z(n);
  double min_distance = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = 1.0 + nyquist.loop(i, ctrl, zeq);
    min_distance = std::min(min_distance, std::abs(z[i]));
  }

  // Positive imaginary axis, parametrized by log(w) for refinement.
  const auto on_axis = [&](double log_omega) {
    return 1.0 + nyquist.loop_at(Complex{0.0, std::exp(log_omega)}, ctrl, zeq);
  };
  double positive = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    positive += phase_change(on_axis, std::log(grid[i]), std::log(grid[i + 1]), z[i], z[i + 1],
                             kMaxRefinementDepth);
  }

  // Indentation around the origin, -j r -> +j r through the right half plane.
  const double r = grid.lower();
  const auto small_arc = [&](double theta) {
    return 1.0 + nyquist.loop_at(std::polar(r, theta), ctrl, zeq);
  };
  const double indentation =
      arc_phase_change(small_arc, -kPi / 2.0, kPi / 2.0, std::conj(z.front()), z.front());

  // Closing arc at the top of the grid, +j R -> -j R clockwise.
  const double big_r = grid.upper();
  const auto big_arc = [&](double theta) {
    return 1.0 + nyquist.loop_at(std::polar(big_r, theta), ctrl, zeq);
  };
  const double closing =
      arc_phase_change(big_arc, kPi / 2.0, -kPi / 2.0, z.back(), std::conj(z.back()));

  // The negative half of the axis mirrors the positive half (real coefficients).
  const double total = indentation + 2.0 * positive + closing;
  StabilityVerdict verdict;
  verdict.winding_number = static_cast<int>(std::lround(total / (2.0 * kPi)));
  verdict.stable = verdict.winding_number == 0;
  verdict.min_distance_to_critical = min_distance;
  return verdict;
}

StabilityVerdict is_stable(const PlantModel& plant, const AdmittanceController& ctrl,
                           const EquivalentImpedance& zeq, const FrequencyGrid& nyquist_grid) {
  const LoopSampler sampler(plant, ctrl.alpha(), nyquist_grid);
  return is_stable(sampler, ctrl, zeq);
}

double margin_on_grid(const LoopSampler& sampler, const AdmittanceController& ctrl,
                      const EquivalentImpedance& zeq) {
  double max_sensitivity = 0.0;
  for (std::size_t i = 0; i < sampler.size(); ++i) {
    const double s = std::abs(1.0 / (1.0 + sampler.loop(i, ctrl, zeq)));
    max_sensitivity = std::max(max_sensitivity, s);
  }
  return 1.0 / max_sensitivity;
}

double vector_margin(const PlantModel& plant, const AdmittanceController& ctrl,
                     const EquivalentImpedance& zeq, const FrequencyGrid& grid,
                     const FrequencyGrid& nyquist_grid) {
  if (!is_stable(plant, ctrl, zeq, nyquist_grid).stable) {
    throw ContractViolation("vector margin requested for an unstable loop");
  }
  const LoopSampler sampler(plant, ctrl.alpha(), grid);
  return margin_on_grid(sampler, ctrl, zeq);
}

bool corners_stable(const LoopSampler& nyquist, const AdmittanceController& ctrl,
                    const ImpedanceBounds& bounds, double k_eq) {
  for (const auto& corner : bounds.corners(k_eq)) {
    if (!is_stable(nyquist, ctrl, corner).stable) {
      return false;
    }
  }
  return true;
}

std::optional<double> worst_case_margin(const LoopSampler& objective, const LoopSampler& nyquist,
                                        const AdmittanceController& ctrl,
                                        const ImpedanceBounds& bounds, double k_eq) {
  if (!corners_stable(nyquist, ctrl, bounds, k_eq)) {
    return std::nullopt;
  }
  double worst = kInf;
  for (const auto& corner : bounds.corners(k_eq)) {
    worst = std::min(worst, margin_on_grid(objective, ctrl, corner));
  }
  return worst;
}

std::optional<double> worst_case_margin(const PlantModel& plant, const AdmittanceController& ctrl,
                                        const ImpedanceBounds& bounds, double k_eq,
                                        const FrequencyGrid& grid,
                                        const FrequencyGrid& nyquist_grid) {
  const LoopSampler objective(plant, ctrl.alpha(), grid);
  const LoopSampler nyquist(plant, ctrl.alpha(), nyquist_grid);
  return worst_case_margin(objective, nyquist, ctrl, bounds, k_eq);
}

std::vector<BoundaryPoint> stability_boundary(const PlantModel& plant, double alpha, double k_eq,
                                              const std::vector<double>& m_F_values,
                                              const ImpedanceBounds& bounds, Interval b_range,
                                              const FrequencyGrid& nyquist_grid) {
  if (!(b_range.lo < b_range.hi)) {
    throw ConfigError("stability boundary needs b_range.lo < b_range.hi");
  }
  const LoopSampler nyquist(plant, alpha, nyquist_grid);
  std::vector<BoundaryPoint> out;
  out.reserve(m_F_values.size());
  for (double m_F : m_F_values) {
    const auto stable_at = [&](double b_F) {
      try {
        return corners_stable(nyquist, AdmittanceController(alpha, m_F, b_F), bounds, k_eq);
      } catch (const GridTooCoarse&) {
        return false;
      } catch (const EvaluationError&) {
        return false;
      }
    };
    BoundaryPoint point{m_F, std::nullopt};
    double lo = b_range.lo;
    double hi = b_range.hi;
    if (!stable_at(lo) && stable_at(hi)) {
      while (hi - lo > kBoundaryTolerance) {
        const double mid = 0.5 * (lo + hi);
        (stable_at(mid) ? hi : lo) = mid;
      }
      point.b_F_critical = hi;
    }
    out.push_back(point);
  }
  return out;
}

CutoffResult cutoff_from_compliance(const std::function<Complex(double)>& compliance,
                                    const FrequencyGrid& grid) {
  const double reference = std::abs(compliance(grid.lower()));
  if (!(reference > 0.0) || !std::isfinite(reference)) {
    throw EvaluationError("compliance reference level is zero or not finite");
  }
  const double threshold = reference / std::sqrt(2.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::abs(compliance(grid[i])) > threshold) {
      continue;
    }
    double lo = grid[i - 1];
    double hi = grid[i];
    const double resolution = hz_to_rad(kCutoffResolutionHz);
    while (hi - lo > resolution) {
      const double mid = 0.5 * (lo + hi);
      (std::abs(compliance(mid)) <= threshold ? hi : lo) = mid;
    }
    return {rad_to_hz(0.5 * (lo + hi)), false};
  }
  return {rad_to_hz(grid.upper()), true};
}

CutoffResult cutoff_from_displayed_impedance(
    const std::function<Complex(double)>& displayed_impedance, const FrequencyGrid& grid) {
  return cutoff_from_compliance(
      [&](double omega) { return 1.0 / (Complex{0.0, omega} * displayed_impedance(omega)); },
      grid);
}

Complex displayed_impedance(const PlantModel& plant, const AdmittanceController& ctrl,
                            const EquivalentImpedance& z_env, double omega) {
  const Complex gh = plant.G.at_frequency(omega) * plant.H.at_frequency(omega);
  const Complex gyh = gh * controller_response(ctrl, omega);
  if (gyh == Complex{}) {
    throw EvaluationError("G Y H vanishes; displayed impedance unbounded");
  }
  return (1.0 + gyh * z_env.at_frequency(omega)) / gyh;
}

CutoffResult cutoff_frequency(const PlantModel& plant, const AdmittanceController& ctrl,
                              const EquivalentImpedance& z_env, const FrequencyGrid& grid) {
  return cutoff_from_displayed_impedance(
      [&](double omega) { return displayed_impedance(plant, ctrl, z_env, omega); }, grid);
}

}  // namespace phri
