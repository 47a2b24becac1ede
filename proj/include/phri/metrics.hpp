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

#include <array>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "phri/freqresp.hpp"

namespace phri {

/// Butterworth-shaped frequency weighting W(w) = 1 / sqrt(1 + (w / cutoff)^(2n)).
struct WeightingFunction {
  int order = 5;
  double cutoff = hz_to_rad(5.0);  // rad/s

  WeightingFunction() = default;
  WeightingFunction(int order, double cutoff_rad_s);

  double operator()(double omega) const;
  std::vector<double> sample(const FrequencyGrid& grid) const;

  friend bool operator==(const WeightingFunction&, const WeightingFunction&) = default;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Ranges of the equivalent mass, damping and stiffness for a scenario.
struct ImpedanceBounds {
  Interval m;  // kg
  Interval b;  // N s/m
  Interval k;  // N/m

  ImpedanceBounds() = default;
  ImpedanceBounds(Interval m_range, Interval b_range, Interval k_range);

  /// Named presets "S1", "S2", "S3". Throws ConfigError on an unknown name.
  static ImpedanceBounds scenario(std::string_view name);

  /// The four (m, b) extremes at a fixed stiffness, in the order
  /// (m_lo, b_lo), (m_hi, b_lo), (m_lo, b_hi), (m_hi, b_hi).
  std::array<EquivalentImpedance, 4> corners(double k_eq) const;

  friend bool operator==(const ImpedanceBounds&, const ImpedanceBounds&) = default;
};

struct StabilityVerdict {
  bool stable = false;
  int winding_number = 0;  // counter-clockwise turns of 1 + L around 0 along the
                           // clockwise contour; minus the closed-loop RHP poles
  double min_distance_to_critical = 0.0;  // min |1 + L(jw)| over the grid
};

/// Precomputed plant samples G(jw) H(jw) and (jw)^alpha over one grid, so a
/// sweep only pays for the controller and the impedance per cell.
///
/// Every public metric routes through this class, which keeps the
/// single-call and sweep paths bit-identical.
class LoopSampler {
 public:
  LoopSampler(PlantModel plant, double alpha, FrequencyGrid grid);

  double alpha() const { return alpha_; }
  const PlantModel& plant() const { return plant_; }
  const FrequencyGrid& grid() const { return grid_; }
  std::size_t size() const { return grid_.size(); }

  /// G(jw_i) H(jw_i).
  Complex plant_response(std::size_t i) const { return gh_[i]; }
  /// Y(jw_i).
  Complex controller(std::size_t i, const AdmittanceController& ctrl) const;
  /// L(jw_i) = G Y H Z_eq.
  Complex loop(std::size_t i, const AdmittanceController& ctrl,
               const EquivalentImpedance& zeq) const;
  /// L(s) off the grid (Nyquist arcs and refinement points).
  Complex loop_at(Complex s, const AdmittanceController& ctrl,
                  const EquivalentImpedance& zeq) const;

 private:
  void check_order(const AdmittanceController& ctrl) const;

  PlantModel plant_;
  double alpha_;
  FrequencyGrid grid_;
  std::vector<Complex> gh_;
  std::vector<Complex> s_alpha_;
};

/// |Delta Z(jw)| = 1 / |G Y H|; +inf when the product vanishes.
double parasitic_magnitude(const PlantModel& plant, const AdmittanceController& ctrl,
                           double omega);

/// C = sum over the grid (ascending) of W(w) log10 |Delta Z(jw)|. +inf if any
/// sample is +inf.
double transparency_cost(const PlantModel& plant, const AdmittanceController& ctrl,
                         const FrequencyGrid& grid, const WeightingFunction& weighting);
double transparency_cost(const LoopSampler& sampler, const AdmittanceController& ctrl,
                         const std::vector<double>& weights);

Complex loop_response(const PlantModel& plant, const AdmittanceController& ctrl,
                      const EquivalentImpedance& zeq, double omega);

/// Default stability grid: 1e-3 .. 1e4 Hz, 4000 log-spaced points.
FrequencyGrid default_nyquist_grid();
/// Default objective grid: 0.01 .. 30 Hz, 500 log-spaced points.
FrequencyGrid default_objective_grid();

/// Nyquist test of 1 + L on the closed contour: the positive imaginary axis
/// sampled on the grid, its conjugate mirror, a right-hand indentation of
/// radius grid.lower() around the origin and the closing arc of radius
/// grid.upper(). Segments turning more than pi/2 are refined locally;
/// GridTooCoarse if that does not resolve them.
StabilityVerdict is_stable(const PlantModel& plant, const AdmittanceController& ctrl,
                           const EquivalentImpedance& zeq, const FrequencyGrid& nyquist_grid);
StabilityVerdict is_stable(const LoopSampler& nyquist, const AdmittanceController& ctrl,
                           const EquivalentImpedance& zeq);

/// rho = 1 / max |S(jw)| on the grid. No stability check.
double margin_on_grid(const LoopSampler& sampler, const AdmittanceController& ctrl,
                      const EquivalentImpedance& zeq);

/// Vector margin of a stable loop; ContractViolation if is_stable() says otherwise.
double vector_margin(const PlantModel& plant, const AdmittanceController& ctrl,
                     const EquivalentImpedance& zeq, const FrequencyGrid& grid,
                     const FrequencyGrid& nyquist_grid = default_nyquist_grid());

/// Minimum vector margin over the four (m, b) corners at k_eq; nullopt when
/// any corner is unstable.
std::optional<double> worst_case_margin(const PlantModel& plant, const AdmittanceController& ctrl,
                                        const ImpedanceBounds& bounds, double k_eq,
                                        const FrequencyGrid& grid,
                                        const FrequencyGrid& nyquist_grid = default_nyquist_grid());
std::optional<double> worst_case_margin(const LoopSampler& objective, const LoopSampler& nyquist,
                                        const AdmittanceController& ctrl,
                                        const ImpedanceBounds& bounds, double k_eq);

/// All four corners stable at k_eq.
bool corners_stable(const LoopSampler& nyquist, const AdmittanceController& ctrl,
                    const ImpedanceBounds& bounds, double k_eq);

struct BoundaryPoint {
  double m_F = 0.0;
  /// Smallest stable b_F to within the bisection tolerance; nullopt when the
  /// range holds no stable/unstable sign change.
  std::optional<double> b_F_critical;
};

inline constexpr double kBoundaryTolerance = 0.5;  // N s/m

/// Worst-corner stability boundary b_F*(m_F) at a fixed stiffness, by
/// bisection over b_range. Assumes stability is gained by adding damping.
std::vector<BoundaryPoint> stability_boundary(const PlantModel& plant, double alpha, double k_eq,
                                              const std::vector<double>& m_F_values,
                                              const ImpedanceBounds& bounds,
                                              Interval b_range = {0.001, 500.0},
                                              const FrequencyGrid& nyquist_grid =
                                                  default_nyquist_grid());

struct CutoffResult {
  double hz = 0.0;
  bool saturated = false;  // never crossed; hz is the top of the grid
};

inline constexpr double kCutoffResolutionHz = 1e-3;

/// Lowest frequency where |T(jw)| drops to 1/sqrt(2) of |T(j w_L)|, refined by
/// bisection between the bracketing grid points.
CutoffResult cutoff_from_compliance(const std::function<Complex(double)>& compliance,
                                    const FrequencyGrid& grid);

/// Same with T(jw) = 1 / (jw Z_disp(jw)).
CutoffResult cutoff_from_displayed_impedance(
    const std::function<Complex(double)>& displayed_impedance, const FrequencyGrid& grid);

/// Z_disp(jw) = (1 + G Y H Z_e) / (G Y H).
Complex displayed_impedance(const PlantModel& plant, const AdmittanceController& ctrl,
                            const EquivalentImpedance& z_env, double omega);

/// Cut-off of the displayed compliance X / F_h for one controller.
CutoffResult cutoff_frequency(const PlantModel& plant, const AdmittanceController& ctrl,
                              const EquivalentImpedance& z_env,
                              const FrequencyGrid& grid = default_objective_grid());

}  // namespace phri
