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

#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "phri/errors.hpp"

namespace phri {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double hz_to_rad(double hz) { return kTwoPi * hz; }
inline constexpr double rad_to_hz(double rad_s) { return rad_s / kTwoPi; }

/// c * s^beta with beta >= 0.
struct FractionalTerm {
  double coefficient = 0.0;
  double exponent = 0.0;

  friend bool operator==(const FractionalTerm&, const FractionalTerm&) = default;
};

/// (jw)^beta on the principal branch: w^beta * exp(j * beta * pi / 2).
/// Integer exponents get exact quadrant phases.
Complex eval_fractional_power(double beta, double omega);

/// s^beta for arbitrary s off the negative real axis, principal branch.
Complex eval_power(Complex s, double beta);

/// Ratio of sums of fractional monomials.
///
/// Term lists are kept sorted by exponent (descending) with duplicate
/// exponents merged, so two functions built from the same terms in a
/// different order compare equal.
class FractionalTransferFunction {
 public:
  FractionalTransferFunction(std::vector<FractionalTerm> numerator,
                             std::vector<FractionalTerm> denominator);

  static FractionalTransferFunction unity();
  static FractionalTransferFunction gain(double k);

  const std::vector<FractionalTerm>& numerator() const { return numerator_; }
  const std::vector<FractionalTerm>& denominator() const { return denominator_; }

  /// Response at s = jw, w > 0.
  Complex at_frequency(double omega) const;
  /// Response at an arbitrary point of the closed right half plane.
  Complex at(Complex s) const;

  friend bool operator==(const FractionalTransferFunction&,
                         const FractionalTransferFunction&) = default;

 private:
  std::vector<FractionalTerm> numerator_;
  std::vector<FractionalTerm> denominator_;
};

/// Same as tf.at_frequency(omega).
Complex eval_tf(const FractionalTransferFunction& tf, double omega);

/// Y(s) = 1 / (m_F s^alpha + b_F).
class AdmittanceController {
 public:
  AdmittanceController(double alpha, double m_F, double b_F);

  double alpha() const { return alpha_; }
  double m_F() const { return m_F_; }
  double b_F() const { return b_F_; }

  /// The controller as a term list, for generic evaluation paths.
  FractionalTransferFunction transfer_function() const;

  friend bool operator==(const AdmittanceController&, const AdmittanceController&) = default;

 private:
  double alpha_;
  double m_F_;
  double b_F_;
};

Complex controller_response(const AdmittanceController& ctrl, double omega);

/// Apparent mass and damping of m_F (jw)^alpha + b_F at one frequency.
struct EffectiveImpedance {
  double mass = 0.0;     // kg
  double damping = 0.0;  // N s/m
};

EffectiveImpedance effective_impedance(const AdmittanceController& ctrl, double omega);

/// Coupled human + environment impedance Z_eq(s) = (m s^2 + b s + k) / s.
struct EquivalentImpedance {
  double m_eq = 0.0;
  double b_eq = 0.0;
  double k_eq = 0.0;

  EquivalentImpedance() = default;
  EquivalentImpedance(double m, double b, double k);

  /// b + j(m w - k / w).
  Complex at_frequency(double omega) const;
  Complex at(Complex s) const;
  FractionalTransferFunction transfer_function() const;

  friend bool operator==(const EquivalentImpedance&, const EquivalentImpedance&) = default;
};

/// Strictly increasing frequencies in rad/s.
class FrequencyGrid {
 public:
  explicit FrequencyGrid(std::vector<double> points);

  double lower() const { return points_.front(); }
  double upper() const { return points_.back(); }
  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  const std::vector<double>& points() const { return points_; }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

 private:
  std::vector<double> points_;
};

/// n log-uniform points from omega_L to omega_U (both exact).
FrequencyGrid make_log_grid(double omega_L, double omega_U, std::size_t n);

/// Robot velocity loop G(s) and force filter H(s).
struct PlantModel {
  FractionalTransferFunction G = FractionalTransferFunction::unity();
  FractionalTransferFunction H = FractionalTransferFunction::unity();
};

/// Plant settings as they appear in the toolkit config. Any full term-list
/// override replaces the corresponding parametric block.
struct PlantConfig {
  double tau_r_s = 1.0 / (kTwoPi * 10.0);
  int filter_order = 2;
  double filter_cutoff_hz = 20.0;
  std::optional<std::vector<FractionalTerm>> G_num;
  std::optional<std::vector<FractionalTerm>> G_den;
  std::optional<std::vector<FractionalTerm>> H_num;
  std::optional<std::vector<FractionalTerm>> H_den;

  friend bool operator==(const PlantConfig&, const PlantConfig&) = default;
};

/// Unity-DC Butterworth low-pass of the given order and cutoff.
FractionalTransferFunction butterworth_lowpass(int order, double cutoff_rad_s);

/// G(s) = 1 / (tau_r s + 1), H(s) = Butterworth low-pass; overrides applied.
PlantModel default_plant(const PlantConfig& config = {});

}  // namespace phri
