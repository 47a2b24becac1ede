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

#include "phri/freqresp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phri {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kMinDenominator = 1e-300;

std::vector<FractionalTerm> normalize_terms(std::vector<FractionalTerm> terms,
                                            const char* which) {
  for (const auto& t : terms) {
    if (!std::isfinite(t.coefficient) || !std::isfinite(t.exponent)) {
      throw ConfigError(std::string(which) + ": term with non-finite coefficient or exponent");
    }
    if (t.exponent < 0.0) {
      throw ConfigError(std::string(which) + ": negative exponent " + std::to_string(t.exponent));
    }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const FractionalTerm& a, const FractionalTerm& b) {
                     return a.exponent > b.exponent;
                   });
  std::vector<FractionalTerm> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    if (!merged.empty() && merged.back().exponent == t.exponent) {
      merged.back().coefficient += t.coefficient;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const FractionalTerm& t) { return t.coefficient == 0.0; });
  return merged;
}

Complex sum_terms(const std::vector<FractionalTerm>& terms, Complex s) {
  Complex acc{0.0, 0.0};
  for (const auto& t : terms) {
    acc += t.coefficient * eval_power(s, t.exponent);
  }
  return acc;
}

Complex sum_terms_jw(const std::vector<FractionalTerm>& terms, double omega) {
  Complex acc{0.0, 0.0};
  for (const auto& t : terms) {
    acc += t.coefficient * eval_fractional_power(t.exponent, omega);
  }
  return acc;
}

void require_positive_frequency(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("frequency must be positive and finite, got " + std::to_string(omega));
  }
}

}  // namespace

Complex eval_fractional_power(double beta, double omega) {
  require_positive_frequency(omega);
  if (!std::isfinite(beta)) {
    throw DomainError("exponent must be finite");
  }
  const double magnitude = std::pow(omega, beta);
  if (beta == std::trunc(beta) && std::abs(beta) < 1e9) {
    // j^n cycles through four exact quadrants.
    const long quadrant = ((static_cast<long>(beta) % 4) + 4) % 4;
    switch (quadrant) {
      case 0: return {magnitude, 0.0};
      case 1: return {0.0, magnitude};
      case 2: return {-magnitude, 0.0};
      default: return {0.0, -magnitude};
    }
  }
  const double phase = beta * kHalfPi;
  return {magnitude * std::cos(phase), magnitude * std::sin(phase)};
}

Complex eval_power(Complex s, double beta) {
  if (s.real() == 0.0 && s.imag() > 0.0) {
    return eval_fractional_power(beta, s.imag());
  }
  if (s.real() == 0.0 && s.imag() < 0.0) {
    return std::conj(eval_fractional_power(beta, -s.imag()));
  }
  if (beta == 0.0) {
    return {1.0, 0.0};
  }
  if (s == Complex{0.0, 0.0}) {
    return {0.0, 0.0};
  }
  if (s.imag() == 0.0 && s.real() > 0.0) {
    return {std::pow(s.real(), beta), 0.0};
  }
  return std::polar(std::pow(std::abs(s), beta), beta * std::arg(s));
}

FractionalTransferFunction::FractionalTransferFunction(std::vector<FractionalTerm> numerator,
                                                       std::vector<FractionalTerm> denominator)
    : numerator_(normalize_terms(std::move(numerator), "numerator")),
      denominator_(normalize_terms(std::move(denominator), "denominator")) {
  if (denominator_.empty()) {
    throw ConfigError("transfer function denominator is identically zero");
  }
}

FractionalTransferFunction FractionalTransferFunction::unity() { return gain(1.0); }

FractionalTransferFunction FractionalTransferFunction::gain(double k) {
  return FractionalTransferFunction({{k, 0.0}}, {{1.0, 0.0}});
}

Complex FractionalTransferFunction::at_frequency(double omega) const {
  require_positive_frequency(omega);
  const Complex den = sum_terms_jw(denominator_, omega);
  if (std::abs(den) < kMinDenominator) {
    throw EvaluationError("denominator vanishes at omega = " + std::to_string(omega));
  }
  return sum_terms_jw(numerator_, omega) / den;
}

Complex FractionalTransferFunction::at(Complex s) const {
  const Complex den = sum_terms(denominator_, s);
  if (std::abs(den) < kMinDenominator) {
    throw EvaluationError("denominator vanishes");
  }
  return sum_terms(numerator_, s) / den;
}

Complex eval_tf(const FractionalTransferFunction& tf, double omega) {
  return tf.at_frequency(omega);
}

AdmittanceController::AdmittanceController(double alpha, double m_F, double b_F)
    : alpha_(alpha), m_F_(m_F), b_F_(b_F) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("integration order must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (!std::isfinite(m_F) || !std::isfinite(b_F) || m_F < 0.0 || b_F < 0.0) {
    throw ConfigError("controller parameters must be finite and non-negative");
  }
  if (m_F == 0.0 && b_F == 0.0) {
    throw ConfigError("m_F and b_F cannot both be zero");
  }
}

FractionalTransferFunction AdmittanceController::transfer_function() const {
  return FractionalTransferFunction({{1.0, 0.0}}, {{m_F_, alpha_}, {b_F_, 0.0}});
}

Complex controller_response(const AdmittanceController& ctrl, double omega) {
  const Complex den = ctrl.m_F() * eval_fractional_power(ctrl.alpha(), omega) + ctrl.b_F();
  if (std::abs(den) < kMinDenominator) {
    throw EvaluationError("controller denominator vanishes");
  }
  return 1.0 / den;
}

EffectiveImpedance effective_impedance(const AdmittanceController& ctrl, double omega) {
  require_positive_frequency(omega);
  const double half_angle = ctrl.alpha() * kHalfPi;
  return {ctrl.m_F() * std::pow(omega, ctrl.alpha() - 1.0) * std::sin(half_angle),
          ctrl.b_F() + ctrl.m_F() * std::pow(omega, ctrl.alpha()) * std::cos(half_angle)};
}

EquivalentImpedance::EquivalentImpedance(double m, double b, double k) : m_eq(m), b_eq(b), k_eq(k) {
  if (!std::isfinite(m) || !std::isfinite(b) || !std::isfinite(k) || m < 0.0 || b < 0.0 ||
      k < 0.0) {
    throw ConfigError("equivalent impedance parameters must be finite and non-negative");
  }
}

Complex EquivalentImpedance::at_frequency(double omega) const {
  require_positive_frequency(omega);
  return {b_eq, m_eq * omega - k_eq / omega};
}

Complex EquivalentImpedance::at(Complex s) const {
  if (s.real() == 0.0 && s.imag() > 0.0) {
    return at_frequency(s.imag());
  }
  if (s.real() == 0.0 && s.imag() < 0.0) {
    return std::conj(at_frequency(-s.imag()));
  }
  if (s == Complex{0.0, 0.0}) {
    throw EvaluationError("equivalent impedance has a pole at the origin");
  }
  return m_eq * s + b_eq + k_eq / s;
}

FractionalTransferFunction EquivalentImpedance::transfer_function() const {
  return FractionalTransferFunction({{m_eq, 2.0}, {b_eq, 1.0}, {k_eq, 0.0}}, {{1.0, 1.0}});
}

FrequencyGrid::FrequencyGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw ConfigError("frequency grid is empty");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i]) || !(points_[i] > 0.0)) {
      throw ConfigError("frequency grid points must be positive and finite");
    }
    if (i > 0 && !(points_[i] > points_[i - 1])) {
      throw ConfigError("frequency grid must be strictly increasing");
    }
  }
}

FrequencyGrid make_log_grid(double omega_L, double omega_U, std::size_t n) {
  if (!(omega_L > 0.0) || !(omega_U > omega_L) || !std::isfinite(omega_U)) {
    throw ConfigError("log grid needs 0 < omega_L < omega_U");
  }
  if (n < 2) {
    throw ConfigError("log grid needs at least two points");
  }
  const double lo = std::log(omega_L);
  const double step = (std::log(omega_U) - lo) / static_cast<double>(n - 1);
  std::vector<double> pts(n);
  pts.front() = omega_L;
  pts.back() = omega_U;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    pts[i] = std::exp(lo + step * static_cast<double>(i));
  }
  return FrequencyGrid(std::move(pts));
}

FractionalTransferFunction butterworth_lowpass(int order, double cutoff_rad_s) {
  if (order < 1) {
    throw ConfigError("Butterworth order must be at least 1");
  }
  if (!(cutoff_rad_s > 0.0) || !std::isfinite(cutoff_rad_s)) {
    throw ConfigError("Butterworth cutoff must be positive");
  }
  // Normalized polynomial coefficients: a_0 = 1, a_k = a_{k-1} cos((k-1)g) / sin(k g),
  // g = pi / (2n); scaled by cutoff^-k for s -> s / cutoff.
  const double g = std::numbers::pi / (2.0 * order);
  std::vector<FractionalTerm> den;
  double a = 1.0;
  den.push_back({1.0, 0.0});
  for (int k = 1; k <= order; ++k) {
    a *= std::cos((k - 1) * g) / std::sin(k * g);
    den.push_back({a / std::pow(cutoff_rad_s, k), static_cast<double>(k)});
  }
  return FractionalTransferFunction({{1.0, 0.0}}, std::move(den));
}

PlantModel default_plant(const PlantConfig& config) {
  PlantModel plant;
  if (config.G_num.has_value() != config.G_den.has_value()) {
    throw ConfigError("plant.G_num and plant.G_den must be given together");
  }
  if (config.H_num.has_value() != config.H_den.has_value()) {
    throw ConfigError("plant.H_num and plant.H_den must be given together");
  }
  if (config.G_num) {
    plant.G = FractionalTransferFunction(*config.G_num, *config.G_den);
  } else {
    if (!(config.tau_r_s > 0.0) || !std::isfinite(config.tau_r_s)) {
      throw ConfigError("plant.tau_r_s must be positive");
    }
    plant.G = FractionalTransferFunction({{1.0, 0.0}}, {{config.tau_r_s, 1.0}, {1.0, 0.0}});
  }
  if (config.H_num) {
    plant.H = FractionalTransferFunction(*config.H_num, *config.H_den);
  } else {
    if (!(config.filter_cutoff_hz > 0.0) || !std::isfinite(config.filter_cutoff_hz)) {
      throw ConfigError("plant.filter_cutoff_hz must be positive");
    }
    plant.H = butterworth_lowpass(config.filter_order, hz_to_rad(config.filter_cutoff_hz));
  }
  return plant;
}

}  // namespace phri
