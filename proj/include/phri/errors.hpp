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

#include <stdexcept>
#include <string>

namespace phri {

/// Argument outside the mathematical domain of an operation (non-positive
/// frequency, weight outside [0, 1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A transfer function could not be evaluated at a point (vanishing denominator).
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid construction arguments or configuration values.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The Nyquist contour could not be resolved: 1 + L turned by more than a
/// quarter revolution between samples even after local refinement.
class GridTooCoarse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation called with a violated precondition (e.g. vector margin of an
/// unstable loop).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A pipeline input file is missing, unreadable or malformed.
class ArtifactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phri
