// ofdma-cci: downlink co-channel interference statistics for OFDMA cellular systems
// Copyright 2026 The ofdma-cci Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace cci {

class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DegenerateGeometry : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class UndefinedRatio : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when a characteristic-function inversion does not reach the
/// normalisation tolerance. Carries what the engine achieved.
class InversionFailure : public std::runtime_error {
public:
    InversionFailure(const std::string &what, double total_mass, double max_error_estimate)
        : std::runtime_error(what + " (total mass " + std::to_string(total_mass) + ", max quadrature error estimate " +
                             std::to_string(max_error_estimate) + ")"),
          total_mass_(total_mass), max_error_estimate_(max_error_estimate) {}

    double total_mass() const noexcept { return total_mass_; }
    double max_error_estimate() const noexcept { return max_error_estimate_; }

private:
    double total_mass_;
    double max_error_estimate_;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cci
