// Copyright 2026 The cgdist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CGDIST_ERRORS_H
#define CGDIST_ERRORS_H

#include <stdexcept>
#include <string>

namespace cgdist {

/// Base class for failures of a numerical routine on otherwise valid input.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Zero frequency where a strictly positive one is required (m = 0, k = 0).
struct InfraredSingular : NumericalError {
    using NumericalError::NumericalError;
};

/// An exponent left the representable range.
struct OverflowError : NumericalError {
    using NumericalError::NumericalError;
};

/// A 2x2 block (or larger source metric block) could not be inverted.
struct SingularBlock : NumericalError {
    using NumericalError::NumericalError;
};

/// The channel is not completely positive at the evaluated mode.
struct ChannelInvalid : std::domain_error {
    double violation;
    ChannelInvalid(const std::string &msg, double violation) : std::domain_error(msg), violation(violation) {
    }
};

/// Quadrature failed to reach its tolerance. Carries the best available estimate.
struct QuadratureError : NumericalError {
    double partial_estimate;
    double error_estimate;
    QuadratureError(const std::string &msg, double partial_estimate, double error_estimate)
        : NumericalError(msg), partial_estimate(partial_estimate), error_estimate(error_estimate) {
    }
};

}  // namespace cgdist

#endif
