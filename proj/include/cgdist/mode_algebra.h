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

#ifndef CGDIST_MODE_ALGEBRA_H
#define CGDIST_MODE_ALGEBRA_H

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "cgdist/errors.h"

namespace cgdist {

using Complex = std::complex<double>;

/// Complex 2x2 block in the (phi_k, pi_k) basis of one mode.
using ModeBlock = Eigen::Matrix2cd;

using Momentum = std::vector<double>;
using MomentumView = std::span<const double>;

/// Inverse temperature. The zero temperature case is a distinguished value, not a large number.
class InverseTemperature {
   public:
    static InverseTemperature infinite() {
        return InverseTemperature(true, 0.0);
    }
    static InverseTemperature finite(double beta);

    bool is_infinite() const {
        return infinite_;
    }
    /// Throws std::logic_error when infinite.
    double value() const;
    std::string str() const;

    bool operator==(const InverseTemperature &other) const = default;

   private:
    InverseTemperature(bool infinite, double value) : infinite_(infinite), value_(value) {
    }
    bool infinite_;
    double value_;
};

struct ModelParams {
    double mass = 1.0;
    InverseTemperature beta = InverseTemperature::infinite();
    int dim = 1;

    bool massless() const {
        return mass == 0.0;
    }
    /// Throws std::invalid_argument on m < 0, d < 1 or non-finite mass.
    void validate() const;
};

double norm2(MomentumView k);

/// sqrt(|k|^2 + m^2). May return 0 for a massless zero mode.
double omega(MomentumView k, const ModelParams &params);
double omega_from_norm2(double k2, double mass);
/// Same as omega but throws InfraredSingular instead of returning 0.
double positive_omega(MomentumView k, const ModelParams &params);
double positive_omega_from_norm2(double k2, double mass);

/// Hyperbolic cotangent with the large and small argument asymptotics taken exactly.
double coth(double x);

/// coth(beta * omega / 2), equal to 1 at zero temperature.
double thermal_factor(double omega, InverseTemperature beta);

ModeBlock symplectic_delta();

/// (1/2) coth(beta omega / 2) diag(1/omega, omega).
ModeBlock covariance_A(MomentumView k, const ModelParams &params);
ModeBlock covariance_A_from_omega(double omega, InverseTemperature beta);

/// Classical equipartition covariance diag(1/(beta omega^2), 1/beta). Requires finite beta.
ModeBlock classical_covariance_A(MomentumView k, const ModelParams &params);
ModeBlock classical_covariance_A_from_omega(double omega, InverseTemperature beta);

/// Imaginary time rotation R_s for a mode of frequency omega at inverse temperature beta.
/// Throws OverflowError when |beta omega s| leaves the double exponent range.
ModeBlock rotation_R(double omega, double beta, double s);
ModeBlock rotation_R(MomentumView k, const ModelParams &params, double s);

/// A^inf + sign * i Delta / 2 with A^inf = diag(1/(2 omega), omega / 2). Rank one projector times 1/omega.
ModeBlock ground_block(double omega, int sign);

/// (A + i Delta / 2) R_s evaluated without cancellation, as a combination of the two ground blocks.
/// Hermitian for real s. Requires finite beta.
ModeBlock thermal_propagator(double omega, double beta, double s);

/// Closed form inverse of a 2x2 block. Throws SingularBlock when |det| < 1e-300.
ModeBlock inverse(const ModeBlock &m);

}  // namespace cgdist

#endif
