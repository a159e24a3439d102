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

#ifndef CGDIST_GAUSSIAN_CHANNEL_H
#define CGDIST_GAUSSIAN_CHANNEL_H

#include <functional>

#include "cgdist/mode_algebra.h"

namespace cgdist {

/// Coarse-graining channel: Gaussian blur of width sigma plus added noise diag(y_phi2, y_pi2) per mode.
/// Resolutions are stored squared.
struct ChannelParams {
    double sigma = 0.0;
    double y_phi2 = 0.0;
    double y_pi2 = 0.0;
    /// Optional overrides of the resolutions as functions of |k|^2. Empty means constant.
    std::function<double(double)> y_phi2_of_k2;
    std::function<double(double)> y_pi2_of_k2;
    /// Skip the per-mode complete positivity check.
    bool allow_invalid = false;

    double y_phi2_at(double k2) const;
    double y_pi2_at(double k2) const;
    bool has_k_dependence() const {
        return static_cast<bool>(y_phi2_of_k2) || static_cast<bool>(y_pi2_of_k2);
    }
    void validate() const;
};

struct ChannelVerdict {
    bool valid;
    /// Smallest eigenvalue of Y + (1 - x^2) i Delta / 2. Negative means violated.
    double min_eigenvalue;

    double violation() const {
        return valid ? 0.0 : -min_eigenvalue;
    }
};

/// Coarse-grained single mode parameters.
struct EffectiveMode {
    double u_sq;
    double v_sq;
    double omega_prime;
    double beta_prime;

    /// 1 / v^2, the leading term of beta_prime when u v >> 1.
    double beta_prime_large_noise() const {
        return 1.0 / v_sq;
    }
};

/// exp(-|k|^2 sigma^2 / 2).
double x_factor(MomentumView k, const ChannelParams &channel);
/// exp(-|k|^2 sigma^2), the squared attenuation. Accepts k2 = inf.
double x_squared_from_norm2(double k2, const ChannelParams &channel);

ModeBlock y_block(const ChannelParams &channel);
ModeBlock y_block_at(double k2, const ChannelParams &channel);

/// Complete positivity test at one mode. k2 may be +inf for the |k| sigma -> inf limit.
ChannelVerdict validate_channel(MomentumView k, const ChannelParams &channel);
ChannelVerdict validate_channel_norm2(double k2, const ChannelParams &channel);

/// Throws ChannelInvalid unless the channel is valid at k2 or allow_invalid is set.
void require_valid_channel(double k2, const ChannelParams &channel);

/// x^2 A + Y.
ModeBlock coarse_covariance_B(MomentumView k, const ModelParams &params, const ChannelParams &channel);

/// u^2 and v^2 only; defined even where beta_prime is not (pure coarse state).
void uncertainty_squares(double k2, const ModelParams &params, const ChannelParams &channel, double &u_sq, double &v_sq);

/// Throws NumericalError when 2 u v <= 1.
EffectiveMode effective_mode(MomentumView k, const ModelParams &params, const ChannelParams &channel);

/// diag(u^2, v^2).
ModeBlock k_app_block(MomentumView k, const ModelParams &params, const ChannelParams &channel);

}  // namespace cgdist

#endif
