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

#include "cgdist/gaussian_channel.h"

#include <cmath>
#include <limits>

namespace cgdist {

double ChannelParams::y_phi2_at(double k2) const {
    return y_phi2_of_k2 ? y_phi2_of_k2(k2) : y_phi2;
}

double ChannelParams::y_pi2_at(double k2) const {
    return y_pi2_of_k2 ? y_pi2_of_k2(k2) : y_pi2;
}

void ChannelParams::validate() const {
    if (!(sigma >= 0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("sigma must be finite and non-negative");
    }
    if (!(y_phi2 >= 0) || !(y_pi2 >= 0) || std::isnan(y_phi2) || std::isnan(y_pi2)) {
        throw std::invalid_argument("squared resolutions must be non-negative");
    }
}

double x_squared_from_norm2(double k2, const ChannelParams &channel) {
    if (channel.sigma == 0) {
        return 1.0;
    }
    return std::exp(-k2 * channel.sigma * channel.sigma);
}

double x_factor(MomentumView k, const ChannelParams &channel) {
    return std::exp(-0.5 * norm2(k) * channel.sigma * channel.sigma);
}

ModeBlock y_block_at(double k2, const ChannelParams &channel) {
    ModeBlock y = ModeBlock::Zero();
    y(0, 0) = channel.y_phi2_at(k2);
    y(1, 1) = channel.y_pi2_at(k2);
    return y;
}

ModeBlock y_block(const ChannelParams &channel) {
    return y_block_at(0.0, channel);
}

ChannelVerdict validate_channel_norm2(double k2, const ChannelParams &channel) {
    double a = channel.y_phi2_at(k2);
    double b = channel.y_pi2_at(k2);
    double c = channel.sigma == 0 ? 0.0 : -std::expm1(-k2 * channel.sigma * channel.sigma);
    double half_diff = 0.5 * (a - b);
    double min_eig = 0.5 * (a + b) - std::sqrt(half_diff * half_diff + 0.25 * c * c);
    double scale = std::max(1.0, 0.5 * (a + b));
    return ChannelVerdict{min_eig >= -1e-12 * scale, min_eig};
}

ChannelVerdict validate_channel(MomentumView k, const ChannelParams &channel) {
    return validate_channel_norm2(norm2(k), channel);
}

void require_valid_channel(double k2, const ChannelParams &channel) {
    if (channel.allow_invalid) {
        return;
    }
    // y_phi2 y_pi2 >= 1/4 covers every k for constant resolutions.
    if (!channel.has_k_dependence() && channel.y_phi2 * channel.y_pi2 >= 0.25) {
        return;
    }
    auto verdict = validate_channel_norm2(k2, channel);
    if (!verdict.valid) {
        throw ChannelInvalid(
            "channel is not completely positive at |k|^2 = " + std::to_string(k2), verdict.violation());
    }
}

ModeBlock coarse_covariance_B(MomentumView k, const ModelParams &params, const ChannelParams &channel) {
    double k2 = norm2(k);
    require_valid_channel(k2, channel);
    ModeBlock a = covariance_A(k, params);
    return x_squared_from_norm2(k2, channel) * a + y_block_at(k2, channel);
}

void uncertainty_squares(double k2, const ModelParams &params, const ChannelParams &channel, double &u_sq, double &v_sq) {
    double w = positive_omega_from_norm2(k2, params.mass);
    double t = 0.5 * thermal_factor(w, params.beta) * x_squared_from_norm2(k2, channel);
    u_sq = channel.y_phi2_at(k2) + t / w;
    v_sq = channel.y_pi2_at(k2) + t * w;
}

EffectiveMode effective_mode(MomentumView k, const ModelParams &params, const ChannelParams &channel) {
    double k2 = norm2(k);
    require_valid_channel(k2, channel);
    EffectiveMode e{};
    uncertainty_squares(k2, params, channel, e.u_sq, e.v_sq);
    double u = std::sqrt(e.u_sq);
    double v = std::sqrt(e.v_sq);
    double z = 2 * std::sqrt(e.u_sq * e.v_sq);
    // Within rounding of 1 the state is pure and beta' is meaningless.
    if (!(z > 1 + 8 * std::numeric_limits<double>::epsilon())) {
        throw NumericalError("coarse-grained mode is pure (2uv <= 1); effective temperature diverges");
    }
    e.omega_prime = v / u;
    e.beta_prime = (u / v) * 2 * std::atanh(1 / z);
    return e;
}

ModeBlock k_app_block(MomentumView k, const ModelParams &params, const ChannelParams &channel) {
    double k2 = norm2(k);
    require_valid_channel(k2, channel);
    ModeBlock r = ModeBlock::Zero();
    double u_sq, v_sq;
    uncertainty_squares(k2, params, channel, u_sq, v_sq);
    r(0, 0) = u_sq;
    r(1, 1) = v_sq;
    return r;
}

}  // namespace cgdist
