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

#include "cgdist/metric_kernels.h"

#include <cmath>

#include "cgdist/quadrature.h"

namespace cgdist {

namespace {

const Complex kHalfI(0.0, 0.5);

ModeBlock sandwich(const ModeBlock &g, const ModeBlock &m) {
    return g * m * g;
}

ModeBlock chi2_middle(double k2, double w, const ModelParams &params, const ChannelParams &channel, Statistics stats) {
    double x2 = x_squared_from_norm2(k2, channel);
    ModeBlock y = y_block_at(k2, channel);
    if (stats == Statistics::kClassical) {
        ModeBlock b = x2 * classical_covariance_A_from_omega(w, params.beta) + y;
        return x2 * inverse(b);
    }
    ModeBlock b = x2 * covariance_A_from_omega(w, params.beta) + y;
    double u_sq = b(0, 0).real();
    double v_sq = b(1, 1).real();
    double z = 2 * std::sqrt(u_sq * v_sq);
    if (!(z > 1)) {
        throw SingularBlock("B + i Delta / 2 is singular: coarse-grained mode is pure");
    }
    double omega_prime = std::sqrt(v_sq / u_sq);
    double beta_prime = 2 * std::atanh(1 / z) / omega_prime;
    ModeBlock r = rotation_R(omega_prime, beta_prime, -0.5);
    return x2 * r * inverse(b + kHalfI * symplectic_delta());
}

}  // namespace

const char *metric_kind_name(MetricKind kind) {
    switch (kind) {
        case MetricKind::kChi2:
            return "chi2";
        case MetricKind::kFisher:
            return "fisher";
        case MetricKind::kLargeNoise:
            return "large-noise";
        case MetricKind::kRawBures:
            return "raw-bures";
    }
    return "?";
}

KernelBlock chi2_kernel(MomentumView k, const ModelParams &params, const ChannelParams &channel, Statistics stats) {
    double k2 = norm2(k);
    require_valid_channel(k2, channel);
    double w = positive_omega_from_norm2(k2, params.mass);
    ModeBlock g = stats == Statistics::kClassical
                      ? classical_covariance_A_from_omega(w, params.beta)
                      : ModeBlock(covariance_A_from_omega(w, params.beta) + kHalfI * symplectic_delta());
    return KernelBlock{sandwich(g, chi2_middle(k2, w, params, channel, stats)), MetricKind::kChi2};
}

KernelBlock fisher_kernel(MomentumView k, const ModelParams &params, const ChannelParams &channel) {
    double k2 = norm2(k);
    double w = positive_omega_from_norm2(k2, params.mass);
    ModeBlock a = classical_covariance_A_from_omega(w, params.beta);
    double x2 = x_squared_from_norm2(k2, channel);
    if (x2 == 0) {
        return KernelBlock{ModeBlock::Zero(), MetricKind::kFisher};
    }
    ModeBlock p = a * inverse(a + y_block_at(k2, channel) / x2) * a;
    return KernelBlock{p, MetricKind::kFisher};
}

KernelBlock large_noise_kernel(MomentumView k, const ModelParams &params, const ChannelParams &channel) {
    double k2 = norm2(k);
    require_valid_channel(k2, channel);
    double w = positive_omega_from_norm2(k2, params.mass);
    ModeBlock g = covariance_A_from_omega(w, params.beta) + kHalfI * symplectic_delta();
    return KernelBlock{sandwich(g, metric_middle(k, params, channel, MetricKind::kLargeNoise)), MetricKind::kLargeNoise};
}

ModeBlock metric_middle(MomentumView k, const ModelParams &params, const ChannelParams &channel, MetricKind kind) {
    double k2 = norm2(k);
    double w = positive_omega_from_norm2(k2, params.mass);
    ModeBlock m = ModeBlock::Zero();
    switch (kind) {
        case MetricKind::kChi2:
            require_valid_channel(k2, channel);
            return chi2_middle(k2, w, params, channel, Statistics::kQuantum);
        case MetricKind::kFisher:
            return chi2_middle(k2, w, params, channel, Statistics::kClassical);
        case MetricKind::kLargeNoise: {
            require_valid_channel(k2, channel);
            double u_sq, v_sq;
            uncertainty_squares(k2, params, channel, u_sq, v_sq);
            if (!(u_sq > 0) || !(v_sq > 0)) {
                throw SingularBlock("K_app is singular");
            }
            double x2 = x_squared_from_norm2(k2, channel);
            m(0, 0) = x2 / u_sq;
            m(1, 1) = x2 / v_sq;
            return m;
        }
        case MetricKind::kRawBures:
            m(0, 0) = 2 * w;
            m(1, 1) = 2 / w;
            return m;
    }
    throw std::invalid_argument("unknown metric kind");
}

ModeBlock kubo_mori_double_integral(const ModeBlock &p, double omega, double beta) {
    ModeBlock r_bar = integrate_unit_interval<ModeBlock>([&](double s) {
        return rotation_R(omega, beta, s);
    });
    return r_bar.adjoint() * p * r_bar;
}

ModeBlock source_metric_block(MomentumView k, const ModelParams &params) {
    double w = positive_omega(k, params);
    double beta = params.beta.value();
    return integrate_unit_interval<ModeBlock>([&](double s) {
        return thermal_propagator(w, beta, s);
    });
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Eigen::MatrixXcd kron_all(const std::vector<ModeBlock> &blocks) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (const auto &b : blocks) {
        out = kron(out, b);
    }
    return out;
}

void check_sector_modes(const std::vector<Momentum> &modes, const ModelParams &params) {
    if (modes.empty()) {
        throw std::invalid_argument("a sector needs at least one mode");
    }
    if (modes.size() > kMaxSectorModes) {
        throw std::invalid_argument("sector size exceeds the hard cap of 8 modes");
    }
    for (size_t i = 0; i < modes.size(); i++) {
        if (modes[i].size() != static_cast<size_t>(params.dim)) {
            throw std::invalid_argument("momentum vector length does not match the spatial dimension");
        }
        for (size_t j = 0; j < i; j++) {
            if (modes[i] == modes[j]) {
                throw std::invalid_argument("sector modes must be pairwise distinct");
            }
        }
    }
}

SectorBlock zero_temp_block(const std::vector<Momentum> &modes, const ModelParams &params) {
    if (!params.beta.is_infinite()) {
        throw std::invalid_argument("zero_temp_block needs beta = inf");
    }
    check_sector_modes(modes, params);
    std::vector<ModeBlock> plus, minus;
    double total_omega = 0;
    for (const auto &k : modes) {
        double w = positive_omega(k, params);
        total_omega += w;
        plus.push_back(ground_block(w, +1));
        minus.push_back(ground_block(w, -1));
    }
    Eigen::MatrixXcd m = (kron_all(plus) + kron_all(minus)) / total_omega;
    return SectorBlock{modes, m, 1};
}

SectorBlock source_sector_block(const std::vector<Momentum> &modes, const ModelParams &params) {
    if (params.beta.is_infinite()) {
        return zero_temp_block(modes, params);
    }
    check_sector_modes(modes, params);
    double beta = params.beta.value();
    std::vector<double> omegas;
    for (const auto &k : modes) {
        omegas.push_back(positive_omega(k, params));
    }
    std::vector<ModeBlock> factors(modes.size());
    Eigen::MatrixXcd s = integrate_unit_interval<Eigen::MatrixXcd>([&](double s) {
        for (size_t j = 0; j < omegas.size(); j++) {
            factors[j] = thermal_propagator(omegas[j], beta, s);
        }
        return Eigen::MatrixXcd(kron_all(factors));
    });
    return SectorBlock{modes, beta * s, 1};
}

SectorBlock metric_source_block(const std::vector<Momentum> &modes, const ModelParams &params, MetricKind kind) {
    if (kind == MetricKind::kFisher) {
        if (params.beta.is_infinite()) {
            throw std::invalid_argument("the classical Fisher metric needs a finite beta");
        }
        check_sector_modes(modes, params);
        std::vector<ModeBlock> factors;
        for (const auto &k : modes) {
            factors.push_back(params.beta.value() * classical_covariance_A(k, params));
        }
        return SectorBlock{modes, kron_all(factors), 1};
    }
    if (kind == MetricKind::kRawBures && !params.beta.is_infinite()) {
        throw std::invalid_argument("the raw Bures substitution is only defined at beta = inf");
    }
    return source_sector_block(modes, params);
}

Eigen::MatrixXcd sector_middle(
    const std::vector<Momentum> &modes, const ModelParams &params, const ChannelParams &channel, MetricKind kind) {
    std::vector<ModeBlock> middles;
    for (const auto &k : modes) {
        middles.push_back(metric_middle(k, params, channel, kind));
    }
    Eigen::MatrixXcd m = kron_all(middles);
    if (kind == MetricKind::kRawBures) {
        // Per mode, (A +/- i D/2) diag(2w, 2/w) (A +/- i D/2) = 2 (A +/- i D/2), so the plain substitution
        // overcounts by 2^(n-1) relative to 2 / (sum w)^2 [(x)(A + i D/2) + (x)(A - i D/2)].
        m *= std::ldexp(1.0, 1 - static_cast<int>(modes.size()));
    }
    // Chi2 middles are Hermitian up to rounding in the rotation product.
    return 0.5 * (m + m.adjoint());
}

SectorBlock cg_metric_block(
    const std::vector<Momentum> &modes, const ModelParams &params, const ChannelParams &channel, MetricKind kind) {
    SectorBlock s = metric_source_block(modes, params, kind);
    Eigen::MatrixXcd m = sector_middle(modes, params, channel, kind);
    Eigen::MatrixXcd g = s.matrix * m * s.matrix;
    return SectorBlock{modes, 0.5 * (g + g.adjoint()), 2};
}

SectorBlock er_rho_block(
    const std::vector<Momentum> &modes, const ModelParams &params, const ChannelParams &channel, MetricKind kind) {
    SectorBlock s = metric_source_block(modes, params, kind);
    return SectorBlock{modes, sector_middle(modes, params, channel, kind) * s.matrix, 1};
}

}  // namespace cgdist
