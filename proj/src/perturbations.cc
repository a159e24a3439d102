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

#include "cgdist/perturbations.h"

#include <array>
#include <cmath>
#include <limits>

namespace cgdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logaddexp(double a, double b) {
    if (a == -kInf) {
        return b;
    }
    if (b == -kInf) {
        return a;
    }
    double hi = std::max(a, b);
    return hi + std::log1p(std::exp(-std::abs(a - b)));
}

// 1 / (1 + exp(-x)) without overflow.
double sigmoid(double x) {
    if (x >= 0) {
        return 1 / (1 + std::exp(-x));
    }
    double e = std::exp(x);
    return e / (1 + e);
}

// Log of one leg weight 1 / (e^{big} + e^{small}) and its sigma derivative, where only `big`
// carries the e^{sigma^2 k^2} dependence.
struct Leg {
    double log_w;
    double dlog_w;
};

Leg make_leg(double log_noise, double log_floor, double sigma, double k2) {
    double log_noise_full = log_noise + sigma * sigma * k2;
    Leg leg;
    leg.log_w = -logaddexp(log_noise_full, log_floor);
    if (log_noise_full == -kInf) {
        leg.dlog_w = 0;
    } else {
        leg.dlog_w = -2 * sigma * k2 * sigmoid(log_noise_full - log_floor);
    }
    return leg;
}

struct QuantumLegs {
    double log_omega;
    Leg a;  // e^{-sigma^2 k^2} / (u^2 omega^2)
    Leg b;  // e^{-sigma^2 k^2} / v^2
};

QuantumLegs quantum_legs(double k2, const ModelParams &params, const ChannelParams &channel) {
    require_valid_channel(k2, channel);
    double w = omega_from_norm2(k2, params.mass);
    double log_w = std::log(w);
    double log_floor = std::log(0.5 * thermal_factor(w, params.beta) * w);
    QuantumLegs q;
    q.log_omega = log_w;
    q.a = make_leg(2 * log_w + std::log(channel.y_phi2_at(k2)), log_floor, channel.sigma, k2);
    q.b = make_leg(std::log(channel.y_pi2_at(k2)), log_floor, channel.sigma, k2);
    return q;
}

// (phi, P phi) = 1 / (beta omega^2 + beta^2 omega^4 y_phi^2 e^{k^2 sigma^2}).
Leg classical_leg(double k2, const ModelParams &params, const ChannelParams &channel) {
    double w = omega_from_norm2(k2, params.mass);
    double log_b = std::log(params.beta.value());
    double log_w = std::log(w);
    return make_leg(2 * log_b + 4 * log_w + std::log(channel.y_phi2_at(k2)), log_b + 2 * log_w, channel.sigma, k2);
}

void check_temperature(PerturbationKind kind, const ModelParams &params) {
    bool quantum_pair = kind == PerturbationKind::kV2Quantum || kind == PerturbationKind::kV4Quantum;
    if (quantum_pair && !params.beta.is_infinite()) {
        throw std::invalid_argument("quantum V2/V4 densities are only available at beta = inf");
    }
    if (!is_quantum(kind) && params.beta.is_infinite()) {
        throw std::invalid_argument("classical densities need a finite beta");
    }
}

void check_length(PerturbationKind kind, std::span<const double> K, const ModelParams &params) {
    if (K.size() != static_cast<size_t>(free_momenta(kind) * params.dim)) {
        throw std::invalid_argument("momentum configuration has the wrong length");
    }
}

// Leg momenta |k_i|^2 for the quartic terms, with k4 = -(k1 + k2 + k3).
std::array<double, 4> quartic_norms(std::span<const double> K, int d) {
    std::array<double, 4> n{0, 0, 0, 0};
    for (int c = 0; c < d; c++) {
        double k4 = 0;
        for (int leg = 0; leg < 3; leg++) {
            double v = K[leg * d + c];
            n[leg] += v * v;
            k4 -= v;
        }
        n[3] += k4 * k4;
    }
    return n;
}

}  // namespace

const char *perturbation_name(PerturbationKind kind) {
    switch (kind) {
        case PerturbationKind::kV2Quantum:
            return "v2";
        case PerturbationKind::kV4Quantum:
            return "v4";
        case PerturbationKind::kV2Classical:
            return "v2-classical";
        case PerturbationKind::kV4Classical:
            return "v4-classical";
        case PerturbationKind::kPhiK:
            return "phik";
        case PerturbationKind::kPiK:
            return "pik";
    }
    return "?";
}

int free_momenta(PerturbationKind kind) {
    return (kind == PerturbationKind::kV4Quantum || kind == PerturbationKind::kV4Classical) ? 3 : 1;
}

bool is_quantum(PerturbationKind kind) {
    return kind != PerturbationKind::kV2Classical && kind != PerturbationKind::kV4Classical;
}

bool is_quadratic(PerturbationKind kind) {
    return kind == PerturbationKind::kV2Quantum || kind == PerturbationKind::kV2Classical;
}

LogDensity v2_log_density_norm2(double k2, const ModelParams &params, const ChannelParams &channel, bool classical) {
    if (omega_from_norm2(k2, params.mass) == 0) {
        return LogDensity{kInf, 0};
    }
    if (classical) {
        Leg p = classical_leg(k2, params, channel);
        return LogDensity{2 * p.log_w - std::log(2.0), 2 * p.dlog_w};
    }
    QuantumLegs q = quantum_legs(k2, params, channel);
    double ta = 2 * q.a.log_w;
    double tb = 2 * q.b.log_w;
    double wa = sigmoid(ta - tb);
    return LogDensity{
        -std::log(32.0) - 2 * q.log_omega + logaddexp(ta, tb),
        wa * 2 * q.a.dlog_w + (1 - wa) * 2 * q.b.dlog_w,
    };
}

LogDensity log_density(PerturbationKind kind, std::span<const double> K, const ModelParams &params, const ChannelParams &channel) {
    check_temperature(kind, params);
    check_length(kind, K, params);
    int d = params.dim;
    switch (kind) {
        case PerturbationKind::kV2Quantum:
        case PerturbationKind::kV2Classical:
            return v2_log_density_norm2(norm2(K), params, channel, kind == PerturbationKind::kV2Classical);
        case PerturbationKind::kPhiK:
        case PerturbationKind::kPiK: {
            double k2 = norm2(K);
            if (omega_from_norm2(k2, params.mass) == 0) {
                return LogDensity{kInf, 0};
            }
            QuantumLegs q = quantum_legs(k2, params, channel);
            if (kind == PerturbationKind::kPiK) {
                return LogDensity{q.b.log_w, q.b.dlog_w};
            }
            return LogDensity{q.a.log_w - 2 * q.log_omega, q.a.dlog_w};
        }
        case PerturbationKind::kV4Classical: {
            auto n = quartic_norms(K, d);
            LogDensity r{-std::log(24.0), 0};
            for (double k2 : n) {
                if (omega_from_norm2(k2, params.mass) == 0) {
                    return LogDensity{kInf, 0};
                }
                Leg p = classical_leg(k2, params, channel);
                r.log_f += p.log_w;
                r.dlog_f_dsigma += p.dlog_w;
            }
            return r;
        }
        case PerturbationKind::kV4Quantum: {
            auto n = quartic_norms(K, d);
            std::array<QuantumLegs, 4> legs;
            double total_omega = 0;
            for (int i = 0; i < 4; i++) {
                total_omega += omega_from_norm2(n[i], params.mass);
            }
            for (int i = 0; i < 4; i++) {
                if (omega_from_norm2(n[i], params.mass) == 0) {
                    // A single massless zero leg is integrable; only the leg weight is singular.
                    return LogDensity{kInf, 0};
                }
                legs[i] = quantum_legs(n[i], params, channel);
            }
            // Bracket terms: all pi legs, all phi legs, then the six mixed pairs.
            std::array<double, 8> t{};
            std::array<double, 8> dt{};
            for (int i = 0; i < 4; i++) {
                t[0] += legs[i].b.log_w;
                dt[0] += legs[i].b.dlog_w;
                t[1] += legs[i].a.log_w;
                dt[1] += legs[i].a.dlog_w;
            }
            int idx = 2;
            for (int p = 0; p < 4; p++) {
                for (int q = p + 1; q < 4; q++) {
                    for (int i = 0; i < 4; i++) {
                        const Leg &l = (i == p || i == q) ? legs[i].a : legs[i].b;
                        t[idx] += l.log_w;
                        dt[idx] += l.dlog_w;
                    }
                    idx++;
                }
            }
            double hi = t[0];
            for (double v : t) {
                hi = std::max(hi, v);
            }
            double z = 0, dz = 0;
            for (int j = 0; j < 8; j++) {
                double e = std::exp(t[j] - hi);
                z += e;
                dz += e * dt[j];
            }
            return LogDensity{
                -std::log(24.0 * 64.0) - 2 * std::log(total_omega) + hi + std::log(z),
                dz / z,
            };
        }
    }
    throw std::invalid_argument("unknown perturbation kind");
}

double dist_linear(MomentumView k, const ModelParams &params, const ChannelParams &channel, PerturbationKind which) {
    if (which != PerturbationKind::kPhiK && which != PerturbationKind::kPiK) {
        throw std::invalid_argument("dist_linear takes PHI_K or PI_K");
    }
    positive_omega(k, params);
    return std::exp(log_density(which, k, params, channel).log_f);
}

double v2_integrand(MomentumView k1, const ModelParams &params, const ChannelParams &channel) {
    positive_omega(k1, params);
    return std::exp(log_density(PerturbationKind::kV2Quantum, k1, params, channel).log_f);
}

double v4_integrand(std::span<const double> K, const ModelParams &params, const ChannelParams &channel) {
    return std::exp(log_density(PerturbationKind::kV4Quantum, K, params, channel).log_f);
}

double v2_classical_integrand(MomentumView k1, const ModelParams &params, const ChannelParams &channel) {
    positive_omega(k1, params);
    return std::exp(log_density(PerturbationKind::kV2Classical, k1, params, channel).log_f);
}

double v4_classical_integrand(std::span<const double> K, const ModelParams &params, const ChannelParams &channel) {
    return std::exp(log_density(PerturbationKind::kV4Classical, K, params, channel).log_f);
}

double log_sigma_derivative(PerturbationKind kind, std::span<const double> K, const ModelParams &params, const ChannelParams &channel) {
    return log_density(kind, K, params, channel).dlog_f_dsigma;
}

}  // namespace cgdist
