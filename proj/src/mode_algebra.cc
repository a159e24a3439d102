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

#include "cgdist/mode_algebra.h"

#include <cmath>
#include <limits>
#include <sstream>

namespace cgdist {

namespace {

constexpr double kMaxExponent = 700.0;
const Complex kI(0.0, 1.0);

}  // namespace

InverseTemperature InverseTemperature::finite(double beta) {
    if (!(beta > 0) || !std::isfinite(beta)) {
        throw std::invalid_argument("beta must be a positive finite number (use infinite() for zero temperature)");
    }
    return InverseTemperature(false, beta);
}

double InverseTemperature::value() const {
    if (infinite_) {
        throw std::logic_error("beta is infinite; this path needs a finite inverse temperature");
    }
    return value_;
}

std::string InverseTemperature::str() const {
    if (infinite_) {
        return "inf";
    }
    std::ostringstream out;
    out.precision(17);
    out << value_;
    return out.str();
}

void ModelParams::validate() const {
    if (!(mass >= 0) || !std::isfinite(mass)) {
        throw std::invalid_argument("mass must be finite and non-negative");
    }
    if (dim < 1) {
        throw std::invalid_argument("spatial dimension must be at least 1");
    }
}

double norm2(MomentumView k) {
    double total = 0;
    for (double c : k) {
        total += c * c;
    }
    return total;
}

double omega_from_norm2(double k2, double mass) {
    return std::sqrt(k2 + mass * mass);
}

double omega(MomentumView k, const ModelParams &params) {
    return omega_from_norm2(norm2(k), params.mass);
}

double positive_omega_from_norm2(double k2, double mass) {
    double w = omega_from_norm2(k2, mass);
    if (!(w > 0)) {
        throw InfraredSingular("zero frequency: massless field evaluated at k = 0");
    }
    return w;
}

double positive_omega(MomentumView k, const ModelParams &params) {
    return positive_omega_from_norm2(norm2(k), params.mass);
}

double coth(double x) {
    double ax = std::abs(x);
    double r;
    if (ax > 20) {
        r = 1 + 2 * std::exp(-2 * ax);
    } else if (ax < 1e-8) {
        r = 1 / ax + ax / 3;
    } else {
        r = 1 / std::tanh(ax);
    }
    return x < 0 ? -r : r;
}

double thermal_factor(double omega, InverseTemperature beta) {
    if (beta.is_infinite()) {
        return 1.0;
    }
    return coth(beta.value() * omega / 2);
}

ModeBlock symplectic_delta() {
    ModeBlock d;
    d << 0.0, 1.0, -1.0, 0.0;
    return d;
}

ModeBlock covariance_A_from_omega(double omega, InverseTemperature beta) {
    if (!(omega > 0)) {
        throw InfraredSingular("covariance of a zero frequency mode");
    }
    double c = 0.5 * thermal_factor(omega, beta);
    ModeBlock a = ModeBlock::Zero();
    a(0, 0) = c / omega;
    a(1, 1) = c * omega;
    return a;
}

ModeBlock covariance_A(MomentumView k, const ModelParams &params) {
    return covariance_A_from_omega(positive_omega(k, params), params.beta);
}

ModeBlock classical_covariance_A_from_omega(double omega, InverseTemperature beta) {
    if (!(omega > 0)) {
        throw InfraredSingular("classical covariance of a zero frequency mode");
    }
    double b = beta.value();
    ModeBlock a = ModeBlock::Zero();
    a(0, 0) = 1 / (b * omega * omega);
    a(1, 1) = 1 / b;
    return a;
}

ModeBlock classical_covariance_A(MomentumView k, const ModelParams &params) {
    return classical_covariance_A_from_omega(positive_omega(k, params), params.beta);
}

ModeBlock rotation_R(double omega, double beta, double s) {
    double x = beta * omega * s;
    if (std::abs(x) > kMaxExponent) {
        throw OverflowError("imaginary time rotation overflows; use the zero temperature path");
    }
    double ch = std::cosh(x);
    double sh = std::sinh(x);
    ModeBlock r;
    r(0, 0) = ch;
    r(0, 1) = -kI * omega * sh;
    r(1, 0) = kI * sh / omega;
    r(1, 1) = ch;
    return r;
}

ModeBlock rotation_R(MomentumView k, const ModelParams &params, double s) {
    return rotation_R(positive_omega(k, params), params.beta.value(), s);
}

ModeBlock ground_block(double omega, int sign) {
    ModeBlock p;
    p(0, 0) = 0.5 / omega;
    p(0, 1) = 0.5 * sign * kI;
    p(1, 0) = -0.5 * sign * kI;
    p(1, 1) = 0.5 * omega;
    return p;
}

ModeBlock thermal_propagator(double omega, double beta, double s) {
    // (A + i Delta/2) = (n + 1) P+ + n P-, and P+/- R_s = exp(-/+ x s) P+/-, with n the Bose occupation.
    double x = beta * omega;
    double denom = -std::expm1(-x);
    double plus = std::exp(-x * s) / denom;
    double minus = std::exp(-x * (1 - s)) / denom;
    if (!std::isfinite(plus) || !std::isfinite(minus)) {
        throw OverflowError("thermal propagator outside the representable range");
    }
    return plus * ground_block(omega, +1) + minus * ground_block(omega, -1);
}

ModeBlock inverse(const ModeBlock &m) {
    Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(det) < 1e-300) {
        throw SingularBlock("2x2 block is singular");
    }
    ModeBlock inv;
    inv(0, 0) = m(1, 1);
    inv(0, 1) = -m(0, 1);
    inv(1, 0) = -m(1, 0);
    inv(1, 1) = m(0, 0);
    return inv / det;
}

}  // namespace cgdist
