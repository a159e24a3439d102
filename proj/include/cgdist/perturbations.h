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

#ifndef CGDIST_PERTURBATIONS_H
#define CGDIST_PERTURBATIONS_H

#include <string>

#include "cgdist/gaussian_channel.h"
#include "cgdist/mode_algebra.h"

namespace cgdist {

enum class PerturbationKind { kV2Quantum, kV4Quantum, kV2Classical, kV4Classical, kPhiK, kPiK };

const char *perturbation_name(PerturbationKind kind);

/// Number of free momentum vectors sampled for the kind: 3 for the quartic terms (the fourth leg is
/// fixed by momentum conservation), 1 otherwise.
int free_momenta(PerturbationKind kind);

bool is_quantum(PerturbationKind kind);
bool is_quadratic(PerturbationKind kind);

/// log f and its sigma derivative evaluated together.
struct LogDensity {
    double log_f;
    double dlog_f_dsigma;
};

/// Evaluates log f(K) and d log f / d sigma. K holds the free momenta back to back (free_momenta * d
/// entries). Quantum V2/V4 need beta = inf, classical kinds need finite beta. Each leg is checked for
/// channel validity unless the channel allows invalid modes. Returns log_f = +inf at a massless zero mode.
LogDensity log_density(PerturbationKind kind, std::span<const double> K, const ModelParams &params, const ChannelParams &channel);

/// exp(-k^2 sigma^2) / (omega^4 u^2) for PHI_K, exp(-k^2 sigma^2) / v^2 for PI_K.
double dist_linear(MomentumView k, const ModelParams &params, const ChannelParams &channel, PerturbationKind which);

double v2_integrand(MomentumView k1, const ModelParams &params, const ChannelParams &channel);
double v4_integrand(std::span<const double> K, const ModelParams &params, const ChannelParams &channel);
double v2_classical_integrand(MomentumView k1, const ModelParams &params, const ChannelParams &channel);
double v4_classical_integrand(std::span<const double> K, const ModelParams &params, const ChannelParams &channel);

/// Analytic d log f / d sigma.
double log_sigma_derivative(PerturbationKind kind, std::span<const double> K, const ModelParams &params, const ChannelParams &channel);

/// Radial versions used by the quadrature: the V2 integrands depend on |k|^2 only.
LogDensity v2_log_density_norm2(double k2, const ModelParams &params, const ChannelParams &channel, bool classical);

}  // namespace cgdist

#endif
