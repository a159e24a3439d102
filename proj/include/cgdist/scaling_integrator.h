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

#ifndef CGDIST_SCALING_INTEGRATOR_H
#define CGDIST_SCALING_INTEGRATOR_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgdist/metric_kernels.h"
#include "cgdist/perturbations.h"

namespace cgdist {

struct McConfig {
    uint64_t seed = 0;
    /// Total steps per chain, burn-in included.
    uint64_t n_steps = 200000;
    uint64_t n_burn = 20000;
    /// Initial proposal width in units of max(m, 1/sigma). Tuned during burn-in.
    double step_scale = 0.5;
    int n_chains = 8;
    uint64_t thinning = 10;
    /// Batch-means blocks per chain for the standard error.
    int blocks_per_chain = 16;

    void validate() const;
};

struct AlphaEstimate {
    double alpha = 0;
    double std_err = 0;
    /// Post burn-in acceptance fraction. NaN for deterministic estimates.
    double acceptance_rate = 0;
    std::optional<double> d_value;
    std::vector<std::string> warnings;
};

struct DensityResult {
    double value;
    double rel_err_estimate;
};

/// S_{d-1} int k^{d-1} f(k) dk for the V2 integrand (quantum needs beta = inf, classical finite beta).
DensityResult quad_density_v2(const ModelParams &params, const ChannelParams &channel, Statistics stats);

/// Metropolis estimate of alpha = d + sigma <d log f / d sigma>_f.
AlphaEstimate mc_alpha(PerturbationKind kind, const ModelParams &params, const ChannelParams &channel, const McConfig &cfg);

/// alpha = d + d log d(V2) / d log sigma by central differences in log sigma with steps rel_step and
/// rel_step / 2, combined by Richardson extrapolation. std_err holds the extrapolation correction.
AlphaEstimate fd_alpha_v2(
    const ModelParams &params,
    const ChannelParams &channel,
    double sigma,
    double rel_step,
    Statistics stats = Statistics::kQuantum);

struct SweepPoint {
    double sigma;
    uint64_t seed;
    std::optional<AlphaEstimate> estimate;
    std::string error;
};

/// One estimate per sigma (ascending). V2 kinds use fd_alpha_v2, V4 kinds mc_alpha with seed
/// cfg.seed ^ index. Per point failures are recorded and the sweep continues.
std::vector<SweepPoint> alpha_sweep(
    PerturbationKind kind,
    const ModelParams &params,
    const ChannelParams &channel,
    const std::vector<double> &sigmas,
    const McConfig &cfg);

}  // namespace cgdist

#endif
