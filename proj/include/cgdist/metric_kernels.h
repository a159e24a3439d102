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

#ifndef CGDIST_METRIC_KERNELS_H
#define CGDIST_METRIC_KERNELS_H

#include <vector>

#include "cgdist/gaussian_channel.h"
#include "cgdist/mode_algebra.h"

namespace cgdist {

enum class MetricKind { kChi2, kFisher, kLargeNoise, kRawBures };
enum class Statistics { kQuantum, kClassical };

const char *metric_kind_name(MetricKind kind);

struct KernelBlock {
    ModeBlock entries;
    MetricKind kind;
};

/// Dense operator on the tensor product of the (phi, pi) bases of `modes`. Mode 0 is the leftmost
/// tensor factor (most significant bit of the basis index, with phi = 0 and pi = 1).
///
/// `beta_power` records the scaling convention: the block equals beta^beta_power times the
/// unscaled quantity, so that blocks stay finite as beta -> inf.
struct SectorBlock {
    std::vector<Momentum> modes;
    Eigen::MatrixXcd matrix;
    int beta_power;
};

constexpr size_t kMaxSectorModes = 8;

/// Exact chi-squared kernel (A + i D/2) x R^B_{-1/2} (B + i D/2)^{-1} x (A + i D/2).
/// With Statistics::kClassical the same path runs with D = 0, R = I and the classical covariance.
KernelBlock chi2_kernel(
    MomentumView k, const ModelParams &params, const ChannelParams &channel, Statistics stats = Statistics::kQuantum);

/// Classical Fisher kernel A (A + Y / x^2)^{-1} A. Requires finite beta.
KernelBlock fisher_kernel(MomentumView k, const ModelParams &params, const ChannelParams &channel);

/// (A + i D/2) x K_app^{-1} x (A + i D/2).
KernelBlock large_noise_kernel(MomentumView k, const ModelParams &params, const ChannelParams &channel);

/// The per-mode factor M sandwiched between source blocks, so that kernel = G M G with G = A + i D/2
/// (or the classical A for Fisher). Chi2: x^2 R^B_{-1/2} (B + i D/2)^{-1}. Large noise: x^2 K_app^{-1}.
/// Raw Bures: diag(2 omega, 2 / omega). Fisher: x^2 (x^2 A_cl + Y)^{-1}.
ModeBlock metric_middle(MomentumView k, const ModelParams &params, const ChannelParams &channel, MetricKind kind);

/// int_0^1 int_0^1 R_t^dagger P R_s ds dt by Gauss-Legendre quadrature on the rotation matrices.
/// Loses precision for large beta omega; meant for moderate temperatures and cross-checks.
ModeBlock kubo_mori_double_integral(const ModeBlock &p, double omega, double beta);

/// Kubo-Mori source block int_0^1 (A + i D/2) R_s ds of a single mode at finite beta.
ModeBlock source_metric_block(MomentumView k, const ModelParams &params);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);
Eigen::MatrixXcd kron_all(const std::vector<ModeBlock> &blocks);

/// Zero temperature source block (1 / sum omega) [ (x) (A^inf + i D/2) + (x) (A^inf - i D/2) ].
/// beta_power = 1. Requires beta = inf and distinct modes.
SectorBlock zero_temp_block(const std::vector<Momentum> &modes, const ModelParams &params);

/// beta int_0^1 (x)_j (A_j + i D/2) R_s ds. At beta = inf this is zero_temp_block; at finite beta the
/// integral is done by Gauss-Legendre doubling. beta_power = 1.
SectorBlock source_sector_block(const std::vector<Momentum> &modes, const ModelParams &params);

/// Source block matching a metric: the classical beta (x) A_cl for Fisher, source_sector_block otherwise.
SectorBlock metric_source_block(const std::vector<Momentum> &modes, const ModelParams &params, MetricKind kind);

/// (x)_j metric_middle(k_j), Hermitian. For raw Bures the product is scaled by 2^(1-n) so that the
/// zero temperature components are 2 / (sum w)^2 [(x)(A + i D/2) + (x)(A - i D/2)].
Eigen::MatrixXcd sector_middle(
    const std::vector<Momentum> &modes, const ModelParams &params, const ChannelParams &channel, MetricKind kind);

/// Coarse-grained metric components S (x) M_j S with S the source sector block (classical A for
/// Fisher). beta_power = 2, matching the squared norm of a perturbation.
SectorBlock cg_metric_block(
    const std::vector<Momentum> &modes, const ModelParams &params, const ChannelParams &channel, MetricKind kind);

/// The linear map E R_rho restricted to the sector: ((x) M_j) S. beta_power = 1. Not symmetric.
SectorBlock er_rho_block(
    const std::vector<Momentum> &modes,
    const ModelParams &params,
    const ChannelParams &channel,
    MetricKind kind = MetricKind::kLargeNoise);

/// Throws std::invalid_argument on an empty, oversized, dimension-mismatched or repeated mode list.
void check_sector_modes(const std::vector<Momentum> &modes, const ModelParams &params);

}  // namespace cgdist

#endif
