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

#ifndef CGDIST_SPECTRAL_RG_H
#define CGDIST_SPECTRAL_RG_H

#include <string>
#include <vector>

#include "cgdist/metric_kernels.h"

namespace cgdist {

struct SpectrumResult {
    std::vector<Momentum> modes;
    /// Descending. Real and non-negative by construction.
    std::vector<double> eigenvalues;
    /// Unit norm coefficient vectors over the (x)(phi, pi) basis, same order as eigenvalues.
    std::vector<Eigen::VectorXcd> eigenvectors;
    /// Eigenvalues carry one power of beta (finite at beta = inf). Divide by beta for the raw map.
    bool beta_scaled = true;
};

/// Eigen decomposition of E R_rho on a sector, through the similarity transform with the square
/// root of the source block. Zero eigenvalues of a rank deficient source block are kept, with
/// eigenvectors spanning its kernel.
SpectrumResult sector_spectrum(
    const std::vector<Momentum> &modes,
    const ModelParams &params,
    const ChannelParams &channel,
    MetricKind kind = MetricKind::kLargeNoise);

struct RelevantObservable {
    double eigenvalue;
    std::string observable;
};

/// Spectrum entries with eigenvalue >= cutoff, observables printed as polynomials in phi(k), pi(k).
/// The text does not depend on the order in which the modes are listed.
std::vector<RelevantObservable> relevance_report(
    const std::vector<Momentum> &modes,
    const ModelParams &params,
    const ChannelParams &channel,
    double cutoff,
    MetricKind kind = MetricKind::kLargeNoise);

/// Polynomial text for a coefficient vector over the sector basis.
std::string format_observable(const std::vector<Momentum> &modes, const Eigen::VectorXcd &coefficients);

}  // namespace cgdist

#endif
