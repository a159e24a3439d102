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

#ifndef CGDIST_CLI_H
#define CGDIST_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

#include "cgdist/metric_kernels.h"
#include "cgdist/perturbations.h"
#include "cgdist/scaling_integrator.h"

namespace cgdist::cli {

enum ExitCode : int {
    kOk = 0,
    kNumericalError = 1,
    kValidationFailure = 2,
    kUsage = 64,
};

struct RunConfig {
    std::string command;
    ModelParams model;
    ChannelParams channel;
    /// One of v2, v4, phik, pik.
    std::string perturbation = "v2";
    bool classical = false;
    MetricKind metric = MetricKind::kLargeNoise;
    McConfig mc;
    std::string out_path;
    std::string format = "csv";
    std::vector<double> sigma_grid;
    std::vector<Momentum> modes;
    double cutoff = 0;
};

/// Parses "1e-3", "1e-3s0" (times sigma0 = 1/m) or "1e10/s0" (divided by sigma0).
double parse_scaled(const std::string &text, double mass);

/// "lo:hi:n" with an optional ":log" (default) or ":lin" suffix. Bounds accept the s0 suffixes.
std::vector<double> parse_sigma_grid(const std::string &text, double mass);

/// "k1;k2;..." with comma separated components.
std::vector<Momentum> parse_modes(const std::string &text);

/// Parses flags (and an optional --config file, overridden by flags) into a RunConfig.
/// Throws std::invalid_argument on malformed input.
RunConfig parse_args(int argc, const char *const *argv);

/// Executes the configured command, writing the artifact to config.out_path or `out`.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

/// parse_args + run with exit code mapping.
int main_entry(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace cgdist::cli

#endif
