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

#include "cgdist/scaling_integrator.h"

#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "cgdist/quadrature.h"

namespace cgdist {

void McConfig::validate() const {
    if (!(n_steps > n_burn)) {
        throw std::invalid_argument("n_steps must exceed n_burn");
    }
    if (!(step_scale > 0) || !std::isfinite(step_scale)) {
        throw std::invalid_argument("step_scale must be positive");
    }
    if (n_chains < 1) {
        throw std::invalid_argument("need at least one chain");
    }
    if (thinning < 1) {
        throw std::invalid_argument("thinning must be at least 1");
    }
    if (blocks_per_chain < 1) {
        throw std::invalid_argument("blocks_per_chain must be at least 1");
    }
}

DensityResult quad_density_v2(const ModelParams &params, const ChannelParams &channel, Statistics stats) {
    params.validate();
    channel.validate();
    bool classical = stats == Statistics::kClassical;
    if (classical && params.beta.is_infinite()) {
        throw std::invalid_argument("classical V2 density needs a finite beta");
    }
    if (!classical && !params.beta.is_infinite()) {
        throw std::invalid_argument("quantum V2 density is only available at beta = inf");
    }
    double scale = channel.sigma > 0 ? 1 / channel.sigma : (params.mass > 0 ? params.mass : 1.0);
    auto g = [&](double k) {
        return std::exp(v2_log_density_norm2(k * k, params, channel, classical).log_f);
    };
    RadialIntegral r = radial_integral(g, params.dim, scale, 1e-8);
    return DensityResult{r.value, r.abs_error / r.value};
}

AlphaEstimate fd_alpha_v2(
    const ModelParams &params, const ChannelParams &channel, double sigma, double rel_step, Statistics stats) {
    if (!(rel_step > 1e-6 && rel_step < 0.1)) {
        throw std::invalid_argument("rel_step must lie in (1e-6, 0.1)");
    }
    if (!(sigma > 0)) {
        throw std::invalid_argument("fd_alpha_v2 needs sigma > 0");
    }
    auto log_density_at = [&](double s) {
        ChannelParams c = channel;
        c.sigma = s;
        return std::log(quad_density_v2(params, c, stats).value);
    };
    auto slope = [&](double h) {
        return (log_density_at(sigma * std::exp(h)) - log_density_at(sigma * std::exp(-h))) / (2 * h);
    };
    double d1 = slope(rel_step);
    double d2 = slope(rel_step / 2);
    double extrapolated = (4 * d2 - d1) / 3;

    ChannelParams c = channel;
    c.sigma = sigma;
    AlphaEstimate est;
    est.alpha = params.dim + extrapolated;
    est.std_err = std::abs(extrapolated - d2);
    est.acceptance_rate = std::numeric_limits<double>::quiet_NaN();
    est.d_value = quad_density_v2(params, c, stats).value;
    return est;
}

namespace {

struct ChainResult {
    std::vector<double> samples;
    uint64_t accepted = 0;
    uint64_t proposed = 0;
};

std::string format_config(const std::vector<double> &x) {
    std::ostringstream out;
    out.precision(17);
    out << "K = (";
    for (size_t i = 0; i < x.size(); i++) {
        out << (i ? ", " : "") << x[i];
    }
    out << ")";
    return out.str();
}

ChainResult run_chain(
    PerturbationKind kind, const ModelParams &params, const ChannelParams &channel, const McConfig &cfg, int chain) {
    std::seed_seq seq{
        static_cast<uint32_t>(cfg.seed & 0xFFFFFFFFu),
        static_cast<uint32_t>(cfg.seed >> 32),
        static_cast<uint32_t>(chain),
    };
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    size_t n = static_cast<size_t>(free_momenta(kind) * params.dim);
    double sigma = channel.sigma;
    double scale = std::max(params.mass, sigma > 0 ? 1 / sigma : 0.0);
    if (!(scale > 0)) {
        scale = 1;
    }
    double step = cfg.step_scale * scale;
    double init_scale = sigma > 0 ? 0.5 / sigma : 0.5 * scale;

    std::vector<double> x(n), y(n);
    LogDensity cur{};
    for (int attempt = 0;; attempt++) {
        for (auto &v : x) {
            v = init_scale * normal(rng);
        }
        cur = log_density(kind, x, params, channel);
        if (std::isfinite(cur.log_f)) {
            break;
        }
        if (attempt > 1000) {
            throw NumericalError("could not find a starting point with finite density");
        }
    }

    ChainResult result;
    uint64_t window_accepts = 0;
    constexpr uint64_t kWindow = 100;
    for (uint64_t t = 0; t < cfg.n_steps; t++) {
        for (size_t i = 0; i < n; i++) {
            y[i] = x[i] + step * normal(rng);
        }
        LogDensity prop = log_density(kind, y, params, channel);
        if (std::isnan(prop.log_f) || std::isnan(prop.dlog_f_dsigma)) {
            throw NumericalError("NaN in the integrand at " + format_config(y));
        }
        double log_u = std::log(uniform(rng));
        bool accept = prop.log_f != std::numeric_limits<double>::infinity() && log_u < prop.log_f - cur.log_f;
        if (accept) {
            x.swap(y);
            cur = prop;
        }
        if (t < cfg.n_burn) {
            window_accepts += accept;
            if ((t + 1) % kWindow == 0) {
                // Steer toward 30-40% acceptance; frozen once burn-in ends.
                double rate = static_cast<double>(window_accepts) / kWindow;
                if (rate < 0.3 || rate > 0.4) {
                    step *= std::exp(1.5 * (rate - 0.35));
                }
                window_accepts = 0;
            }
            continue;
        }
        result.proposed++;
        result.accepted += accept;
        if ((t - cfg.n_burn + 1) % cfg.thinning == 0) {
            result.samples.push_back(sigma * cur.dlog_f_dsigma);
        }
    }
    return result;
}

}  // namespace

AlphaEstimate mc_alpha(PerturbationKind kind, const ModelParams &params, const ChannelParams &channel, const McConfig &cfg) {
    params.validate();
    channel.validate();
    cfg.validate();
    if (kind == PerturbationKind::kPhiK || kind == PerturbationKind::kPiK) {
        throw std::invalid_argument("mc_alpha integrates V2 or V4 perturbations");
    }

    std::vector<ChainResult> results(cfg.n_chains);
    std::vector<std::exception_ptr> errors(cfg.n_chains);
    std::vector<std::thread> threads;
    for (int c = 0; c < cfg.n_chains; c++) {
        threads.emplace_back([&, c] {
            try {
                results[c] = run_chain(kind, params, channel, cfg, c);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    std::vector<double> block_means;
    double total = 0;
    size_t count = 0;
    uint64_t accepted = 0, proposed = 0;
    for (const auto &r : results) {
        accepted += r.accepted;
        proposed += r.proposed;
        for (double v : r.samples) {
            total += v;
        }
        count += r.samples.size();
        size_t block = r.samples.size() / cfg.blocks_per_chain;
        if (block == 0) {
            continue;
        }
        for (int b = 0; b < cfg.blocks_per_chain; b++) {
            double s = 0;
            for (size_t i = b * block; i < (b + 1) * block; i++) {
                s += r.samples[i];
            }
            block_means.push_back(s / block);
        }
    }
    if (count == 0) {
        throw std::invalid_argument("no samples kept; increase n_steps or lower thinning");
    }

    AlphaEstimate est;
    double mean = total / count;
    est.alpha = params.dim + mean;
    est.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(proposed);
    if (block_means.size() >= 2) {
        double bm = 0;
        for (double v : block_means) {
            bm += v;
        }
        bm /= block_means.size();
        double var = 0;
        for (double v : block_means) {
            var += (v - bm) * (v - bm);
        }
        var /= (block_means.size() - 1);
        est.std_err = std::sqrt(var / block_means.size());
    } else {
        est.std_err = std::numeric_limits<double>::infinity();
        est.warnings.push_back("too few samples for a blocked standard error");
    }
    if (est.acceptance_rate < 0.1 || est.acceptance_rate > 0.9) {
        std::ostringstream w;
        w << "acceptance rate " << est.acceptance_rate << " outside [0.1, 0.9]";
        est.warnings.push_back(w.str());
    }
    if (channel.sigma > 0 && est.std_err == 0) {
        // Every retained sample sits where the sigma derivative underflows, typically a chain that
        // fell into a non-normalizable infrared region.
        est.warnings.push_back("sigma derivative vanished on every sample; the density may not be normalizable");
    }
    return est;
}

std::vector<SweepPoint> alpha_sweep(
    PerturbationKind kind,
    const ModelParams &params,
    const ChannelParams &channel,
    const std::vector<double> &sigmas,
    const McConfig &cfg) {
    for (size_t i = 1; i < sigmas.size(); i++) {
        if (!(sigmas[i] >= sigmas[i - 1])) {
            throw std::invalid_argument("sigma grid must be sorted ascending");
        }
    }
    std::vector<SweepPoint> out;
    for (size_t i = 0; i < sigmas.size(); i++) {
        SweepPoint p{sigmas[i], cfg.seed ^ static_cast<uint64_t>(i), std::nullopt, ""};
        try {
            ChannelParams c = channel;
            c.sigma = sigmas[i];
            if (is_quadratic(kind)) {
                Statistics stats = kind == PerturbationKind::kV2Classical ? Statistics::kClassical : Statistics::kQuantum;
                p.estimate = fd_alpha_v2(params, c, sigmas[i], 1e-2, stats);
            } else {
                McConfig point_cfg = cfg;
                point_cfg.seed = p.seed;
                p.estimate = mc_alpha(kind, params, c, point_cfg);
            }
        } catch (const std::exception &e) {
            p.error = e.what();
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace cgdist
