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

#include "cgdist/quadrature.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <map>
#include <memory>
#include <numbers>

namespace cgdist {

namespace {

GaussLegendreRule build_rule(size_t n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n from the Chebyshev-like initial guess; roots are symmetric.
    for (size_t i = 0; i < (n + 1) / 2; i++) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 30; iter++) {
            double p0 = 1, p1 = x;
            for (size_t j = 2; j <= n; j++) {
                double p2 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                break;
            }
        }
        double w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = 0.5 * (1 - x);
        rule.nodes[n - 1 - i] = 0.5 * (1 + x);
        rule.weights[i] = 0.5 * w;
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    return rule;
}

}  // namespace

const GaussLegendreRule &gauss_legendre_unit(size_t n) {
    thread_local std::map<size_t, std::unique_ptr<GaussLegendreRule>> cache;
    auto &slot = cache[n];
    if (!slot) {
        slot = std::make_unique<GaussLegendreRule>(build_rule(n));
    }
    return *slot;
}

double unit_sphere_area(int dim) {
    return 2 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

RadialIntegral radial_integral(const std::function<double(double)> &g, int dim, double scale, double rel_tol) {
    auto integrand = [&](double t) {
        double gk = g(std::exp(t));
        if (gk == 0) {
            return 0.0;
        }
        return gk * std::exp(dim * t);
    };
    constexpr double kNegligible = 1e-18;
    constexpr int kMaxFolds = 650;
    double t0 = std::log(scale);
    // Window decisions use |g| so that integrands of either sign work.
    double gmax = std::abs(integrand(t0));

    // Grow the window one e-fold at a time until the integrand is negligible and decaying.
    double t_hi = t0, g_prev = gmax;
    for (int i = 1;; i++) {
        if (i > kMaxFolds || t_hi + 1 > 700) {
            throw QuadratureError("radial integrand does not decay at large k (ultraviolet divergence)", NAN, NAN);
        }
        t_hi += 1;
        double gv = std::abs(integrand(t_hi));
        if (!std::isfinite(gv)) {
            throw QuadratureError("radial integrand overflows at large k (ultraviolet divergence)", NAN, NAN);
        }
        gmax = std::max(gmax, gv);
        if (gv <= kNegligible * gmax && gv <= g_prev) {
            break;
        }
        g_prev = gv;
    }
    double t_lo = t0;
    g_prev = std::abs(integrand(t0));
    for (int i = 1;; i++) {
        if (i > kMaxFolds || t_lo - 1 < -700) {
            throw QuadratureError("radial integrand does not decay at small k (infrared divergence)", NAN, NAN);
        }
        t_lo -= 1;
        double gv = std::abs(integrand(t_lo));
        if (!std::isfinite(gv)) {
            throw QuadratureError("radial integrand overflows at small k (infrared divergence)", NAN, NAN);
        }
        gmax = std::max(gmax, gv);
        if (gv <= kNegligible * gmax && gv <= g_prev) {
            break;
        }
        g_prev = gv;
    }

    double total = 0, err = 0;
    for (double a = t_lo; a < t_hi; a += 1) {
        double seg_err = 0;
        double b = std::min(a + 1, t_hi);
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, 12, 1e-13, &seg_err);
        err += seg_err;
    }
    // Power law tail below t_lo.
    double g_lo = integrand(t_lo), g_next = integrand(t_lo + 1);
    if (g_lo * g_next > 0 && std::abs(g_next) > std::abs(g_lo)) {
        double p = std::log(g_next / g_lo);
        double tail = g_lo / p;
        total += tail;
        err += 0.1 * tail;
    }

    double area = unit_sphere_area(dim);
    RadialIntegral result{area * total, area * err};
    if (!(result.abs_error <= rel_tol * std::abs(result.value)) || !std::isfinite(result.value)) {
        throw QuadratureError("radial quadrature missed its tolerance", result.value, result.abs_error);
    }
    return result;
}

}  // namespace cgdist
