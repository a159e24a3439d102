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

#ifndef CGDIST_QUADRATURE_H
#define CGDIST_QUADRATURE_H

#include <cmath>
#include <functional>
#include <vector>

#include "cgdist/errors.h"

namespace cgdist {

/// Gauss-Legendre nodes and weights mapped to [0, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached per thread. n >= 1.
const GaussLegendreRule &gauss_legendre_unit(size_t n);

inline double norm_of(double x) {
    return std::abs(x);
}
template <typename M>
double norm_of(const M &m) {
    return m.norm();
}

/// Integrates a matrix (or scalar) valued function over [0, 1], starting at 32 nodes and doubling
/// until the relative change in Frobenius norm drops below tol. T needs +, scalar * and norm().
template <typename T, typename F>
T integrate_unit_interval(F &&f, double tol = 1e-9, size_t max_nodes = 4096) {
    auto eval = [&](size_t n) {
        const auto &rule = gauss_legendre_unit(n);
        T total = rule.weights[0] * f(rule.nodes[0]);
        for (size_t i = 1; i < n; i++) {
            total = total + rule.weights[i] * f(rule.nodes[i]);
        }
        return total;
    };
    size_t n = 32;
    T prev = eval(n);
    while (true) {
        n *= 2;
        T cur = eval(n);
        double scale = std::max(norm_of(cur), 1e-300);
        double change = norm_of(cur - prev);
        if (change <= tol * scale) {
            return cur;
        }
        if (n >= max_nodes) {
            throw QuadratureError("Gauss-Legendre doubling did not converge", norm_of(cur), change);
        }
        prev = cur;
    }
}


struct RadialIntegral {
    double value;
    double abs_error;
};

/// Integrates S_{d-1} * int_0^inf k^{d-1} g(k) dk for a positive g, working in log k.
/// The integration window is grown in e-folds from `scale` until the integrand is negligible on
/// both ends. Throws QuadratureError if either end does not decay (divergent integral) or the
/// requested relative tolerance is missed.
RadialIntegral radial_integral(const std::function<double(double)> &g, int dim, double scale, double rel_tol = 1e-8);

/// Surface area of the unit sphere in R^d: 2 pi^{d/2} / Gamma(d/2).
double unit_sphere_area(int dim);

}  // namespace cgdist

#endif
