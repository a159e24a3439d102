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

#include "cgdist/spectral_rg.h"

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace cgdist {

namespace {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string mode_label(const Momentum &k) {
    std::string s;
    for (size_t i = 0; i < k.size(); i++) {
        if (i) {
            s += ",";
        }
        s += format_number(k[i]);
    }
    return s;
}

}  // namespace

SpectrumResult sector_spectrum(
    const std::vector<Momentum> &modes, const ModelParams &params, const ChannelParams &channel, MetricKind kind) {
    SectorBlock source = metric_source_block(modes, params, kind);
    Eigen::MatrixXcd middle = sector_middle(modes, params, channel, kind);

    Eigen::MatrixXcd s = 0.5 * (source.matrix + source.matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> source_eig(s);
    Eigen::VectorXd root = source_eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::MatrixXcd s_half = source_eig.eigenvectors() * root.asDiagonal() * source_eig.eigenvectors().adjoint();

    Eigen::MatrixXcd h = s_half * middle * s_half;
    h = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);

    double s_norm = std::max(root.maxCoeff(), 1e-300);
    SpectrumResult result;
    result.modes = modes;
    Eigen::Index dim = h.rows();
    for (Eigen::Index i = dim - 1; i >= 0; i--) {
        Eigen::VectorXcd w = eig.eigenvectors().col(i);
        Eigen::VectorXcd projected = s_half * w;
        Eigen::VectorXcd v = projected.norm() > 1e-10 * s_norm ? Eigen::VectorXcd(middle * projected) : w;
        v.normalize();
        Eigen::Index big = 0;
        v.cwiseAbs().maxCoeff(&big);
        v *= std::conj(v(big)) / std::abs(v(big));
        result.eigenvalues.push_back(std::max(eig.eigenvalues()(i), 0.0));
        result.eigenvectors.push_back(v);
    }
    return result;
}

std::string format_observable(const std::vector<Momentum> &modes, const Eigen::VectorXcd &coefficients) {
    size_t n = modes.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::string> labels;
    for (const auto &k : modes) {
        labels.push_back(mode_label(k));
    }
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return modes[a] < modes[b];
    });

    struct Term {
        std::string monomial;
        Complex c;
    };
    std::vector<Term> terms;
    double biggest = coefficients.cwiseAbs().maxCoeff();
    for (Eigen::Index idx = 0; idx < coefficients.size(); idx++) {
        if (std::abs(coefficients(idx)) <= 1e-9 * biggest) {
            continue;
        }
        std::string mono;
        for (size_t j : order) {
            bool is_pi = (idx >> (n - 1 - j)) & 1;
            if (!mono.empty()) {
                mono += "*";
            }
            mono += (is_pi ? "pi(" : "phi(") + labels[j] + ")";
        }
        terms.push_back(Term{mono, coefficients(idx)});
    }
    std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) {
        return a.monomial < b.monomial;
    });

    // Fix the overall phase on the first term of largest magnitude in canonical order.
    size_t ref = 0;
    for (size_t i = 1; i < terms.size(); i++) {
        if (std::abs(terms[i].c) > std::abs(terms[ref].c) * (1 + 1e-9)) {
            ref = i;
        }
    }
    Complex phase = terms.empty() ? Complex(1) : std::conj(terms[ref].c) / std::abs(terms[ref].c);

    std::string out;
    for (const auto &t : terms) {
        Complex c = t.c * phase;
        double re = std::abs(c.real()) <= 1e-12 * biggest ? 0.0 : c.real();
        double im = std::abs(c.imag()) <= 1e-12 * biggest ? 0.0 : c.imag();
        std::string coef;
        bool negative = false;
        if (im == 0) {
            negative = re < 0;
            coef = format_number(std::abs(re));
        } else {
            coef = "(" + format_number(re) + (im < 0 ? "-" : "+") + format_number(std::abs(im)) + "i)";
        }
        if (out.empty()) {
            out = (negative ? "-" : "") + coef + "*" + t.monomial;
        } else {
            out += (negative ? " - " : " + ") + coef + "*" + t.monomial;
        }
    }
    return out;
}

std::vector<RelevantObservable> relevance_report(
    const std::vector<Momentum> &modes,
    const ModelParams &params,
    const ChannelParams &channel,
    double cutoff,
    MetricKind kind) {
    SpectrumResult spec = sector_spectrum(modes, params, channel, kind);
    std::vector<RelevantObservable> out;
    for (size_t i = 0; i < spec.eigenvalues.size(); i++) {
        if (spec.eigenvalues[i] >= cutoff) {
            out.push_back(RelevantObservable{spec.eigenvalues[i], format_observable(modes, spec.eigenvectors[i])});
        }
    }
    return out;
}

}  // namespace cgdist
