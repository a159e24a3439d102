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

#include <cmath>
#include <gtest/gtest.h>

using namespace cgdist;

namespace {

ChannelParams channel(double sigma, double y_phi2, double y_pi2) {
    ChannelParams c;
    c.sigma = sigma;
    c.y_phi2 = y_phi2;
    c.y_pi2 = y_pi2;
    return c;
}

const ModelParams kZeroT{1.0, InverseTemperature::infinite(), 1};

struct PairOracle {
    double eta1, eta2;
    Eigen::VectorXcd a1, a2, a4;
};

// Closed forms for the (k, -k) sector at zero temperature, from the 4x4 block worked by hand.
PairOracle pair_oracle(double kx, const ChannelParams &c) {
    double k2 = kx * kx, u_sq, v_sq;
    uncertainty_squares(k2, kZeroT, c, u_sq, v_sq);
    double w = omega_from_norm2(k2, 1.0);
    double e = std::exp(-2 * k2 * c.sigma * c.sigma);
    PairOracle o;
    o.eta1 = e / (2 * w * u_sq * v_sq);
    o.eta2 = e / 4 * (1 / (w * w * w * u_sq * u_sq) + w / (v_sq * v_sq));
    // Basis order: phi phi, phi pi, pi phi, pi pi.
    o.a1 = Eigen::VectorXcd::Zero(4);
    o.a1(1) = o.a1(2) = 1;
    o.a2 = Eigen::VectorXcd::Zero(4);
    o.a2(0) = -v_sq * v_sq;
    o.a2(3) = u_sq * u_sq * w * w;
    o.a4 = Eigen::VectorXcd::Zero(4);
    o.a4(0) = w * w;
    o.a4(3) = 1;
    return o;
}

double fidelity(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

}  // namespace

TEST(spectral_rg, single_mode) {
    ChannelParams c = channel(0.8, 3.0, 0.5);
    for (double kx : {-1.3, 0.0, 0.4, 2.0}) {
        Momentum k{kx};
        SpectrumResult r = sector_spectrum({k}, kZeroT, c);
        double u_sq, v_sq;
        uncertainty_squares(kx * kx, kZeroT, c, u_sq, v_sq);
        double w = omega(k, kZeroT), e = std::exp(-kx * kx * 0.64);
        double phi = e / (u_sq * w * w), pi = e / v_sq;
        ASSERT_EQ(r.eigenvalues.size(), 2u);
        EXPECT_NEAR(r.eigenvalues[0], std::max(phi, pi), 1e-14 * std::max(phi, pi));
        EXPECT_NEAR(r.eigenvalues[1], std::min(phi, pi), 1e-14 * std::max(phi, pi));
        Eigen::VectorXcd phi_dir = Eigen::VectorXcd::Unit(2, 0);
        EXPECT_NEAR(fidelity(r.eigenvectors[phi > pi ? 0 : 1], phi_dir), 1, 1e-14);
        EXPECT_TRUE(r.beta_scaled);
    }
}

TEST(spectral_rg, pair_sector_closed_forms) {
    for (double kx : {0.2, 0.5, 1.5}) {
        for (auto c : {channel(1.0, 10, 10), channel(0.3, 4, 90), channel(2.0, 50, 3)}) {
            PairOracle o = pair_oracle(kx, c);
            SpectrumResult r = sector_spectrum({Momentum{kx}, Momentum{-kx}}, kZeroT, c);
            ASSERT_EQ(r.eigenvalues.size(), 4u);
            // Which one leads depends on v^2 / (omega^2 u^2); eta2 / eta1 is an arithmetic over geometric mean.
            EXPECT_GE(o.eta2, o.eta1 * (1 - 1e-14));
            EXPECT_NEAR(r.eigenvalues[0], o.eta2, 1e-12 * o.eta2);
            EXPECT_NEAR(r.eigenvalues[1], o.eta1, 1e-12 * o.eta1);
            EXPECT_NEAR(fidelity(r.eigenvectors[0], o.a2), 1, 1e-10);
            EXPECT_NEAR(fidelity(r.eigenvectors[1], o.a1), 1, 1e-10);
            EXPECT_NEAR(r.eigenvalues[2], 0, 1e-12 * o.eta1);
            EXPECT_NEAR(r.eigenvalues[3], 0, 1e-12 * o.eta1);
            // A4 lies in the null space of the zero temperature block.
            double null_weight = fidelity(r.eigenvectors[2], o.a4) + fidelity(r.eigenvectors[3], o.a4);
            EXPECT_NEAR(null_weight, 1, 1e-8);
        }
    }
}

TEST(spectral_rg, pair_sector_at_finite_beta) {
    ChannelParams c = channel(1.0, 10, 10);
    PairOracle o = pair_oracle(0.5, c);
    for (double beta : {20.0, 40.0, 80.0}) {
        ModelParams p{1.0, InverseTemperature::finite(beta), 1};
        SpectrumResult r = sector_spectrum({Momentum{0.5}, Momentum{-0.5}}, p, c);
        EXPECT_NEAR(r.eigenvalues[1], o.eta1, o.eta1 / beta);
        EXPECT_NEAR(r.eigenvalues[0], o.eta2, o.eta2 / beta);
        EXPECT_LT(r.eigenvalues[2], o.eta1 / beta);
        EXPECT_GE(r.eigenvalues[3], -1e-12 * o.eta1);
    }
}

TEST(spectral_rg, eigenpairs_have_small_residuals) {
    ChannelParams c = channel(0.6, 5, 7);
    std::vector<Momentum> modes{Momentum{0.3}, Momentum{-1.1}, Momentum{0.8}};
    for (auto beta : {InverseTemperature::infinite(), InverseTemperature::finite(3.0)}) {
        ModelParams p{0.7, beta, 1};
        SpectrumResult r = sector_spectrum(modes, p, c);
        SectorBlock er = er_rho_block(modes, p, c);
        ASSERT_EQ(r.eigenvalues.size(), 8u);
        for (size_t i = 0; i < r.eigenvalues.size(); i++) {
            const Eigen::VectorXcd &v = r.eigenvectors[i];
            EXPECT_NEAR(v.norm(), 1, 1e-12);
            // Both carry the same single power of beta.
            Eigen::VectorXcd res = er.matrix * v - r.eigenvalues[i] * v;
            EXPECT_LE(res.norm(), 1e-9 * std::max(1.0, r.eigenvalues[0])) << i;
            EXPECT_GE(r.eigenvalues[i], -1e-12);
            if (i > 0) {
                EXPECT_LE(r.eigenvalues[i], r.eigenvalues[i - 1]);
            }
        }
    }
}

TEST(spectral_rg, eigenvalues_bounded_by_one) {
    ChannelParams c = channel(0.2, 0.6, 0.6);
    for (double beta : {0.5, 2.0, 10.0}) {
        ModelParams p{1.0, InverseTemperature::finite(beta), 1};
        SpectrumResult r = sector_spectrum({Momentum{0.4}, Momentum{-0.9}}, p, c);
        EXPECT_LE(r.eigenvalues[0] / beta, 1 + 1e-9);
    }
}

TEST(spectral_rg, report_cutoffs) {
    ChannelParams c = channel(1.0, 10, 10);
    std::vector<Momentum> modes{Momentum{0.5}, Momentum{-0.5}};
    EXPECT_EQ(relevance_report(modes, kZeroT, c, 0).size(), 4u);
    double beta = 40;
    ModelParams p{1.0, InverseTemperature::finite(beta), 1};
    PairOracle o = pair_oracle(0.5, c);
    // Raw eigenvalues are the scaled ones over beta; cut halfway down the 1/beta scale.
    auto kept = relevance_report(modes, p, c, 0.5 * o.eta1);
    ASSERT_EQ(kept.size(), 2u);
    EXPECT_NE(kept[1].observable.find("phi(-0.5)*pi(0.5)"), std::string::npos);
    EXPECT_NE(kept[1].observable.find("pi(-0.5)*phi(0.5)"), std::string::npos);
    EXPECT_NE(kept[0].observable.find("phi(-0.5)*phi(0.5)"), std::string::npos);
    EXPECT_NE(kept[0].observable.find("pi(-0.5)*pi(0.5)"), std::string::npos);
}

TEST(spectral_rg, report_stable_under_mode_permutation) {
    ChannelParams c = channel(0.7, 6, 8);
    std::vector<Momentum> a{Momentum{0.3}, Momentum{-1.1}, Momentum{0.8}};
    std::vector<Momentum> b{Momentum{0.8}, Momentum{0.3}, Momentum{-1.1}};
    auto ra = relevance_report(a, kZeroT, c, 0);
    auto rb = relevance_report(b, kZeroT, c, 0);
    ASSERT_EQ(ra.size(), rb.size());
    for (size_t i = 0; i < ra.size(); i++) {
        EXPECT_NEAR(ra[i].eigenvalue, rb[i].eigenvalue, 1e-13 * ra[0].eigenvalue);
        if (ra[i].eigenvalue > 1e-9 * ra[0].eigenvalue) {
            EXPECT_EQ(ra[i].observable, rb[i].observable);
        }
    }
}

TEST(spectral_rg, format_observable_text) {
    std::vector<Momentum> modes{Momentum{0.5}, Momentum{-0.5}};
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(1) = -2;  // phi(0.5) pi(-0.5)
    v(2) = Complex(0, 1);  // pi(0.5) phi(-0.5)
    // Phase fixed so the largest term is positive; modes listed in ascending order.
    EXPECT_EQ(format_observable(modes, v), "(0-1i)*phi(-0.5)*pi(0.5) + 2*pi(-0.5)*phi(0.5)");
    Eigen::VectorXcd single = Eigen::VectorXcd::Zero(2);
    single(1) = -0.25;
    EXPECT_EQ(format_observable({Momentum{1.0, 2.0}}, single), "0.25*pi(1,2)");
}

TEST(spectral_rg, rejects_bad_sectors) {
    ChannelParams c = channel(1.0, 10, 10);
    EXPECT_THROW(sector_spectrum({}, kZeroT, c), std::invalid_argument);
    EXPECT_THROW(sector_spectrum({Momentum{0.5}, Momentum{0.5}}, kZeroT, c), std::invalid_argument);
}
