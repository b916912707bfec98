// Copyright 2026 The gausscount Authors
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

#include "gausscount/fock_oracle.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "gausscount/counting.hpp"
#include "gausscount/error.hpp"

using namespace gausscount;
using namespace gausscount::fock;

namespace {

double mean_occupation(const FockState &s) {
    const std::vector<double> p = number_distribution(s);
    double acc = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        acc += static_cast<double>(k) * p[k];
    }
    return acc;
}

double state_distance(const GaussianState &a, const GaussianState &b) {
    return std::max({(a.l() - b.l()).cwiseAbs().maxCoeff(), (a.m() - b.m()).cwiseAbs().maxCoeff(),
                     max_abs(a.covariance() - b.covariance())});
}

GateScript one_mode(std::vector<Gate> gates, std::vector<double> t = {}) {
    GateScript s;
    s.modes = 1;
    s.dim = 64;
    s.thermal_t = std::move(t);
    s.gates = std::move(gates);
    return s;
}

GateScript two_mode(std::vector<Gate> gates, std::vector<double> t = {}) {
    GateScript s;
    s.modes = 2;
    s.dim = 32;
    s.thermal_t = std::move(t);
    s.gates = std::move(gates);
    return s;
}

}  // namespace

TEST(fock_oracle, ladder) {
    const CMatrix a = CMatrix(ladder(3).entries);
    CMatrix expected = CMatrix::Zero(3, 3);
    expected(0, 1) = 1.0;
    expected(1, 2) = std::sqrt(2.0);
    EXPECT_LT((a - expected).cwiseAbs().maxCoeff(), 1e-15);

    const CMatrix big = CMatrix(ladder(10).entries);
    const CMatrix number = big.adjoint() * big;
    for (Eigen::Index k = 0; k < 10; ++k) {
        EXPECT_NEAR(number(k, k).real(), static_cast<double>(k), 1e-14);
    }
    const CMatrix comm = big * big.adjoint() - big.adjoint() * big;
    for (Eigen::Index k = 0; k < 9; ++k) {
        EXPECT_NEAR(comm(k, k).real(), 1.0, 1e-10);
    }
    EXPECT_NEAR(comm(9, 9).real(), -9.0, 1e-10);
    EXPECT_THROW(ladder(1), Error);
}

TEST(fock_oracle, weyl) {
    EXPECT_LT((CMatrix(weyl(0.0, 16).entries) - CMatrix::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-14);

    const FockState coh = apply(weyl(1.0, 64), vacuum_state(1, 64));
    EXPECT_NEAR(mean_occupation(coh), 1.0, 1e-8);
    const std::vector<double> p = number_distribution(coh);
    double fact = 1.0;
    for (int k = 0; k < 20; ++k) {
        if (k > 0) {
            fact *= k;
        }
        EXPECT_NEAR(p[static_cast<std::size_t>(k)], std::exp(-1.0) / fact, 1e-8);
    }

    const Complex u(0.8, -0.6);
    const CMatrix round = CMatrix(weyl(u, 64).entries) * CMatrix(weyl(-u, 64).entries);
    const Eigen::Index safe = static_cast<Eigen::Index>(edge_start(64));
    EXPECT_LT((round - CMatrix::Identity(64, 64)).topLeftCorner(safe / 2, safe / 2).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT(unitarity_defect(weyl(u, 64)), 1e-8);

    try {
        weyl(Complex(2.0, 2.0), 64);
        FAIL() << "expected a truncation error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::TruncationRisk);
    }
}

TEST(fock_oracle, squeeze_rotate_beamsplitter) {
    EXPECT_LT((CMatrix(squeeze(0.0, 16).entries) - CMatrix::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((CMatrix(rotate(0.0, 16).entries) - CMatrix::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((CMatrix(beamsplitter(0.0, 0.3, 8).entries) - CMatrix::Identity(64, 64)).cwiseAbs().maxCoeff(), 1e-15);

    for (double r : {0.3, 0.7, 1.0}) {
        const FockState sq = apply(squeeze(r, 128), vacuum_state(1, 128));
        EXPECT_NEAR(mean_occupation(sq), std::sinh(r) * std::sinh(r), 1e-6);
        Matrix s(2, 2);
        s << 0.5 * std::exp(-2 * r), 0.0, 0.0, 0.5 * std::exp(2 * r);
        EXPECT_NEAR(mean_N(GaussianState(Vector::Zero(1), Vector::Zero(1), s)), std::sinh(r) * std::sinh(r), 1e-12);
    }

    const FockOperator bs = beamsplitter(0.7, 0.4, 16);
    EXPECT_LT(unitarity_defect(bs), 1e-8);
    // [U, N] = 0
    SparseCMatrix number(256, 256);
    for (int k1 = 0; k1 < 16; ++k1) {
        for (int k2 = 0; k2 < 16; ++k2) {
            number.insert(k1 * 16 + k2, k1 * 16 + k2) = static_cast<double>(k1 + k2);
        }
    }
    const CMatrix comm = CMatrix(bs.entries * number - number * bs.entries);
    EXPECT_LT(comm.cwiseAbs().maxCoeff(), 1e-8);

    EXPECT_LT(unitarity_defect(squeeze(std::polar(0.6, 1.1), 64)), 1e-8);
    EXPECT_LT(unitarity_defect(on_mode(rotate(0.4, 16), 1)), 1e-12);
    EXPECT_THROW(squeeze(3.0, 64), Error);
}

TEST(fock_oracle, thermal_fock) {
    for (double t : {0.5, 1.0, 2.0}) {
        const FockState th = thermal_fock(t, 128);
        EXPECT_NEAR(th.rho.trace().real(), 1.0, 1e-12);
        EXPECT_NEAR(mean_occupation(th), 1.0 / std::expm1(t), 1e-6);
        const double purity = (th.rho * th.rho).trace().real();
        EXPECT_NEAR(purity, (1 - std::exp(-t)) / (1 + std::exp(-t)), 1e-6);
        const std::vector<double> p = number_distribution(th);
        const double a = std::exp(-t);
        for (int k = 0; k < 10; ++k) {
            EXPECT_NEAR(p[static_cast<std::size_t>(k)], (1 - a) * std::pow(a, k), 1e-10);
        }
    }
    const FockState cold = thermal_fock(INFINITY, 8);
    EXPECT_NEAR(cold.rho(0, 0).real(), 1.0, 1e-15);
    EXPECT_THROW(thermal_fock(0.0, 8), Error);
}

TEST(fock_oracle, number_distribution_and_pgf) {
    const std::vector<double> vac = number_distribution(vacuum_state(2, 8));
    EXPECT_EQ(vac.size(), 15u);
    EXPECT_DOUBLE_EQ(vac[0], 1.0);
    const FockState coh = apply(weyl(0.9, 64), vacuum_state(1, 64));
    EXPECT_NEAR(pgf_oracle(coh, 1.0), 1.0, 1e-6);
    EXPECT_NEAR(pgf_oracle(coh, 0.0), number_distribution(coh)[0], 1e-15);
    for (double p : number_distribution(coh)) {
        EXPECT_GE(p, -1e-10);
    }
    // Mass near the cutoff is rejected.
    const FockState hot = thermal_fock(0.05, 16);
    EXPECT_THROW(number_distribution(hot), Error);
}

TEST(fock_oracle, heisenberg_map_of_identity) {
    const SymplecticMatrix l = heisenberg_to_symplectic(CMatrix::Identity(2, 2), CMatrix::Zero(2, 2));
    EXPECT_LT(max_abs(l.matrix() - Matrix::Identity(4, 4)), 1e-15);
}

// Each Fock gate must move quadrature moments exactly as the analytic gate does.
TEST(fock_oracle, calibration_contract_one_mode) {
    const std::vector<Gate> gates = {
        DisplaceGate{0, Complex(0.4, -0.7)},
        SqueezeGate{0, 0.5, 0.0},
        SqueezeGate{0, 0.4, 1.3},
        RotateGate{0, 0.9},
    };
    const GaussianState start_analytic = run_analytic(one_mode({DisplaceGate{0, Complex(0.3, 0.2)}}, {1.5}));
    for (const Gate &g : gates) {
        const GateScript script = one_mode({DisplaceGate{0, Complex(0.3, 0.2)}, g}, {1.5});
        const GaussianState analytic = run_analytic(script);
        const GaussianState moments = quadrature_moments(run_fock(script));
        EXPECT_LT(state_distance(analytic, moments), 1e-8) << script.gates.size();
        EXPECT_GT(state_distance(analytic, start_analytic), 1e-3);
    }
}

TEST(fock_oracle, calibration_contract_two_mode) {
    const std::vector<Gate> prep = {SqueezeGate{0, 0.3, 0.2}, DisplaceGate{1, Complex(-0.5, 0.4)}};
    const std::vector<Gate> gates = {
        BeamsplitterGate{0, 1, 0.6, 0.0},
        BeamsplitterGate{0, 1, 0.4, 0.9},
        BeamsplitterGate{1, 0, 0.5, -0.7},
        SqueezeGate{1, 0.3, -0.4},
        RotateGate{1, 2.1},
    };
    for (const Gate &g : gates) {
        std::vector<Gate> seq = prep;
        seq.push_back(g);
        const GateScript script = two_mode(seq, {2.0, 2.5});
        EXPECT_LT(state_distance(run_analytic(script), quadrature_moments(run_fock(script))), 1e-8);
    }
}

TEST(fock_oracle, compare_scripts) {
    const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    const OracleComparison one =
        compare_script(one_mode({SqueezeGate{0, 0.6, 0.3}, DisplaceGate{0, Complex(0.7, 0.5)}}), grid);
    EXPECT_TRUE(one.pass);
    EXPECT_LT(one.pmf_max_diff, 1e-6);
    EXPECT_LT(one.mean_diff, 1e-6);
    EXPECT_LT(one.var_diff, 1e-6);

    const OracleComparison two = compare_script(
        two_mode({SqueezeGate{0, 0.35, 0.0}, BeamsplitterGate{0, 1, 0.7, 0.2}, DisplaceGate{1, Complex(0.3, -0.6)}}),
        grid);
    EXPECT_TRUE(two.pass);
    EXPECT_LT(two.pmf_max_diff, 1e-6);

    try {
        compare_script(one_mode({DisplaceGate{0, Complex(2.6, 0.0)}}), grid);
        FAIL() << "expected a truncation error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::TruncationRisk);
    }
}

TEST(fock_oracle, script_validation) {
    EXPECT_THROW(run_analytic(one_mode({BeamsplitterGate{0, 1, 0.1, 0.0}})), Error);
    EXPECT_THROW(run_analytic(one_mode({DisplaceGate{1, 0.1}})), Error);
    EXPECT_THROW(run_analytic(two_mode({BeamsplitterGate{1, 1, 0.1, 0.0}})), Error);
    EXPECT_THROW(run_analytic(two_mode({}, {1.0})), Error);
    GateScript three;
    three.modes = 3;
    EXPECT_THROW(three.validate(), Error);
}
