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

#include "gausscount/channel.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "gausscount/error.hpp"
#include "random_models.hpp"

using namespace gausscount;

namespace {

double state_distance(const GaussianState &a, const GaussianState &b) {
    return std::max({(a.l() - b.l()).cwiseAbs().maxCoeff(), (a.m() - b.m()).cwiseAbs().maxCoeff(),
                     max_abs(a.covariance() - b.covariance())});
}

}  // namespace

TEST(channel, validate_channel) {
    EXPECT_TRUE(validate_channel(Matrix::Identity(2, 2), Matrix::Zero(2, 2)));
    EXPECT_FALSE(validate_channel(std::sqrt(2.0) * Matrix::Identity(2, 2), Matrix::Zero(2, 2)));
    EXPECT_TRUE(validate_channel(std::sqrt(2.0) * Matrix::Identity(2, 2), 2.0 * Matrix::Identity(2, 2)));
    EXPECT_NEAR(channel_constraint_margin(std::sqrt(2.0) * Matrix::Identity(2, 2), 2.0 * Matrix::Identity(2, 2)), 1.0,
                1e-12);
    Matrix asym = Matrix::Identity(2, 2);
    asym(0, 1) = 0.1;
    EXPECT_FALSE(validate_channel(Matrix::Identity(2, 2), asym));
    EXPECT_FALSE(validate_channel(Matrix::Identity(2, 2), -0.1 * Matrix::Identity(2, 2)));
    EXPECT_THROW(validate_channel(Matrix::Identity(2, 2), Matrix::Zero(4, 4)), Error);
    try {
        GaussianChannel(std::sqrt(2.0) * Matrix::Identity(2, 2), Matrix::Zero(2, 2));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidChannel);
        EXPECT_NE(std::string(e.what()).find("eigenvalue"), std::string::npos);
    }
}

TEST(channel, apply_examples) {
    models::Rng rng(1);
    const GaussianState rho = models::random_state(rng, 2);
    EXPECT_LT(state_distance(apply(GaussianChannel::identity(2), rho), rho), 1e-15);

    const GaussianChannel reset(Matrix::Zero(4, 4), Matrix::Identity(4, 4));
    EXPECT_LT(state_distance(apply(reset, rho), GaussianState::vacuum(2)), 1e-15);

    const double eta = 0.5;
    const GaussianChannel attenuator(std::sqrt(eta) * Matrix::Identity(2, 2), (1 - eta) * Matrix::Identity(2, 2));
    Vector x(1), y(1);
    x << 0.7;
    y << -0.3;
    const GaussianState coh = GaussianState::coherent(Displacement(x, y));
    const GaussianState out = apply(attenuator, coh);
    EXPECT_NEAR(out.l()(0), std::sqrt(eta) * coh.l()(0), 1e-15);
    EXPECT_NEAR(out.m()(0), std::sqrt(eta) * coh.m()(0), 1e-15);
    EXPECT_LT(max_abs(out.covariance() - 0.5 * Matrix::Identity(2, 2)), 1e-15);

    EXPECT_THROW(apply(GaussianChannel::identity(1), rho), Error);
}

TEST(channel, apply_preserves_validity) {
    models::Rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
        const GaussianChannel k = models::random_channel(rng, n);
        const GaussianState out = apply(k, models::random_state(rng, n));
        EXPECT_GE(out.uncertainty_margin(), -1e-9);
    }
}

TEST(channel, composition) {
    models::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 2);
        const GaussianChannel k1 = models::random_channel(rng, n);
        const GaussianChannel k2 = models::random_channel(rng, n);
        const GaussianState rho = models::random_state(rng, n);
        EXPECT_LT(state_distance(apply(k2, apply(k1, rho)), apply(compose(k1, k2), rho)), 1e-10);
        EXPECT_TRUE(validate_channel(compose(k1, k2).a(), compose(k1, k2).b()));
    }
}

TEST(channel, probe_states) {
    const std::vector<GaussianState> p1 = probe_states(1);
    ASSERT_EQ(p1.size(), 2u);
    EXPECT_NEAR(p1[0].l()(0), 1.0, 1e-15);
    EXPECT_NEAR(p1[0].m()(0), 0.0, 1e-15);
    EXPECT_NEAR(p1[1].l()(0), 0.0, 1e-15);
    EXPECT_NEAR(p1[1].m()(0), 1.0, 1e-15);

    models::Rng rng(4);
    const GaussianChannel k = models::random_channel(rng, 2);
    const std::vector<GaussianState> probes = probe_states(2);
    for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_LT(state_distance(apply(GaussianChannel::identity(2), probes[j]), probes[j]), 1e-15);
        const Vector out = apply(k, probes[j]).mean_vector();
        const double sign = j < 2 ? 1.0 : -1.0;
        EXPECT_LT((sign * out - k.a().row(static_cast<Eigen::Index>(j)).transpose()).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(channel, measurement_counts) {
    const std::size_t expected[] = {8, 29, 62, 107};
    for (std::size_t n = 1; n <= 4; ++n) {
        EXPECT_EQ(channel_measurement_count(n), expected[n - 1]);
        std::size_t total = 0;
        for (const MeasurementPlan &p : channel_plans(n)) {
            total += p.items.size();
        }
        EXPECT_EQ(total, expected[n - 1]);
    }
}

TEST(channel, identity_round_trip) {
    const ChannelEstimate est = reconstruct_channel(GaussianChannel::identity(1), Backend::exact());
    EXPECT_EQ(est.measurement_count, 8u);
    EXPECT_LT(max_abs(est.a_hat - Matrix::Identity(2, 2)), 1e-8);
    EXPECT_LT(max_abs(est.b_hat), 1e-8);
}

TEST(channel, random_round_trip) {
    models::Rng rng(5);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const GaussianChannel k = models::random_channel(rng, n);
            const ChannelEstimate est = reconstruct_channel(k, Backend::exact());
            EXPECT_EQ(est.measurement_count, channel_measurement_count(n));
            EXPECT_LT(max_abs(est.a_hat - k.a()), 1e-8);
            EXPECT_LT(max_abs(est.b_hat - k.b()), 1e-8);
            EXPECT_LT(est.b_asymmetry, 1e-8);
            EXPECT_TRUE(est.valid);
            for (double r : est.per_row_residuals) {
                EXPECT_LT(r, 1e-8);
            }
        }
    }
}

TEST(channel, missing_probe_records) {
    auto records = measure_channel(GaussianChannel::identity(2), Backend::exact());
    records.pop_back();
    EXPECT_THROW(reconstruct_channel(records, 2), Error);
    records = measure_channel(GaussianChannel::identity(2), Backend::exact());
    records[2].pop_back();
    try {
        reconstruct_channel(records, 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingRecords);
    }
}

TEST(channel, noisy_probes_use_distinct_seeds) {
    const auto records = measure_channel(GaussianChannel::identity(1), Backend::noisy(1000, 7));
    EXPECT_NE(records[0][0].value, records[1][0].value);
    const auto again = measure_channel(GaussianChannel::identity(1), Backend::noisy(1000, 7));
    EXPECT_EQ(records[1][2].value, again[1][2].value);
}
