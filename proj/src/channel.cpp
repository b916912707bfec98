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

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "gausscount/counting.hpp"
#include "gausscount/error.hpp"
#include "gausscount/linalg.hpp"
#include "gausscount/symplectic.hpp"

namespace gausscount {

namespace {

void check_shapes(const Matrix &a, const Matrix &b) {
    if (a.rows() != a.cols() || a.rows() % 2 != 0 || a.rows() == 0) {
        throw Error(ErrorCode::InvalidDimension,
                    fmt::format("A must be 2n x 2n, got {} x {}", a.rows(), a.cols()));
    }
    if (b.rows() != a.rows() || b.cols() != a.cols()) {
        throw Error(ErrorCode::InvalidDimension,
                    fmt::format("B must be {} x {}, got {} x {}", a.rows(), a.cols(), b.rows(), b.cols()));
    }
}

}  // namespace

double channel_constraint_margin(const Matrix &a, const Matrix &b) {
    check_shapes(a, b);
    const Matrix j = make_form(static_cast<std::size_t>(a.rows() / 2));
    return min_hermitian_eigenvalue(symmetrize(b), a.transpose() * j * a - j);
}

bool validate_channel(const Matrix &a, const Matrix &b) {
    check_shapes(a, b);
    if (max_abs(b - b.transpose()) > 1e-12) {
        return false;
    }
    return min_symmetric_eigenvalue(symmetrize(b)) >= -kChannelTol &&
           channel_constraint_margin(a, b) >= -kChannelTol;
}

GaussianChannel::GaussianChannel(Matrix a, Matrix b, Unchecked) : a_(std::move(a)), b_(std::move(b)) {
}

GaussianChannel::GaussianChannel(Matrix a, Matrix b) : GaussianChannel(std::move(a), std::move(b), Unchecked{}) {
    check_shapes(a_, b_);
    if (!a_.allFinite() || !b_.allFinite()) {
        throw Error(ErrorCode::InvalidChannel, "channel matrices must be finite");
    }
    const double asym = max_abs(b_ - b_.transpose());
    if (asym > 1e-12) {
        throw Error(ErrorCode::InvalidChannel, fmt::format("B is not symmetric (max |B - B^T| = {:.3e})", asym));
    }
    b_ = symmetrize(b_);
    const double b_min = min_symmetric_eigenvalue(b_);
    if (b_min < -kChannelTol) {
        throw Error(ErrorCode::InvalidChannel, fmt::format("B is not positive semidefinite (min eigenvalue {:.6e})", b_min));
    }
    const double margin = channel_constraint_margin(a_, b_);
    if (margin < -kChannelTol) {
        throw Error(ErrorCode::InvalidChannel,
                    fmt::format("B + i(A^T J A - J) has eigenvalue {:.6e} < 0", margin));
    }
}

GaussianChannel GaussianChannel::unvalidated(Matrix a, Matrix b) {
    check_shapes(a, b);
    return GaussianChannel(std::move(a), symmetrize(b), Unchecked{});
}

GaussianChannel GaussianChannel::identity(std::size_t n) {
    const auto d = static_cast<Eigen::Index>(2 * n);
    return GaussianChannel(Matrix::Identity(d, d), Matrix::Zero(d, d));
}

GaussianState apply(const GaussianChannel &channel, const GaussianState &rho) {
    if (channel.modes() != rho.modes()) {
        throw Error(ErrorCode::InvalidDimension,
                    fmt::format("channel has {} modes, state has {}", channel.modes(), rho.modes()));
    }
    const Matrix &a = channel.a();
    const Vector v = a.transpose() * rho.mean_vector();
    const auto n = static_cast<Eigen::Index>(rho.modes());
    return GaussianState::unvalidated(v.head(n), -v.tail(n),
                                      a.transpose() * rho.covariance() * a + 0.5 * channel.b());
}

GaussianChannel compose(const GaussianChannel &first, const GaussianChannel &second) {
    if (first.modes() != second.modes()) {
        throw Error(ErrorCode::InvalidDimension, "composed channels must act on the same number of modes");
    }
    return GaussianChannel::unvalidated(first.a() * second.a(),
                                        second.a().transpose() * first.b() * second.a() + second.b());
}

std::vector<GaussianState> probe_states(std::size_t n) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidDimension, "probes need at least one mode");
    }
    std::vector<GaussianState> out;
    out.reserve(2 * n);
    const double h = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < n; ++j) {
        Displacement u = Displacement::zero(n);
        u.y(static_cast<Eigen::Index>(j)) = h;
        out.push_back(GaussianState::coherent(u));
    }
    for (std::size_t j = 0; j < n; ++j) {
        Displacement u = Displacement::zero(n);
        u.x(static_cast<Eigen::Index>(j)) = h;
        out.push_back(GaussianState::coherent(u));
    }
    return out;
}

std::size_t channel_measurement_count(std::size_t n) {
    return 6 * n * n + 3 * n - 1;
}

std::vector<MeasurementPlan> channel_plans(std::size_t n) {
    std::vector<MeasurementPlan> plans{plan_state_tomography(n)};
    for (std::size_t k = 1; k < 2 * n; ++k) {
        plans.push_back(plan_means_only(n));
    }
    return plans;
}

std::uint64_t probe_seed(std::uint64_t seed, std::size_t probe) {
    return seed + static_cast<std::uint64_t>(probe) * 0x9E3779B97F4A7C15ULL;
}

ChannelEstimate reconstruct_channel(const std::vector<std::vector<MeasurementRecord>> &probe_records,
                                    std::size_t n) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidDimension, "channel reconstruction needs at least one mode");
    }
    if (probe_records.size() != 2 * n) {
        throw Error(ErrorCode::MissingRecords,
                    fmt::format("expected records for {} probes, got {}", 2 * n, probe_records.size()));
    }
    const auto nn = static_cast<Eigen::Index>(n);
    ChannelEstimate out;
    out.a_hat = Matrix::Zero(2 * nn, 2 * nn);

    const ReconstructionResult first = reconstruct_state(probe_records[0], n);
    out.a_hat.row(0) = first.state.mean_vector().transpose();
    for (std::size_t k = 1; k < 2 * n; ++k) {
        for (const MeasurementRecord &r : probe_records[k]) {
            r.descriptor.validate(n);
        }
        const RecordIndex index(probe_records[k]);
        const MeanSolution means = solve_means(index, n);
        const Vector v = GaussianState::unvalidated(means.l, means.m, Matrix::Identity(2 * nn, 2 * nn)).mean_vector();
        // Probe k < n has v = (e_k; 0); probe n + j has v = (0; -e_j).
        const double sign = k < n ? 1.0 : -1.0;
        out.a_hat.row(static_cast<Eigen::Index>(k)) = sign * v.transpose();
    }
    const Matrix raw_b = 2.0 * first.state.covariance() - out.a_hat.transpose() * out.a_hat;
    out.b_asymmetry = max_abs(raw_b - raw_b.transpose());
    out.b_hat = symmetrize(raw_b);

    out.measurement_count = 0;
    for (const auto &records : probe_records) {
        out.measurement_count += records.size();
    }
    out.constraint_margin = channel_constraint_margin(out.a_hat, out.b_hat);
    out.valid = out.constraint_margin >= -1e-6 && min_symmetric_eigenvalue(out.b_hat) >= -1e-6;

    const GaussianChannel estimate = GaussianChannel::unvalidated(out.a_hat, out.b_hat);
    const std::vector<GaussianState> probes = probe_states(n);
    for (std::size_t k = 0; k < 2 * n; ++k) {
        const std::vector<double> predicted = predict(apply(estimate, probes[k]), probe_records[k]);
        double worst = 0.0;
        for (std::size_t r = 0; r < predicted.size(); ++r) {
            worst = std::max(worst, std::abs(probe_records[k][r].value - predicted[r]));
        }
        out.per_row_residuals.push_back(worst);
    }
    return out;
}

std::vector<std::vector<MeasurementRecord>> measure_channel(const GaussianChannel &channel, const Backend &backend) {
    const std::size_t n = channel.modes();
    const std::vector<GaussianState> probes = probe_states(n);
    const std::vector<MeasurementPlan> plans = channel_plans(n);
    std::vector<std::vector<MeasurementRecord>> out;
    out.reserve(probes.size());
    for (std::size_t k = 0; k < probes.size(); ++k) {
        Backend b = backend;
        b.seed = probe_seed(backend.seed, k);
        out.push_back(measure(apply(channel, probes[k]), plans[k], b));
    }
    return out;
}

ChannelEstimate reconstruct_channel(const GaussianChannel &black_box, const Backend &backend) {
    return reconstruct_channel(measure_channel(black_box, backend), black_box.modes());
}

}  // namespace gausscount
