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

#include "gausscount/tomography.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "gausscount/counting.hpp"
#include "gausscount/error.hpp"

namespace gausscount {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kParamTol = 1e-12;

// Coefficients of (sigma_pp, sigma_qq, sigma_pq) in Tr S_jj (G - I) for the
// single-mode gates, G = L^T L.
constexpr std::array<double, 3> kDiagSqrt2 = {1.0, -0.5, 0.0};
constexpr std::array<double, 3> kDiagSqrt3 = {2.0, -2.0 / 3.0, 0.0};
constexpr std::array<double, 3> kDiagSqrt2Pi4 = {0.25, 0.25, 1.5};

// Coefficients of (S[p_i,p_j], S[q_i,q_j], S[p_i,q_j], S[q_i,p_j]) in Tr(S_ij B),
// B the (mode j, mode i) block of L^T L.
constexpr std::array<double, 4> kOffH12 = {1.5, -0.375, 0.0, 0.0};
constexpr std::array<double, 4> kOffH13 = {4.0, -4.0 / 9.0, 0.0, 0.0};
constexpr std::array<double, 4> kOffK12 = {0.0, 0.0, -1.5, -0.375};
constexpr std::array<double, 4> kOffK13 = {0.0, 0.0, -4.0, -4.0 / 9.0};

bool near(double a, double b) {
    return std::abs(a - b) <= kParamTol;
}

std::string fmt_param(double v) {
    return fmt::format("{:.12g}", v);
}

Matrix gram(const SymplecticMatrix &l) {
    return l.matrix().transpose() * l.matrix();
}

void check_protocol_coefficients() {
    static const double deviation = protocol_coefficient_deviation();
    if (deviation > 1e-12) {
        throw Error(ErrorCode::Numerical,
                    fmt::format("solver coefficient tables disagree with the gate matrices by {:.3e}", deviation));
    }
}

}  // namespace

double displaced_expectation(const GaussianState &rho, const Displacement &u) {
    return mean_N(displace(rho, u));
}

double displaced_expectation_closed_form(const GaussianState &rho, const Displacement &u) {
    return mean_N(rho) + u.x.squaredNorm() + u.y.squaredNorm() + kSqrt2 * (u.y.dot(rho.l()) + u.x.dot(rho.m()));
}

double conjugated_expectation(const GaussianState &rho, const SymplecticMatrix &l) {
    return mean_N(conjugate(rho, l));
}

double conjugated_expectation_closed_form(const GaussianState &rho, const SymplecticMatrix &l) {
    const Matrix inv = l.inverse().matrix();
    const Matrix d = inv * inv.transpose() - Matrix::Identity(inv.rows(), inv.cols());
    const Vector v = rho.mean_vector();
    return mean_N(rho) + 0.5 * ((rho.covariance() * d).trace() + v.dot(d * v));
}

const char *gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::Identity:
            return "identity";
        case GateKind::Gp:
            return "Gp";
        case GateKind::Gq:
            return "Gq";
        case GateKind::Gsp1:
            return "Gsp1";
        case GateKind::Gsp2:
            return "Gsp2";
    }
    return "?";
}

GateDescriptor GateDescriptor::identity() {
    return {};
}

GateDescriptor GateDescriptor::gp(std::size_t j) {
    GateDescriptor d;
    d.kind = GateKind::Gp;
    d.modes = {j};
    return d;
}

GateDescriptor GateDescriptor::gq(std::size_t j) {
    GateDescriptor d;
    d.kind = GateKind::Gq;
    d.modes = {j};
    return d;
}

GateDescriptor GateDescriptor::gsp1(std::size_t j, double x, double alpha) {
    GateDescriptor d;
    d.kind = GateKind::Gsp1;
    d.modes = {j};
    d.x = x;
    d.alpha = alpha;
    return d;
}

GateDescriptor GateDescriptor::gsp2(std::size_t i, std::size_t j, UnitaryLabel u, double x1, double x2) {
    GateDescriptor d;
    d.kind = GateKind::Gsp2;
    d.modes = {i, j};
    d.unitary = u;
    d.x1 = x1;
    d.x2 = x2;
    return d;
}

std::string GateDescriptor::key() const {
    switch (kind) {
        case GateKind::Identity:
            return "identity";
        case GateKind::Gp:
        case GateKind::Gq:
            return fmt::format("{}({})", gate_kind_name(kind), fmt::join(modes, ","));
        case GateKind::Gsp1:
            return fmt::format("Gsp1({};{},{})", fmt::join(modes, ","), fmt_param(x), fmt_param(alpha));
        case GateKind::Gsp2:
            return fmt::format("Gsp2({};{},{},{})", fmt::join(modes, ","), unitary == UnitaryLabel::H ? "H" : "K",
                               fmt_param(x1), fmt_param(x2));
    }
    return "?";
}

void GateDescriptor::validate(std::size_t n) const {
    const std::size_t expected = kind == GateKind::Identity ? 0 : kind == GateKind::Gsp2 ? 2 : 1;
    if (modes.size() != expected) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("{} takes {} mode indices, got {}", gate_kind_name(kind), expected, modes.size()));
    }
    for (std::size_t mode : modes) {
        if (mode >= n) {
            throw Error(ErrorCode::InvalidArgument,
                        fmt::format("{}: mode {} out of range for {} modes", key(), mode, n));
        }
    }
    if (expected == 2 && modes[0] == modes[1]) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("{}: mode indices must differ", key()));
    }
    if (kind == GateKind::Gsp1) {
        const bool ok = (near(x, kSqrt2) && (near(alpha, 0.0) || near(alpha, kQuarterPi))) ||
                        (near(x, kSqrt3) && near(alpha, 0.0));
        if (!ok) {
            throw Error(ErrorCode::InvalidArgument, fmt::format("{}: (x, alpha) not in the protocol set", key()));
        }
    }
    if (kind == GateKind::Gsp2) {
        if (!near(x1, 1.0) || !(near(x2, 2.0) || near(x2, 3.0))) {
            throw Error(ErrorCode::InvalidArgument, fmt::format("{}: (x1, x2) not in the protocol set", key()));
        }
    }
}

SymplecticMatrix GateDescriptor::gate_matrix(std::size_t n) const {
    if (kind == GateKind::Gsp1) {
        return embed(rotation_squeeze(x, alpha), modes, n);
    }
    if (kind == GateKind::Gsp2) {
        const TwoModeUnitary u = unitary == UnitaryLabel::H ? TwoModeUnitary::H() : TwoModeUnitary::K();
        return embed(two_mode_gate_matrix(u, x1, x2), modes, n);
    }
    throw Error(ErrorCode::InvalidArgument, fmt::format("{} is not a symplectic gate", key()));
}

Displacement GateDescriptor::displacement(std::size_t n) const {
    if (kind != GateKind::Gp && kind != GateKind::Gq) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("{} is not a displacement", key()));
    }
    Displacement u = Displacement::zero(n);
    const auto j = static_cast<Eigen::Index>(modes.at(0));
    // Gp = W(i e_j / sqrt2), Gq = W(e_j / sqrt2)
    (kind == GateKind::Gp ? u.y : u.x)(j) = 1.0 / kSqrt2;
    return u;
}

GaussianState GateDescriptor::transformed(const GaussianState &rho) const {
    const std::size_t n = rho.modes();
    validate(n);
    switch (kind) {
        case GateKind::Identity:
            return rho;
        case GateKind::Gp:
        case GateKind::Gq:
            return displace(rho, displacement(n));
        default:
            return conjugate(rho, tau(gate_matrix(n)));
    }
}

MeasurementPlan plan_means_only(std::size_t n) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidDimension, "plans need at least one mode");
    }
    MeasurementPlan plan{n, {GateDescriptor::identity()}};
    for (std::size_t j = 0; j < n; ++j) {
        plan.items.push_back(GateDescriptor::gp(j));
    }
    for (std::size_t j = 0; j < n; ++j) {
        plan.items.push_back(GateDescriptor::gq(j));
    }
    return plan;
}

MeasurementPlan plan_state_tomography(std::size_t n) {
    MeasurementPlan plan = plan_means_only(n);
    for (std::size_t j = 0; j < n; ++j) {
        plan.items.push_back(GateDescriptor::gsp1(j, kSqrt2, 0.0));
        if (j + 1 < n) {
            plan.items.push_back(GateDescriptor::gsp1(j, kSqrt3, 0.0));
        }
        plan.items.push_back(GateDescriptor::gsp1(j, kSqrt2, kQuarterPi));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            plan.items.push_back(GateDescriptor::gsp2(i, j, UnitaryLabel::H, 1.0, 2.0));
            plan.items.push_back(GateDescriptor::gsp2(i, j, UnitaryLabel::H, 1.0, 3.0));
            plan.items.push_back(GateDescriptor::gsp2(i, j, UnitaryLabel::K, 1.0, 2.0));
            plan.items.push_back(GateDescriptor::gsp2(i, j, UnitaryLabel::K, 1.0, 3.0));
        }
    }
    return plan;
}

std::vector<MeasurementRecord> measure(const GaussianState &rho, const MeasurementPlan &plan,
                                       const Backend &backend) {
    if (plan.n != rho.modes()) {
        throw Error(ErrorCode::InvalidDimension,
                    fmt::format("plan is for {} modes, state has {}", plan.n, rho.modes()));
    }
    if (backend.ensemble_size && *backend.ensemble_size == 0) {
        throw Error(ErrorCode::InvalidArgument, "ensemble size must be positive");
    }
    std::mt19937_64 rng(backend.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<MeasurementRecord> out;
    out.reserve(plan.items.size());
    for (const GateDescriptor &d : plan.items) {
        const GaussianState t = d.transformed(rho);
        double value = mean_N(t);
        if (backend.ensemble_size) {
            value += std::sqrt(var_N(t) / static_cast<double>(*backend.ensemble_size)) * normal(rng);
        }
        out.push_back({d, value, backend.ensemble_size});
    }
    return out;
}

RecordIndex::RecordIndex(const std::vector<MeasurementRecord> &records) {
    for (const MeasurementRecord &r : records) {
        if (!std::isfinite(r.value)) {
            throw Error(ErrorCode::InvalidArgument, fmt::format("record {} has a non-finite value", r.descriptor.key()));
        }
        if (!values_.emplace(r.descriptor.key(), r.value).second) {
            throw Error(ErrorCode::InvalidArgument, fmt::format("duplicate record for {}", r.descriptor.key()));
        }
    }
}

std::optional<double> RecordIndex::find(const GateDescriptor &d) const {
    const auto it = values_.find(d.key());
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void RecordIndex::require(const MeasurementPlan &plan) const {
    std::vector<std::string> missing;
    for (const GateDescriptor &d : plan.items) {
        if (!values_.contains(d.key())) {
            missing.push_back(d.key());
        }
    }
    if (!missing.empty()) {
        throw Error(ErrorCode::MissingRecords, fmt::format("missing records: {}", fmt::join(missing, ", ")));
    }
}

double RecordIndex::at(const GateDescriptor &d) const {
    const auto v = find(d);
    if (!v) {
        throw Error(ErrorCode::MissingRecords, fmt::format("missing records: {}", d.key()));
    }
    return *v;
}

MeanSolution solve_means(const RecordIndex &records, std::size_t n) {
    records.require(plan_means_only(n));
    MeanSolution out{Vector(n), Vector(n), records.at(GateDescriptor::identity())};
    for (std::size_t j = 0; j < n; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        out.l(jj) = records.at(GateDescriptor::gp(j)) - out.mean_number - 0.5;
        out.m(jj) = records.at(GateDescriptor::gq(j)) - out.mean_number - 0.5;
    }
    return out;
}

double solve_trace(const MeanSolution &means) {
    return 2.0 * means.mean_number - means.l.squaredNorm() - means.m.squaredNorm() +
           static_cast<double>(means.l.size());
}

namespace {

// 2 (<G^dag N G> - <N>) minus the mean contribution, for a single-mode gate.
double diag_rhs(const RecordIndex &records, const MeanSolution &means, std::size_t j, double x, double alpha,
                const std::array<double, 3> &c) {
    const auto jj = static_cast<Eigen::Index>(j);
    const double l = means.l(jj), m = means.m(jj);
    const double value = records.at(GateDescriptor::gsp1(j, x, alpha));
    return 2.0 * (value - means.mean_number) - (c[0] * l * l + c[1] * m * m - c[2] * l * m);
}

}  // namespace

Matrix solve_diagonal_blocks(const RecordIndex &records, const MeanSolution &means, double trace_s) {
    check_protocol_coefficients();
    const auto n = static_cast<std::size_t>(means.l.size());
    const auto nn = static_cast<Eigen::Index>(n);
    Matrix s = Matrix::Zero(2 * nn, 2 * nn);
    double partial_trace = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        const double r1 = diag_rhs(records, means, j, kSqrt2, 0.0, kDiagSqrt2);
        double pp, qq;
        if (j + 1 < n) {
            const double r2 = diag_rhs(records, means, j, kSqrt3, 0.0, kDiagSqrt3);
            // [1, -1/2; 2, -2/3] (pp, qq) = (r1, r2), determinant 1/3.
            pp = -2.0 * r1 + 1.5 * r2;
            qq = -6.0 * r1 + 3.0 * r2;
            partial_trace += pp + qq;
        } else {
            const double sum = trace_s - partial_trace;
            // pp + qq = sum, pp - qq/2 = r1
            qq = (sum - r1) / 1.5;
            pp = sum - qq;
        }
        const double r3 = diag_rhs(records, means, j, kSqrt2, kQuarterPi, kDiagSqrt2Pi4);
        const double pq = (r3 - kDiagSqrt2Pi4[0] * pp - kDiagSqrt2Pi4[1] * qq) / kDiagSqrt2Pi4[2];
        s(jj, jj) = pp;
        s(nn + jj, nn + jj) = qq;
        s(jj, nn + jj) = pq;
        s(nn + jj, jj) = pq;
    }
    return s;
}

void solve_offdiagonal_blocks(const RecordIndex &records, const MeanSolution &means, Matrix &s) {
    check_protocol_coefficients();
    const auto n = static_cast<std::size_t>(means.l.size());
    const auto nn = static_cast<Eigen::Index>(n);
    const Vector v = GaussianState::unvalidated(means.l, means.m, Matrix::Identity(2 * nn, 2 * nn)).mean_vector();
    const Matrix diag_only = s;
    const Eigen::Matrix2d h_sys = (Eigen::Matrix2d() << kOffH12[0], kOffH12[1], kOffH13[0], kOffH13[1]).finished();
    const Eigen::Matrix2d k_sys = (Eigen::Matrix2d() << kOffK12[2], kOffK12[3], kOffK13[2], kOffK13[3]).finished();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::array<double, 4> r{};
            const std::array<GateDescriptor, 4> gates = {
                GateDescriptor::gsp2(i, j, UnitaryLabel::H, 1.0, 2.0),
                GateDescriptor::gsp2(i, j, UnitaryLabel::H, 1.0, 3.0),
                GateDescriptor::gsp2(i, j, UnitaryLabel::K, 1.0, 2.0),
                GateDescriptor::gsp2(i, j, UnitaryLabel::K, 1.0, 3.0),
            };
            for (std::size_t g = 0; g < 4; ++g) {
                const Matrix d = gram(gates[g].gate_matrix(n)) - Matrix::Identity(2 * nn, 2 * nn);
                const double known = (diag_only * d).trace() + v.dot(d * v);
                const double value = records.at(gates[g]);
                r[g] = 0.5 * (2.0 * (value - means.mean_number) - known);
            }
            const Eigen::Vector2d pp_qq = h_sys.inverse() * Eigen::Vector2d(r[0], r[1]);
            const Eigen::Vector2d pq_qp = k_sys.inverse() * Eigen::Vector2d(r[2], r[3]);
            const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
            s(ii, jj) = s(jj, ii) = pp_qq(0);
            s(nn + ii, nn + jj) = s(nn + jj, nn + ii) = pp_qq(1);
            s(ii, nn + jj) = s(nn + jj, ii) = pq_qp(0);
            s(nn + ii, jj) = s(jj, nn + ii) = pq_qp(1);
        }
    }
}

double protocol_coefficient_deviation() {
    double worst = 0.0;
    auto diag_row = [](double x, double alpha) {
        const Matrix g = gram(rotation_squeeze(x, alpha));
        return std::array<double, 3>{g(0, 0) - 1.0, g(1, 1) - 1.0, 2.0 * g(0, 1)};
    };
    const std::array<std::pair<std::array<double, 3>, std::array<double, 3>>, 3> diag = {{
        {kDiagSqrt2, diag_row(kSqrt2, 0.0)},
        {kDiagSqrt3, diag_row(kSqrt3, 0.0)},
        {kDiagSqrt2Pi4, diag_row(kSqrt2, kQuarterPi)},
    }};
    for (const auto &[table, computed] : diag) {
        for (std::size_t k = 0; k < 3; ++k) {
            worst = std::max(worst, std::abs(table[k] - computed[k]));
        }
    }
    auto off_row = [](const TwoModeUnitary &u, double x2) {
        // Block ordering (p_i, p_j, q_i, q_j); B(b, a) = G(b_j, a_i).
        const Matrix g = gram(two_mode_gate_matrix(u, 1.0, x2));
        return std::array<double, 4>{g(1, 0), g(3, 2), g(3, 0), g(1, 2)};
    };
    const std::array<std::pair<std::array<double, 4>, std::array<double, 4>>, 4> off = {{
        {kOffH12, off_row(TwoModeUnitary::H(), 2.0)},
        {kOffH13, off_row(TwoModeUnitary::H(), 3.0)},
        {kOffK12, off_row(TwoModeUnitary::K(), 2.0)},
        {kOffK13, off_row(TwoModeUnitary::K(), 3.0)},
    }};
    for (const auto &[table, computed] : off) {
        for (std::size_t k = 0; k < 4; ++k) {
            worst = std::max(worst, std::abs(table[k] - computed[k]));
        }
    }
    return worst;
}

std::vector<double> predict(const GaussianState &rho, const std::vector<MeasurementRecord> &records) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const MeasurementRecord &r : records) {
        out.push_back(mean_N(r.descriptor.transformed(rho)));
    }
    return out;
}

ReconstructionResult reconstruct_state(const std::vector<MeasurementRecord> &records, std::size_t n) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidDimension, "reconstruction needs at least one mode");
    }
    for (const MeasurementRecord &r : records) {
        r.descriptor.validate(n);
    }
    const RecordIndex index(records);
    index.require(plan_state_tomography(n));
    const MeanSolution means = solve_means(index, n);
    Matrix s = solve_diagonal_blocks(index, means, solve_trace(means));
    solve_offdiagonal_blocks(index, means, s);

    ReconstructionResult out{GaussianState::unvalidated(means.l, means.m, s), false, 0.0, {}};
    out.uncertainty_margin = out.state.uncertainty_margin();
    out.valid = out.uncertainty_margin >= -1e-6;
    const std::vector<double> predicted = predict(out.state, records);
    out.residuals.reserve(records.size());
    for (std::size_t k = 0; k < records.size(); ++k) {
        out.residuals.push_back(records[k].value - predicted[k]);
    }
    return out;
}

}  // namespace gausscount
