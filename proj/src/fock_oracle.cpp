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

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "gausscount/counting.hpp"
#include "gausscount/error.hpp"

namespace gausscount::fock {

namespace {

using Triplet = Eigen::Triplet<Complex>;

void require_dim(std::size_t dim) {
    if (dim < 2) {
        throw Error(ErrorCode::InvalidDimension, fmt::format("Fock dimension must be >= 2, got {}", dim));
    }
}

std::size_t basis_size(std::size_t modes, std::size_t dim) {
    return modes == 1 ? dim : dim * dim;
}

CMatrix dense_ladder(std::size_t dim) {
    CMatrix a = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t k = 1; k < dim; ++k) {
        a(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = std::sqrt(static_cast<double>(k));
    }
    return a;
}

FockOperator from_dense(const CMatrix &m, std::size_t dim) {
    return FockOperator{1, dim, m.sparseView()};
}

bool on_edge(std::size_t index, std::size_t modes, std::size_t dim) {
    const std::size_t edge = edge_start(dim);
    if (modes == 1) {
        return index >= edge;
    }
    return index / dim >= edge || index % dim >= edge;
}

// Re Tr(rho X)
double expect(const CMatrix &rho, const SparseCMatrix &x) {
    double acc = 0.0;
    for (int col = 0; col < x.outerSize(); ++col) {
        for (SparseCMatrix::InnerIterator it(x, col); it; ++it) {
            acc += (it.value() * rho(it.col(), it.row())).real();
        }
    }
    return acc;
}

void check_edge(const FockState &state, double edge_tol, const char *where) {
    const double mass = edge_mass(state);
    if (mass > edge_tol) {
        throw Error(ErrorCode::TruncationRisk,
                    fmt::format("{}: edge mass {:.3e} exceeds {:.1e} at dim {}", where, mass, edge_tol, state.dim));
    }
}

}  // namespace

std::size_t edge_start(std::size_t dim) {
    return dim - std::max<std::size_t>(1, dim / 10);
}

FockOperator ladder(std::size_t dim) {
    require_dim(dim);
    return from_dense(dense_ladder(dim), dim);
}

FockOperator identity(std::size_t modes, std::size_t dim) {
    require_dim(dim);
    const auto size = static_cast<Eigen::Index>(basis_size(modes, dim));
    SparseCMatrix id(size, size);
    id.setIdentity();
    return FockOperator{modes, dim, id};
}

FockOperator weyl(Complex u, std::size_t dim) {
    require_dim(dim);
    if (std::norm(u) > static_cast<double>(dim) / 10.0) {
        throw Error(ErrorCode::TruncationRisk,
                    fmt::format("|u|^2 = {} exceeds dim/10 = {}", std::norm(u), static_cast<double>(dim) / 10.0));
    }
    const CMatrix a = dense_ladder(dim);
    const CMatrix gen = u * a.adjoint() - std::conj(u) * a;
    return from_dense(gen.exp(), dim);
}

FockOperator squeeze(Complex z, std::size_t dim) {
    require_dim(dim);
    const double sh = std::sinh(std::abs(z));
    if (sh * sh > static_cast<double>(dim) / 10.0) {
        throw Error(ErrorCode::TruncationRisk,
                    fmt::format("sinh^2|z| = {} exceeds dim/10 = {}", sh * sh, static_cast<double>(dim) / 10.0));
    }
    const CMatrix a = dense_ladder(dim);
    const CMatrix a2 = a * a;
    const CMatrix gen = 0.5 * (std::conj(z) * a2 - z * a2.adjoint());
    return from_dense(gen.exp(), dim);
}

FockOperator rotate(double theta, std::size_t dim) {
    require_dim(dim);
    const auto size = static_cast<Eigen::Index>(dim);
    SparseCMatrix r(size, size);
    std::vector<Triplet> entries;
    for (Eigen::Index k = 0; k < size; ++k) {
        entries.emplace_back(k, k, std::polar(1.0, -theta * static_cast<double>(k)));
    }
    r.setFromTriplets(entries.begin(), entries.end());
    return FockOperator{1, dim, r};
}

FockOperator beamsplitter(double theta, double phi, std::size_t dim) {
    require_dim(dim);
    const std::size_t d = dim;
    const Complex up = theta * std::polar(1.0, phi);     // coefficient of a1^dag a2
    const Complex down = -theta * std::polar(1.0, -phi);  // coefficient of a1 a2^dag
    std::vector<Triplet> entries;
    for (std::size_t total = 0; total <= 2 * (d - 1); ++total) {
        const std::size_t lo = total >= d ? total - (d - 1) : 0;
        const std::size_t hi = std::min(total, d - 1);
        const auto size = static_cast<Eigen::Index>(hi - lo + 1);
        CMatrix gen = CMatrix::Zero(size, size);
        for (std::size_t k1 = lo; k1 <= hi; ++k1) {
            const std::size_t k2 = total - k1;
            const auto col = static_cast<Eigen::Index>(k1 - lo);
            if (k1 + 1 <= hi && k2 >= 1) {
                gen(col + 1, col) += up * std::sqrt(static_cast<double>((k1 + 1) * k2));
            }
            if (k1 >= lo + 1 && k1 >= 1) {
                gen(col - 1, col) += down * std::sqrt(static_cast<double>(k1 * (k2 + 1)));
            }
        }
        const CMatrix block = gen.exp();
        for (Eigen::Index r = 0; r < size; ++r) {
            for (Eigen::Index c = 0; c < size; ++c) {
                if (block(r, c) != Complex(0.0, 0.0)) {
                    const std::size_t kr = lo + static_cast<std::size_t>(r);
                    const std::size_t kc = lo + static_cast<std::size_t>(c);
                    entries.emplace_back(static_cast<Eigen::Index>(kr * d + (total - kr)),
                                         static_cast<Eigen::Index>(kc * d + (total - kc)), block(r, c));
                }
            }
        }
    }
    const auto size = static_cast<Eigen::Index>(d * d);
    SparseCMatrix u(size, size);
    u.setFromTriplets(entries.begin(), entries.end());
    return FockOperator{2, dim, u};
}

FockOperator on_mode(const FockOperator &single, std::size_t mode) {
    if (single.modes != 1) {
        throw Error(ErrorCode::InvalidDimension, "on_mode expects a one-mode operator");
    }
    if (mode > 1) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("mode {} out of range for two modes", mode));
    }
    const auto d = static_cast<Eigen::Index>(single.dim);
    std::vector<Triplet> entries;
    for (int col = 0; col < single.entries.outerSize(); ++col) {
        for (SparseCMatrix::InnerIterator it(single.entries, col); it; ++it) {
            for (Eigen::Index k = 0; k < d; ++k) {
                if (mode == 0) {
                    entries.emplace_back(it.row() * d + k, it.col() * d + k, it.value());
                } else {
                    entries.emplace_back(k * d + it.row(), k * d + it.col(), it.value());
                }
            }
        }
    }
    SparseCMatrix out(d * d, d * d);
    out.setFromTriplets(entries.begin(), entries.end());
    return FockOperator{2, single.dim, out};
}

double unitarity_defect(const FockOperator &u) {
    const CMatrix gram = CMatrix(u.entries.adjoint() * u.entries);
    double worst = 0.0;
    for (Eigen::Index r = 0; r < gram.rows(); ++r) {
        if (on_edge(static_cast<std::size_t>(r), u.modes, u.dim)) {
            continue;
        }
        for (Eigen::Index c = 0; c < gram.cols(); ++c) {
            if (on_edge(static_cast<std::size_t>(c), u.modes, u.dim)) {
                continue;
            }
            const Complex target = r == c ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
            worst = std::max(worst, std::abs(gram(r, c) - target));
        }
    }
    return worst;
}

FockState vacuum_state(std::size_t modes, std::size_t dim) {
    require_dim(dim);
    if (modes != 1 && modes != 2) {
        throw Error(ErrorCode::InvalidDimension, fmt::format("Fock states support 1 or 2 modes, got {}", modes));
    }
    const auto size = static_cast<Eigen::Index>(basis_size(modes, dim));
    CMatrix rho = CMatrix::Zero(size, size);
    rho(0, 0) = 1.0;
    return FockState{modes, dim, rho};
}

FockState thermal_fock(double t, std::size_t dim) {
    require_dim(dim);
    if (!(t > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("thermal parameter must be > 0, got {}", t));
    }
    if (std::isinf(t)) {
        return vacuum_state(1, dim);
    }
    const auto size = static_cast<Eigen::Index>(dim);
    Vector w(size);
    for (Eigen::Index k = 0; k < size; ++k) {
        w(k) = std::exp(-t * static_cast<double>(k));
    }
    w /= w.sum();
    return FockState{1, dim, w.cast<Complex>().asDiagonal()};
}

FockState tensor(const FockState &a, const FockState &b) {
    if (a.modes != 1 || b.modes != 1 || a.dim != b.dim) {
        throw Error(ErrorCode::InvalidDimension, "tensor expects two one-mode states of equal dim");
    }
    const auto d = static_cast<Eigen::Index>(a.dim);
    CMatrix rho(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            rho.block(i * d, j * d, d, d) = a.rho(i, j) * b.rho;
        }
    }
    return FockState{2, a.dim, rho};
}

FockState apply(const FockOperator &u, const FockState &state) {
    if (u.modes != state.modes || u.dim != state.dim) {
        throw Error(ErrorCode::InvalidDimension, "operator and state disagree on modes or dim");
    }
    const CMatrix left = u.entries * state.rho;
    CMatrix rho = left * u.entries.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return FockState{state.modes, state.dim, rho};
}

double edge_mass(const FockState &state) {
    double mass = 0.0;
    for (Eigen::Index i = 0; i < state.rho.rows(); ++i) {
        if (on_edge(static_cast<std::size_t>(i), state.modes, state.dim)) {
            mass += state.rho(i, i).real();
        }
    }
    return mass;
}

std::vector<double> number_distribution(const FockState &state, double edge_tol) {
    check_edge(state, edge_tol, "number_distribution");
    std::vector<double> out(state.modes * (state.dim - 1) + 1, 0.0);
    for (Eigen::Index i = 0; i < state.rho.rows(); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const std::size_t total = state.modes == 1 ? idx : idx / state.dim + idx % state.dim;
        out[total] += state.rho(i, i).real();
    }
    return out;
}

double pgf_oracle(const FockState &state, double x, double edge_tol) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("pgf argument must be in [0, 1], got {}", x));
    }
    const std::vector<double> dist = number_distribution(state, edge_tol);
    double acc = 0.0;
    for (std::size_t k = dist.size(); k-- > 0;) {
        acc = acc * x + dist[k];
    }
    return acc;
}

GaussianState quadrature_moments(const FockState &state) {
    const std::size_t n = state.modes;
    const FockOperator a1 = ladder(state.dim);
    std::vector<SparseCMatrix> xi(2 * n);
    const double rt2 = std::sqrt(2.0);
    for (std::size_t j = 0; j < n; ++j) {
        const SparseCMatrix a = n == 1 ? a1.entries : on_mode(a1, j).entries;
        const SparseCMatrix ad = a.adjoint();
        xi[j] = (a - ad) * Complex(0.0, -1.0 / rt2);
        xi[n + j] = (a + ad) * Complex(-1.0 / rt2, 0.0);
    }
    const auto dim = static_cast<Eigen::Index>(2 * n);
    Vector mean(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        mean(i) = expect(state.rho, xi[static_cast<std::size_t>(i)]);
    }
    Matrix s(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = i; j < dim; ++j) {
            const SparseCMatrix prod = xi[static_cast<std::size_t>(i)] * xi[static_cast<std::size_t>(j)];
            s(i, j) = expect(state.rho, prod) - mean(i) * mean(j);
            s(j, i) = s(i, j);
        }
    }
    const auto nn = static_cast<Eigen::Index>(n);
    return GaussianState::unvalidated(mean.head(nn), -mean.tail(nn), s);
}

SymplecticMatrix heisenberg_to_symplectic(const CMatrix &v, const CMatrix &w) {
    if (v.rows() != v.cols() || w.rows() != v.rows() || w.cols() != v.cols()) {
        throw Error(ErrorCode::InvalidDimension, "V and W must be square and of equal size");
    }
    const Eigen::Index n = v.rows();
    const CMatrix p = v + w;
    const CMatrix q = v - w;
    Matrix k(2 * n, 2 * n);
    k.topLeftCorner(n, n) = q.real();
    k.topRightCorner(n, n) = -p.imag();
    k.bottomLeftCorner(n, n) = q.imag();
    k.bottomRightCorner(n, n) = p.real();
    // U^dag xi U = K xi, so the state transforms with tau(L) = K.
    return tau(SymplecticMatrix(k));
}

namespace {

struct Heisenberg {
    CMatrix v;
    CMatrix w;
};

Heisenberg heisenberg_identity(std::size_t n) {
    const auto size = static_cast<Eigen::Index>(n);
    return {CMatrix::Identity(size, size), CMatrix::Zero(size, size)};
}

SymplecticMatrix gate_symplectic(const Gate &gate, std::size_t n) {
    Heisenberg h = heisenberg_identity(n);
    if (const auto *g = std::get_if<SqueezeGate>(&gate)) {
        const auto j = static_cast<Eigen::Index>(g->mode);
        h.v(j, j) = std::cosh(g->r);
        h.w(j, j) = -std::polar(1.0, g->phi) * std::sinh(g->r);
    } else if (const auto *g = std::get_if<RotateGate>(&gate)) {
        const auto j = static_cast<Eigen::Index>(g->mode);
        h.v(j, j) = std::polar(1.0, -g->theta);
    } else if (const auto *g = std::get_if<BeamsplitterGate>(&gate)) {
        const auto a = static_cast<Eigen::Index>(g->mode_a);
        const auto b = static_cast<Eigen::Index>(g->mode_b);
        const double c = std::cos(g->theta), s = std::sin(g->theta);
        h.v(a, a) = c;
        h.v(a, b) = std::polar(s, g->phi);
        h.v(b, a) = -std::polar(s, -g->phi);
        h.v(b, b) = c;
    }
    return heisenberg_to_symplectic(h.v, h.w);
}

FockOperator gate_operator(const Gate &gate, std::size_t modes, std::size_t dim) {
    auto lift = [&](const FockOperator &op, std::size_t mode) { return modes == 1 ? op : on_mode(op, mode); };
    if (const auto *g = std::get_if<DisplaceGate>(&gate)) {
        return lift(weyl(g->u, dim), g->mode);
    }
    if (const auto *g = std::get_if<SqueezeGate>(&gate)) {
        return lift(squeeze(std::polar(g->r, g->phi), dim), g->mode);
    }
    if (const auto *g = std::get_if<RotateGate>(&gate)) {
        return lift(rotate(g->theta, dim), g->mode);
    }
    const auto &g = std::get<BeamsplitterGate>(gate);
    // Swapping the roles of the two modes flips the sign of theta and phi.
    return g.mode_a == 0 ? beamsplitter(g.theta, g.phi, dim) : beamsplitter(-g.theta, -g.phi, dim);
}

void require_finite(double value, const char *what) {
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("{} must be finite", what));
    }
}

}  // namespace

void GateScript::validate() const {
    if (modes != 1 && modes != 2) {
        throw Error(ErrorCode::InvalidDimension, fmt::format("scripts support 1 or 2 modes, got {}", modes));
    }
    require_dim(dim);
    if (!thermal_t.empty() && thermal_t.size() != modes) {
        throw Error(ErrorCode::InvalidDimension,
                    fmt::format("expected {} thermal parameters, got {}", modes, thermal_t.size()));
    }
    for (double t : thermal_t) {
        if (!(t > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, fmt::format("thermal parameter must be > 0, got {}", t));
        }
    }
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate &gate = gates[i];
        auto check_mode = [&](std::size_t mode) {
            if (mode >= modes) {
                throw Error(ErrorCode::InvalidArgument,
                            fmt::format("gate {}: mode {} out of range for {} modes", i, mode, modes));
            }
        };
        if (const auto *g = std::get_if<DisplaceGate>(&gate)) {
            check_mode(g->mode);
            require_finite(g->u.real(), "displacement");
            require_finite(g->u.imag(), "displacement");
        } else if (const auto *g = std::get_if<SqueezeGate>(&gate)) {
            check_mode(g->mode);
            require_finite(g->r, "squeeze r");
            require_finite(g->phi, "squeeze phi");
        } else if (const auto *g = std::get_if<RotateGate>(&gate)) {
            check_mode(g->mode);
            require_finite(g->theta, "rotation angle");
        } else {
            const auto &b = std::get<BeamsplitterGate>(gate);
            if (modes != 2) {
                throw Error(ErrorCode::InvalidArgument, fmt::format("gate {}: beamsplitter needs two modes", i));
            }
            check_mode(b.mode_a);
            check_mode(b.mode_b);
            if (b.mode_a == b.mode_b) {
                throw Error(ErrorCode::InvalidArgument, fmt::format("gate {}: beamsplitter modes must differ", i));
            }
            require_finite(b.theta, "beamsplitter theta");
            require_finite(b.phi, "beamsplitter phi");
        }
    }
}

GaussianState run_analytic(const GateScript &script) {
    script.validate();
    GaussianState rho = script.thermal_t.empty()
                            ? GaussianState::vacuum(script.modes)
                            : GaussianState::thermal(Eigen::Map<const Vector>(
                                  script.thermal_t.data(), static_cast<Eigen::Index>(script.thermal_t.size())));
    for (const Gate &gate : script.gates) {
        if (const auto *g = std::get_if<DisplaceGate>(&gate)) {
            CVector u = CVector::Zero(static_cast<Eigen::Index>(script.modes));
            u(static_cast<Eigen::Index>(g->mode)) = g->u;
            rho = displace(rho, Displacement::from_complex(u));
        } else {
            rho = conjugate(rho, gate_symplectic(gate, script.modes));
        }
    }
    return rho;
}

FockState run_fock(const GateScript &script, double edge_tol) {
    script.validate();
    FockState state = vacuum_state(script.modes, script.dim);
    if (!script.thermal_t.empty()) {
        state = thermal_fock(script.thermal_t[0], script.dim);
        if (script.modes == 2) {
            state = tensor(state, thermal_fock(script.thermal_t[1], script.dim));
        }
    }
    check_edge(state, edge_tol, "input state");
    for (std::size_t i = 0; i < script.gates.size(); ++i) {
        state = apply(gate_operator(script.gates[i], script.modes, script.dim), state);
        check_edge(state, edge_tol, fmt::format("after gate {}", i).c_str());
    }
    return state;
}

OracleComparison compare_script(const GateScript &script, const std::vector<double> &x_grid, double tol) {
    const GaussianState analytic = run_analytic(script);
    const FockState fock_state = run_fock(script);

    OracleComparison out;
    out.kmax = script.dim - 1;
    out.edge_mass = edge_mass(fock_state);
    out.pmf_analytic = pmf(analytic, static_cast<int>(out.kmax));
    const std::vector<double> dist = number_distribution(fock_state);
    out.pmf_fock.assign(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(out.kmax + 1));
    for (std::size_t k = 0; k <= out.kmax; ++k) {
        out.pmf_max_diff = std::max(out.pmf_max_diff, std::abs(out.pmf_analytic[k] - out.pmf_fock[k]));
    }
    for (double x : x_grid) {
        out.pgf_max_diff = std::max(out.pgf_max_diff, std::abs(total_pgf(analytic, x) - pgf_oracle(fock_state, x)));
    }
    double mean = 0.0, second = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        mean += static_cast<double>(k) * dist[k];
        second += static_cast<double>(k * k) * dist[k];
    }
    out.mean_diff = std::abs(mean - mean_N(analytic));
    out.var_diff = std::abs(second - mean * mean - var_N(analytic));
    out.pass = out.pmf_max_diff <= tol && out.pgf_max_diff <= tol;
    return out;
}

}  // namespace gausscount::fock
