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

#include "gausscount/symplectic.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "gausscount/error.hpp"

namespace gausscount {

namespace {

void require_even_square(const Matrix &m) {
    if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
        throw Error(ErrorCode::InvalidDimension,
                    fmt::format("expected a non-empty square matrix of even size, got {}x{}",
                                m.rows(), m.cols()));
    }
}

Matrix interleaved_to_block(const Matrix &m) {
    Matrix p = interleave_permutation(static_cast<std::size_t>(m.rows() / 2));
    return p.transpose() * m * p;
}

}  // namespace

Matrix make_form(std::size_t n) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidDimension, "mode count must be at least 1");
    }
    const auto k = static_cast<Eigen::Index>(n);
    Matrix j = Matrix::Zero(2 * k, 2 * k);
    j.topRightCorner(k, k) = -Matrix::Identity(k, k);
    j.bottomLeftCorner(k, k) = Matrix::Identity(k, k);
    return j;
}

bool is_symplectic(const Matrix &m, double tol) {
    require_even_square(m);
    const Matrix j = make_form(static_cast<std::size_t>(m.rows() / 2));
    return max_abs(m.transpose() * j * m - j) <= tol;
}

Matrix interleave_permutation(std::size_t n) {
    const auto k = static_cast<Eigen::Index>(n);
    Matrix p = Matrix::Zero(2 * k, 2 * k);
    for (Eigen::Index j = 0; j < k; ++j) {
        p(2 * j, j) = 1.0;
        p(2 * j + 1, k + j) = 1.0;
    }
    return p;
}

SymplecticMatrix::SymplecticMatrix(Matrix entries, double tol) : entries_(std::move(entries)) {
    if (!is_symplectic(entries_, tol)) {
        const Matrix j = make_form(modes());
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("matrix is not symplectic: max|L^T J L - J| = {:.3e}",
                                max_abs(entries_.transpose() * j * entries_ - j)));
    }
}

SymplecticMatrix SymplecticMatrix::identity(std::size_t n) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidDimension, "mode count must be at least 1");
    }
    const auto k = static_cast<Eigen::Index>(2 * n);
    return SymplecticMatrix(Matrix::Identity(k, k), Trusted{});
}

SymplecticMatrix SymplecticMatrix::inverse() const {
    const Matrix j = make_form(modes());
    return SymplecticMatrix(Matrix(-j * entries_.transpose() * j), Trusted{});
}

SymplecticMatrix SymplecticMatrix::transpose() const {
    return SymplecticMatrix(Matrix(entries_.transpose()), Trusted{});
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix &rhs) const {
    if (rhs.modes() != modes()) {
        throw Error(ErrorCode::InvalidDimension,
                    fmt::format("cannot multiply {}-mode and {}-mode matrices", modes(), rhs.modes()));
    }
    return SymplecticMatrix(Matrix(entries_ * rhs.entries_), Trusted{});
}

TwoModeUnitary TwoModeUnitary::H() {
    const double s = 1.0 / std::sqrt(2.0);
    return TwoModeUnitary{s, 0.0, s, 0.0};
}

TwoModeUnitary TwoModeUnitary::K() {
    const double s = 1.0 / std::sqrt(2.0);
    return TwoModeUnitary{0.0, s, s, 0.0};
}

void TwoModeUnitary::validate() const {
    const double norm =
        alpha_re * alpha_re + alpha_im * alpha_im + beta_re * beta_re + beta_im * beta_im;
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-12) {
        throw Error(ErrorCode::InvalidUnitary,
                    fmt::format("|alpha|^2 + |beta|^2 = {:.17g}, expected 1", norm));
    }
}

SymplecticMatrix rotation_squeeze(double x, double angle) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("squeeze factor must be > 0, got {}", x));
    }
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Eigen::Matrix2d r;
    r << c, -s, s, c;
    const Eigen::Matrix2d d = Eigen::Vector2d(x, 1.0 / x).asDiagonal();
    return SymplecticMatrix(Matrix(r * d * r.transpose()));
}

Matrix orthosymplectic_interleaved(const TwoModeUnitary &u) {
    u.validate();
    const double a1 = u.alpha_re, a2 = u.alpha_im, b1 = u.beta_re, b2 = u.beta_im;
    Matrix o(4, 4);
    // clang-format off
    o <<  a1, -a2,  b1, -b2,
          a2,  a1,  b2,  b1,
         -b1, -b2,  a1,  a2,
          b2, -b1, -a2,  a1;
    // clang-format on
    return o;
}

SymplecticMatrix unitary_to_orthosymplectic(const TwoModeUnitary &u) {
    return SymplecticMatrix(interleaved_to_block(orthosymplectic_interleaved(u)));
}

SymplecticMatrix two_mode_gate_matrix(const TwoModeUnitary &u, double x1, double x2) {
    for (double x : {x1, x2}) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw Error(ErrorCode::InvalidArgument,
                        fmt::format("squeeze factor must be > 0, got {}", x));
        }
    }
    const Matrix o = orthosymplectic_interleaved(u);
    const Eigen::Vector4d d(x1, 1.0 / x1, x2, 1.0 / x2);
    return SymplecticMatrix(interleaved_to_block(o * d.asDiagonal() * o.transpose()));
}

Eigen::Matrix2d offdiag_block(const TwoModeUnitary &u, double x1, double x2) {
    u.validate();
    if (!(x1 > 0.0) || !(x2 > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "squeeze factors must be > 0");
    }
    const double a1 = u.alpha_re, a2 = u.alpha_im, b1 = u.beta_re, b2 = u.beta_im;
    const double i1 = 1.0 / x1, i2 = 1.0 / x2;
    Eigen::Matrix2d b;
    b(0, 0) = -b1 * a1 * (x1 - x2) + b2 * a2 * (i1 - i2);
    b(0, 1) = -b1 * a2 * (x1 - i2) - b2 * a1 * (i1 - x2);
    b(1, 0) = b2 * a1 * (x1 - i2) + b1 * a2 * (i1 - x2);
    b(1, 1) = b2 * a2 * (x1 - x2) - b1 * a1 * (i1 - i2);
    return b;
}

Eigen::Matrix2d gram_offdiag_block(const TwoModeUnitary &u, double x1, double x2) {
    return offdiag_block(u, x1 * x1, x2 * x2);
}

Eigen::Matrix2d extract_offdiag_block(const Matrix &m) {
    if (m.rows() != 4 || m.cols() != 4) {
        throw Error(ErrorCode::InvalidDimension, "expected a 4x4 matrix");
    }
    // block ordering (p1, p2, q1, q2): mode 2 rows are {1, 3}, mode 1 columns {0, 2}.
    Eigen::Matrix2d b;
    b << m(1, 0), m(1, 2), m(3, 0), m(3, 2);
    return b;
}

SymplecticMatrix tau(const SymplecticMatrix &l) {
    const Matrix j = make_form(l.modes());
    return SymplecticMatrix(Matrix(-j * l.matrix() * j), SymplecticMatrix::Trusted{});
}

SymplecticMatrix embed(const SymplecticMatrix &local, std::span<const std::size_t> modes,
                       std::size_t n) {
    const std::size_t k = local.modes();
    if (modes.size() != k || k < 1 || k > 2) {
        throw Error(ErrorCode::InvalidDimension,
                    fmt::format("embedding needs one mode index per local mode (1 or 2), got {} for a "
                                "{}-mode matrix",
                                modes.size(), k));
    }
    std::vector<bool> seen(n, false);
    for (std::size_t j : modes) {
        if (j >= n) {
            throw Error(ErrorCode::InvalidArgument,
                        fmt::format("mode index {} out of range for {} modes", j, n));
        }
        if (seen[j]) {
            throw Error(ErrorCode::InvalidArgument, fmt::format("duplicate mode index {}", j));
        }
        seen[j] = true;
    }
    std::vector<Eigen::Index> target(2 * k);
    for (std::size_t a = 0; a < k; ++a) {
        target[a] = static_cast<Eigen::Index>(modes[a]);
        target[k + a] = static_cast<Eigen::Index>(n + modes[a]);
    }
    Matrix g = Matrix::Identity(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * n));
    const Matrix &l = local.matrix();
    for (std::size_t r = 0; r < 2 * k; ++r) {
        for (std::size_t c = 0; c < 2 * k; ++c) {
            g(target[r], target[c]) = l(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return SymplecticMatrix(std::move(g), SymplecticMatrix::Trusted{});
}

}  // namespace gausscount
