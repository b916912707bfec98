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

#include "gausscount/gaussian_state.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "gausscount/error.hpp"

namespace gausscount {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

void require_finite(const Matrix &m, const char *what) {
    if (!m.allFinite()) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("{} has non-finite entries", what));
    }
}

void check_dimensions(const Vector &l, const Vector &m, const Matrix &s) {
    const auto n = l.size();
    if (n == 0) {
        throw Error(ErrorCode::InvalidDimension, "mode count must be at least 1");
    }
    if (m.size() != n || s.rows() != 2 * n || s.cols() != 2 * n) {
        throw Error(ErrorCode::InvalidDimension,
                    fmt::format("inconsistent dimensions: |l| = {}, |m| = {}, S is {}x{}", n, m.size(),
                                s.rows(), s.cols()));
    }
    require_finite(l, "l");
    require_finite(m, "m");
    require_finite(s, "S");
}

}  // namespace

Displacement::Displacement(Vector x_, Vector y_) : x(std::move(x_)), y(std::move(y_)) {
    if (x.size() != y.size()) {
        throw Error(ErrorCode::InvalidDimension,
                    fmt::format("displacement parts differ in size: {} vs {}", x.size(), y.size()));
    }
    if (!x.allFinite() || !y.allFinite()) {
        throw Error(ErrorCode::InvalidArgument, "displacement has non-finite entries");
    }
}

Displacement Displacement::zero(std::size_t n) {
    const auto k = static_cast<Eigen::Index>(n);
    return Displacement(Vector::Zero(k), Vector::Zero(k));
}

Displacement Displacement::from_complex(const CVector &u) {
    return Displacement(u.real(), u.imag());
}

GaussianState::GaussianState(Vector l, Vector m, Matrix s, Unchecked)
    : l_(std::move(l)), m_(std::move(m)), s_(std::move(s)) {
    check_dimensions(l_, m_, s_);
    s_ = symmetrize(s_);
}

GaussianState::GaussianState(Vector l, Vector m, Matrix s)
    : GaussianState(std::move(l), std::move(m), std::move(s), Unchecked{}) {
    const double margin = uncertainty_margin();
    if (margin < -kValidityTol) {
        throw Error(ErrorCode::InvalidCovariance,
                    fmt::format("covariance violates 2S + iJ >= 0: minimum eigenvalue {:.6e}", margin));
    }
}

GaussianState GaussianState::unvalidated(Vector l, Vector m, Matrix s) {
    return GaussianState(std::move(l), std::move(m), std::move(s), Unchecked{});
}

GaussianState GaussianState::from_mean_vector(const Vector &v, Matrix s) {
    if (v.size() % 2 != 0) {
        throw Error(ErrorCode::InvalidDimension, "mean vector must have even length");
    }
    const auto n = v.size() / 2;
    return GaussianState(v.head(n), -v.tail(n), std::move(s));
}

GaussianState GaussianState::vacuum(std::size_t n) {
    return coherent(Displacement::zero(n));
}

GaussianState GaussianState::coherent(const Displacement &u) {
    const auto n = static_cast<Eigen::Index>(u.modes());
    return GaussianState(kSqrt2 * u.y, kSqrt2 * u.x, 0.5 * Matrix::Identity(2 * n, 2 * n));
}

GaussianState GaussianState::thermal(const Vector &t) {
    const auto n = t.size();
    Matrix s = Matrix::Zero(2 * n, 2 * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        if (!(t(j) > 0.0)) {
            throw Error(ErrorCode::InvalidArgument,
                        fmt::format("thermal parameter t[{}] must be > 0, got {}", j, t(j)));
        }
        // (1 + e^-t) / (1 - e^-t) = coth(t/2)
        const double var = std::isinf(t(j)) ? 0.5 : 0.5 / std::tanh(0.5 * t(j));
        s(j, j) = var;
        s(n + j, n + j) = var;
    }
    return GaussianState(Vector::Zero(n), Vector::Zero(n), std::move(s));
}

Vector GaussianState::mean_vector() const {
    Vector v(2 * l_.size());
    v << l_, -m_;
    return v;
}

double GaussianState::uncertainty_margin() const {
    return min_hermitian_eigenvalue(2.0 * s_, make_form(modes()));
}

GaussianState displace(const GaussianState &rho, const Displacement &u) {
    if (u.modes() != rho.modes()) {
        throw Error(ErrorCode::InvalidDimension,
                    fmt::format("displacement has {} modes, state has {}", u.modes(), rho.modes()));
    }
    return GaussianState::unvalidated(rho.l() + kSqrt2 * u.y, rho.m() + kSqrt2 * u.x,
                                      rho.covariance());
}

GaussianState conjugate(const GaussianState &rho, const SymplecticMatrix &l) {
    if (l.modes() != rho.modes()) {
        throw Error(ErrorCode::InvalidDimension,
                    fmt::format("gate has {} modes, state has {}", l.modes(), rho.modes()));
    }
    const Matrix k = tau(l).matrix();
    const Vector v = k * rho.mean_vector();
    const auto n = static_cast<Eigen::Index>(rho.modes());
    return GaussianState::unvalidated(v.head(n), -v.tail(n), k * rho.covariance() * k.transpose());
}

double overlap(const GaussianState &rho1, const GaussianState &rho2) {
    if (rho1.modes() != rho2.modes()) {
        throw Error(ErrorCode::InvalidDimension, "overlap of states with different mode counts");
    }
    const Matrix sum = rho1.covariance() + rho2.covariance();
    const Vector d = rho1.mean_vector() - rho2.mean_vector();
    Eigen::LLT<Matrix> llt(sum);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::Numerical, "S + T is not positive definite");
    }
    const double quad = d.dot(llt.solve(d));
    const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return std::exp(-0.5 * quad - 0.5 * logdet);
}

Complex fourier_transform(const GaussianState &rho, const Vector &x, const Vector &y) {
    const auto n = static_cast<Eigen::Index>(rho.modes());
    if (x.size() != n || y.size() != n) {
        throw Error(ErrorCode::InvalidDimension, "Fourier argument has the wrong number of modes");
    }
    Vector z(2 * n);
    z << x, y;
    const double phase = -kSqrt2 * (rho.l().dot(x) - rho.m().dot(y));
    const double decay = z.dot(rho.covariance() * z);
    return std::exp(Complex(-decay, phase));
}

bool purity_check(const GaussianState &rho) {
    if (!rho.is_physical()) {
        return false;
    }
    const double det = (2.0 * rho.covariance()).determinant();
    return std::abs(det - 1.0) <= 1e-6;
}

WilliamsonForm williamson(const Matrix &s) {
    if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) {
        throw Error(ErrorCode::InvalidDimension, "covariance must be square with even size");
    }
    const auto n = s.rows() / 2;
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(s));
    if (es.eigenvalues().minCoeff() <= 0.0) {
        throw Error(ErrorCode::InvalidCovariance, "Williamson form needs a positive definite matrix");
    }
    const Matrix root = es.operatorSqrt();
    const Matrix a = root * make_form(static_cast<std::size_t>(n)) * root;
    // i*A is Hermitian; for A z = -i mu z with z = u + i w we get A u = mu w, A w = -mu u.
    const CMatrix h = Complex(0.0, 1.0) * a.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> hs(h);
    Matrix o(2 * n, 2 * n);
    Vector nu(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index col = n + j;  // eigenvalues ascend; the top n are +mu
        const CVector z = hs.eigenvectors().col(col);
        nu(j) = hs.eigenvalues()(col);
        o.col(j) = kSqrt2 * z.real();
        o.col(n + j) = kSqrt2 * z.imag();
    }
    Vector scale(2 * n);
    scale << nu.cwiseSqrt().cwiseInverse(), nu.cwiseSqrt().cwiseInverse();
    Matrix t = scale.asDiagonal() * o.transpose() * root;
    return WilliamsonForm{std::move(nu), std::move(t)};
}

Vector symplectic_eigenvalues(const Matrix &s) {
    return williamson(s).nu;
}

Matrix project_to_physical(const Matrix &s) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(s));
    const Vector lifted = es.eigenvalues().cwiseMax(1e-6);
    const Matrix pd = es.eigenvectors() * lifted.asDiagonal() * es.eigenvectors().transpose();
    const WilliamsonForm w = williamson(pd);
    const Vector nu = w.nu.cwiseMax(0.5);
    Vector d(2 * nu.size());
    d << nu, nu;
    return symmetrize(w.t.transpose() * d.asDiagonal() * w.t);
}

}  // namespace gausscount
