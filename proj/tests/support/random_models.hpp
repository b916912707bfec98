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

#ifndef GAUSSCOUNT_TESTS_RANDOM_MODELS_HPP
#define GAUSSCOUNT_TESTS_RANDOM_MODELS_HPP

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "gausscount/channel.hpp"
#include "gausscount/gaussian_state.hpp"
#include "gausscount/symplectic.hpp"

namespace gausscount::models {

using Rng = std::mt19937_64;

inline double uniform(Rng &rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vector normal_vector(Rng &rng, std::size_t size, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    Vector v(static_cast<Eigen::Index>(size));
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        v(k) = normal(rng);
    }
    return v;
}

inline CMatrix random_unitary(Rng &rng, std::size_t n) {
    const auto k = static_cast<Eigen::Index>(n);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix z(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
        for (Eigen::Index c = 0; c < k; ++c) {
            z(r, c) = Complex(normal(rng), normal(rng));
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    return qr.householderQ() * CMatrix::Identity(k, k);
}

/// [[X, -Y], [Y, X]] for a random unitary X + iY; commutes with J and is orthogonal.
inline Matrix random_orthosymplectic(Rng &rng, std::size_t n) {
    const CMatrix u = random_unitary(rng, n);
    const auto k = static_cast<Eigen::Index>(n);
    Matrix o(2 * k, 2 * k);
    o << u.real(), -u.imag(), u.imag(), u.real();
    return o;
}

/// O1 diag(d, 1/d) O2 with squeezing factors d in [1/max_squeeze, max_squeeze].
inline SymplecticMatrix random_symplectic(Rng &rng, std::size_t n, double max_squeeze = 2.0) {
    const auto k = static_cast<Eigen::Index>(n);
    Vector d(2 * k);
    for (Eigen::Index j = 0; j < k; ++j) {
        d(j) = std::exp(uniform(rng, -std::log(max_squeeze), std::log(max_squeeze)));
        d(k + j) = 1.0 / d(j);
    }
    return SymplecticMatrix(Matrix(random_orthosymplectic(rng, n) * d.asDiagonal() * random_orthosymplectic(rng, n)));
}

/// T^T diag(nu, nu) T with nu_j = 1/2 + Exp(1) draws (all 1/2 when pure).
inline GaussianState random_state(Rng &rng, std::size_t n, bool pure = false, double mean_scale = 1.0,
                                  double max_squeeze = 2.0) {
    const auto k = static_cast<Eigen::Index>(n);
    const Matrix t = random_symplectic(rng, n, max_squeeze).matrix();
    std::exponential_distribution<double> expo(1.0);
    Vector nu(2 * k);
    for (Eigen::Index j = 0; j < k; ++j) {
        nu(j) = pure ? 0.5 : 0.5 + expo(rng);
        nu(k + j) = nu(j);
    }
    return GaussianState(normal_vector(rng, n, mean_scale), normal_vector(rng, n, mean_scale),
                         t.transpose() * nu.asDiagonal() * t);
}

inline GaussianState random_zero_mean_state(Rng &rng, std::size_t n) {
    const GaussianState s = random_state(rng, n);
    const auto k = static_cast<Eigen::Index>(n);
    return GaussianState(Vector::Zero(k), Vector::Zero(k), s.covariance());
}

/// A = symplectic diag(scales), B = c I with c lifting the constraint by 0.1.
inline GaussianChannel random_channel(Rng &rng, std::size_t n) {
    const auto k = static_cast<Eigen::Index>(2 * n);
    Vector scales(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        scales(j) = uniform(rng, 0.5, 1.5);
    }
    const Matrix a = random_symplectic(rng, n, 1.5).matrix() * scales.asDiagonal();
    const Matrix j = make_form(n);
    const Matrix x = a.transpose() * j * a - j;
    // i X is Hermitian with eigenvalues +- (singular values of X).
    const double radius = Eigen::JacobiSVD<Matrix>(x).singularValues().maxCoeff();
    return GaussianChannel(a, (radius + 0.1) * Matrix::Identity(k, k));
}

}  // namespace gausscount::models

#endif
