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

#ifndef GAUSSCOUNT_GAUSSIAN_STATE_HPP
#define GAUSSCOUNT_GAUSSIAN_STATE_HPP

#include <cstddef>

#include "gausscount/linalg.hpp"
#include "gausscount/symplectic.hpp"

namespace gausscount {

/// Minimum allowed eigenvalue of 2S + iJ for a physical covariance.
inline constexpr double kValidityTol = 1e-9;

/// Argument u = x + iy of the Weyl displacement operator W(u).
struct Displacement {
    Vector x;
    Vector y;

    Displacement(Vector x, Vector y);
    static Displacement zero(std::size_t n);
    static Displacement from_complex(const CVector &u);

    std::size_t modes() const {
        return static_cast<std::size_t>(x.size());
    }
    Displacement operator-() const {
        return Displacement(-x, -y);
    }
};

/// An n-mode Gaussian state rho_g(l, m; S): momentum means l, position means m
/// and the covariance S of (p_1..p_n, -q_1..-q_n).
class GaussianState {
   public:
    /// Validates dimensions and the uncertainty constraint 2S + iJ >= 0
    /// (InvalidDimension / InvalidCovariance). S is symmetrized.
    GaussianState(Vector l, Vector m, Matrix s);

    /// Dimension checks and symmetrization only. Used for raw estimates that may
    /// violate the uncertainty constraint.
    static GaussianState unvalidated(Vector l, Vector m, Matrix s);

    /// Builds a state from v = (l; -m).
    static GaussianState from_mean_vector(const Vector &v, Matrix s);

    static GaussianState vacuum(std::size_t n);
    /// |psi(u)><psi(u)| = rho_g(sqrt2 y, sqrt2 x; I/2).
    static GaussianState coherent(const Displacement &u);
    /// Product of thermal states (1 - e^{-t}) e^{-t a^dag a}, one t per mode.
    static GaussianState thermal(const Vector &t);

    std::size_t modes() const {
        return static_cast<std::size_t>(l_.size());
    }
    const Vector &l() const {
        return l_;
    }
    const Vector &m() const {
        return m_;
    }
    const Matrix &covariance() const {
        return s_;
    }
    /// (l; -m)
    Vector mean_vector() const;

    /// Smallest eigenvalue of 2S + iJ.
    double uncertainty_margin() const;
    bool is_physical(double tol = kValidityTol) const {
        return uncertainty_margin() >= -tol;
    }

   private:
    struct Unchecked {};
    GaussianState(Vector l, Vector m, Matrix s, Unchecked);

    Vector l_;
    Vector m_;
    Matrix s_;
};

/// W(u) rho W(u)^dag: l' = l + sqrt2 y, m' = m + sqrt2 x.
GaussianState displace(const GaussianState &rho, const Displacement &u);

/// Gamma(L) rho Gamma(L)^dag: (l'; -m') = (L^{-1})^T (l; -m), S' = (L^{-1})^T S L^{-1}.
GaussianState conjugate(const GaussianState &rho, const SymplecticMatrix &l);

/// Tr rho1 rho2 = exp(-d^T (S+T)^{-1} d / 2) / sqrt(det(S+T)), d = v1 - v2.
double overlap(const GaussianState &rho1, const GaussianState &rho2);

/// Tr rho W(x + iy).
Complex fourier_transform(const GaussianState &rho, const Vector &x, const Vector &y);

/// det(2S) = 1 within 1e-6 for a physical state.
bool purity_check(const GaussianState &rho);

/// Williamson normal form S = T^T diag(nu, nu) T with T symplectic. Requires S
/// positive definite (InvalidCovariance otherwise).
struct WilliamsonForm {
    Vector nu;
    Matrix t;
};
WilliamsonForm williamson(const Matrix &s);

Vector symplectic_eigenvalues(const Matrix &s);

/// Raises every symplectic eigenvalue of S below 1/2 up to 1/2 (after lifting
/// non-positive eigenvalues of S to a small floor). Identity on physical S.
Matrix project_to_physical(const Matrix &s);

}  // namespace gausscount

#endif
