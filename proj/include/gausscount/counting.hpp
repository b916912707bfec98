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

#ifndef GAUSSCOUNT_COUNTING_HPP
#define GAUSSCOUNT_COUNTING_HPP

#include <cstddef>
#include <vector>

#include "gausscount/gaussian_state.hpp"
#include "gausscount/linalg.hpp"

namespace gausscount {

/// Spectral data of a state that determines the law of the total number N:
/// eigenvalues of S (descending), the coefficients of (l; -m) in the matching
/// orthonormal eigenbasis, and alpha_j = (lambda_j - 1/2) / (lambda_j + 1/2).
struct NumberPGF {
    Vector lambdas;
    Vector taus;
    Vector alphas;
};

NumberPGF spectral_data(const GaussianState &rho);

/// G_N(x) = Tr rho x^N for 0 <= x <= 1 (exactly 1 at x = 1). InvalidArgument
/// outside that range.
double total_pgf(const GaussianState &rho, double x);
double total_pgf(const NumberPGF &pgf, double x);
double log_total_pgf(const NumberPGF &pgf, double x);
/// Analytic continuation into |x| < 1 / max|alpha_j|.
Complex total_pgf(const NumberPGF &pgf, Complex x);

/// Tr rho x_1^{N_1} ... x_n^{N_n}, each x_j in [0, 1).
double joint_pgf(const GaussianState &rho, const Vector &xs);

/// Pr(N = 0) = G_N(0).
double prob_zero(const GaussianState &rho);
double mean_N(const GaussianState &rho);
double var_N(const GaussianState &rho);

/// Factorization G_N = G_1 G_2 G_3 of a pure state's pgf, where the spectrum
/// of S is (c_1/2, 1/(2c_1), ..., c_k/2, 1/(2c_k), 1/2, ..., 1/2).
struct PureFactorization {
    std::size_t k = 0;
    Vector cs;
    Vector betas;
    /// tau^2 along the c_j/2 and 1/(2c_j) eigenvectors.
    Vector tau_large_sq;
    Vector tau_small_sq;
    Vector gammas;
    Vector deltas;
    double poisson_mean = 0.0;

    /// Squeezing part: prod sqrt((1 - beta^2) / (1 - beta^2 x^2)).
    double g1(double x) const;
    /// Displacement along squeezed directions, written with tau^2.
    double g2(double x) const;
    /// Same factor written with gamma and delta.
    double g2_from_gamma_delta(double x) const;
    /// Poisson part exp(poisson_mean (x - 1)).
    double g3(double x) const;
};

/// InvalidArgument for mixed input, SpectralPairing if the spectrum does not
/// split into reciprocal pairs within 1e-8.
PureFactorization pure_factorization(const GaussianState &rho);

/// Pr(N = k) for k = 0..kmax, by a damped discrete Fourier transform of G_N on
/// the circle |x| = r with 8 (kmax + 1) nodes.
std::vector<double> pmf(const GaussianState &rho, int kmax);

struct DivisibilityReport {
    bool divisible_up_to_order = false;
    /// lambda_1..lambda_order in G_N(x) = exp(sum_k lambda_k (x^k - 1)).
    std::vector<double> levy_coeffs;
};

/// Taylor coefficients of log G_N around 0 up to the given order; divisible
/// when every coefficient is >= -1e-8.
DivisibilityReport infinite_divisibility_check(const GaussianState &rho, int order);
DivisibilityReport infinite_divisibility_check(const NumberPGF &pgf, int order);

}  // namespace gausscount

#endif
