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

#include "gausscount/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "gausscount/error.hpp"

namespace gausscount {

namespace {

void require_unit_interval(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("pgf argument must be in [0, 1], got {}", x));
    }
}

}  // namespace

NumberPGF spectral_data(const GaussianState &rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.covariance());
    const Vector v = rho.mean_vector();
    const auto dim = v.size();
    NumberPGF out{Vector(dim), Vector(dim), Vector(dim)};
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Eigen::Index src = dim - 1 - j;
        const double lambda = es.eigenvalues()(src);
        out.lambdas(j) = lambda;
        out.taus(j) = es.eigenvectors().col(src).dot(v);
        out.alphas(j) = (lambda - 0.5) / (lambda + 0.5);
    }
    return out;
}

double log_total_pgf(const NumberPGF &pgf, double x) {
    require_unit_interval(x);
    if (x == 1.0) {
        return 0.0;
    }
    double acc = 0.0;
    for (Eigen::Index j = 0; j < pgf.alphas.size(); ++j) {
        const double a = pgf.alphas(j);
        const double t2 = pgf.taus(j) * pgf.taus(j);
        const double den = 1.0 - a * x;
        acc += 0.5 * std::log((1.0 - a) / den) - 0.5 * t2 * (1.0 - x) * (1.0 - a) / den;
    }
    return acc;
}

double total_pgf(const NumberPGF &pgf, double x) {
    return std::exp(log_total_pgf(pgf, x));
}

double total_pgf(const GaussianState &rho, double x) {
    require_unit_interval(x);
    return total_pgf(spectral_data(rho), x);
}

Complex total_pgf(const NumberPGF &pgf, Complex x) {
    Complex g(1.0, 0.0);
    for (Eigen::Index j = 0; j < pgf.alphas.size(); ++j) {
        const double a = pgf.alphas(j);
        const double t2 = pgf.taus(j) * pgf.taus(j);
        const Complex den = 1.0 - a * x;
        g *= std::sqrt((1.0 - a) / den) * std::exp(-0.5 * t2 * (1.0 - x) * (1.0 - a) / den);
    }
    return g;
}

double joint_pgf(const GaussianState &rho, const Vector &xs) {
    const auto n = static_cast<Eigen::Index>(rho.modes());
    if (xs.size() != n) {
        throw Error(ErrorCode::InvalidDimension,
                    fmt::format("expected {} pgf arguments, got {}", n, xs.size()));
    }
    Matrix m = rho.covariance();
    double prod = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double x = xs(j);
        if (!(x >= 0.0 && x < 1.0)) {
            throw Error(ErrorCode::InvalidArgument,
                        fmt::format("joint pgf argument x[{}] must be in [0, 1), got {}", j, x));
        }
        const double d = 0.5 * (1.0 + x) / (1.0 - x);
        m(j, j) += d;
        m(n + j, n + j) += d;
        prod *= 1.0 - x;
    }
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::Numerical, "S + D is not positive definite");
    }
    const Vector v = rho.mean_vector();
    const double quad = v.dot(llt.solve(v));
    const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return std::exp(-0.5 * quad - 0.5 * logdet) / prod;
}

double prob_zero(const GaussianState &rho) {
    return total_pgf(rho, 0.0);
}

double mean_N(const GaussianState &rho) {
    const double n = static_cast<double>(rho.modes());
    return 0.5 * (rho.covariance().trace() - n + rho.l().squaredNorm() + rho.m().squaredNorm());
}

double var_N(const GaussianState &rho) {
    const Matrix &s = rho.covariance();
    const Matrix id = Matrix::Identity(s.rows(), s.cols());
    const Vector v = rho.mean_vector();
    return 0.5 * ((s - 0.5 * id) * (s + 0.5 * id)).trace() + v.dot(s * v);
}

double PureFactorization::g1(double x) const {
    double g = 1.0;
    for (Eigen::Index j = 0; j < betas.size(); ++j) {
        const double b2 = betas(j) * betas(j);
        g *= std::sqrt((1.0 - b2) / (1.0 - b2 * x * x));
    }
    return g;
}

double PureFactorization::g2(double x) const {
    double e = 0.0;
    for (Eigen::Index j = 0; j < betas.size(); ++j) {
        const double b = betas(j);
        e += tau_large_sq(j) * (x - 1.0) * (1.0 - b) / (1.0 - b * x) +
             tau_small_sq(j) * (x - 1.0) * (1.0 + b) / (1.0 + b * x);
    }
    return std::exp(0.5 * e);
}

double PureFactorization::g2_from_gamma_delta(double x) const {
    double e = 0.0;
    for (Eigen::Index j = 0; j < betas.size(); ++j) {
        const double b = betas(j), g = gammas(j), d = deltas(j);
        e += (b * (g - d) * (x * x - 1.0) + (g * (1.0 - b) + d * (1.0 + b)) * (x - 1.0)) /
             (1.0 - b * b * x * x);
    }
    return std::exp(0.5 * e);
}

double PureFactorization::g3(double x) const {
    return std::exp(poisson_mean * (x - 1.0));
}

PureFactorization pure_factorization(const GaussianState &rho) {
    if (!purity_check(rho)) {
        throw Error(ErrorCode::InvalidArgument, "pure_factorization needs a pure state");
    }
    const NumberPGF spectrum = spectral_data(rho);
    const auto dim = spectrum.lambdas.size();
    constexpr double kUnitTol = 1e-9;
    constexpr double kPairTol = 1e-8;

    Eigen::Index k = 0;
    while (k < dim && spectrum.lambdas(k) > 0.5 + kUnitTol) {
        ++k;
    }
    if (2 * k > dim) {
        throw Error(ErrorCode::SpectralPairing, "more eigenvalues above 1/2 than below");
    }
    PureFactorization f;
    f.k = static_cast<std::size_t>(k);
    f.cs.resize(k);
    f.betas.resize(k);
    f.tau_large_sq.resize(k);
    f.tau_small_sq.resize(k);
    f.gammas.resize(k);
    f.deltas.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        // j-th largest pairs with j-th smallest.
        const Eigen::Index partner = dim - 1 - j;
        const double big = spectrum.lambdas(j);
        const double small = spectrum.lambdas(partner);
        if (std::abs(4.0 * big * small - 1.0) > kPairTol) {
            throw Error(ErrorCode::SpectralPairing,
                        fmt::format("eigenvalues {} and {} are not a reciprocal pair (4 ab - 1 = {:.3e})",
                                    big, small, 4.0 * big * small - 1.0));
        }
        const double c = 2.0 * big;
        const double b = (c - 1.0) / (c + 1.0);
        f.cs(j) = c;
        f.betas(j) = b;
        f.tau_large_sq(j) = spectrum.taus(j) * spectrum.taus(j);
        f.tau_small_sq(j) = spectrum.taus(partner) * spectrum.taus(partner);
        f.gammas(j) = f.tau_large_sq(j) * (1.0 - b);
        f.deltas(j) = f.tau_small_sq(j) * (1.0 + b);
    }
    double poisson = 0.0;
    for (Eigen::Index r = k; r < dim - k; ++r) {
        if (std::abs(spectrum.lambdas(r) - 0.5) > kPairTol) {
            throw Error(ErrorCode::SpectralPairing,
                        fmt::format("unpaired eigenvalue {} in a pure state spectrum", spectrum.lambdas(r)));
        }
        poisson += spectrum.taus(r) * spectrum.taus(r);
    }
    f.poisson_mean = 0.5 * poisson;
    return f;
}

std::vector<double> pmf(const GaussianState &rho, int kmax) {
    if (kmax < 0) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("kmax must be >= 0, got {}", kmax));
    }
    const NumberPGF spectrum = spectral_data(rho);
    const double amax = spectrum.alphas.cwiseAbs().maxCoeff();
    double r = amax > 0.0 ? std::min(0.9, 0.5 * (1.0 + 1.0 / amax)) : 0.9;
    // Roundoff in entry k grows like eps / r^k; keep r^kmax >= 1e-6 so large kmax stays clean.
    // Aliasing goes like r^(8 kmax) and is negligible either way.
    if (kmax > 0) {
        r = std::max(r, std::pow(1e-6, 1.0 / kmax));
    }
    const auto nodes = static_cast<std::size_t>(8 * (kmax + 1));
    const double step = 2.0 * std::numbers::pi / static_cast<double>(nodes);

    std::vector<Complex> samples(nodes);
    for (std::size_t m = 0; m < nodes; ++m) {
        samples[m] = total_pgf(spectrum, std::polar(r, step * static_cast<double>(m)));
    }
    std::vector<double> out(static_cast<std::size_t>(kmax) + 1);
    double scale = 1.0;  // r^-k
    for (std::size_t k = 0; k < out.size(); ++k) {
        Complex acc(0.0, 0.0);
        for (std::size_t m = 0; m < nodes; ++m) {
            acc += samples[m] * std::polar(1.0, -step * static_cast<double>((m * k) % nodes));
        }
        const double p = acc.real() / static_cast<double>(nodes) * scale;
        if (p < -1e-9) {
            throw Error(ErrorCode::Numerical,
                        fmt::format("pmf extraction produced P(N={}) = {:.3e} < 0", k, p));
        }
        out[k] = std::max(p, 0.0);
        scale /= r;
    }
    return out;
}

DivisibilityReport infinite_divisibility_check(const NumberPGF &pgf, int order) {
    if (order < 1) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("order must be >= 1, got {}", order));
    }
    // Per factor: -1/2 log(1 - a x) = sum_k a^k x^k / (2k), and
    // -(t^2/2)(1-a)(1-x)/(1-a x) contributes (t^2/2)(1-a)^2 a^{k-1} x^k for k >= 1.
    DivisibilityReport report;
    report.levy_coeffs.assign(static_cast<std::size_t>(order), 0.0);
    for (Eigen::Index j = 0; j < pgf.alphas.size(); ++j) {
        const double a = pgf.alphas(j);
        const double t2 = pgf.taus(j) * pgf.taus(j);
        double a_pow_prev = 1.0;  // a^{k-1}
        for (int k = 1; k <= order; ++k) {
            const double a_pow = a_pow_prev * a;
            report.levy_coeffs[static_cast<std::size_t>(k - 1)] +=
                0.5 * a_pow / k + 0.5 * t2 * (1.0 - a) * (1.0 - a) * a_pow_prev;
            a_pow_prev = a_pow;
        }
    }
    report.divisible_up_to_order = std::all_of(report.levy_coeffs.begin(), report.levy_coeffs.end(),
                                               [](double c) { return c >= -1e-8; });
    return report;
}

DivisibilityReport infinite_divisibility_check(const GaussianState &rho, int order) {
    return infinite_divisibility_check(spectral_data(rho), order);
}

}  // namespace gausscount
