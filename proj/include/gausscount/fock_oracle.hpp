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

#ifndef GAUSSCOUNT_FOCK_ORACLE_HPP
#define GAUSSCOUNT_FOCK_ORACLE_HPP

#include <cstddef>
#include <variant>
#include <vector>

#include <Eigen/Sparse>

#include "gausscount/gaussian_state.hpp"
#include "gausscount/linalg.hpp"
#include "gausscount/symplectic.hpp"

namespace gausscount::fock {

using SparseCMatrix = Eigen::SparseMatrix<Complex>;

/// Basis states with an occupation at or above this index count as the edge.
std::size_t edge_start(std::size_t dim);

/// An operator on 1 or 2 modes truncated to occupations 0..dim-1 per mode.
/// Two-mode basis: |k1> (x) |k2> at index k1 * dim + k2.
struct FockOperator {
    std::size_t modes = 1;
    std::size_t dim = 0;
    SparseCMatrix entries;
};

/// A density matrix in the same basis.
struct FockState {
    std::size_t modes = 1;
    std::size_t dim = 0;
    CMatrix rho;
};

FockOperator ladder(std::size_t dim);
FockOperator identity(std::size_t modes, std::size_t dim);

/// exp(u a^dag - conj(u) a); TruncationRisk unless |u|^2 <= dim/10.
FockOperator weyl(Complex u, std::size_t dim);
/// exp((conj(z) a^2 - z a^dag^2) / 2); TruncationRisk unless sinh^2|z| <= dim/10.
FockOperator squeeze(Complex z, std::size_t dim);
/// exp(-i theta a^dag a)
FockOperator rotate(double theta, std::size_t dim);
/// exp(theta (e^{i phi} a1^dag a2 - e^{-i phi} a1 a2^dag)), built sector by
/// sector in total occupation so it stays exactly unitary after truncation.
FockOperator beamsplitter(double theta, double phi, std::size_t dim);

/// Lifts a one-mode operator onto mode 0 or 1 of a two-mode system.
FockOperator on_mode(const FockOperator &single, std::size_t mode);

/// max |U^dag U - I| over basis states with every occupation below edge_start.
double unitarity_defect(const FockOperator &u);

FockState vacuum_state(std::size_t modes, std::size_t dim);
/// (1 - e^{-t}) e^{-t k} renormalized over 0..dim-1; t = +inf is the vacuum.
FockState thermal_fock(double t, std::size_t dim);
FockState tensor(const FockState &a, const FockState &b);

FockState apply(const FockOperator &u, const FockState &state);

/// Probability mass on basis states with some occupation at the edge.
double edge_mass(const FockState &state);

/// P(N = k) for k = 0..modes*(dim-1). TruncationRisk when edge mass exceeds
/// edge_tol.
std::vector<double> number_distribution(const FockState &state, double edge_tol = 1e-10);
double pgf_oracle(const FockState &state, double x, double edge_tol = 1e-10);

/// Means and covariance of (p, -q) computed from the density matrix, with
/// p = (a - a^dag) / (i sqrt2) and q = (a + a^dag) / sqrt2.
GaussianState quadrature_moments(const FockState &state);

/// Given the Heisenberg action U^dag a U = V a + W a^dag, the symplectic L with
/// U rho U^dag = conjugate(rho, L) on Gaussian states.
SymplecticMatrix heisenberg_to_symplectic(const CMatrix &v, const CMatrix &w);

struct DisplaceGate {
    std::size_t mode = 0;
    Complex u;
};
struct SqueezeGate {
    std::size_t mode = 0;
    double r = 0.0;
    double phi = 0.0;
};
struct RotateGate {
    std::size_t mode = 0;
    double theta = 0.0;
};
struct BeamsplitterGate {
    std::size_t mode_a = 0;
    std::size_t mode_b = 1;
    double theta = 0.0;
    double phi = 0.0;
};
using Gate = std::variant<DisplaceGate, SqueezeGate, RotateGate, BeamsplitterGate>;

/// A gate sequence on vacuum (empty thermal_t) or thermal input.
struct GateScript {
    std::size_t modes = 1;
    std::size_t dim = 64;
    std::vector<double> thermal_t;
    std::vector<Gate> gates;

    /// InvalidArgument / InvalidDimension on malformed scripts.
    void validate() const;
};

GaussianState run_analytic(const GateScript &script);
/// Fails with TruncationRisk as soon as a gate guard trips or the edge mass
/// exceeds edge_tol after any gate.
FockState run_fock(const GateScript &script, double edge_tol = 1e-10);

struct OracleComparison {
    std::size_t kmax = 0;
    double pmf_max_diff = 0.0;
    double pgf_max_diff = 0.0;
    double mean_diff = 0.0;
    double var_diff = 0.0;
    double edge_mass = 0.0;
    std::vector<double> pmf_analytic;
    std::vector<double> pmf_fock;
    bool pass = false;
};

/// Compares counting.pmf of the tracked Gaussian state with the Fock number
/// distribution on entries 0..dim-1 and the pgfs on x_grid.
OracleComparison compare_script(const GateScript &script, const std::vector<double> &x_grid,
                                double tol = 1e-6);

}  // namespace gausscount::fock

#endif
