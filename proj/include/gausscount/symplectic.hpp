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

#ifndef GAUSSCOUNT_SYMPLECTIC_HPP
#define GAUSSCOUNT_SYMPLECTIC_HPP

#include <cstddef>
#include <span>

#include "gausscount/linalg.hpp"

namespace gausscount {

/// Quadrature ordering used everywhere in this library: (p_1..p_n, q_1..q_n).
/// Matrices written per mode as (p_1, q_1, p_2, q_2, ...) are called
/// "interleaved" and are converted once, at construction.

inline constexpr double kSymplecticTol = 1e-10;

/// J_2n = [[0, -I_n], [I_n, 0]] in block ordering.
Matrix make_form(std::size_t n);

/// True iff max|M^T J M - J| <= tol. Throws InvalidDimension for non-square or
/// odd-sized input.
bool is_symplectic(const Matrix &m, double tol = kSymplecticTol);

/// Permutation P with (interleaved vector) = P * (block vector).
Matrix interleave_permutation(std::size_t n);

/// A validated real symplectic matrix. Immutable.
class SymplecticMatrix {
   public:
    explicit SymplecticMatrix(Matrix entries, double tol = kSymplecticTol);

    static SymplecticMatrix identity(std::size_t n);

    std::size_t modes() const {
        return static_cast<std::size_t>(entries_.rows() / 2);
    }
    const Matrix &matrix() const {
        return entries_;
    }

    /// L^{-1} = -J L^T J; exact for symplectic L.
    SymplecticMatrix inverse() const;
    SymplecticMatrix transpose() const;

    SymplecticMatrix operator*(const SymplecticMatrix &rhs) const;

   private:
    struct Trusted {};
    SymplecticMatrix(Matrix entries, Trusted) : entries_(std::move(entries)) {
    }

    Matrix entries_;

    friend SymplecticMatrix tau(const SymplecticMatrix &l);
    friend SymplecticMatrix embed(const SymplecticMatrix &local,
                                  std::span<const std::size_t> modes, std::size_t n);
};

/// The 2x2 unitary [[a, b], [-conj(b), conj(a)]] with a = alpha_re + i alpha_im
/// and b = beta_re + i beta_im.
struct TwoModeUnitary {
    double alpha_re = 1.0;
    double alpha_im = 0.0;
    double beta_re = 0.0;
    double beta_im = 0.0;

    /// (1/sqrt2) [[1, 1], [-1, 1]]
    static TwoModeUnitary H();
    /// (1/sqrt2) [[i, 1], [-1, -i]]
    static TwoModeUnitary K();

    /// Throws InvalidUnitary unless |a|^2 + |b|^2 = 1 within 1e-12.
    void validate() const;
};

/// R(angle) diag(x, 1/x) R(-angle); x > 0.
SymplecticMatrix rotation_squeeze(double x, double angle);

/// The real 4x4 orthogonal matrix of U acting on (x1, y1, x2, y2), exactly as
/// laid out per mode. Interleaved ordering.
Matrix orthosymplectic_interleaved(const TwoModeUnitary &u);

/// Same matrix, reordered to block ordering.
SymplecticMatrix unitary_to_orthosymplectic(const TwoModeUnitary &u);

/// O diag(x1, 1/x1, x2, 1/x2) O^T, returned in block ordering. Symmetric.
SymplecticMatrix two_mode_gate_matrix(const TwoModeUnitary &u, double x1, double x2);

/// Closed form of the (mode 2 rows, mode 1 columns) block of
/// two_mode_gate_matrix(u, x1, x2), rows/columns ordered (p, q).
Eigen::Matrix2d offdiag_block(const TwoModeUnitary &u, double x1, double x2);

/// Same block of L^T L for L = two_mode_gate_matrix(u, x1, x2). Since
/// L^T L = two_mode_gate_matrix(u, x1^2, x2^2) this is offdiag_block at the
/// squared scales.
Eigen::Matrix2d gram_offdiag_block(const TwoModeUnitary &u, double x1, double x2);

/// Reads the (mode 2 rows, mode 1 columns) block of a 4x4 block-ordered matrix.
Eigen::Matrix2d extract_offdiag_block(const Matrix &m);

/// (L^{-1})^T = -J L J.
SymplecticMatrix tau(const SymplecticMatrix &l);

/// Places a 1- or 2-mode matrix on the listed modes of an n-mode system,
/// identity elsewhere. Mode indices are 0-based.
SymplecticMatrix embed(const SymplecticMatrix &local, std::span<const std::size_t> modes,
                       std::size_t n);

}  // namespace gausscount

#endif
