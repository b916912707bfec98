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

#ifndef GAUSSCOUNT_LINALG_HPP
#define GAUSSCOUNT_LINALG_HPP

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace gausscount {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Largest absolute entry; 0 for empty matrices.
double max_abs(const Matrix &m);

Matrix symmetrize(const Matrix &m);

/// Smallest eigenvalue of the Hermitian matrix re + i*im, where re is symmetric
/// and im antisymmetric.
double min_hermitian_eigenvalue(const Matrix &re, const Matrix &im);

/// Smallest eigenvalue of a real symmetric matrix.
double min_symmetric_eigenvalue(const Matrix &m);

}  // namespace gausscount

#endif
