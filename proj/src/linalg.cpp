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

#include "gausscount/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace gausscount {

double max_abs(const Matrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().maxCoeff();
}

Matrix symmetrize(const Matrix &m) {
    return 0.5 * (m + m.transpose());
}

double min_hermitian_eigenvalue(const Matrix &re, const Matrix &im) {
    CMatrix h = re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double min_symmetric_eigenvalue(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace gausscount
