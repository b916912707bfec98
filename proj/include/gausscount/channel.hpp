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

#ifndef GAUSSCOUNT_CHANNEL_HPP
#define GAUSSCOUNT_CHANNEL_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gausscount/gaussian_state.hpp"
#include "gausscount/tomography.hpp"

namespace gausscount {

inline constexpr double kChannelTol = 1e-9;

/// Smallest eigenvalue of the Hermitian matrix B + i(A^T J A - J).
double channel_constraint_margin(const Matrix &a, const Matrix &b);

/// B symmetric within 1e-12, B >= -1e-9 and B + i(A^T J A - J) >= -1e-9.
bool validate_channel(const Matrix &a, const Matrix &b);

/// The Gaussian channel K(A, B): (l'; -m') = A^T (l; -m), S' = A^T S A + B/2.
class GaussianChannel {
   public:
    /// InvalidDimension on shape errors, InvalidChannel when validate_channel fails.
    GaussianChannel(Matrix a, Matrix b);
    /// Shape checks only; for raw estimates.
    static GaussianChannel unvalidated(Matrix a, Matrix b);
    static GaussianChannel identity(std::size_t n);

    std::size_t modes() const {
        return static_cast<std::size_t>(a_.rows() / 2);
    }
    const Matrix &a() const {
        return a_;
    }
    const Matrix &b() const {
        return b_;
    }

   private:
    struct Unchecked {};
    GaussianChannel(Matrix a, Matrix b, Unchecked);

    Matrix a_;
    Matrix b_;
};

GaussianState apply(const GaussianChannel &channel, const GaussianState &rho);

/// Applying first then second equals applying
/// K(A1 A2, A2^T B1 A2 + B2).
GaussianChannel compose(const GaussianChannel &first, const GaussianChannel &second);

/// coherent(i e_j / sqrt2) for j < n, then coherent(e_j / sqrt2).
std::vector<GaussianState> probe_states(std::size_t n);

/// 6n^2 + 3n - 1
std::size_t channel_measurement_count(std::size_t n);

/// Probe 0 gets the full state plan, the other 2n - 1 probes the means-only plan.
std::vector<MeasurementPlan> channel_plans(std::size_t n);

/// Seed used for the noisy backend of probe k.
std::uint64_t probe_seed(std::uint64_t seed, std::size_t probe);

struct ChannelEstimate {
    Matrix a_hat;
    Matrix b_hat;
    std::size_t measurement_count = 0;
    /// Per row of A (that is, per probe): max |record - prediction| under the estimate.
    std::vector<double> per_row_residuals;
    /// max |B_hat - B_hat^T| before symmetrization.
    double b_asymmetry = 0.0;
    bool valid = false;
    double constraint_margin = 0.0;
};

/// probe_records[k] holds the records measured on the output of probe k.
ChannelEstimate reconstruct_channel(const std::vector<std::vector<MeasurementRecord>> &probe_records,
                                    std::size_t n);

/// Runs every probe through the channel and measures the outputs with backend.
std::vector<std::vector<MeasurementRecord>> measure_channel(const GaussianChannel &channel,
                                                            const Backend &backend);

ChannelEstimate reconstruct_channel(const GaussianChannel &black_box, const Backend &backend);

}  // namespace gausscount

#endif
