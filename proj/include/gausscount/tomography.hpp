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

#ifndef GAUSSCOUNT_TOMOGRAPHY_HPP
#define GAUSSCOUNT_TOMOGRAPHY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gausscount/gaussian_state.hpp"
#include "gausscount/symplectic.hpp"

namespace gausscount {

/// mean_N(displace(rho, u)) and the same quantity written out in terms of the
/// means of rho.
double displaced_expectation(const GaussianState &rho, const Displacement &u);
double displaced_expectation_closed_form(const GaussianState &rho, const Displacement &u);

/// mean_N(conjugate(rho, L)) and its closed form
/// <N> + (Tr S(L^{-1}L^{-T} - I) + v^T (L^{-1}L^{-T} - I) v) / 2.
double conjugated_expectation(const GaussianState &rho, const SymplecticMatrix &l);
double conjugated_expectation_closed_form(const GaussianState &rho, const SymplecticMatrix &l);

enum class GateKind { Identity, Gp, Gq, Gsp1, Gsp2 };
enum class UnitaryLabel { H, K };

const char *gate_kind_name(GateKind kind);

/// One gate of the measurement schedule. Mode indices are 0-based.
struct GateDescriptor {
    GateKind kind = GateKind::Identity;
    std::vector<std::size_t> modes;
    double x = 0.0;      // Gsp1
    double alpha = 0.0;  // Gsp1
    UnitaryLabel unitary = UnitaryLabel::H;  // Gsp2
    double x1 = 0.0;     // Gsp2
    double x2 = 0.0;     // Gsp2

    static GateDescriptor identity();
    static GateDescriptor gp(std::size_t j);
    static GateDescriptor gq(std::size_t j);
    static GateDescriptor gsp1(std::size_t j, double x, double alpha);
    static GateDescriptor gsp2(std::size_t i, std::size_t j, UnitaryLabel u, double x1, double x2);

    /// Canonical text form, e.g. "Gsp2(0,1;H,1,2)". Parameters are rounded to 12
    /// significant digits so replayed JSON values match.
    std::string key() const;

    /// Mode indices distinct and < n, parameters from the protocol set.
    void validate(std::size_t n) const;

    /// The symplectic L with G = Gamma(tau(L)); only for Gsp1 / Gsp2.
    SymplecticMatrix gate_matrix(std::size_t n) const;
    /// Argument of the Weyl operator; only for Gp / Gq.
    Displacement displacement(std::size_t n) const;

    /// G rho G^dag.
    GaussianState transformed(const GaussianState &rho) const;
};

struct MeasurementPlan {
    std::size_t n = 0;
    std::vector<GateDescriptor> items;
};

/// identity, Gp(j), Gq(j), then Gsp1 per mode (two on the last mode), then four
/// Gsp2 per pair: n(2n + 3) items.
MeasurementPlan plan_state_tomography(std::size_t n);
/// identity, Gp(j), Gq(j): 2n + 1 items.
MeasurementPlan plan_means_only(std::size_t n);

struct MeasurementRecord {
    GateDescriptor descriptor;
    double value = 0.0;
    /// nullopt for an exact expectation value.
    std::optional<std::uint64_t> ensemble_size;
};

/// Exact when ensemble_size is empty; otherwise each value is perturbed by
/// N(0, var_N(G rho G^dag) / M) drawn from mt19937_64 seeded with seed.
struct Backend {
    std::optional<std::uint64_t> ensemble_size;
    std::uint64_t seed = 0;

    static Backend exact() {
        return {};
    }
    static Backend noisy(std::uint64_t m, std::uint64_t seed) {
        return {m, seed};
    }
};

inline constexpr const char *kRngName = "mt19937_64";

std::vector<MeasurementRecord> measure(const GaussianState &rho, const MeasurementPlan &plan,
                                       const Backend &backend);

/// Record values keyed by descriptor. InvalidArgument on duplicates.
class RecordIndex {
   public:
    RecordIndex(const std::vector<MeasurementRecord> &records);
    std::optional<double> find(const GateDescriptor &d) const;
    /// MissingRecords listing every absent descriptor of the plan.
    void require(const MeasurementPlan &plan) const;
    double at(const GateDescriptor &d) const;

   private:
    std::map<std::string, double> values_;
};

struct MeanSolution {
    Vector l;
    Vector m;
    double mean_number = 0.0;
};

MeanSolution solve_means(const RecordIndex &records, std::size_t n);
double solve_trace(const MeanSolution &means);
/// Covariance with the diagonal 2x2 blocks filled and zeros elsewhere.
Matrix solve_diagonal_blocks(const RecordIndex &records, const MeanSolution &means, double trace_s);
/// Fills the off-diagonal blocks of s in place.
void solve_offdiagonal_blocks(const RecordIndex &records, const MeanSolution &means, Matrix &s);

/// Largest deviation between the hard-coded coefficient tables of the solvers
/// and the same coefficients recomputed from the gate matrices.
double protocol_coefficient_deviation();

struct ReconstructionResult {
    GaussianState state;
    bool valid = false;
    double uncertainty_margin = 0.0;
    /// Record value minus the value predicted from the estimate, in record order.
    std::vector<double> residuals;
};

ReconstructionResult reconstruct_state(const std::vector<MeasurementRecord> &records, std::size_t n);

/// Predicted <G^dag N G> for every record.
std::vector<double> predict(const GaussianState &rho, const std::vector<MeasurementRecord> &records);

}  // namespace gausscount

#endif
