#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "onto/bitset.hpp"
#include "onto/graph.hpp"
#include "onto/limits.hpp"
#include "onto/rational.hpp"
#include "onto/simplex.hpp"
#include "onto/states.hpp"

namespace onto {

/// Ontic point of a finite model: one definite outcome per basis. The
/// response function it induces, xi_M(a | lambda) = [outcomes[M] == a], sums
/// to one over the outcomes of every basis.
struct DeterministicAssignment {
    std::vector<std::uint32_t> outcomes;

    friend bool operator==(const DeterministicAssignment&, const DeterministicAssignment&) = default;
};

/// d^{#bases}; throws CapacityError above `limits.assignment_cap`.
std::uint64_t assignment_count(std::size_t dim, std::size_t bases, const Limits& limits = {});

/// All d^{#bases} assignments in mixed-radix order, basis 0 most significant.
std::vector<DeterministicAssignment> enumerate_assignments(std::span<const MeasurementBasis> bases,
                                                           const Limits& limits = {});

/// Probability vector over ontic points. Dense up to kSparseThreshold points,
/// sorted (index, mass) pairs above it.
class Measure {
public:
    static constexpr std::size_t kSparseThreshold = std::size_t{1} << 16;

    Measure() = default;
    static Measure from_dense(std::vector<double> masses);
    static Measure from_entries(std::size_t points, std::vector<std::pair<std::size_t, double>> entries);

    std::size_t points() const noexcept { return points_; }
    bool is_sparse() const noexcept { return sparse_; }
    double at(std::size_t lambda) const;
    double total() const;
    double mass(const Bitset& subset) const;
    std::vector<double> to_dense() const;
    /// Support as a bitset.
    Bitset support(double threshold = 0.0) const;

    template <class F>
    void for_each_nonzero(F&& f) const {
        if (sparse_) {
            for (const auto& [i, v] : entries_)
                if (v != 0.0) f(i, v);
        } else {
            for (std::size_t i = 0; i < dense_.size(); ++i)
                if (dense_[i] != 0.0) f(i, dense_[i]);
        }
    }

private:
    std::size_t points_ = 0;
    bool sparse_ = false;
    std::vector<double> dense_;
    std::vector<std::pair<std::size_t, double>> entries_;
};

/// Finite ontological model: the ontic space is every deterministic
/// assignment over `bases` (power-set sigma-algebra), with one measure per
/// preparation. Without bases it is the single empty assignment.
class FiniteOntModel {
public:
    /// Throws InvalidArgument unless every measure has one entry per ontic
    /// point, is nonnegative and sums to 1 within 1e-9.
    FiniteOntModel(std::vector<MeasurementBasis> bases, std::vector<PureState> preparations,
                   std::vector<Measure> measures, const Limits& limits = {});

    std::size_t dim() const noexcept { return dim_; }
    std::size_t ontic_size() const noexcept { return ontic_size_; }
    std::span<const MeasurementBasis> bases() const noexcept { return bases_; }
    std::span<const PureState> preparations() const noexcept { return preparations_; }
    const Measure& measure(std::size_t preparation) const;

    /// Outcome index of basis `basis` at ontic point `lambda`.
    std::size_t outcome(std::size_t lambda, std::size_t basis) const;
    DeterministicAssignment assignment(std::size_t lambda) const;

private:
    std::size_t dim_ = 0;
    std::size_t ontic_size_ = 0;
    std::vector<std::size_t> stride_;
    std::vector<MeasurementBasis> bases_;
    std::vector<PureState> preparations_;
    std::vector<Measure> measures_;
};

/// Ontic points whose assignment gives `outcome` for basis `basis`.
Bitset gamma_set(const FiniteOntModel& model, std::size_t basis, std::size_t outcome);

/// Intersection of gamma_set over every basis containing `state` (up to
/// phase), at the outcome matching `state`. Throws InvalidArgument when no
/// basis contains it.
Bitset gamma_cap(const FiniteOntModel& model, const PureState& state);

/// Largest |mu_psi(Gamma^a_M) - |<a|psi>|^2| over preparations, bases and outcomes.
double born_check(const FiniteOntModel& model);

/// L_C = sum_lambda min(mu_i, mu_j).
double classical_overlap(const FiniteOntModel& model, std::size_t i, std::size_t j);

struct VariationalDistance {
    double value = 0.0;
    /// (1 + D_C) / 2: best chance of naming the preparation from lambda.
    double guessing_probability = 0.0;
};

/// D_C = sum_lambda max(0, mu_i - mu_j).
VariationalDistance variational_distance(const FiniteOntModel& model, std::size_t i, std::size_t j);

struct Proposition1Check {
    bool holds = false;
    /// mu_psi(Gamma) - L_C(psi, phi).
    double slack = 0.0;
    double classical_overlap = 0.0;
    double psi_mass = 0.0;
};

/// Checks L_C(psi, phi) <= mu_psi(Gamma) + 1e-9 for a set Gamma of
/// mu_phi-measure one. Throws InvalidArgument if mu_phi(Gamma) < 1 - 1e-9.
Proposition1Check proposition1_check(const FiniteOntModel& model, std::size_t psi, std::size_t phi,
                                     const Bitset& gamma);

// --- overlap maximisation ---------------------------------------------------

enum class Arithmetic { floating, exact };

struct LpOptions {
    Arithmetic arithmetic = Arithmetic::floating;
    Limits limits{};
    lp::Options simplex{};
    /// Reject coverings that miss an edge of the orthogonality graph of V.
    bool check_cover = true;
};

struct LpStats {
    std::size_t iterations = 0;
    std::size_t variables = 0;
    std::size_t constraints = 0;
    std::size_t ontic_points = 0;
    double duality_gap = 0.0;
    double primal_residual = 0.0;
    double dual_infeasibility = 0.0;
    double seconds = 0.0;
};

struct LpResult {
    double value = 0.0;
    /// Set in exact mode.
    std::optional<Rational> exact_value;
    FiniteOntModel model;
    /// Preparation index of psi in `model`.
    std::size_t psi_index = 0;
    /// Preparation index in `model` of each member of V, in input order.
    std::vector<std::size_t> family_index;
    /// Exact L_C(psi, a) per member of V, in exact mode.
    std::vector<Rational> exact_overlaps;
    LpStats stats;
};

/// Maximum of sum_{a in V} L_C(psi, a) over finite models on the covering
/// bases that reproduce the Born rule for psi and every member of V.
///
/// Variables are mu_p(lambda) for every preparation and t_{a,lambda} <=
/// min(mu_psi(lambda), mu_a(lambda)); the objective is sum t. Ontic points
/// where a preparation has a zero-probability outcome are dropped from that
/// preparation's support before solving, which leaves the optimum unchanged.
/// psi shares its measure with the first member of V on the same ray.
///
/// Throws InvalidArgument if the covering misses an edge, CapacityError
/// past the assignment cap, NumericalError if the program is infeasible or
/// the solver fails.
LpResult max_total_overlap_lp(const PureState& psi, std::span<const PureState> family, const CoveringSet& covering,
                              const LpOptions& options = {});

struct OverlapRow {
    std::size_t member = 0;
    double classical = 0.0;
    double quantum = 0.0;
    /// L_C / L_Q; empty when L_Q = 0.
    std::optional<double> ratio;
};

struct OverlapReport {
    std::vector<OverlapRow> pairs;
    double total_classical = 0.0;
    double alpha_bound = 0.0;
    /// (1/|V|) sum of defined ratios.
    double kbar = 0.0;
    std::size_t ratio_terms = 0;
};

OverlapReport overlap_report(const FiniteOntModel& model, std::size_t psi_index,
                             std::span<const std::size_t> family_index, double alpha_bound);
OverlapReport overlap_report(const LpResult& result, double alpha_bound);

}  // namespace onto
