#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "onto/graph.hpp"
#include "onto/limits.hpp"

namespace onto {

/// Where an independence-number value used in a bound came from.
struct AlphaProvenance {
    enum class Kind { exact, lower_bound, frankl_rodl };
    Kind kind = Kind::exact;
    double epsilon = 0.0;  // meaningful for frankl_rodl only

    /// "exact", "lower_bound" or "frankl_rodl(<epsilon>)".
    std::string tag() const;
};

struct BoundReport {
    int d = 0;
    int d_tilde = 0;
    double epsilon = 0.0;
    double alpha_used = 0.0;
    AlphaProvenance alpha_provenance;
    double min_born = 0.0;
    double corollary_value = 0.0;
    double theorem2_value = 0.0;
    double c = 0.0;
    bool embedded = false;
    /// min(corollary_value, theorem2_value) >= 1: the bound says nothing.
    bool vacuous = false;
};

/// Closed form reported by theorem2_bound, with the alternative coefficient
/// forms that appear in the literature for the same result.
inline constexpr const char* kTheorem2Form = "2*d*exp(-c*d)";
inline constexpr const char* kTheorem2AlternativeForms[] = {"d*exp(-c*d)", "2*exp(-c*d)"};

/// 2 alpha / (n_states * min_born): the cap on the average overlap ratio.
/// Throws InvalidArgument when min_born is 0 (bound undefined).
double corollary_bound(double alpha, double n_states, double min_born);

struct Theorem2Bound {
    double value = 0.0;
    double c = 0.0;
};

/// 2 d e^{-c d} with c = ln 2 - ln(2 - epsilon). Requires d divisible by 4;
/// other dimensions go through embedded_bound.
Theorem2Bound theorem2_bound(int d, double epsilon);

/// The d divisible by 4 bound applied to d~ = 4 floor(d/4), for any d >= 4.
BoundReport embedded_bound(int d, double epsilon);

/// Existence bound: some family member has k(psi, a) <= kbar.
double single_pair_bound(double kbar);

/// One sweep row: the bound report plus the prior 4/(d-1) scaling and, where
/// the Hadamard family can be enumerated, the certified weight-shell lower
/// bound on alpha.
struct SweepRow {
    BoundReport report;
    double barrett_comparison = 0.0;
    std::optional<std::size_t> alpha_lower_bound;
    /// corollary_bound evaluated at alpha_lower_bound: no valid alpha can do better.
    std::optional<double> lower_bound_corollary;
    /// (2 - epsilon)^d~ is below a certified lower bound, so epsilon is not a
    /// valid Frankl-Rodl constant at this d~.
    bool epsilon_contradicted = false;
};

struct SweepOptions {
    Limits limits{};
    /// Exact alpha is computed for d~ up to this value and used in corollary_value.
    int exact_alpha_max_d = 8;
    double alpha_budget_seconds = 30.0;
};

std::vector<SweepRow> scaling_sweep(std::span<const int> dims, double epsilon, const SweepOptions& options = {});

/// Parses "a..b" or "a" into the inclusive integer range.
std::vector<int> parse_dim_range(const std::string& text);

}  // namespace onto
