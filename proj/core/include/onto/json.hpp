#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "onto/bounds.hpp"
#include "onto/graph.hpp"
#include "onto/ksqubit.hpp"
#include "onto/ontomodel.hpp"
#include "onto/states.hpp"

namespace onto {

using json = nlohmann::json;

/// Shortest decimal string that round-trips the double.
std::string format_double(double v);

// {"dim": d, "re": [...], "im": [...]}
void to_json(json& j, const PureState& s);
PureState state_from_json(const json& j);

// {"dim": d, "bits": "0101..."}, most significant coordinate first.
void to_json(json& j, const SignVector& v);
SignVector sign_vector_from_json(const json& j);

/// {"d", "vertices", "edges"}; vertices are bit strings for sign-vector graphs.
json graph_to_json(const OrthogonalityGraph& graph);
OrthogonalityGraph graph_from_json(const json& j);
/// "degree,count" rows.
std::string degree_histogram_csv(const OrthogonalityGraph& graph);

json covering_to_json(const CoveringSet& cover);

/// Timing is left out unless asked for, so reports stay byte-reproducible.
json independence_to_json(const IndependenceResult& r, bool include_timing = false);

void to_json(json& j, const BoundReport& r);

inline const std::vector<std::string>& sweep_csv_columns() {
    static const std::vector<std::string> columns{
        "d",           "d_tilde",         "epsilon",           "c",
        "alpha_used",  "alpha_status",    "corollary_value",   "theorem2_value",
        "barrett_comparison", "vacuous",  "alpha_lower_bound", "lower_bound_corollary",
        "epsilon_contradicted"};
    return columns;
}
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
json sweep_to_json(const std::vector<SweepRow>& rows);

/// {"d", "bases", "assignment_count", "preparations", "measures"}.
json model_to_json(const FiniteOntModel& model);
FiniteOntModel model_from_json(const json& j, const Limits& limits = {});

json overlap_report_to_json(const OverlapReport& report);
json lp_result_to_json(const LpResult& result, const OverlapReport& report, bool include_timing = false);

std::string ks_grid_to_csv(const std::vector<ks::GridRow>& rows);

}  // namespace onto
