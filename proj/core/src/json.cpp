#include "onto/json.hpp"

#include <array>
#include <charconv>
#include <sstream>

#include "onto/error.hpp"

namespace onto {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw Error("cannot format double");
    return std::string(buf.data(), end);
}

void to_json(json& j, const PureState& s) {
    json re = json::array();
    json im = json::array();
    for (const Complex& z : s.amplitudes()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    j = json{{"dim", s.dim()}, {"re", re}, {"im", im}};
}

PureState state_from_json(const json& j) {
    try {
        if (j.contains("bits")) return sign_vector_from_json(j).to_state();
        const auto dim = j.at("dim").get<std::size_t>();
        const auto& re = j.at("re");
        const json im = j.contains("im") ? j.at("im") : json::array();
        if (re.size() != dim || (!im.empty() && im.size() != dim))
            throw InvalidArgument("state JSON arrays do not match dim");
        std::vector<Complex> amps(dim);
        for (std::size_t i = 0; i < dim; ++i)
            amps[i] = Complex(re[i].get<double>(), im.empty() ? 0.0 : im[i].get<double>());
        return make_state(amps);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed state JSON: ") + e.what());
    }
}

void to_json(json& j, const SignVector& v) { j = json{{"dim", v.dim}, {"bits", v.bit_string()}}; }

SignVector sign_vector_from_json(const json& j) {
    try {
        const auto bits = j.at("bits").get<std::string>();
        auto v = SignVector::from_bit_string(bits);
        if (j.contains("dim") && j.at("dim").get<int>() != v.dim)
            throw InvalidArgument("sign vector dim does not match its bit string");
        return v;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed sign vector JSON: ") + e.what());
    }
}

json graph_to_json(const OrthogonalityGraph& graph) {
    json vertices = json::array();
    if (!graph.sign_vectors().empty())
        for (const auto& v : graph.sign_vectors()) vertices.push_back(v.bit_string());
    else
        for (const auto& s : graph.vertices()) vertices.push_back(s);
    json edges = json::array();
    for (const auto& [a, b] : graph.edges()) edges.push_back({a, b});
    return json{{"d", graph.dim()}, {"vertices", vertices}, {"edges", edges}};
}

OrthogonalityGraph graph_from_json(const json& j) {
    try {
        const auto& verts = j.at("vertices");
        if (!verts.empty() && verts.front().is_string()) {
            std::vector<SignVector> signs;
            for (const auto& v : verts) signs.push_back(SignVector::from_bit_string(v.get<std::string>()));
            auto g = orthogonality_graph(signs);
            if (j.contains("edges") && g.edge_count() != j.at("edges").size())
                throw InvalidArgument("graph JSON edge list disagrees with the vertex states");
            return g;
        }
        std::vector<PureState> states;
        for (const auto& v : verts) states.push_back(state_from_json(v));
        return orthogonality_graph(states, DuplicatePolicy::allow);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed graph JSON: ") + e.what());
    }
}

std::string degree_histogram_csv(const OrthogonalityGraph& graph) {
    std::ostringstream out;
    out << "degree,count\n";
    for (const auto& [deg, count] : graph.degree_histogram()) out << deg << ',' << count << '\n';
    return out.str();
}

json covering_to_json(const CoveringSet& cover) {
    json bases = json::array();
    for (const auto& b : cover.bases) {
        json elems = json::array();
        json verts = json::array();
        for (std::size_t k = 0; k < b.elements.size(); ++k) {
            elems.push_back(b.elements[k]);
            verts.push_back(k < b.vertices.size() && b.vertices[k] ? json(*b.vertices[k]) : json(nullptr));
        }
        bases.push_back({{"id", b.id}, {"elements", elems}, {"vertices", verts}});
    }
    json cover_map = json::array();
    for (const auto& [edge, id] : cover.edge_cover) cover_map.push_back({edge.first, edge.second, id});
    return json{{"bases", bases}, {"edge_cover", cover_map}};
}

json independence_to_json(const IndependenceResult& r, bool include_timing) {
    json j{{"value", r.value}, {"status", to_string(r.status)}, {"witness", r.witness}, {"nodes", r.nodes}};
    if (include_timing) j["elapsed_seconds"] = r.elapsed_seconds;
    return j;
}

void to_json(json& j, const BoundReport& r) {
    json alternatives = json::array();
    for (const char* form : kTheorem2AlternativeForms) alternatives.push_back(form);
    j = json{{"d", r.d},
             {"d_tilde", r.d_tilde},
             {"epsilon", r.epsilon},
             {"c", r.c},
             {"alpha_used", r.alpha_used},
             {"alpha_status", r.alpha_provenance.tag()},
             {"min_born", r.min_born},
             {"corollary_value", r.corollary_value},
             {"theorem2_value", r.theorem2_value},
             {"theorem2_form", kTheorem2Form},
             {"theorem2_alternative_forms", alternatives},
             {"embedded", r.embedded},
             {"vacuous", r.vacuous}};
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    const auto& cols = sweep_csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& row : rows) {
        const auto& r = row.report;
        out << r.d << ',' << r.d_tilde << ',' << format_double(r.epsilon) << ',' << format_double(r.c) << ','
            << format_double(r.alpha_used) << ',' << r.alpha_provenance.tag() << ','
            << format_double(r.corollary_value) << ',' << format_double(r.theorem2_value) << ','
            << format_double(row.barrett_comparison) << ',' << (r.vacuous ? "true" : "false") << ','
            << (row.alpha_lower_bound ? std::to_string(*row.alpha_lower_bound) : "") << ','
            << (row.lower_bound_corollary ? format_double(*row.lower_bound_corollary) : "") << ','
            << (row.epsilon_contradicted ? "true" : "false") << '\n';
    }
    return out.str();
}

json sweep_to_json(const std::vector<SweepRow>& rows) {
    json arr = json::array();
    for (const auto& row : rows) {
        json j = row.report;
        j["barrett_comparison"] = row.barrett_comparison;
        j["alpha_lower_bound"] = row.alpha_lower_bound ? json(*row.alpha_lower_bound) : json(nullptr);
        j["lower_bound_corollary"] = row.lower_bound_corollary ? json(*row.lower_bound_corollary) : json(nullptr);
        j["epsilon_contradicted"] = row.epsilon_contradicted;
        arr.push_back(std::move(j));
    }
    return arr;
}

json model_to_json(const FiniteOntModel& model) {
    json bases = json::array();
    for (const auto& b : model.bases()) {
        json elems = json::array();
        for (const auto& e : b.elements) elems.push_back(e);
        bases.push_back(elems);
    }
    json preps = json::array();
    for (const auto& p : model.preparations()) preps.push_back(p);
    json measures = json::array();
    for (std::size_t p = 0; p < model.preparations().size(); ++p) measures.push_back(model.measure(p).to_dense());
    return json{{"d", model.dim()},
                {"bases", bases},
                {"assignment_count", model.ontic_size()},
                {"preparations", preps},
                {"measures", measures}};
}

FiniteOntModel model_from_json(const json& j, const Limits& limits) {
    try {
        std::vector<MeasurementBasis> bases;
        for (const auto& b : j.at("bases")) {
            MeasurementBasis basis;
            basis.id = static_cast<int>(bases.size());
            for (const auto& e : b) basis.elements.push_back(state_from_json(e));
            bases.push_back(std::move(basis));
        }
        std::vector<PureState> preps;
        for (const auto& p : j.at("preparations")) preps.push_back(state_from_json(p));
        std::vector<Measure> measures;
        for (const auto& m : j.at("measures")) measures.push_back(Measure::from_dense(m.get<std::vector<double>>()));
        FiniteOntModel model(std::move(bases), std::move(preps), std::move(measures), limits);
        if (j.contains("assignment_count") && j.at("assignment_count").get<std::size_t>() != model.ontic_size())
            throw InvalidArgument("assignment_count does not match the bases");
        return model;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed model JSON: ") + e.what());
    }
}

json overlap_report_to_json(const OverlapReport& report) {
    json pairs = json::array();
    for (const auto& row : report.pairs)
        pairs.push_back({{"member", row.member},
                         {"classical_overlap", row.classical},
                         {"quantum_overlap", row.quantum},
                         {"ratio", row.ratio ? json(*row.ratio) : json(nullptr)}});
    return json{{"pairs", pairs},
                {"total_classical_overlap", report.total_classical},
                {"alpha_bound", report.alpha_bound},
                {"kbar", report.kbar},
                {"ratio_terms", report.ratio_terms}};
}

json lp_result_to_json(const LpResult& result, const OverlapReport& report, bool include_timing) {
    json solver{{"iterations", result.stats.iterations},
                {"variables", result.stats.variables},
                {"constraints", result.stats.constraints},
                {"ontic_points", result.stats.ontic_points},
                {"duality_gap", result.stats.duality_gap},
                {"primal_residual", result.stats.primal_residual},
                {"dual_infeasibility", result.stats.dual_infeasibility}};
    if (include_timing) solver["seconds"] = result.stats.seconds;
    json j{{"objective", result.value},
           {"objective_exact", result.exact_value ? json(to_string(*result.exact_value)) : json(nullptr)},
           {"psi_index", result.psi_index},
           {"family_index", result.family_index},
           {"overlaps", overlap_report_to_json(report)},
           {"solver", solver},
           {"model", model_to_json(result.model)}};
    if (!result.exact_overlaps.empty()) {
        json exact = json::array();
        for (const auto& q : result.exact_overlaps) exact.push_back(to_string(q));
        j["overlaps_exact"] = exact;
    }
    return j;
}

std::string ks_grid_to_csv(const std::vector<ks::GridRow>& rows) {
    std::ostringstream out;
    out << "theta,L_C,L_Q,k\n";
    for (const auto& r : rows)
        out << format_double(r.theta) << ',' << format_double(r.classical) << ',' << format_double(r.quantum) << ','
            << (r.ratio ? format_double(*r.ratio) : "") << '\n';
    return out.str();
}

}  // namespace onto
