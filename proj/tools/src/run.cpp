#include "onto_cli/run.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "onto/bounds.hpp"
#include "onto/error.hpp"
#include "onto/json.hpp"
#include "onto/ksqubit.hpp"
#include "onto/ontomodel.hpp"

#ifndef ONTO_OVERLAP_VERSION
#define ONTO_OVERLAP_VERSION "0.0.0"
#endif

namespace onto::cli {
namespace {

constexpr const char* kTool = "onto-overlap";
constexpr double kTheorem1Slack = 1e-9;

struct Report {
    json result;
    std::string csv;  // body used with --emit csv
};

const char* to_string(Format f) { return f == Format::json ? "json" : "csv"; }
const char* to_string(CoverReuse r) { return r == CoverReuse::by_ray ? "by_ray" : "by_vertex"; }

json config_json(const RunConfig& c) {
    json j{{"command", to_string(c.command)},
           {"budget_seconds", c.budget_seconds},
           {"caps",
            {{"family", c.limits.family_cap},
             {"graph_vertices", c.limits.graph_vertex_cap},
             {"assignments", c.limits.assignment_cap},
             {"lp_tableau_cells", c.limits.lp_tableau_cap}}},
           {"emit", to_string(c.format)},
           {"seed", c.seed}};
    switch (c.command) {
        case Command::graph:
        case Command::alpha:
            j["d"] = c.d;
            j["family"] = c.family;
            break;
        case Command::bounds:
            j["d"] = c.d;
            j["epsilon"] = *c.epsilon;
            break;
        case Command::lp:
            j["d"] = c.d;
            j["family"] = c.family;
            j["arithmetic"] = c.exact ? "exact" : "floating";
            j["reuse"] = to_string(c.reuse);
            if (!c.input_path.empty()) j["input"] = c.input_path;
            break;
        case Command::ksqubit:
            j["points"] = c.points;
            j["resolution"] = c.resolution;
            break;
        case Command::sweep:
            j["d"] = c.d_range;
            j["epsilon"] = *c.epsilon;
            break;
        case Command::model: j["input"] = c.input_path; break;
    }
    return j;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
}

OrthogonalityGraph family_graph(const RunConfig& c) {
    if (c.family == "hadamard") return hadamard_graph(c.d, c.limits);
    if (c.family == "hadamard-even") {
        const auto keep = even_weight_vertices(c.d);
        return hadamard_graph(c.d, c.limits).induced(keep);
    }
    const Family fam = make_family(c.family, c.d, c.limits);
    return orthogonality_graph(fam.members, DuplicatePolicy::allow, c.limits);
}

Report run_graph(const RunConfig& c) {
    const auto g = family_graph(c);
    json sizes = json::array();
    for (const auto& comp : g.components()) sizes.push_back(comp.size());
    json hist = json::array();
    for (const auto& [deg, count] : g.degree_histogram()) hist.push_back({{"degree", deg}, {"count", count}});
    json result{{"vertices", g.size()},
                {"edges", g.edge_count()},
                {"components", sizes.size()},
                {"component_sizes", sizes},
                {"degree_histogram", hist},
                {"graph", graph_to_json(g)}};
    return {result, degree_histogram_csv(g)};
}

Report run_alpha(const RunConfig& c) {
    const auto g = family_graph(c);
    const auto r = independence_number(g, c.budget_seconds);
    if (!is_independent(g, r.witness) || r.witness.size() != r.value)
        throw InvariantViolation("independence witness is not an independent set of the reported size");
    json result = independence_to_json(r, c.timings);
    result["vertices"] = g.size();
    std::ostringstream csv;
    csv << "value,status,nodes\n" << r.value << ',' << to_string(r.status) << ',' << r.nodes << '\n';
    return {result, csv.str()};
}

Report run_bounds(const RunConfig& c) {
    const auto r = embedded_bound(c.d, *c.epsilon);
    json result = r;
    std::ostringstream csv;
    csv << "d,d_tilde,epsilon,c,alpha_used,alpha_status,min_born,corollary_value,theorem2_value,embedded,vacuous\n"
        << r.d << ',' << r.d_tilde << ',' << format_double(r.epsilon) << ',' << format_double(r.c) << ','
        << format_double(r.alpha_used) << ',' << r.alpha_provenance.tag() << ',' << format_double(r.min_born) << ','
        << format_double(r.corollary_value) << ',' << format_double(r.theorem2_value) << ','
        << (r.embedded ? "true" : "false") << ',' << (r.vacuous ? "true" : "false") << '\n';
    return {result, csv.str()};
}

Family load_family_file(const std::string& path) {
    const json j = read_json_file(path);
    try {
        Family fam{state_from_json(j.at("psi")), {}, {}};
        for (const auto& s : j.at("family")) fam.members.push_back(state_from_json(s));
        if (fam.members.empty()) throw InvalidArgument(path + ": family is empty");
        return fam;
    } catch (const json::exception& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
}

Report run_lp(const RunConfig& c, std::ostream& err, bool& violated) {
    const Family fam = c.input_path.empty() ? make_family(c.family, c.d, c.limits) : load_family_file(c.input_path);
    const auto graph = orthogonality_graph(fam.members, DuplicatePolicy::allow, c.limits);
    const auto cover = covering_set(graph, c.reuse);
    cover.validate(graph);

    LpOptions options;
    options.arithmetic = c.exact ? Arithmetic::exact : Arithmetic::floating;
    options.limits = c.limits;
    const auto lp = max_total_overlap_lp(fam.psi, fam.members, cover, options);
    const auto alpha = independence_number(graph, c.budget_seconds);
    const auto report = overlap_report(lp, static_cast<double>(alpha.value));

    json result = lp_result_to_json(lp, report, c.timings);
    result["alpha"] = independence_to_json(alpha, c.timings);
    result["covering"] = covering_to_json(cover);
    const bool checkable = alpha.status == AlphaStatus::exact;
    const bool holds = !checkable || lp.value <= static_cast<double>(alpha.value) + kTheorem1Slack;
    result["total_overlap_bound"] = {{"checked", checkable}, {"holds", holds}};
    if (!holds) {
        violated = true;
        err << kTool << ": invariant violated: total classical overlap " << format_double(lp.value)
            << " exceeds the independence number " << alpha.value << " of the orthogonality graph\n";
    }

    std::ostringstream csv;
    csv << "member,L_C,L_C_exact,L_Q,k\n";
    for (std::size_t i = 0; i < report.pairs.size(); ++i) {
        const auto& row = report.pairs[i];
        csv << row.member << ',' << format_double(row.classical) << ','
            << (i < lp.exact_overlaps.size() ? onto::to_string(lp.exact_overlaps[i]) : "") << ','
            << format_double(row.quantum) << ',' << (row.ratio ? format_double(*row.ratio) : "") << '\n';
    }
    return {result, csv.str()};
}

Report run_ksqubit(const RunConfig& c) {
    const auto rows = ks::overlap_grid(c.points, c.resolution);
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"theta", r.theta},
                       {"L_C", r.classical},
                       {"L_Q", r.quantum},
                       {"k", r.ratio ? json(*r.ratio) : json(nullptr)}});
    return {json{{"grid", arr}}, ks_grid_to_csv(rows)};
}

Report run_sweep(const RunConfig& c) {
    SweepOptions options;
    options.limits = c.limits;
    options.alpha_budget_seconds = c.budget_seconds;
    const auto dims = parse_dim_range(c.d_range);
    const auto rows = scaling_sweep(dims, *c.epsilon, options);
    return {json{{"rows", sweep_to_json(rows)}}, sweep_to_csv(rows)};
}

Report run_model(const RunConfig& c) {
    const auto model = model_from_json(read_json_file(c.input_path), c.limits);
    const double born = born_check(model);
    const std::size_t n = model.preparations().size();
    json pairs = json::array();
    std::ostringstream csv;
    csv << "i,j,L_C,D_C,L_Q\n";
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double lc = classical_overlap(model, i, j);
            const auto dc = variational_distance(model, i, j);
            const double lq = quantum_overlap(model.preparations()[i], model.preparations()[j]);
            pairs.push_back({{"i", i},
                             {"j", j},
                             {"L_C", lc},
                             {"D_C", dc.value},
                             {"guessing_probability", dc.guessing_probability},
                             {"L_Q", lq}});
            csv << i << ',' << j << ',' << format_double(lc) << ',' << format_double(dc.value) << ','
                << format_double(lq) << '\n';
        }
    json result{{"ontic_points", model.ontic_size()},
                {"born_max_deviation", born},
                {"reproduces_born", born <= 1e-9},
                {"pairs", pairs}};
    return {result, csv.str()};
}

void emit(const RunConfig& c, const Report& report, std::ostream& out) {
    std::string text;
    if (c.format == Format::json) {
        json doc{{"tool", kTool}, {"version", ONTO_OVERLAP_VERSION}, {"config", config_json(c)},
                 {"result", report.result}};
        text = doc.dump(2) + "\n";
    } else {
        text = std::string("# ") + kTool + " " + ONTO_OVERLAP_VERSION + " config=" + config_json(c).dump() + "\n" +
               report.csv;
    }
    if (c.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(c.out_path, std::ios::binary);
    if (!file) throw InvalidArgument("cannot write " + c.out_path);
    file << text;
}

}  // namespace

const char* to_string(Command c) {
    switch (c) {
        case Command::graph: return "graph";
        case Command::alpha: return "alpha";
        case Command::bounds: return "bounds";
        case Command::lp: return "lp";
        case Command::ksqubit: return "ksqubit";
        case Command::sweep: return "sweep";
        case Command::model: return "model";
    }
    return "unknown";
}

void RunConfig::validate() const {
    const bool needs_d = command != Command::ksqubit && command != Command::sweep && command != Command::model;
    if (needs_d && d < 2) throw InvalidArgument("d must be at least 2");
    if (!(budget_seconds > 0.0)) throw InvalidArgument("budget must be positive");
    if (command == Command::bounds || command == Command::sweep) {
        if (!epsilon) throw InvalidArgument("--epsilon is required; no default is assumed");
        if (!(*epsilon > 0.0 && *epsilon < 2.0)) throw InvalidArgument("epsilon must lie in (0, 2)");
    }
    if (command == Command::sweep && d_range.empty()) throw InvalidArgument("--d a..b is required");
    if (command == Command::model && input_path.empty()) throw InvalidArgument("--input is required");
    if (command == Command::ksqubit) {
        if (points < 2) throw InvalidArgument("--points must be at least 2");
        if (resolution < ks::kMinResolution)
            throw InvalidArgument("--resolution must be at least " + std::to_string(ks::kMinResolution));
    }
}

Family make_family(const std::string& name, int d, const Limits& limits) {
    if (name == "bb84") {
        if (d != 2) throw InvalidArgument("family bb84 needs d = 2");
        const double h = 1.0 / std::sqrt(2.0);
        return Family{PureState::basis_vector(2, 0),
                      {PureState::basis_vector(2, 0), PureState::basis_vector(2, 1), make_state({h, h}),
                       make_state({h, -h})},
                      {}};
    }
    if (name == "hadamard" || name == "hadamard-even") {
        if (d % 2 != 0) throw InvalidArgument("Hadamard families need even d");
        auto all = hadamard_family(d, limits);
        Family fam{PureState::basis_vector(static_cast<std::size_t>(d), 0), {}, {}};
        if (name == "hadamard") {
            fam.signs = std::move(all);
        } else {
            for (std::size_t i : even_weight_vertices(d)) fam.signs.push_back(all[i]);
        }
        for (const auto& s : fam.signs) fam.members.push_back(s.to_state());
        return fam;
    }
    throw InvalidArgument("unknown family '" + name + "' (expected bb84, hadamard or hadamard-even)");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        bool violated = false;
        Report report;
        switch (config.command) {
            case Command::graph: report = run_graph(config); break;
            case Command::alpha: report = run_alpha(config); break;
            case Command::bounds: report = run_bounds(config); break;
            case Command::lp: report = run_lp(config, err, violated); break;
            case Command::ksqubit: report = run_ksqubit(config); break;
            case Command::sweep: report = run_sweep(config); break;
            case Command::model: report = run_model(config); break;
        }
        emit(config, report, out);
        return violated ? kInvariant : kOk;
    } catch (const CapacityError& e) {
        err << kTool << ": capacity exceeded: " << e.what() << " (raise " << kCapEnvVar << " to allow it)\n";
        return kCapacity;
    } catch (const InvariantViolation& e) {
        err << kTool << ": invariant violated: " << e.what() << '\n';
        return kInvariant;
    } catch (const NumericalError& e) {
        // An infeasible or failed LP means the model construction is wrong.
        err << kTool << ": invariant violated: " << e.what() << '\n';
        return kInvariant;
    } catch (const std::exception& e) {
        err << kTool << ": error: " << e.what() << '\n';
        return kUsage;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg.limits = Limits::from_env();
    } catch (const std::exception& e) {
        err << kTool << ": error: " << e.what() << '\n';
        return kUsage;
    }
    std::string emit_name = "json";
    std::string reuse_name = "by_ray";

    CLI::App app{"Overlap bounds for psi-epistemic models of Hadamard state families", kTool};
    app.set_version_flag("--version", ONTO_OVERLAP_VERSION);
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--emit", emit_name, "Report format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out_path, "Write the report here instead of stdout");
        sub->add_option("--seed", cfg.seed, "Seed recorded with the report");
        sub->add_option("--budget", cfg.budget_seconds, "Time budget in seconds for independence searches");
        sub->add_flag("--timings", cfg.timings, "Include wall-clock timings (reports stop being byte-identical)");
    };
    const std::vector<std::string> families{"hadamard", "hadamard-even", "bb84"};

    auto* graph = app.add_subcommand("graph", "Orthogonality graph of a state family");
    graph->add_option("--d", cfg.d, "Dimension")->required();
    graph->add_option("--family", cfg.family)->check(CLI::IsMember(families));
    add_common(graph);

    auto* alpha = app.add_subcommand("alpha", "Independence number of a family's orthogonality graph");
    alpha->add_option("--d", cfg.d, "Dimension")->required();
    alpha->add_option("--family", cfg.family)->check(CLI::IsMember(families));
    add_common(alpha);

    double eps = 0.0;
    auto* bounds = app.add_subcommand("bounds", "Closed-form overlap bounds at one dimension");
    bounds->add_option("--d", cfg.d, "Dimension (>= 4)")->required();
    auto* bounds_eps = bounds->add_option("--epsilon", eps, "Frankl-Rodl constant in (0, 2)")->required();
    add_common(bounds);

    auto* lp = app.add_subcommand("lp", "Maximum total classical overlap over finite models");
    lp->add_option("--d", cfg.d, "Dimension");
    lp->add_option("--family", cfg.family)->check(CLI::IsMember(families));
    lp->add_option("--input", cfg.input_path, "JSON file {\"psi\": state, \"family\": [states]}");
    lp->add_flag("--exact", cfg.exact, "Exact rational simplex");
    lp->add_option("--reuse", reuse_name, "When a basis covers an edge")
        ->check(CLI::IsMember({"by_ray", "by_vertex"}));
    add_common(lp);

    auto* ksq = app.add_subcommand("ksqubit", "Overlap grid of the qubit hemisphere model");
    ksq->add_option("--points", cfg.points, "Grid points in [0, pi]");
    ksq->add_option("--resolution", cfg.resolution, "Quadrature nodes per direction");
    add_common(ksq);

    auto* sweep = app.add_subcommand("sweep", "Bounds over a dimension range");
    sweep->add_option("--d", cfg.d_range, "Range a..b")->required();
    auto* sweep_eps = sweep->add_option("--epsilon", eps, "Frankl-Rodl constant in (0, 2)")->required();
    add_common(sweep);

    auto* model = app.add_subcommand("model", "Born check and overlaps of a model JSON file");
    model->add_option("--input", cfg.input_path, "Model JSON")->required();
    add_common(model);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    const std::pair<CLI::App*, Command> table[] = {{graph, Command::graph},   {alpha, Command::alpha},
                                                   {bounds, Command::bounds}, {lp, Command::lp},
                                                   {ksq, Command::ksqubit},   {sweep, Command::sweep},
                                                   {model, Command::model}};
    for (const auto& [sub, cmd] : table)
        if (sub->parsed()) cfg.command = cmd;
    if (bounds_eps->count() || sweep_eps->count()) cfg.epsilon = eps;
    cfg.format = emit_name == "csv" ? Format::csv : Format::json;
    cfg.reuse = reuse_name == "by_vertex" ? CoverReuse::by_vertex : CoverReuse::by_ray;
    if (cfg.command == Command::lp && lp->count("--family") == 0 && cfg.input_path.empty())
        cfg.family = cfg.d == 2 ? "bb84" : "hadamard-even";
    return run(cfg, out, err);
}

}  // namespace onto::cli
