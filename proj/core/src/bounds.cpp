#include "onto/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "onto/error.hpp"

namespace onto {
namespace {

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 2.0)) throw InvalidArgument("epsilon must lie in (0, 2)");
}

}  // namespace

std::string AlphaProvenance::tag() const {
    switch (kind) {
        case Kind::exact: return "exact";
        case Kind::lower_bound: return "lower_bound";
        case Kind::frankl_rodl: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "frankl_rodl(%.17g)", epsilon);
            return buf;
        }
    }
    return "unknown";
}

double corollary_bound(double alpha, double n_states, double min_born) {
    if (!(n_states > 0.0)) throw InvalidArgument("corollary bound needs a nonempty state family");
    if (alpha < 0.0) throw InvalidArgument("alpha must be nonnegative");
    if (!(min_born > 0.0))
        throw InvalidArgument("state orthogonal to some family member; bound undefined (min_born = 0)");
    if (min_born > 1.0) throw InvalidArgument("min_born must be a probability");
    return 2.0 * alpha / (n_states * min_born);
}

Theorem2Bound theorem2_bound(int d, double epsilon) {
    require_epsilon(epsilon);
    if (d < 4 || d % 4 != 0)
        throw InvalidArgument("theorem2_bound requires d divisible by 4 (got " + std::to_string(d) +
                              "); use embedded_bound for other dimensions");
    Theorem2Bound out;
    out.c = std::log(2.0) - std::log(2.0 - epsilon);
    out.value = 2.0 * d * std::exp(-out.c * d);
    return out;
}

BoundReport embedded_bound(int d, double epsilon) {
    require_epsilon(epsilon);
    if (d < 4) throw InvalidArgument("embedded_bound requires d >= 4");
    BoundReport r;
    r.d = d;
    r.d_tilde = 4 * (d / 4);
    r.epsilon = epsilon;
    r.embedded = r.d_tilde != d;
    const auto t2 = theorem2_bound(r.d_tilde, epsilon);
    r.c = t2.c;
    r.theorem2_value = t2.value;
    r.alpha_used = frankl_rodl_bound(r.d_tilde, epsilon);
    r.alpha_provenance = {AlphaProvenance::Kind::frankl_rodl, epsilon};
    r.min_born = 1.0 / r.d_tilde;
    r.corollary_value = corollary_bound(r.alpha_used, std::ldexp(1.0, r.d_tilde), r.min_born);
    r.vacuous = std::min(r.corollary_value, r.theorem2_value) >= 1.0;
    return r;
}

double single_pair_bound(double kbar) {
    if (!(kbar >= 0.0)) throw InvalidArgument("kbar must be nonnegative");
    return kbar;
}

std::vector<SweepRow> scaling_sweep(std::span<const int> dims, double epsilon, const SweepOptions& options) {
    if (dims.empty()) throw InvalidArgument("scaling sweep needs a nonempty dimension range");
    std::map<int, IndependenceResult> exact_cache;
    std::map<int, std::optional<std::size_t>> lower_cache;
    std::vector<SweepRow> rows;
    rows.reserve(dims.size());
    for (int d : dims) {
        SweepRow row;
        row.report = embedded_bound(d, epsilon);
        row.barrett_comparison = 4.0 / (d - 1);
        const int dt = row.report.d_tilde;

        if (!lower_cache.count(dt)) {
            std::optional<std::size_t> lb;
            if (dt < 64 && (std::uint64_t{1} << dt) <= options.limits.family_cap)
                lb = independent_set_lower_bound(dt, options.limits).value;
            lower_cache[dt] = lb;
        }
        row.alpha_lower_bound = lower_cache[dt];
        const double n_states = std::ldexp(1.0, dt);
        if (row.alpha_lower_bound) {
            row.lower_bound_corollary =
                corollary_bound(static_cast<double>(*row.alpha_lower_bound), n_states, row.report.min_born);
            row.epsilon_contradicted = row.report.alpha_used < static_cast<double>(*row.alpha_lower_bound);
        }

        if (dt <= options.exact_alpha_max_d) {
            if (!exact_cache.count(dt))
                exact_cache[dt] = independence_number(hadamard_graph(dt, options.limits), options.alpha_budget_seconds);
            const auto& alpha = exact_cache[dt];
            if (alpha.status == AlphaStatus::exact) {
                row.report.alpha_used = static_cast<double>(alpha.value);
                row.report.alpha_provenance = {AlphaProvenance::Kind::exact, 0.0};
                row.report.corollary_value = corollary_bound(row.report.alpha_used, n_states, row.report.min_born);
                row.report.vacuous = std::min(row.report.corollary_value, row.report.theorem2_value) >= 1.0;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<int> parse_dim_range(const std::string& text) {
    const auto dots = text.find("..");
    int lo = 0;
    int hi = 0;
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            lo = hi = std::stoi(text, &used);
            if (used != text.size()) throw InvalidArgument("bad dimension range: " + text);
        } else {
            const std::string a = text.substr(0, dots);
            const std::string b = text.substr(dots + 2);
            lo = std::stoi(a, &used);
            if (used != a.size()) throw InvalidArgument("bad dimension range: " + text);
            hi = std::stoi(b, &used);
            if (used != b.size()) throw InvalidArgument("bad dimension range: " + text);
        }
    } catch (const std::logic_error&) {
        throw InvalidArgument("bad dimension range: " + text);
    }
    if (lo > hi) throw InvalidArgument("empty dimension range: " + text);
    std::vector<int> out;
    for (int d = lo; d <= hi; ++d) out.push_back(d);
    return out;
}

}  // namespace onto
