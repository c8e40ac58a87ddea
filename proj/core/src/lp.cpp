#include <chrono>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>

#include "onto/error.hpp"
#include "onto/ontomodel.hpp"

namespace onto {
namespace {

constexpr std::uint32_t kNoVar = std::numeric_limits<std::uint32_t>::max();

struct Layout {
    std::vector<PureState> preparations;
    std::size_t psi_index = 0;
    std::vector<std::size_t> family_index;
};

Layout lay_out(const PureState& psi, std::span<const PureState> family) {
    Layout layout;
    layout.preparations.assign(family.begin(), family.end());
    layout.psi_index = family.size();
    for (std::size_t k = 0; k < family.size(); ++k) {
        layout.family_index.push_back(k);
        if (layout.psi_index == family.size() && same_ray(psi, family[k])) layout.psi_index = k;
    }
    if (layout.psi_index == family.size()) layout.preparations.push_back(psi);
    return layout;
}

template <class T>
struct BornTable {
    // value[p][b][o] and whether it is zero.
    std::vector<std::vector<std::vector<T>>> value;
    std::vector<std::vector<std::vector<bool>>> zero;
};

BornTable<double> floating_born(const Layout& layout, const CoveringSet& covering) {
    BornTable<double> t;
    for (const auto& p : layout.preparations) {
        auto& vrow = t.value.emplace_back();
        auto& zrow = t.zero.emplace_back();
        for (const auto& basis : covering.bases) {
            auto& v = vrow.emplace_back();
            auto& z = zrow.emplace_back();
            for (const auto& e : basis.elements) {
                const bool is_zero = orthogonal(e, p);
                z.push_back(is_zero);
                v.push_back(is_zero ? 0.0 : born_probability(e, p));
            }
        }
    }
    return t;
}

BornTable<Rational> exact_born(const Layout& layout, const CoveringSet& covering) {
    BornTable<Rational> t;
    for (std::size_t pi = 0; pi < layout.preparations.size(); ++pi) {
        const auto& p = layout.preparations[pi];
        auto& vrow = t.value.emplace_back();
        auto& zrow = t.zero.emplace_back();
        for (const auto& basis : covering.bases) {
            auto& v = vrow.emplace_back();
            auto& z = zrow.emplace_back();
            for (std::size_t k = 0; k < basis.elements.size(); ++k) {
                auto q = exact_born_probability(basis.elements[k], p);
                if (!q)
                    throw InvalidArgument("exact arithmetic needs rational-path states; basis " +
                                          std::to_string(basis.id) + " element " + std::to_string(k) +
                                          " or preparation " + std::to_string(pi) + " is not");
                z.push_back(sgn(*q) == 0);
                v.push_back(*q);
            }
        }
    }
    return t;
}

template <class T>
LpResult solve_overlap(const Layout& layout, const CoveringSet& covering, const BornTable<T>& born,
                       const LpOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    const std::size_t d = layout.preparations.front().dim();
    const std::size_t nb = covering.bases.size();
    const std::size_t n_points = static_cast<std::size_t>(assignment_count(d, nb, options.limits));
    std::vector<std::size_t> stride(nb, 1);
    for (std::size_t b = nb; b-- > 1;) stride[b - 1] = stride[b] * d;
    auto outcome = [&](std::size_t lambda, std::size_t b) { return (lambda / stride[b]) % d; };

    const std::size_t n_prep = layout.preparations.size();
    std::vector<Bitset> allowed(n_prep, Bitset(n_points));
    for (std::size_t p = 0; p < n_prep; ++p)
        for (std::size_t lambda = 0; lambda < n_points; ++lambda) {
            bool ok = true;
            for (std::size_t b = 0; b < nb && ok; ++b) ok = !born.zero[p][b][outcome(lambda, b)];
            if (ok) allowed[p].set(lambda);
        }

    lp::LinearProgram<T> program;
    std::vector<std::vector<std::uint32_t>> mu(n_prep, std::vector<std::uint32_t>(n_points, kNoVar));
    for (std::size_t p = 0; p < n_prep; ++p)
        for (std::size_t lambda = allowed[p].find_first(); lambda != Bitset::npos; lambda = allowed[p].find_next(lambda))
            mu[p][lambda] = static_cast<std::uint32_t>(program.add_variable(T(0)));

    for (std::size_t p = 0; p < n_prep; ++p) {
        std::vector<std::pair<std::size_t, T>> all;
        std::vector<std::vector<std::vector<std::pair<std::size_t, T>>>> by_outcome(
            nb, std::vector<std::vector<std::pair<std::size_t, T>>>(d));
        for (std::size_t lambda = allowed[p].find_first(); lambda != Bitset::npos;
             lambda = allowed[p].find_next(lambda)) {
            all.emplace_back(mu[p][lambda], T(1));
            for (std::size_t b = 0; b < nb; ++b) by_outcome[b][outcome(lambda, b)].emplace_back(mu[p][lambda], T(1));
        }
        program.add_row(std::move(all), lp::Relation::equal, T(1));
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t o = 0; o < d; ++o)
                if (!born.zero[p][b][o])
                    program.add_row(std::move(by_outcome[b][o]), lp::Relation::equal, born.value[p][b][o]);
    }

    const std::size_t psi = layout.psi_index;
    struct OverlapVar {
        std::size_t member;
        std::size_t lambda;
        std::size_t var;
    };
    std::vector<OverlapVar> overlap_vars;
    for (std::size_t k = 0; k < layout.family_index.size(); ++k) {
        const std::size_t a = layout.family_index[k];
        const Bitset shared = allowed[a] & allowed[psi];
        for (std::size_t lambda = shared.find_first(); lambda != Bitset::npos; lambda = shared.find_next(lambda)) {
            const std::size_t t = program.add_variable(T(1));
            overlap_vars.push_back({k, lambda, t});
            program.add_row({{t, T(1)}, {mu[psi][lambda], T(-1)}}, lp::Relation::less_equal, T(0));
            if (a != psi) program.add_row({{t, T(1)}, {mu[a][lambda], T(-1)}}, lp::Relation::less_equal, T(0));
        }
    }

    const std::uint64_t rows = program.constraints();
    const std::uint64_t cells = rows * (program.variables() + 2 * rows);
    const std::uint64_t cap = std::is_same_v<T, Rational> ? options.limits.lp_tableau_cap / 16
                                                          : options.limits.lp_tableau_cap;
    if (cells > cap) throw CapacityError("overlap LP tableau cells", cells, cap);

    const auto sol = lp::solve(program, options.simplex);
    if (sol.status == lp::Status::infeasible)
        throw NumericalError("overlap LP is infeasible: the covering bases or Born constraints are inconsistent");
    if (sol.status != lp::Status::optimal)
        throw NumericalError(std::string("overlap LP did not reach optimality: ") + lp::to_string(sol.status));

    std::vector<Measure> measures;
    measures.reserve(n_prep);
    for (std::size_t p = 0; p < n_prep; ++p) {
        std::vector<std::pair<std::size_t, double>> entries;
        for (std::size_t lambda = allowed[p].find_first(); lambda != Bitset::npos;
             lambda = allowed[p].find_next(lambda)) {
            double v = lp::detail::Arith<T>::to_double(sol.x[mu[p][lambda]]);
            if (v < 0.0) v = 0.0;
            if (v != 0.0) entries.emplace_back(lambda, v);
        }
        measures.push_back(Measure::from_entries(n_points, std::move(entries)));
    }

    LpResult result{.value = lp::detail::Arith<T>::to_double(sol.objective),
                    .exact_value = std::nullopt,
                    .model = FiniteOntModel(covering.bases, layout.preparations, std::move(measures), options.limits),
                    .psi_index = psi,
                    .family_index = layout.family_index,
                    .exact_overlaps = {},
                    .stats = {}};
    if constexpr (std::is_same_v<T, Rational>) {
        result.exact_value = sol.objective;
        result.exact_overlaps.assign(layout.family_index.size(), Rational(0));
        for (std::size_t k = 0; k < layout.family_index.size(); ++k) {
            const std::size_t a = layout.family_index[k];
            Rational acc(0);
            for (std::size_t lambda = allowed[a].find_first(); lambda != Bitset::npos;
                 lambda = allowed[a].find_next(lambda)) {
                if (mu[psi][lambda] == kNoVar) continue;
                const Rational& x = sol.x[mu[psi][lambda]];
                const Rational& y = sol.x[mu[a][lambda]];
                acc += x < y ? x : y;
            }
            result.exact_overlaps[k] = acc;
        }
    }
    result.stats.iterations = sol.iterations;
    result.stats.variables = program.variables();
    result.stats.constraints = program.constraints();
    result.stats.ontic_points = n_points;
    result.stats.duality_gap = sol.duality_gap;
    result.stats.primal_residual = sol.primal_residual;
    result.stats.dual_infeasibility = sol.dual_infeasibility;
    result.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    if (sol.primal_residual > 1e-9)
        throw NumericalError("overlap LP solution violates a constraint by " + std::to_string(sol.primal_residual));
    if (sol.duality_gap > 1e-9)
        throw NumericalError("overlap LP duality gap " + std::to_string(sol.duality_gap) + " exceeds 1e-9");
    return result;
}

}  // namespace

LpResult max_total_overlap_lp(const PureState& psi, std::span<const PureState> family, const CoveringSet& covering,
                              const LpOptions& options) {
    if (family.empty()) throw InvalidArgument("overlap LP needs a nonempty state family");
    const std::size_t d = psi.dim();
    for (const auto& s : family)
        if (s.dim() != d) throw InvalidArgument("dimension mismatch between psi and the state family");
    for (const auto& b : covering.bases) {
        if (b.dim() != d) throw InvalidArgument("covering basis dimension does not match psi");
        b.validate();
    }
    if (options.check_cover) {
        const auto graph = orthogonality_graph(family, DuplicatePolicy::allow, options.limits);
        try {
            covering.validate(graph);
        } catch (const InvariantViolation& e) {
            throw InvalidArgument(std::string("covering set does not cover the orthogonality graph: ") + e.what());
        }
    }
    // Fail on capacity before any work.
    assignment_count(d, covering.bases.size(), options.limits);

    const Layout layout = lay_out(psi, family);
    if (options.arithmetic == Arithmetic::exact)
        return solve_overlap<Rational>(layout, covering, exact_born(layout, covering), options);
    return solve_overlap<double>(layout, covering, floating_born(layout, covering), options);
}

}  // namespace onto
