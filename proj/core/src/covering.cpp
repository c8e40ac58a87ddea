#include "onto/graph.hpp"

#include <cmath>
#include <string>

#include "onto/error.hpp"

namespace onto {
namespace {

constexpr double kCompletionTolerance = 1e-10;

std::string edge_name(const Edge& e) { return "(" + std::to_string(e.first) + ", " + std::to_string(e.second) + ")"; }

// Residual of `w` after removing its components along `basis`.
void project_out(std::vector<Complex>& w, const std::vector<std::vector<Complex>>& basis) {
    for (const auto& q : basis) {
        Complex coeff{0.0, 0.0};
        for (std::size_t i = 0; i < w.size(); ++i) coeff += std::conj(q[i]) * w[i];
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= coeff * q[i];
    }
}

double norm(const std::vector<Complex>& w) {
    double acc = 0.0;
    for (const auto& z : w) acc += std::norm(z);
    return std::sqrt(acc);
}

}  // namespace

std::optional<std::size_t> MeasurementBasis::find(const PureState& state) const {
    for (std::size_t k = 0; k < elements.size(); ++k)
        if (elements[k].dim() == state.dim() && same_ray(elements[k], state)) return k;
    return std::nullopt;
}

void MeasurementBasis::validate() const {
    if (elements.empty()) throw InvariantViolation("basis " + std::to_string(id) + " is empty");
    const std::size_t d = elements.front().dim();
    if (elements.size() != d)
        throw InvariantViolation("basis " + std::to_string(id) + " has " + std::to_string(elements.size()) +
                                 " elements in dimension " + std::to_string(d));
    if (!vertices.empty() && vertices.size() != elements.size())
        throw InvariantViolation("basis " + std::to_string(id) + " vertex map has the wrong length");
    for (std::size_t a = 0; a < d; ++a) {
        if (elements[a].dim() != d) throw InvariantViolation("basis " + std::to_string(id) + " mixes dimensions");
        if (std::abs(std::norm(inner_product(elements[a], elements[a])) - 1.0) > kCompletionTolerance)
            throw InvariantViolation("basis " + std::to_string(id) + " element " + std::to_string(a) +
                                     " is not unit norm");
        for (std::size_t b = a + 1; b < d; ++b)
            if (!orthogonal(elements[a], elements[b]))
                throw InvariantViolation("basis " + std::to_string(id) + " elements " + std::to_string(a) + " and " +
                                         std::to_string(b) + " are not orthogonal");
    }
}

void CoveringSet::validate(const OrthogonalityGraph& graph) const {
    for (std::size_t i = 0; i < bases.size(); ++i) {
        if (bases[i].id != static_cast<int>(i)) throw InvariantViolation("basis ids must equal their positions");
        bases[i].validate();
    }
    for (const Edge& e : graph.edges()) {
        auto it = edge_cover.find(e);
        if (it == edge_cover.end()) throw InvariantViolation("edge " + edge_name(e) + " is not covered");
        if (it->second < 0 || static_cast<std::size_t>(it->second) >= bases.size())
            throw InvariantViolation("edge " + edge_name(e) + " maps to an unknown basis");
        const auto& basis = bases[static_cast<std::size_t>(it->second)];
        if (!basis.find(graph.vertex(e.first)) || !basis.find(graph.vertex(e.second)))
            throw InvariantViolation("basis " + std::to_string(basis.id) + " does not contain both ends of edge " +
                                     edge_name(e));
    }
}

std::vector<PureState> complete_basis(std::span<const PureState> seed) {
    if (seed.empty()) throw InvalidArgument("basis completion needs at least one seed state");
    const std::size_t d = seed.front().dim();
    std::vector<std::vector<Complex>> ortho;
    std::vector<PureState> out(seed.begin(), seed.end());
    for (const auto& s : seed) ortho.emplace_back(s.amplitudes().begin(), s.amplitudes().end());

    for (std::size_t k = 0; k < d && out.size() < d; ++k) {
        std::vector<Complex> w(d, Complex{0.0, 0.0});
        w[k] = 1.0;
        // Modified Gram-Schmidt with one re-orthogonalization pass.
        project_out(w, ortho);
        project_out(w, ortho);
        const double n = norm(w);
        if (n < 1e-6) continue;
        for (auto& z : w) {
            z /= n;
            if (std::abs(z.real()) < 1e-14) z.real(0.0);
            if (std::abs(z.imag()) < 1e-14) z.imag(0.0);
        }
        out.push_back(make_state(w));
        ortho.emplace_back(out.back().amplitudes().begin(), out.back().amplitudes().end());
    }
    if (out.size() != d)
        throw NumericalError("orthonormal completion produced " + std::to_string(out.size()) + " of " +
                             std::to_string(d) + " directions");
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b)
            if (std::abs(inner_product(out[a], out[b])) > kCompletionTolerance)
                throw NumericalError("orthonormal completion is not orthogonal within tolerance");
    return out;
}

CoveringSet covering_set(const OrthogonalityGraph& graph, CoverReuse reuse) {
    CoveringSet cover;
    const std::size_t n = graph.size();
    if (n == 0) return cover;
    const std::size_t d = graph.dim();

    // Vertices grouped by ray; ray_of[v] is the smallest index on v's ray.
    std::vector<std::size_t> ray_of(n);
    for (std::size_t v = 0; v < n; ++v) {
        ray_of[v] = v;
        for (std::size_t u = 0; u < v; ++u)
            if (ray_of[u] == u && same_ray(graph.vertex(u), graph.vertex(v))) {
                ray_of[v] = u;
                break;
            }
    }

    const auto edges = graph.edges();
    std::vector<Bitset> uncovered(n, Bitset(n));
    for (const auto& [a, b] : edges) {
        uncovered[a].set(b);
        uncovered[b].set(a);
    }

    for (const Edge& edge : edges) {
        if (!uncovered[edge.first].test(edge.second)) continue;

        std::vector<std::size_t> clique{edge.first, edge.second};
        Bitset candidates = graph.neighbours(edge.first) & graph.neighbours(edge.second);
        while (clique.size() < d && candidates.any()) {
            std::size_t best = Bitset::npos;
            std::size_t best_gain = 0;
            for (std::size_t c = candidates.find_first(); c != Bitset::npos; c = candidates.find_next(c)) {
                std::size_t gain = 0;
                for (std::size_t m : clique) gain += uncovered[c].test(m) ? 1 : 0;
                if (best == Bitset::npos || gain > best_gain) {
                    best = c;
                    best_gain = gain;
                }
            }
            clique.push_back(best);
            candidates &= graph.neighbours(best);
        }

        std::vector<PureState> seed;
        for (std::size_t v : clique) seed.push_back(graph.vertex(v));
        std::vector<PureState> elements;
        try {
            elements = complete_basis(seed);
        } catch (const NumericalError& e) {
            throw NumericalError("cannot complete a basis for edge " + edge_name(edge) + ": " + e.what());
        }

        MeasurementBasis basis;
        basis.id = static_cast<int>(cover.bases.size());
        basis.elements = std::move(elements);
        basis.vertices.assign(d, std::nullopt);
        for (std::size_t k = 0; k < clique.size(); ++k) basis.vertices[k] = clique[k];

        // Vertices this basis contains under the reuse policy.
        Bitset members(n);
        if (reuse == CoverReuse::by_vertex) {
            for (std::size_t v : clique) members.set(v);
        } else {
            for (std::size_t v = 0; v < n; ++v) {
                if (ray_of[v] != v) {
                    if (members.test(ray_of[v])) members.set(v);
                    continue;
                }
                if (basis.find(graph.vertex(v))) members.set(v);
            }
        }
        for (std::size_t u = members.find_first(); u != Bitset::npos; u = members.find_next(u)) {
            const Bitset hit = uncovered[u] & members;
            for (std::size_t w = hit.find_first(); w != Bitset::npos; w = hit.find_next(w)) {
                if (w <= u) continue;
                cover.edge_cover[{u, w}] = basis.id;
                uncovered[u].reset(w);
                uncovered[w].reset(u);
            }
        }
        cover.bases.push_back(std::move(basis));
    }
    return cover;
}

}  // namespace onto
