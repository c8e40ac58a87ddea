#include "onto/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "onto/error.hpp"

namespace onto {

OrthogonalityGraph::OrthogonalityGraph(std::vector<PureState> vertices, std::vector<Bitset> adjacency,
                                       std::vector<SignVector> sign_vectors)
    : vertices_(std::move(vertices)), adjacency_(std::move(adjacency)), sign_vectors_(std::move(sign_vectors)) {
    if (adjacency_.size() != vertices_.size()) throw InvalidArgument("adjacency size does not match vertex count");
    if (!sign_vectors_.empty() && sign_vectors_.size() != vertices_.size())
        throw InvalidArgument("sign vector count does not match vertex count");
}

std::size_t OrthogonalityGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& row : adjacency_) twice += row.count();
    return twice / 2;
}

std::vector<Edge> OrthogonalityGraph::edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = adjacency_[i].find_next(i); j != Bitset::npos; j = adjacency_[i].find_next(j))
            out.emplace_back(i, j);
    return out;
}

std::vector<std::vector<std::size_t>> OrthogonalityGraph::components() const {
    std::vector<std::vector<std::size_t>> out;
    Bitset seen(size());
    for (std::size_t start = 0; start < size(); ++start) {
        if (seen.test(start)) continue;
        std::vector<std::size_t> comp{start};
        seen.set(start);
        for (std::size_t head = 0; head < comp.size(); ++head) {
            const Bitset& row = adjacency_[comp[head]];
            for (std::size_t j = row.find_first(); j != Bitset::npos; j = row.find_next(j)) {
                if (seen.test(j)) continue;
                seen.set(j);
                comp.push_back(j);
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::map<std::size_t, std::size_t> OrthogonalityGraph::degree_histogram() const {
    std::map<std::size_t, std::size_t> hist;
    for (std::size_t i = 0; i < size(); ++i) ++hist[degree(i)];
    return hist;
}

OrthogonalityGraph OrthogonalityGraph::induced(std::span<const std::size_t> keep) const {
    std::vector<PureState> verts;
    std::vector<SignVector> signs;
    std::vector<Bitset> adj(keep.size(), Bitset(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a) {
        if (keep[a] >= size()) throw InvalidArgument("induced subgraph vertex out of range");
        verts.push_back(vertices_[keep[a]]);
        if (!sign_vectors_.empty()) signs.push_back(sign_vectors_[keep[a]]);
        for (std::size_t b = 0; b < keep.size(); ++b)
            if (adjacent(keep[a], keep[b])) adj[a].set(b);
    }
    return OrthogonalityGraph(std::move(verts), std::move(adj), std::move(signs));
}

bool OrthogonalityGraph::same_edges(const OrthogonalityGraph& other) const {
    return size() == other.size() && adjacency_ == other.adjacency_;
}

namespace {

void check_vertex_cap(std::size_t n, const Limits& limits) {
    if (n > limits.graph_vertex_cap) throw CapacityError("orthogonality graph vertex count", n, limits.graph_vertex_cap);
}

}  // namespace

OrthogonalityGraph orthogonality_graph(std::span<const PureState> states, DuplicatePolicy duplicates,
                                       const Limits& limits) {
    if (states.empty()) throw InvalidArgument("orthogonality graph needs at least one state");
    check_vertex_cap(states.size(), limits);
    const std::size_t n = states.size();
    const std::size_t d = states.front().dim();
    for (std::size_t i = 0; i < n; ++i)
        if (states[i].dim() != d)
            throw InvalidArgument("dimension mismatch: state " + std::to_string(i) + " has dim " +
                                  std::to_string(states[i].dim()) + ", expected " + std::to_string(d));
    std::vector<Bitset> adj(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (duplicates == DuplicatePolicy::reject && same_ray(states[i], states[j]))
                throw InvalidArgument("duplicate states (same ray) at indices " + std::to_string(i) + " and " +
                                      std::to_string(j));
            if (orthogonal(states[i], states[j])) {
                adj[i].set(j);
                adj[j].set(i);
            }
        }
    }
    return OrthogonalityGraph(std::vector<PureState>(states.begin(), states.end()), std::move(adj));
}

OrthogonalityGraph orthogonality_graph(std::span<const SignVector> vectors, const Limits& limits) {
    if (vectors.empty()) throw InvalidArgument("orthogonality graph needs at least one state");
    check_vertex_cap(vectors.size(), limits);
    std::vector<PureState> states;
    states.reserve(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (vectors[i] == vectors[j])
                throw InvalidArgument("duplicate sign vectors at indices " + std::to_string(j) + " and " +
                                      std::to_string(i));
        states.push_back(vectors[i].to_state());
    }
    auto graph = orthogonality_graph(states, DuplicatePolicy::allow, limits);
    std::vector<Bitset> adj;
    adj.reserve(graph.size());
    for (std::size_t i = 0; i < graph.size(); ++i) adj.push_back(graph.neighbours(i));
    return OrthogonalityGraph(std::move(states), std::move(adj),
                              std::vector<SignVector>(vectors.begin(), vectors.end()));
}

OrthogonalityGraph hadamard_graph(int d, const Limits& limits) {
    if (d < 2 || d % 2 != 0)
        throw InvalidArgument("hadamard_graph requires even d >= 2 (odd d has no orthogonal sign vectors), got " +
                              std::to_string(d));
    auto family = hadamard_family(d, limits);
    check_vertex_cap(family.size(), limits);
    const std::size_t n = family.size();
    const int half = d / 2;
    std::vector<Bitset> adj(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::popcount(family[i].bits ^ family[j].bits) == half) {
                adj[i].set(j);
                adj[j].set(i);
            }
    std::vector<PureState> states;
    states.reserve(n);
    for (const auto& v : family) states.push_back(v.to_state());
    return OrthogonalityGraph(std::move(states), std::move(adj), std::move(family));
}

std::vector<std::size_t> even_weight_vertices(int d) {
    if (d < 2 || d >= 64) throw InvalidArgument("even_weight_vertices requires 2 <= d < 64");
    std::vector<std::size_t> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << d); ++bits)
        if (std::popcount(bits) % 2 == 0) out.push_back(static_cast<std::size_t>(bits));
    return out;
}

bool is_independent(const OrthogonalityGraph& graph, std::span<const std::size_t> vertices) {
    Bitset members(graph.size());
    for (std::size_t v : vertices) {
        if (v >= graph.size() || members.test(v)) return false;
        members.set(v);
    }
    for (std::size_t v : vertices)
        if (graph.neighbours(v).intersects(members)) return false;
    return true;
}

namespace {

// Weights kept by the shell construction: 4w < d or 4w > 3d.
bool in_weight_shell(int weight, int d) { return 4 * weight < d || 4 * weight > 3 * d; }

}  // namespace

double weight_shell_size(int d) {
    if (d < 2 || d % 2 != 0) throw InvalidArgument("weight shell requires even d >= 2");
    double total = 0.0;
    double binom = 1.0;
    for (int w = 0; w <= d; ++w) {
        if (in_weight_shell(w, d)) total += binom;
        binom = binom * (d - w) / (w + 1);
    }
    return std::round(total);
}

IndependenceResult independent_set_lower_bound(int d, const Limits& limits) {
    if (d < 2 || d % 2 != 0) throw InvalidArgument("independent_set_lower_bound requires even d >= 2");
    const auto family = hadamard_family(d, limits);
    IndependenceResult result;
    result.status = AlphaStatus::lower_bound;
    for (std::size_t i = 0; i < family.size(); ++i)
        if (in_weight_shell(family[i].weight(), d)) result.witness.push_back(i);
    result.value = result.witness.size();

    // Pairwise check against the Hadamard adjacency predicate.
    const int half = d / 2;
    for (std::size_t a = 0; a < result.witness.size(); ++a)
        for (std::size_t b = a + 1; b < result.witness.size(); ++b)
            if (hamming_distance(family[result.witness[a]], family[result.witness[b]]) == half)
                throw InvariantViolation("weight-shell set contains an edge at d=" + std::to_string(d));
    if (family.size() <= limits.graph_vertex_cap && family.size() <= 4096) {
        const auto graph = hadamard_graph(d, limits);
        if (!is_independent(graph, result.witness))
            throw InvariantViolation("weight-shell set is not independent in hadamard_graph(" + std::to_string(d) + ")");
    }
    return result;
}

double frankl_rodl_bound(int d, double epsilon) {
    if (d < 1) throw InvalidArgument("frankl_rodl_bound requires d >= 1");
    if (!(epsilon > 0.0 && epsilon < 2.0)) throw InvalidArgument("epsilon must lie in (0, 2)");
    return std::pow(2.0 - epsilon, d);
}

const char* to_string(AlphaStatus status) {
    switch (status) {
        case AlphaStatus::exact: return "exact";
        case AlphaStatus::lower_bound: return "lower_bound";
        case AlphaStatus::upper_bound: return "upper_bound";
    }
    return "unknown";
}

}  // namespace onto
