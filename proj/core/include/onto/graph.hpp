#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "onto/bitset.hpp"
#include "onto/limits.hpp"
#include "onto/states.hpp"

namespace onto {

using Edge = std::pair<std::size_t, std::size_t>;

/// Graph on a finite state set with an edge between every orthogonal pair.
class OrthogonalityGraph {
public:
    OrthogonalityGraph(std::vector<PureState> vertices, std::vector<Bitset> adjacency,
                       std::vector<SignVector> sign_vectors = {});

    std::size_t dim() const noexcept { return vertices_.empty() ? 0 : vertices_.front().dim(); }
    std::size_t size() const noexcept { return vertices_.size(); }
    const PureState& vertex(std::size_t i) const { return vertices_[i]; }
    std::span<const PureState> vertices() const noexcept { return vertices_; }
    /// Sign patterns of the vertices when the graph was built from sign vectors.
    std::span<const SignVector> sign_vectors() const noexcept { return sign_vectors_; }

    const Bitset& neighbours(std::size_t i) const { return adjacency_[i]; }
    bool adjacent(std::size_t i, std::size_t j) const { return adjacency_[i].test(j); }
    std::size_t degree(std::size_t i) const { return adjacency_[i].count(); }
    std::size_t edge_count() const;
    /// Edges (i, j) with i < j in lexicographic order.
    std::vector<Edge> edges() const;
    /// Connected components, each sorted, ordered by smallest vertex.
    std::vector<std::vector<std::size_t>> components() const;
    /// degree -> number of vertices with that degree.
    std::map<std::size_t, std::size_t> degree_histogram() const;

    /// Subgraph induced on `keep`, in the given order.
    OrthogonalityGraph induced(std::span<const std::size_t> keep) const;

    /// Edge sets are identical (vertex order matters, states are not compared).
    bool same_edges(const OrthogonalityGraph& other) const;

private:
    std::vector<PureState> vertices_;
    std::vector<Bitset> adjacency_;
    std::vector<SignVector> sign_vectors_;
};

enum class DuplicatePolicy { reject, allow };

/// Edge iff orthogonal. Vertex order follows the input.
/// Throws InvalidArgument on mixed dimensions, and on two states on the same
/// ray unless `duplicates` is DuplicatePolicy::allow.
OrthogonalityGraph orthogonality_graph(std::span<const PureState> states,
                                       DuplicatePolicy duplicates = DuplicatePolicy::reject,
                                       const Limits& limits = {});

/// Sign-vector overload. s and -s are distinct vectors on one ray; both are
/// kept, as the 2^d-element Hadamard family requires. Repeated bit patterns
/// are still rejected.
OrthogonalityGraph orthogonality_graph(std::span<const SignVector> vectors, const Limits& limits = {});

/// Hadamard graph on hadamard_family(d): edge iff Hamming distance is d/2.
OrthogonalityGraph hadamard_graph(int d, const Limits& limits = {});

/// Vertex indices of the even-weight sign vectors of hadamard_graph(d).
std::vector<std::size_t> even_weight_vertices(int d);

// --- covering sets -------------------------------------------------------

/// d mutually orthonormal states. `vertices[k]` is the graph vertex placed at
/// element k during construction, or nullopt for a completion vector.
struct MeasurementBasis {
    int id = 0;
    std::vector<PureState> elements;
    std::vector<std::optional<std::size_t>> vertices;

    std::size_t dim() const noexcept { return elements.size(); }
    /// Index of the element on the same ray as `state`.
    std::optional<std::size_t> find(const PureState& state) const;
    /// Throws InvariantViolation unless there are exactly d pairwise
    /// orthogonal unit elements.
    void validate() const;
};

/// How an edge counts as covered by a basis.
enum class CoverReuse {
    /// Both endpoints equal some basis element up to global phase.
    by_ray,
    /// Both endpoints were placed in the basis as vertices. States sharing a
    /// ray then appear in several formally distinct bases (contexts).
    by_vertex,
};

struct CoveringSet {
    std::vector<MeasurementBasis> bases;
    std::map<Edge, int> edge_cover;

    /// Throws InvariantViolation unless every basis is valid and every edge
    /// of `graph` maps to a basis containing both endpoints.
    void validate(const OrthogonalityGraph& graph) const;
};

/// Greedy covering set: each uncovered edge is grown into a clique of
/// mutually orthogonal vertices (most newly covered edges first, lowest
/// index on ties), then completed to a basis by Gram-Schmidt over standard
/// vectors. Deterministic given vertex order.
CoveringSet covering_set(const OrthogonalityGraph& graph, CoverReuse reuse = CoverReuse::by_ray);

/// Orthonormal completion of `seed` (assumed orthonormal) to a basis of C^d.
/// Throws NumericalError if fewer than d directions survive.
std::vector<PureState> complete_basis(std::span<const PureState> seed);

// --- independence number --------------------------------------------------

enum class AlphaStatus { exact, lower_bound, upper_bound };

const char* to_string(AlphaStatus status);

struct IndependenceResult {
    std::size_t value = 0;
    AlphaStatus status = AlphaStatus::exact;
    std::vector<std::size_t> witness;
    double elapsed_seconds = 0.0;
    std::uint64_t nodes = 0;
};

/// Exact maximum independent set by bitset branch and bound with a greedy
/// colouring bound, run per connected component. If `budget_seconds`
/// elapses the best set found is returned with status lower_bound.
IndependenceResult independence_number(const OrthogonalityGraph& graph, double budget_seconds = 60.0);

/// True iff `vertices` are distinct and pairwise non-adjacent.
bool is_independent(const OrthogonalityGraph& graph, std::span<const std::size_t> vertices);

/// Sign vectors of weight < d/4 or > 3d/4: no two are at Hamming distance d/2.
/// Witness indices refer to hadamard_graph(d). Throws CapacityError when the
/// family cannot be enumerated under `limits`.
IndependenceResult independent_set_lower_bound(int d, const Limits& limits = {});

/// Size of the weight-shell set without enumerating it.
double weight_shell_size(int d);

/// (2 - epsilon)^d.
double frankl_rodl_bound(int d, double epsilon);

}  // namespace onto
