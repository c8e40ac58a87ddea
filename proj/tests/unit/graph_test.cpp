#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "onto/error.hpp"
#include "onto/graph.hpp"

using namespace onto;

namespace {

// Edge set from the complex inner product, independent of Hamming arithmetic.
std::set<Edge> edges_by_inner_product(const std::vector<SignVector>& fam) {
    std::set<Edge> out;
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j)
            if (std::abs(inner_product(fam[i].to_state(), fam[j].to_state())) < 1e-12) out.insert({i, j});
    return out;
}

std::vector<PureState> even_component_states(int d) {
    const auto fam = hadamard_family(d);
    std::vector<PureState> out;
    for (std::size_t i : even_weight_vertices(d)) out.push_back(fam[i].to_state());
    return out;
}

void expect_orthonormal(const MeasurementBasis& b) {
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) {
            const double ip = std::abs(inner_product(b.elements[i], b.elements[j]));
            EXPECT_NEAR(ip, i == j ? 1.0 : 0.0, 1e-9);
        }
}

}  // namespace

TEST(HadamardGraph, DimensionFourStructure) {
    const auto g = hadamard_graph(4);
    EXPECT_EQ(g.size(), 16u);
    EXPECT_EQ(g.edge_count(), 48u);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g.degree(i), 6u);
    const auto comps = g.components();
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(comps[0].size(), 8u);
    EXPECT_EQ(comps[0], even_weight_vertices(4));
}

TEST(HadamardGraph, MatchesGenericConstruction) {
    for (int d : {2, 4, 6, 8}) {
        const auto fam = hadamard_family(d);
        const auto fast = hadamard_graph(d);
        const auto generic = orthogonality_graph(fam);
        EXPECT_TRUE(fast.same_edges(generic)) << "d=" << d;
        const auto oracle = edges_by_inner_product(fam);
        const auto got = fast.edges();
        EXPECT_EQ(std::set<Edge>(got.begin(), got.end()), oracle) << "d=" << d;
    }
}

TEST(HadamardGraph, DegreeIsCentralBinomial) {
    // Each vertex is orthogonal to the C(d, d/2) patterns at distance d/2.
    EXPECT_EQ(hadamard_graph(8).degree(0), 70u);
    EXPECT_EQ(hadamard_graph(6).degree(17), 20u);
    EXPECT_THROW(hadamard_graph(5), InvalidArgument);
}

TEST(OrthogonalityGraph, BB84) {
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<PureState> v{PureState::basis_vector(2, 0), PureState::basis_vector(2, 1), make_state({h, h}),
                             make_state({h, -h})};
    const auto g = orthogonality_graph(v);
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {2, 3}}));
}

TEST(OrthogonalityGraph, DuplicateRays) {
    std::vector<PureState> v{make_state({1.0, 1.0}), make_state({-1.0, -1.0})};
    EXPECT_THROW(orthogonality_graph(v), InvalidArgument);
    EXPECT_EQ(orthogonality_graph(v, DuplicatePolicy::allow).edge_count(), 0u);
    std::vector<PureState> mixed{PureState::basis_vector(2, 0), PureState::basis_vector(3, 0)};
    EXPECT_THROW(orthogonality_graph(mixed), InvalidArgument);
}

TEST(OrthogonalityGraph, VertexCap) {
    Limits tight;
    tight.graph_vertex_cap = 8;
    EXPECT_THROW(hadamard_graph(4, tight), CapacityError);
}

TEST(OrthogonalityGraph, InducedSubgraph) {
    const auto g = hadamard_graph(4);
    const auto keep = even_weight_vertices(4);
    const auto sub = g.induced(keep);
    EXPECT_EQ(sub.size(), 8u);
    // K8 minus the antipodal matching.
    EXPECT_EQ(sub.edge_count(), 24u);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(sub.degree(i), 6u);
}

TEST(CompleteBasis, ExtendsPartialBases) {
    std::vector<PureState> seed{make_state({1.0, 1.0, 0.0}), make_state({Complex(0, 1), Complex(0, -1), 0.0})};
    const auto full = complete_basis(seed);
    ASSERT_EQ(full.size(), 3u);
    MeasurementBasis b{0, full, {}};
    expect_orthonormal(b);
    EXPECT_TRUE(same_ray(full[0], seed[0]));
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    std::vector<Complex> amps(5);
    for (auto& z : amps) z = {g(rng), g(rng)};
    std::vector<PureState> one{make_state(amps)};
    expect_orthonormal(MeasurementBasis{0, complete_basis(one), {}});
}

TEST(CoveringSet, BB84GivesTwoBases) {
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<PureState> v{PureState::basis_vector(2, 0), PureState::basis_vector(2, 1), make_state({h, h}),
                             make_state({h, -h})};
    const auto g = orthogonality_graph(v);
    const auto cover = covering_set(g);
    EXPECT_EQ(cover.bases.size(), 2u);
    EXPECT_NO_THROW(cover.validate(g));
}

TEST(CoveringSet, EvenComponentBothPolicies) {
    const auto states = even_component_states(4);
    const auto g = orthogonality_graph(states, DuplicatePolicy::allow);
    const auto by_ray = covering_set(g, CoverReuse::by_ray);
    const auto by_vertex = covering_set(g, CoverReuse::by_vertex);
    // The 8 vectors are +/- copies of one orthonormal basis.
    EXPECT_EQ(by_ray.bases.size(), 1u);
    EXPECT_GE(by_vertex.bases.size(), 4u);
    for (const auto* cover : {&by_ray, &by_vertex}) {
        EXPECT_NO_THROW(cover->validate(g));
        EXPECT_EQ(cover->edge_cover.size(), g.edge_count());
        for (const auto& b : cover->bases) expect_orthonormal(b);
    }
}

TEST(CoveringSet, FullHadamardFamilyIsCovered) {
    for (int d : {4, 6}) {
        const auto fam = hadamard_family(d);
        std::vector<PureState> states;
        for (const auto& s : fam) states.push_back(s.to_state());
        const auto g = orthogonality_graph(states, DuplicatePolicy::allow);
        const auto cover = covering_set(g);
        EXPECT_NO_THROW(cover.validate(g));
        for (const auto& [edge, id] : cover.edge_cover) {
            const auto& basis = cover.bases.at(static_cast<std::size_t>(id));
            EXPECT_TRUE(basis.find(states[edge.first]).has_value());
            EXPECT_TRUE(basis.find(states[edge.second]).has_value());
        }
    }
}

TEST(CoveringSet, ValidateRejectsMissingEdge) {
    const auto states = even_component_states(4);
    const auto g = orthogonality_graph(states, DuplicatePolicy::allow);
    auto cover = covering_set(g);
    cover.edge_cover.erase(cover.edge_cover.begin());
    EXPECT_THROW(cover.validate(g), InvariantViolation);
}
