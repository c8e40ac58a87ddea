#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "onto/error.hpp"
#include "onto/ontomodel.hpp"
#include "support/random_models.hpp"

using namespace onto;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

std::vector<PureState> bb84() {
    return {PureState::basis_vector(2, 0), PureState::basis_vector(2, 1), make_state({kH, kH}), make_state({kH, -kH})};
}

std::vector<PureState> even_component(int d) {
    const auto fam = hadamard_family(d);
    std::vector<PureState> out;
    for (std::size_t i : even_weight_vertices(d)) out.push_back(fam[i].to_state());
    return out;
}

double witness_total(const LpResult& r) {
    double total = 0.0;
    for (std::size_t idx : r.family_index) total += classical_overlap(r.model, r.psi_index, idx);
    return total;
}

}  // namespace

TEST(OverlapLp, BB84ExactValueTwo) {
    const auto v = bb84();
    const auto g = orthogonality_graph(v);
    const auto cover = covering_set(g);
    LpOptions opt;
    opt.arithmetic = Arithmetic::exact;
    const auto r = max_total_overlap_lp(v[0], v, cover, opt);
    ASSERT_TRUE(r.exact_value.has_value());
    EXPECT_EQ(*r.exact_value, Rational(2));
    EXPECT_EQ(r.exact_overlaps, (std::vector<Rational>{Rational(1), Rational(0), Rational(1, 2), Rational(1, 2)}));
    EXPECT_EQ(r.psi_index, r.family_index[0]);
    EXPECT_LE(born_check(r.model), 1e-12);
    EXPECT_NEAR(witness_total(r), 2.0, 1e-12);
    EXPECT_EQ(independence_number(g).value, 2u);
}

TEST(OverlapLp, BB84Floating) {
    const auto v = bb84();
    const auto cover = covering_set(orthogonality_graph(v));
    const auto r = max_total_overlap_lp(v[0], v, cover);
    EXPECT_NEAR(r.value, 2.0, 1e-9);
    EXPECT_LE(r.stats.duality_gap, 1e-9);
    EXPECT_LE(r.stats.primal_residual, 1e-9);
    const auto rep = overlap_report(r, 2.0);
    EXPECT_NEAR(rep.pairs[2].classical, 0.5, 1e-9);
    EXPECT_NEAR(rep.pairs[2].quantum, 1.0 - std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(*rep.pairs[2].ratio, 0.5 / (1.0 - std::sqrt(0.5)), 1e-8);
    EXPECT_FALSE(rep.pairs[1].ratio.has_value());
    // Null ratio counts as zero; the mean runs over all of V.
    EXPECT_NEAR(rep.kbar, (1.0 + 2 * 0.5 / (1.0 - std::sqrt(0.5))) / 4.0, 1e-8);
    EXPECT_EQ(rep.ratio_terms, 3u);
}

TEST(OverlapLp, SingleStateGivesOne) {
    std::vector<PureState> v{make_state({0.6, 0.8})};
    CoveringSet cover;
    cover.bases.push_back(MeasurementBasis{0, complete_basis(v), {0, std::nullopt}});
    const auto r = max_total_overlap_lp(v[0], v, cover);
    EXPECT_NEAR(r.value, 1.0, 1e-9);
}

TEST(OverlapLp, PsiOutsideFamily) {
    // One basis Z, psi = |+>: L_C(+, 0) + L_C(+, 1) = 1/2 + 1/2.
    std::vector<PureState> v{PureState::basis_vector(2, 0), PureState::basis_vector(2, 1)};
    const auto cover = covering_set(orthogonality_graph(v));
    LpOptions opt;
    opt.arithmetic = Arithmetic::exact;
    const auto r = max_total_overlap_lp(make_state({kH, kH}), v, cover, opt);
    EXPECT_EQ(*r.exact_value, Rational(1));
    EXPECT_EQ(r.model.preparations().size(), 3u);
}

TEST(OverlapLp, NoOrthogonalPairsGivesFamilySize) {
    // Even-weight patterns in d = 6 sit at even Hamming distance, never 3.
    const auto v = even_component(6);
    const auto g = orthogonality_graph(v, DuplicatePolicy::allow);
    ASSERT_EQ(g.edge_count(), 0u);
    const auto cover = covering_set(g);
    EXPECT_TRUE(cover.bases.empty());
    const auto r = max_total_overlap_lp(PureState::basis_vector(6, 0), v, cover);
    EXPECT_EQ(r.stats.ontic_points, 1u);
    EXPECT_NEAR(r.value, static_cast<double>(v.size()), 1e-9);
    EXPECT_EQ(independence_number(g).value, v.size());
}

TEST(OverlapLp, ExtraBasisNeverIncreasesValue) {
    const auto v = bb84();
    auto cover = covering_set(orthogonality_graph(v));
    const double base = max_total_overlap_lp(v[0], v, cover).value;
    const Complex i(0, 1);
    MeasurementBasis y{2, {make_state({Complex(kH), i * kH}), make_state({Complex(kH), -i * kH})}, {}};
    y.vertices.assign(2, std::nullopt);
    cover.bases.push_back(y);
    const double more = max_total_overlap_lp(v[0], v, cover).value;
    EXPECT_LE(more, base + 1e-9);
}

TEST(OverlapLp, EvenHadamardComponentDimensionFour) {
    const auto v = even_component(4);
    const auto g = orthogonality_graph(v, DuplicatePolicy::allow);
    const auto alpha = independence_number(g);
    ASSERT_EQ(alpha.value, 2u);
    const auto psi = PureState::basis_vector(4, 0);
    for (auto reuse : {CoverReuse::by_ray, CoverReuse::by_vertex}) {
        const auto cover = covering_set(g, reuse);
        const auto r = max_total_overlap_lp(psi, v, cover);
        EXPECT_LE(r.value, 2.0 + 1e-9);
        EXPECT_LE(born_check(r.model), 1e-9);
        EXPECT_NEAR(witness_total(r), r.value, 1e-9);
        for (std::size_t a = 0; a < v.size(); ++a)
            for (std::size_t b = a + 1; b < v.size(); ++b)
                if (g.adjacent(a, b)) {
                    EXPECT_FALSE(gamma_cap(r.model, v[a]).intersects(gamma_cap(r.model, v[b])));
                }
    }
    LpOptions opt;
    opt.arithmetic = Arithmetic::exact;
    const auto exact = max_total_overlap_lp(psi, v, covering_set(g), opt);
    EXPECT_LE(*exact.exact_value, Rational(2));
}

TEST(OverlapLp, TotalOverlapNeverExceedsAlphaOnRandomFamilies) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t d = 2 + trial % 2;
        // Members drawn from two or three random bases, some sharing a ray.
        std::vector<MeasurementBasis> bases;
        const std::size_t nb = 2 + trial % 2;
        for (std::size_t k = 0; k < nb; ++k)
            bases.push_back(fixtures::random_basis(d, k > 0 && trial % 3 == 0 ? &bases[0] : nullptr, rng,
                                                  static_cast<int>(k)));
        std::vector<PureState> v;
        for (const auto& b : bases)
            for (const auto& e : b.elements)
                if (rng() % 4 != 0) v.push_back(e);
        if (v.empty()) continue;
        const auto g = orthogonality_graph(v, DuplicatePolicy::allow);
        // The drawing bases join the greedy cover: extra bases only add constraints.
        auto cover = covering_set(g);
        for (auto b : bases) {
            b.id = static_cast<int>(cover.bases.size());
            cover.bases.push_back(std::move(b));
        }
        const auto psi = rng() % 2 ? v[rng() % v.size()] : fixtures::random_state(d, rng);
        const auto r = max_total_overlap_lp(psi, v, cover);
        const auto alpha = independence_number(g);
        EXPECT_LE(r.value, static_cast<double>(alpha.value) + 1e-9) << "trial " << trial;
        EXPECT_LE(r.stats.duality_gap, 1e-9);
        EXPECT_LE(born_check(r.model), 1e-8);
    }
}

TEST(OverlapLp, RejectsIncompleteCover) {
    const auto v = bb84();
    auto cover = covering_set(orthogonality_graph(v));
    cover.bases.pop_back();
    for (auto it = cover.edge_cover.begin(); it != cover.edge_cover.end();)
        it = it->second == 1 ? cover.edge_cover.erase(it) : std::next(it);
    EXPECT_THROW(max_total_overlap_lp(v[0], v, cover), InvalidArgument);
}

TEST(OverlapLp, CapacityError) {
    const auto v = even_component(4);
    const auto cover = covering_set(orthogonality_graph(v, DuplicatePolicy::allow), CoverReuse::by_vertex);
    LpOptions opt;
    opt.limits.assignment_cap = 16;
    EXPECT_THROW(max_total_overlap_lp(PureState::basis_vector(4, 0), v, cover, opt), CapacityError);
}

TEST(OverlapLp, TableauCap) {
    const auto v = bb84();
    const auto cover = covering_set(orthogonality_graph(v));
    LpOptions opt;
    opt.limits.lp_tableau_cap = 64;
    EXPECT_THROW(max_total_overlap_lp(v[0], v, cover, opt), CapacityError);
}

TEST(OverlapLp, ExactModeNeedsRationalBornValues) {
    std::vector<PureState> v{make_state({0.6, 0.8}), make_state({0.8, -0.6})};
    const auto cover = covering_set(orthogonality_graph(v));
    LpOptions opt;
    opt.arithmetic = Arithmetic::exact;
    EXPECT_THROW(max_total_overlap_lp(v[0], v, cover, opt), InvalidArgument);
}
