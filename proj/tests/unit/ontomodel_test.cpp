#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "onto/error.hpp"
#include "onto/ontomodel.hpp"
#include "support/random_models.hpp"

using namespace onto;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

MeasurementBasis basis(int id, std::vector<PureState> elems) {
    MeasurementBasis b{id, std::move(elems), {}};
    b.vertices.assign(b.elements.size(), std::nullopt);
    return b;
}

MeasurementBasis z_basis(int id) { return basis(id, {PureState::basis_vector(2, 0), PureState::basis_vector(2, 1)}); }
MeasurementBasis x_basis(int id) { return basis(id, {make_state({kH, kH}), make_state({kH, -kH})}); }

// Points: (Z, X) outcomes 00, 01, 10, 11. Preparations |0>, |1>, |+>, |->.
FiniteOntModel worked_model() {
    std::vector<PureState> preps{PureState::basis_vector(2, 0), PureState::basis_vector(2, 1), make_state({kH, kH}),
                                 make_state({kH, -kH})};
    std::vector<Measure> mu{Measure::from_dense({0.5, 0.5, 0, 0}), Measure::from_dense({0, 0, 0.5, 0.5}),
                            Measure::from_dense({0.5, 0, 0.5, 0}), Measure::from_dense({0, 0.5, 0, 0.5})};
    return FiniteOntModel({z_basis(0), x_basis(1)}, preps, mu);
}

}  // namespace

TEST(Assignments, MixedRadixOrder) {
    std::vector<MeasurementBasis> bases{z_basis(0), x_basis(1)};
    const auto all = enumerate_assignments(bases);
    ASSERT_EQ(all.size(), 4u);
    EXPECT_EQ(all[1].outcomes, (std::vector<std::uint32_t>{0, 1}));
    EXPECT_EQ(all[2].outcomes, (std::vector<std::uint32_t>{1, 0}));
    EXPECT_EQ(assignment_count(3, 4), 81u);
    Limits tight;
    tight.assignment_cap = 80;
    EXPECT_THROW(assignment_count(3, 4, tight), CapacityError);
    const auto m = worked_model();
    for (std::size_t l = 0; l < 4; ++l) EXPECT_EQ(m.assignment(l), all[l]);
}

TEST(Measure, DenseAndSparseAgree) {
    const auto dense = Measure::from_dense({0.25, 0, 0.75, 0});
    const auto sparse = Measure::from_entries(Measure::kSparseThreshold + 8, {{2, 0.75}, {0, 0.25}});
    EXPECT_FALSE(dense.is_sparse());
    EXPECT_TRUE(sparse.is_sparse());
    EXPECT_DOUBLE_EQ(sparse.at(2), 0.75);
    EXPECT_DOUBLE_EQ(sparse.at(5), 0.0);
    EXPECT_DOUBLE_EQ(sparse.total(), 1.0);
    Bitset s(4);
    s.set(2);
    EXPECT_DOUBLE_EQ(dense.mass(s), 0.75);
    EXPECT_EQ(dense.support().indices(), (std::vector<std::size_t>{0, 2}));
    EXPECT_THROW(Measure::from_entries(4, {{4, 1.0}}), InvalidArgument);
    EXPECT_THROW(Measure::from_entries(4, {{1, 0.5}, {1, 0.5}}), InvalidArgument);
}

TEST(FiniteOntModel, RejectsInvalidMeasures) {
    std::vector<PureState> preps{PureState::basis_vector(2, 0)};
    EXPECT_THROW(FiniteOntModel({z_basis(0)}, preps, {Measure::from_dense({0.5, 0.4})}), InvalidArgument);
    EXPECT_THROW(FiniteOntModel({z_basis(0)}, preps, {Measure::from_dense({1.5, -0.5})}), InvalidArgument);
    EXPECT_THROW(FiniteOntModel({z_basis(0)}, preps, {Measure::from_dense({1, 0, 0})}), InvalidArgument);
    EXPECT_THROW(FiniteOntModel({z_basis(0)}, preps, {}), InvalidArgument);
}

TEST(GammaSets, WorkedModel) {
    const auto m = worked_model();
    EXPECT_EQ(gamma_set(m, 0, 0).indices(), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(gamma_set(m, 1, 1).indices(), (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(gamma_cap(m, make_state({kH, kH})).indices(), (std::vector<std::size_t>{0, 2}));
    EXPECT_THROW(gamma_cap(m, make_state({1.0, 2.0})), InvalidArgument);
    EXPECT_THROW(gamma_set(m, 2, 0), InvalidArgument);
}

TEST(BornCheck, Examples) {
    EXPECT_NEAR(born_check(worked_model()), 0.0, 1e-12);
    // Concentrated on the assignment that answers 0 for the only basis.
    FiniteOntModel sharp({z_basis(0)}, {PureState::basis_vector(2, 0)}, {Measure::from_dense({1, 0})});
    EXPECT_EQ(born_check(sharp), 0.0);
    FiniteOntModel uniform({z_basis(0), x_basis(1)}, {PureState::basis_vector(2, 0)},
                           {Measure::from_dense({0.25, 0.25, 0.25, 0.25})});
    EXPECT_NEAR(born_check(uniform), 0.5, 1e-15);
}

TEST(Overlaps, HandValues) {
    const auto m = worked_model();
    EXPECT_DOUBLE_EQ(classical_overlap(m, 0, 2), 0.5);
    EXPECT_DOUBLE_EQ(classical_overlap(m, 0, 1), 0.0);
    EXPECT_DOUBLE_EQ(classical_overlap(m, 3, 3), 1.0);
    EXPECT_DOUBLE_EQ(variational_distance(m, 0, 1).value, 1.0);
    EXPECT_DOUBLE_EQ(variational_distance(m, 0, 1).guessing_probability, 1.0);
    EXPECT_THROW(classical_overlap(m, 0, 4), InvalidArgument);

    // mu = (1/2, 1/2, 0), nu = (1/2, 0, 1/2) padded to the four points.
    FiniteOntModel pair({z_basis(0), x_basis(1)}, {make_state({kH, kH}), make_state({kH, kH})},
                        {Measure::from_dense({0.5, 0.5, 0, 0}), Measure::from_dense({0.5, 0, 0.5, 0})});
    EXPECT_DOUBLE_EQ(classical_overlap(pair, 0, 1), 0.5);
    EXPECT_DOUBLE_EQ(variational_distance(pair, 0, 1).value, 0.5);
    EXPECT_DOUBLE_EQ(variational_distance(pair, 0, 1).guessing_probability, 0.75);
}

TEST(Proposition1, WorkedModelIsTight) {
    const auto m = worked_model();
    const auto gamma = gamma_cap(m, make_state({kH, kH}));
    const auto r = proposition1_check(m, 0, 2, gamma);
    EXPECT_TRUE(r.holds);
    EXPECT_NEAR(r.psi_mass, 0.5, 1e-15);
    EXPECT_NEAR(r.classical_overlap, 0.5, 1e-15);
    EXPECT_NEAR(r.slack, 0.0, 1e-15);
    EXPECT_THROW(proposition1_check(m, 0, 2, gamma_set(m, 0, 0)), InvalidArgument);
}

TEST(Proposition1, RandomModels) {
    std::mt19937_64 rng(1);
    int checks = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto rm = fixtures::random_model(rng);
        ASSERT_LE(born_check(rm.model), 1e-9);
        const std::size_t n = rm.model.preparations().size();
        for (std::size_t psi = 0; psi < n; ++psi)
            for (std::size_t phi = 0; phi < n; ++phi)
                for (const auto& gamma : fixtures::measure_one_sets(rm, phi, rng)) {
                    const auto r = proposition1_check(rm.model, psi, phi, gamma);
                    EXPECT_TRUE(r.holds) << "trial " << trial;
                    ++checks;
                }
    }
    EXPECT_GT(checks, 1000);
}

TEST(Overlaps, ComplementaryOnRandomModels) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto rm = fixtures::random_model(rng);
        const std::size_t n = rm.model.preparations().size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double lc = classical_overlap(rm.model, i, j);
                EXPECT_NEAR(lc + variational_distance(rm.model, i, j).value, 1.0, 1e-12);
                EXPECT_NEAR(lc, classical_overlap(rm.model, j, i), 1e-15);
            }
    }
}

// Orthogonal basis elements answer different outcomes of a shared basis.
TEST(GammaSets, AdjacentStatesAreDisjoint) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const auto rm = fixtures::random_model(rng);
        for (const auto& b : rm.model.bases())
            for (std::size_t i = 0; i < b.dim(); ++i)
                for (std::size_t j = i + 1; j < b.dim(); ++j)
                    EXPECT_FALSE(gamma_cap(rm.model, b.elements[i]).intersects(gamma_cap(rm.model, b.elements[j])));
    }
}

TEST(OverlapReport, AllOrthogonalAndSelf) {
    const auto m = worked_model();
    std::vector<std::size_t> fam{1};
    const auto r = overlap_report(m, 0, fam, 1.0);
    EXPECT_EQ(r.total_classical, 0.0);
    EXPECT_FALSE(r.pairs[0].ratio.has_value());
    std::vector<std::size_t> self{0};
    EXPECT_DOUBLE_EQ(overlap_report(m, 0, self, 1.0).kbar, 1.0);
}
