#include <gtest/gtest.h>

#include <cmath>

#include "onto/error.hpp"
#include "onto/json.hpp"

using namespace onto;

TEST(Json, StateRoundTrip) {
    const auto s = make_state({Complex(0.6, 0.1), Complex(-0.2, 0.7)});
    const json j = s;
    EXPECT_EQ(j.at("dim"), 2);
    const auto back = state_from_json(j);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(back[i], s[i]);
    EXPECT_THROW(state_from_json(json{{"dim", 3}, {"re", {1, 0}}}), InvalidArgument);
    EXPECT_THROW(state_from_json(json{{"re", 1}}), InvalidArgument);
}

TEST(Json, SignVectorRoundTrip) {
    const auto v = SignVector::from_bit_string("0110");
    const json j = v;
    EXPECT_EQ(j.at("bits"), "0110");
    EXPECT_EQ(sign_vector_from_json(j), v);
    EXPECT_TRUE(state_from_json(j).is_exact());
    EXPECT_THROW(sign_vector_from_json(json{{"dim", 5}, {"bits", "0110"}}), InvalidArgument);
}

TEST(Json, GraphRoundTrip) {
    const auto g = hadamard_graph(4);
    const auto j = graph_to_json(g);
    EXPECT_EQ(j.at("edges").size(), 48u);
    EXPECT_EQ(j.at("vertices").at(3), "0011");
    EXPECT_TRUE(graph_from_json(j).same_edges(g));
    EXPECT_EQ(degree_histogram_csv(g), "degree,count\n6,16\n");
}

TEST(Json, ModelRoundTrip) {
    const double h = 1.0 / std::sqrt(2.0);
    MeasurementBasis z{0, {PureState::basis_vector(2, 0), PureState::basis_vector(2, 1)}, {0, 1}};
    MeasurementBasis x{1, {make_state({h, h}), make_state({h, -h})}, {2, 3}};
    FiniteOntModel m({z, x}, {PureState::basis_vector(2, 0)}, {Measure::from_dense({0.5, 0.5, 0, 0})});
    const auto j = model_to_json(m);
    EXPECT_EQ(j.at("assignment_count"), 4);
    const auto back = model_from_json(j);
    EXPECT_EQ(back.measure(0).to_dense(), m.measure(0).to_dense());
    EXPECT_EQ(born_check(back), born_check(m));
    auto broken = j;
    broken["assignment_count"] = 5;
    EXPECT_THROW(model_from_json(broken), InvalidArgument);
}

TEST(Json, SweepCsvShapeAndDeterminism) {
    const std::vector<int> dims{4, 5};
    const auto a = sweep_to_csv(scaling_sweep(dims, 0.5));
    const auto b = sweep_to_csv(scaling_sweep(dims, 0.5));
    EXPECT_EQ(a, b);
    const auto header = a.substr(0, a.find('\n'));
    EXPECT_EQ(header.rfind("d,d_tilde,epsilon,c,alpha_used,alpha_status,corollary_value,theorem2_value,"
                           "barrett_comparison,vacuous",
                           0),
              0u);
    EXPECT_NE(a.find("\n4,4,0.5,"), std::string::npos);
    EXPECT_NE(a.find(",1.3333333333333333,true,2,"), std::string::npos);
}

TEST(Json, FormatDoubleRoundTrips) {
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(2.0), "2");
    const double v = 0.1 + 0.2;
    EXPECT_EQ(std::stod(format_double(v)), v);
}
