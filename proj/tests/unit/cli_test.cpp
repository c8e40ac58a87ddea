#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "onto/json.hpp"
#include "onto_cli/run.hpp"

using namespace onto;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "onto-overlap");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string tmp_path(const std::string& name) {
    const char* dir = std::getenv("ONTO_TEST_TMP");
    return ((dir ? std::filesystem::path(dir) : std::filesystem::temp_directory_path()) / name).string();
}

}  // namespace

TEST(Cli, AlphaDimensionFour) {
    const auto r = invoke({"alpha", "--d", "4"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j.at("result").at("value"), 4);
    EXPECT_EQ(j.at("result").at("status"), "exact");
    EXPECT_EQ(j.at("tool"), "onto-overlap");
    EXPECT_TRUE(j.contains("version"));
    EXPECT_EQ(j.at("config").at("d"), 4);
}

TEST(Cli, GraphSummary) {
    const auto r = invoke({"graph", "--d", "4"});
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out).at("result");
    EXPECT_EQ(j.at("edges"), 48);
    EXPECT_EQ(j.at("components"), 2);
    const auto csv = invoke({"graph", "--d", "4", "--emit", "csv"});
    EXPECT_NE(csv.out.find("degree,count\n6,16\n"), std::string::npos);
    EXPECT_EQ(csv.out.rfind("# onto-overlap ", 0), 0u);
}

TEST(Cli, LpBB84ExactObjective) {
    const auto r = invoke({"lp", "--d", "2", "--family", "bb84", "--exact"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out).at("result");
    EXPECT_EQ(j.at("objective_exact"), "2");
    EXPECT_EQ(j.at("overlaps_exact"), json({"1", "0", "1/2", "1/2"}));
    EXPECT_EQ(j.at("total_overlap_bound").at("holds"), true);
    EXPECT_EQ(j.at("alpha").at("value"), 2);
    EXPECT_TRUE(j.at("solver").contains("iterations"));
    EXPECT_TRUE(j.at("solver").contains("duality_gap"));
    EXPECT_FALSE(j.at("solver").contains("seconds"));
}

TEST(Cli, LpFromInputFileAndModelRoundTrip) {
    const auto family_file = tmp_path("cli_family.json");
    {
        std::ofstream f(family_file);
        f << R"({"psi": {"bits": "0000"}, "family": [{"bits": "0000"}, {"bits": "0011"}, {"bits": "0101"}, {"bits": "0110"}]})";
    }
    const auto model_file = tmp_path("cli_lp.json");
    const auto r = invoke({"lp", "--input", family_file, "--out", model_file});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(model_file);
    const auto j = json::parse(in);
    EXPECT_NEAR(j.at("result").at("objective").get<double>(), 1.0, 1e-9);

    const auto saved = tmp_path("cli_model.json");
    {
        std::ofstream f(saved);
        f << j.at("result").at("model").dump();
    }
    const auto m = invoke({"model", "--input", saved});
    ASSERT_EQ(m.code, 0) << m.err;
    EXPECT_EQ(json::parse(m.out).at("result").at("reproduces_born"), true);
}

TEST(Cli, SweepIsByteIdenticalAndCarriesComparison) {
    const auto a = invoke({"sweep", "--d", "4..9", "--epsilon", "0.5", "--emit", "csv"});
    const auto b = invoke({"sweep", "--d", "4..9", "--epsilon", "0.5", "--emit", "csv"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("barrett_comparison"), std::string::npos);
    EXPECT_NE(a.out.find("0.5714285714285714"), std::string::npos);  // 4/7
    const auto j = invoke({"sweep", "--d", "4..5", "--epsilon", "0.5"});
    const auto rows = json::parse(j.out).at("result").at("rows");
    EXPECT_EQ(rows.at(0).at("alpha_status"), "exact");
    EXPECT_EQ(rows.at(0).at("vacuous"), true);
}

TEST(Cli, KsQubitCsv) {
    const auto r = invoke({"ksqubit", "--points", "5", "--resolution", "64", "--emit", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("theta,L_C,L_Q,k\n0,1,1,1\n"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({"bounds", "--d", "8"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"bounds", "--d", "8", "--epsilon", "2.5"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"sweep", "--d", "4..8"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"graph"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"graph", "--d", "4", "--emit", "xml"}).code, cli::kUsage);
    EXPECT_EQ(invoke({}).code, cli::kUsage);
    EXPECT_EQ(invoke({"lp", "--d", "3", "--family", "bb84"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"ksqubit", "--resolution", "8"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"alpha", "--d", "4", "--budget", "0"}).code, cli::kUsage);
}

TEST(Cli, CapacityExitCode) {
    cli::RunConfig cfg;
    cfg.command = cli::Command::graph;
    cfg.d = 16;
    cfg.limits.family_cap = 1024;
    std::ostringstream out, err;
    EXPECT_EQ(cli::run(cfg, out, err), cli::kCapacity);
    EXPECT_NE(err.str().find("ONTO_OVERLAP_CAP"), std::string::npos);
}

TEST(Cli, BoundsReportStatesEpsilonAndVacuity) {
    const auto r = invoke({"bounds", "--d", "6", "--epsilon", "0.5"});
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out).at("result");
    EXPECT_EQ(j.at("d_tilde"), 4);
    EXPECT_EQ(j.at("epsilon"), 0.5);
    EXPECT_EQ(j.at("vacuous"), true);
    EXPECT_EQ(j.at("alpha_status"), "frankl_rodl(0.5)");
}
