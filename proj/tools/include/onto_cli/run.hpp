#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "onto/graph.hpp"
#include "onto/limits.hpp"
#include "onto/states.hpp"

namespace onto::cli {

enum class Command { graph, alpha, bounds, lp, ksqubit, sweep, model };
enum class Format { json, csv };

const char* to_string(Command c);

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kCapacity = 2;
inline constexpr int kInvariant = 3;

struct RunConfig {
    Command command = Command::graph;
    int d = 4;
    std::string d_range;  // sweep only, "a..b"
    std::optional<double> epsilon;
    std::optional<double> alpha;  // bounds: evaluate the corollary at this alpha too
    double budget_seconds = 60.0;
    Limits limits{};
    std::string out_path;
    Format format = Format::json;
    std::uint64_t seed = 0;
    bool timings = false;

    std::string family = "hadamard";  // graph / alpha / lp
    bool exact = false;
    CoverReuse reuse = CoverReuse::by_ray;
    std::string input_path;

    int points = 50;
    int resolution = 256;

    /// Throws InvalidArgument on out-of-range values.
    void validate() const;
};

/// The states a family name stands for, and the preparation psi used by `lp`.
struct Family {
    PureState psi;
    std::vector<PureState> members;
    /// Sign patterns of the members, when the family is a Hadamard one.
    std::vector<SignVector> signs;
};
Family make_family(const std::string& name, int d, const Limits& limits);

/// Parses argv (argv[0] is the program name) and runs. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Runs a parsed configuration. Never throws.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace onto::cli
