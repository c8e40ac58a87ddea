#pragma once

#include <cstdint>

namespace onto {

/// Enumeration caps shared by the modules that build exponentially sized objects.
struct Limits {
    /// Maximum number of sign vectors produced by hadamard_family.
    std::uint64_t family_cap = std::uint64_t{1} << 20;
    /// Maximum number of vertices for which a dense adjacency matrix is built.
    std::uint64_t graph_vertex_cap = std::uint64_t{1} << 14;
    /// Maximum number of deterministic assignments d^{#bases}.
    std::uint64_t assignment_cap = std::uint64_t{1} << 22;
    /// Maximum dense simplex tableau size (rows x columns) for the overlap LP;
    /// exact arithmetic gets a sixteenth of it.
    std::uint64_t lp_tableau_cap = std::uint64_t{1} << 26;

    /// Defaults, with every cap replaced by ONTO_OVERLAP_CAP when that variable is set.
    static Limits from_env();
};

/// Name of the environment variable that overrides enumeration caps.
inline constexpr const char* kCapEnvVar = "ONTO_OVERLAP_CAP";

}  // namespace onto
