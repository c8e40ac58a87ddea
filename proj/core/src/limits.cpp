#include "onto/limits.hpp"

#include <cstdlib>
#include <string>

#include "onto/error.hpp"

namespace onto {

Limits Limits::from_env() {
    Limits limits;
    const char* raw = std::getenv(kCapEnvVar);
    if (raw == nullptr || *raw == '\0') return limits;
    std::size_t consumed = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(raw, &consumed);
    } catch (const std::exception&) {
        throw InvalidArgument(std::string(kCapEnvVar) + " is not an unsigned integer: " + raw);
    }
    if (consumed != std::string(raw).size() || value == 0)
        throw InvalidArgument(std::string(kCapEnvVar) + " must be a positive integer: " + raw);
    limits.family_cap = value;
    limits.graph_vertex_cap = value;
    limits.assignment_cap = value;
    limits.lp_tableau_cap = value;
    return limits;
}

}  // namespace onto
