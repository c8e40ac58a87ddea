#include "onto/error.hpp"

namespace onto {

CapacityError::CapacityError(const std::string& what, std::uint64_t requested, std::uint64_t cap)
    : Error(what + ": requested " + std::to_string(requested) + " exceeds cap " + std::to_string(cap)),
      requested_(requested),
      cap_(cap) {}

}  // namespace onto
