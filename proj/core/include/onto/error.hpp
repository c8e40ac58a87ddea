#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace onto {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was not met (bad dimension, zero vector, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed a configured cap.
class CapacityError : public Error {
public:
    CapacityError(const std::string& what, std::uint64_t requested, std::uint64_t cap);

    std::uint64_t requested() const noexcept { return requested_; }
    std::uint64_t cap() const noexcept { return cap_; }

private:
    std::uint64_t requested_;
    std::uint64_t cap_;
};

/// A mathematical invariant failed: either a bug or an unsound construction.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// A numerical routine could not produce a result (degenerate completion, LP failure).
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace onto
