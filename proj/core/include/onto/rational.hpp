#pragma once

#include <gmpxx.h>

#include <string>

namespace onto {

/// Arbitrary-precision rational used on every exact code path.
using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace onto
