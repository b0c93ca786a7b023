#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace latdiv {

/// Exact rational number. Every diversity value, lattice function coordinate
/// and polyhedron coordinate in the library uses this type.
using Rational = mpq_class;

/// Parses a decimal integer ("3", "-2") or a fraction "p/q" with q > 0.
/// The result is in lowest terms. Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

/// Lowest-terms text form: "0", "7", "-1/2".
std::string to_string(const Rational& q);

/// "(0,1/2,1)" style tuple.
std::string to_tuple_string(const std::vector<Rational>& values);

}  // namespace latdiv
