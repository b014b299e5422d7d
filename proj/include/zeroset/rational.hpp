#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace zeroset {

// Exact arbitrary-precision rational. Always kept canonical (reduced, positive
// denominator).
using Rational = mpq_class;

// Parses "p", "-p", "p/q" (optionally surrounded by whitespace).
// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string format_rational(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace zeroset
