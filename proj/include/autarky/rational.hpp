#ifndef AUTARKY_RATIONAL_HPP
#define AUTARKY_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace autarky {

/// Exact arbitrary-precision rational. All energies, LP values and flow
/// capacities in this library use it; there are no tolerances anywhere.
using Rational = mpq_class;

/// Parses "[+-]digits[/digits]". Throws std::invalid_argument on malformed
/// input or a zero denominator. The result is canonicalized.
Rational parse_rational(std::string_view text);

/// Canonical text form: "3", "-3/2". Never "3/1".
std::string to_string(const Rational& value);

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace autarky

#endif  // AUTARKY_RATIONAL_HPP
