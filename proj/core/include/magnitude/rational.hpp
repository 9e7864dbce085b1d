#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace magnitude {

using Rational = mpq_class;

/// Accepts "p/q", integers and plain decimals ("0.125", "-3"). The result is
/// canonical. Throws InvalidInput on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);

/// Coefficients c₀..c_m of the polynomial with p(nodes[k]) = values[k], by
/// exact Gaussian elimination on the Vandermonde system. Nodes must be distinct.
std::vector<Rational> solve_vandermonde(const std::vector<Rational>& nodes, const std::vector<Rational>& values);

Rational evaluate_polynomial(const std::vector<Rational>& coefficients, const Rational& x);

}  // namespace magnitude
