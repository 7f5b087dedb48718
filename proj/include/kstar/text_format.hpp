// Text serialization of polynomials, multivector fields, multidifferential
// operators and truncated series. The grammar is documented in
// docs/formats.md; every printer output parses back to the same value.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kstar/hochschild.hpp"
#include "kstar/multidiff.hpp"
#include "kstar/multivector.hpp"
#include "kstar/polynomial.hpp"

namespace kstar {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos, const std::string& expected = {});
  std::size_t position;
  std::string expected;
};

/// x, y, z when dim <= 3, otherwise x1 .. xd.
std::string variable_name(int dim, int index);

std::string format_rational(const Rational& r);
Rational parse_rational(std::string_view text);

std::string format_polynomial(const Polynomial& p);
/// Variables beyond `dim` are an error.
Polynomial parse_polynomial(std::string_view text, int dim);

/// "dim N; <terms>" with terms like "2*x*y * d/dx ^ d/dz".
std::string format_multivector(const MultivectorField& m);
/// A "dim N" header is optional; without it the dimension is the largest
/// variable index used (at least 1). An optional "degree K" header fixes the
/// degree of an all-zero input.
MultivectorField parse_multivector(std::string_view text);
/// Same, with the dimension supplied by the caller (a header must agree).
MultivectorField parse_multivector(std::string_view text, int dim);

/// "dim N; arity M; <terms>" with terms like "x*[dx^2 | dy]".
std::string format_operator(const MultidiffOperator& op);
MultidiffOperator parse_operator(std::string_view text);

/// "x*y + 1*h + (x + y)*h^2".
std::string format_series(const std::vector<Polynomial>& coeffs);

/// One "h^n: <operator terms>" line per order, after a "dim N; order N" line.
std::string format_bidiff_series(const FormalBidiffSeries& b);

}  // namespace kstar
