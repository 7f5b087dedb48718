#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "kstar/mzv.hpp"

using namespace kstar;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {
// zeta(3) = (5/2) sum_{n>=1} (-1)^{n+1} / (n^3 binomial(2n, n))
Big apery_zeta3() {
  Big sum = 0, binom = 1;
  for (int n = 1; n < 200; ++n) {
    binom = binom * (2 * n) * (2 * n - 1) / (Big(n) * n);
    const Big term = 1 / (Big(n) * n * n * binom);
    sum += (n % 2 == 1) ? term : -term;
  }
  return sum * 5 / 2;
}

bool close(const Real& a, const Big& b, double rel) {
  return abs(Big(a) - b) <= rel * abs(b);
}
}  // namespace

TEST_SUITE("mzv") {
TEST_CASE("single and double zeta values against classical closed forms") {
  const Big pi = boost::math::constants::pi<Big>();
  CHECK(close(mzv({2}), pi * pi / 6, 1e-40));
  CHECK(close(mzv({4}), pow(pi, 4) / 90, 1e-40));
  CHECK(close(mzv({3}), apery_zeta3(), 1e-40));
  CHECK(close(mzv({1, 2}), apery_zeta3(), 1e-40));
  CHECK(close(mzv({2, 2}), pow(pi, 4) / 120, 1e-40));
  CHECK(close(mzv({1, 3}), pow(pi, 4) / 360, 1e-40));
  CHECK(close(mzv({1, 1, 2}), pow(pi, 4) / 90, 1e-40));
  CHECK_THROWS_AS(mzv({2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(mzv({13}), UnknownMzvError);
}

TEST_CASE("stuffle") {
  const auto s = stuffle({3}, {3});
  CHECK(s.size() == 2);
  CHECK(s.at({3, 3}) == 2);
  CHECK(s.at({6}) == 1);
  const auto t = stuffle({2}, {1, 2});
  CHECK(t.size() == 4);
  CHECK(t.at({1, 2, 2}) == 2);
  CHECK(t.at({1, 4}) == 1);
}

TEST_CASE("weight values") {
  const auto w = parse_weight_value("-1/6048 + 9/128*zeta(3)^2/pi^6");
  CHECK(w.rational_part() == Rational(-1, 6048));
  CHECK(w.coefficient({3, 3}) == Rational(9, 64));
  CHECK(w.coefficient({6}) == Rational(9, 128));
  CHECK(w.ipi_coefficient({6}) == Rational(-9, 128));
  CHECK_FALSE(w.is_rational());
  CHECK(parse_weight_value(format_weight_value(w)).coefficient({3, 3}) == w.coefficient({3, 3}));
  CHECK(parse_weight_value("1/24").is_rational());
  CHECK_THROWS_AS(parse_weight_value("zeta(3)/pi^2"), WeightFileError);
  CHECK_THROWS_AS(parse_weight_value("zeta(3)/pi^3"), WeightFileError);
  CHECK_THROWS_AS(parse_weight_value("1/24 +"), WeightFileError);
}

TEST_CASE("evaluation of a weight with products of zeta values") {
  const Big pi = boost::math::constants::pi<Big>();
  const Big z3 = apery_zeta3();
  const Big expected = Big(-1) / 6048 + Big(9) / 128 * z3 * z3 / pow(pi, 6);
  const auto w = parse_weight_value("-1/6048 + 9/128*zeta(3)^2/pi^6");
  CHECK(close(mzv_eval(w, 40), expected, 1e-35));
  CHECK(format_real(mzv_eval(w, 20), 20) == "-5.966621419144560037e-05");
}

TEST_CASE("weight files") {
  const auto recs = parse_weight_file("# comment\n1; L R | 1/2\n\n2; L R; L R | 1/4 # inline\n");
  REQUIRE(recs.size() == 2);
  CHECK(recs[1].second.rational_part() == Rational(1, 4));
  CHECK(parse_weight_file(format_weight_file(recs)).size() == 2);
  try {
    parse_weight_file("1; L R | 1/2\n1; L L | 1\n");
    FAIL("expected WeightFileError");
  } catch (const WeightFileError& e) {
    CHECK(e.line == 2);
  }
}
}
