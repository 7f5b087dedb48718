#include "doctest.h"
#include "generators.hpp"
#include "kstar/polynomial.hpp"

using namespace kstar;
using kstar::testing::Rng;

TEST_SUITE("polynomial") {
TEST_CASE("basic arithmetic") {
  const auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const auto p = (x + y) * (x - y);
  CHECK(p == x * x - y * y);
  CHECK(p.total_degree() == 2);
  CHECK(Polynomial(2).total_degree() == -1);
  CHECK((x * y).pow(3) == Polynomial::monomial({3, 3}));
  CHECK((p - p).is_zero());
  CHECK(Polynomial::constant(2, 5).is_constant());
}

TEST_CASE("derivatives") {
  const auto p = Polynomial::monomial({3, 2}, 2);  // 2 x^3 y^2
  CHECK(p.derivative(0) == Polynomial::monomial({2, 2}, 6));
  CHECK(p.derivative(1, 2) == Polynomial::monomial({3, 0}, 4));
  CHECK(p.derivative(Exponents{2, 1}) == Polynomial::monomial({1, 1}, 24));
  CHECK(p.derivative(0, 4).is_zero());
  CHECK(falling_factorial(5, 2) == 20);
  CHECK(falling_factorial(1, 2) == 0);
}

TEST_CASE("monomials_up_to counts binomial(d+k, k)") {
  CHECK(monomials_up_to(2, 2).size() == 6);
  CHECK(monomials_up_to(3, 2).size() == 10);
  CHECK(monomials_up_to(3, 0).size() == 1);
}

TEST_CASE("dimension mismatch throws") {
  CHECK_THROWS_AS(Polynomial::variable(2, 0) + Polynomial::variable(3, 0), std::invalid_argument);
}

TEST_CASE("ring identities and Leibniz rule on random polynomials") {
  for (int c = 0; c < 300; ++c) {
    Rng rng(c);
    const int d = kstar::testing::uniform_int(rng, 1, 3);
    const auto f = kstar::testing::random_polynomial(rng, d, 3), g = kstar::testing::random_polynomial(rng, d, 3),
               h = kstar::testing::random_polynomial(rng, d, 3);
    CHECK(f * (g + h) == f * g + f * h);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * g == g * f);
    const int i = kstar::testing::uniform_int(rng, 0, d - 1);
    CHECK((f * g).derivative(i) == f.derivative(i) * g + f * g.derivative(i));
    std::vector<Rational> pt;
    for (int k = 0; k < d; ++k) pt.push_back(kstar::testing::small_rational(rng));
    CHECK((f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt));
  }
}
}
