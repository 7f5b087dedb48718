#include "doctest.h"
#include "generators.hpp"
#include "kstar/hochschild.hpp"
#include "kstar/text_format.hpp"
#include "properties.hpp"

using namespace kstar;

namespace {
void check_property(const kstar::testing::PropertyResult& r) {
  INFO(r.name << ": " << r.first_failure);
  CHECK(r.cases >= 200);
  CHECK(r.failures == 0);
}
MultivectorField mv(const char* s) { return parse_multivector(s); }
MultidiffOperator opr(const char* s) { return parse_operator(s); }
}  // namespace

TEST_SUITE("multivector") {
TEST_CASE("Schouten bracket on small cases") {
  // [x d/dy, y d/dx] = x d/dx - y d/dy
  CHECK(schouten_bracket(mv("dim 2; x * d/dy"), mv("dim 2; y * d/dx")) == mv("dim 2; x * d/dx - y * d/dy"));
  // [f, X] = -X(f)
  CHECK(schouten_bracket(mv("dim 2; degree 0; x^2*y"), mv("dim 2; d/dx")) == mv("dim 2; degree 0; -2*x*y"));
  CHECK(is_poisson(mv("dim 3; x * d/dy ^ d/dz + y * d/dz ^ d/dx + z * d/dx ^ d/dy")));
  CHECK(is_poisson(mv("dim 3; d/dx ^ d/dy + x * d/dy ^ d/dz + y * d/dx ^ d/dz")));
  CHECK_FALSE(is_poisson(mv("dim 3; y * d/dx ^ d/dy + x * d/dy ^ d/dz")));
  CHECK(poisson_apply(mv("dim 2; d/dx ^ d/dy"), parse_polynomial("x", 2), parse_polynomial("y", 2)) ==
        Polynomial::constant(2, 1));
}
TEST_CASE("graded skew-symmetry") { check_property(kstar::testing::schouten_graded_skew()); }
TEST_CASE("graded Jacobi") { check_property(kstar::testing::schouten_graded_jacobi()); }
TEST_CASE("Poisson test against the Jacobiator") { check_property(kstar::testing::schouten_poisson_oracle()); }
}

TEST_SUITE("hochschild") {
TEST_CASE("arity-one differential of a derivation vanishes") {
  CHECK(hochschild_d(opr("dim 2; arity 1; x*y*[dx] + [dy]")).is_zero());
  // d(d^2/dx^2)(f, g) = f g'' - (fg)'' + f'' g = -2 f' g'
  CHECK(hochschild_d(opr("dim 1; arity 1; [dx^2]")) == opr("dim 1; arity 2; -2*[dx | dx]"));
}
TEST_CASE("hkr of a bivector") {
  CHECK(hkr(mv("dim 2; d/dx ^ d/dy")) == opr("dim 2; arity 2; 1/2*[dx | dy] - 1/2*[dy | dx]"));
  CHECK_THROWS(hkr(mv("dim 2; degree 0; x")));
}
TEST_CASE("gauge inverse") {
  const GaugeSeries t({MultidiffOperator::identity(1), opr("dim 1; arity 1; [dx^2]"), opr("dim 1; arity 1; x*[dx]")});
  const auto inv = t.inverse();
  CHECK(inv.terms[1] == opr("dim 1; arity 1; -[dx^2]"));
  // D_2 = -T_2 + T_1 T_1
  CHECK(inv.terms[2] == opr("dim 1; arity 1; -x*[dx] + [dx^4]"));
  CHECK_FALSE(GaugeSeries({MultidiffOperator::identity(1), opr("dim 1; arity 1; 3*[1]")}).vanishes_on_constants());
}
TEST_CASE("symmetrize_order1 removes the order-zero part") {
  const FormalBidiffSeries b({MultidiffOperator::multiplication(1), opr("dim 1; arity 2; 5*[1 | 1]")});
  const auto s = symmetrize_order1(b);
  CHECK(s.t1 == opr("dim 1; arity 1; 5*[1]"));
  CHECK(s.gauged[1].is_zero());
}
TEST_CASE("symmetrize_order1 rejects non-cocycles") {
  const FormalBidiffSeries b({MultidiffOperator::multiplication(1), opr("dim 1; arity 2; x*[1 | 1]")});
  CHECK_NOTHROW(symmetrize_order1(b));
  const FormalBidiffSeries bad({MultidiffOperator::multiplication(1), opr("dim 1; arity 2; [dx^2 | 1]")});
  CHECK_THROWS_AS(symmetrize_order1(bad), CocycleError);
}
TEST_CASE("extract_b1_minus") {
  const FormalBidiffSeries b({MultidiffOperator::multiplication(2), opr("dim 2; arity 2; [dx | dy] - [dy | dx] + [dx | dx]")});
  CHECK(extract_b1_minus(b) == mv("dim 2; d/dx ^ d/dy"));
  const FormalBidiffSeries c({MultidiffOperator::multiplication(2), opr("dim 2; arity 2; [dx^2 | dy] - [dy | dx^2]")});
  CHECK_THROWS_AS(extract_b1_minus(c), NotABivectorError);
}
TEST_CASE("Gerstenhaber graded skew-symmetry") { check_property(kstar::testing::gerstenhaber_graded_skew()); }
TEST_CASE("Gerstenhaber graded Jacobi") { check_property(kstar::testing::gerstenhaber_graded_jacobi()); }
TEST_CASE("Gerstenhaber composition") { check_property(kstar::testing::gerstenhaber_compose_oracle()); }
TEST_CASE("d^2 = 0") { check_property(kstar::testing::hochschild_d_squared()); }
TEST_CASE("d = -[., mu]") { check_property(kstar::testing::hochschild_d_bracket()); }
TEST_CASE("hkr cocycles") { check_property(kstar::testing::hkr_cocycles()); }
TEST_CASE("gauge transforms") { check_property(kstar::testing::gauge_preserves_associativity()); }
TEST_CASE("symmetrization gives a skew order-one term") { check_property(kstar::testing::symmetrize_skew_order1()); }
TEST_CASE("symmetrization closed form") { check_property(kstar::testing::symmetrize_closed_form()); }
}
