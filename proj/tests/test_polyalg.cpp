#include <doctest.h>

#include "zeroset/poly.hpp"
#include "zeroset/samples.hpp"
#include "zeroset/solutions.hpp"

using namespace zeroset;

namespace {
MultiPoly P(const char* s, std::size_t n) { return parse_poly(s, n); }
}  // namespace

TEST_CASE("rationals parse and print exactly") {
  CHECK(format_rational(parse_rational("6/4")) == "3/2");
  CHECK(format_rational(parse_rational(" -7 ")) == "-7");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
}

TEST_CASE("derivatives") {
  CHECK(P("x1^2*x2", 2).derive(0) == P("2*x1*x2", 2));
  CHECK(P("5", 2).derive(1).is_zero());
  MultiPoly p = P("x1^3 - 2*x1*x2 + 1/2", 2);
  for (int i = 0; i < 4; ++i) p = p.derive(0);
  CHECK(p.is_zero());
}

TEST_CASE("evaluation") {
  std::vector<Rational> at{2, 1};
  CHECK(P("x1^2 - x2", 2).evaluate(std::span<const Rational>(at)) == 3);
  std::vector<Rational> origin{0, 0};
  CHECK(P("x1*x2 + 3*x2^2", 2).evaluate(std::span<const Rational>(origin)) == 0);
  std::vector<Rational> t{Rational(3, 2), 0, 0};
  CHECK(P("x1^4", 3).evaluate(std::span<const Rational>(t)) == Rational(81, 16));
}

TEST_CASE("canonical printing round-trips") {
  MultiPoly p = P("x2 - 3/2*x2 + x1^2*x2 + 1", 2);
  CHECK(to_string(p) == "x1^2*x2 - 1/2*x2 + 1");
  CHECK(parse_poly(to_string(p), 2) == p);
  CHECK(to_string(MultiPoly(3)) == "0");
  CHECK_THROWS(parse_poly("x4", 3));
  CHECK_THROWS(parse_poly("x1 +", 2));
}

TEST_CASE("lowest homogeneous part") {
  VectorPoly v({P("x1 + x1^3", 2), P("x1 + x2^2", 2)});
  HomogeneousPart hp = lowest_homogeneous_part(v);
  REQUIRE(hp.order);
  CHECK(*hp.order == 1);
  CHECK(hp.part.components[0] == P("x1", 2));
  CHECK(hp.part.components[1] == P("x1", 2));

  HomogeneousPart zero = lowest_homogeneous_part(VectorPoly(2, 2));
  CHECK_FALSE(zero.order);
  CHECK(zero.part.is_zero());
}

TEST_CASE("vanishing order") {
  std::vector<Rational> origin{0, 0};
  CHECK(*vanishing_order(VectorPoly({P("x1^2*x2", 2)}), origin) == 3);
  CHECK(*vanishing_order(VectorPoly({P("x1^2 - x2^2", 2), P("2*x1*x2", 2)}), origin) == 2);
  std::vector<Rational> off{1, 1};
  CHECK(*vanishing_order(VectorPoly({P("x1^2*x2", 2)}), off) == 0);
  CHECK_FALSE(vanishing_order(VectorPoly(2, 1), origin));
}

TEST_CASE("univariate view") {
  // x1^2 + y x1 + y^2 with y = x2.
  UnivariateView v = univariate_view(P("x1^2 + x2*x1 + x2^2", 2), 0);
  REQUIRE(v.coeffs.size() == 3);
  CHECK(v.coeffs[0] == P("x1^2", 1));
  CHECK(v.coeffs[1] == P("x1", 1));
  CHECK(v.coeffs[2] == P("1", 1));
  UnivariateView w = univariate_view(P("x2^3 + 1", 2), 0);
  REQUIRE(w.coeffs.size() == 1);
  CHECK(w.coeffs[0] == P("x1^3 + 1", 1));
}

TEST_CASE("resultant: hand 2x2 Sylvester determinant") {
  // Variables (x, a, b): f = x - a, g = x - b. det [[1, -b], [1, -a]] = b - a.
  MultiPoly f = P("x1 - x2", 3), g = P("x1 - x3", 3);
  MultiPoly r = resultant(univariate_view(f, 0), univariate_view(g, 0));
  CHECK(r == P("x2 - x1", 2));
  // Swapping the arguments flips the sign for odd degree products.
  CHECK(resultant(univariate_view(g, 0), univariate_view(f, 0)) == P("x1 - x2", 2));
}

TEST_CASE("resultant of polynomials sharing a root vanishes") {
  CHECK(resultant(univariate_view(P("x1^2 - 1", 1), 0), univariate_view(P("x1^2 - x1", 1), 0)).is_zero());
  // x^2 - 2 and x - 1: Res = (1)^2 - 2 up to orientation; nonzero.
  MultiPoly r = resultant(univariate_view(P("x1^2 - 2", 1), 0), univariate_view(P("x1 - 1", 1), 0));
  CHECK(r == MultiPoly::constant(0, -1));
}

TEST_CASE("resultant of two nonzero constants is 1") {
  MultiPoly r = resultant(univariate_view(P("3", 2), 0), univariate_view(P("x2 + 1", 2), 0));
  CHECK(r == MultiPoly::constant(1, 1));
}

TEST_CASE("companion roots") {
  // (t - 1)(t - 2)(t + 3) = t^3 - 7 t + 6
  std::vector<Rational> c{6, -7, 0, 1};
  auto roots = companion_roots(c);
  REQUIRE(roots.size() == 3);
  std::vector<double> re;
  for (auto z : roots) {
    CHECK(std::abs(z.imag()) < 1e-9);
    re.push_back(z.real());
  }
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(-3));
  CHECK(re[1] == doctest::Approx(1));
  CHECK(re[2] == doctest::Approx(2));
  std::vector<Rational> zero{0, 0};
  CHECK_THROWS_AS(companion_roots(zero), std::invalid_argument);
}

TEST_CASE("determinant of a polynomial matrix") {
  std::vector<std::vector<MultiPoly>> m{{P("x1", 2), P("x2", 2)}, {P("x2", 2), P("x1", 2)}};
  CHECK(determinant(m, 2) == P("x1^2 - x2^2", 2));
}

TEST_CASE("random polynomials are seeded") {
  Rng a(9), b(9);
  CHECK(random_poly(a, 3, 4, 5) == random_poly(b, 3, 4, 5));
}
