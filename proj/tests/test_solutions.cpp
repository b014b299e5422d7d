#include <doctest.h>

#include <cmath>

#include "zeroset/samples.hpp"
#include "zeroset/solutions.hpp"

using namespace zeroset;

namespace {

RationalMatrix J() { return RationalMatrix{{0, -1}, {1, 0}}; }
SymbolMap cr() { return SymbolMap({RationalMatrix::identity(2), J()}); }
MultiPoly P(const char* s, std::size_t n) { return parse_poly(s, n); }

}  // namespace

TEST_CASE("reduced operator") {
  ReducedOperator D = reduced_operator(cr());
  REQUIRE(D.D.size() == 1);
  CHECK(D.D[0] == J() * Rational(-1));

  RationalMatrix A2{{1, 2}, {0, 1}}, A3{{0, 1}, {1, 0}};
  ReducedOperator E = reduced_operator(SymbolMap({RationalMatrix::identity(2), A2, A3}));
  CHECK(E.D[0] == A2 * Rational(-1));
  CHECK(E.D[1] == A3 * Rational(-1));

  CHECK_THROWS_AS(reduced_operator(SymbolMap({RationalMatrix{{1, 0}, {0, 0}}, J()})), std::domain_error);
}

TEST_CASE("one recursion step by hand") {
  // Y0 = (0, y) in the single variable y: phi = Y0 + x1 D Y0 = (x1, y).
  VectorPoly Y0({MultiPoly(1), P("x1", 1)});
  GeneratedSolution g = generate_polynomial_solution(cr(), Y0, 1);
  CHECK(g.complete);
  CHECK(g.phi.components[0] == P("x1", 2));
  CHECK(g.phi.components[1] == P("x2", 2));
  CHECK(apply(cr(), g.phi).is_zero());
}

TEST_CASE("constant data is its own solution") {
  VectorPoly Y0({P("3/2", 1), P("-1", 1)});
  GeneratedSolution g = generate_polynomial_solution(cr(), Y0, 4);
  CHECK(g.phi.components[0] == P("3/2", 2));
  CHECK(g.phi.components[1] == P("-1", 2));
}

TEST_CASE("powers of z from homogeneous data") {
  for (unsigned k = 1; k <= 5; ++k) {
    // (Re z^k, Im z^k) restricted to x1 = 0: (Re (iy)^k, Im (iy)^k).
    VectorPoly Y0(1, 2);
    Rational re = 0, im = 0;
    switch (k % 4) {
      case 0: re = 1; break;
      case 1: im = 1; break;
      case 2: re = -1; break;
      default: im = -1; break;
    }
    MultiPoly yk = MultiPoly::variable(1, 0).pow(k);
    Y0.components[0] = yk * re;
    Y0.components[1] = yk * im;
    GeneratedSolution g = generate_polynomial_solution(cr(), Y0, k);
    CHECK(apply(cr(), g.phi).is_zero());
    std::vector<Rational> origin{0, 0};
    CHECK(*vanishing_order(g.phi, origin) == k);
    // Compare with z^k at a rational point.
    std::vector<Rational> pt{Rational(1, 3), Rational(-2, 5)};
    auto v = g.phi.evaluate(std::span<const Rational>(pt));
    std::complex<double> z = std::pow(std::complex<double>(1.0 / 3, -0.4), static_cast<int>(k));
    CHECK(v[0].get_d() == doctest::Approx(z.real()));
    CHECK(v[1].get_d() == doctest::Approx(z.imag()));
  }
}

TEST_CASE("Hauptteil residual") {
  SemilinearSpec L = make_linear(cr());
  VectorPoly phi({P("x1^2 - x2^2", 2), P("2*x1*x2", 2)});
  std::vector<Rational> p{1, 2};
  CHECK(hauptteil_residual(L, phi, p).is_zero());
  // phi(p) != 0: the leading part is constant.
  VectorPoly c({P("x1 + 1", 2), P("x2", 2)});
  std::vector<Rational> origin{0, 0};
  CHECK(hauptteil_residual(L, c, origin).is_zero());
  CHECK_THROWS_AS(hauptteil_residual(L, VectorPoly(2, 2), origin), std::domain_error);

  // Manufactured variable-coefficient operator: A1 = (1 + x2^2) Id, A2 = J
  // solved by (x1, x2) only to leading order at 0.
  SemilinearSpec V = make_linear(cr());
  V.A[0](0, 0) = P("1 + x2^2", 2);
  V.A[0](1, 1) = P("1 + x2^2", 2);
  CHECK(hauptteil_residual(V, VectorPoly({P("x1", 2), P("x2", 2)}), origin).is_zero());
}

TEST_CASE("monic form") {
  VectorPoly phi({P("x1^2 - x2^2", 2), P("2*x1*x2", 2)});
  MonicSolutionForm m = to_monic_form(phi);
  CHECK(m.k == 2);
  CHECK(m.alpha[0] != 0);
  CHECK(m.alpha[1] != 0);
  // Every nonzero component of the assembled form is alpha (x1^k + lower).
  for (std::size_t nu = 0; nu < 2; ++nu) {
    CHECK(m.assembled.components[nu].coefficient(Exponent{2, 0}) == m.alpha[nu]);
  }
  CHECK(m.assembled == rotate(phi, m.rotation));
  CHECK(m.rotation.transpose() * m.rotation == RationalMatrix::identity(2));

  CHECK_THROWS(to_monic_form(VectorPoly({P("x1^2 + x2", 2)})));
  CHECK_THROWS(to_monic_form(VectorPoly(2, 2)));
}

TEST_CASE("Cayley rotation and rotated symbol") {
  RationalMatrix S{{0, 1, 2}, {-1, 0, -1}, {-2, 1, 0}};
  RationalMatrix Q = cayley_rotation(S);
  CHECK(Q.transpose() * Q == RationalMatrix::identity(3));
  Rng rng(3);
  SymbolMap s = random_elliptic_symbol(rng, 3, 4);
  VectorPoly Y0 = random_vector_poly(rng, 2, 4, 2, 3);
  VectorPoly phi = generate_polynomial_solution(s, Y0, 2).phi;
  CHECK(apply(rotate_symbol(s, Q), rotate(phi, Q)).is_zero());
}

TEST_CASE("pair combinations") {
  VectorPoly phi({P("x1^2 + x2^2", 2), P("2*x1^2 - 2*x1*x2", 2)});
  MonicSolutionForm m = to_monic_form(phi);
  REQUIRE(m.rotation == RationalMatrix::identity(2));
  PairDraw d = combine_pair(m, {1, 0}, {0, 1});
  CHECK(d.F.reassemble() == P("x1^2 + x2^2", 2));
  CHECK(d.G.reassemble() == P("x1^2 - x1*x2", 2));
  CHECK_THROWS(combine_pair(m, {1, 1}, {0, 1}));

  MonicSolutionForm single = to_monic_form(VectorPoly({P("3*x1^2 - x2^2", 2)}));
  PairDraw s = generic_pair(single, 11);
  CHECK(s.F.reassemble() == s.G.reassemble());
  CHECK(s.A[0] == 1);

  PairDraw a = generic_pair(m, 4), b = generic_pair(m, 4);
  CHECK(a.A == b.A);
  CHECK(a.B == b.B);
}

TEST_CASE("projection resultant") {
  // k = 1: F = x1 + u, G = x1 + v with u = 2 x2, v = -x2: R = +-(u - v).
  MultiPoly R = projection_resultant(univariate_view(P("x1 + 2*x2", 2), 0), univariate_view(P("x1 - x2", 2), 0));
  CHECK((R == P("3*x1", 1) || R == P("-3*x1", 1)));
  UnivariateView F = univariate_view(P("x1^2 + x1*x2 - x2^2", 2), 0);
  CHECK(projection_resultant(F, F).is_zero());
}

TEST_CASE("regular slice for powers of z") {
  for (unsigned k = 1; k <= 4; ++k) {
    MultiPoly x = P("x1", 2), y = P("x2", 2);
    // z^k = (x + i y)^k by binomial expansion.
    MultiPoly re(2), im(2);
    Rational binom = 1;
    for (unsigned j = 0; j <= k; ++j) {
      MultiPoly term = x.pow(k - j) * y.pow(j) * binom;
      switch (j % 4) {
        case 0: re += term; break;
        case 1: im += term; break;
        case 2: re -= term; break;
        default: im -= term; break;
      }
      binom = binom * Rational(static_cast<long>(k - j), static_cast<long>(j + 1));
    }
    MonicSolutionForm m = to_monic_form(VectorPoly({re, im}));
    RegularSlice r = find_regular_slice(m, 20, 1);
    REQUIRE(r.found);
    CHECK(r.value != 0);
    CHECK(r.resultant.degree() == static_cast<int>(k * k));
    // Slices off 0 meet the zero set nowhere.
    CHECK(slice_zeros(m, r.x0).empty());
  }
}

TEST_CASE("regular slice failure modes") {
  MonicSolutionForm single = to_monic_form(VectorPoly({P("x1^2 - x2^2", 2)}));
  RegularSlice r = find_regular_slice(single, 5, 1);
  CHECK_FALSE(r.found);
  CHECK(r.draws == 5);

  MonicSolutionForm zero;
  zero.n = 2;
  zero.assembled = VectorPoly(2, 2);
  CHECK_THROWS_AS(find_regular_slice(zero, 5, 1), std::invalid_argument);
}

TEST_CASE("real zeros on a slice") {
  // phi = (x1^2 - x2^2, x1^2 - x1 x2): common zero at x1 = x2.
  MonicSolutionForm m = to_monic_form(VectorPoly({P("x1^2 - x2^2", 2), P("x1^2 - x1*x2", 2)}));
  REQUIRE(m.rotation == RationalMatrix::identity(2));
  std::vector<Rational> x0{2};
  auto z = slice_zeros(m, x0);
  REQUIRE(z.size() == 1);
  CHECK(z[0] == doctest::Approx(2.0));
}

TEST_CASE("constants") {
  ConstantsReport c3 = constants(3);
  CHECK(c3.C_main.to_string() == "3");
  CHECK(c3.C_hyp.to_string() == "12/pi");
  CHECK(c3.C_hyp.value() == doctest::Approx(12.0 / M_PI));
  ConstantsReport c2 = constants(2);
  CHECK(c2.C_main.to_string() == "1");
  CHECK(c2.C_hyp.to_string() == "2");
  CHECK(unit_ball_volume_exact(2).to_string() == "pi");
  CHECK(unit_ball_volume_exact(5).to_string() == "8/15*pi^2");
  CHECK(c3.measure_bound(2, 0.5) == doctest::Approx(24.0));
  CHECK_THROWS_AS(constants(1), std::invalid_argument);
}
