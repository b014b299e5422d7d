#include <doctest.h>

#include <cmath>

#include "zeroset/forms.hpp"
#include "zeroset/operator.hpp"
#include "zeroset/samples.hpp"

using namespace zeroset;

namespace {

SymbolMap cr() { return SymbolMap({RationalMatrix::identity(2), RationalMatrix{{0, -1}, {1, 0}}}); }
MultiPoly P(const char* s, std::size_t n) { return parse_poly(s, n); }

}  // namespace

TEST_CASE("symbol evaluation") {
  SymbolMap s = cr();
  std::vector<Rational> e2{0, 1};
  CHECK(symbol_at(s, e2) == s.A[1]);
  std::vector<Rational> zero{0, 0};
  CHECK(symbol_at(s, zero).is_zero());
  std::vector<Rational> ab{3, Rational(-1, 2)};
  RationalMatrix expect(2, 2);
  expect(0, 0) = 3, expect(0, 1) = Rational(1, 2), expect(1, 0) = Rational(-1, 2), expect(1, 1) = 3;
  CHECK(symbol_at(s, ab) == expect);
}

TEST_CASE("Cauchy-Riemann operator on polynomials") {
  SymbolMap s = cr();
  CHECK(apply(s, VectorPoly({P("x1", 2), P("x2", 2)})).is_zero());
  CHECK_FALSE(apply(s, VectorPoly({P("x1", 2), P("-x2", 2)})).is_zero());
  CHECK(apply(s, VectorPoly({P("7/3", 2), P("-2", 2)})).is_zero());
}

TEST_CASE("ellipticity") {
  auto c = is_elliptic(cr());
  CHECK(c.verdict == Verdict::elliptic);
  CHECK(c.min_singular_lower_bound > 0.0);

  // diag(xi1 + xi2, xi1 - xi2) degenerates on the diagonals.
  auto bad = is_elliptic(SymbolMap({RationalMatrix::identity(2), RationalMatrix{{1, 0}, {0, -1}}}));
  CHECK(bad.verdict == Verdict::not_elliptic);
  REQUIRE(bad.witness.size() == 2);
  CHECK(std::abs(bad.witness[0]) == doctest::Approx(std::abs(bad.witness[1])).epsilon(1e-6));
  CHECK(std::hypot(bad.witness[0], bad.witness[1]) == doctest::Approx(1.0));

  for (std::size_t n = 1; n <= 4; ++n) CHECK(is_elliptic(hodge_symbol(n)).verdict == Verdict::elliptic);
  // An odd number of equations cannot be elliptic in two variables.
  RationalMatrix a(3, 3), b(3, 3);
  a(0, 0) = a(1, 1) = a(2, 2) = 1;
  b(0, 1) = -1, b(1, 0) = 1, b(2, 2) = 2;
  CHECK(is_elliptic(SymbolMap({a, b})).verdict == Verdict::not_elliptic);
}

TEST_CASE("Clifford relations") {
  for (std::size_t n = 1; n <= 4; ++n) CHECK(clifford_check(hodge_symbol(n), RationalMatrix::identity(n)));
  CHECK_FALSE(clifford_check(SymbolMap({RationalMatrix::identity(2), RationalMatrix::identity(2)}),
                             RationalMatrix::identity(2)));
  // (J, K) with J^2 = K^2 = -Id anticommuting: quaternion units on R^4.
  RationalMatrix J{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
  RationalMatrix K{{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
  CHECK(clifford_check(SymbolMap({J, K}), RationalMatrix::identity(2)));
  // Same symbol, scaled metric.
  RationalMatrix g = RationalMatrix::identity(2) * Rational(2);
  CHECK_FALSE(clifford_check(SymbolMap({J, K}), g));
}

TEST_CASE("Leibniz identity") {
  SymbolMap s = cr();
  VectorPoly phi({P("x1^2 - x2", 2), P("3*x1*x2", 2)});
  CHECK(leibniz_residual(s, P("5", 2), phi).is_zero());
  CHECK(leibniz_residual(s, P("x1", 2), VectorPoly({P("1", 2), P("2", 2)})).is_zero());
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    SymbolMap r = random_elliptic_symbol(rng, 3, 4);
    CHECK(leibniz_residual(r, random_poly(rng, 3, 3, 4), random_vector_poly(rng, 3, 4, 3, 3)).is_zero());
  }
}

TEST_CASE("freezing coefficients") {
  SemilinearSpec lin = make_linear(cr());
  std::vector<Rational> p{Rational(1, 2), 4};
  SymbolMap frozen = freeze(lin, p);
  CHECK(frozen.A[0] == cr().A[0]);
  CHECK(frozen.A[1] == cr().A[1]);

  SemilinearSpec var = make_linear(cr());
  var.A[0](0, 0) = P("1 + x1", 2);
  std::vector<Rational> origin{0, 0};
  CHECK(freeze(var, origin).A[0](0, 0) == 1);
  std::vector<Rational> at2{2, 0};
  CHECK(freeze(var, at2).A[0](0, 0) == 3);

  SemilinearSpec dirac = make_linear(hodge_symbol(2));
  dirac.V = cubic_dirac(Rational(1, 2));
  SymbolMap f = freeze(dirac, origin);
  CHECK(f.A == hodge_symbol(2).A);
}

TEST_CASE("residual of sections") {
  SemilinearSpec L = make_linear(cr());
  std::vector<std::vector<double>> grid{{0, 0}, {0.5, -1}, {2, 3}};
  // (x, y) solves; (x, -y) does not.
  SectionEvaluator good = [](std::span<const double> x, std::span<double> v, std::span<double> J) {
    v[0] = x[0], v[1] = x[1];
    J[0] = 1, J[1] = 0, J[2] = 0, J[3] = 1;
  };
  SectionEvaluator bad = [](std::span<const double> x, std::span<double> v, std::span<double> J) {
    v[0] = x[0], v[1] = -x[1];
    J[0] = 1, J[1] = 0, J[2] = 0, J[3] = -1;
  };
  CHECK(residual_norm(L, good, grid) == 0.0);
  CHECK(residual_norm(L, bad, grid) > 0.0);
}

TEST_CASE("zero section of the nonlinearity") {
  SemilinearSpec L = make_linear(hodge_symbol(2));
  L.V = cubic_dirac(1);
  std::vector<std::vector<double>> samples{{0, 0}, {1, 2}};
  CHECK(check_zero_section(L, samples));
  L.V.tag = "custom";
  L.V.eval = [](std::span<const double>, std::span<const double>, std::span<double> out) {
    for (auto& o : out) o = 1.0;
  };
  CHECK_FALSE(check_zero_section(L, samples));
}

TEST_CASE("sixteen-equation operator") {
  NonUcpOperator op = build_nonucp_operator();
  CHECK(op.spec.n == 2);
  CHECK(op.spec.N == 16);
  std::vector<Rational> origin{0, 0};
  CHECK(is_elliptic(freeze(op.spec, origin)).verdict == Verdict::elliptic);
  CHECK(clifford_check(op.euclidean, RationalMatrix::identity(2)));
  CHECK(clifford_check(op.anisotropic, op.anisotropic_metric));
  std::vector<std::vector<double>> grid{{0, 0}, {0.3, 0.7}};
  SectionEvaluator zero = [](std::span<const double>, std::span<double> v, std::span<double> J) {
    std::fill(v.begin(), v.end(), 0.0);
    std::fill(J.begin(), J.end(), 0.0);
  };
  CHECK(residual_norm(op.spec, zero, grid) == 0.0);
}

TEST_CASE("operator spec files") {
  const char* text =
      "zeroset-operator v1\n"
      "# Cauchy-Riemann with a variable coefficient\n"
      "n: 2\n"
      "N: 2\n"
      "A1: [[\"1 + x2\", 0], [0, 1]]\n"
      "A2: [[0, -1], [1, 0]]\n"
      "nonlinearity: cubic-dirac 1/2\n";
  SemilinearSpec L = parse_operator_spec(text);
  CHECK(L.n == 2);
  CHECK(L.N == 2);
  CHECK(L.A[0](0, 0) == P("x2 + 1", 2));
  CHECK(L.V.tag == "cubic-dirac");
  CHECK(L.V.parameter == Rational(1, 2));
  SemilinearSpec again = parse_operator_spec(format_operator_spec(L));
  CHECK(again.A[0](0, 0) == L.A[0](0, 0));
  CHECK(again.A[1](1, 0) == L.A[1](1, 0));

  try {
    parse_operator_spec("zeroset-operator v1\nn: 2\nN: 2\nA1: [[1, 0], [0 1]]\n");
    FAIL("expected a parse error");
  } catch (const SpecParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_AS(parse_operator_spec("n: 2\n"), SpecParseError);
  CHECK_THROWS_AS(parse_operator_spec("zeroset-operator v1\nn: 2\nN: 2\nA1: [[1]]\nA2: [[1]]\n"), SpecParseError);
  try {
    parse_operator_spec("zeroset-operator v1\nn: 2\nN: 1\nA1: [[1]]\nA2: [[1]]\nfoo: 3\n");
    FAIL("expected a parse error");
  } catch (const SpecParseError& e) {
    CHECK(e.line() == 6);
  }
}
