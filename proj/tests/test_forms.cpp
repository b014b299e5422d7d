#include <doctest.h>

#include <cmath>

#include "zeroset/forms.hpp"
#include "zeroset/samples.hpp"

using namespace zeroset;

namespace {

MultiPoly P(const char* s, std::size_t n) { return parse_poly(s, n); }

ExtForm xdy_ydx() {
  ExtForm w(2);
  w.add(0b10, P("x1", 2));
  w.add(0b01, P("x2", 2));
  return w;
}

}  // namespace

TEST_CASE("basis bookkeeping") {
  auto b = form_basis(3);
  REQUIRE(b.size() == 8);
  CHECK(b[0] == 0u);
  CHECK(grade(b[4]) == 2);
  CHECK(basis_name(0) == "1");
  CHECK(basis_name(0b101) == "dx1^dx3");
  CHECK(wedge_sign(0, 0b10) == 1);   // dx1 ^ dx2
  CHECK(wedge_sign(1, 0b01) == -1);  // dx2 ^ dx1 = -dx1 ^ dx2
  CHECK(wedge_sign(0, 0b01) == 0);
  CHECK(interior_sign(1, 0b11) == -1);
  CHECK(interior_sign(2, 0b11) == 0);
}

TEST_CASE("exterior derivative") {
  ExtForm f(2);
  f.add(0, P("x1*x2", 2));
  ExtForm df = d(f);
  CHECK(df.coefficient(0b01) == P("x2", 2));
  CHECK(df.coefficient(0b10) == P("x1", 2));
  CHECK(d(xdy_ydx()).is_zero());
  Rng rng(1);
  for (int t = 0; t < 50; ++t) CHECK(d(d(random_form(rng, 3, 3, 4))).is_zero());
}

TEST_CASE("codifferential") {
  CHECK(delta_flat(xdy_ydx()).is_zero());
  ExtForm f(3);
  f.add(0, P("x1^2 + x3", 3));
  CHECK(delta_flat(f).is_zero());
  // delta(x dx) = -1 with the fixed sign convention.
  ExtForm xdx(2);
  xdx.add(0b01, P("x1", 2));
  CHECK(delta_flat(xdx).coefficient(0) == P("-1", 2));
  Rng rng(2);
  for (int t = 0; t < 50; ++t) CHECK(delta_flat(delta_flat(random_form(rng, 3, 3, 4))).is_zero());
}

TEST_CASE("Hodge-Dirac symbol") {
  SymbolMap s1 = hodge_symbol(1);
  CHECK(s1.A[0] == (RationalMatrix{{0, -1}, {1, 0}}));
  Rng rng(3);
  for (std::size_t n = 1; n <= 4; ++n) {
    SymbolMap s = hodge_symbol(n);
    CHECK(s.N == (std::size_t{1} << n));
    CHECK(clifford_check(s, RationalMatrix::identity(n)));
    ExtForm w = random_form(rng, n, 3, 4);
    CHECK(unflatten(apply(s, flatten(w)), n) == d(w) + delta_flat(w));
  }
}

TEST_CASE("(d + delta)^2 is the coefficientwise Laplacian") {
  Rng rng(4);
  for (int t = 0; t < 40; ++t) {
    ExtForm w = random_form(rng, 1 + t % 4, 4, 4);
    ExtForm once = d(w) + delta_flat(w);
    CHECK(d(once) + delta_flat(once) == apply_laplacian_coefficientwise(w));
  }
}

TEST_CASE("closed sets") {
  ClosedSet c = ClosedSet::cantor(Rational(1, 3), 3);
  CHECK(c.interval_list().size() == 8);
  CHECK(c.predicted_dimension() == doctest::Approx(std::log(2.0) / std::log(3.0)));
  CHECK(ClosedSet::cantor(Rational(1, 4), 2).predicted_dimension() == doctest::Approx(0.5));
  std::vector<double> z{0.5};
  CHECK_FALSE(c.contains(z));
  CHECK(c.distance(z) == doctest::Approx(1.0 / 6));
  std::vector<double> e{2.0 / 9};
  CHECK(c.contains(e));

  ClosedSet p = parse_closed_set("product(cantor:1/3:2;points:0)");
  CHECK(p.dim() == 2);
  CHECK(p.predicted_dimension() == doctest::Approx(std::log(2.0) / std::log(3.0)));
  CHECK(parse_closed_set("intervals:-1:1").predicted_dimension() == 1.0);
  CHECK(parse_closed_set("cantor:1/3:6").describe() == "cantor(1/3, level 6) on [0, 1]");
  CHECK_THROWS(parse_closed_set("cantor:2/3:4"));
  CHECK_THROWS(parse_closed_set("blob:1"));
}

TEST_CASE("smooth vanishing functions") {
  VanishingFunction point = smooth_vanishing_function(ClosedSet::points({{0.0}}));
  for (double z : {-1.5, -0.25, 0.0, 0.75}) {
    std::vector<double> x{z};
    CHECK(point.value(x) == doctest::Approx(z * z));
    double g = 0.0;
    point.gradient(x, std::span<double>(&g, 1));
    CHECK(g == doctest::Approx(2 * z));
  }

  VanishingFunction seg = smooth_vanishing_function(ClosedSet::intervals({{-1.0, 1.0}}));
  for (double z : {-1.0, -0.3, 0.0, 1.0}) {
    std::vector<double> x{z};
    CHECK(seg.value(x) == 0.0);
  }
  std::vector<double> two{2.0}, mtwo{-2.0};
  CHECK(seg.value(two) > 0.0);
  CHECK(seg.value(mtwo) > 0.0);

  ClosedSet cantor = ClosedSet::cantor(Rational(1, 3), 3);
  VanishingFunction F = smooth_vanishing_function(cantor);
  for (const auto& iv : cantor.interval_list()) {
    for (double z : {iv.lo, 0.5 * (iv.lo + iv.hi), iv.hi}) {
      std::vector<double> x{z};
      CHECK(F.value(x) == 0.0);
    }
  }
  for (double z : {0.5, 1.0 / 9 + 0.01, 1.5, -0.2}) {
    std::vector<double> x{z};
    CHECK(F.value(x) > 0.0);
  }
}

TEST_CASE("wild example") {
  WildExample w = build_wild(ClosedSet::cantor(Rational(1, 3), 4), 3);
  // phi2 is closed: analytic d at random points.
  Rng rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x{u(rng), u(rng), u(rng)};
    for (auto [set, v] : d_at(w.phi2, x)) CHECK(std::abs(v) <= 1e-12);
  }
  // Joint zeros: exactly {(0,0)} x A.
  FieldEvaluator f = w.joint_field();
  std::vector<double> out(f.output_dim);
  std::vector<double> on{0.0, 0.0, 2.0 / 27};
  f.value(on, out);
  for (double v : out) CHECK(v == 0.0);
  std::vector<double> gap{0.0, 0.0, 0.5};
  f.value(gap, out);
  double m = 0.0;
  for (double v : out) m = std::max(m, std::abs(v));
  CHECK(m > 0.0);
  CHECK(w.predicted_gap(gap) == doctest::Approx(1.0 / 6));
  CHECK(w.distance_to_predicted(std::vector<double>{0.3, 0.4, 2.0 / 27}) == doctest::Approx(0.5));
}

TEST_CASE("harmonic form with codimension-1 zeros") {
  HarmonicReport r = harmonic_counterexample(3, 2);
  CHECK(r.closed);
  CHECK(r.harmonic);
  CHECK_FALSE(r.coclosed);
  CHECK(r.d_omega.is_zero());
  CHECK(r.laplacian_omega.is_zero());
  CHECK(r.zero_set == "x1 = 0");
  CHECK(r.codimension == 1);
}

TEST_CASE("max-norm distances") {
  ClosedSet pts = ClosedSet::points({{0.0, 0.0}, {3.0, 0.0}});
  std::vector<double> z{1.0, 1.0};
  CHECK(pts.distance(z) == doctest::Approx(std::sqrt(2.0)));
  CHECK(pts.chebyshev_distance(z) == doctest::Approx(1.0));
  ClosedSet prod = parse_closed_set("product(intervals:0:1;points:0)");
  std::vector<double> w{1.5, -2.0};
  CHECK(prod.distance(w) == doctest::Approx(std::hypot(0.5, 2.0)));
  CHECK(prod.chebyshev_distance(w) == doctest::Approx(2.0));
  WildExample ex = build_wild(ClosedSet::cantor(Rational(1, 3), 2), 3);
  std::vector<double> p{0.1, -0.2, 0.5};
  CHECK(ex.chebyshev_distance_to_predicted(p) == doctest::Approx(0.2));
  CHECK(ex.distance_to_predicted(p) == doctest::Approx(std::sqrt(0.01 + 0.04 + 1.0 / 36)));
}
