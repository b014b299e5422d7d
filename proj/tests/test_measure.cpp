#include <doctest.h>

#include <cmath>
#include <sstream>

#include "zeroset/measure.hpp"

using namespace zeroset;

namespace {

// x -> x - c (components 0..codim-1), Lipschitz 1.
FieldEvaluator affine(std::size_t n, std::size_t codim, double c = 0.0) {
  FieldEvaluator f;
  f.input_dim = n;
  f.output_dim = codim;
  f.value = [codim, c](std::span<const double> x, std::span<double> o) {
    for (std::size_t i = 0; i < codim; ++i) o[i] = x[i] - c;
  };
  f.lipschitz = [codim](const Box&, std::span<double> L) {
    for (std::size_t i = 0; i < codim; ++i) L[i] = 1.0;
  };
  return f;
}

}  // namespace

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(0) == 1.0);
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3));
}

TEST_CASE("extraction of an isolated zero") {
  PointCloud c = extract_zero_set(affine(2, 2), GridSpec(cube(2, -1, 1), 1.0 / 64));
  CHECK(!c.empty());
  CHECK(clusters(c).size() == 1);
  std::vector<double> origin{0.0, 0.0};
  CHECK(covers(c, origin));
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto p = c.point(i);
    CHECK(std::hypot(p[0], p[1]) <= 1.5 / 64);
  }
}

TEST_CASE("extraction of a line in R^3") {
  // Coefficients (x, y) of x dy + y dx vanish on the x3-axis.
  GridSpec g(cube(3, -0.5, 0.5), 1.0 / 32);
  PointCloud c = extract_zero_set(affine(3, 2), g);
  CHECK(c.size() >= 32);
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto p = c.point(i);
    CHECK(std::hypot(p[0], p[1]) <= std::sqrt(3.0) / 32);
  }
  CHECK(clusters(c).size() == 1);
}

TEST_CASE("no zeros gives an empty cloud") {
  PointCloud c = extract_zero_set(affine(2, 1, 5.0), GridSpec(cube(2, -1, 1), 1.0 / 16));
  CHECK(c.empty());
}

TEST_CASE("pruned and exhaustive extraction agree") {
  FieldEvaluator f;
  f.input_dim = 2;
  f.output_dim = 1;
  f.value = [](std::span<const double> x, std::span<double> o) { o[0] = x[0] * x[0] + x[1] * x[1] - 0.25; };
  f.lipschitz = [](const Box& b, std::span<double> L) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i) s += std::pow(std::max(std::abs(b.lo[i]), std::abs(b.hi[i])), 2);
    L[0] = 2 * std::sqrt(s);
  };
  GridSpec g(cube(2, -1, 1), 1.0 / 32);
  PointCloud a = extract_zero_set(f, g), b = extract_zero_set_exhaustive(f, g);
  CHECK(a.coords == b.coords);
  for (int t = 0; t < 64; ++t) {
    double th = 2 * M_PI * t / 64;
    std::vector<double> p{0.5 * std::cos(th), 0.5 * std::sin(th)};
    CHECK(covers(a, p));
  }
}

TEST_CASE("box dimension") {
  PointCloud seg(2, 1e-4);
  for (int i = 0; i < 10000; ++i) seg.push(std::vector<double>{i * 1e-4, 0.0});
  CHECK(box_dimension(seg, dyadic_scales(0.25, 1.0 / 256)).slope == doctest::Approx(1.0).epsilon(0.1));

  CantorCloud dust = cantor(1.0 / 3, 8);
  CHECK(dust.dimension == doctest::Approx(std::log(2.0) / std::log(3.0)));
  CHECK(std::abs(box_dimension(dust.cloud, dyadic_scales(0.25, 1.0 / 1024)).slope - dust.dimension) <= 0.1);

  PointCloud one(2, 1e-3);
  one.push(std::vector<double>{0.3, 0.3});
  CHECK(std::abs(box_dimension(one, dyadic_scales(0.5, 1.0 / 64)).slope) <= 1e-12);

  std::vector<double> two{0.5, 0.25};
  CHECK_THROWS_AS(box_dimension(one, two), std::invalid_argument);
  CHECK(dyadic_scales(0.5, 1.0 / 8) == std::vector<double>{0.5, 0.25, 0.125});
}

TEST_CASE("density estimates") {
  // A 2-plane in R^3 sampled by its flagged cells.
  PointCloud plane = extract_zero_set(affine(3, 1), GridSpec(cube(3, -1, 1), 1.0 / 64));
  std::vector<double> p{0.0, 0.0, 0.0};
  std::vector<double> radii{0.5, 0.25};
  DensityReport r = density_estimate(plane, 2, p, radii);
  for (double e : r.estimates) CHECK(e == doctest::Approx(1.0).epsilon(0.3));

  PointCloud one(2, 1.0 / 64);
  one.push(std::vector<double>{0.0, 0.0});
  std::vector<double> q{0.0, 0.0};
  std::vector<double> rr{0.3, 0.2, 0.1};
  CHECK(density_estimate(one, 0, q, rr).limsup_proxy == 1.0);

  PointCloud none(2, 1.0 / 64);
  for (double e : density_estimate(none, 1, q, rr).estimates) CHECK(e == 0.0);

  std::vector<double> tiny{1.0 / 128};
  CHECK_THROWS(density_estimate(one, 0, q, tiny));
}

TEST_CASE("vanishing order estimates") {
  std::vector<double> p{0.0, 0.0};
  std::vector<double> radii{0.2, 0.1, 0.05};
  CHECK(vanishing_order_estimate(affine(2, 2), p, radii).slope == doctest::Approx(1.0).epsilon(0.01));
  CHECK_THROWS_AS(vanishing_order_estimate(affine(2, 1, 1.0), p, radii), std::domain_error);
}

TEST_CASE("clusters respect periodic axes") {
  PointCloud c(1, 1.0, {0.0});
  c.push(std::vector<double>{0.5});
  c.push(std::vector<double>{9.5});
  CHECK(clusters(c).size() == 2);
  std::vector<std::size_t> period{10};
  CHECK(clusters(c, period).size() == 1);
}

TEST_CASE("CSV round trip") {
  CantorCloud dust = cantor(0.25, 3);
  std::stringstream ss;
  write_csv(dust.cloud, ss);
  PointCloud back = read_csv(ss);
  CHECK(back.dim == dust.cloud.dim);
  CHECK(back.h == dust.cloud.h);
  CHECK(back.coords == dust.cloud.coords);
  std::stringstream bad("not a cloud\n");
  CHECK_THROWS(read_csv(bad));
}
