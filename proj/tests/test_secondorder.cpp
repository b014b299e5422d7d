#include <doctest.h>

#include <cmath>
#include <sstream>

#include "zeroset/secondorder.hpp"

using namespace zeroset;

namespace {

std::vector<std::vector<double>> torus_samples(int m) {
  std::vector<std::vector<double>> g;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) g.push_back({2 * M_PI * i / m, 2 * M_PI * j / m});
  }
  return g;
}

}  // namespace

TEST_CASE("torus eigenfunctions") {
  ScalarSolution u = torus_eigenfunction(2, 3);
  REQUIRE(u.lambda);
  CHECK(*u.lambda == 13.0);
  std::vector<double> x{0.4, 1.1};
  CHECK(u.value(x) == doctest::Approx(std::sin(0.8) * std::sin(3.3)));
  CHECK(u.laplacian(x) == doctest::Approx(13.0 * u.value(x)));
  CHECK(finite_difference_laplacian(u, x) == doctest::Approx(u.laplacian(x)).epsilon(1e-5));
}

TEST_CASE("reduction residual") {
  auto grid = torus_samples(32);
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {3, 4}, {5, 2}}) {
    ScalarSolution u = torus_eigenfunction(p, q);
    ReducedSection r = reduce(u, eigen_nonlinearity(*u.lambda));
    CHECK(residual_norm(r.L, r.omega, grid) <= 1e-8);
    ReducedSection off = reduce(u, eigen_nonlinearity(*u.lambda * 1.1));
    CHECK(residual_norm(off.L, off.omega, grid) > 1e-3);
  }
}

TEST_CASE("harmonic and zero solutions") {
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  ScalarSolution h = polynomial_solution(x * x - y * y, cube(2, -1, 1), 0.0);
  ReducedSection r = reduce(h, [](std::span<const double>, double, std::span<const double>) { return 0.0; });
  std::vector<std::vector<double>> grid{{0, 0}, {0.5, -0.25}, {-1, 1}};
  CHECK(residual_norm(r.L, r.omega, grid) == 0.0);

  ScalarSolution z = polynomial_solution(MultiPoly(2), cube(2, -1, 1), 0.0);
  ReducedSection rz = reduce(z, eigen_nonlinearity(3.0));
  CHECK(residual_norm(rz.L, rz.omega, grid) == 0.0);

  CHECK_THROWS_AS(reduce(h, [](std::span<const double>, double, std::span<const double>) { return 2.0; }),
                  std::invalid_argument);
}

TEST_CASE("torus grid centers the lattice") {
  GridSpec g = torus_grid(8);
  CHECK(g.h == doctest::Approx(M_PI / 4));
  CHECK(g.box.lo[0] == doctest::Approx(-M_PI / 8));
  CHECK(g.cells_per_axis() == std::vector<std::size_t>{8, 8});
}

TEST_CASE("critical nodal set of sin x sin y") {
  ScalarSolution u = torus_eigenfunction(1, 1);
  const std::size_t cells = 240;
  NodalSets s = nodal_sets(u, torus_grid(cells));
  std::vector<std::size_t> period{cells, cells};
  // u = grad u = 0 at (a pi, b pi), a, b in {0, 1}.
  CHECK(clusters(s.critical, period).size() == 4);
  for (double a : {0.0, M_PI}) {
    for (double b : {0.0, M_PI}) {
      std::vector<double> p{a, b};
      CHECK(covers(s.critical, p));
    }
  }
  // The nodal set is two horizontal and two vertical circles.
  CHECK(s.nodal.size() >= 4 * cells - 8);
}

TEST_CASE("eigenfunction scan table") {
  std::vector<std::pair<int, int>> fam{{1, 1}, {2, 1}};
  std::vector<double> radii{0.3, 0.2, 0.12};
  auto rows = eigen_density_scan(fam, 240, radii);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].lambda == 2.0);
  CHECK(rows[1].lambda == 5.0);
  CHECK(rows[0].ncrit_cluster_count == 4);
  CHECK(rows[1].ncrit_cluster_count == 8);
  CHECK(rows[0].theta_n2_max == 1.0);
  std::stringstream ss;
  write_scan_csv(rows, ss);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "lambda,p,q,theta_n1_max,theta_n2_max,ncrit_cluster_count");
}
