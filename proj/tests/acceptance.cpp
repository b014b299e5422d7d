// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "zeroset/forms.hpp"
#include "zeroset/measure.hpp"
#include "zeroset/samples.hpp"
#include "zeroset/secondorder.hpp"
#include "zeroset/solutions.hpp"
#include "zeroset/verify.hpp"

using namespace zeroset;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1. Exact solution generation.
Outcome exact_generation() {
  Rng rng(101);
  std::size_t bad = 0;
  auto start = std::chrono::steady_clock::now();
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 2 + t % 3;
    std::size_t N = n == 2 ? static_cast<std::size_t>(2 * random_int(rng, 1, 4))
                           : static_cast<std::size_t>(4 * random_int(rng, 1, 2));
    SymbolMap s = random_elliptic_symbol(rng, n, N);
    auto k = static_cast<unsigned>(random_int(rng, 1, 5));
    VectorPoly Y0 = random_vector_poly(rng, n - 1, N, k, 4);
    GeneratedSolution g = generate_polynomial_solution(s, Y0, k);
    if (!apply(s, g.phi).is_zero()) ++bad;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {bad == 0 && secs < 60.0,
          std::to_string(bad) + " nonzero residuals in 50 systems, " + fmt("%.2f s", secs)};
}

// 2. Regular slice within 20 draws.
Outcome regular_slices() {
  Rng rng(202);
  std::size_t cases = 0, failures = 0, mismatches = 0;
  std::size_t worst_draws = 0;
  for (int t = 0; t < 36; ++t) {
    std::size_t n = 2 + t % 3;
    std::size_t N = n == 2 ? static_cast<std::size_t>(2 * random_int(rng, 1, 2)) : 4;
    SymbolMap s = random_elliptic_symbol(rng, n, N);
    auto deg = static_cast<unsigned>(random_int(rng, 1, 4));
    VectorPoly Y0 = random_vector_poly(rng, n - 1, N, deg, 4);
    GeneratedSolution g = generate_polynomial_solution(s, Y0, deg);
    if (g.phi.is_zero()) continue;
    HomogeneousPart hp = lowest_homogeneous_part(g.phi);
    ++cases;
    auto seed = static_cast<std::uint64_t>(t + 17);
    MonicSolutionForm m = to_monic_form(hp.part, seed);
    RegularSlice r = find_regular_slice(m, 20, seed);
    if (!r.found || r.draws > 20 || r.value == 0) {
      ++failures;
      continue;
    }
    worst_draws = std::max(worst_draws, r.draws);
    // Recompute R from the recorded pair and evaluate it afresh.
    MultiPoly R = projection_resultant(r.pair->F, r.pair->G);
    if (!(R == r.resultant) || R.evaluate(r.x0) != r.value) ++mismatches;
  }
  return {failures == 0 && mismatches == 0 && cases > 0,
          std::to_string(cases) + " monic forms, " + std::to_string(failures) + " failures, at most " +
              std::to_string(worst_draws) + " draws"};
}

// 3. Resultant against the companion-matrix root oracle.
Outcome resultant_oracle() {
  Rng rng(303);
  std::size_t disagreements = 0, shared = 0;
  auto monic = [&](unsigned deg) {
    MultiPoly p = MultiPoly::monomial(1, Exponent{deg});
    for (unsigned j = 0; j < deg; ++j) p.add_term(Exponent{j}, random_rational(rng, 5, 4));
    return p;
  };
  for (int t = 0; t < 200; ++t) {
    auto df = static_cast<unsigned>(random_int(rng, 1, 6));
    auto dg = static_cast<unsigned>(random_int(rng, 1, 6));
    MultiPoly f(1), g(1);
    if (t % 3 == 0 && df > 1 && dg > 1) {
      MultiPoly lin = MultiPoly::variable(1, 0) - MultiPoly::constant(1, random_rational(rng, 5, 4));
      f = monic(df - 1) * lin;
      g = monic(dg - 1) * lin;
    } else {
      f = monic(df);
      g = monic(dg);
    }
    auto vf = univariate_view(f, 0);
    auto vg = univariate_view(g, 0);
    bool zero = resultant(vf, vg).is_zero();
    bool common = false;
    for (auto a : companion_roots(vf.at({}))) {
      for (auto b : companion_roots(vg.at({}))) common = common || std::abs(a - b) <= 1e-6;
    }
    shared += common ? 1 : 0;
    disagreements += zero != common ? 1 : 0;
  }
  return {disagreements == 0, std::to_string(disagreements) + " disagreements on 200 pairs (" +
                                  std::to_string(shared) + " with a common root)"};
}

// 4. Degree law k^2.
Outcome degree_law() {
  Rng rng(404);
  bool ok = true;
  std::string detail;
  for (unsigned k = 1; k <= 4; ++k) {
    for (int trial = 0; trial < 3; ++trial) {
      auto make = [&] {
        MultiPoly x1 = MultiPoly::variable(3, 0);
        MultiPoly p = x1.pow(k);
        for (unsigned j = 0; j < k; ++j) p += random_homogeneous(rng, 2, k - j, 3).embed(3, 1) * x1.pow(j);
        return univariate_view(p, 0);
      };
      MultiPoly R = projection_resultant(make(), make());
      if (R.is_zero()) continue;  // a shared factor; degree law concerns nonzero R
      ok = ok && R.is_homogeneous() && R.degree() == static_cast<int>(k * k);
      if (trial == 0) detail += "k=" + std::to_string(k) + " -> " + std::to_string(R.degree()) + " ";
    }
  }
  return {ok, detail};
}

// 5. Constants.
Outcome constants_exact() {
  ConstantsReport c2 = constants(2), c3 = constants(3);
  bool ok = c3.alpha[1].coefficient == 2 && c3.alpha[1].pi_power == 0 &&
            std::abs(c3.alpha[2].value() - M_PI) <= 1e-12 && c3.C_main.coefficient == 3 && c3.C_main.pi_power == 0 &&
            c2.C_main.coefficient == 1 && c2.C_main.pi_power == 0 && c2.C_hyp.coefficient == 2 &&
            c2.C_hyp.pi_power == 0;
  return {ok, "alpha(1) = " + c3.alpha[1].to_string() + ", alpha(2) = " + c3.alpha[2].to_string() +
                  ", C_main(3) = " + c3.C_main.to_string() + ", C_main(2) = " + c2.C_main.to_string() +
                  ", C_hyp(2) = " + c2.C_hyp.to_string()};
}

// 6. Dirac form identities.
Outcome dirac_identities() {
  ExtForm w(2);
  w.add(1u << 1, MultiPoly::variable(2, 0));
  w.add(1u << 0, MultiPoly::variable(2, 1));
  bool phi1 = (d(w) + delta_flat(w)).is_zero() && apply(hodge_symbol(2), flatten(w)).is_zero();
  bool clifford = true;
  for (std::size_t n = 1; n <= 4; ++n) clifford = clifford && clifford_check(hodge_symbol(n), RationalMatrix::identity(n));
  Rng rng(606);
  std::size_t bad = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + t % 4;
    ExtForm f = random_form(rng, n, 4, 5);
    ExtForm once = d(f) + delta_flat(f);
    ExtForm twice = d(once) + delta_flat(once);
    if (!(twice == apply_laplacian_coefficientwise(f))) ++bad;
  }
  return {phi1 && clifford && bad == 0,
          std::string("(d+delta)(x dy + y dx) = 0: ") + (phi1 ? "yes" : "no") + ", Clifford n <= 4: " +
              (clifford ? "yes" : "no") + ", " + std::to_string(bad) + "/100 square mismatches"};
}

// 7. Wild example with a Cantor set.
Outcome wild_cantor() {
  auto start = std::chrono::steady_clock::now();
  const double h = 1.0 / 512;
  WildExample w = build_wild(ClosedSet::cantor(Rational(1, 3), 6), 3);
  PointCloud cloud = extract_zero_set(w.joint_field(), GridSpec(cube(3, -1, 1), h));
  std::size_t missed = 0;
  for (const auto& p : w.predicted_samples()) missed += covers(cloud, p) ? 0 : 1;
  double worst = 0.0, worst_sup = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    worst = std::max(worst, w.distance_to_predicted(cloud.point(i)));
    worst_sup = std::max(worst_sup, w.chebyshev_distance_to_predicted(cloud.point(i)));
  }
  double dim = box_dimension(cloud, dyadic_scales(1.0 / 4, 1.0 / 128)).slope;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = missed == 0 && worst_sup <= 1.5 * h && std::abs(dim - 0.63) <= 0.10 && secs < 300.0;
  return {ok, std::to_string(cloud.size()) + " cells, " + std::to_string(missed) + " samples missed, max distance " +
                  fmt("%.3f h", worst / h) + fmt(" (max norm %.3f h)", worst_sup / h) + ", dimension " + fmt("%.3f", dim) + ", " + fmt("%.2f s", secs)};
}

// 8. Discreteness and density for (Re z^k, Im z^k).
Outcome cr_powers() {
  bool ok = true;
  std::string detail;
  std::vector<double> origin{0.0, 0.0};
  std::vector<double> radii{0.2, 0.1, 0.05, 0.025};
  for (int k = 1; k <= 5; ++k) {
    FieldEvaluator f;
    f.input_dim = f.output_dim = 2;
    f.value = [k](std::span<const double> x, std::span<double> o) {
      std::complex<double> z = std::pow(std::complex<double>(x[0], x[1]), k);
      o[0] = z.real();
      o[1] = z.imag();
    };
    f.lipschitz = [k](const Box& b, std::span<double> L) {
      double r = std::hypot(std::max(std::abs(b.lo[0]), std::abs(b.hi[0])),
                            std::max(std::abs(b.lo[1]), std::abs(b.hi[1])));
      L[0] = L[1] = k * std::pow(r, k - 1);
    };
    PointCloud c = extract_zero_set(f, GridSpec(cube(2, -1, 1), 1.0 / 256));
    auto groups = clusters(c);
    bool at_origin = groups.size() == 1 && covers(c, origin);
    double order = vanishing_order_estimate(f, origin, radii).slope;
    double theta = density_estimate(c, 0, origin, std::vector<double>{0.2, 0.1, 0.05}).limsup_proxy;
    double bound = constants(2).C_main.value() * k * k * k;
    ok = ok && at_origin && std::abs(order - k) <= 0.1 && theta == 1.0 && theta <= bound;
    detail += "k=" + std::to_string(k) + ": " + std::to_string(groups.size()) + " cluster, order " +
              fmt("%.3f", order) + ", Theta " + fmt("%.0f", theta) + "; ";
  }
  return {ok, detail};
}

// 9. Second-order reduction on the torus.
Outcome torus_reduction() {
  std::vector<std::vector<double>> grid;
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) grid.push_back({2 * M_PI * i / 64, 2 * M_PI * j / 64});
  }
  double worst = 0.0;
  for (int p = 1; p <= 5; ++p) {
    for (int q = 1; q <= 5; ++q) {
      ScalarSolution u = torus_eigenfunction(p, q);
      ReducedSection r = reduce(u, eigen_nonlinearity(*u.lambda));
      worst = std::max(worst, residual_norm(r.L, r.omega, grid));
    }
  }
  // sin 3x sin 4y: u = grad u = 0 exactly at x = a pi/3, y = b pi/4, a < 6, b < 8.
  const std::size_t expected = 6 * 8;
  const std::size_t cells = 960;
  NodalSets sets = nodal_sets(torus_eigenfunction(3, 4), torus_grid(cells));
  std::vector<std::size_t> period{cells, cells};
  std::size_t count = clusters(sets.critical, period).size();
  double dim = box_dimension(sets.nodal, dyadic_scales(1.0 / 8, 1.0 / 64)).slope;
  bool ok = worst <= 1e-8 && count == expected && std::abs(dim - 1.0) <= 0.1;
  return {ok, "max residual " + fmt("%.2e", worst) + ", " + std::to_string(count) + " critical clusters (expected " +
                  std::to_string(expected) + "), nodal dimension " + fmt("%.3f", dim)};
}

// 10. Non-reproducible constants stay informational.
Outcome disclosures() {
  VerifyReport r = run_verify(1);
  std::size_t audits = 0;
  bool audits_free = true;
  for (const auto& c : r.checks) {
    if (c.module == "audit") {
      ++audits;
      audits_free = audits_free && !c.enforced;
    }
  }
  return {r.passed() && audits >= 3 && audits_free,
          std::to_string(r.checks.size()) + " checks, " + std::to_string(r.failures()) + " enforced failures, " +
              std::to_string(audits) + " audits reported without enforcement"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"exact solution generation", exact_generation},
      {"regular slice within 20 draws", regular_slices},
      {"resultant vs companion roots", resultant_oracle},
      {"projection resultant degree k^2", degree_law},
      {"exact constants", constants_exact},
      {"Dirac form identities", dirac_identities},
      {"wild Cantor example", wild_cantor},
      {"n = 2 discreteness and density", cr_powers},
      {"second-order reduction on the torus", torus_reduction},
      {"non-reproducible constants not enforced", disclosures},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.passed ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
