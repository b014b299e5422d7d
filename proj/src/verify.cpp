#include "zeroset/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <sstream>

#include "zeroset/forms.hpp"
#include "zeroset/measure.hpp"
#include "zeroset/samples.hpp"
#include "zeroset/secondorder.hpp"
#include "zeroset/solutions.hpp"

namespace zeroset {

bool VerifyReport::passed() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.enforced && !c.passed; }));
}

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

class Suite {
 public:
  explicit Suite(std::uint64_t seed) { report.seed = seed; }

  void check(const std::string& module, const std::string& name, bool ok, std::string detail = {}) {
    report.checks.push_back({module, name, ok, true, std::move(detail)});
  }
  void audit(const std::string& module, const std::string& name, bool ok, std::string detail) {
    report.checks.push_back({module, name, ok, false, std::move(detail)});
  }
  // Runs `body`; an escaping exception fails the check.
  void guarded(const std::string& module, const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(module, name, false, std::string("exception: ") + e.what());
    }
  }

  VerifyReport report;
};

RationalMatrix cr_a2() { return RationalMatrix{{0, -1}, {1, 0}}; }
SymbolMap cr_symbol() { return SymbolMap({RationalMatrix::identity(2), cr_a2()}); }

// (Re z^k, Im z^k) as a field on R^2 with the Lipschitz bound k |z|^(k-1).
FieldEvaluator cr_power_field(int k) {
  FieldEvaluator f;
  f.input_dim = 2;
  f.output_dim = 2;
  f.value = [k](std::span<const double> x, std::span<double> o) {
    std::complex<double> p = std::pow(std::complex<double>(x[0], x[1]), k);
    o[0] = p.real();
    o[1] = p.imag();
  };
  f.lipschitz = [k](const Box& b, std::span<double> L) {
    double sq = 0.0;
    for (int i = 0; i < 2; ++i) {
      double m = std::max(std::abs(b.lo[i]), std::abs(b.hi[i]));
      sq += m * m;
    }
    L[0] = L[1] = k * std::pow(std::sqrt(sq), k - 1);
  };
  return f;
}

// Affine field x -> (x_1 - c_1, ..., x_c - c_c) whose zero set is an
// (n - c)-plane.
FieldEvaluator plane_field(std::size_t n, std::size_t codim, double shift) {
  FieldEvaluator f;
  f.input_dim = n;
  f.output_dim = codim;
  f.value = [codim, shift](std::span<const double> x, std::span<double> o) {
    for (std::size_t i = 0; i < codim; ++i) o[i] = x[i] - shift;
  };
  f.lipschitz = [codim](const Box&, std::span<double> L) {
    for (std::size_t i = 0; i < codim; ++i) L[i] = 1.0;
  };
  return f;
}

void polyalg_checks(Suite& s, Rng& rng) {
  const std::string mod = "polyalg";
  s.guarded(mod, "mixed partials commute", [&] {
    std::size_t bad = 0;
    for (int t = 0; t < 200; ++t) {
      MultiPoly p = random_poly(rng, 3, 5, 6);
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          if (!(p.derive(i).derive(j) == p.derive(j).derive(i))) ++bad;
        }
      }
    }
    s.check(mod, "mixed partials commute", bad == 0, "200 random polynomials in 3 variables");
  });
  s.guarded(mod, "lowest homogeneous part scales as t^k", [&] {
    std::size_t bad = 0;
    for (int t = 0; t < 100; ++t) {
      VectorPoly v = random_vector_poly(rng, 3, 2, 4, 4);
      HomogeneousPart hp = lowest_homogeneous_part(v);
      if (!hp.order) continue;
      std::vector<MultiPoly> subs;
      MultiPoly tv = MultiPoly::variable(4, 3);
      for (std::size_t i = 0; i < 3; ++i) subs.push_back(MultiPoly::variable(4, i) * tv);
      for (const auto& c : hp.part.components) {
        if (!(c.substitute(subs) == c.embed(4, 0) * tv.pow(*hp.order))) ++bad;
      }
    }
    s.check(mod, "lowest homogeneous part scales as t^k", bad == 0, "formal scalar t, 100 random inputs");
  });
  s.guarded(mod, "univariate view reassembles", [&] {
    std::size_t bad = 0;
    for (int t = 0; t < 100; ++t) {
      MultiPoly p = random_poly(rng, 3, 5, 6);
      auto axis = static_cast<std::size_t>(random_int(rng, 0, 2));
      if (!(univariate_view(p, axis).reassemble() == p)) ++bad;
    }
    s.check(mod, "univariate view reassembles", bad == 0, "100 random polynomials");
  });
  s.guarded(mod, "resultant orientation", [&] {
    // f = x - a, g = x - b in variables (x, a, b).
    MultiPoly x = MultiPoly::variable(3, 0);
    MultiPoly a = MultiPoly::variable(3, 1);
    MultiPoly b = MultiPoly::variable(3, 2);
    MultiPoly r = resultant(univariate_view(x - a, 0), univariate_view(x - b, 0));
    MultiPoly expected = MultiPoly::variable(2, 1) - MultiPoly::variable(2, 0);
    s.check(mod, "resultant orientation", r == expected, "resultant(x - a, x - b) = " + to_string(r));
  });
  s.guarded(mod, "resultant vanishes iff common root", [&] {
    std::size_t disagreements = 0;
    std::size_t zeros = 0;
    for (int t = 0; t < 200; ++t) {
      auto monic = [&](unsigned deg) {
        MultiPoly p = MultiPoly::monomial(1, Exponent{deg});
        for (unsigned j = 0; j < deg; ++j) p.add_term(Exponent{j}, random_rational(rng, 4, 3));
        return p;
      };
      auto df = static_cast<unsigned>(random_int(rng, 1, 6));
      auto dg = static_cast<unsigned>(random_int(rng, 1, 6));
      MultiPoly f(1);
      MultiPoly g(1);
      if (t % 2 == 0 && df > 1 && dg > 1) {
        MultiPoly lin = MultiPoly::variable(1, 0) - MultiPoly::constant(1, random_rational(rng, 4, 3));
        f = monic(df - 1) * lin;
        g = monic(dg - 1) * lin;
      } else {
        f = monic(df);
        g = monic(dg);
      }
      auto vf = univariate_view(f, 0);
      auto vg = univariate_view(g, 0);
      bool res_zero = resultant(vf, vg).is_zero();
      auto rf = companion_roots(vf.at({}));
      auto rg = companion_roots(vg.at({}));
      bool common = false;
      for (auto u : rf) {
        for (auto w : rg) common = common || std::abs(u - w) <= 1e-6;
      }
      if (res_zero) ++zeros;
      if (res_zero != common) ++disagreements;
    }
    s.check(mod, "resultant vanishes iff common root", disagreements == 0,
            "200 monic pairs, " + std::to_string(zeros) + " with a shared root, " + std::to_string(disagreements) +
                " disagreements with the companion-matrix oracle");
  });
  s.guarded(mod, "resultant degree k^2", [&] {
    bool ok = true;
    std::string detail;
    for (unsigned k = 1; k <= 4; ++k) {
      MultiPoly R;
      while (R.is_zero()) {
        auto make = [&] {
          MultiPoly p = MultiPoly::variable(3, 0).pow(k);
          for (unsigned j = 0; j < k; ++j) {
            MultiPoly u = random_homogeneous(rng, 2, k - j, 3).embed(3, 1);
            p += u * MultiPoly::variable(3, 0).pow(j);
          }
          return univariate_view(p, 0);
        };
        R = projection_resultant(make(), make());
      }
      ok = ok && R.is_homogeneous() && R.degree() == static_cast<int>(k * k);
      detail += "k=" + std::to_string(k) + ": deg " + std::to_string(R.degree()) + "; ";
    }
    s.check(mod, "resultant degree k^2", ok, detail);
  });
}

void operator_checks(Suite& s, Rng& rng) {
  const std::string mod = "operator";
  s.guarded(mod, "symbol is linear", [&] {
    std::size_t bad = 0;
    for (int t = 0; t < 20; ++t) {
      std::size_t n = 2 + t % 3;
      SymbolMap sm = random_elliptic_symbol(rng, n, 4);
      std::vector<Rational> xi(n), eta(n), mix(n);
      Rational a = random_rational(rng), b = random_rational(rng);
      for (std::size_t j = 0; j < n; ++j) {
        xi[j] = random_rational(rng);
        eta[j] = random_rational(rng);
        mix[j] = a * xi[j] + b * eta[j];
      }
      if (!(symbol_at(sm, mix) == symbol_at(sm, xi) * a + symbol_at(sm, eta) * b)) ++bad;
    }
    s.check(mod, "symbol is linear", bad == 0, "20 random symbols and covectors");
  });
  s.guarded(mod, "Clifford symbols square to -|xi|^2", [&] {
    bool ok = true;
    for (std::size_t n = 1; n <= 4; ++n) {
      SymbolMap h = hodge_symbol(n);
      if (!clifford_check(h, RationalMatrix::identity(n))) ok = false;
      for (int t = 0; t < (n == 4 ? 25 : 100); ++t) {
        std::vector<Rational> xi(n);
        Rational norm = 0;
        for (auto& v : xi) {
          v = random_rational(rng);
          norm += v * v;
        }
        RationalMatrix m = symbol_at(h, xi);
        if (!(m * m == RationalMatrix::identity(h.N) * Rational(-norm))) ok = false;
      }
    }
    bool same = clifford_check(SymbolMap({RationalMatrix::identity(2), RationalMatrix::identity(2)}),
                               RationalMatrix::identity(2));
    bool cr = clifford_check(cr_symbol(), RationalMatrix::identity(2));
    s.check(mod, "Clifford symbols square to -|xi|^2", ok && !same && !cr,
            "Hodge-Dirac n <= 4 pass; A1 = A2 = Id and the elliptic pair (Id, J) fail");
  });
  s.guarded(mod, "Clifford symbols certify elliptic", [&] {
    bool ok = is_elliptic(cr_symbol()).verdict == Verdict::elliptic;
    std::string detail;
    for (std::size_t n = 1; n <= 4; ++n) {
      auto c = is_elliptic(hodge_symbol(n));
      ok = ok && c.verdict == Verdict::elliptic;
      detail += "n=" + std::to_string(n) + ": " + to_string(c.verdict) + "; ";
    }
    s.check(mod, "Clifford symbols certify elliptic", ok, detail);
  });
  s.guarded(mod, "non-elliptic witness", [&] {
    SymbolMap bad({RationalMatrix::identity(2), RationalMatrix{{1, 0}, {0, -1}}});
    auto c = is_elliptic(bad);
    bool ok = c.verdict == Verdict::not_elliptic && c.witness.size() == 2 &&
              std::abs(std::abs(c.witness[0]) - std::abs(c.witness[1])) < 1e-6 && std::abs(c.det_at_witness) < 1e-9;
    std::string w = c.witness.size() == 2 ? fmt("(%.6f, ", c.witness[0]) + fmt("%.6f)", c.witness[1]) : "none";
    s.check(mod, "non-elliptic witness", ok, "A2 = diag(1, -1): witness " + w);
  });
  s.guarded(mod, "Leibniz residual vanishes", [&] {
    std::size_t bad = 0;
    for (int t = 0; t < 100; ++t) {
      std::size_t n = 2 + t % 3;
      std::size_t N = n == 2 ? 2 : 4;
      SymbolMap sm = random_elliptic_symbol(rng, n, N);
      MultiPoly f = random_poly(rng, n, 3, 4);
      VectorPoly phi = random_vector_poly(rng, n, N, 3, 3);
      if (!leibniz_residual(sm, f, phi).is_zero()) ++bad;
    }
    s.check(mod, "Leibniz residual vanishes", bad == 0, "100 random (symbol, f, phi)");
  });
  s.guarded(mod, "freezing a constant operator", [&] {
    std::size_t bad = 0;
    for (int t = 0; t < 10; ++t) {
      SymbolMap sm = random_elliptic_symbol(rng, 3, 4);
      std::vector<Rational> p{random_rational(rng), random_rational(rng), random_rational(rng)};
      SymbolMap fr = freeze(make_linear(sm), p);
      VectorPoly phi = random_vector_poly(rng, 3, 4, 3, 3);
      if (!(apply(fr, phi) == apply(sm, phi))) ++bad;
    }
    SemilinearSpec dirac = make_linear(hodge_symbol(2));
    dirac.V = cubic_dirac(Rational(1, 2));
    std::vector<Rational> origin{0, 0};
    SymbolMap fd = freeze(dirac, origin);
    s.check(mod, "freezing a constant operator", bad == 0 && fd.A == hodge_symbol(2).A,
            "frozen symbol reproduces apply; cubic Dirac term dropped");
  });
  s.guarded(mod, "sixteen-equation operator", [&] {
    NonUcpOperator op = build_nonucp_operator();
    std::vector<Rational> p{Rational(1, 3), Rational(-2, 5)};
    SymbolMap fr = freeze(op.spec, p);
    auto c = is_elliptic(fr);
    bool triangular = true;
    for (const auto& A : fr.A) {
      for (std::size_t i = 0; i < 16; ++i) {
        for (std::size_t j = 0; j < 16; ++j) {
          if (j / 4 > i / 4 && A(i, j) != 0) triangular = false;
        }
      }
    }
    bool metric = clifford_check(op.anisotropic, op.anisotropic_metric) &&
                  clifford_check(op.euclidean, RationalMatrix::identity(2));
    std::vector<std::vector<double>> grid{{0.1, 0.2}, {-0.5, 0.3}};
    SectionEvaluator zero = [](std::span<const double>, std::span<double> v, std::span<double> jac) {
      std::fill(v.begin(), v.end(), 0.0);
      std::fill(jac.begin(), jac.end(), 0.0);
    };
    double res = residual_norm(op.spec, zero, grid);
    s.check(mod, "sixteen-equation operator",
            fr.N == 16 && c.verdict == Verdict::elliptic && triangular && metric && res == 0.0,
            "frozen symbol " + to_string(c.verdict) + ", block lower triangular, zero section residual 0");
  });
  s.guarded(mod, "operator spec round trip", [&] {
    SemilinearSpec L = make_linear(cr_symbol());
    L.V = cubic_dirac(Rational(3, 2));
    std::string text = format_operator_spec(L);
    SemilinearSpec back = parse_operator_spec(text);
    s.check(mod, "operator spec round trip", format_operator_spec(back) == text, "");
  });
}

void solutions_checks(Suite& s, Rng& rng) {
  const std::string mod = "solutions";
  s.guarded(mod, "generated solutions are exact", [&] {
    std::size_t bad = 0;
    std::size_t recursion_bad = 0;
    for (int t = 0; t < 50; ++t) {
      std::size_t n = 2 + t % 3;
      std::size_t N = n == 2 ? static_cast<std::size_t>(2 * random_int(rng, 1, 4))
                             : static_cast<std::size_t>(4 * random_int(rng, 1, 2));
      SymbolMap sm = random_elliptic_symbol(rng, n, N);
      auto k = static_cast<unsigned>(random_int(rng, 0, 5));
      VectorPoly Y0 = random_vector_poly(rng, n - 1, N, k, 3);
      GeneratedSolution g = generate_polynomial_solution(sm, Y0, k);
      if (!g.complete || !apply(sm, g.phi).is_zero()) ++bad;
      ReducedOperator D = reduced_operator(sm);
      for (std::size_t j = 0; j + 1 < g.Y.size(); ++j) {
        VectorPoly lhs = g.Y[j + 1];
        for (auto& c : lhs.components) c *= Rational(static_cast<long>(j + 1));
        if (!(lhs == D.apply(g.Y[j]))) ++recursion_bad;
      }
    }
    s.check(mod, "generated solutions are exact", bad == 0 && recursion_bad == 0,
            "50 random elliptic systems (n in 2..4, N <= 8, k <= 5)");
  });
  s.guarded(mod, "regular slices found", [&] {
    std::size_t failures = 0;
    std::size_t degree_bad = 0;
    std::size_t max_draws = 0;
    for (int t = 0; t < 24; ++t) {
      std::size_t n = 2 + t % 3;
      std::size_t N = n == 2 ? static_cast<std::size_t>(2 * random_int(rng, 1, 2)) : 4;
      SymbolMap sm = random_elliptic_symbol(rng, n, N);
      auto k = static_cast<unsigned>(random_int(rng, 1, 4));
      VectorPoly Y0(n - 1, N);
      for (auto& c : Y0.components) c = random_homogeneous(rng, n - 1, k, 3);
      GeneratedSolution g = generate_polynomial_solution(sm, Y0, k);
      MonicSolutionForm m = to_monic_form(g.phi, static_cast<std::uint64_t>(t + 1));
      RegularSlice r = find_regular_slice(m, 20, static_cast<std::uint64_t>(t + 1));
      if (!r.found || r.value == 0) {
        ++failures;
        continue;
      }
      max_draws = std::max(max_draws, r.draws);
      if (!r.resultant.is_homogeneous() || r.resultant.degree() != static_cast<int>(k * k)) ++degree_bad;
    }
    s.check(mod, "regular slices found", failures == 0 && degree_bad == 0,
            "24 monic forms (k <= 4, N <= 4); at most " + std::to_string(max_draws) + " draws");
  });
  s.guarded(mod, "Hauptteil residual", [&] {
    std::size_t bad = 0;
    for (int t = 0; t < 10; ++t) {
      SymbolMap sm = random_elliptic_symbol(rng, 3, 4);
      VectorPoly Y0 = random_vector_poly(rng, 2, 4, 3, 3);
      GeneratedSolution g = generate_polynomial_solution(sm, Y0, 3);
      if (g.phi.is_zero()) continue;
      std::vector<Rational> p{random_rational(rng), random_rational(rng), random_rational(rng)};
      if (!hauptteil_residual(make_linear(sm), g.phi, p).is_zero()) ++bad;
    }
    s.check(mod, "Hauptteil residual", bad == 0, "10 generated solutions at random base points");
  });
  s.guarded(mod, "constants", [&] {
    ConstantsReport c2 = constants(2);
    ConstantsReport c3 = constants(3);
    bool ok = c3.alpha[1].to_string() == "2" && std::abs(c3.alpha[2].value() - M_PI) < 1e-12 &&
              c3.C_main.to_string() == "3" && c2.C_main.to_string() == "1" && c2.C_hyp.to_string() == "2";
    bool consistent = true;
    for (unsigned n = 2; n <= 6; ++n) {
      ConstantsReport c = constants(n);
      for (double k : {1.0, 2.0, 3.0, 4.0}) {
        for (double r : {0.5, 1.0, 2.0}) {
          double lhs = c.measure_bound(k, r) / (c.alpha[n - 2].value() * std::pow(r, n - 2.0));
          double rhs = c.C_main.value() * k * k * k;
          if (std::abs(lhs - rhs) > 1e-12 * rhs) consistent = false;
        }
      }
    }
    s.check(mod, "constants", ok && consistent,
            "C_main(3) = " + c3.C_main.to_string() + ", C_hyp(3) = " + c3.C_hyp.to_string() +
                "; measure bound / (alpha(n-2) r^(n-2)) = C_main k^3 for n <= 6");
  });
}

ExtForm x_dy_plus_y_dx() {
  ExtForm w(2);
  w.add(1u << 1, MultiPoly::variable(2, 0));
  w.add(1u << 0, MultiPoly::variable(2, 1));
  return w;
}

void forms_checks(Suite& s, Rng& rng) {
  const std::string mod = "forms";
  s.guarded(mod, "d^2 = 0 and delta^2 = 0", [&] {
    std::size_t bad = 0;
    for (int t = 0; t < 100; ++t) {
      std::size_t n = 1 + t % 4;
      ExtForm w = random_form(rng, n, 4, 3);
      if (!d(d(w)).is_zero() || !delta_flat(delta_flat(w)).is_zero()) ++bad;
    }
    s.check(mod, "d^2 = 0 and delta^2 = 0", bad == 0, "100 random forms, n <= 4");
  });
  s.guarded(mod, "(d + delta)^2 = -sum d_j^2", [&] {
    std::size_t bad = 0;
    for (int t = 0; t < 100; ++t) {
      std::size_t n = 1 + t % 4;
      ExtForm w = random_form(rng, n, 4, 3);
      ExtForm once = d(w) + delta_flat(w);
      ExtForm twice = d(once) + delta_flat(once);
      if (!(twice == apply_laplacian_coefficientwise(w))) ++bad;
      if (!(apply(hodge_symbol(n), flatten(w)) == flatten(once))) ++bad;
    }
    s.check(mod, "(d + delta)^2 = -sum d_j^2", bad == 0,
            "100 random forms, n <= 4; the Hodge symbol reproduces d + delta");
  });
  s.guarded(mod, "x dy + y dx solves d + delta", [&] {
    ExtForm w = x_dy_plus_y_dx();
    s.check(mod, "x dy + y dx solves d + delta", d(w).is_zero() && delta_flat(w).is_zero(), "");
  });
  s.guarded(mod, "pulled-back form is closed", [&] {
    // Polynomial F (A = {0}) against finite differences; Cantor F analytically.
    WildExample point = build_wild(ClosedSet::points({{0.0}}), 3);
    WildExample dust = build_wild(ClosedSet::cantor(Rational(1, 3), 4), 3);
    double fd_max = 0.0;
    double an_max = 0.0;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
      std::vector<double> x{u(rng), u(rng), u(rng)};
      for (const auto& [k, v] : d_at_finite_difference(point.phi2, x)) fd_max = std::max(fd_max, std::abs(v));
      std::vector<double> z{u(rng), u(rng), 0.5 + 0.75 * u(rng)};
      for (const auto& [k, v] : d_at(dust.phi2, z)) an_max = std::max(an_max, std::abs(v));
    }
    s.check(mod, "pulled-back form is closed", fd_max <= 1e-8 && an_max <= 1e-12,
            "max |d phi2| " + fmt("%.2e", fd_max) + " (finite differences), " + fmt("%.2e", an_max) +
                " (analytic, Cantor set)");
  });
  s.guarded(mod, "joint zero set is {(0,0)} x A", [&] {
    WildExample w = build_wild(ClosedSet::cantor(Rational(1, 3), 5), 3);
    FieldEvaluator f = w.joint_field();
    std::vector<double> out(f.output_dim);
    const auto& parts = w.set.interval_list();
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t mismatches = 0;
    for (int t = 0; t < 10000; ++t) {
      std::vector<double> p(3);
      if (t % 2 == 0) {
        const Interval& iv = parts[static_cast<std::size_t>(random_int(rng, 0, static_cast<long>(parts.size()) - 1))];
        p = {0.0, 0.0, iv.lo + (iv.hi - iv.lo) * unit(rng)};
      } else {
        p = {u(rng) * (t % 4 == 1 ? 1e-3 : 1.0), u(rng) * (t % 4 == 1 ? 1e-3 : 1.0), 0.5 + 0.75 * u(rng)};
      }
      f.value(p, out);
      double r = 0.0;
      for (double v : out) r = std::max(r, std::abs(v));
      bool in_set = w.predicted_gap(p) == 0.0;
      if (in_set != (r == 0.0)) ++mismatches;
    }
    s.check(mod, "joint zero set is {(0,0)} x A", mismatches == 0,
            "10^4 samples (half on the predicted set), " + std::to_string(mismatches) + " mismatches");
  });
  s.guarded(mod, "harmonic form with codimension-1 zeros", [&] {
    bool ok = true;
    for (std::size_t n = 2; n <= 4; ++n) {
      for (std::size_t p = 1; p <= n; ++p) {
        HarmonicReport h = harmonic_counterexample(n, p);
        ok = ok && h.closed && h.harmonic && !h.coclosed && h.codimension == 1;
      }
    }
    HarmonicReport h = harmonic_counterexample(2, 1);
    s.check(mod, "harmonic form with codimension-1 zeros", ok,
            "x1 dx1^...^dxp is closed and harmonic with zero set {x1 = 0}; delta(x dx) = " +
                to_string(h.delta_omega) + ", so it is not coclosed (and not square-integrable)");
  });
}

void measure_checks(Suite& s) {
  const std::string mod = "measure";
  s.guarded(mod, "superset guarantee", [&] {
    std::size_t missed = 0;
    std::size_t tested = 0;
    // Identity map on R^2.
    PointCloud id = extract_zero_set(plane_field(2, 2, 0.0), GridSpec(cube(2, -1, 1), 1.0 / 64));
    std::vector<double> origin{0.0, 0.0};
    ++tested;
    if (!covers(id, origin)) ++missed;
    missed += clusters(id).size() == 1 ? 0 : 1;
    // CR powers.
    for (int k = 1; k <= 5; ++k) {
      PointCloud c = extract_zero_set(cr_power_field(k), GridSpec(cube(2, -1, 1), 1.0 / 64));
      ++tested;
      if (!covers(c, origin)) ++missed;
    }
    // Circle of radius 1/2 at 64 sample angles.
    FieldEvaluator circle;
    circle.input_dim = 2;
    circle.output_dim = 1;
    circle.value = [](std::span<const double> x, std::span<double> o) { o[0] = x[0] * x[0] + x[1] * x[1] - 0.25; };
    circle.lipschitz = [](const Box& b, std::span<double> L) { L[0] = 2.0 * b.half_diagonal() + 2.0 * std::hypot(b.center()[0], b.center()[1]); };
    PointCloud ring = extract_zero_set(circle, GridSpec(cube(2, -1, 1), 1.0 / 128));
    for (int a = 0; a < 64; ++a) {
      double t = 2.0 * M_PI * a / 64.0;
      std::vector<double> p{0.5 * std::cos(t), 0.5 * std::sin(t)};
      ++tested;
      if (!covers(ring, p)) ++missed;
    }
    // Wild example samples.
    WildExample w = build_wild(ClosedSet::cantor(Rational(1, 3), 4), 3);
    PointCloud wc = extract_zero_set(w.joint_field(), GridSpec(cube(3, -1, 1), 1.0 / 128));
    for (const auto& p : w.predicted_samples()) {
      ++tested;
      if (!covers(wc, p)) ++missed;
    }
    // Nothing flagged far from zeros.
    FieldEvaluator far = plane_field(2, 1, 5.0);
    bool empty = extract_zero_set(far, GridSpec(cube(2, -1, 1), 1.0 / 64)).empty();
    s.check(mod, "superset guarantee", missed == 0 && empty,
            std::to_string(tested) + " known zeros, " + std::to_string(missed) + " outside flagged cells");
  });
  s.guarded(mod, "pruning matches the full sweep", [&] {
    WildExample w = build_wild(ClosedSet::cantor(Rational(1, 3), 3), 3);
    GridSpec g(cube(3, -1, 1), 1.0 / 32);
    PointCloud a = extract_zero_set(w.joint_field(), g);
    PointCloud b = extract_zero_set_exhaustive(w.joint_field(), g);
    s.check(mod, "pruning matches the full sweep", a.coords == b.coords, std::to_string(a.size()) + " cells");
  });
  s.guarded(mod, "box dimension calibration", [&] {
    PointCloud seg(2, 1e-4, {0.0, 0.0});
    for (int i = 0; i < 10000; ++i) {
      std::vector<double> p{(i + 0.5) * 1e-4, 0.5};
      seg.push(p);
    }
    double d_seg = box_dimension(seg, dyadic_scales(1.0 / 4, 1.0 / 256)).slope;
    PointCloud plane = extract_zero_set(plane_field(3, 1, 0.01), GridSpec(cube(3, -1, 1), 1.0 / 64));
    double d_plane = box_dimension(plane, dyadic_scales(1.0 / 2, 1.0 / 16)).slope;
    CantorCloud cc = cantor(1.0 / 3.0, 8);
    double d_cantor = box_dimension(cc.cloud, dyadic_scales(1.0 / 4, 1.0 / 1024)).slope;
    PointCloud single(2, 1.0 / 256, {0.0, 0.0});
    std::vector<double> o{0.3, 0.3};
    single.push(o);
    double d_point = box_dimension(single, dyadic_scales(1.0 / 4, 1.0 / 64)).slope;
    bool ok = std::abs(d_seg - 1) <= 0.1 && std::abs(d_plane - 2) <= 0.1 &&
              std::abs(d_cantor - std::log(2.0) / std::log(3.0)) <= 0.1 && std::abs(d_point) <= 0.1;
    s.check(mod, "box dimension calibration", ok,
            "segment " + fmt("%.3f", d_seg) + ", plane " + fmt("%.3f", d_plane) + ", Cantor " +
                fmt("%.3f", d_cantor) + ", point " + fmt("%.3f", d_point));
  });
  s.guarded(mod, "density of a plane patch", [&] {
    PointCloud plane = extract_zero_set(plane_field(3, 1, 0.01), GridSpec(cube(3, -1, 1), 1.0 / 64));
    std::vector<double> p{0.01, 0.0, 0.0};
    std::vector<double> radii{0.5, 0.25, 0.125};
    DensityReport r = density_estimate(plane, 2, p, radii);
    bool ok = true;
    for (std::size_t i = 1; i < r.estimates.size(); ++i) ok = ok && r.estimates[i] >= 0.7 && r.estimates[i] <= 1.3;
    PointCloud single(2, 1.0 / 64, {0.0, 0.0});
    std::vector<double> q{0.25, 0.25};
    single.push(q);
    std::vector<double> r2{0.25, 0.125};
    DensityReport one = density_estimate(single, 0, q, r2);
    PointCloud none(2, 1.0 / 64, {0.0, 0.0});
    DensityReport zero = density_estimate(none, 1, q, r2);
    ok = ok && one.limsup_proxy == 1.0 && zero.limsup_proxy == 0.0;
    s.check(mod, "density of a plane patch", ok,
            "2-plane estimates " + fmt("%.3f", r.estimates[1]) + ", " + fmt("%.3f", r.estimates[2]) +
                "; single point 1; empty cloud 0");
  });
  s.guarded(mod, "vanishing order of z^k", [&] {
    bool ok = true;
    std::string detail;
    std::vector<double> p{0.0, 0.0};
    std::vector<double> radii{0.2, 0.1, 0.05, 0.025};
    for (int k = 1; k <= 5; ++k) {
      double slope = vanishing_order_estimate(cr_power_field(k), p, radii).slope;
      ok = ok && std::abs(slope - k) <= 0.1;
      detail += fmt("%.3f ", slope);
    }
    bool threw = false;
    try {
      FieldEvaluator c = plane_field(2, 1, 1.0);
      vanishing_order_estimate(c, p, radii);
    } catch (const std::domain_error&) {
      threw = true;
    }
    s.check(mod, "vanishing order of z^k", ok && threw, "k = 1..5: " + detail + "; nonzero value rejected");
  });
}

void secondorder_checks(Suite& s, Rng& rng) {
  const std::string mod = "secondorder";
  s.guarded(mod, "Laplacian matches finite differences", [&] {
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    double worst_fd = 0.0;
    double worst_eigen = 0.0;
    for (int p = 1; p <= 3; ++p) {
      ScalarSolution sol = torus_eigenfunction(p, p + 1);
      for (int t = 0; t < 100; ++t) {
        std::vector<double> x{u(rng), u(rng)};
        worst_fd = std::max(worst_fd, std::abs(sol.laplacian(x) - finite_difference_laplacian(sol, x)));
        worst_eigen = std::max(worst_eigen, std::abs(sol.laplacian(x) - *sol.lambda * sol.value(x)));
      }
    }
    // x^2 - y^2 + x y z is harmonic in R^3.
    MultiPoly x = MultiPoly::variable(3, 0), y = MultiPoly::variable(3, 1), z = MultiPoly::variable(3, 2);
    ScalarSolution poly = polynomial_solution(x * x - y * y + x * y * z, cube(3, -1, 1), 0.0);
    std::uniform_real_distribution<double> v(-1.0, 1.0);
    for (int t = 0; t < 100; ++t) {
      std::vector<double> q{v(rng), v(rng), v(rng)};
      worst_fd = std::max(worst_fd, std::abs(poly.laplacian(q) - finite_difference_laplacian(poly, q)));
      worst_eigen = std::max(worst_eigen, std::abs(poly.laplacian(q)));
    }
    s.check(mod, "Laplacian matches finite differences", worst_fd <= 1e-6 && worst_eigen <= 1e-10,
            "max deviation " + fmt("%.2e", worst_fd) + "; |Delta u - lambda u| <= " + fmt("%.2e", worst_eigen));
  });
  s.guarded(mod, "reduction residual on the torus", [&] {
    std::vector<std::vector<double>> grid;
    for (int i = 0; i < 64; ++i) {
      for (int j = 0; j < 64; ++j) grid.push_back({2.0 * M_PI * i / 64.0, 2.0 * M_PI * j / 64.0});
    }
    double worst = 0.0;
    for (int p = 1; p <= 5; ++p) {
      for (int q = 1; q <= 5; ++q) {
        ScalarSolution u = torus_eigenfunction(p, q);
        ReducedSection r = reduce(u, eigen_nonlinearity(*u.lambda));
        worst = std::max(worst, residual_norm(r.L, r.omega, grid));
      }
    }
    ScalarSolution u = torus_eigenfunction(2, 3);
    ReducedSection wrong = reduce(u, eigen_nonlinearity(*u.lambda + 1.0));
    double off = residual_norm(wrong.L, wrong.omega, grid);
    bool rejects = false;
    try {
      reduce(u, [](std::span<const double>, double, std::span<const double>) { return 1.0; });
    } catch (const std::invalid_argument&) {
      rejects = true;
    }
    s.check(mod, "reduction residual on the torus", worst <= 1e-8 && off > 0.5 && rejects,
            "max residual " + fmt("%.2e", worst) + " over p, q <= 5 on a 64^2 grid; wrong lambda gives " +
                fmt("%.2f", off));
  });
  s.guarded(mod, "torus nodal structure", [&] {
    const std::size_t cells = 960;
    ScalarSolution u = torus_eigenfunction(3, 4);
    NodalSets sets = nodal_sets(u, torus_grid(cells));
    std::vector<std::size_t> period{cells, cells};
    std::size_t count = clusters(sets.critical, period).size();
    double d_nodal = box_dimension(sets.nodal, dyadic_scales(1.0 / 8, 1.0 / 64)).slope;
    double d_crit = box_dimension(sets.critical, dyadic_scales(1.0 / 8, 1.0 / 64)).slope;
    // Every critical cell lies within one cell of a nodal cell.
    std::size_t outside = 0;
    for (std::size_t i = 0; i < sets.critical.size(); ++i) {
      auto c = sets.critical.cell(i);
      bool near = false;
      for (std::size_t j = 0; j < sets.nodal.size() && !near; ++j) {
        auto e = sets.nodal.cell(j);
        near = std::abs(c[0] - e[0]) <= 1 && std::abs(c[1] - e[1]) <= 1;
      }
      if (!near) ++outside;
    }
    bool ok = count == 48 && std::abs(d_nodal - 1) <= 0.1 && std::abs(d_crit) <= 0.1 && outside == 0;
    s.check(mod, "torus nodal structure", ok,
            "sin 3x sin 4y: " + std::to_string(count) + " critical clusters (6 x 8 lattice), nodal dimension " +
                fmt("%.3f", d_nodal) + ", critical dimension " + fmt("%.3f", d_crit));
  });
  s.guarded(mod, "critical points vanish to order 2", [&] {
    ScalarSolution u = torus_eigenfunction(3, 4);
    FieldEvaluator f = value_field(u);
    std::vector<double> radii{0.04, 0.02, 0.01, 0.005};
    double worst = 0.0;
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 8; ++b) {
        std::vector<double> p{a * M_PI / 3.0, b * M_PI / 4.0};
        worst = std::max(worst, std::abs(vanishing_order_estimate(f, p, radii).slope - 2.0));
      }
    }
    s.check(mod, "critical points vanish to order 2", worst <= 0.1,
            "48 lattice points, max |order - 2| = " + fmt("%.3f", worst));
  });
}

void audits(Suite& s) {
  const std::string mod = "audit";
  s.guarded(mod, "Cauchy-Riemann density audit", [&] {
    double C = constants(2).C_main.value();
    bool ok = true;
    std::string detail;
    std::vector<double> p{0.0, 0.0};
    std::vector<double> radii{0.2, 0.1, 0.05};
    for (int k = 1; k <= 5; ++k) {
      PointCloud c = extract_zero_set(cr_power_field(k), GridSpec(cube(2, -1, 1), 1.0 / 256));
      double theta = density_estimate(c, 0, p, radii).limsup_proxy;
      ok = ok && theta <= C * k * k * k;
      detail += fmt("%.0f", theta) + (k < 5 ? ", " : "");
    }
    s.audit(mod, "Cauchy-Riemann density audit", ok,
            "Theta^0 proxies " + detail + " against C_main(2) k^3; no radius is known below which the bound holds");
  });
  s.guarded(mod, "wild example density audit", [&] {
    WildExample w = build_wild(ClosedSet::cantor(Rational(1, 3), 6), 3);
    PointCloud c = extract_zero_set(w.joint_field(), GridSpec(cube(3, -1, 1), 1.0 / 512));
    double C = constants(3).C_main.value();
    std::vector<double> radii{1.0 / 16, 1.0 / 32, 1.0 / 64};
    std::vector<double> order_radii{0.02, 0.01, 0.005};
    double worst = 0.0;
    double order = 0.0;
    bool ok = true;
    for (double z : {0.0, 1.0 / 3, 2.0 / 3, 1.0}) {
      std::vector<double> p{0.0, 0.0, z};
      double k = std::round(vanishing_order_estimate(w.joint_field(), p, order_radii).slope);
      double theta = density_estimate(c, 1, p, radii).limsup_proxy;
      order = std::max(order, k);
      worst = std::max(worst, theta);
      ok = ok && theta <= C * k * k * k;
    }
    s.audit(mod, "wild example density audit", ok,
            "Theta^1 proxy " + fmt("%.3f", worst) + " at points of {(0,0)} x A with order " + fmt("%.0f", order) +
                " against C_main(3) k^3 = " + fmt("%.0f", C * order * order * order));
  });
  s.guarded(mod, "eigenfunction density trend", [&] {
    std::vector<std::pair<int, int>> family{{1, 1}, {2, 1}, {3, 4}, {5, 5}};
    std::vector<double> radii{0.3, 0.2, 0.12};
    auto rows = eigen_density_scan(family, 240, radii);
    bool monotone = true;
    std::string detail;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0 && rows[i].theta_n1_max + 1e-9 < rows[i - 1].theta_n1_max) monotone = false;
      detail += "lambda " + fmt("%.0f", rows[i].lambda) + ": " + fmt("%.3f", rows[i].theta_n1_max) + "; ";
    }
    s.audit(mod, "eigenfunction density trend", monotone,
            "Theta^1 maxima " + detail + "the constant C is not desk-reproducible, so only the trend is reported");
  });
}

}  // namespace

VerifyReport run_verify(std::uint64_t seed) {
  Suite s(seed);
  Rng rng(seed);
  polyalg_checks(s, rng);
  operator_checks(s, rng);
  solutions_checks(s, rng);
  forms_checks(s, rng);
  measure_checks(s);
  secondorder_checks(s, rng);
  audits(s);
  return s.report;
}

}  // namespace zeroset
