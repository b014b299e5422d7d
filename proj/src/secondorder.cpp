#include "zeroset/secondorder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <stdexcept>

#include "zeroset/forms.hpp"

namespace zeroset {

double ScalarSolution::laplacian(std::span<const double> x) const {
  std::vector<double> H(n * n);
  hessian(x, H);
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s -= H[j * n + j];
  return s;
}

double finite_difference_laplacian(const ScalarSolution& u, std::span<const double> x, double step) {
  std::vector<double> p(x.begin(), x.end());
  const double c = u.value(x);
  double s = 0.0;
  for (std::size_t j = 0; j < u.n; ++j) {
    p[j] = x[j] + step;
    double up = u.value(p);
    p[j] = x[j] - step;
    double down = u.value(p);
    p[j] = x[j];
    s -= (up - 2.0 * c + down) / (step * step);
  }
  return s;
}

namespace {

// max |sin(a t)| and max |cos(a t)| for t in [lo, hi].
double max_abs_sin(double a, double lo, double hi) {
  double u = a * lo;
  double v = a * hi;
  if (v - u >= M_PI) return 1.0;
  // A peak of |sin| sits at pi/2 + k pi.
  double k = std::ceil((u - M_PI / 2.0) / M_PI);
  if (M_PI / 2.0 + k * M_PI <= v) return 1.0;
  return std::max(std::abs(std::sin(u)), std::abs(std::sin(v)));
}

double max_abs_cos(double a, double lo, double hi) {
  return max_abs_sin(a, lo + M_PI / (2.0 * a), hi + M_PI / (2.0 * a));
}

}  // namespace

ScalarSolution torus_eigenfunction(int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("torus eigenfunction needs p, q >= 1");
  ScalarSolution u;
  u.n = 2;
  u.domain = cube(2, 0.0, 2.0 * M_PI);
  const double a = p;
  const double b = q;
  u.lambda = a * a + b * b;
  u.value = [a, b](std::span<const double> x) { return std::sin(a * x[0]) * std::sin(b * x[1]); };
  u.gradient = [a, b](std::span<const double> x, std::span<double> g) {
    g[0] = a * std::cos(a * x[0]) * std::sin(b * x[1]);
    g[1] = b * std::sin(a * x[0]) * std::cos(b * x[1]);
  };
  u.hessian = [a, b](std::span<const double> x, std::span<double> H) {
    double sx = std::sin(a * x[0]);
    double cx = std::cos(a * x[0]);
    double sy = std::sin(b * x[1]);
    double cy = std::cos(b * x[1]);
    H[0] = -a * a * sx * sy;
    H[1] = a * b * cx * cy;
    H[2] = a * b * cx * cy;
    H[3] = -b * b * sx * sy;
  };
  u.lipschitz = [a, b](const Box& box, std::span<double> L) {
    const double sx = max_abs_sin(a, box.lo[0], box.hi[0]);
    const double cx = max_abs_cos(a, box.lo[0], box.hi[0]);
    const double sy = max_abs_sin(b, box.lo[1], box.hi[1]);
    const double cy = max_abs_cos(b, box.lo[1], box.hi[1]);
    L[0] = std::hypot(a * cx * sy, b * sx * cy);
    L[1] = std::hypot(a * a * sx * sy, a * b * cx * cy);
    L[2] = std::hypot(a * b * cx * cy, b * b * sx * sy);
  };
  return u;
}

ScalarSolution polynomial_solution(const MultiPoly& poly, Box domain, std::optional<double> lambda) {
  const std::size_t n = poly.nvars();
  if (domain.dim() != n) throw std::invalid_argument("domain dimension differs from nvars");
  struct Derivs {
    MultiPoly u;
    std::vector<MultiPoly> g;
    std::vector<MultiPoly> H;
  };
  auto d = std::make_shared<Derivs>();
  d->u = poly;
  for (std::size_t i = 0; i < n; ++i) d->g.push_back(poly.derive(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d->H.push_back(d->g[i].derive(j));
  }
  ScalarSolution u;
  u.n = n;
  u.domain = std::move(domain);
  u.lambda = lambda;
  u.value = [d](std::span<const double> x) { return d->u.evaluate(x); };
  u.gradient = [d](std::span<const double> x, std::span<double> g) {
    for (std::size_t i = 0; i < d->g.size(); ++i) g[i] = d->g[i].evaluate(x);
  };
  u.hessian = [d](std::span<const double> x, std::span<double> H) {
    for (std::size_t i = 0; i < d->H.size(); ++i) H[i] = d->H[i].evaluate(x);
  };
  u.lipschitz = [d, n](const Box& b, std::span<double> L) {
    double sq = 0.0;
    for (const auto& g : d->g) {
      double v = g.abs_bound(b.lo, b.hi);
      sq += v * v;
    }
    L[0] = std::sqrt(sq);
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        double v = d->H[i * n + j].abs_bound(b.lo, b.hi);
        row += v * v;
      }
      L[1 + i] = std::sqrt(row);
    }
  };
  return u;
}

ScalarNonlinearity eigen_nonlinearity(double lambda) {
  return [lambda](std::span<const double>, double w0, std::span<const double>) { return -lambda * w0; };
}

ReducedSection reduce(const ScalarSolution& u, ScalarNonlinearity Ftilde) {
  const std::size_t n = u.n;
  if (!Ftilde) throw std::invalid_argument("nonlinearity is missing");
  // Zero-section spot check on a 5^n lattice of the domain.
  {
    std::vector<double> zero(n, 0.0);
    std::vector<double> x(n);
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= 5;
    for (std::size_t t = 0; t < total; ++t) {
      std::size_t r = t;
      for (std::size_t k = 0; k < n; ++k) {
        x[k] = u.domain.lo[k] + (u.domain.hi[k] - u.domain.lo[k]) * static_cast<double>(r % 5) / 4.0;
        r /= 5;
      }
      if (std::abs(Ftilde(x, 0.0, zero)) > 1e-12) {
        throw std::invalid_argument("nonlinearity does not respect the zero section");
      }
    }
  }
  ReducedSection out;
  SymbolMap hodge = hodge_symbol(n);
  out.L = make_linear(hodge);
  const std::size_t N = hodge.N;
  out.L.V.tag = "custom";
  out.L.V.respects_zero_section = true;
  // Grade-1 basis entries sit at positions 1..n of the fixed basis.
  out.L.V.eval = [Ftilde, n](std::span<const double> x, std::span<const double> e, std::span<double> v) {
    std::fill(v.begin(), v.end(), 0.0);
    auto w1 = e.subspan(1, n);
    v[0] = Ftilde(x, e[0], w1);
    for (std::size_t j = 0; j < n; ++j) v[1 + j] = -w1[j];
  };
  auto sol = std::make_shared<ScalarSolution>(u);
  out.omega = [sol, n, N](std::span<const double> x, std::span<double> value, std::span<double> jac) {
    std::fill(value.begin(), value.end(), 0.0);
    std::fill(jac.begin(), jac.end(), 0.0);
    std::vector<double> g(n);
    std::vector<double> H(n * n);
    value[0] = sol->value(x);
    sol->gradient(x, g);
    sol->hessian(x, H);
    for (std::size_t i = 0; i < n; ++i) value[1 + i] = g[i];
    for (std::size_t j = 0; j < n; ++j) {
      jac[j * N] = g[j];
      for (std::size_t i = 0; i < n; ++i) jac[j * N + 1 + i] = H[i * n + j];
    }
  };
  return out;
}

FieldEvaluator value_field(const ScalarSolution& u) {
  auto sol = std::make_shared<ScalarSolution>(u);
  FieldEvaluator f;
  f.input_dim = u.n;
  f.output_dim = 1;
  f.value = [sol](std::span<const double> x, std::span<double> out) { out[0] = sol->value(x); };
  f.lipschitz = [sol](const Box& b, std::span<double> L) {
    std::vector<double> all(sol->n + 1);
    sol->lipschitz(b, all);
    L[0] = all[0];
  };
  return f;
}

FieldEvaluator critical_field(const ScalarSolution& u) {
  auto sol = std::make_shared<ScalarSolution>(u);
  FieldEvaluator f;
  f.input_dim = u.n;
  f.output_dim = u.n + 1;
  f.value = [sol](std::span<const double> x, std::span<double> out) {
    out[0] = sol->value(x);
    sol->gradient(x, out.subspan(1));
  };
  f.lipschitz = [sol](const Box& b, std::span<double> L) { sol->lipschitz(b, L); };
  return f;
}

NodalSets nodal_sets(const ScalarSolution& u, const GridSpec& grid) {
  if (!u.gradient || !u.lipschitz) throw std::invalid_argument("nodal sets need a gradient and bounds");
  return {extract_zero_set(value_field(u), grid), extract_zero_set(critical_field(u), grid)};
}

GridSpec torus_grid(std::size_t cells) {
  if (cells == 0) throw std::invalid_argument("torus grid needs cells");
  const double h = 2.0 * M_PI / static_cast<double>(cells);
  return GridSpec(cube(2, -h / 2.0, 2.0 * M_PI - h / 2.0), h);
}

std::vector<ScanRow> eigen_density_scan(std::span<const std::pair<int, int>> family, std::size_t cells,
                                        std::span<const double> radii, std::size_t samples) {
  if (family.empty()) throw std::invalid_argument("scan family is empty");
  GridSpec grid = torus_grid(cells);
  std::vector<std::size_t> period{cells, cells};
  std::vector<ScanRow> rows;
  for (auto [p, q] : family) {
    ScalarSolution u = torus_eigenfunction(p, q);
    NodalSets sets = nodal_sets(u, grid);
    ScanRow row;
    row.p = p;
    row.q = q;
    row.lambda = *u.lambda;
    auto groups = clusters(sets.critical, period);
    row.ncrit_cluster_count = groups.size();
    std::vector<std::vector<double>> crit_points;
    for (const auto& g : groups) {
      auto pt = sets.critical.point(g[g.size() / 2]);
      crit_points.emplace_back(pt.begin(), pt.end());
    }
    std::vector<std::vector<double>> nodal_points = crit_points;
    if (!sets.nodal.empty()) {
      std::size_t step = std::max<std::size_t>(1, sets.nodal.size() / std::max<std::size_t>(samples, 1));
      for (std::size_t i = 0; i < sets.nodal.size() && nodal_points.size() < crit_points.size() + samples;
           i += step) {
        auto pt = sets.nodal.point(i);
        nodal_points.emplace_back(pt.begin(), pt.end());
      }
    }
    for (const auto& pt : nodal_points) {
      row.theta_n1_max = std::max(row.theta_n1_max, density_estimate(sets.nodal, 1, pt, radii).limsup_proxy);
    }
    for (const auto& pt : crit_points) {
      row.theta_n2_max = std::max(row.theta_n2_max, density_estimate(sets.critical, 0, pt, radii).limsup_proxy);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_scan_csv(std::span<const ScanRow> rows, std::ostream& os) {
  os << "lambda,p,q,theta_n1_max,theta_n2_max,ncrit_cluster_count\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.10g,%d,%d,%.6f,%.6f,%zu\n", r.lambda, r.p, r.q, r.theta_n1_max,
                  r.theta_n2_max, r.ncrit_cluster_count);
    os << buf;
  }
}

}  // namespace zeroset
