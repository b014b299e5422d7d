#include "zeroset/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace zeroset {

double unit_ball_volume(unsigned m) {
  return std::pow(M_PI, m / 2.0) / std::tgamma(m / 2.0 + 1.0);
}

double Box::half_diagonal() const {
  double sq = 0.0;
  for (std::size_t i = 0; i < lo.size(); ++i) sq += (hi[i] - lo[i]) * (hi[i] - lo[i]);
  return 0.5 * std::sqrt(sq);
}

std::vector<double> Box::center() const {
  std::vector<double> c(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
  return c;
}

Box cube(std::size_t dim, double lo, double hi) {
  return Box{std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
}

GridSpec::GridSpec(Box b, double cell) : box(std::move(b)), h(cell) {
  if (!(h > 0.0)) throw std::invalid_argument("grid cell size must be positive");
  if (box.lo.size() != box.hi.size() || box.lo.empty()) throw std::invalid_argument("grid box is malformed");
  for (std::size_t i = 0; i < box.dim(); ++i) {
    if (!(box.lo[i] < box.hi[i])) throw std::invalid_argument("grid box is empty");
  }
}

std::vector<std::size_t> GridSpec::cells_per_axis() const {
  std::vector<std::size_t> out(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) {
    double cells = (box.hi[i] - box.lo[i]) / h;
    out[i] = static_cast<std::size_t>(std::max(1.0, std::round(cells)));
  }
  return out;
}

PointCloud::PointCloud(std::size_t d, double cell, std::vector<double> org)
    : dim(d), h(cell), origin(std::move(org)) {
  if (origin.empty()) origin.assign(dim, 0.0);
  if (origin.size() != dim) throw std::invalid_argument("origin has wrong dimension");
}

void PointCloud::push(std::span<const double> p) {
  if (p.size() != dim) throw std::invalid_argument("point has wrong dimension");
  coords.insert(coords.end(), p.begin(), p.end());
}

std::vector<std::int64_t> PointCloud::cell(std::size_t i) const {
  std::vector<std::int64_t> c(dim);
  auto p = point(i);
  for (std::size_t k = 0; k < dim; ++k) {
    c[k] = static_cast<std::int64_t>(std::floor((p[k] - origin[k]) / h));
  }
  return c;
}

// Extraction.

namespace {

struct Extractor {
  const FieldEvaluator& f;
  const GridSpec& grid;
  std::size_t n;
  double r_cell;
  std::vector<double> value;
  std::vector<double> lip;
  std::vector<double> x;
  std::vector<std::vector<std::size_t>> hits;
  std::size_t leaf_cells = 64;
  bool prune = true;

  Extractor(const FieldEvaluator& fe, const GridSpec& g)
      : f(fe), grid(g), n(g.box.dim()), value(fe.output_dim), lip(fe.output_dim), x(g.box.dim()) {
    r_cell = grid.h * std::sqrt(static_cast<double>(n)) / 2.0;
  }

  Box block_box(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) const {
    Box box{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) {
      box.lo[k] = grid.box.lo[k] + static_cast<double>(a[k]) * grid.h;
      box.hi[k] = grid.box.lo[k] + static_cast<double>(b[k]) * grid.h;
    }
    return box;
  }

  void eval_at(std::span<const double> p) {
    f.value(p, value);
    for (double v : value) {
      if (!std::isfinite(v)) throw std::runtime_error("evaluator returned a non-finite value");
    }
  }

  void cell(const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> b(idx);
    for (auto& v : b) ++v;
    Box box = block_box(idx, b);
    for (std::size_t k = 0; k < n; ++k) x[k] = 0.5 * (box.lo[k] + box.hi[k]);
    eval_at(x);
    f.lipschitz(box, lip);
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (std::abs(value[i]) > lip[i] * r_cell) return;
    }
    hits.push_back(idx);
  }

  void block(std::vector<std::size_t> a, std::vector<std::size_t> b) {
    std::size_t count = 1;
    std::size_t widest = 0;
    for (std::size_t k = 0; k < n; ++k) {
      count *= b[k] - a[k];
      if (b[k] - a[k] > b[widest] - a[widest]) widest = k;
    }
    if (count == 0) return;
    if (prune && count > 1) {
      Box box = block_box(a, b);
      std::vector<double> c = box.center();
      eval_at(c);
      f.lipschitz(box, lip);
      double sq = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        double half = 0.5 * static_cast<double>(b[k] - a[k] - 1) * grid.h;
        sq += half * half;
      }
      double reach = std::sqrt(sq) + r_cell;
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (std::abs(value[i]) > lip[i] * reach) return;
      }
    }
    if (count <= leaf_cells || !prune) {
      std::vector<std::size_t> idx(a);
      while (true) {
        cell(idx);
        std::size_t k = n;
        while (k-- > 0) {
          if (++idx[k] < b[k]) break;
          idx[k] = a[k];
        }
        if (k == static_cast<std::size_t>(-1)) break;
      }
      return;
    }
    std::size_t mid = a[widest] + (b[widest] - a[widest]) / 2;
    std::vector<std::size_t> b1(b);
    b1[widest] = mid;
    std::vector<std::size_t> a2(a);
    a2[widest] = mid;
    block(a, b1);
    block(a2, b);
  }
};

PointCloud run_extraction(const FieldEvaluator& f, const GridSpec& grid, bool prune) {
  if (f.input_dim != grid.box.dim()) throw std::invalid_argument("evaluator and grid dimensions differ");
  if (!f.value || !f.lipschitz) throw std::invalid_argument("evaluator needs value and lipschitz");
  Extractor ex(f, grid);
  ex.prune = prune;
  std::vector<std::size_t> a(ex.n, 0);
  ex.block(a, grid.cells_per_axis());
  std::sort(ex.hits.begin(), ex.hits.end());
  PointCloud cloud(ex.n, grid.h, grid.box.lo);
  std::vector<double> p(ex.n);
  for (const auto& idx : ex.hits) {
    for (std::size_t k = 0; k < ex.n; ++k) {
      p[k] = grid.box.lo[k] + (static_cast<double>(idx[k]) + 0.5) * grid.h;
    }
    cloud.push(p);
  }
  return cloud;
}

struct CellHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct Fit {
  double slope = 0.0;
  double stderr_slope = 0.0;
};

Fit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double k = static_cast<double>(xs.size());
  double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
  double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  Fit fit;
  fit.slope = sxy / sxx;
  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - my - fit.slope * (xs[i] - mx);
    sse += r * r;
  }
  fit.stderr_slope = xs.size() > 2 ? std::sqrt(sse / (k - 2.0) / sxx) : 0.0;
  return fit;
}

}  // namespace

PointCloud extract_zero_set(const FieldEvaluator& f, const GridSpec& grid) {
  return run_extraction(f, grid, true);
}

PointCloud extract_zero_set_exhaustive(const FieldEvaluator& f, const GridSpec& grid) {
  return run_extraction(f, grid, false);
}

bool covers(const PointCloud& cloud, std::span<const double> p) {
  if (p.size() != cloud.dim) throw std::invalid_argument("point has wrong dimension");
  if (cloud.empty()) return false;
  const std::size_t n = cloud.dim;
  std::vector<double> origin = cloud.origin;
  origin.resize(n, 0.0);
  // Candidate index ranges per axis: one cell, or two when p is on a face.
  std::vector<std::array<std::int64_t, 2>> range(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = (p[k] - origin[k]) / cloud.h;
    const double r = std::round(t);
    if (std::abs(t - r) <= 1e-9 * std::max(1.0, std::abs(t))) {
      range[k] = {static_cast<std::int64_t>(r) - 1, static_cast<std::int64_t>(r)};
    } else {
      auto f = static_cast<std::int64_t>(std::floor(t));
      range[k] = {f, f};
    }
  }
  std::set<std::vector<std::int64_t>> wanted;
  std::vector<std::int64_t> idx(n);
  const std::size_t total = std::size_t{1} << n;
  for (std::size_t mask = 0; mask < total; ++mask) {
    for (std::size_t k = 0; k < n; ++k) idx[k] = range[k][(mask >> k) & 1];
    wanted.insert(idx);
  }
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (wanted.count(cloud.cell(i))) return true;
  }
  return false;
}

// Box counting.

BoxCountReport box_dimension(const PointCloud& cloud, std::span<const double> scales) {
  if (cloud.empty()) throw std::invalid_argument("box counting needs a nonempty cloud");
  if (scales.size() < 3) throw std::invalid_argument("box counting needs at least 3 scales");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0)) throw std::invalid_argument("scales must be positive");
    if (i > 0 && !(scales[i] < scales[i - 1])) throw std::invalid_argument("scales must strictly decrease");
  }
  if (scales.front() / scales.back() < 4.0 * (1.0 - 1e-12)) {
    throw std::invalid_argument("scales must span at least two octaves");
  }
  BoxCountReport rep;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<std::int64_t> key(cloud.dim);
  for (double s : scales) {
    std::unordered_set<std::vector<std::int64_t>, CellHash> boxes;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      auto p = cloud.point(i);
      for (std::size_t k = 0; k < cloud.dim; ++k) {
        key[k] = static_cast<std::int64_t>(std::floor((p[k] - cloud.origin[k]) / s));
      }
      boxes.insert(key);
    }
    rep.scales.push_back(s);
    rep.counts.push_back(boxes.size());
    xs.push_back(std::log(1.0 / s));
    ys.push_back(std::log(static_cast<double>(boxes.size())));
  }
  Fit fit = least_squares(xs, ys);
  rep.slope = fit.slope;
  rep.stderr_slope = fit.stderr_slope;
  return rep;
}

std::vector<double> dyadic_scales(double largest, double smallest) {
  if (!(largest > 0.0) || !(smallest > 0.0) || smallest > largest) {
    throw std::invalid_argument("need 0 < smallest <= largest");
  }
  std::vector<double> out;
  for (double s = largest; s >= smallest * (1.0 - 1e-12); s /= 2.0) out.push_back(s);
  return out;
}

// Clusters.

std::vector<std::vector<std::size_t>> clusters(const PointCloud& cloud,
                                               std::span<const std::size_t> period) {
  const std::size_t n = cloud.dim;
  if (!period.empty() && period.size() != n) throw std::invalid_argument("period has wrong dimension");
  const std::size_t count = cloud.size();
  std::unordered_map<std::vector<std::int64_t>, std::size_t, CellHash> index;
  std::vector<std::vector<std::int64_t>> cells(count);
  for (std::size_t i = 0; i < count; ++i) {
    cells[i] = cloud.cell(i);
    for (std::size_t k = 0; k < n; ++k) {
      if (!period.empty() && period[k] > 0) {
        auto P = static_cast<std::int64_t>(period[k]);
        cells[i][k] = ((cells[i][k] % P) + P) % P;
      }
    }
    index.emplace(cells[i], i);
  }
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  std::size_t offsets = 1;
  for (std::size_t k = 0; k < n; ++k) offsets *= 3;
  std::vector<std::int64_t> nb(n);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t o = 0; o < offsets; ++o) {
      std::size_t t = o;
      for (std::size_t k = 0; k < n; ++k) {
        nb[k] = cells[i][k] + static_cast<std::int64_t>(t % 3) - 1;
        t /= 3;
        if (!period.empty() && period[k] > 0) {
          auto P = static_cast<std::int64_t>(period[k]);
          nb[k] = ((nb[k] % P) + P) % P;
        }
      }
      auto it = index.find(nb);
      if (it == index.end()) continue;
      std::size_t a = find(i);
      std::size_t b = find(it->second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < count; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

// Density.

namespace {

// Volume of the eps-neighbourhood of the union of cloud cells inside B(p, r).
// Midpoint sampling at spacing min(h, eps/8) on the first n - 1 axes, exact
// interval unions along the last one.
double tube_volume(const PointCloud& cloud, std::span<const double> p, double r, double eps) {
  const std::size_t n = cloud.dim;
  const std::size_t lead = n - 1;
  const double half = cloud.h / 2.0;
  const double reach = r + eps + half * std::sqrt(static_cast<double>(n));
  const double bucket = eps + half;
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, CellHash> buckets;
  std::vector<std::int64_t> key(lead);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto q = cloud.point(i);
    double sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) sq += (q[k] - p[k]) * (q[k] - p[k]);
    if (sq > reach * reach) continue;
    for (std::size_t k = 0; k < lead; ++k) key[k] = static_cast<std::int64_t>(std::floor(q[k] / bucket));
    buckets[key].push_back(i);
  }
  std::size_t offsets = 1;
  for (std::size_t k = 0; k < lead; ++k) offsets *= 3;
  const double eta = std::min(cloud.h, eps / 8.0);
  const auto steps = static_cast<std::int64_t>(std::ceil(r / eta));
  std::vector<std::int64_t> idx(lead, -steps);
  std::vector<double> x(lead);
  std::vector<std::int64_t> nb(lead);
  std::vector<std::pair<double, double>> spans;
  double total = 0.0;
  while (true) {
    double sq = 0.0;
    for (std::size_t k = 0; k < lead; ++k) {
      x[k] = p[k] + (static_cast<double>(idx[k]) + 0.5) * eta;
      sq += (x[k] - p[k]) * (x[k] - p[k]);
    }
    if (lead == 0) sq = 0.0;
    if (sq < r * r) {
      const double w = std::sqrt(r * r - sq);
      const double lo = p[lead] - w;
      const double hi = p[lead] + w;
      for (std::size_t k = 0; k < lead; ++k) key[k] = static_cast<std::int64_t>(std::floor(x[k] / bucket));
      spans.clear();
      for (std::size_t o = 0; o < offsets; ++o) {
        std::size_t t = o;
        for (std::size_t k = 0; k < lead; ++k) {
          nb[k] = key[k] + static_cast<std::int64_t>(t % 3) - 1;
          t /= 3;
        }
        auto it = buckets.find(nb);
        if (it == buckets.end()) continue;
        for (std::size_t i : it->second) {
          auto q = cloud.point(i);
          double g = 0.0;
          for (std::size_t k = 0; k < lead; ++k) {
            double gap = std::max(0.0, std::abs(q[k] - x[k]) - half);
            g += gap * gap;
          }
          if (g > eps * eps) continue;
          double t2 = std::sqrt(eps * eps - g) + half;
          double a0 = std::max(lo, q[lead] - t2);
          double a1 = std::min(hi, q[lead] + t2);
          if (a1 > a0) spans.emplace_back(a0, a1);
        }
      }
      std::sort(spans.begin(), spans.end());
      double len = 0.0;
      double end = -std::numeric_limits<double>::infinity();
      for (auto [a0, a1] : spans) {
        if (a1 <= end) continue;
        len += a1 - std::max(a0, end);
        end = a1;
      }
      total += len;
    }
    if (lead == 0) break;
    std::size_t k = lead;
    while (k-- > 0) {
      if (++idx[k] < steps) break;
      idx[k] = -steps;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return total * std::pow(eta, static_cast<double>(lead));
}

// Volume of {(y, z) in R^m x R^c : |y|^2 + |z|^2 <= r^2, |z| <= t}, that is
// alpha(m) c alpha(c) int_0^t s^(c-1) (r^2 - s^2)^(m/2) ds by Simpson's rule.
double flat_tube_volume(unsigned m, unsigned c, double r, double t) {
  t = std::min(t, r);
  if (t <= 0.0) return 0.0;
  const int steps = 400;
  const double step = t / steps;
  auto g = [&](double s) {
    return std::pow(s, static_cast<double>(c) - 1.0) * std::pow(std::max(0.0, r * r - s * s), 0.5 * m);
  };
  double sum = g(0.0) + g(t);
  for (int i = 1; i < steps; ++i) sum += (i % 2 ? 4.0 : 2.0) * g(i * step);
  return unit_ball_volume(m) * c * unit_ball_volume(c) * sum * step / 3.0;
}

}  // namespace

DensityReport density_estimate(const PointCloud& cloud, unsigned m, std::span<const double> p,
                               std::span<const double> radii) {
  const std::size_t n = cloud.dim;
  if (p.size() != n) throw std::invalid_argument("center has wrong dimension");
  if (m > n) throw std::invalid_argument("density dimension exceeds ambient dimension");
  if (radii.empty()) throw std::invalid_argument("density needs at least one radius");
  DensityReport rep;
  rep.center.assign(p.begin(), p.end());
  rep.m = m;
  std::vector<double> sorted(radii.begin(), radii.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  for (double r : sorted) {
    if (!(r >= 4.0 * cloud.h)) {
      throw std::invalid_argument("radius below 4h is under the grid resolution");
    }
  }
  auto dist2 = [&](std::span<const double> a) {
    double sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) sq += (a[k] - p[k]) * (a[k] - p[k]);
    return sq;
  };

  std::vector<std::vector<std::size_t>> groups;
  if (m == 0 && !cloud.empty()) groups = clusters(cloud);

  for (double r : sorted) {
    double estimate = 0.0;
    if (cloud.empty()) {
      estimate = 0.0;
    } else if (m == 0) {
      std::size_t meeting = 0;
      for (const auto& g : groups) {
        for (std::size_t i : g) {
          if (dist2(cloud.point(i)) <= r * r) {
            ++meeting;
            break;
          }
        }
      }
      estimate = static_cast<double>(meeting);
    } else if (m == n) {
      estimate = tube_volume(cloud, p, r, cloud.h);
    } else {
      // The flagged band has a thickness of a few cells, so the cloud behaves
      // like a flat tube of radius eps + delta. Two eps values fix delta and
      // the density against the clipped flat tube volume.
      const double e2 = std::max(r / 8.0, cloud.h / 4.0);
      const double e1 = std::max(r / 4.0, 2.0 * e2);
      const double v1 = tube_volume(cloud, p, r, e1);
      const double v2 = tube_volume(cloud, p, r, e2);
      double density = 0.0;
      if (v1 > 0.0 && v2 > 0.0) {
        auto ratio = [&](double delta) {
          return flat_tube_volume(m, n - m, r, e1 + delta) / flat_tube_volume(m, n - m, r, e2 + delta);
        };
        // ratio decreases in delta; clamp to the bracket ends.
        double lo = -e2 * (1.0 - 1e-9);
        double hi = r - e1;
        const double target = v1 / v2;
        double delta = 0.0;
        if (target >= ratio(lo)) {
          delta = lo;
        } else if (target <= ratio(hi)) {
          delta = hi;
        } else {
          for (int it = 0; it < 100; ++it) {
            double mid = 0.5 * (lo + hi);
            (ratio(mid) > target ? lo : hi) = mid;
          }
          delta = 0.5 * (lo + hi);
        }
        density = v1 / flat_tube_volume(m, n - m, r, e1 + delta);
      }
      estimate = density * unit_ball_volume(m) * std::pow(r, static_cast<double>(m));
    }
    rep.radii.push_back(r);
    rep.estimates.push_back(estimate / (unit_ball_volume(m) * std::pow(r, static_cast<double>(m))));
  }
  const std::size_t k = rep.estimates.size();
  rep.limsup_proxy = rep.estimates[k - 1];
  if (k >= 2) rep.limsup_proxy = std::max(rep.limsup_proxy, rep.estimates[k - 2]);
  return rep;
}

// Vanishing order.

namespace {

std::vector<std::vector<double>> sphere_directions(std::size_t n) {
  std::vector<std::vector<double>> dirs;
  if (n == 1) return {{1.0}, {-1.0}};
  if (n == 2) {
    const int count = 720;
    for (int i = 0; i < count; ++i) {
      double t = 2.0 * M_PI * i / count;
      dirs.push_back({std::cos(t), std::sin(t)});
    }
    return dirs;
  }
  const int res = n == 3 ? 24 : 8;
  for (std::size_t axis = 0; axis < n; ++axis) {
    for (double sign : {1.0, -1.0}) {
      std::vector<int> idx(n - 1, 0);
      while (true) {
        std::vector<double> v(n);
        std::size_t j = 0;
        double norm = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          v[k] = k == axis ? sign : -1.0 + 2.0 * (idx[j++] + 0.5) / res;
          norm += v[k] * v[k];
        }
        norm = std::sqrt(norm);
        for (double& c : v) c /= norm;
        dirs.push_back(std::move(v));
        std::size_t t = n - 1;
        while (t-- > 0) {
          if (++idx[t] < res) break;
          idx[t] = 0;
        }
        if (t == static_cast<std::size_t>(-1)) break;
      }
    }
  }
  return dirs;
}

}  // namespace

OrderEstimate vanishing_order_estimate(const FieldEvaluator& f, std::span<const double> p,
                                       std::span<const double> radii, double tol) {
  const std::size_t n = f.input_dim;
  if (p.size() != n) throw std::invalid_argument("center has wrong dimension");
  if (radii.size() < 2) throw std::invalid_argument("order estimate needs at least two radii");
  std::vector<double> out(f.output_dim);
  f.value(p, out);
  double at_p = 0.0;
  for (double v : out) at_p = std::max(at_p, std::abs(v));
  if (at_p > tol) throw std::domain_error("field does not vanish at the center");
  OrderEstimate est;
  auto dirs = sphere_directions(n);
  std::vector<double> x(n);
  std::vector<double> xs;
  std::vector<double> ys;
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("radii must be positive");
    double sup = 0.0;
    for (const auto& d : dirs) {
      for (std::size_t k = 0; k < n; ++k) x[k] = p[k] + r * d[k];
      f.value(x, out);
      double sq = 0.0;
      for (double v : out) sq += v * v;
      sup = std::max(sup, std::sqrt(sq));
    }
    if (!(sup > 0.0)) throw std::domain_error("field vanishes on a whole sphere");
    est.radii.push_back(r);
    est.sphere_max.push_back(sup);
    xs.push_back(std::log(r));
    ys.push_back(std::log(sup));
  }
  Fit fit = least_squares(xs, ys);
  est.slope = fit.slope;
  est.stderr_slope = fit.stderr_slope;
  return est;
}

// Reference Cantor clouds.

CantorCloud cantor(double ratio, unsigned level, std::vector<double> offset) {
  if (!(ratio > 0.0 && ratio < 0.5)) throw std::invalid_argument("cantor ratio must lie in (0, 1/2)");
  if (level < 1) throw std::invalid_argument("cantor level must be at least 1");
  if (offset.empty()) throw std::invalid_argument("offset fixes the ambient dimension");
  std::vector<std::pair<double, double>> cur{{0.0, 1.0}};
  for (unsigned k = 0; k < level; ++k) {
    std::vector<std::pair<double, double>> next;
    for (auto [a, b] : cur) {
      double len = (b - a) * ratio;
      next.emplace_back(a, a + len);
      next.emplace_back(b - len, b);
    }
    cur = std::move(next);
  }
  CantorCloud out;
  out.dimension = std::log(2.0) / std::log(1.0 / ratio);
  out.intervals = cur;
  out.cloud = PointCloud(offset.size(), std::pow(ratio, level), offset);
  std::vector<double> pt(offset);
  for (auto [a, b] : cur) {
    for (double t : {a, 0.5 * (a + b), b}) {
      pt[0] = offset[0] + t;
      out.cloud.push(pt);
    }
  }
  return out;
}

// CSV.

void write_csv(const PointCloud& cloud, std::ostream& os) {
  char buf[64];
  os << "# zeroset-cloud v1 n=" << cloud.dim;
  std::snprintf(buf, sizeof buf, "%.17g", cloud.h);
  os << " h=" << buf << " origin=";
  for (std::size_t k = 0; k < cloud.dim; ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", cloud.origin[k]);
    os << (k ? "," : "") << buf;
  }
  os << "\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (std::size_t k = 0; k < cloud.dim; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", p[k]);
      os << (k ? "," : "") << buf;
    }
    os << "\n";
  }
}

PointCloud read_csv(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  PointCloud cloud;
  bool have_header = false;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("cloud line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!have_header) {
      const std::string tag = "# zeroset-cloud v1";
      if (line.rfind(tag, 0) != 0) fail("expected header '" + tag + " n=.. h=..'");
      std::istringstream hs(line.substr(tag.size()));
      std::string tok;
      std::size_t n = 0;
      double h = 0.0;
      std::vector<double> origin;
      while (hs >> tok) {
        try {
          if (tok.rfind("n=", 0) == 0) {
            n = std::stoul(tok.substr(2));
          } else if (tok.rfind("h=", 0) == 0) {
            h = std::stod(tok.substr(2));
          } else if (tok.rfind("origin=", 0) == 0) {
            std::stringstream os(tok.substr(7));
            std::string c;
            while (std::getline(os, c, ',')) origin.push_back(std::stod(c));
          }
        } catch (const std::exception&) {
          fail("malformed header field '" + tok + "'");
        }
      }
      if (n == 0 || !(h > 0.0)) fail("header needs n >= 1 and h > 0");
      if (!origin.empty() && origin.size() != n) fail("origin has wrong dimension");
      cloud = PointCloud(n, h, origin);
      have_header = true;
      continue;
    }
    if (line[0] == '#') continue;
    std::vector<double> p;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) {
      try {
        std::size_t pos = 0;
        p.push_back(std::stod(c, &pos));
        if (c.find_first_not_of(" \t", pos) != std::string::npos) fail("malformed number '" + c + "'");
      } catch (const std::invalid_argument&) {
        fail("malformed number '" + c + "'");
      } catch (const std::out_of_range&) {
        fail("number out of range '" + c + "'");
      }
    }
    if (p.size() != cloud.dim) fail("expected " + std::to_string(cloud.dim) + " coordinates");
    cloud.push(p);
  }
  if (!have_header) throw std::runtime_error("cloud is missing its header");
  return cloud;
}

}  // namespace zeroset
