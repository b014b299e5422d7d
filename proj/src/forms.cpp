#include "zeroset/forms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace zeroset {

unsigned grade(IndexSet s) { return static_cast<unsigned>(std::popcount(s)); }

std::vector<IndexSet> form_basis(std::size_t n) {
  if (n > 20) throw std::invalid_argument("dimension too large for the form basis");
  std::vector<IndexSet> out;
  out.reserve(std::size_t{1} << n);
  for (IndexSet s = 0; s < (IndexSet{1} << n); ++s) out.push_back(s);
  // Grade first, then lexicographic on the sorted index list.
  std::sort(out.begin(), out.end(), [](IndexSet a, IndexSet b) {
    if (grade(a) != grade(b)) return grade(a) < grade(b);
    IndexSet diff = a ^ b;
    IndexSet low = diff & (~diff + 1);
    return (a & low) != 0;
  });
  return out;
}

std::string basis_name(IndexSet s) {
  if (s == 0) return "1";
  std::string out;
  for (unsigned j = 0; j < 32; ++j) {
    if (!(s >> j & 1U)) continue;
    if (!out.empty()) out += "^";
    out += "dx" + std::to_string(j + 1);
  }
  return out;
}

int wedge_sign(std::size_t j, IndexSet s) {
  if (s >> j & 1U) return 0;
  IndexSet below = s & ((IndexSet{1} << j) - 1);
  return std::popcount(below) % 2 == 0 ? 1 : -1;
}

int interior_sign(std::size_t j, IndexSet s) {
  if (!(s >> j & 1U)) return 0;
  IndexSet below = s & ((IndexSet{1} << j) - 1);
  return std::popcount(below) % 2 == 0 ? 1 : -1;
}

void ExtForm::add(IndexSet s, const MultiPoly& c) {
  if (c.is_zero()) return;
  auto it = coeffs.find(s);
  if (it == coeffs.end()) {
    coeffs.emplace(s, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coeffs.erase(it);
}

MultiPoly ExtForm::coefficient(IndexSet s) const {
  auto it = coeffs.find(s);
  return it == coeffs.end() ? MultiPoly(n) : it->second;
}

ExtForm& ExtForm::operator+=(const ExtForm& o) {
  if (o.n != n) throw std::invalid_argument("form dimension mismatch");
  for (const auto& [s, c] : o.coeffs) add(s, c);
  return *this;
}

ExtForm& ExtForm::operator-=(const ExtForm& o) {
  if (o.n != n) throw std::invalid_argument("form dimension mismatch");
  for (const auto& [s, c] : o.coeffs) add(s, -c);
  return *this;
}

std::string to_string(const ExtForm& w) {
  if (w.is_zero()) return "0";
  std::string out;
  for (IndexSet s : form_basis(w.n)) {
    auto it = w.coeffs.find(s);
    if (it == w.coeffs.end()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(it->second) + ")";
    if (s != 0) out += " " + basis_name(s);
  }
  return out;
}

ExtForm d(const ExtForm& w) {
  ExtForm out(w.n);
  for (const auto& [s, c] : w.coeffs) {
    for (std::size_t j = 0; j < w.n; ++j) {
      int sign = wedge_sign(j, s);
      if (sign == 0) continue;
      MultiPoly dj = c.derive(j);
      if (dj.is_zero()) continue;
      out.add(s | (IndexSet{1} << j), dj * Rational(sign));
    }
  }
  return out;
}

ExtForm delta_flat(const ExtForm& w) {
  ExtForm out(w.n);
  for (const auto& [s, c] : w.coeffs) {
    for (std::size_t j = 0; j < w.n; ++j) {
      int sign = interior_sign(j, s);
      if (sign == 0) continue;
      MultiPoly dj = c.derive(j);
      if (dj.is_zero()) continue;
      out.add(s & ~(IndexSet{1} << j), dj * Rational(-sign));
    }
  }
  return out;
}

ExtForm apply_laplacian_coefficientwise(const ExtForm& w) {
  ExtForm out(w.n);
  for (const auto& [s, c] : w.coeffs) {
    MultiPoly lap(w.n);
    for (std::size_t j = 0; j < w.n; ++j) lap -= c.derive(j).derive(j);
    out.add(s, lap);
  }
  return out;
}

VectorPoly flatten(const ExtForm& w) {
  auto basis = form_basis(w.n);
  VectorPoly v(w.n, basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) v.components[i] = w.coefficient(basis[i]);
  return v;
}

ExtForm unflatten(const VectorPoly& v, std::size_t n) {
  auto basis = form_basis(n);
  if (v.rank() != basis.size()) throw std::invalid_argument("vector rank is not 2^n");
  ExtForm w(n);
  for (std::size_t i = 0; i < basis.size(); ++i) w.add(basis[i], v.components[i]);
  return w;
}

SymbolMap hodge_symbol(std::size_t n) {
  if (n == 0) throw std::invalid_argument("hodge_symbol needs n >= 1");
  auto basis = form_basis(n);
  const std::size_t N = basis.size();
  std::vector<std::size_t> position(N);
  for (std::size_t i = 0; i < N; ++i) position[basis[i]] = i;
  std::vector<RationalMatrix> A;
  for (std::size_t j = 0; j < n; ++j) {
    RationalMatrix m(N, N);
    for (std::size_t col = 0; col < N; ++col) {
      IndexSet s = basis[col];
      if (int w = wedge_sign(j, s)) m(position[s | (IndexSet{1} << j)], col) += w;
      if (int i = interior_sign(j, s)) m(position[s & ~(IndexSet{1} << j)], col) -= i;
    }
    A.push_back(std::move(m));
  }
  return SymbolMap(std::move(A));
}

std::map<IndexSet, double> EvalForm::evaluate(std::span<const double> x) const {
  std::map<IndexSet, double> out;
  for (const auto& [s, c] : coeffs) out[s] = c.value(x);
  return out;
}

std::map<IndexSet, double> d_at(const EvalForm& w, std::span<const double> x) {
  std::map<IndexSet, double> out;
  std::vector<double> g(w.n);
  for (const auto& [s, c] : w.coeffs) {
    if (!c.gradient) throw std::invalid_argument("coefficient has no gradient");
    c.gradient(x, g);
    for (std::size_t j = 0; j < w.n; ++j) {
      int sign = wedge_sign(j, s);
      if (sign != 0) out[s | (IndexSet{1} << j)] += sign * g[j];
    }
  }
  return out;
}

std::map<IndexSet, double> d_at_finite_difference(const EvalForm& w, std::span<const double> x,
                                                  double step) {
  std::map<IndexSet, double> out;
  std::vector<double> p(x.begin(), x.end());
  for (const auto& [s, c] : w.coeffs) {
    for (std::size_t j = 0; j < w.n; ++j) {
      int sign = wedge_sign(j, s);
      if (sign == 0) continue;
      p[j] = x[j] + step;
      double up = c.value(p);
      p[j] = x[j] - step;
      double down = c.value(p);
      p[j] = x[j];
      out[s | (IndexSet{1} << j)] += sign * (up - down) / (2.0 * step);
    }
  }
  return out;
}

// Closed sets.

namespace {

std::vector<Interval> cantor_intervals(const Rational& ratio, unsigned level, double lo, double hi) {
  std::vector<Interval> cur{{lo, hi}};
  const double r = ratio.get_d();
  for (unsigned k = 0; k < level; ++k) {
    std::vector<Interval> next;
    next.reserve(cur.size() * 2);
    for (const auto& iv : cur) {
      double len = (iv.hi - iv.lo) * r;
      next.push_back({iv.lo, iv.lo + len});
      next.push_back({iv.hi - len, iv.hi});
    }
    cur = std::move(next);
  }
  return cur;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

ClosedSet ClosedSet::points(std::vector<std::vector<double>> pts) {
  if (pts.empty()) throw std::invalid_argument("point set must be nonempty");
  ClosedSet s;
  s.kind_ = Kind::finite_points;
  s.dim_ = pts.front().size();
  for (const auto& p : pts) {
    if (p.size() != s.dim_ || s.dim_ == 0) throw std::invalid_argument("points must share one dimension");
  }
  s.points_ = std::move(pts);
  return s;
}

ClosedSet ClosedSet::intervals(std::vector<Interval> parts) {
  if (parts.empty()) throw std::invalid_argument("interval union must be nonempty");
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const auto& iv : parts) {
    if (!(iv.lo <= iv.hi)) throw std::invalid_argument("interval with lo > hi");
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  ClosedSet s;
  s.kind_ = Kind::interval_union;
  s.dim_ = 1;
  s.intervals_ = std::move(merged);
  return s;
}

ClosedSet ClosedSet::cantor(const Rational& ratio, unsigned level, double lo, double hi) {
  if (ratio <= 0 || ratio >= Rational(1, 2)) throw std::invalid_argument("cantor ratio must lie in (0, 1/2)");
  if (!(lo < hi)) throw std::invalid_argument("cantor base interval is empty");
  if (level > 24) throw std::invalid_argument("cantor level too large");
  ClosedSet s;
  s.kind_ = Kind::cantor;
  s.dim_ = 1;
  s.ratio_ = ratio;
  s.level_ = level;
  s.intervals_ = cantor_intervals(ratio, level, lo, hi);
  return s;
}

ClosedSet ClosedSet::product(std::vector<ClosedSet> factors) {
  if (factors.empty()) throw std::invalid_argument("product needs factors");
  ClosedSet s;
  s.kind_ = Kind::product;
  s.dim_ = 0;
  for (const auto& f : factors) s.dim_ += f.dim();
  s.factors_ = std::move(factors);
  return s;
}

double ClosedSet::distance(std::span<const double> z) const { return distance_in(z, false); }

double ClosedSet::chebyshev_distance(std::span<const double> z) const { return distance_in(z, true); }

double ClosedSet::distance_in(std::span<const double> z, bool sup_norm) const {
  if (z.size() != dim_) throw std::invalid_argument("point has wrong dimension");
  switch (kind_) {
    case Kind::finite_points: {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : points_) {
        double acc = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
          double t = std::abs(z[i] - p[i]);
          acc = sup_norm ? std::max(acc, t) : acc + t * t;
        }
        best = std::min(best, sup_norm ? acc : std::sqrt(acc));
      }
      return best;
    }
    case Kind::interval_union:
    case Kind::cantor: {
      double x = z[0];
      auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                                 [](double v, const Interval& iv) { return v < iv.lo; });
      double best = std::numeric_limits<double>::infinity();
      if (it != intervals_.end()) best = it->lo - x;
      if (it != intervals_.begin()) {
        const Interval& prev = *(it - 1);
        best = std::min(best, x <= prev.hi ? 0.0 : x - prev.hi);
      }
      return best;
    }
    case Kind::product: {
      double acc = 0.0;
      std::size_t off = 0;
      for (const auto& f : factors_) {
        double dd = f.distance_in(z.subspan(off, f.dim()), sup_norm);
        acc = sup_norm ? std::max(acc, dd) : acc + dd * dd;
        off += f.dim();
      }
      return sup_norm ? acc : std::sqrt(acc);
    }
  }
  return 0.0;
}

bool ClosedSet::contains(std::span<const double> z, double tol) const { return distance(z) <= tol; }

double ClosedSet::predicted_dimension() const {
  switch (kind_) {
    case Kind::finite_points: return 0.0;
    case Kind::interval_union: return 1.0;
    case Kind::cantor: return std::log(2.0) / std::log(1.0 / ratio_.get_d());
    case Kind::product: {
      double s = 0.0;
      for (const auto& f : factors_) s += f.predicted_dimension();
      return s;
    }
  }
  return 0.0;
}

std::vector<std::vector<double>> ClosedSet::samples() const {
  switch (kind_) {
    case Kind::finite_points: return points_;
    case Kind::interval_union:
    case Kind::cantor: {
      std::vector<std::vector<double>> out;
      for (const auto& iv : intervals_) {
        out.push_back({iv.lo});
        out.push_back({0.5 * (iv.lo + iv.hi)});
        out.push_back({iv.hi});
      }
      return out;
    }
    case Kind::product: {
      std::vector<std::vector<double>> out{{}};
      for (const auto& f : factors_) {
        std::vector<std::vector<double>> next;
        for (const auto& head : out) {
          for (const auto& tail : f.samples()) {
            auto p = head;
            p.insert(p.end(), tail.begin(), tail.end());
            next.push_back(std::move(p));
          }
        }
        out = std::move(next);
      }
      return out;
    }
  }
  return {};
}

std::string ClosedSet::describe() const {
  switch (kind_) {
    case Kind::finite_points: {
      std::string s = "points{";
      for (std::size_t i = 0; i < points_.size(); ++i) {
        if (i) s += ", ";
        s += "(";
        for (std::size_t j = 0; j < dim_; ++j) s += (j ? ", " : "") + fmt(points_[i][j]);
        s += ")";
      }
      return s + "}";
    }
    case Kind::interval_union: {
      std::string s;
      for (std::size_t i = 0; i < intervals_.size(); ++i) {
        if (i) s += " u ";
        s += "[" + fmt(intervals_[i].lo) + ", " + fmt(intervals_[i].hi) + "]";
      }
      return s;
    }
    case Kind::cantor:
      return "cantor(" + format_rational(ratio_) + ", level " + std::to_string(level_) + ") on [" +
             fmt(intervals_.front().lo) + ", " + fmt(intervals_.back().hi) + "]";
    case Kind::product: {
      std::string s;
      for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? " x " : "") + factors_[i].describe();
      return s;
    }
  }
  return {};
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string_view::npos) return {};
  std::size_t b = s.find_last_not_of(" \t");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double number(const std::string& s) { return parse_rational(s).get_d(); }

}  // namespace

ClosedSet parse_closed_set(std::string_view text) {
  std::string t = trim(text);
  if (t.rfind("product(", 0) == 0) {
    if (t.back() != ')') throw std::invalid_argument("product(...) is missing ')'");
    std::string inner = t.substr(8, t.size() - 9);
    std::vector<ClosedSet> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= inner.size(); ++i) {
      if (i == inner.size() || (inner[i] == ';' && depth == 0)) {
        parts.push_back(parse_closed_set(std::string_view(inner).substr(start, i - start)));
        start = i + 1;
      } else if (inner[i] == '(') {
        ++depth;
      } else if (inner[i] == ')') {
        --depth;
      }
    }
    return ClosedSet::product(std::move(parts));
  }
  std::size_t colon = t.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("closed set needs 'kind:args': " + t);
  std::string kind = t.substr(0, colon);
  std::string args = t.substr(colon + 1);
  if (kind == "points") {
    std::vector<std::vector<double>> pts;
    bool tuples = args.find('|') != std::string::npos || args.find(' ') != std::string::npos;
    if (tuples) {
      for (const auto& tuple : split(args, '|')) {
        std::vector<double> p;
        std::istringstream is(tuple);
        std::string tok;
        while (is >> tok) p.push_back(number(tok));
        pts.push_back(std::move(p));
      }
    } else {
      for (const auto& tok : split(args, ',')) pts.push_back({number(tok)});
    }
    return ClosedSet::points(std::move(pts));
  }
  if (kind == "intervals") {
    std::vector<Interval> parts;
    for (const auto& piece : split(args, ',')) {
      auto ends = split(piece, ':');
      if (ends.size() != 2) throw std::invalid_argument("interval must be 'lo:hi': " + piece);
      parts.push_back({number(ends[0]), number(ends[1])});
    }
    return ClosedSet::intervals(std::move(parts));
  }
  if (kind == "cantor") {
    auto f = split(args, ':');
    if (f.size() != 2 && f.size() != 4) {
      throw std::invalid_argument("cantor expects 'ratio:level' or 'ratio:level:lo:hi'");
    }
    unsigned long level = 0;
    try {
      std::size_t pos = 0;
      level = std::stoul(f[1], &pos);
      if (pos != f[1].size()) throw std::invalid_argument("level");
    } catch (const std::exception&) {
      throw std::invalid_argument("cantor level must be a nonnegative integer");
    }
    if (f.size() == 4) {
      return ClosedSet::cantor(parse_rational(f[0]), static_cast<unsigned>(level), number(f[2]), number(f[3]));
    }
    return ClosedSet::cantor(parse_rational(f[0]), static_cast<unsigned>(level));
  }
  throw std::invalid_argument("unknown closed set kind '" + kind + "'");
}

// Vanishing functions.

namespace {

struct GapTerm {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// steepness * g^2 / (g + eps) with g >= 0 and its derivatives in z.
GapTerm profile(double g, double g1, double g2, double eps, double kappa) {
  double s = g + eps;
  double phi = g * g / s;
  double dphi = g * (g + 2.0 * eps) / (s * s);
  double ddphi = 2.0 * eps * eps / (s * s * s);
  return {kappa * phi, kappa * dphi * g1, kappa * (ddphi * g1 * g1 + dphi * g2)};
}

// One-dimensional vanishing function of an interval union and its derivatives.
GapTerm gap_sum(const std::vector<Interval>& parts, double z, double eps, double kappa) {
  // Only the gap containing z contributes.
  auto it = std::upper_bound(parts.begin(), parts.end(), z,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == parts.begin()) {
    double g = parts.front().lo - z;
    return profile(g, -1.0, 0.0, eps, kappa);
  }
  const Interval& prev = *(it - 1);
  if (z <= prev.hi) return {};
  if (it == parts.end()) {
    double g = z - prev.hi;
    return profile(g, 1.0, 0.0, eps, kappa);
  }
  double a = prev.hi;
  double b = it->lo;
  double len = b - a;
  double g = (z - a) * (b - z) / len;
  double g1 = (a + b - 2.0 * z) / len;
  double g2 = -2.0 / len;
  return profile(g, g1, g2, eps, kappa);
}

double min_gap(const std::vector<Interval>& parts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) best = std::min(best, parts[i + 1].lo - parts[i].hi);
  return best;
}

void check_kind(const ClosedSet& s) {
  if (s.kind() == ClosedSet::Kind::product) {
    for (const auto& f : s.factors()) {
      if (f.kind() == ClosedSet::Kind::product) throw std::invalid_argument("nested products are not supported");
      check_kind(f);
    }
  }
}

// Points: prod_i |z - a_i|^2 and derivatives.
double points_value(const ClosedSet& s, std::span<const double> z) {
  double v = 1.0;
  for (const auto& a : s.point_list()) {
    double sq = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) sq += (z[i] - a[i]) * (z[i] - a[i]);
    v *= sq;
  }
  return v;
}

void points_derivs(const ClosedSet& s, std::span<const double> z, std::span<double> grad,
                   std::span<double> hess) {
  const std::size_t m = z.size();
  const auto& pts = s.point_list();
  const std::size_t k = pts.size();
  std::vector<double> q(k);
  for (std::size_t a = 0; a < k; ++a) {
    q[a] = 0.0;
    for (std::size_t i = 0; i < m; ++i) q[a] += (z[i] - pts[a][i]) * (z[i] - pts[a][i]);
  }
  auto prod_except = [&](std::size_t a, std::size_t b) {
    double p = 1.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (c != a && c != b) p *= q[c];
    }
    return p;
  };
  std::fill(grad.begin(), grad.end(), 0.0);
  if (!hess.empty()) std::fill(hess.begin(), hess.end(), 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    double pa = prod_except(a, a);
    for (std::size_t i = 0; i < m; ++i) grad[i] += 2.0 * (z[i] - pts[a][i]) * pa;
    if (hess.empty()) continue;
    for (std::size_t i = 0; i < m; ++i) hess[i * m + i] += 2.0 * pa;
    for (std::size_t b = 0; b < k; ++b) {
      if (b == a) continue;
      double pab = prod_except(a, b);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          hess[i * m + j] += 4.0 * (z[i] - pts[a][i]) * (z[j] - pts[b][j]) * pab;
        }
      }
    }
  }
}

// Bound for |z - a| over a box.
double max_dist(const std::vector<double>& a, std::span<const double> lo, std::span<const double> hi) {
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double e = std::max(std::abs(lo[i] - a[i]), std::abs(hi[i] - a[i]));
    sq += e * e;
  }
  return std::sqrt(sq);
}

}  // namespace

VanishingFunction::VanishingFunction(ClosedSet set, VanishingOptions opts)
    : set_(std::move(set)), opts_(opts) {
  if (!(opts_.edge_scale > 0.0) || !(opts_.steepness > 0.0)) {
    throw std::invalid_argument("vanishing function options must be positive");
  }
  check_kind(set_);
}

namespace {

struct FactorEval {
  double value;
  std::vector<double> grad;
  std::vector<double> hess;
};

FactorEval eval_factor(const ClosedSet& s, std::span<const double> z, const VanishingOptions& o,
                       bool want_hess) {
  const std::size_t m = s.dim();
  FactorEval r{0.0, std::vector<double>(m, 0.0), std::vector<double>(want_hess ? m * m : 0, 0.0)};
  if (s.kind() == ClosedSet::Kind::finite_points) {
    r.value = points_value(s, z);
    points_derivs(s, z, r.grad, r.hess);
    return r;
  }
  GapTerm g = gap_sum(s.interval_list(), z[0], o.edge_scale, o.steepness);
  r.value = g.value;
  r.grad[0] = g.d1;
  if (want_hess) r.hess[0] = g.d2;
  return r;
}

template <class Fn>
void for_each_factor(const ClosedSet& s, Fn&& fn) {
  if (s.kind() != ClosedSet::Kind::product) {
    fn(s, std::size_t{0});
    return;
  }
  std::size_t off = 0;
  for (const auto& f : s.factors()) {
    fn(f, off);
    off += f.dim();
  }
}

}  // namespace

double VanishingFunction::value(std::span<const double> z) const {
  if (z.size() != dim()) throw std::invalid_argument("point has wrong dimension");
  double v = 0.0;
  for_each_factor(set_, [&](const ClosedSet& f, std::size_t off) {
    v += eval_factor(f, z.subspan(off, f.dim()), opts_, false).value;
  });
  return v;
}

void VanishingFunction::gradient(std::span<const double> z, std::span<double> out) const {
  if (z.size() != dim() || out.size() != dim()) throw std::invalid_argument("wrong dimension");
  for_each_factor(set_, [&](const ClosedSet& f, std::size_t off) {
    auto e = eval_factor(f, z.subspan(off, f.dim()), opts_, false);
    for (std::size_t i = 0; i < f.dim(); ++i) out[off + i] = e.grad[i];
  });
}

void VanishingFunction::hessian(std::span<const double> z, std::span<double> out) const {
  const std::size_t m = dim();
  if (z.size() != m || out.size() != m * m) throw std::invalid_argument("wrong dimension");
  std::fill(out.begin(), out.end(), 0.0);
  for_each_factor(set_, [&](const ClosedSet& f, std::size_t off) {
    auto e = eval_factor(f, z.subspan(off, f.dim()), opts_, true);
    for (std::size_t i = 0; i < f.dim(); ++i) {
      for (std::size_t j = 0; j < f.dim(); ++j) out[(off + i) * m + off + j] = e.hess[i * f.dim() + j];
    }
  });
}

double VanishingFunction::gradient_bound(std::span<const double> lo, std::span<const double> hi) const {
  double sq = 0.0;
  for_each_factor(set_, [&](const ClosedSet& f, std::size_t off) {
    double b = 0.0;
    if (f.kind() == ClosedSet::Kind::finite_points) {
      // |grad prod q_a| <= sum_a 2|z - a| prod_{c != a} |z - c|^2
      const auto& pts = f.point_list();
      auto slo = lo.subspan(off, f.dim());
      auto shi = hi.subspan(off, f.dim());
      std::vector<double> dmax;
      for (const auto& p : pts) dmax.push_back(max_dist(p, slo, shi));
      for (std::size_t a = 0; a < pts.size(); ++a) {
        double t = 2.0 * dmax[a];
        for (std::size_t c = 0; c < pts.size(); ++c) {
          if (c != a) t *= dmax[c] * dmax[c];
        }
        b += t;
      }
    } else {
      // |g'| <= 1 for every gap profile restricted to its gap.
      b = opts_.steepness;
    }
    sq += b * b;
  });
  return std::sqrt(sq);
}

double VanishingFunction::hessian_bound(std::span<const double> lo, std::span<const double> hi) const {
  double worst = 0.0;
  for_each_factor(set_, [&](const ClosedSet& f, std::size_t off) {
    double b = 0.0;
    if (f.kind() == ClosedSet::Kind::finite_points) {
      const auto& pts = f.point_list();
      auto slo = lo.subspan(off, f.dim());
      auto shi = hi.subspan(off, f.dim());
      std::vector<double> dmax;
      for (const auto& p : pts) dmax.push_back(max_dist(p, slo, shi));
      for (std::size_t a = 0; a < pts.size(); ++a) {
        double t = 2.0;
        for (std::size_t c = 0; c < pts.size(); ++c) {
          if (c != a) t *= dmax[c] * dmax[c];
        }
        b += t;
        for (std::size_t c = 0; c < pts.size(); ++c) {
          if (c == a) continue;
          double u = 4.0 * dmax[a] * dmax[c];
          for (std::size_t e = 0; e < pts.size(); ++e) {
            if (e != a && e != c) u *= dmax[e] * dmax[e];
          }
          b += u;
        }
      }
    } else {
      // |phi''| g'^2 + |phi'| |g''| <= 2/eps + 2/len over finite gaps.
      double len = min_gap(f.interval_list());
      b = opts_.steepness * (2.0 / opts_.edge_scale + (std::isfinite(len) ? 2.0 / len : 0.0));
    }
    worst = std::max(worst, b);
  });
  return worst;
}

VanishingFunction smooth_vanishing_function(const ClosedSet& set, VanishingOptions opts) {
  return VanishingFunction(set, opts);
}

// Wild example.

FieldEvaluator WildExample::joint_field() const {
  FieldEvaluator f;
  f.input_dim = n;
  f.output_dim = 4 + (n - 2);
  auto self = std::make_shared<const WildExample>(*this);
  f.value = [self](std::span<const double> p, std::span<double> out) {
    const std::size_t m = self->n - 2;
    double x = p[0];
    double y = p[1];
    auto z = p.subspan(2, m);
    double F = self->F.value(z);
    std::vector<double> g(m);
    self->F.gradient(z, g);
    out[0] = y;
    out[1] = x;
    out[2] = y - F;
    out[3] = x;
    for (std::size_t i = 0; i < m; ++i) out[4 + i] = -x * g[i];
  };
  f.lipschitz = [self](const Box& b, std::span<double> L) {
    const std::size_t m = self->n - 2;
    std::span<const double> zlo(b.lo.data() + 2, m);
    std::span<const double> zhi(b.hi.data() + 2, m);
    double gb = self->F.gradient_bound(zlo, zhi);
    double hb = self->F.hessian_bound(zlo, zhi);
    double xmax = std::max(std::abs(b.lo[0]), std::abs(b.hi[0]));
    L[0] = 1.0;
    L[1] = 1.0;
    L[2] = std::sqrt(1.0 + gb * gb);
    L[3] = 1.0;
    // grad(-x dF/dz_i) = (-dF/dz_i, 0, -x d2F/dz_i dz)
    for (std::size_t i = 0; i < m; ++i) L[4 + i] = std::sqrt(gb * gb + xmax * xmax * hb * hb);
  };
  return f;
}

double WildExample::predicted_gap(std::span<const double> p) const {
  return std::abs(p[0]) + std::abs(p[1]) + set.distance(p.subspan(2, n - 2));
}

double WildExample::distance_to_predicted(std::span<const double> p) const {
  double dz = set.distance(p.subspan(2, n - 2));
  return std::sqrt(p[0] * p[0] + p[1] * p[1] + dz * dz);
}

double WildExample::chebyshev_distance_to_predicted(std::span<const double> p) const {
  return std::max({std::abs(p[0]), std::abs(p[1]), set.chebyshev_distance(p.subspan(2, n - 2))});
}

std::vector<std::vector<double>> WildExample::predicted_samples() const {
  std::vector<std::vector<double>> out;
  for (const auto& z : set.samples()) {
    std::vector<double> p{0.0, 0.0};
    p.insert(p.end(), z.begin(), z.end());
    out.push_back(std::move(p));
  }
  return out;
}

WildExample build_wild(const ClosedSet& set, std::size_t n, VanishingOptions opts) {
  if (n < 3) throw std::invalid_argument("wild example needs n >= 3");
  if (set.dim() != n - 2) throw std::invalid_argument("closed set must live in R^(n-2)");
  WildExample w{n, set, VanishingFunction(set, opts), ExtForm(n), EvalForm{}};
  w.phi1.add(IndexSet{1}, MultiPoly::variable(n, 1));
  w.phi1.add(IndexSet{2}, MultiPoly::variable(n, 0));
  w.phi2.n = n;
  // The closures capture a shared copy of F so the form stays valid on its own.
  auto F = std::make_shared<VanishingFunction>(set, opts);
  const std::size_t m = n - 2;
  w.phi2.coeffs[IndexSet{1}] = CoefficientField{
      [F, m](std::span<const double> p) { return p[1] - F->value(p.subspan(2, m)); },
      [F, m](std::span<const double> p, std::span<double> g) {
        std::fill(g.begin(), g.end(), 0.0);
        g[1] = 1.0;
        std::vector<double> gz(m);
        F->gradient(p.subspan(2, m), gz);
        for (std::size_t i = 0; i < m; ++i) g[2 + i] = -gz[i];
      }};
  w.phi2.coeffs[IndexSet{2}] = CoefficientField{
      [](std::span<const double> p) { return p[0]; },
      [](std::span<const double>, std::span<double> g) {
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = 1.0;
      }};
  for (std::size_t i = 0; i < m; ++i) {
    w.phi2.coeffs[IndexSet{1} << (2 + i)] = CoefficientField{
        [F, m, i](std::span<const double> p) {
          std::vector<double> gz(m);
          F->gradient(p.subspan(2, m), gz);
          return -p[0] * gz[i];
        },
        [F, m, i](std::span<const double> p, std::span<double> g) {
          std::vector<double> gz(m);
          std::vector<double> hz(m * m);
          F->gradient(p.subspan(2, m), gz);
          F->hessian(p.subspan(2, m), hz);
          std::fill(g.begin(), g.end(), 0.0);
          g[0] = -gz[i];
          for (std::size_t j = 0; j < m; ++j) g[2 + j] = -p[0] * hz[i * m + j];
        }};
  }
  return w;
}

HarmonicReport harmonic_counterexample(std::size_t n, std::size_t p) {
  if (p < 1 || p > n) throw std::invalid_argument("need 1 <= p <= n");
  HarmonicReport r;
  r.omega = ExtForm(n);
  r.omega.add((IndexSet{1} << p) - 1, MultiPoly::variable(n, 0));
  r.d_omega = d(r.omega);
  r.delta_omega = delta_flat(r.omega);
  r.laplacian_omega = d(r.delta_omega) + delta_flat(r.d_omega);
  r.closed = r.d_omega.is_zero();
  r.coclosed = r.delta_omega.is_zero();
  r.harmonic = r.laplacian_omega.is_zero();
  r.zero_set = "x1 = 0";
  r.codimension = 1;
  return r;
}

}  // namespace zeroset
