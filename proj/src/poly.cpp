#include "zeroset/poly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace zeroset {

std::uint32_t total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

bool GradedLexLess::operator()(const Exponent& a, const Exponent& b) const {
  auto da = total_degree(a);
  auto db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
  MultiPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Exponent e(nvars, 0);
  e[index] = 1;
  MultiPoly p(nvars);
  p.add_term(e, Rational(1));
  return p;
}

MultiPoly MultiPoly::monomial(const Rational& c, Exponent e) {
  MultiPoly p(e.size());
  p.add_term(e, c);
  return p;
}

void MultiPoly::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("exponent length differs from nvars");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

int MultiPoly::min_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.begin()->first));
}

int MultiPoly::degree_in(std::size_t index) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e.at(index)));
  return d;
}

bool MultiPoly::is_constant() const { return degree() <= 0; }

bool MultiPoly::is_homogeneous() const { return degree() == min_degree(); }

MultiPoly MultiPoly::homogeneous_part(std::uint32_t d) const {
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) == d) out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("nvars mismatch in addition");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("nvars mismatch in subtraction");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("nvars mismatch in product");
  MultiPoly out(a.nvars_);
  Exponent e(a.nvars_);
  Rational prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      prod = ca * cb;
      out.add_term(e, prod);
    }
  }
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(nvars_, 1);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::derive(std::size_t index) const {
  if (index >= nvars_) throw std::out_of_range("derivative index out of range");
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponent d = e;
    d[index] -= 1;
    out.add_term(d, c * e[index]);
  }
  return out;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
  Rational sum = 0;
  Rational term;
  mpq_class power;
  for (const auto& [e, c] : terms_) {
    term = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      mpz_pow_ui(power.get_num_mpz_t(), point[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(power.get_den_mpz_t(), point[i].get_den_mpz_t(), e[i]);
      term *= power;
    }
    sum += term;
  }
  return sum;
}

double MultiPoly::evaluate(std::span<const double> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] != 0) term *= std::pow(point[i], static_cast<double>(e[i]));
    }
    sum += term;
  }
  return sum;
}

MultiPoly MultiPoly::substitute(std::span<const MultiPoly> subs) const {
  if (subs.size() != nvars_) throw std::invalid_argument("substitution arity mismatch");
  std::size_t nv = subs.empty() ? 0 : subs.front().nvars();
  for (const auto& s : subs) {
    if (s.nvars() != nv) throw std::invalid_argument("substitution rings differ");
  }
  // Cache powers of each substituted polynomial.
  std::vector<std::vector<MultiPoly>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) powers[i].push_back(constant(nv, 1));
  MultiPoly out(nv);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = constant(nv, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      while (powers[i].size() <= e[i]) powers[i].push_back(powers[i].back() * subs[i]);
      if (e[i] != 0) term = term * powers[i][e[i]];
    }
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::translate(std::span<const Rational> shift) const {
  if (shift.size() != nvars_) throw std::invalid_argument("shift has wrong dimension");
  std::vector<MultiPoly> subs;
  subs.reserve(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    subs.push_back(variable(nvars_, i) + constant(nvars_, shift[i]));
  }
  return substitute(subs);
}

MultiPoly MultiPoly::embed(std::size_t nvars, std::size_t offset) const {
  if (offset + nvars_ > nvars) throw std::invalid_argument("embedding does not fit");
  MultiPoly out(nvars);
  for (const auto& [e, c] : terms_) {
    Exponent f(nvars, 0);
    std::copy(e.begin(), e.end(), f.begin() + static_cast<std::ptrdiff_t>(offset));
    out.terms_.emplace(std::move(f), c);
  }
  return out;
}

double MultiPoly::abs_bound(std::span<const double> lo, std::span<const double> hi) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = std::abs(c.get_d());
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      double m = std::max(std::abs(lo[i]), std::abs(hi[i]));
      t *= std::pow(m, static_cast<double>(e[i]));
    }
    sum += t;
  }
  return sum;
}

std::string to_string(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    bool is_const = total_degree(e) == 0;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (mag != 1 || is_const) {
      os << format_rational(mag);
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars) : s_(text), nvars_(nvars) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at column " + std::to_string(pos_ + 1) +
                                ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  MultiPoly expr() {
    MultiPoly p = term();
    for (;;) {
      if (accept('+')) {
        p += term();
      } else if (accept('-')) {
        p -= term();
      } else {
        return p;
      }
    }
  }

  MultiPoly term() {
    MultiPoly p = unary();
    for (;;) {
      if (accept('*')) {
        p = p * unary();
      } else if (accept('/')) {
        Rational d(mpz_class(digits(), 10));
        if (d == 0) fail("division by zero");
        p *= Rational(1) / d;
      } else {
        return p;
      }
    }
  }

  MultiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (accept('^')) {
      std::string d = digits();
      base = base.pow(static_cast<unsigned>(std::stoul(d)));
    }
    return base;
  }

  MultiPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return MultiPoly::constant(nvars_, Rational(mpz_class(digits(), 10)));
    }
    if (c == 'x') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected variable index after 'x'");
      std::size_t idx = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (idx < 1 || idx > nvars_) fail("variable index out of range");
      return MultiPoly::variable(nvars_, idx - 1);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, std::size_t nvars) {
  return PolyParser(text, nvars).parse();
}

VectorPoly::VectorPoly(std::size_t nv, std::size_t rank)
    : nvars(nv), components(rank, MultiPoly(nv)) {}

VectorPoly::VectorPoly(std::vector<MultiPoly> comps) : components(std::move(comps)) {
  if (components.empty()) throw std::invalid_argument("VectorPoly needs at least one component");
  nvars = components.front().nvars();
  for (const auto& c : components) {
    if (c.nvars() != nvars) throw std::invalid_argument("VectorPoly components differ in nvars");
  }
}

bool VectorPoly::is_zero() const {
  return std::all_of(components.begin(), components.end(),
                     [](const MultiPoly& p) { return p.is_zero(); });
}

VectorPoly VectorPoly::derive(std::size_t index) const {
  VectorPoly out(nvars, rank());
  for (std::size_t i = 0; i < rank(); ++i) out.components[i] = components[i].derive(index);
  return out;
}

VectorPoly VectorPoly::translate(std::span<const Rational> shift) const {
  VectorPoly out(nvars, rank());
  for (std::size_t i = 0; i < rank(); ++i) out.components[i] = components[i].translate(shift);
  return out;
}

std::vector<double> VectorPoly::evaluate(std::span<const double> point) const {
  std::vector<double> out;
  out.reserve(rank());
  for (const auto& c : components) out.push_back(c.evaluate(point));
  return out;
}

std::vector<Rational> VectorPoly::evaluate(std::span<const Rational> point) const {
  std::vector<Rational> out;
  out.reserve(rank());
  for (const auto& c : components) out.push_back(c.evaluate(point));
  return out;
}

VectorPoly& VectorPoly::operator+=(const VectorPoly& o) {
  if (o.rank() != rank()) throw std::invalid_argument("rank mismatch");
  for (std::size_t i = 0; i < rank(); ++i) components[i] += o.components[i];
  return *this;
}

VectorPoly& VectorPoly::operator-=(const VectorPoly& o) {
  if (o.rank() != rank()) throw std::invalid_argument("rank mismatch");
  for (std::size_t i = 0; i < rank(); ++i) components[i] -= o.components[i];
  return *this;
}

VectorPoly operator*(const MultiPoly& f, const VectorPoly& v) {
  VectorPoly out(v.nvars, v.rank());
  for (std::size_t i = 0; i < v.rank(); ++i) out.components[i] = f * v.components[i];
  return out;
}

std::string to_string(const VectorPoly& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.rank(); ++i) {
    if (i) s += "; ";
    s += to_string(v.components[i]);
  }
  return s + ")";
}

HomogeneousPart lowest_homogeneous_part(const VectorPoly& p) {
  HomogeneousPart out{std::nullopt, VectorPoly(p.nvars, p.rank())};
  int k = -1;
  for (const auto& c : p.components) {
    int m = c.min_degree();
    if (m >= 0 && (k < 0 || m < k)) k = m;
  }
  if (k < 0) return out;
  out.order = static_cast<std::uint32_t>(k);
  for (std::size_t i = 0; i < p.rank(); ++i) {
    out.part.components[i] = p.components[i].homogeneous_part(static_cast<std::uint32_t>(k));
  }
  return out;
}

std::optional<std::uint32_t> vanishing_order(const VectorPoly& p,
                                             std::span<const Rational> point) {
  return lowest_homogeneous_part(p.translate(point)).order;
}

MultiPoly UnivariateView::reassemble() const {
  MultiPoly out(source_nvars);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    MultiPoly lifted(source_nvars);
    for (const auto& [e, c] : coeffs[j].terms()) {
      Exponent f;
      f.reserve(source_nvars);
      f.insert(f.end(), e.begin(), e.begin() + static_cast<std::ptrdiff_t>(axis));
      f.push_back(static_cast<std::uint32_t>(j));
      f.insert(f.end(), e.begin() + static_cast<std::ptrdiff_t>(axis), e.end());
      lifted.add_term(f, c);
    }
    out += lifted;
  }
  return out;
}

std::vector<Rational> UnivariateView::at(std::span<const Rational> rest) const {
  std::vector<Rational> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(c.evaluate(rest));
  return out;
}

UnivariateView univariate_view(const MultiPoly& p, std::size_t axis) {
  if (axis >= p.nvars()) throw std::out_of_range("axis out of range");
  UnivariateView v;
  v.axis = axis;
  v.source_nvars = p.nvars();
  std::size_t rest = p.nvars() - 1;
  int deg = std::max(p.degree_in(axis), 0);
  v.coeffs.assign(static_cast<std::size_t>(deg) + 1, MultiPoly(rest));
  for (const auto& [e, c] : p.terms()) {
    Exponent f;
    f.reserve(rest);
    f.insert(f.end(), e.begin(), e.begin() + static_cast<std::ptrdiff_t>(axis));
    f.insert(f.end(), e.begin() + static_cast<std::ptrdiff_t>(axis) + 1, e.end());
    v.coeffs[e[axis]].add_term(f, c);
  }
  return v;
}

MultiPoly determinant(const std::vector<std::vector<MultiPoly>>& m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(nvars, 1);
  if (n > 24) throw std::invalid_argument("determinant too large for minor expansion");
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("determinant of non-square matrix");
  }
  // partial[mask]: signed sum over injective assignments of the first
  // popcount(mask) rows onto the columns in mask.
  std::vector<std::optional<MultiPoly>> partial(std::size_t{1} << n);
  partial[0] = MultiPoly::constant(nvars, 1);
  for (std::size_t row = 0; row < n; ++row) {
    std::vector<std::optional<MultiPoly>> next(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < partial.size(); ++mask) {
      if (!partial[mask] || partial[mask]->is_zero()) continue;
      for (std::size_t col = 0; col < n; ++col) {
        if (mask & (std::size_t{1} << col)) continue;
        const MultiPoly& entry = m[row][col];
        if (entry.is_zero()) continue;
        // Inversions against earlier rows placed in larger columns.
        std::size_t larger = static_cast<std::size_t>(std::popcount(mask >> (col + 1)));
        MultiPoly contribution = *partial[mask] * entry;
        if (larger % 2 == 1) contribution = -contribution;
        auto& slot = next[mask | (std::size_t{1} << col)];
        if (slot) {
          *slot += contribution;
        } else {
          slot = std::move(contribution);
        }
      }
    }
    partial = std::move(next);
  }
  const auto& full = partial[(std::size_t{1} << n) - 1];
  return full ? *full : MultiPoly(nvars);
}

MultiPoly resultant(const UnivariateView& f, const UnivariateView& g) {
  if (f.axis != g.axis || f.source_nvars != g.source_nvars) {
    throw std::invalid_argument("resultant operands use different axes or rings");
  }
  if (f.coeffs.empty() || g.coeffs.empty() || f.leading().is_zero() || g.leading().is_zero()) {
    throw std::invalid_argument("resultant operand has zero leading coefficient");
  }
  const std::size_t nv = f.source_nvars - 1;
  const std::size_t m = static_cast<std::size_t>(f.degree());
  const std::size_t n = static_cast<std::size_t>(g.degree());
  if (m == 0 && n == 0) return MultiPoly::constant(nv, 1);
  const std::size_t size = m + n;
  std::vector<std::vector<MultiPoly>> syl(size, std::vector<MultiPoly>(size, MultiPoly(nv)));
  // Rows of g (m shifts) first, then rows of f (n shifts); coefficients are
  // laid out from the highest power down.
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j <= n; ++j) syl[r][r + j] = g.coeffs[n - j];
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j <= m; ++j) syl[m + r][r + j] = f.coeffs[m - j];
  }
  return determinant(syl, nv);
}

}  // namespace zeroset
