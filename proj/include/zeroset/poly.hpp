#pragma once

// Exact sparse multivariate polynomials over the rationals.
//
// Variables are addressed by zero-based index; the text form names them
// x1..xn. Terms are kept in graded-lex order (total degree first, then lex on
// the exponent vector), which is also the canonical printing order (highest
// first).

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zeroset/rational.hpp"

namespace zeroset {

using Exponent = std::vector<std::uint32_t>;

struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

std::uint32_t total_degree(const Exponent& e);

class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rational, GradedLexLess>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rational& c);
  static MultiPoly variable(std::size_t nvars, std::size_t index);
  static MultiPoly monomial(const Rational& c, Exponent e);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  // Adds c * x^e; drops the term if the result cancels.
  void add_term(const Exponent& e, const Rational& c);
  Rational coefficient(const Exponent& e) const;

  // -1 for the zero polynomial.
  int degree() const;
  // Minimal total degree of a nonzero term; -1 for the zero polynomial.
  int min_degree() const;
  // Highest power of variable `index` appearing; -1 for zero.
  int degree_in(std::size_t index) const;
  bool is_constant() const;
  bool is_homogeneous() const;
  // Terms of total degree exactly d.
  MultiPoly homogeneous_part(std::uint32_t d) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned e) const;

  // Exact partial derivative with respect to variable `index`.
  MultiPoly derive(std::size_t index) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  // Replaces variable i by subs[i]; every subs entry must share one nvars,
  // which becomes the nvars of the result.
  MultiPoly substitute(std::span<const MultiPoly> subs) const;
  // p(x + shift).
  MultiPoly translate(std::span<const Rational> shift) const;
  // Same polynomial viewed in more variables: old variable i becomes
  // variable i + offset of a ring with `nvars` variables.
  MultiPoly embed(std::size_t nvars, std::size_t offset) const;
  // Upper bound for sup |p| over the box prod [lo_i, hi_i].
  double abs_bound(std::span<const double> lo, std::span<const double> hi) const;

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

// Canonical text: highest graded-lex term first, coefficients as "p/q",
// variables x1..xn, e.g. "x1^2*x2 - 3/2*x2 + 1". Zero prints as "0".
std::string to_string(const MultiPoly& p);
// Parses the canonical text (and any reordering / spacing of it). Accepts
// "*" between factors, "^" for powers, integer or "p/q" coefficients.
MultiPoly parse_poly(std::string_view text, std::size_t nvars);

struct VectorPoly {
  std::size_t nvars = 0;
  std::vector<MultiPoly> components;

  VectorPoly() = default;
  VectorPoly(std::size_t nv, std::size_t rank);
  explicit VectorPoly(std::vector<MultiPoly> comps);

  std::size_t rank() const { return components.size(); }
  bool is_zero() const;
  VectorPoly derive(std::size_t index) const;
  VectorPoly translate(std::span<const Rational> shift) const;
  std::vector<double> evaluate(std::span<const double> point) const;
  std::vector<Rational> evaluate(std::span<const Rational> point) const;

  VectorPoly& operator+=(const VectorPoly& o);
  VectorPoly& operator-=(const VectorPoly& o);
  friend VectorPoly operator+(VectorPoly a, const VectorPoly& b) { return a += b; }
  friend VectorPoly operator-(VectorPoly a, const VectorPoly& b) { return a -= b; }
  friend VectorPoly operator*(const MultiPoly& f, const VectorPoly& v);
  friend bool operator==(const VectorPoly& a, const VectorPoly& b) {
    return a.nvars == b.nvars && a.components == b.components;
  }
};

std::string to_string(const VectorPoly& v);

// Lowest-degree homogeneous part. `order` is empty for the zero input
// (infinite order of vanishing), in which case `part` is identically zero.
struct HomogeneousPart {
  std::optional<std::uint32_t> order;
  VectorPoly part;
};

HomogeneousPart lowest_homogeneous_part(const VectorPoly& p);

// Order of vanishing at `point`; empty means infinite order.
std::optional<std::uint32_t> vanishing_order(const VectorPoly& p,
                                             std::span<const Rational> point);

// p viewed as a polynomial in x_axis with coefficients in the remaining
// variables (order preserved, axis removed).
struct UnivariateView {
  std::size_t axis = 0;
  std::size_t source_nvars = 0;
  std::vector<MultiPoly> coeffs;  // coeffs[j] multiplies x_axis^j

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const MultiPoly& leading() const { return coeffs.back(); }
  MultiPoly reassemble() const;
  // Coefficients after substituting the remaining variables.
  std::vector<Rational> at(std::span<const Rational> rest) const;
};

UnivariateView univariate_view(const MultiPoly& p, std::size_t axis);

// Sylvester resultant in the shared axis, oriented so that
// resultant(x - a, x - b) = b - a; equivalently the determinant of the
// Sylvester matrix with the rows of g placed above the rows of f.
// Two nonzero constants give 1. Throws std::invalid_argument if a leading
// coefficient is the zero polynomial or the axes differ.
MultiPoly resultant(const UnivariateView& f, const UnivariateView& g);

// Determinant of a square matrix of polynomials (division-free minor
// expansion, exact).
MultiPoly determinant(const std::vector<std::vector<MultiPoly>>& m,
                      std::size_t nvars);

}  // namespace zeroset
