#pragma once

// Exterior calculus on flat R^n with polynomial or evaluator coefficients,
// the Hodge-Dirac operator d + delta, and the wild zero set construction.
//
// A basis form dx_I is stored as a bitmask I (bit j <-> dx_{j+1}). The fixed
// basis orders index sets by grade, then lexicographically.
//
// Sign convention: delta = -sum_j iota(e_j) d/dx_j, so d + delta has symbol
// A_j = e_j ^ (.) - iota(e_j) and (d + delta)^2 = -sum_j d^2/dx_j^2 on every
// coefficient.

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zeroset/measure.hpp"
#include "zeroset/operator.hpp"
#include "zeroset/poly.hpp"

namespace zeroset {

using IndexSet = std::uint32_t;

unsigned grade(IndexSet s);
std::vector<IndexSet> form_basis(std::size_t n);
std::string basis_name(IndexSet s);  // "1", "dx1", "dx1^dx3", ...

// e_j ^ dx_I = sign * dx_{I+j}; sign 0 when j is already in I.
int wedge_sign(std::size_t j, IndexSet s);
// iota(e_j) dx_I = sign * dx_{I-j}; sign 0 when j is not in I.
int interior_sign(std::size_t j, IndexSet s);

struct ExtForm {
  std::size_t n = 0;
  std::map<IndexSet, MultiPoly> coeffs;  // zero coefficients are not stored

  ExtForm() = default;
  explicit ExtForm(std::size_t dim) : n(dim) {}

  void add(IndexSet s, const MultiPoly& c);
  MultiPoly coefficient(IndexSet s) const;
  bool is_zero() const { return coeffs.empty(); }

  ExtForm& operator+=(const ExtForm& o);
  ExtForm& operator-=(const ExtForm& o);
  friend ExtForm operator+(ExtForm a, const ExtForm& b) { return a += b; }
  friend ExtForm operator-(ExtForm a, const ExtForm& b) { return a -= b; }
  friend bool operator==(const ExtForm& a, const ExtForm& b) {
    return a.n == b.n && a.coeffs == b.coeffs;
  }
};

std::string to_string(const ExtForm& w);

ExtForm d(const ExtForm& w);
ExtForm delta_flat(const ExtForm& w);
ExtForm apply_laplacian_coefficientwise(const ExtForm& w);  // -sum d^2/dx_j^2

// Coordinates in the fixed basis (rank 2^n).
VectorPoly flatten(const ExtForm& w);
ExtForm unflatten(const VectorPoly& v, std::size_t n);

// Symbol of d + delta on the full exterior algebra, rank 2^n.
SymbolMap hodge_symbol(std::size_t n);

// Coefficient given by a value and an analytic gradient.
struct CoefficientField {
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
};

struct EvalForm {
  std::size_t n = 0;
  std::map<IndexSet, CoefficientField> coeffs;

  std::map<IndexSet, double> evaluate(std::span<const double> x) const;
};

// Exterior derivative at a point from the analytic gradients.
std::map<IndexSet, double> d_at(const EvalForm& w, std::span<const double> x);
// Same, with central differences of the coefficient values.
std::map<IndexSet, double> d_at_finite_difference(const EvalForm& w, std::span<const double> x,
                                                  double step = 1e-5);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Closed subset of R^m: a finite point set, a finite union of closed
// intervals, a level-k Cantor iterate, or a product of these.
class ClosedSet {
 public:
  enum class Kind { finite_points, interval_union, cantor, product };

  static ClosedSet points(std::vector<std::vector<double>> pts);
  static ClosedSet intervals(std::vector<Interval> parts);
  static ClosedSet cantor(const Rational& ratio, unsigned level, double lo = 0.0, double hi = 1.0);
  static ClosedSet product(std::vector<ClosedSet> factors);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::vector<double>>& point_list() const { return points_; }
  // Retained intervals for the 1-dimensional kinds, sorted and disjoint.
  const std::vector<Interval>& interval_list() const { return intervals_; }
  const std::vector<ClosedSet>& factors() const { return factors_; }
  const Rational& ratio() const { return ratio_; }
  unsigned level() const { return level_; }

  double distance(std::span<const double> z) const;
  // Distance in the max norm.
  double chebyshev_distance(std::span<const double> z) const;
  bool contains(std::span<const double> z, double tol = 0.0) const;
  // Similarity dimension of the limiting set (points 0, intervals 1,
  // Cantor log 2 / log(1/ratio), products add).
  double predicted_dimension() const;
  // Points of the set: the points themselves, interval endpoints and
  // midpoints; products take the grid of factor samples.
  std::vector<std::vector<double>> samples() const;
  // Exact description, e.g. "cantor(1/3, level 6) on [0, 1]".
  std::string describe() const;

 private:
  Kind kind_ = Kind::finite_points;
  std::size_t dim_ = 0;
  std::vector<std::vector<double>> points_;
  std::vector<Interval> intervals_;
  std::vector<ClosedSet> factors_;
  Rational ratio_ = 0;
  unsigned level_ = 0;

  double distance_in(std::span<const double> z, bool sup_norm) const;
};

// "points:0,1/2" (1-D points), "points:0|1/2" with ';'-free tuples via '|'
// e.g. "points:0 0|1 1" for 2-D points, "intervals:-1:1,2:3",
// "cantor:1/3:6" or "cantor:1/3:6:-1:1", "product(cantor:1/3:4;points:0)".
ClosedSet parse_closed_set(std::string_view text);

struct VanishingOptions {
  // eps in the gap profile g^2 / (g + eps); near A the function grows like
  // steepness * distance once the distance exceeds eps.
  double edge_scale = 1.0 / 16384.0;
  double steepness = 8.0;
};

// F >= 0 with F^{-1}(0) = A, C^1 everywhere with analytic gradient and
// Hessian off the set boundary. Finite sets use prod_i |z - a_i|^2; interval
// unions and Cantor iterates use a sum over complementary gaps of
// steepness * g^2 / (g + eps) with g the gap's quadratic profile
// (z - a)(b - z)/(b - a) (distance outside the hull); products add factors.
class VanishingFunction {
 public:
  VanishingFunction(ClosedSet set, VanishingOptions opts = {});

  std::size_t dim() const { return set_.dim(); }
  const ClosedSet& set() const { return set_; }
  const VanishingOptions& options() const { return opts_; }

  double value(std::span<const double> z) const;
  void gradient(std::span<const double> z, std::span<double> out) const;
  // Row-major dim x dim.
  void hessian(std::span<const double> z, std::span<double> out) const;
  // Bounds for |grad F| and the spectral norm of the Hessian over a box.
  double gradient_bound(std::span<const double> lo, std::span<const double> hi) const;
  double hessian_bound(std::span<const double> lo, std::span<const double> hi) const;

 private:
  ClosedSet set_;
  VanishingOptions opts_;
};

VanishingFunction smooth_vanishing_function(const ClosedSet& set, VanishingOptions opts = {});

// phi1 = x dy + y dx and its pullback phi2 under (x, y, z) -> (x, y - F(z), z):
// phi2 = (y - F) dx + x dy - x sum_i dF/dz_i dz_i. Coordinates are
// (x, y, z_1 .. z_{n-2}).
struct WildExample {
  std::size_t n = 0;
  ClosedSet set;
  VanishingFunction F;
  ExtForm phi1;
  EvalForm phi2;

  // Components: phi1 dx, phi1 dy, phi2 dx, phi2 dy, phi2 dz_1..dz_{n-2}.
  FieldEvaluator joint_field() const;
  // |x| + |y| + dist(z, A).
  double predicted_gap(std::span<const double> p) const;
  // Euclidean distance to {(0,0)} x A.
  double distance_to_predicted(std::span<const double> p) const;
  // Max-norm distance; at most 1.5 h exactly when the cell around p lies in
  // the one-cell neighbourhood of a cell meeting {(0,0)} x A.
  double chebyshev_distance_to_predicted(std::span<const double> p) const;
  std::vector<std::vector<double>> predicted_samples() const;
};

WildExample build_wild(const ClosedSet& set, std::size_t n, VanishingOptions opts = {});

struct HarmonicReport {
  ExtForm omega;
  ExtForm d_omega;
  ExtForm delta_omega;
  ExtForm laplacian_omega;
  bool closed = false;
  bool coclosed = false;
  bool harmonic = false;
  std::string zero_set;  // "x1 = 0"
  unsigned codimension = 1;
};

// omega = x1 dx1 ^ ... ^ dx_p on R^n.
HarmonicReport harmonic_counterexample(std::size_t n, std::size_t p);

}  // namespace zeroset
