#pragma once

// Numerical geometry of zero sets on uniform grids: certified extraction,
// box-counting dimension, upper-density estimates, growth-rate vanishing
// orders and reference Cantor clouds.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zeroset {

// Volume of the unit ball in R^m: pi^(m/2) / Gamma(m/2 + 1).
double unit_ball_volume(unsigned m);

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t dim() const { return lo.size(); }
  double half_diagonal() const;
  std::vector<double> center() const;
};

Box cube(std::size_t dim, double lo, double hi);

// Uniform cell decomposition of a box with edge length h. Cell i along an
// axis has center lo + (i + 1/2) h.
struct GridSpec {
  Box box;
  double h = 0.0;

  GridSpec() = default;
  GridSpec(Box b, double cell);
  std::vector<std::size_t> cells_per_axis() const;
};

// Vector-valued map R^n -> R^k with per-component Lipschitz bounds valid on
// any sub-box passed in. Bounds must not grow when the box shrinks.
struct FieldEvaluator {
  std::size_t input_dim = 0;
  std::size_t output_dim = 0;
  std::function<void(std::span<const double> x, std::span<double> out)> value;
  std::function<void(const Box& box, std::span<double> lipschitz)> lipschitz;
};

struct PointCloud {
  std::size_t dim = 0;
  double h = 0.0;
  std::vector<double> origin;  // grid corner the points were generated from
  std::vector<double> coords;  // row-major, dim entries per point

  PointCloud() = default;
  PointCloud(std::size_t d, double cell, std::vector<double> org = {});

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  bool empty() const { return coords.empty(); }
  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * dim, dim};
  }
  void push(std::span<const double> p);
  // Grid cell index of point i relative to origin.
  std::vector<std::int64_t> cell(std::size_t i) const;
};

// Flags cell centers c with |f_i(c)| <= L_i(cell) h sqrt(n) / 2 for every
// component i. Any exact zero lies in a flagged cell. Blocks whose center
// already exceeds the bound for the whole block are skipped, which gives the
// same result as visiting every cell. Output is sorted by cell index.
PointCloud extract_zero_set(const FieldEvaluator& f, const GridSpec& grid);
// Reference sweep over every cell (no pruning); same output.
PointCloud extract_zero_set_exhaustive(const FieldEvaluator& f, const GridSpec& grid);

// True when some flagged cell, taken as a closed box, contains p (points on
// cell faces may belong to any adjacent cell).
bool covers(const PointCloud& cloud, std::span<const double> p);

struct BoxCountReport {
  std::vector<double> scales;  // strictly decreasing
  std::vector<std::size_t> counts;
  double slope = 0.0;
  double stderr_slope = 0.0;
};

// Least-squares slope of log(count) against log(1/scale). Boxes are aligned
// with the cloud origin. Requires >= 3 scales spanning >= 2 octaves.
BoxCountReport box_dimension(const PointCloud& cloud, std::span<const double> scales);

// Powers of two from `largest` down to `smallest` (inclusive).
std::vector<double> dyadic_scales(double largest, double smallest);

struct DensityReport {
  std::vector<double> center;
  unsigned m = 0;
  std::vector<double> radii;
  std::vector<double> estimates;
  double limsup_proxy = 0.0;
};

// Estimates H^m(N n B(p,r)) / (alpha(m) r^m) per radius. For m = 0 the
// measure is the number of cell clusters meeting the ball. For 1 <= m < n the
// volumes V(eps) of the eps-neighbourhood of the flagged cells inside B(p,r)
// at eps = r/4 and r/8 (the smaller one at least h/4, the larger twice that)
// are matched to a flat m-plane tube of radius eps + delta
// clipped to the ball; delta absorbs the band thickness of the cloud. For
// m = n it is the covered volume. The limsup proxy is the max over the two
// smallest radii. Radii below 4h are rejected.
DensityReport density_estimate(const PointCloud& cloud, unsigned m, std::span<const double> p,
                               std::span<const double> radii);

struct OrderEstimate {
  double slope = 0.0;
  double stderr_slope = 0.0;
  std::vector<double> radii;
  std::vector<double> sphere_max;
};

// Fits sup_{|x-p|=r} |f(x)| ~ r^k over the given radii.
OrderEstimate vanishing_order_estimate(const FieldEvaluator& f, std::span<const double> p,
                                       std::span<const double> radii, double tol = 1e-9);

struct CantorCloud {
  PointCloud cloud;
  double dimension = 0.0;
  std::vector<std::pair<double, double>> intervals;
};

// Endpoints and midpoints of the level-`level` iterate on [0,1] with
// contraction `ratio`, placed along the first axis at `offset`.
CantorCloud cantor(double ratio, unsigned level, std::vector<double> offset = {0.0});

// Connected components under cell adjacency (index difference <= 1 on every
// axis). `period` gives the cell count of periodic axes (0 = not periodic).
std::vector<std::vector<std::size_t>> clusters(const PointCloud& cloud,
                                               std::span<const std::size_t> period = {});

void write_csv(const PointCloud& cloud, std::ostream& os);
PointCloud read_csv(std::istream& is);

}  // namespace zeroset
