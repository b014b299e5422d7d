#pragma once

// Scalar second-order equations rewritten as first-order Dirac systems via
// omega = u + du, nodal and critical nodal sets, and eigenfunction scans on
// the flat 2-torus.
//
// Laplacian convention: Delta = -sum_j d^2/dx_j^2, so torus eigenfunctions
// sin(px) sin(qy) have eigenvalue p^2 + q^2.

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "zeroset/measure.hpp"
#include "zeroset/operator.hpp"
#include "zeroset/poly.hpp"

namespace zeroset {

struct ScalarSolution {
  std::size_t n = 0;
  Box domain;
  std::optional<double> lambda;
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
  std::function<void(std::span<const double>, std::span<double>)> hessian;  // row-major
  // Bounds over a box for |grad u| and |grad d_j u|, written as n + 1 entries.
  std::function<void(const Box&, std::span<double>)> lipschitz;

  double laplacian(std::span<const double> x) const;  // -sum_j d_jj u
};

double finite_difference_laplacian(const ScalarSolution& u, std::span<const double> x,
                                   double step = 1e-4);

// u = sin(p x) sin(q y) on [0, 2 pi)^2, lambda = p^2 + q^2.
ScalarSolution torus_eigenfunction(int p, int q);
// Exact polynomial with derivative polynomials and box-wise bounds.
ScalarSolution polynomial_solution(const MultiPoly& u, Box domain,
                                   std::optional<double> lambda = std::nullopt);

// F~(x, omega_0, omega_1) with omega_1 the n coefficients of the 1-form part.
using ScalarNonlinearity =
    std::function<double(std::span<const double> x, double w0, std::span<const double> w1)>;

// Eigenfunction equation Delta u = lambda u, written as F~ = -lambda w0.
ScalarNonlinearity eigen_nonlinearity(double lambda);

struct ReducedSection {
  SemilinearSpec L;         // d + delta on the full exterior algebra plus V
  SectionEvaluator omega;   // u in grade 0, du in grade 1, zero elsewhere
};

// V puts F~(x, w0, w1) in grade 0 and -w1 in grade 1. Throws
// std::invalid_argument if F~(x, 0, 0) != 0 at sample points of the domain.
ReducedSection reduce(const ScalarSolution& u, ScalarNonlinearity Ftilde);

struct NodalSets {
  PointCloud nodal;
  PointCloud critical;
};

FieldEvaluator value_field(const ScalarSolution& u);
// (u, d_1 u, ..., d_n u)
FieldEvaluator critical_field(const ScalarSolution& u);

NodalSets nodal_sets(const ScalarSolution& u, const GridSpec& grid);

// Box [-h/2, 2 pi - h/2)^2 with h = 2 pi / cells, so that the lattice points
// i h are cell centers.
GridSpec torus_grid(std::size_t cells);

struct ScanRow {
  double lambda = 0.0;
  int p = 0;
  int q = 0;
  double theta_n1_max = 0.0;
  double theta_n2_max = 0.0;
  std::size_t ncrit_cluster_count = 0;
};

// For each (p, q): nodal and critical nodal sets on a torus grid with the
// given cell count, codimension-1 density at sampled nodal points and at the
// critical points, codimension-2 density at the critical points.
std::vector<ScanRow> eigen_density_scan(std::span<const std::pair<int, int>> family, std::size_t cells,
                                        std::span<const double> radii, std::size_t samples = 16);

void write_scan_csv(std::span<const ScanRow> rows, std::ostream& os);

}  // namespace zeroset
