#pragma once

// Exact polynomial solutions of constant-coefficient elliptic systems, monic
// x1-forms, resultant-based regular slices and the density constants.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zeroset/matrix.hpp"
#include "zeroset/operator.hpp"
#include "zeroset/poly.hpp"

namespace zeroset {

// D = -A_1^{-1} sum_{j >= 2} A_j d/dx_j acting on sections over x' = (x2..xn).
struct ReducedOperator {
  std::size_t n = 0;  // base dimension of the original symbol
  std::size_t N = 0;
  std::vector<RationalMatrix> D;  // D[j] multiplies d/dx_{j+2}

  // y has n - 1 variables.
  VectorPoly apply(const VectorPoly& y) const;
};

// Throws std::domain_error when A_1 is singular.
ReducedOperator reduced_operator(const SymbolMap& s);

struct GeneratedSolution {
  VectorPoly phi;             // n variables
  std::vector<VectorPoly> Y;  // Y[j] in x', phi = sum_j Y[j] x1^j
  // D^{k+1} Y0 = 0, in which case sigma(d) phi = 0 holds exactly.
  bool complete = false;
};

// phi = sum_{j=0}^{k} (1/j!) D^j Y0 x1^j, stopping early once D^j Y0 = 0.
GeneratedSolution generate_polynomial_solution(const SymbolMap& s, const VectorPoly& Y0, unsigned k);

// apply(freeze(L, p), lowest homogeneous part of phi at p), in coordinates
// centered at p. Throws std::domain_error when phi vanishes identically.
VectorPoly hauptteil_residual(const SemilinearSpec& L, const VectorPoly& phi,
                              std::span<const Rational> p);

// Component nu equals alpha[nu] (x1^k + sum_{j<k} u[nu][j](x') x1^j).
// Identically zero components have alpha 0 and no u entries.
struct MonicSolutionForm {
  unsigned k = 0;
  std::size_t n = 0;
  std::vector<Rational> alpha;
  std::vector<std::vector<MultiPoly>> u;  // u[nu][j], homogeneous of degree k - j
  VectorPoly assembled;                   // n variables
  // The form describes phi(Q x); identity when no rotation was needed.
  RationalMatrix rotation;
};

// Orthogonal rational Q = (I - S)(I + S)^{-1} for skew-symmetric S.
RationalMatrix cayley_rotation(const RationalMatrix& skew);
// phi(Q x).
VectorPoly rotate(const VectorPoly& phi, const RationalMatrix& Q);
// Symbol of the rotated operator: A~_j = sum_i Q_ij A_i. If phi solves s then
// rotate(phi, Q) solves rotate_symbol(s, Q).
SymbolMap rotate_symbol(const SymbolMap& s, const RationalMatrix& Q);

// phi must be homogeneous of one degree k in every nonzero component. When an
// x1^k coefficient vanishes, Cayley rotations with small integer S are drawn
// from `seed` until every nonzero component has a nonzero x1^k coefficient.
MonicSolutionForm to_monic_form(const VectorPoly& phi, std::uint64_t seed = 1);

struct PairDraw {
  std::vector<Rational> A;  // weights on the nonzero components, sum 1
  std::vector<Rational> B;
  UnivariateView F;
  UnivariateView G;
};

// F = sum_nu A_nu phi_nu / alpha_nu, G likewise; zero components get weight 0.
PairDraw combine_pair(const MonicSolutionForm& m, std::vector<Rational> A, std::vector<Rational> B);
// Positive weights from mt19937_64(seed), normalized to sum 1.
PairDraw generic_pair(const MonicSolutionForm& m, std::uint64_t seed);

// Sylvester resultant of two monic x1-polynomials of the same degree.
MultiPoly projection_resultant(const UnivariateView& F, const UnivariateView& G);

struct RegularSlice {
  bool found = false;
  std::size_t draws = 0;
  std::optional<PairDraw> pair;
  MultiPoly resultant;
  std::vector<Rational> x0;  // n - 1 entries
  Rational value = 0;        // R(x0)
  std::string message;
};

// Iterates pair draws; for the first draw with R not identically zero, scans
// integer points of {-(d+1)..d+1}^(n-1), d = deg R, in a seeded order until
// R(x0) != 0. Such a point always exists once R is nonzero. Throws
// std::invalid_argument for the zero form.
RegularSlice find_regular_slice(const MonicSolutionForm& m, std::size_t max_draws,
                                std::uint64_t seed = 1);

// Complex roots of sum_j c[j] t^j via the companion matrix.
std::vector<std::complex<double>> companion_roots(std::span<const Rational> coeffs);
// Distinct real x1 with assembled(x1, x0) = 0 (tolerance on the residual).
std::vector<double> slice_zeros(const MonicSolutionForm& m, std::span<const Rational> x0,
                                double tol = 1e-7);

// Rational multiple of a power of pi.
struct ClosedForm {
  Rational coefficient = 0;
  int pi_power = 0;

  double value() const;
  std::string to_string() const;
};

ClosedForm unit_ball_volume_exact(unsigned m);

struct ConstantsReport {
  unsigned n = 0;
  std::vector<ClosedForm> alpha;  // alpha[m], m = 0..n
  ClosedForm C_main;              // 2^{n-3} n (n-1) / alpha(n-2)
  ClosedForm C_hyp;               // n 2^{n-1} / alpha(n-1)

  // n (n-1) k^3 (2r)^{n-2} / 2
  double measure_bound(double k, double r) const;
};

// Throws std::invalid_argument for n < 2.
ConstantsReport constants(unsigned n);

}  // namespace zeroset
