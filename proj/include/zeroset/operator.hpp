#pragma once

// First-order operators: principal symbols, constant-coefficient operators,
// semilinear operators with a pointwise nonlinearity, ellipticity and Clifford
// certification, and freezing of coefficients.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "zeroset/matrix.hpp"
#include "zeroset/poly.hpp"

namespace zeroset {

// xi -> sum_j A_j xi_j with A_j = sigma(e_j^*), each N x N.
struct SymbolMap {
  std::size_t n = 0;
  std::size_t N = 0;
  std::vector<RationalMatrix> A;

  SymbolMap() = default;
  explicit SymbolMap(std::vector<RationalMatrix> matrices);
};

RationalMatrix symbol_at(const SymbolMap& s, std::span<const Rational> xi);
Eigen::MatrixXd symbol_at(const SymbolMap& s, std::span<const double> xi);

// Constant-coefficient operator sigma(d) = sum_j A_j d/dx_j, applied exactly.
VectorPoly apply(const SymbolMap& s, const VectorPoly& phi);

enum class Verdict { elliptic, not_elliptic, undecided };
std::string to_string(Verdict v);

struct EllipticityCertificate {
  Verdict verdict = Verdict::undecided;
  // not_elliptic: unit covector with (numerically) singular symbol.
  std::vector<double> witness;
  double det_at_witness = 0.0;
  // elliptic: certified lower bounds over the unit sphere.
  double min_singular_lower_bound = 0.0;
  double det_lower_bound = 0.0;
  // Lipschitz constant used for xi -> smallest singular value of sigma(xi).
  double lipschitz = 0.0;
  std::size_t evaluations = 0;
};

// Adaptive certification on the unit sphere. The smallest singular value of
// sigma(xi) is Lipschitz in xi with constant ||[A_1 ... A_n]||_2, so a patch
// of chord radius rho around a sample is cleared once the sample's smallest
// singular value exceeds that constant times rho. Failing that, the patch is
// cleared when ||sigma(xi_c)^{-1} [A_1 ... A_n]||_2 rho < 1 (a bound that
// ignores left multiplication by invertible matrices). A sign change of
// det sigma is bisected into a witness. `budget` bounds symbol evaluations.
EllipticityCertificate is_elliptic(const SymbolMap& s, std::size_t budget = 200000);

// sigma(e_i)sigma(e_j) + sigma(e_j)sigma(e_i) + 2 g_ij Id = 0 for all i, j.
bool clifford_check(const SymbolMap& s, const RationalMatrix& metric);

// sigma(d)(f phi) - f sigma(d)phi - sigma(df)phi; identically zero.
VectorPoly leibniz_residual(const SymbolMap& s, const MultiPoly& f, const VectorPoly& phi);

// Pointwise zero-order nonlinearity V(x, e). Never differentiated.
struct Nonlinearity {
  std::string tag = "none";  // none | cubic-dirac | custom
  Rational parameter = 0;    // H for cubic-dirac
  bool respects_zero_section = true;
  std::function<void(std::span<const double> x, std::span<const double> e, std::span<double> out)>
      eval;
};

Nonlinearity no_nonlinearity();
// V(e) = -H |e|^2 e.
Nonlinearity cubic_dirac(const Rational& H);

// L = sum_j A_j(x) d/dx_j + B(x) + V(x, .), polynomial coefficient entries.
struct SemilinearSpec {
  std::size_t n = 0;
  std::size_t N = 0;
  std::vector<PolyMatrix> A;
  PolyMatrix B;
  Nonlinearity V;
};

SemilinearSpec make_linear(const SymbolMap& s);

// Spot-checks V(x, 0) = 0 on the given sample points.
bool check_zero_section(const SemilinearSpec& L, std::span<const std::vector<double>> samples,
                        double tol = 1e-12);

// Principal symbol at p with B and V dropped.
SymbolMap freeze(const SemilinearSpec& L, std::span<const Rational> p);

// Writes phi(x) into `value` (N entries) and d phi / dx_j into
// `jacobian[j * N + i]`. Must be safe to call repeatedly.
using SectionEvaluator = std::function<void(std::span<const double> x, std::span<double> value,
                                            std::span<double> jacobian)>;

// max over the grid of |sum_j A_j(x) d_j phi + B(x) phi + V(x, phi)|_inf.
double residual_norm(const SemilinearSpec& L, const SectionEvaluator& phi,
                     std::span<const std::vector<double>> grid);

// The sixteen-equation block system with diagonal blocks D2, D2, D1, D1 (Hodge
// operators of the Euclidean metric and of the metric dx^2 + 2 dy^2 on R^2),
// -Id on the superdiagonal and the -a(x) u coupling in the lower-left corner,
// realized through the nonlinearity slot. a defaults to zero.
struct NonUcpOperator {
  SemilinearSpec spec;
  SymbolMap euclidean;    // D1 symbol, 4 x 4
  SymbolMap anisotropic;  // D2 symbol, 4 x 4
  RationalMatrix anisotropic_metric;
};

NonUcpOperator build_nonucp_operator(std::function<double(std::span<const double>)> a = {});

// Operator spec files.
//
//   zeroset-operator v1
//   n: 2
//   N: 2
//   A1: [[1, 0], [0, 1]]
//   A2: [[0, -1], [1, 0]]
//   B: [[0, 0], [0, 0]]                      (optional)
//   nonlinearity: none | cubic-dirac 1/2 | custom <name>   (optional)
//
// Entries are integers or strings holding a rational or a polynomial in
// x1..xn. Lines starting with '#' are comments.
class SpecParseError : public std::runtime_error {
 public:
  SpecParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  // The message without the position prefix.
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

SemilinearSpec parse_operator_spec(std::string_view text);
std::string format_operator_spec(const SemilinearSpec& L);

}  // namespace zeroset
