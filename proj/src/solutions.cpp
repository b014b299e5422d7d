#include "zeroset/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace zeroset {

VectorPoly ReducedOperator::apply(const VectorPoly& y) const {
  if (y.nvars + 1 != n || y.rank() != N) throw std::invalid_argument("section does not live on x'");
  VectorPoly out(y.nvars, N);
  for (std::size_t j = 0; j < D.size(); ++j) out += D[j] * y.derive(j);
  return out;
}

ReducedOperator reduced_operator(const SymbolMap& s) {
  RationalMatrix inv;
  try {
    inv = s.A[0].inverse();
  } catch (const std::domain_error&) {
    throw std::domain_error("sigma(e_1) is singular; rotate coordinates first");
  }
  ReducedOperator r;
  r.n = s.n;
  r.N = s.N;
  for (std::size_t j = 1; j < s.n; ++j) r.D.push_back(inv * s.A[j] * Rational(-1));
  return r;
}

namespace {

// y(x') * x1^j as a polynomial in n variables.
VectorPoly lift(const VectorPoly& y, std::size_t n, unsigned j) {
  VectorPoly out(n, y.rank());
  Exponent e(n, 0);
  e[0] = j;
  MultiPoly power = MultiPoly::monomial(Rational(1), e);
  for (std::size_t i = 0; i < y.rank(); ++i) out.components[i] = y.components[i].embed(n, 1) * power;
  return out;
}

}  // namespace

GeneratedSolution generate_polynomial_solution(const SymbolMap& s, const VectorPoly& Y0, unsigned k) {
  if (Y0.rank() != s.N || Y0.nvars + 1 != s.n) {
    throw std::invalid_argument("Y0 must have N components in n - 1 variables");
  }
  ReducedOperator D = reduced_operator(s);
  GeneratedSolution g;
  g.phi = VectorPoly(s.n, s.N);
  VectorPoly y = Y0;
  for (unsigned j = 0; j <= k; ++j) {
    if (y.is_zero()) break;
    g.Y.push_back(y);
    g.phi += lift(y, s.n, j);
    VectorPoly next = D.apply(y);
    for (auto& c : next.components) c *= Rational(1, j + 1);
    y = std::move(next);
  }
  g.complete = y.is_zero();
  return g;
}

VectorPoly hauptteil_residual(const SemilinearSpec& L, const VectorPoly& phi,
                              std::span<const Rational> p) {
  HomogeneousPart hp = lowest_homogeneous_part(phi.translate(p));
  if (!hp.order) throw std::domain_error("section vanishes identically; its leading part is undefined");
  return apply(freeze(L, p), hp.part);
}

RationalMatrix cayley_rotation(const RationalMatrix& skew) {
  const std::size_t n = skew.rows();
  if (!(skew.transpose() == skew * Rational(-1))) throw std::invalid_argument("matrix is not skew-symmetric");
  RationalMatrix id = RationalMatrix::identity(n);
  return (id - skew) * (id + skew).inverse();
}

VectorPoly rotate(const VectorPoly& phi, const RationalMatrix& Q) {
  const std::size_t n = phi.nvars;
  if (Q.rows() != n || Q.cols() != n) throw std::invalid_argument("rotation has wrong size");
  std::vector<MultiPoly> subs;
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly row(n);
    for (std::size_t j = 0; j < n; ++j) row += MultiPoly::variable(n, j) * Q(i, j);
    subs.push_back(std::move(row));
  }
  VectorPoly out(n, phi.rank());
  for (std::size_t c = 0; c < phi.rank(); ++c) out.components[c] = phi.components[c].substitute(subs);
  return out;
}

SymbolMap rotate_symbol(const SymbolMap& s, const RationalMatrix& Q) {
  std::vector<RationalMatrix> A;
  for (std::size_t j = 0; j < s.n; ++j) {
    RationalMatrix m(s.N, s.N);
    for (std::size_t i = 0; i < s.n; ++i) {
      if (Q(i, j) != 0) m += s.A[i] * Q(i, j);
    }
    A.push_back(std::move(m));
  }
  return SymbolMap(std::move(A));
}

namespace {

Rational top_coefficient(const MultiPoly& p, unsigned k) {
  Exponent e(p.nvars(), 0);
  e[0] = k;
  return p.coefficient(e);
}

bool needs_rotation(const VectorPoly& phi, unsigned k) {
  for (const auto& c : phi.components) {
    if (!c.is_zero() && top_coefficient(c, k) == 0) return true;
  }
  return false;
}

}  // namespace

MonicSolutionForm to_monic_form(const VectorPoly& phi, std::uint64_t seed) {
  if (phi.nvars == 0) throw std::invalid_argument("section needs at least one variable");
  std::optional<unsigned> degree;
  for (const auto& c : phi.components) {
    if (c.is_zero()) continue;
    if (!c.is_homogeneous()) throw std::invalid_argument("components must be homogeneous");
    auto d = static_cast<unsigned>(c.degree());
    if (degree && *degree != d) throw std::invalid_argument("components must share one degree");
    degree = d;
  }
  if (!degree) throw std::invalid_argument("the zero section has no monic form");
  const unsigned k = *degree;
  const std::size_t n = phi.nvars;

  MonicSolutionForm m;
  m.k = k;
  m.n = n;
  m.rotation = RationalMatrix::identity(n);
  VectorPoly work = phi;
  if (needs_rotation(work, k)) {
    std::mt19937_64 rng(seed);
    bool ok = false;
    for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
      RationalMatrix S(n, n);
      const long span = 1 + attempt / 50;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          long v = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * span + 1)) - span;
          S(i, j) = Rational(v, 2);
          S(i, j).canonicalize();
          S(j, i) = -S(i, j);
        }
      }
      if (S.is_zero()) continue;
      RationalMatrix Q = cayley_rotation(S);
      VectorPoly candidate = rotate(phi, Q);
      if (!needs_rotation(candidate, k)) {
        work = std::move(candidate);
        m.rotation = Q;
        ok = true;
      }
    }
    if (!ok) throw std::runtime_error("no rotation made every x1^k coefficient nonzero");
  }
  m.assembled = work;
  for (const auto& c : work.components) {
    std::vector<MultiPoly> us;
    if (c.is_zero()) {
      m.alpha.push_back(0);
      m.u.push_back(std::move(us));
      continue;
    }
    Rational a = top_coefficient(c, k);
    UnivariateView view = univariate_view(c, 0);
    for (unsigned j = 0; j < k; ++j) us.push_back(view.coeffs[j] * (Rational(1) / a));
    m.alpha.push_back(a);
    m.u.push_back(std::move(us));
  }
  return m;
}

namespace {

UnivariateView monic_view(const MonicSolutionForm& m, std::size_t nu) {
  return univariate_view(m.assembled.components[nu] * (Rational(1) / m.alpha[nu]), 0);
}

UnivariateView weighted(const MonicSolutionForm& m, const std::vector<Rational>& w) {
  MultiPoly sum(m.n);
  for (std::size_t nu = 0; nu < w.size(); ++nu) {
    if (w[nu] == 0) continue;
    sum += m.assembled.components[nu] * (w[nu] / m.alpha[nu]);
  }
  return univariate_view(sum, 0);
}

void check_weights(const MonicSolutionForm& m, const std::vector<Rational>& w) {
  if (w.size() != m.alpha.size()) throw std::invalid_argument("one weight per component is required");
  Rational total = 0;
  for (std::size_t nu = 0; nu < w.size(); ++nu) {
    if (m.alpha[nu] == 0 && w[nu] != 0) throw std::invalid_argument("zero component carries weight");
    total += w[nu];
  }
  if (total != 1) throw std::invalid_argument("weights must sum to 1");
}

}  // namespace

PairDraw combine_pair(const MonicSolutionForm& m, std::vector<Rational> A, std::vector<Rational> B) {
  check_weights(m, A);
  check_weights(m, B);
  PairDraw d;
  d.F = weighted(m, A);
  d.G = weighted(m, B);
  d.A = std::move(A);
  d.B = std::move(B);
  return d;
}

PairDraw generic_pair(const MonicSolutionForm& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&]() {
    std::vector<Rational> w(m.alpha.size(), Rational(0));
    Rational total = 0;
    for (std::size_t nu = 0; nu < w.size(); ++nu) {
      if (m.alpha[nu] == 0) continue;
      w[nu] = Rational(static_cast<long>(rng() % 64) + 1);
      total += w[nu];
    }
    if (total == 0) throw std::invalid_argument("the zero section has no pair");
    for (auto& v : w) v /= total;
    return w;
  };
  auto A = draw();
  auto B = draw();
  return combine_pair(m, std::move(A), std::move(B));
}

MultiPoly projection_resultant(const UnivariateView& F, const UnivariateView& G) {
  auto monic = [](const UnivariateView& v) {
    return !v.coeffs.empty() && v.leading().is_constant() &&
           v.leading().coefficient(Exponent(v.leading().nvars(), 0)) == 1;
  };
  if (!monic(F) || !monic(G)) throw std::invalid_argument("projection resultant needs monic inputs");
  if (F.degree() != G.degree()) throw std::invalid_argument("projection resultant needs equal degrees");
  return resultant(F, G);
}

RegularSlice find_regular_slice(const MonicSolutionForm& m, std::size_t max_draws, std::uint64_t seed) {
  if (m.assembled.is_zero()) throw std::invalid_argument("the zero section has no regular slice");
  RegularSlice out;
  const std::size_t dims = m.n - 1;
  std::mt19937_64 rng(seed);
  for (std::size_t draw = 0; draw < max_draws; ++draw) {
    out.draws = draw + 1;
    PairDraw pair = generic_pair(m, rng());
    MultiPoly R = projection_resultant(pair.F, pair.G);
    if (R.is_zero()) continue;
    // A nonzero polynomial of degree d cannot vanish on a grid with more
    // than d values per axis.
    const long reach = std::max(R.degree(), 0) + 1;
    const std::size_t side = static_cast<std::size_t>(2 * reach + 1);
    std::size_t total = 1;
    for (std::size_t i = 0; i < dims; ++i) total *= side;
    // Seeded traversal: an affine permutation of the lattice indices.
    std::uint64_t stride = 1 + rng() % total;
    while (std::gcd(stride, static_cast<std::uint64_t>(total)) != 1) ++stride;
    std::uint64_t start = rng() % total;
    std::vector<Rational> x(dims);
    for (std::size_t t = 0; t < total; ++t) {
      std::uint64_t idx = (start + t * stride) % total;
      for (std::size_t i = 0; i < dims; ++i) {
        x[i] = Rational(static_cast<long>(idx % side) - reach);
        idx /= side;
      }
      Rational v = R.evaluate(x);
      if (v != 0) {
        out.found = true;
        out.pair = std::move(pair);
        out.resultant = std::move(R);
        out.x0 = x;
        out.value = v;
        out.message = "regular slice found";
        return out;
      }
    }
    throw std::logic_error("nonzero resultant vanished on the whole search lattice");
  }
  out.message = "budget exhausted after " + std::to_string(max_draws) +
                " draws (every resultant vanished identically)";
  return out;
}

std::vector<std::complex<double>> companion_roots(std::span<const Rational> coeffs) {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == 0) --deg;
  if (deg == 0) throw std::invalid_argument("the zero polynomial has no finite root set");
  deg -= 1;
  if (deg == 0) return {};
  const double lead = coeffs[deg].get_d();
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
  for (std::size_t i = 1; i < deg; ++i) C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < deg; ++i) {
    C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -coeffs[i].get_d() / lead;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

std::vector<double> slice_zeros(const MonicSolutionForm& m, std::span<const Rational> x0, double tol) {
  if (x0.size() + 1 != m.n) throw std::invalid_argument("slice point must have n - 1 entries");
  std::size_t first = m.alpha.size();
  for (std::size_t nu = 0; nu < m.alpha.size(); ++nu) {
    if (m.alpha[nu] != 0) {
      first = nu;
      break;
    }
  }
  if (first == m.alpha.size()) throw std::invalid_argument("the zero section vanishes on every slice");
  auto coeffs = monic_view(m, first).at(x0);
  std::vector<double> out;
  std::vector<double> point(m.n);
  for (std::size_t i = 0; i < x0.size(); ++i) point[i + 1] = x0[i].get_d();
  for (auto z : companion_roots(coeffs)) {
    if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) continue;
    point[0] = z.real();
    auto vals = m.assembled.evaluate(std::span<const double>(point));
    double worst = 0.0;
    for (std::size_t nu = 0; nu < vals.size(); ++nu) {
      if (m.alpha[nu] != 0) worst = std::max(worst, std::abs(vals[nu] / m.alpha[nu].get_d()));
    }
    if (worst > tol * std::max(1.0, std::pow(std::abs(z.real()), m.k))) continue;
    if (!out.empty() && std::abs(out.back() - z.real()) <= 1e-6) continue;
    out.push_back(z.real());
  }
  return out;
}

double ClosedForm::value() const { return coefficient.get_d() * std::pow(M_PI, pi_power); }

std::string ClosedForm::to_string() const {
  if (pi_power == 0) return format_rational(coefficient);
  std::string pi = "pi";
  if (std::abs(pi_power) != 1) pi += "^" + std::to_string(std::abs(pi_power));
  if (pi_power > 0) {
    if (coefficient == 1) return pi;
    return format_rational(coefficient) + "*" + pi;
  }
  return format_rational(coefficient) + "/" + pi;
}

ClosedForm unit_ball_volume_exact(unsigned m) {
  ClosedForm a;
  if (m % 2 == 0) {
    // pi^l / l!
    unsigned l = m / 2;
    mpz_class fact = 1;
    for (unsigned i = 2; i <= l; ++i) fact *= i;
    a.coefficient = Rational(mpz_class(1), fact);
    a.pi_power = static_cast<int>(l);
  } else {
    // 2^{l+1} pi^l / (2l+1)!!
    unsigned l = (m - 1) / 2;
    mpz_class dfact = 1;
    for (unsigned i = 3; i <= m; i += 2) dfact *= i;
    mpz_class two = 1;
    two <<= l + 1;
    a.coefficient = Rational(two, dfact);
    a.coefficient.canonicalize();
    a.pi_power = static_cast<int>(l);
  }
  return a;
}

double ConstantsReport::measure_bound(double k, double r) const {
  return 0.5 * n * (n - 1.0) * k * k * k * std::pow(2.0 * r, static_cast<double>(n) - 2.0);
}

ConstantsReport constants(unsigned n) {
  if (n < 2) throw std::invalid_argument("constants need n >= 2");
  ConstantsReport c;
  c.n = n;
  for (unsigned m = 0; m <= n; ++m) c.alpha.push_back(unit_ball_volume_exact(m));
  auto pow2 = [](int e) {
    Rational v = 1;
    if (e >= 0) {
      for (int i = 0; i < e; ++i) v *= 2;
    } else {
      for (int i = 0; i < -e; ++i) v /= 2;
    }
    return v;
  };
  const ClosedForm& a2 = c.alpha[n - 2];
  c.C_main.coefficient = pow2(static_cast<int>(n) - 3) * n * (n - 1) / a2.coefficient;
  c.C_main.pi_power = -a2.pi_power;
  const ClosedForm& a1 = c.alpha[n - 1];
  c.C_hyp.coefficient = pow2(static_cast<int>(n) - 1) * n / a1.coefficient;
  c.C_hyp.pi_power = -a1.pi_power;
  return c;
}

}  // namespace zeroset
