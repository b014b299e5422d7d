#include "zeroset/samples.hpp"

#include <stdexcept>

namespace zeroset {

long random_int(Rng& rng, long lo, long hi) {
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(rng() % span);
}

Rational random_rational(Rng& rng, long num_span, long max_den) {
  Rational q(random_int(rng, -num_span, num_span), static_cast<unsigned long>(random_int(rng, 1, max_den)));
  q.canonicalize();
  return q;
}

namespace {

Exponent random_exponent(Rng& rng, std::size_t nvars, unsigned degree) {
  Exponent e(nvars, 0);
  if (nvars == 0) return e;
  for (unsigned i = 0; i < degree; ++i) e[static_cast<std::size_t>(random_int(rng, 0, static_cast<long>(nvars) - 1))]++;
  return e;
}

}  // namespace

MultiPoly random_poly(Rng& rng, std::size_t nvars, unsigned degree, std::size_t terms) {
  MultiPoly p(nvars);
  for (std::size_t t = 0; t < terms; ++t) {
    auto d = static_cast<unsigned>(random_int(rng, 0, degree));
    p.add_term(random_exponent(rng, nvars, d), random_rational(rng));
  }
  return p;
}

MultiPoly random_homogeneous(Rng& rng, std::size_t nvars, unsigned degree, std::size_t terms) {
  MultiPoly p(nvars);
  while (p.is_zero()) {
    for (std::size_t t = 0; t < terms; ++t) p.add_term(random_exponent(rng, nvars, degree), random_rational(rng));
  }
  return p;
}

VectorPoly random_vector_poly(Rng& rng, std::size_t nvars, std::size_t rank, unsigned degree,
                              std::size_t terms) {
  VectorPoly v(nvars, rank);
  for (auto& c : v.components) c = random_poly(rng, nvars, degree, terms);
  return v;
}

ExtForm random_form(Rng& rng, std::size_t n, unsigned degree, std::size_t terms) {
  ExtForm w(n);
  for (IndexSet s : form_basis(n)) {
    if (random_int(rng, 0, 2) == 0) continue;
    w.add(s, random_poly(rng, n, degree, terms));
  }
  return w;
}

RationalMatrix random_invertible(Rng& rng, std::size_t size, long span) {
  while (true) {
    RationalMatrix m(size, size);
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) m(i, j) = random_int(rng, -span, span);
    }
    // Bias toward a dominant diagonal so most draws are invertible.
    for (std::size_t i = 0; i < size; ++i) m(i, i) += 2 * span;
    if (m.determinant() != 0) return m;
  }
}

namespace {

RationalMatrix block_diag(const std::vector<RationalMatrix>& blocks) {
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.rows();
  RationalMatrix m(total, total);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
    }
    off += b.rows();
  }
  return m;
}

// Left multiplication by 1, i, j, k on quaternions (a, b, c, d).
std::vector<RationalMatrix> quaternion_units() {
  return {
      RationalMatrix::identity(4),
      RationalMatrix{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}},
      RationalMatrix{{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}},
      RationalMatrix{{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}},
  };
}

SymbolMap base_symbol(Rng& rng, std::size_t n, std::size_t N) {
  if (n == 2 && N % 2 == 0 && N >= 2 && N <= 8) {
    if (N == 4 && random_int(rng, 0, 1) == 0) return hodge_symbol(2);
    RationalMatrix I = RationalMatrix::identity(2);
    RationalMatrix J{{0, -1}, {1, 0}};
    std::vector<RationalMatrix> a1(N / 2, I);
    std::vector<RationalMatrix> a2(N / 2, J);
    return SymbolMap({block_diag(a1), block_diag(a2)});
  }
  if ((n == 3 || n == 4) && (N == 4 || N == 8)) {
    if (n == 3 && N == 8 && random_int(rng, 0, 1) == 0) return hodge_symbol(3);
    auto q = quaternion_units();
    std::vector<RationalMatrix> A;
    for (std::size_t j = 0; j < n; ++j) {
      A.push_back(N == 4 ? q[j] : block_diag({q[j], q[j]}));
    }
    return SymbolMap(std::move(A));
  }
  throw std::invalid_argument("no elliptic model symbol for this (n, N)");
}

}  // namespace

namespace {

// Cayley rotation of a random skew matrix with entries in {-1, 0, 1} / 2,
// times a diagonal with entries in {1, 2}.
RationalMatrix random_conditioned(Rng& rng, std::size_t size) {
  RationalMatrix S(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      S(i, j) = Rational(random_int(rng, -1, 1), 2);
      S(i, j).canonicalize();
      S(j, i) = -S(i, j);
    }
  }
  RationalMatrix id = RationalMatrix::identity(size);
  RationalMatrix Q = (id - S) * (id + S).inverse();
  for (std::size_t j = 0; j < size; ++j) {
    Rational d = random_int(rng, 1, 2);
    for (std::size_t i = 0; i < size; ++i) Q(i, j) *= d;
  }
  return Q;
}

}  // namespace

SymbolMap random_elliptic_symbol(Rng& rng, std::size_t n, std::size_t N) {
  SymbolMap base = base_symbol(rng, n, N);
  RationalMatrix P = random_conditioned(rng, N);
  RationalMatrix Q = random_conditioned(rng, N);
  RationalMatrix M = random_conditioned(rng, n);
  // sigma'(xi) = P sigma(M xi) Q, so A'_j = sum_i M_ij P A_i Q.
  std::vector<RationalMatrix> A;
  for (std::size_t j = 0; j < n; ++j) {
    RationalMatrix m(N, N);
    for (std::size_t i = 0; i < n; ++i) {
      if (M(i, j) != 0) m += base.A[i] * M(i, j);
    }
    A.push_back(P * m * Q);
  }
  return SymbolMap(std::move(A));
}

}  // namespace zeroset
