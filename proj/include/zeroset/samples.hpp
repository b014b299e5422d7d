#pragma once

// Seeded random instances shared by the test suites and `verify`.

#include <cstdint>
#include <random>

#include "zeroset/forms.hpp"
#include "zeroset/operator.hpp"
#include "zeroset/poly.hpp"

namespace zeroset {

using Rng = std::mt19937_64;

// Uniform integer in [lo, hi].
long random_int(Rng& rng, long lo, long hi);
Rational random_rational(Rng& rng, long num_span = 5, long max_den = 4);

// Random polynomial with up to `terms` terms of total degree <= degree.
MultiPoly random_poly(Rng& rng, std::size_t nvars, unsigned degree, std::size_t terms);
// Random homogeneous polynomial of exactly the given degree (nonzero).
MultiPoly random_homogeneous(Rng& rng, std::size_t nvars, unsigned degree, std::size_t terms);
VectorPoly random_vector_poly(Rng& rng, std::size_t nvars, std::size_t rank, unsigned degree,
                              std::size_t terms);
ExtForm random_form(Rng& rng, std::size_t n, unsigned degree, std::size_t terms);

// Cauchy-Riemann blocks (n = 2, even N), quaternion multiplication
// (n = 3, 4, N = 4 or 8) and Hodge-Dirac symbols (n = 2, N = 4; n = 3,
// N = 8), transformed to P sigma(M xi) Q where P, Q, M are rational Cayley
// rotations times diagonals with entries in {1, 2}. Supported (n, N):
// n = 2 with N in {2, 4, 6, 8}; n in {3, 4} with N in {4, 8}. Odd N is never elliptic for n >= 2.
SymbolMap random_elliptic_symbol(Rng& rng, std::size_t n, std::size_t N);

// Invertible integer matrix with small entries.
RationalMatrix random_invertible(Rng& rng, std::size_t size, long span = 1);

}  // namespace zeroset
