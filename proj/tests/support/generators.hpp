// Small random generators for property tests. Everything is driven by a
// caller-owned std::mt19937_64 so a failing case can be replayed from its seed.
#pragma once

#include <random>
#include <vector>

#include "kstar/hochschild.hpp"
#include "kstar/multidiff.hpp"
#include "kstar/multivector.hpp"
#include "kstar/polynomial.hpp"

namespace kstar::testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational small_rational(Rng& rng) {
  const int num = uniform_int(rng, -4, 4);
  const int den = uniform_int(rng, 1, 3);
  return Rational(num, den);
}

inline Exponents random_exponents(Rng& rng, int dim, int max_degree) {
  Exponents e(dim, 0);
  const int deg = uniform_int(rng, 0, max_degree);
  for (int k = 0; k < deg; ++k) ++e[uniform_int(rng, 0, dim - 1)];
  return e;
}

/// At most max_terms monomials of total degree <= max_degree.
inline Polynomial random_polynomial(Rng& rng, int dim, int max_degree, int max_terms = 3) {
  Polynomial p(dim);
  const int terms = uniform_int(rng, 0, max_terms);
  for (int t = 0; t < terms; ++t) p.add_term(random_exponents(rng, dim, max_degree), small_rational(rng));
  return p;
}

inline Polynomial nonzero_polynomial(Rng& rng, int dim, int max_degree, int max_terms = 3) {
  for (;;) {
    auto p = random_polynomial(rng, dim, max_degree, max_terms);
    if (!p.is_zero()) return p;
  }
}

inline MultivectorField random_multivector(Rng& rng, int dim, int degree, int max_degree, int max_terms = 2) {
  MultivectorField m(dim, degree);
  const int terms = uniform_int(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> idx(degree);
    for (auto& i : idx) i = uniform_int(rng, 0, dim - 1);
    m.add(idx, random_polynomial(rng, dim, max_degree, 2));
  }
  return m;
}

/// Arity-m operator with per-slot derivative order <= max_order.
inline MultidiffOperator random_operator(Rng& rng, int dim, int arity, int max_order, int max_degree,
                                         int max_terms = 2) {
  MultidiffOperator op(dim, arity);
  const int terms = uniform_int(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t) {
    SlotKey key;
    for (int s = 0; s < arity; ++s) key.push_back(random_exponents(rng, dim, max_order));
    op.add_term(key, random_polynomial(rng, dim, max_degree, 2));
  }
  return op;
}

/// f d/dx_a ^ d/dx_b, Poisson for every f.
inline MultivectorField random_poisson(Rng& rng, int dim, int max_degree) {
  MultivectorField pi(dim, 2);
  if (dim < 2) return pi;
  const int a = uniform_int(rng, 0, dim - 1);
  int b = uniform_int(rng, 0, dim - 2);
  if (b >= a) ++b;
  pi.add({a, b}, nonzero_polynomial(rng, dim, max_degree, 3));
  return pi;
}

}  // namespace kstar::testing
