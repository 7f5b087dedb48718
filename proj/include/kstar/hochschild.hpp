// The Hochschild side: Gerstenhaber composition and bracket, the Hochschild
// differential, the HKR map, associativity of formal deformations, gauge
// transformations, and the order-one symmetrization of star products.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kstar/multidiff.hpp"
#include "kstar/multivector.hpp"

namespace kstar {

/// Truncated series B_0 + hbar B_1 + ... + hbar^N B_N of bidifferential operators.
struct FormalBidiffSeries {
  std::vector<MultidiffOperator> terms;

  FormalBidiffSeries() = default;
  explicit FormalBidiffSeries(std::vector<MultidiffOperator> ops);
  /// mu + 0 hbar + ... (the undeformed product).
  static FormalBidiffSeries undeformed(int dim, int order);

  int order() const { return static_cast<int>(terms.size()) - 1; }
  int dim() const { return terms.front().dim(); }
  const MultidiffOperator& operator[](int i) const { return terms.at(i); }

  friend bool operator==(const FormalBidiffSeries&, const FormalBidiffSeries&) = default;
};

/// T = id + hbar T_1 + ... + hbar^N T_N with arity-1 operators.
struct GaugeSeries {
  std::vector<MultidiffOperator> terms;

  GaugeSeries() = default;
  /// Throws unless terms[0] is the identity and all terms have arity 1.
  explicit GaugeSeries(std::vector<MultidiffOperator> ops);
  static GaugeSeries identity(int dim, int order);

  int order() const { return static_cast<int>(terms.size()) - 1; }
  int dim() const { return terms.front().dim(); }
  /// True iff every T_n with n >= 1 annihilates constants.
  bool vanishes_on_constants() const;
  /// The inverse series D with D_0 = id, D_n = -sum_{m=1..n} T_m D_{n-m}.
  GaugeSeries inverse() const;
};

/// (phi o psi) = sum_i (-1)^{m2 i} phi(..., psi(f_i, ..., f_{i+m2}), ...).
MultidiffOperator gerstenhaber_compose(const MultidiffOperator& phi, const MultidiffOperator& psi);

/// [phi, psi]_G = phi o psi - (-1)^{m1 m2} psi o phi.
MultidiffOperator gerstenhaber_bracket(const MultidiffOperator& phi, const MultidiffOperator& psi);

/// d phi = -[phi, mu]_G. At arity 1: d phi(f, g) = f phi(g) - phi(fg) + phi(f) g.
MultidiffOperator hochschild_d(const MultidiffOperator& phi);

/// HKR map: X_0 ^ ... ^ X_n -> (1/(n+1)!) sum_sigma sgn(sigma) prod_i X_sigma(i)(f_i).
MultidiffOperator hkr(const MultivectorField& a);

/// Residual of the associativity equation at each order n <= N:
///   sum_{i+j=n} B_i(B_j(f,g),h) - B_i(f,B_j(g,h)),
/// as arity-3 operators in normal form.
std::vector<MultidiffOperator> associativity_residuals(const FormalBidiffSeries& b);

bool is_associative_deformation(const FormalBidiffSeries& b);

/// The product f *' g = T(T^{-1} f * T^{-1} g), truncated at min(N_T, N_B).
FormalBidiffSeries gauge_transform(const GaugeSeries& t, const FormalBidiffSeries& b);

/// B^+(f,g) = (B(f,g) + B(g,f))/2 and B^-(f,g) = (B(f,g) - B(g,f))/2.
MultidiffOperator symmetric_part(const MultidiffOperator& b);
MultidiffOperator skew_part(const MultidiffOperator& b);

class CocycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotABivectorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Symmetrization {
  MultidiffOperator t1;         ///< arity 1
  FormalBidiffSeries gauged;    ///< gauge_transform(id + hbar t1, input)
};

/// Finds T_1 with T_1(fg) = f T_1(g) + T_1(f) g - B_1^+(f, g) on monomials
/// (one variable at a time, then across variables) and assembles it into a
/// differential operator. The gauged product has a skew order-one term.
/// Throws CocycleError if B_1 is not a Hochschild cocycle.
Symmetrization symmetrize_order1(const FormalBidiffSeries& b);

/// T_1 on a single monomial x^alpha via the monomial recursion; exposed for tests.
Polynomial symmetrizing_gauge_on_monomial(const MultidiffOperator& b1_plus, const Exponents& alpha);

/// Reconstructs a linear differential operator of order <= max_order from its
/// values on all monomials of total degree <= max_order.
MultidiffOperator operator_from_monomial_values(int dim, int max_order,
                                                const std::function<Polynomial(const Exponents&)>& values);

/// The bivector P with P(df, dg) = B_1^-(f, g). Throws NotABivectorError if
/// the skew part of B_1 has higher-derivative terms.
MultivectorField extract_b1_minus(const FormalBidiffSeries& b);

}  // namespace kstar
