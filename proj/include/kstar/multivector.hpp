// Polynomial multivector fields on R^d and the Schouten-Nijenhuis bracket.
#pragma once

#include <map>
#include <vector>

#include "kstar/polynomial.hpp"

namespace kstar {

/// Strictly increasing tuple of 0-based coordinate indices (i1 < ... < ik),
/// standing for d/dx_{i1} ^ ... ^ d/dx_{ik}.
using IndexTuple = std::vector<int>;

/// A k-vector field with polynomial coefficients, stored in canonical form:
/// components only on strictly increasing tuples, no zero components.
class MultivectorField {
 public:
  MultivectorField() = default;
  MultivectorField(int dim, int degree);

  /// Degree-0 multivector (a function).
  static MultivectorField function(const Polynomial& f);
  /// Constant-coefficient coordinate vector field d/dx_i.
  static MultivectorField coordinate_vector(int dim, int i);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<IndexTuple, Polynomial>& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  /// Adds coef * d_{idx[0]} ^ ... ^ d_{idx[k-1]}; indices in any order, the
  /// wedge sign is normalized and repeated indices contribute nothing.
  void add(const std::vector<int>& idx, const Polynomial& coef);

  /// Component on a strictly increasing tuple (zero when absent).
  Polynomial component(const IndexTuple& idx) const;

  /// Full skew tensor entry pi^{ij} of a bivector (pi^{ji} = -pi^{ij}).
  Polynomial bivector_entry(int i, int j) const;

  /// The degree-0 value.
  Polynomial as_function() const;

  bool is_constant() const;

  MultivectorField& operator+=(const MultivectorField& o);
  MultivectorField& operator-=(const MultivectorField& o);
  MultivectorField& operator*=(const Rational& c);
  friend MultivectorField operator+(MultivectorField a, const MultivectorField& b) { return a += b; }
  friend MultivectorField operator-(MultivectorField a, const MultivectorField& b) { return a -= b; }
  friend MultivectorField operator*(MultivectorField a, const Rational& c) { return a *= c; }
  friend MultivectorField operator*(const Rational& c, MultivectorField a) { return a *= c; }
  friend bool operator==(const MultivectorField& a, const MultivectorField& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

 private:
  void check_compatible(const MultivectorField& o) const;

  int dim_ = 0;
  int degree_ = 0;
  std::map<IndexTuple, Polynomial> comps_;
};

/// Truncated formal series sum_{i<=N} hbar^i * coefficient[i] of
/// multivectors of one dimension and degree.
struct FormalMultivector {
  std::vector<MultivectorField> coefficients;

  FormalMultivector() = default;
  explicit FormalMultivector(std::vector<MultivectorField> coeffs);
  static FormalMultivector zero(int dim, int degree, int order);

  int order() const { return static_cast<int>(coefficients.size()) - 1; }
  int dim() const { return coefficients.front().dim(); }
  int degree() const { return coefficients.front().degree(); }
  const MultivectorField& operator[](int i) const { return coefficients.at(i); }

  friend bool operator==(const FormalMultivector&, const FormalMultivector&) = default;
};

/// Schouten-Nijenhuis bracket, degree (a, b) -> a + b - 1. On functions the
/// convention is [X, f] = X(f), [f, X] = -X(f), [f, g] = 0.
MultivectorField schouten_bracket(const MultivectorField& a, const MultivectorField& b);

/// Lie derivative L_X(A) = [X, A]_S for a vector field X.
MultivectorField lie_derivative(const MultivectorField& x, const MultivectorField& a);

/// True iff [pi, pi]_S vanishes identically. Throws unless pi is a bivector.
bool is_poisson(const MultivectorField& pi);

/// {f, g} = sum_{i<j} pi^{ij} (d_i f d_j g - d_j f d_i g).
Polynomial poisson_apply(const MultivectorField& pi, const Polynomial& f, const Polynomial& g);

/// Order-by-order [pi_h, pi_h]_S up to the truncation order.
FormalMultivector formal_self_bracket(const FormalMultivector& pi_h);

/// True iff [pi_h, pi_h]_S vanishes at every hbar order <= truncation.
bool is_formal_poisson(const FormalMultivector& pi_h);

/// exp(hbar L_X) pi_h truncated at `order`. X is a formal vector field.
FormalMultivector apply_formal_diffeo(const FormalMultivector& x, const FormalMultivector& pi_h, int order);

}  // namespace kstar
