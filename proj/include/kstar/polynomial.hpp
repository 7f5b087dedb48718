// Multivariate polynomials over exact rationals.
//
// A Polynomial in d variables is stored as a sparse map from exponent vectors
// (length d) to nonzero rational coefficients. It is the coefficient ring of
// every symbolic object in kstar: multivector components, multidifferential
// operator coefficients, and the arguments of star products.
#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace kstar {

using Rational = mpq_class;

/// Exponent vector of a monomial, or a derivative multi-index. Length = dim.
using Exponents = std::vector<int>;

Rational factorial(int n);

/// d!/(d-k)! for a single exponent, 0 when k > d.
Rational falling_factorial(int d, int k);

/// Componentwise sum of two multi-indices of the same length.
Exponents operator+(const Exponents& a, const Exponents& b);

/// Sum of the entries.
int total_order(const Exponents& e);

class Polynomial {
 public:
  using Terms = std::map<Exponents, Rational>;

  Polynomial() = default;
  explicit Polynomial(int dim);

  static Polynomial constant(int dim, const Rational& c);
  /// The coordinate function x_index (0-based).
  static Polynomial variable(int dim, int index);
  static Polynomial monomial(Exponents exps, const Rational& c = 1);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  /// -1 for the zero polynomial.
  int total_degree() const;
  Rational coefficient(const Exponents& e) const;

  /// Adds c * x^e; drops the entry when the coefficient cancels.
  void add_term(const Exponents& e, const Rational& c);

  Polynomial derivative(int var, int times = 1) const;
  /// Partial derivative with respect to a multi-index.
  Polynomial derivative(const Exponents& multi) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  Polynomial pow(int k) const;

  /// Evaluation at a rational point (used by sampling-based cross checks).
  Rational evaluate(const std::vector<Rational>& point) const;

 private:
  void check_dim(const Polynomial& o) const;

  int dim_ = 0;
  Terms terms_;
};

/// All monomials x^e with total degree <= max_degree, in graded order.
std::vector<Exponents> monomials_up_to(int dim, int max_degree);

void require_same_dim(int a, int b, const char* what);

}  // namespace kstar
