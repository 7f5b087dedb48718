// Multidifferential operators with polynomial coefficients.
//
//   (f_0, ..., f_m) -> sum_K C^K d_{K_0} f_0 ... d_{K_m} f_m
//
// K runs over tuples of derivative multi-indices, one per slot. Terms are kept
// in normal form (sorted keys, no zero coefficients), so operator equality is
// plain structural equality.
#pragma once

#include <map>
#include <vector>

#include "kstar/polynomial.hpp"

namespace kstar {

/// One derivative multi-index per function slot.
using SlotKey = std::vector<Exponents>;

class MultidiffOperator {
 public:
  MultidiffOperator() = default;
  MultidiffOperator(int dim, int arity);

  /// Pointwise multiplication mu(f, g) = f g.
  static MultidiffOperator multiplication(int dim);
  static MultidiffOperator identity(int dim);
  /// f -> c * d_multi f.
  static MultidiffOperator derivative(const Polynomial& c, const Exponents& multi);

  int dim() const { return dim_; }
  int arity() const { return arity_; }
  /// Hochschild degree m = arity - 1.
  int degree() const { return arity_ - 1; }
  const std::map<SlotKey, Polynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Polynomial coefficient(const SlotKey& key) const;

  void add_term(const SlotKey& key, const Polynomial& coef);

  /// Highest total derivative order over all slots of a term.
  int max_total_order() const;

  Polynomial apply(const std::vector<Polynomial>& args) const;

  /// Swaps the two arguments of an arity-2 operator: B^t(f, g) = B(g, f).
  MultidiffOperator transposed() const;

  MultidiffOperator& operator+=(const MultidiffOperator& o);
  MultidiffOperator& operator-=(const MultidiffOperator& o);
  MultidiffOperator& operator*=(const Rational& c);
  friend MultidiffOperator operator+(MultidiffOperator a, const MultidiffOperator& b) { return a += b; }
  friend MultidiffOperator operator-(MultidiffOperator a, const MultidiffOperator& b) { return a -= b; }
  friend MultidiffOperator operator*(MultidiffOperator a, const Rational& c) { return a *= c; }
  friend MultidiffOperator operator*(const Rational& c, MultidiffOperator a) { return a *= c; }
  friend bool operator==(const MultidiffOperator& a, const MultidiffOperator& b) {
    return a.dim_ == b.dim_ && a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const MultidiffOperator& o) const;

  int dim_ = 0;
  int arity_ = 0;
  std::map<SlotKey, Polynomial> terms_;
};

/// phi(f_0, ..., f_{slot-1}, psi(f_slot, ...), ...): inserts psi into one slot
/// of phi, expanding the outer derivatives by the Leibniz rule.
MultidiffOperator insert_at(const MultidiffOperator& phi, int slot, const MultidiffOperator& psi);

}  // namespace kstar
