// Exact weight values in the multiple-zeta basis, high-precision MZV
// numerics, and the weight-file format.
//
// Convention: zeta(s_1, ..., s_k) = sum_{0 < n_1 < ... < n_k} n_1^-s_1 ... n_k^-s_k
// with s_k > 1.
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kstar/graphs.hpp"
#include "kstar/polynomial.hpp"

namespace kstar {

using Real = boost::multiprecision::cpp_bin_float_100;
using Composition = std::vector<int>;

inline constexpr int kMaxMzvWeight = 12;
inline constexpr int kMaxMzvDigits = 90;

int composition_weight(const Composition& s);
/// Empty, or positive parts with the last part > 1.
bool is_admissible(const Composition& s);

/// Quasi-shuffle (stuffle) product: zeta(a) zeta(b) = sum_c m_c zeta(c).
std::map<Composition, long long> stuffle(const Composition& a, const Composition& b);

/// A real number sum_s r_s zeta(s)/pi^|s| with rational r_s; the empty
/// composition carries the rational part. Entries of odd weight are
/// rejected: in the (i pi)-normalized basis they would be imaginary.
class WeightValue {
 public:
  WeightValue() = default;
  static WeightValue rational(const Rational& r);
  /// From coefficients q_s of zeta(s)/(i pi)^|s|; r_s = q_s (-1)^{|s|/2}.
  static WeightValue from_ipi_basis(const std::map<Composition, Rational>& q);

  /// Adds r * zeta(s)/pi^|s|. Throws std::invalid_argument for inadmissible
  /// or odd-weight s.
  void add(const Composition& s, const Rational& r);

  const std::map<Composition, Rational>& terms() const { return terms_; }
  Rational coefficient(const Composition& s) const;
  /// Coefficient of zeta(s)/(i pi)^|s|.
  Rational ipi_coefficient(const Composition& s) const;
  bool is_rational() const;
  Rational rational_part() const { return coefficient({}); }
  int max_weight() const;

  WeightValue& operator+=(const WeightValue& o);
  WeightValue& operator*=(const Rational& c);
  friend WeightValue operator+(WeightValue a, const WeightValue& b) { return a += b; }
  friend WeightValue operator*(WeightValue a, const Rational& c) { return a *= c; }
  friend WeightValue operator*(const Rational& c, WeightValue a) { return a *= c; }
  friend bool operator==(const WeightValue&, const WeightValue&) = default;

 private:
  std::map<Composition, Rational> terms_;
};

class UnknownMzvError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// zeta(s) to about 100 significant digits. Computed on first use and cached;
/// thread-safe. Throws UnknownMzvError above kMaxMzvWeight.
Real mzv(const Composition& s);

/// Numeric value of w. digits (<= kMaxMzvDigits) is the requested number of
/// significant digits; the working precision always exceeds it.
Real mzv_eval(const WeightValue& w, int digits = 30);

/// Fixed-point or scientific text with `digits` significant digits.
std::string format_real(const Real& x, int digits);

/// "r + c*zeta(3,3)/pi^6 - ..." (real, sign-folded form).
std::string format_weight_value(const WeightValue& w);

class WeightFileError : public std::runtime_error {
 public:
  WeightFileError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line;
  std::size_t column;
  std::string detail;
};

/// Parses the value part of a weight-file record, e.g.
/// "-1/6048 + 9/128*zeta(3)^2/pi^6". Products of zetas are expanded by the
/// stuffle product; the power of pi must equal the total zeta weight.
WeightValue parse_weight_value(std::string_view text);

/// One record per line: "<graph encoding> | <value>"; '#' starts a comment.
std::vector<std::pair<AdmissibleGraph, WeightValue>> parse_weight_file(std::string_view text);
std::string format_weight_file(const std::vector<std::pair<AdmissibleGraph, WeightValue>>& records);

}  // namespace kstar
