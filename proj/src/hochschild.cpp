#include "kstar/hochschild.hpp"

#include <algorithm>
#include <numeric>

namespace kstar {

namespace {

int sign_pow(int e) { return (e % 2 == 0) ? 1 : -1; }

Exponents unit(int dim, int i) {
  Exponents e(dim, 0);
  e[i] = 1;
  return e;
}

int permutation_sign(const std::vector<int>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] > p[j]) s = -s;
    }
  }
  return s;
}

Rational multi_binomial(const Exponents& k, const Exponents& a) {
  Rational r = 1;
  for (std::size_t v = 0; v < k.size(); ++v) r *= factorial(k[v]) / (factorial(a[v]) * factorial(k[v] - a[v]));
  return r;
}

}  // namespace

FormalBidiffSeries::FormalBidiffSeries(std::vector<MultidiffOperator> ops) : terms(std::move(ops)) {
  if (terms.empty()) throw std::invalid_argument("FormalBidiffSeries: empty series");
  for (const auto& t : terms) {
    require_same_dim(terms.front().dim(), t.dim(), "FormalBidiffSeries");
    if (t.arity() != 2) throw std::invalid_argument("FormalBidiffSeries: operators must have arity 2");
  }
}

FormalBidiffSeries FormalBidiffSeries::undeformed(int dim, int order) {
  std::vector<MultidiffOperator> ops(order + 1, MultidiffOperator(dim, 2));
  ops[0] = MultidiffOperator::multiplication(dim);
  return FormalBidiffSeries(std::move(ops));
}

GaugeSeries::GaugeSeries(std::vector<MultidiffOperator> ops) : terms(std::move(ops)) {
  if (terms.empty()) throw std::invalid_argument("GaugeSeries: empty series");
  for (const auto& t : terms) {
    require_same_dim(terms.front().dim(), t.dim(), "GaugeSeries");
    if (t.arity() != 1) throw std::invalid_argument("GaugeSeries: operators must have arity 1");
  }
  if (!(terms[0] == MultidiffOperator::identity(terms[0].dim()))) {
    throw std::invalid_argument("GaugeSeries: T_0 must be the identity");
  }
}

GaugeSeries GaugeSeries::identity(int dim, int order) {
  std::vector<MultidiffOperator> ops(order + 1, MultidiffOperator(dim, 1));
  ops[0] = MultidiffOperator::identity(dim);
  return GaugeSeries(std::move(ops));
}

bool GaugeSeries::vanishes_on_constants() const {
  const Exponents zero(dim(), 0);
  for (std::size_t n = 1; n < terms.size(); ++n) {
    if (!terms[n].coefficient({zero}).is_zero()) return false;
  }
  return true;
}

GaugeSeries GaugeSeries::inverse() const {
  std::vector<MultidiffOperator> d(terms.size(), MultidiffOperator(dim(), 1));
  d[0] = MultidiffOperator::identity(dim());
  for (std::size_t n = 1; n < terms.size(); ++n) {
    for (std::size_t m = 1; m <= n; ++m) d[n] -= insert_at(terms[m], 0, d[n - m]);
  }
  return GaugeSeries(std::move(d));
}

MultidiffOperator gerstenhaber_compose(const MultidiffOperator& phi, const MultidiffOperator& psi) {
  require_same_dim(phi.dim(), psi.dim(), "gerstenhaber_compose");
  const int m1 = phi.degree(), m2 = psi.degree();
  MultidiffOperator r(phi.dim(), m1 + m2 + 1);
  for (int i = 0; i <= m1; ++i) {
    auto term = insert_at(phi, i, psi);
    if (sign_pow(m2 * i) > 0) {
      r += term;
    } else {
      r -= term;
    }
  }
  return r;
}

MultidiffOperator gerstenhaber_bracket(const MultidiffOperator& phi, const MultidiffOperator& psi) {
  auto r = gerstenhaber_compose(phi, psi);
  auto back = gerstenhaber_compose(psi, phi);
  if (sign_pow(phi.degree() * psi.degree()) > 0) {
    r -= back;
  } else {
    r += back;
  }
  return r;
}

MultidiffOperator hochschild_d(const MultidiffOperator& phi) {
  return gerstenhaber_bracket(phi, MultidiffOperator::multiplication(phi.dim())) * Rational(-1);
}

MultidiffOperator hkr(const MultivectorField& a) {
  const int k = a.degree();
  if (k < 1) throw std::invalid_argument("hkr: degree-0 multivectors are not in the HKR image");
  const int dim = a.dim();
  MultidiffOperator r(dim, k);
  const Rational norm = Rational(1) / factorial(k);
  std::vector<int> perm(k);
  for (const auto& [idx, g] : a.components()) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      SlotKey key;
      for (int s = 0; s < k; ++s) key.push_back(unit(dim, idx[perm[s]]));
      r.add_term(key, g * (norm * permutation_sign(perm)));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return r;
}

std::vector<MultidiffOperator> associativity_residuals(const FormalBidiffSeries& b) {
  std::vector<MultidiffOperator> out;
  for (int n = 0; n <= b.order(); ++n) {
    MultidiffOperator r(b.dim(), 3);
    for (int i = 0; i <= n; ++i) {
      const int j = n - i;
      r += insert_at(b[i], 0, b[j]);
      r -= insert_at(b[i], 1, b[j]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool is_associative_deformation(const FormalBidiffSeries& b) {
  if (!(b[0] == MultidiffOperator::multiplication(b.dim()))) {
    throw std::invalid_argument("is_associative_deformation: B_0 must be the pointwise product");
  }
  const auto res = associativity_residuals(b);
  return std::all_of(res.begin(), res.end(), [](const MultidiffOperator& r) { return r.is_zero(); });
}

FormalBidiffSeries gauge_transform(const GaugeSeries& t, const FormalBidiffSeries& b) {
  require_same_dim(t.dim(), b.dim(), "gauge_transform");
  const int n_max = std::min(t.order(), b.order());
  const GaugeSeries d = t.inverse();
  std::vector<MultidiffOperator> c(n_max + 1, MultidiffOperator(b.dim(), 2));
  for (int bi = 0; bi <= n_max; ++bi) {
    for (int ci = 0; bi + ci <= n_max; ++ci) {
      auto left = ci == 0 ? b[bi] : insert_at(b[bi], 0, d.terms[ci]);
      for (int ei = 0; bi + ci + ei <= n_max; ++ei) {
        auto inner = ei == 0 ? left : insert_at(left, 1, d.terms[ei]);
        for (int ai = 0; ai + bi + ci + ei <= n_max; ++ai) {
          c[ai + bi + ci + ei] += ai == 0 ? inner : insert_at(t.terms[ai], 0, inner);
        }
      }
    }
  }
  return FormalBidiffSeries(std::move(c));
}

MultidiffOperator symmetric_part(const MultidiffOperator& b) {
  return (b + b.transposed()) * Rational(1, 2);
}

MultidiffOperator skew_part(const MultidiffOperator& b) {
  return (b - b.transposed()) * Rational(1, 2);
}

namespace {

class MonomialGauge {
 public:
  explicit MonomialGauge(const MultidiffOperator& b1_plus) : bp_(b1_plus), dim_(b1_plus.dim()) {}

  Polynomial operator()(const Exponents& alpha) {
    if (auto it = memo_.find(alpha); it != memo_.end()) return it->second;
    Polynomial value = compute(alpha);
    memo_.emplace(alpha, value);
    return value;
  }

 private:
  Polynomial compute(const Exponents& alpha) {
    if (total_order(alpha) <= 1) return Polynomial(dim_);  // vanishes on constants and linear functions
    int last = dim_ - 1;
    while (alpha[last] == 0) --last;
    Exponents rest(alpha);
    rest[last] = 0;
    if (total_order(rest) == 0) {
      // single variable: T(x^n) = T(x^{n-1}) x - B^+(x^{n-1}, x)
      Exponents lower(alpha);
      lower[last] -= 1;
      const Polynomial x = Polynomial::variable(dim_, last);
      const Polynomial xl = Polynomial::monomial(lower);
      return (*this)(lower) * x - bp_.apply({xl, x});
    }
    // split x_last^k * p: T = T(x^k) p + x^k T(p) - B^+(x^k, p)
    Exponents power(dim_, 0);
    power[last] = alpha[last];
    const Polynomial xk = Polynomial::monomial(power);
    const Polynomial p = Polynomial::monomial(rest);
    return (*this)(power) * p + xk * (*this)(rest) - bp_.apply({xk, p});
  }

  const MultidiffOperator& bp_;
  int dim_;
  std::map<Exponents, Polynomial> memo_;
};

}  // namespace

Polynomial symmetrizing_gauge_on_monomial(const MultidiffOperator& b1_plus, const Exponents& alpha) {
  MonomialGauge gauge(b1_plus);
  return gauge(alpha);
}

MultidiffOperator operator_from_monomial_values(int dim, int max_order,
                                                const std::function<Polynomial(const Exponents&)>& values) {
  // c_K = (1/K!) sum_{A <= K} binom(K, A) (-x)^{K-A} T(x^A)
  MultidiffOperator r(dim, 1);
  const auto all = monomials_up_to(dim, max_order);
  std::map<Exponents, Polynomial> cache;
  for (const auto& a : all) cache.emplace(a, values(a));
  for (const auto& k : all) {
    Polynomial c(dim);
    for (const auto& a : all) {
      bool below = true;
      for (int v = 0; v < dim; ++v) below = below && a[v] <= k[v];
      if (!below) continue;
      Exponents diff(dim);
      for (int v = 0; v < dim; ++v) diff[v] = k[v] - a[v];
      const Rational coef = multi_binomial(k, a) * sign_pow(total_order(diff));
      c += Polynomial::monomial(diff, coef) * cache.at(a);
    }
    Rational kfact = 1;
    for (int v : k) kfact *= factorial(v);
    r.add_term({k}, c * (Rational(1) / kfact));
  }
  return r;
}

Symmetrization symmetrize_order1(const FormalBidiffSeries& b) {
  if (b.order() < 1) throw std::invalid_argument("symmetrize_order1: series has no order-one term");
  const int dim = b.dim();
  const MultidiffOperator& b1 = b[1];
  if (!hochschild_d(b1).is_zero()) {
    throw CocycleError("symmetrize_order1: B_1 violates the cocycle identity; the monomial recursion is inconsistent");
  }
  const Exponents zero(dim, 0);
  MultidiffOperator t1(dim, 1);
  MultidiffOperator reduced = b1;
  // order-zero part a_0 f g is removed by T_1 f = a_0 f
  if (Polynomial a0 = b1.coefficient({zero, zero}); !a0.is_zero()) {
    t1.add_term({zero}, a0);
    reduced.add_term({zero, zero}, -a0);
  }
  const MultidiffOperator b_plus = symmetric_part(reduced);
  if (!b_plus.is_zero()) {
    MonomialGauge gauge(b_plus);
    t1 += operator_from_monomial_values(dim, b_plus.max_total_order(),
                                        [&](const Exponents& a) { return gauge(a); });
  }
  std::vector<MultidiffOperator> ts(b.order() + 1, MultidiffOperator(dim, 1));
  ts[0] = MultidiffOperator::identity(dim);
  ts[1] = t1;
  GaugeSeries t(std::move(ts));
  return {t1, gauge_transform(t, b)};
}

MultivectorField extract_b1_minus(const FormalBidiffSeries& b) {
  if (b.order() < 1) throw std::invalid_argument("extract_b1_minus: series has no order-one term");
  const int dim = b.dim();
  const MultidiffOperator skew = skew_part(b[1]);
  MultivectorField p(dim, 2);
  for (const auto& [key, c] : skew.terms()) {
    if (total_order(key[0]) != 1 || total_order(key[1]) != 1) {
      throw NotABivectorError("extract_b1_minus: skew part of B_1 has terms beyond first order in each slot");
    }
    const int i = static_cast<int>(std::find(key[0].begin(), key[0].end(), 1) - key[0].begin());
    const int j = static_cast<int>(std::find(key[1].begin(), key[1].end(), 1) - key[1].begin());
    if (i < j) p.add({i, j}, c);
  }
  return p;
}

}  // namespace kstar
