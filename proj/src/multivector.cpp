#include "kstar/multivector.hpp"

#include <algorithm>

namespace kstar {

namespace {

// Sorts idx in place, returning the sign of the sorting permutation, or 0 if
// an index repeats.
int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (idx[i - 1] == idx[i]) return 0;
  }
  return sign;
}

// Odd-variable product xi_a * xi_b as (sign, sorted tuple); sign 0 on overlap.
std::pair<int, IndexTuple> wedge(const IndexTuple& a, const IndexTuple& b) {
  IndexTuple c(a);
  c.insert(c.end(), b.begin(), b.end());
  int s = sort_with_sign(c);
  return {s, std::move(c)};
}

IndexTuple erase_at(const IndexTuple& t, std::size_t pos) {
  IndexTuple r(t);
  r.erase(r.begin() + static_cast<std::ptrdiff_t>(pos));
  return r;
}

}  // namespace

MultivectorField::MultivectorField(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 1) throw std::invalid_argument("MultivectorField: dimension must be positive");
  if (degree < 0) throw std::invalid_argument("MultivectorField: negative degree");
}

MultivectorField MultivectorField::function(const Polynomial& f) {
  MultivectorField m(f.dim(), 0);
  m.add({}, f);
  return m;
}

MultivectorField MultivectorField::coordinate_vector(int dim, int i) {
  MultivectorField m(dim, 1);
  m.add({i}, Polynomial::constant(dim, 1));
  return m;
}

void MultivectorField::add(const std::vector<int>& idx, const Polynomial& coef) {
  if (static_cast<int>(idx.size()) != degree_) throw std::invalid_argument("MultivectorField::add: wrong degree");
  require_same_dim(dim_, coef.dim(), "MultivectorField::add");
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw std::out_of_range("MultivectorField::add: index out of range");
  }
  std::vector<int> sorted(idx);
  int sign = sort_with_sign(sorted);
  if (sign == 0 || coef.is_zero()) return;
  auto [it, inserted] = comps_.try_emplace(sorted, Polynomial(dim_));
  if (sign > 0) {
    it->second += coef;
  } else {
    it->second -= coef;
  }
  if (it->second.is_zero()) comps_.erase(it);
}

Polynomial MultivectorField::component(const IndexTuple& idx) const {
  auto it = comps_.find(idx);
  return it == comps_.end() ? Polynomial(dim_) : it->second;
}

Polynomial MultivectorField::bivector_entry(int i, int j) const {
  if (degree_ != 2) throw std::invalid_argument("bivector_entry: not a bivector");
  if (i == j) return Polynomial(dim_);
  if (i < j) return component({i, j});
  return -component({j, i});
}

Polynomial MultivectorField::as_function() const {
  if (degree_ != 0) throw std::invalid_argument("as_function: degree != 0");
  return component({});
}

bool MultivectorField::is_constant() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const auto& kv) { return kv.second.is_constant(); });
}

void MultivectorField::check_compatible(const MultivectorField& o) const {
  require_same_dim(dim_, o.dim_, "MultivectorField");
  if (degree_ != o.degree_) throw std::invalid_argument("MultivectorField: degree mismatch");
}

MultivectorField& MultivectorField::operator+=(const MultivectorField& o) {
  check_compatible(o);
  for (const auto& [idx, p] : o.comps_) add(idx, p);
  return *this;
}

MultivectorField& MultivectorField::operator-=(const MultivectorField& o) {
  check_compatible(o);
  for (const auto& [idx, p] : o.comps_) add(idx, -p);
  return *this;
}

MultivectorField& MultivectorField::operator*=(const Rational& c) {
  if (c == 0) {
    comps_.clear();
    return *this;
  }
  for (auto& [idx, p] : comps_) p *= c;
  return *this;
}

FormalMultivector::FormalMultivector(std::vector<MultivectorField> coeffs) : coefficients(std::move(coeffs)) {
  if (coefficients.empty()) throw std::invalid_argument("FormalMultivector: empty series");
  for (const auto& c : coefficients) {
    require_same_dim(coefficients.front().dim(), c.dim(), "FormalMultivector");
    if (c.degree() != coefficients.front().degree()) {
      throw std::invalid_argument("FormalMultivector: inhomogeneous degrees");
    }
  }
}

FormalMultivector FormalMultivector::zero(int dim, int degree, int order) {
  return FormalMultivector(std::vector<MultivectorField>(order + 1, MultivectorField(dim, degree)));
}

// Superfunction form with xi_i standing for d/dx_i:
//   [P, Q] = sum_i (P d<-/dxi_i)(d_i Q) - (d_i P)(d->/dxi_i Q)
// with right and left odd derivatives. It agrees with the wedge-of-vector-fields
// definition on degrees >= 1 and fixes the function cases.
MultivectorField schouten_bracket(const MultivectorField& a, const MultivectorField& b) {
  require_same_dim(a.dim(), b.dim(), "schouten_bracket");
  const int dim = a.dim();
  const int deg = a.degree() + b.degree() - 1;
  if (deg < 0) return MultivectorField(dim, 0);  // [f, g] = 0
  MultivectorField r(dim, deg);
  for (const auto& [ia, fa] : a.components()) {
    for (const auto& [ib, gb] : b.components()) {
      const std::size_t ka = ia.size();
      for (std::size_t pos = 0; pos < ka; ++pos) {
        Polynomial dg = gb.derivative(ia[pos]);
        if (dg.is_zero()) continue;
        auto [s, t] = wedge(erase_at(ia, pos), ib);
        if (s == 0) continue;
        int sign = ((ka - 1 - pos) % 2 == 0 ? 1 : -1) * s;
        r.add(t, sign > 0 ? fa * dg : -(fa * dg));
      }
      for (std::size_t pos = 0; pos < ib.size(); ++pos) {
        Polynomial df = fa.derivative(ib[pos]);
        if (df.is_zero()) continue;
        auto [s, t] = wedge(ia, erase_at(ib, pos));
        if (s == 0) continue;
        int sign = -((pos % 2 == 0) ? 1 : -1) * s;
        r.add(t, sign > 0 ? df * gb : -(df * gb));
      }
    }
  }
  return r;
}

MultivectorField lie_derivative(const MultivectorField& x, const MultivectorField& a) {
  if (x.degree() != 1) throw std::invalid_argument("lie_derivative: X must be a vector field");
  return schouten_bracket(x, a);
}

bool is_poisson(const MultivectorField& pi) {
  if (pi.degree() != 2) throw std::invalid_argument("is_poisson: degree != 2");
  return schouten_bracket(pi, pi).is_zero();
}

Polynomial poisson_apply(const MultivectorField& pi, const Polynomial& f, const Polynomial& g) {
  if (pi.degree() != 2) throw std::invalid_argument("poisson_apply: degree != 2");
  require_same_dim(pi.dim(), f.dim(), "poisson_apply");
  require_same_dim(pi.dim(), g.dim(), "poisson_apply");
  Polynomial r(pi.dim());
  for (const auto& [idx, c] : pi.components()) {
    const int i = idx[0], j = idx[1];
    r += c * (f.derivative(i) * g.derivative(j) - f.derivative(j) * g.derivative(i));
  }
  return r;
}

FormalMultivector formal_self_bracket(const FormalMultivector& pi_h) {
  const int n = pi_h.order();
  FormalMultivector out = FormalMultivector::zero(pi_h.dim(), 2 * pi_h.degree() - 1 < 0 ? 0 : 2 * pi_h.degree() - 1, n);
  for (int k = 0; k <= n; ++k) {
    for (int i = 0; i <= k; ++i) out.coefficients[k] += schouten_bracket(pi_h[i], pi_h[k - i]);
  }
  return out;
}

bool is_formal_poisson(const FormalMultivector& pi_h) {
  if (pi_h.degree() != 2) throw std::invalid_argument("is_formal_poisson: degree != 2");
  const auto br = formal_self_bracket(pi_h);
  return std::all_of(br.coefficients.begin(), br.coefficients.end(),
                     [](const MultivectorField& m) { return m.is_zero(); });
}

FormalMultivector apply_formal_diffeo(const FormalMultivector& x, const FormalMultivector& pi_h, int order) {
  if (x.degree() != 1) throw std::invalid_argument("apply_formal_diffeo: X must have degree 1");
  require_same_dim(x.dim(), pi_h.dim(), "apply_formal_diffeo");
  if (order < 0 || x.order() < order || pi_h.order() < order) {
    throw std::invalid_argument("apply_formal_diffeo: truncation order exceeds the inputs");
  }
  // term = (hbar^n / n!) L_X^n pi_h, as a series; accumulate until hbar^n exceeds order.
  FormalMultivector result = FormalMultivector::zero(pi_h.dim(), pi_h.degree(), order);
  std::vector<MultivectorField> term(pi_h.coefficients.begin(), pi_h.coefficients.begin() + order + 1);
  for (int n = 0; n <= order; ++n) {
    for (int k = n; k <= order; ++k) result.coefficients[k] += term[k - n] * (Rational(1) / factorial(n));
    // term <- L_X term, with X = sum hbar^a X_a.
    std::vector<MultivectorField> next(order + 1, MultivectorField(pi_h.dim(), pi_h.degree()));
    for (int k = 0; k + n + 1 <= order; ++k) {
      for (int a = 0; a <= k; ++a) next[k] += lie_derivative(x[a], term[k - a]);
    }
    term = std::move(next);
  }
  return result;
}

}  // namespace kstar
