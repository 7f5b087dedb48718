#include "kstar/multidiff.hpp"

#include <algorithm>
#include <functional>

namespace kstar {

MultidiffOperator::MultidiffOperator(int dim, int arity) : dim_(dim), arity_(arity) {
  if (dim < 1) throw std::invalid_argument("MultidiffOperator: dimension must be positive");
  if (arity < 1) throw std::invalid_argument("MultidiffOperator: arity must be >= 1");
}

MultidiffOperator MultidiffOperator::multiplication(int dim) {
  MultidiffOperator m(dim, 2);
  m.add_term({Exponents(dim, 0), Exponents(dim, 0)}, Polynomial::constant(dim, 1));
  return m;
}

MultidiffOperator MultidiffOperator::identity(int dim) {
  MultidiffOperator m(dim, 1);
  m.add_term({Exponents(dim, 0)}, Polynomial::constant(dim, 1));
  return m;
}

MultidiffOperator MultidiffOperator::derivative(const Polynomial& c, const Exponents& multi) {
  MultidiffOperator m(c.dim(), 1);
  m.add_term({multi}, c);
  return m;
}

Polynomial MultidiffOperator::coefficient(const SlotKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Polynomial(dim_) : it->second;
}

void MultidiffOperator::add_term(const SlotKey& key, const Polynomial& coef) {
  if (static_cast<int>(key.size()) != arity_) throw std::invalid_argument("MultidiffOperator: key arity mismatch");
  require_same_dim(dim_, coef.dim(), "MultidiffOperator::add_term");
  for (const auto& k : key) {
    if (static_cast<int>(k.size()) != dim_) throw std::invalid_argument("MultidiffOperator: multi-index length != dim");
  }
  if (coef.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, Polynomial(dim_));
  it->second += coef;
  if (it->second.is_zero()) terms_.erase(it);
}

int MultidiffOperator::max_total_order() const {
  int m = 0;
  for (const auto& [key, c] : terms_) {
    int s = 0;
    for (const auto& k : key) s += total_order(k);
    m = std::max(m, s);
  }
  return m;
}

Polynomial MultidiffOperator::apply(const std::vector<Polynomial>& args) const {
  if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("MultidiffOperator::apply: wrong arity");
  for (const auto& a : args) require_same_dim(dim_, a.dim(), "MultidiffOperator::apply");
  Polynomial r(dim_);
  for (const auto& [key, c] : terms_) {
    Polynomial t = c;
    for (int s = 0; s < arity_ && !t.is_zero(); ++s) t = t * args[s].derivative(key[s]);
    r += t;
  }
  return r;
}

MultidiffOperator MultidiffOperator::transposed() const {
  if (arity_ != 2) throw std::invalid_argument("transposed: arity != 2");
  MultidiffOperator r(dim_, 2);
  for (const auto& [key, c] : terms_) r.add_term({key[1], key[0]}, c);
  return r;
}

void MultidiffOperator::check_compatible(const MultidiffOperator& o) const {
  require_same_dim(dim_, o.dim_, "MultidiffOperator");
  if (arity_ != o.arity_) throw std::invalid_argument("MultidiffOperator: arity mismatch");
}

MultidiffOperator& MultidiffOperator::operator+=(const MultidiffOperator& o) {
  check_compatible(o);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

MultidiffOperator& MultidiffOperator::operator-=(const MultidiffOperator& o) {
  check_compatible(o);
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

MultidiffOperator& MultidiffOperator::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

namespace {

// Enumerates every way of writing `total` as an ordered sum of `parts`
// multi-indices, calling visit(parts, multinomial coefficient).
void distribute(const Exponents& total, int parts,
                const std::function<void(const std::vector<Exponents>&, const Rational&)>& visit) {
  const int dim = static_cast<int>(total.size());
  std::vector<Exponents> split(parts, Exponents(dim, 0));
  std::function<void(int, int, int, Rational)> rec = [&](int var, int part, int remaining, Rational coef) {
    if (var == dim) {
      visit(split, coef);
      return;
    }
    if (part == parts - 1) {
      split[part][var] = remaining;
      rec(var + 1, 0, var + 1 < dim ? total[var + 1] : 0, coef / factorial(remaining));
      split[part][var] = 0;
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      split[part][var] = k;
      rec(var, part + 1, remaining - k, coef / factorial(k));
    }
    split[part][var] = 0;
  };
  Rational top = 1;
  for (int v : total) top *= factorial(v);
  rec(0, 0, dim > 0 ? total[0] : 0, top);
}

}  // namespace

MultidiffOperator insert_at(const MultidiffOperator& phi, int slot, const MultidiffOperator& psi) {
  require_same_dim(phi.dim(), psi.dim(), "insert_at");
  if (slot < 0 || slot >= phi.arity()) throw std::out_of_range("insert_at: slot out of range");
  const int dim = phi.dim();
  const int q = psi.arity();
  MultidiffOperator r(dim, phi.arity() + q - 1);
  for (const auto& [kphi, cphi] : phi.terms()) {
    const Exponents& outer = kphi[slot];
    for (const auto& [kpsi, cpsi] : psi.terms()) {
      // split outer = A (onto psi's coefficient) + B_0 + ... + B_{q-1}
      distribute(outer, q + 1, [&](const std::vector<Exponents>& parts, const Rational& mult) {
        Polynomial dc = cpsi.derivative(parts[0]);
        if (dc.is_zero()) return;
        SlotKey key;
        key.reserve(r.arity());
        for (int s = 0; s < slot; ++s) key.push_back(kphi[s]);
        for (int j = 0; j < q; ++j) key.push_back(kpsi[j] + parts[j + 1]);
        for (int s = slot + 1; s < phi.arity(); ++s) key.push_back(kphi[s]);
        r.add_term(key, (cphi * dc) * mult);
      });
    }
  }
  return r;
}

}  // namespace kstar
