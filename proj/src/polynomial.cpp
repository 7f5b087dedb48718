#include "kstar/polynomial.hpp"

#include <algorithm>
#include <numeric>

namespace kstar {

Rational factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

Rational falling_factorial(int d, int k) {
  if (k > d) return 0;
  mpz_class r = 1;
  for (int i = 0; i < k; ++i) r *= d - i;
  return Rational(r);
}

Exponents operator+(const Exponents& a, const Exponents& b) {
  Exponents r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

int total_order(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

Polynomial::Polynomial(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("Polynomial: dimension must be positive");
}

Polynomial Polynomial::constant(int dim, const Rational& c) {
  Polynomial p(dim);
  p.add_term(Exponents(dim, 0), c);
  return p;
}

Polynomial Polynomial::variable(int dim, int index) {
  if (index < 0 || index >= dim) throw std::out_of_range("Polynomial::variable: index out of range");
  Exponents e(dim, 0);
  e[index] = 1;
  return monomial(std::move(e));
}

Polynomial Polynomial::monomial(Exponents exps, const Rational& c) {
  Polynomial p(static_cast<int>(exps.size()));
  for (int v : exps) {
    if (v < 0) throw std::invalid_argument("Polynomial::monomial: negative exponent");
  }
  p.add_term(exps, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_order(terms_.begin()->first) == 0);
}

Rational Polynomial::constant_term() const { return coefficient(Exponents(dim_, 0)); }

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_order(e));
  return d;
}

Rational Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponents& e, const Rational& coef) {
  if (static_cast<int>(e.size()) != dim_) throw std::invalid_argument("Polynomial: exponent length != dim");
  // mpq_class(num, den) is not reduced; GMP arithmetic assumes reduced operands.
  Rational c = coef;
  c.canonicalize();
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::derivative(int var, int times) const {
  Exponents multi(dim_, 0);
  multi.at(var) = times;
  return derivative(multi);
}

Polynomial Polynomial::derivative(const Exponents& multi) const {
  Polynomial r(dim_);
  for (const auto& [e, c] : terms_) {
    Rational coef = c;
    Exponents ne(e);
    bool zero = false;
    for (int v = 0; v < dim_; ++v) {
      if (multi[v] > e[v]) {
        zero = true;
        break;
      }
      coef *= falling_factorial(e[v], multi[v]);
      ne[v] -= multi[v];
    }
    if (!zero) r.add_term(ne, coef);
  }
  return r;
}

void Polynomial::check_dim(const Polynomial& o) const { require_same_dim(dim_, o.dim_, "Polynomial"); }

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_dim(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_dim(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& coef) {
  Rational c = coef;
  c.canonicalize();
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_dim(b);
  Polynomial r(a.dim_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  }
  return r;
}

Polynomial Polynomial::pow(int k) const {
  Polynomial r = constant(dim_, 1);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != dim_) throw std::invalid_argument("Polynomial::evaluate: bad point");
  std::vector<Rational> pt(point);
  for (auto& q : pt) q.canonicalize();
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int v = 0; v < dim_; ++v) {
      for (int k = 0; k < e[v]; ++k) t *= pt[v];
    }
    sum += t;
  }
  return sum;
}

namespace {
void fill_monomials(int dim, int var, int remaining, Exponents& cur, std::vector<Exponents>& out) {
  if (var == dim) {
    out.push_back(cur);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    cur[var] = k;
    fill_monomials(dim, var + 1, remaining - k, cur, out);
  }
  cur[var] = 0;
}
}  // namespace

std::vector<Exponents> monomials_up_to(int dim, int max_degree) {
  std::vector<Exponents> out;
  Exponents cur(dim, 0);
  fill_monomials(dim, 0, max_degree, cur, out);
  std::stable_sort(out.begin(), out.end(),
                   [](const Exponents& a, const Exponents& b) { return total_order(a) < total_order(b); });
  return out;
}

}  // namespace kstar
