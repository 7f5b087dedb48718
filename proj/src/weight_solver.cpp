#include "kstar/weight_solver.hpp"

#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "kstar/hochschild.hpp"
#include "kstar/star.hpp"
#include "kstar/text_format.hpp"
#include "kstar/weight_table.hpp"

namespace kstar {

WeightSystemError::WeightSystemError(const std::string& msg, std::size_t r, std::size_t u)
    : std::runtime_error(msg + " (rank " + std::to_string(r) + " of " + std::to_string(u) + " unknowns)"),
      rank(r),
      unknowns(u) {}

std::vector<MultivectorField> default_test_structures() {
  return {parse_multivector("dim 2; d/dx ^ d/dy"), parse_multivector("dim 2; x * d/dx ^ d/dy"),
          parse_multivector("dim 3; x * d/dy ^ d/dz + y * d/dz ^ d/dx + z * d/dx ^ d/dy")};
}

std::vector<GraphOrbit> graph_orbits(int n) {
  const auto graphs = enumerate_graphs(n);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < graphs.size(); ++i) index[encode(graphs[i])] = i;
  std::vector<int> orbit_of(graphs.size(), -1), sign_of(graphs.size(), 0);
  std::vector<GraphOrbit> orbits;
  for (std::size_t start = 0; start < graphs.size(); ++start) {
    if (orbit_of[start] >= 0) continue;
    const int id = static_cast<int>(orbits.size());
    GraphOrbit orb;
    orb.representative = graphs[start];
    std::deque<std::size_t> queue{start};
    orbit_of[start] = id;
    sign_of[start] = 1;
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      orb.members.emplace_back(graphs[cur], sign_of[cur]);
      std::vector<std::pair<AdmissibleGraph, int>> next;
      for (int k = 1; k <= n; ++k) next.emplace_back(swap_edges(graphs[cur], k), -1);
      for (int k = 1; k < n; ++k) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 1);
        std::swap(perm[k - 1], perm[k]);
        next.emplace_back(relabel(graphs[cur], perm), 1);
      }
      for (const auto& [h, s] : next) {
        const std::size_t j = index.at(encode(h));
        const int sign = sign_of[cur] * s;
        if (orbit_of[j] < 0) {
          orbit_of[j] = id;
          sign_of[j] = sign;
          queue.push_back(j);
        } else if (sign_of[j] != sign) {
          orb.forced_zero = true;
        }
      }
    }
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

namespace {

Rational floor_q(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

Rational ceil_q(const Rational& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(c);
}

// Simplest rational in the closed interval [a, b], 0 < a <= b.
Rational simplest_positive(const Rational& a, const Rational& b) {
  const Rational c = ceil_q(a);
  if (c <= b) return c;
  const Rational fl = floor_q(a);
  return fl + 1 / simplest_positive(1 / (b - fl), 1 / (a - fl));
}

struct LinearSystem {
  std::vector<std::vector<Rational>> rows;  // coefficients then right-hand side
};

}  // namespace

Rational simplest_rational_between(double lo, double hi) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("simplest_rational_between: empty or non-finite interval");
  }
  const Rational a(lo), b(hi);
  if (a <= 0 && b >= 0) return 0;
  if (b < 0) return -simplest_positive(-b, -a);
  return simplest_positive(a, b);
}

SolverResult solve_weights_by_associativity(int n, const SolverOptions& opts) {
  if (n < 1) throw std::invalid_argument("solve_weights_by_associativity: order must be >= 1");
  SolverResult res;
  res.order = n;
  res.orbits = graph_orbits(n);
  const std::size_t n_orb = res.orbits.size();
  const auto structures = opts.structures.empty() ? default_test_structures() : opts.structures;

  // Unknowns: orbits that are not forced to vanish.
  std::vector<int> column(n_orb, -1);
  std::vector<std::size_t> orbit_of_column;
  for (std::size_t o = 0; o < n_orb; ++o) {
    if (!res.orbits[o].forced_zero) {
      column[o] = static_cast<int>(orbit_of_column.size());
      orbit_of_column.push_back(o);
    }
  }
  const std::size_t m = orbit_of_column.size();
  res.unknowns = m;

  LinearSystem sys;
  const Rational inv_fact = Rational(1) / factorial(n);
  for (const auto& pi : structures) {
    if (!is_poisson(pi)) throw std::invalid_argument("solve_weights_by_associativity: test structure is not Poisson");
    const int d = pi.dim();
    const auto mu = MultidiffOperator::multiplication(d);
    // Known lower orders.
    std::vector<MultidiffOperator> lower{mu};
    for (int k = 1; k < n; ++k) {
      MultidiffOperator bk(d, 2);
      for (const auto& g : enumerate_graphs(k)) {
        const auto op = build_operator(g, pi);
        if (op.is_zero()) continue;
        const auto w = weight_exact(g);
        if (!w || !w->is_rational()) {
          throw MissingWeightError(g, "lower-order weight needed by the associativity system");
        }
        bk += op * w->rational_part();
      }
      bk *= Rational(1) / factorial(k);
      lower.push_back(bk);
    }
    // Constant part: sum over i + j = n with 0 < i, j < n.
    MultidiffOperator constant(d, 3);
    for (int i = 1; i < n; ++i) {
      constant += insert_at(lower[i], 0, lower[n - i]);
      constant -= insert_at(lower[i], 1, lower[n - i]);
    }
    // Linear part per unknown.
    std::vector<MultidiffOperator> linear;
    for (std::size_t c = 0; c < m; ++c) {
      MultidiffOperator r(d, 2);
      for (const auto& [g, s] : res.orbits[orbit_of_column[c]].members) {
        const auto op = build_operator(g, pi);
        if (!op.is_zero()) r += op * Rational(s);
      }
      r *= inv_fact;
      MultidiffOperator l = insert_at(r, 0, mu) - insert_at(r, 1, mu) + insert_at(mu, 0, r) - insert_at(mu, 1, r);
      linear.push_back(std::move(l));
    }
    // One scalar equation per (slot key, coefficient monomial).
    std::map<std::pair<SlotKey, Exponents>, std::vector<Rational>> eqs;
    auto row_for = [&](const SlotKey& key, const Exponents& e) -> std::vector<Rational>& {
      auto [it, ins] = eqs.try_emplace({key, e}, std::vector<Rational>(m + 1, Rational(0)));
      return it->second;
    };
    for (std::size_t c = 0; c < m; ++c) {
      for (const auto& [key, coef] : linear[c].terms()) {
        for (const auto& [e, v] : coef.terms()) row_for(key, e)[c] += v;
      }
    }
    for (const auto& [key, coef] : constant.terms()) {
      for (const auto& [e, v] : coef.terms()) row_for(key, e)[m] -= v;
    }
    for (auto& [k, row] : eqs) sys.rows.push_back(std::move(row));
  }
  res.equations = sys.rows.size();

  // Reduced row echelon form over Q.
  auto& A = sys.rows;
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < A.size(); ++c) {
    std::size_t p = r;
    while (p < A.size() && A[p][c] == 0) ++p;
    if (p == A.size()) continue;
    std::swap(A[r], A[p]);
    const Rational inv = 1 / A[r][c];
    for (auto& v : A[r]) v *= inv;
    for (std::size_t q = 0; q < A.size(); ++q) {
      if (q == r || A[q][c] == 0) continue;
      const Rational f = A[q][c];
      for (std::size_t k = c; k <= m; ++k) A[q][k] -= f * A[r][k];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  res.rank = r;
  for (std::size_t q = r; q < A.size(); ++q) {
    if (A[q][m] != 0) throw WeightSystemError("associativity system is inconsistent", res.rank, m);
  }
  std::ostringstream diag;
  diag << "order " << n << ": " << res.equations << " equations, " << m << " unknown orbit weights, rank " << res.rank;
  res.diagnostics.push_back(diag.str());

  std::vector<bool> is_pivot(m, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<Rational> value(m, Rational(0));
  for (std::size_t c = 0; c < m; ++c) {
    if (is_pivot[c]) continue;
    const std::size_t o = orbit_of_column[c];
    res.free_orbits.push_back(o);
    if (opts.pin_samples == 0) {
      throw WeightSystemError("associativity leaves orbit of \"" + encode(res.orbits[o].representative) +
                                  "\" undetermined and Monte-Carlo pinning is disabled",
                              res.rank, m);
    }
    const auto est = weight_mc(res.orbits[o].representative, opts.pin_samples, opts.seed + 7919 * (o + 1), opts.mc);
    res.pin_estimates.push_back(est);
    value[c] = simplest_rational_between(est.mean - 3 * est.standard_error, est.mean + 3 * est.standard_error);
    std::ostringstream os;
    os << "free orbit \"" << encode(res.orbits[o].representative) << "\": MC " << est.mean << " +- "
       << est.standard_error << " pinned to " << value[c].get_str();
    res.diagnostics.push_back(os.str());
  }
  for (std::size_t i = 0; i < pivot_col.size(); ++i) {
    Rational v = A[i][m];
    for (std::size_t c = 0; c < m; ++c) {
      if (!is_pivot[c]) v -= A[i][c] * value[c];
    }
    value[pivot_col[i]] = v;
  }

  res.orbit_weights.assign(n_orb, Rational(0));
  for (std::size_t c = 0; c < m; ++c) res.orbit_weights[orbit_of_column[c]] = value[c];
  for (std::size_t o = 0; o < n_orb; ++o) {
    for (const auto& [g, s] : res.orbits[o].members) res.weights[encode(g)] = res.orbit_weights[o] * s;
  }

  if (opts.check_samples > 0) {
    for (std::size_t o = 0; o < n_orb; ++o) {
      const auto est = weight_mc(res.orbits[o].representative, opts.check_samples, opts.seed + 104729 * (o + 1), opts.mc);
      res.check_estimates.push_back(est);
      const double exact = res.orbit_weights[o].get_d();
      if (std::abs(est.mean - exact) > 3 * est.standard_error) {
        res.consistent_with_mc = false;
        std::ostringstream os;
        os << "orbit \"" << encode(res.orbits[o].representative) << "\": exact " << res.orbit_weights[o].get_str()
           << " vs MC " << est.mean << " +- " << est.standard_error;
        res.diagnostics.push_back(os.str());
      }
    }
  }
  return res;
}

}  // namespace kstar
