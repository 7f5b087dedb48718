#include "kstar/star.hpp"

#include <functional>

#include "kstar/text_format.hpp"
#include "parallel.hpp"

namespace kstar {

MissingWeightError::MissingWeightError(const AdmissibleGraph& g, const std::string& why)
    : std::runtime_error("no usable weight for graph \"" + encode(g) + "\": " + why), graph(g) {}

MultivectorField StarProduct::effective_pi() const { return dirac ? pi * Rational(1, 2) : pi; }

MultidiffOperator build_operator(const AdmissibleGraph& g, const MultivectorField& pi) {
  if (pi.degree() != 2) throw std::invalid_argument("build_operator: pi must be a bivector");
  if (!validate(g)) throw std::invalid_argument("build_operator: graph is not admissible");
  const int d = pi.dim();
  const int n = g.order;
  MultidiffOperator op(d, 2);

  std::vector<std::vector<Polynomial>> entry(d, std::vector<Polynomial>(d));
  std::vector<std::pair<int, int>> nonzero;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      entry[i][j] = pi.bivector_entry(i, j);
      if (!entry[i][j].is_zero()) nonzero.emplace_back(i, j);
    }
  }
  // Derivatives each vertex receives, independent of its own labels.
  std::vector<int> in_degree(n, 0);
  for (const auto& t : g.targets) {
    for (Vertex v : t) {
      if (v > 0) ++in_degree[v - 1];
    }
  }
  // Prune label pairs whose coefficient cannot survive the incoming derivatives.
  std::vector<std::vector<std::pair<int, int>>> choices(n);
  for (int k = 0; k < n; ++k) {
    for (const auto& [i, j] : nonzero) {
      if (entry[i][j].total_degree() >= in_degree[k]) choices[k].emplace_back(i, j);
    }
    if (choices[k].empty()) return op;
  }

  std::vector<std::pair<int, int>> labels(n);
  std::function<void(int)> rec = [&](int k) {
    if (k < n) {
      for (const auto& c : choices[k]) {
        labels[k] = c;
        rec(k + 1);
      }
      return;
    }
    std::vector<Exponents> in(n, Exponents(d, 0));
    Exponents fl(d, 0), gr(d, 0);
    for (int v = 0; v < n; ++v) {
      const int lab[2] = {labels[v].first, labels[v].second};
      for (int e = 0; e < 2; ++e) {
        const Vertex t = g.targets[v][e];
        if (t == kLeft) {
          ++fl[lab[e]];
        } else if (t == kRight) {
          ++gr[lab[e]];
        } else {
          ++in[t - 1][lab[e]];
        }
      }
    }
    Polynomial coef = Polynomial::constant(d, 1);
    for (int v = 0; v < n && !coef.is_zero(); ++v) {
      coef = coef * entry[labels[v].first][labels[v].second].derivative(in[v]);
    }
    if (!coef.is_zero()) op.add_term({fl, gr}, coef);
  };
  rec(0);
  return op;
}

namespace {

std::uint64_t graph_seed(std::uint64_t seed, int order, std::size_t index) {
  return seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(order) * 1000003ULL + index + 1);
}

void check_structure(const MultivectorField& pi, int order, bool allow_non_poisson) {
  if (pi.degree() != 2) throw std::invalid_argument("star_product: pi must be a bivector");
  if (order < 0) throw std::invalid_argument("star_product: negative order");
  if (!allow_non_poisson && !is_poisson(pi)) {
    throw NotPoissonError("star_product: pi is not Poisson ([pi, pi] != 0); pass allow_non_poisson to override");
  }
}

// Operators of all graphs of one order, built in parallel, in enumeration order.
std::vector<MultidiffOperator> graph_operators(const std::vector<AdmissibleGraph>& graphs, const MultivectorField& pi,
                                               unsigned threads) {
  std::vector<MultidiffOperator> ops(graphs.size());
  detail::parallel_for(graphs.size(), threads == 0 ? default_thread_count() : threads,
                       [&](std::size_t i) { ops[i] = build_operator(graphs[i], pi); });
  return ops;
}

}  // namespace

StarProduct star_product(const MultivectorField& pi, int order, const StarOptions& opts) {
  check_structure(pi, order, opts.allow_non_poisson);
  StarProduct s;
  s.pi = pi;
  s.dirac = opts.dirac;
  s.source = opts.source;
  const MultivectorField eff = s.effective_pi();
  std::vector<MultidiffOperator> terms;
  for (int n = 0; n <= order; ++n) {
    const auto graphs = enumerate_graphs(n);
    const auto ops = graph_operators(graphs, eff, opts.threads);
    MultidiffOperator bn(pi.dim(), 2);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      if (ops[i].is_zero()) continue;
      Rational w;
      if (opts.source == WeightSource::exact) {
        const auto wv = weight_exact(graphs[i], opts.user_weights);
        if (!wv) throw MissingWeightError(graphs[i], "weight not in any table");
        if (!wv->is_rational()) throw MissingWeightError(graphs[i], "weight is not rational; use numeric mode");
        w = wv->rational_part();
      } else {
        const auto est = weight_mc(graphs[i], opts.samples, graph_seed(opts.seed, n, i), opts.mc);
        s.estimates[encode(graphs[i])] = est;
        w = Rational(est.mean);
      }
      if (w != 0) bn += ops[i] * w;
    }
    bn *= Rational(1) / factorial(n);
    terms.push_back(std::move(bn));
  }
  s.series = FormalBidiffSeries(std::move(terms));
  return s;
}

StarProduct star_product_with_weights(const MultivectorField& pi, int order,
                                      const std::map<std::string, Rational>& weights, bool dirac) {
  check_structure(pi, order, true);
  StarProduct s;
  s.pi = pi;
  s.dirac = dirac;
  const MultivectorField eff = s.effective_pi();
  std::vector<MultidiffOperator> terms;
  for (int n = 0; n <= order; ++n) {
    const auto graphs = enumerate_graphs(n);
    const auto ops = graph_operators(graphs, eff, 0);
    MultidiffOperator bn(pi.dim(), 2);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      if (ops[i].is_zero()) continue;
      auto it = weights.find(encode(graphs[i]));
      if (it == weights.end()) throw MissingWeightError(graphs[i], "not in the supplied weights");
      bn += ops[i] * it->second;
    }
    bn *= Rational(1) / factorial(n);
    terms.push_back(std::move(bn));
  }
  s.series = FormalBidiffSeries(std::move(terms));
  return s;
}

std::vector<Polynomial> moyal(const MultivectorField& pi, const Polynomial& f, const Polynomial& g, int order) {
  if (pi.degree() != 2) throw std::invalid_argument("moyal: pi must be a bivector");
  if (!pi.is_constant()) throw std::invalid_argument("moyal: pi must have constant components");
  if (order < 0) throw std::invalid_argument("moyal: negative order");
  const int d = pi.dim();
  require_same_dim(d, f.dim(), "moyal");
  require_same_dim(d, g.dim(), "moyal");
  // (pi^{ij} d_i x d_j)^n as a map from (derivatives on f, derivatives on g)
  // to coefficients.
  std::map<std::pair<Exponents, Exponents>, Rational> power{{{Exponents(d, 0), Exponents(d, 0)}, Rational(1)}};
  std::vector<Polynomial> out;
  for (int n = 0; n <= order; ++n) {
    if (n > 0) {
      std::map<std::pair<Exponents, Exponents>, Rational> next;
      for (const auto& [key, c] : power) {
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) {
            const Rational p = pi.bivector_entry(i, j).constant_term();
            if (p == 0) continue;
            auto k = key;
            ++k.first[i];
            ++k.second[j];
            next[k] += c * p;
          }
        }
      }
      power = std::move(next);
    }
    Polynomial term(d);
    for (const auto& [key, c] : power) {
      if (c == 0) continue;
      term += (f.derivative(key.first) * g.derivative(key.second)) * c;
    }
    out.push_back(term * (Rational(1) / factorial(n)));
  }
  return out;
}

std::vector<Polynomial> apply_series(const FormalBidiffSeries& b, const Polynomial& f, const Polynomial& g) {
  std::vector<Polynomial> out;
  for (const auto& bn : b.terms) out.push_back(bn.apply({f, g}));
  return out;
}

std::vector<Polynomial> apply_star(const StarProduct& s, const Polynomial& f, const Polynomial& g) {
  return apply_series(s.series, f, g);
}

AssociativityReport verify_associativity(const FormalBidiffSeries& b, int degree_cap) {
  AssociativityReport r;
  r.residuals = associativity_residuals(b);
  for (const auto& res : r.residuals) {
    if (!res.is_zero()) r.operator_identity_holds = false;
  }
  const int dim = b.dim();
  const int n_max = b.order();
  std::vector<Polynomial> monos;
  for (const auto& e : monomials_up_to(dim, degree_cap)) monos.push_back(Polynomial::monomial(e));
  for (const auto& f : monos) {
    for (const auto& g : monos) {
      const auto fg = apply_series(b, f, g);
      for (const auto& h : monos) {
        ++r.sampled_triples;
        const auto gh = apply_series(b, g, h);
        for (int n = 0; n <= n_max; ++n) {
          Polynomial defect(dim);
          for (int i = 0; i <= n; ++i) {
            defect += b[i].apply({fg[n - i], h});
            defect -= b[i].apply({f, gh[n - i]});
          }
          if (!defect.is_zero()) {
            ++r.sample_failures;
            if (r.failure_examples.size() < 5) {
              r.failure_examples.push_back("order " + std::to_string(n) + ": (" + format_polynomial(f) + ", " +
                                           format_polynomial(g) + ", " + format_polynomial(h) + ") -> " +
                                           format_polynomial(defect));
            }
            break;
          }
        }
      }
    }
  }
  return r;
}

AssociativityReport verify_associativity(const StarProduct& s, int degree_cap) {
  return verify_associativity(s.series, degree_cap);
}

bool verify_quantization(const FormalBidiffSeries& b, const MultivectorField& expected) {
  if (b.order() < 1) return false;
  try {
    return extract_b1_minus(b) == expected;
  } catch (const NotABivectorError&) {
    return false;
  }
}

bool verify_quantization(const StarProduct& s) { return verify_quantization(s.series, s.effective_pi()); }

}  // namespace kstar
