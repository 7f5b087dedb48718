// Graph operators and the weighted graph sum
//
//   f * g = sum_n hbar^n / n! sum_{G of order n} w_G B_{G,pi}(f, g),
//
// the Moyal product of a constant structure, and end-to-end checks.
//
// Normalization: pi is consumed as given, so B_1 is the pi-contraction and
// f*g - g*f = 2 hbar {f, g} + O(hbar^2). With `dirac` set, pi is halved first
// and the skew part of B_1 becomes {f, g}/2.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kstar/graphs.hpp"
#include "kstar/hochschild.hpp"
#include "kstar/multidiff.hpp"
#include "kstar/multivector.hpp"
#include "kstar/weight_table.hpp"
#include "kstar/weights.hpp"

namespace kstar {

/// B_{G,pi}: the sum over edge labellings of products of derivatives of the
/// pi components at internal vertices, with the edges into L and R
/// differentiating f and g.
MultidiffOperator build_operator(const AdmissibleGraph& g, const MultivectorField& pi);

enum class WeightSource { exact, numeric };

struct StarOptions {
  WeightSource source = WeightSource::exact;
  bool dirac = false;
  bool allow_non_poisson = false;
  /// Consulted by weight_exact after the built-in table.
  const WeightTable* user_weights = nullptr;
  /// Numeric mode only.
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  MonteCarloOptions mc{};
  /// 0 means default_thread_count().
  unsigned threads = 0;
};

struct StarProduct {
  /// The structure as supplied (before any dirac halving).
  MultivectorField pi;
  bool dirac = false;
  WeightSource source = WeightSource::exact;
  FormalBidiffSeries series;
  /// Numeric mode: the estimate used for each graph with a nonzero operator.
  std::map<std::string, WeightEstimate> estimates;

  int order() const { return series.order(); }
  /// The bivector actually fed into the graph sum.
  MultivectorField effective_pi() const;
};

class MissingWeightError : public std::runtime_error {
 public:
  MissingWeightError(const AdmissibleGraph& g, const std::string& why);
  AdmissibleGraph graph;
};

class NotPoissonError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// B_n = (1/n!) sum_G w_G B_{G,pi}. Graphs whose operator vanishes for this pi
/// need no weight. Exact mode requires rational weights.
StarProduct star_product(const MultivectorField& pi, int order, const StarOptions& opts = {});

/// Same, with explicit weights for every graph of order <= N that has a
/// nonzero operator (missing entries raise MissingWeightError).
StarProduct star_product_with_weights(const MultivectorField& pi, int order,
                                      const std::map<std::string, Rational>& weights, bool dirac = false);

/// sum_n (hbar^n/n!) sum pi^{i1 j1} ... pi^{in jn} (d_I f)(d_J g) for
/// constant pi. Throws std::invalid_argument for non-constant pi.
std::vector<Polynomial> moyal(const MultivectorField& pi, const Polynomial& f, const Polynomial& g, int order);

std::vector<Polynomial> apply_star(const StarProduct& s, const Polynomial& f, const Polynomial& g);
std::vector<Polynomial> apply_series(const FormalBidiffSeries& b, const Polynomial& f, const Polynomial& g);

struct AssociativityReport {
  /// Operator residual per order 0..N (normal form; zero means pass).
  std::vector<MultidiffOperator> residuals;
  bool operator_identity_holds = true;
  /// Secondary check on monomial triples.
  std::size_t sampled_triples = 0;
  std::size_t sample_failures = 0;
  std::vector<std::string> failure_examples;

  bool passed() const { return operator_identity_holds && sample_failures == 0; }
};

/// Operator-level residuals order by order, plus evaluation on all monomial
/// triples of degree <= degree_cap.
AssociativityReport verify_associativity(const FormalBidiffSeries& b, int degree_cap);
AssociativityReport verify_associativity(const StarProduct& s, int degree_cap);

/// True iff the skew part of B_1 is exactly the structure (halved under dirac).
bool verify_quantization(const StarProduct& s);
/// Same check against an explicit expected bivector.
bool verify_quantization(const FormalBidiffSeries& b, const MultivectorField& expected);

}  // namespace kstar
