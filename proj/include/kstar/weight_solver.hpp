// Order-n weights from associativity. The weights of order n enter the
// order-n associativity residual linearly; requiring it to vanish as an
// operator identity for a list of Poisson structures gives a linear system
// over Q. Unknowns are grouped into orbits of the relabelling and edge-swap
// symmetries (relabelling keeps the weight, a swap negates it). Directions
// left free by the system are pinned by Monte-Carlo estimates.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kstar/graphs.hpp"
#include "kstar/multivector.hpp"
#include "kstar/weights.hpp"

namespace kstar {

struct GraphOrbit {
  AdmissibleGraph representative;
  /// Each member with the sign relating its weight to the representative's.
  std::vector<std::pair<AdmissibleGraph, int>> members;
  /// Some member is mapped to itself with sign -1, so the weight is 0.
  bool forced_zero = false;
};

/// Orbits of enumerate_graphs(n) under relabelling and edge swaps.
std::vector<GraphOrbit> graph_orbits(int n);

/// The rational with the smallest denominator in [lo, hi] (then smallest
/// numerator in absolute value).
Rational simplest_rational_between(double lo, double hi);

struct SolverOptions {
  /// Poisson structures whose associativity constrains the weights. Empty
  /// means the three shipped structures (constant, x d/dx^d/dy, so(3)).
  std::vector<MultivectorField> structures;
  /// Monte-Carlo samples per free orbit; 0 disables pinning.
  std::uint64_t pin_samples = 40'000'000;
  /// Samples per orbit representative for the final cross-check; 0 skips it.
  std::uint64_t check_samples = 1'000'000;
  std::uint64_t seed = 20240601;
  MonteCarloOptions mc{Sampler::mixture};
};

struct SolverResult {
  int order = 0;
  std::vector<GraphOrbit> orbits;
  std::vector<Rational> orbit_weights;
  /// encode(graph) -> weight, for every graph of the order.
  std::map<std::string, Rational> weights;
  std::size_t equations = 0;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  /// Orbits not determined by associativity, with their pinning estimate.
  std::vector<std::size_t> free_orbits;
  std::vector<WeightEstimate> pin_estimates;
  /// Cross-check estimate per orbit (empty if skipped).
  std::vector<WeightEstimate> check_estimates;
  bool consistent_with_mc = true;
  std::vector<std::string> diagnostics;
};

class WeightSystemError : public std::runtime_error {
 public:
  WeightSystemError(const std::string& msg, std::size_t rank, std::size_t unknowns);
  std::size_t rank;
  std::size_t unknowns;
};

/// Requires exact rational weights for all graphs of order < n with a
/// nonzero operator (weight_exact). Throws WeightSystemError if the system
/// is inconsistent, or underdetermined while pinning is disabled.
SolverResult solve_weights_by_associativity(int n, const SolverOptions& opts = {});

/// The three structures used by default: d/dx^d/dy, x d/dx^d/dy (dim 2) and
/// x d/dy^d/dz + y d/dz^d/dx + z d/dx^d/dy (dim 3).
std::vector<MultivectorField> default_test_structures();

}  // namespace kstar
