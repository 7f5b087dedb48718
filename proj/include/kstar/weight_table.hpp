// Exact weights: the built-in table for orders <= 2, the all-to-ground
// family at any order, and user-supplied weight files.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kstar/graphs.hpp"
#include "kstar/mzv.hpp"

namespace kstar {

class WeightTable {
 public:
  WeightTable() = default;
  static WeightTable from_records(const std::vector<std::pair<AdmissibleGraph, WeightValue>>& records);
  /// Reads a weight file; throws WeightFileError or std::runtime_error.
  static WeightTable load(const std::string& path);

  /// The table shipped with the library (every graph of order <= 2).
  static const WeightTable& builtin();

  void insert(const AdmissibleGraph& g, const WeightValue& w);
  std::optional<WeightValue> find(const AdmissibleGraph& g) const;
  std::size_t size() const { return entries_.size(); }
  std::vector<std::pair<AdmissibleGraph, WeightValue>> records() const;

 private:
  std::map<std::string, std::pair<AdmissibleGraph, WeightValue>> entries_;
};

/// Product of +-1/2 over the vertices when every edge ends at L or R
/// ((L,R) gives 1/2, (R,L) gives -1/2); nullopt otherwise.
std::optional<Rational> ground_family_weight(const AdmissibleGraph& g);

/// Exact weight when known: 1 at order 0, the ground family at any order,
/// the built-in table at orders <= 2, then `user` (if given). nullopt when
/// unknown. Throws std::invalid_argument for an inadmissible graph.
std::optional<WeightValue> weight_exact(const AdmissibleGraph& g, const WeightTable* user = nullptr);

}  // namespace kstar
