#include "kstar/weight_table.hpp"

#include <fstream>
#include <sstream>

namespace kstar {

namespace {

// Generated by `kstar solve-weights --order 2`; see data/builtin_weights.txt.
constexpr const char* kBuiltinWeights =
#include "builtin_weights.inc"
    ;

}  // namespace

WeightTable WeightTable::from_records(const std::vector<std::pair<AdmissibleGraph, WeightValue>>& records) {
  WeightTable t;
  for (const auto& [g, w] : records) t.insert(g, w);
  return t;
}

WeightTable WeightTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weight file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_records(parse_weight_file(ss.str()));
}

const WeightTable& WeightTable::builtin() {
  static const WeightTable table = from_records(parse_weight_file(kBuiltinWeights));
  return table;
}

void WeightTable::insert(const AdmissibleGraph& g, const WeightValue& w) {
  if (!validate(g)) throw std::invalid_argument("WeightTable: graph is not admissible");
  entries_[encode(g)] = {g, w};
}

std::optional<WeightValue> WeightTable::find(const AdmissibleGraph& g) const {
  auto it = entries_.find(encode(g));
  if (it == entries_.end()) return std::nullopt;
  return it->second.second;
}

std::vector<std::pair<AdmissibleGraph, WeightValue>> WeightTable::records() const {
  std::vector<std::pair<AdmissibleGraph, WeightValue>> out;
  for (const auto& [k, v] : entries_) out.push_back(v);
  return out;
}

std::optional<Rational> ground_family_weight(const AdmissibleGraph& g) {
  Rational w = 1;
  for (const auto& [a, b] : g.targets) {
    if (a == kLeft && b == kRight) {
      w *= Rational(1, 2);
    } else if (a == kRight && b == kLeft) {
      w *= Rational(-1, 2);
    } else {
      return std::nullopt;
    }
  }
  return w;
}

std::optional<WeightValue> weight_exact(const AdmissibleGraph& g, const WeightTable* user) {
  if (!validate(g)) throw std::invalid_argument("weight_exact: graph is not admissible");
  if (auto r = ground_family_weight(g)) return WeightValue::rational(*r);
  if (g.order <= 2) {
    if (auto w = WeightTable::builtin().find(g)) return w;
  }
  if (user) return user->find(g);
  return std::nullopt;
}

}  // namespace kstar
