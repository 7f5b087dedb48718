// Admissible graphs: internal vertices 1..n, each with two ordered out-edges
// e_k^1, e_k^2 ending at distinct vertices of {1..n, L, R}, no loops.
#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kstar {

/// Edge target: 1..n for internal vertices, or one of the two ground vertices.
using Vertex = int;
inline constexpr Vertex kLeft = -1;
inline constexpr Vertex kRight = -2;

struct AdmissibleGraph {
  int order = 0;
  /// targets[k-1] = (target of e_k^1, target of e_k^2).
  std::vector<std::array<Vertex, 2>> targets;

  friend bool operator==(const AdmissibleGraph&, const AdmissibleGraph&) = default;
};

class GraphParseError : public std::runtime_error {
 public:
  GraphParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

inline constexpr int kDefaultEnumerationCap = 4;

/// All (n(n+1))^n labelled admissible graphs of order n, in lexicographic
/// order of the target sequence with 1 < ... < n < L < R.
std::vector<AdmissibleGraph> enumerate_graphs(int n, int cap = kDefaultEnumerationCap);

/// Exact count (n(n+1))^n.
unsigned long long graph_count(int n);

bool validate(const AdmissibleGraph& g);

/// Transposes the two targets of vertex k (1-based).
AdmissibleGraph swap_edges(const AdmissibleGraph& g, int k);

/// Relabels internal vertices: vertex v becomes perm[v-1] (1-based values).
AdmissibleGraph relabel(const AdmissibleGraph& g, const std::vector<int>& perm);

/// "n; t11 t12; t21 t22; ..." with L and R literals. Order 0 encodes as "0".
std::string encode(const AdmissibleGraph& g);
/// Inverse of encode; throws GraphParseError (with position) on malformed or
/// inadmissible input.
AdmissibleGraph decode(std::string_view text);

/// JSON array-of-pairs form: [[t11, t12], ...] with integers for internal
/// vertices and the strings "L"/"R".
std::string to_json(const AdmissibleGraph& g);
AdmissibleGraph from_json(std::string_view text);

/// Number of edges that end at an internal vertex.
int internal_edge_count(const AdmissibleGraph& g);

/// True iff every edge ends at L or R.
bool all_edges_to_ground(const AdmissibleGraph& g);

/// True iff some edge ends at the given ground vertex.
bool has_edge_into(const AdmissibleGraph& g, Vertex ground);

}  // namespace kstar
