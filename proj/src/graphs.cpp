#include "kstar/graphs.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"

namespace kstar {

namespace {

// Candidate targets for vertex k in enumeration order 1 < ... < n < L < R.
std::vector<Vertex> candidates(int n, int k) {
  std::vector<Vertex> c;
  for (int v = 1; v <= n; ++v) {
    if (v != k) c.push_back(v);
  }
  c.push_back(kLeft);
  c.push_back(kRight);
  return c;
}

std::string vertex_name(Vertex v) {
  if (v == kLeft) return "L";
  if (v == kRight) return "R";
  return std::to_string(v);
}

}  // namespace

unsigned long long graph_count(int n) {
  if (n < 0) throw std::invalid_argument("graph_count: negative order");
  unsigned long long per = static_cast<unsigned long long>(n) * (n + 1);
  unsigned long long total = 1;
  for (int i = 0; i < n; ++i) total *= per;
  return total;
}

std::vector<AdmissibleGraph> enumerate_graphs(int n, int cap) {
  if (n < 0) throw std::invalid_argument("enumerate_graphs: negative order");
  if (n > cap) {
    throw std::length_error("enumerate_graphs: order " + std::to_string(n) + " exceeds the configured cap " +
                            std::to_string(cap));
  }
  std::vector<std::array<Vertex, 2>> pairs_per_vertex;
  std::vector<std::vector<std::array<Vertex, 2>>> choices(n);
  for (int k = 1; k <= n; ++k) {
    const auto c = candidates(n, k);
    for (Vertex a : c) {
      for (Vertex b : c) {
        if (a != b) choices[k - 1].push_back({a, b});
      }
    }
  }
  std::vector<AdmissibleGraph> out;
  out.reserve(graph_count(n));
  AdmissibleGraph g{n, std::vector<std::array<Vertex, 2>>(n)};
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    for (int k = 0; k < n; ++k) g.targets[k] = choices[k][idx[k]];
    out.push_back(g);
    int pos = n - 1;
    while (pos >= 0 && ++idx[pos] == choices[pos].size()) {
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

bool validate(const AdmissibleGraph& g) {
  if (g.order < 0 || static_cast<int>(g.targets.size()) != g.order) return false;
  for (int k = 1; k <= g.order; ++k) {
    const auto& [a, b] = g.targets[k - 1];
    for (Vertex v : {a, b}) {
      const bool ground = v == kLeft || v == kRight;
      if (!ground && (v < 1 || v > g.order)) return false;
      if (v == k) return false;  // loop
    }
    if (a == b) return false;  // both edges to the same vertex
  }
  return true;
}

AdmissibleGraph swap_edges(const AdmissibleGraph& g, int k) {
  if (k < 1 || k > g.order) throw std::out_of_range("swap_edges: vertex out of range");
  AdmissibleGraph r = g;
  std::swap(r.targets[k - 1][0], r.targets[k - 1][1]);
  return r;
}

AdmissibleGraph relabel(const AdmissibleGraph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.order) throw std::invalid_argument("relabel: permutation size mismatch");
  AdmissibleGraph r{g.order, std::vector<std::array<Vertex, 2>>(g.order)};
  auto map = [&](Vertex v) { return v > 0 ? perm[v - 1] : v; };
  for (int k = 1; k <= g.order; ++k) {
    r.targets[perm[k - 1] - 1] = {map(g.targets[k - 1][0]), map(g.targets[k - 1][1])};
  }
  return r;
}

std::string encode(const AdmissibleGraph& g) {
  std::string s = std::to_string(g.order);
  for (const auto& [a, b] : g.targets) s += "; " + vertex_name(a) + " " + vertex_name(b);
  return s;
}

namespace {

class GraphLexer {
 public:
  explicit GraphLexer(std::string_view t) : text_(t) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  std::size_t pos() const { return pos_; }

  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw GraphParseError("expected a non-negative integer", start);
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  Vertex vertex() {
    skip_ws();
    if (pos_ < text_.size() && (text_[pos_] == 'L' || text_[pos_] == 'R')) {
      return text_[pos_++] == 'L' ? kLeft : kRight;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) return integer();
    throw GraphParseError("expected a vertex (1..n, L or R)", pos_);
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw GraphParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AdmissibleGraph decode(std::string_view text) {
  GraphLexer lex(text);
  AdmissibleGraph g;
  g.order = lex.integer();
  for (int k = 1; k <= g.order; ++k) {
    lex.expect(';');
    const std::size_t at = lex.pos();
    Vertex a = lex.vertex();
    Vertex b = lex.vertex();
    for (Vertex v : {a, b}) {
      if (v > g.order || v == 0) throw GraphParseError("vertex " + std::to_string(v) + " out of range", at);
    }
    g.targets.push_back({a, b});
  }
  if (!lex.at_end()) throw GraphParseError("trailing input", lex.pos());
  if (!validate(g)) throw GraphParseError("graph is not admissible (loop or repeated target)", 0);
  return g;
}

std::string to_json(const AdmissibleGraph& g) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [a, b] : g.targets) {
    nlohmann::json pair = nlohmann::json::array();
    for (Vertex v : {a, b}) {
      if (v > 0) {
        pair.push_back(v);
      } else {
        pair.push_back(vertex_name(v));
      }
    }
    arr.push_back(pair);
  }
  return arr.dump();
}

AdmissibleGraph from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw GraphParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  if (!j.is_array()) throw GraphParseError("expected an array of pairs", 0);
  AdmissibleGraph g;
  g.order = static_cast<int>(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& pair = j[k];
    if (!pair.is_array() || pair.size() != 2) throw GraphParseError("entry is not a pair", k);
    std::array<Vertex, 2> t{};
    for (int e = 0; e < 2; ++e) {
      const auto& v = pair[e];
      if (v.is_number_integer()) {
        t[e] = v.get<int>();
      } else if (v.is_string() && (v == "L" || v == "R")) {
        t[e] = v == "L" ? kLeft : kRight;
      } else {
        throw GraphParseError("bad vertex", k);
      }
    }
    g.targets.push_back(t);
  }
  if (!validate(g)) throw GraphParseError("graph is not admissible", 0);
  return g;
}

int internal_edge_count(const AdmissibleGraph& g) {
  int c = 0;
  for (const auto& t : g.targets) c += (t[0] > 0) + (t[1] > 0);
  return c;
}

bool all_edges_to_ground(const AdmissibleGraph& g) { return internal_edge_count(g) == 0; }

bool has_edge_into(const AdmissibleGraph& g, Vertex ground) {
  return std::any_of(g.targets.begin(), g.targets.end(),
                     [&](const auto& t) { return t[0] == ground || t[1] == ground; });
}

}  // namespace kstar
