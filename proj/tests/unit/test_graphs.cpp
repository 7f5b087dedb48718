#include <algorithm>
#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "kstar/graphs.hpp"

using namespace kstar;

namespace {
// 1 < ... < n < L < R
int rank_of(Vertex v, int n) { return v > 0 ? v : (v == kLeft ? n + 1 : n + 2); }
}  // namespace

TEST_SUITE("graphs") {
TEST_CASE("counts") {
  for (int n = 0; n <= 3; ++n) {
    const auto gs = enumerate_graphs(n);
    const unsigned long long expected = n == 0 ? 1ULL : static_cast<unsigned long long>(std::pow(n * (n + 1), n));
    CHECK(gs.size() == expected);
    CHECK(graph_count(n) == expected);
  }
  CHECK(graph_count(4) == 160000);
  CHECK_THROWS_AS(enumerate_graphs(5), std::length_error);
}

TEST_CASE("enumeration is admissible, distinct and lexicographic") {
  for (int n = 1; n <= 3; ++n) {
    const auto gs = enumerate_graphs(n);
    std::set<std::string> seen;
    std::vector<std::vector<int>> keys;
    for (const auto& g : gs) {
      CHECK(validate(g));
      seen.insert(encode(g));
      std::vector<int> key;
      for (const auto& t : g.targets) {
        key.push_back(rank_of(t[0], n));
        key.push_back(rank_of(t[1], n));
      }
      keys.push_back(key);
    }
    CHECK(seen.size() == gs.size());
    CHECK(std::is_sorted(keys.begin(), keys.end()));
  }
  CHECK(encode(enumerate_graphs(1).front()) == "1; L R");
  CHECK(encode(enumerate_graphs(2).front()) == "2; 2 L; 1 L");
}

TEST_CASE("encode, decode and JSON round trips") {
  for (int n = 0; n <= 3; ++n) {
    for (const auto& g : enumerate_graphs(n)) {
      REQUIRE(decode(encode(g)) == g);
      REQUIRE(from_json(to_json(g)) == g);
    }
  }
  CHECK(encode(AdmissibleGraph{0, {}}) == "0");
  CHECK(to_json(decode("2; 2 R; L R")) == R"([[2,"R"],["L","R"]])");
}

TEST_CASE("decode rejects inadmissible input with a position") {
  for (const char* bad : {"1; 1 R", "1; L L", "2; 2 L", "1; L X", "x", "1; L R; L R", "2; 3 L; L R"}) {
    INFO(bad);
    CHECK_THROWS_AS(decode(bad), GraphParseError);
  }
  try {
    decode("1; L Q");
    FAIL("expected GraphParseError");
  } catch (const GraphParseError& e) {
    CHECK(e.position == 5);
  }
}

TEST_CASE("swap and relabel") {
  const auto g = decode("2; 2 R; L R");
  CHECK(encode(swap_edges(g, 1)) == "2; R 2; L R");
  CHECK(encode(relabel(g, {2, 1})) == "2; L R; 1 R");
  CHECK_THROWS_AS(swap_edges(g, 3), std::out_of_range);
  CHECK(internal_edge_count(g) == 1);
  CHECK(all_edges_to_ground(decode("2; L R; R L")));
  CHECK(has_edge_into(g, kLeft));
  CHECK_FALSE(has_edge_into(decode("1; L R"), 3));
  for (const auto& h : enumerate_graphs(3)) {
    for (int k = 1; k <= 3; ++k) REQUIRE(swap_edges(swap_edges(h, k), k) == h);
    REQUIRE(relabel(relabel(h, {3, 1, 2}), {2, 3, 1}) == h);
  }
}
}
