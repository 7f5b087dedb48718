#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {
struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = kstar::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(KSTAR_DATA_DIR) + "/" + name; }
}  // namespace

TEST_SUITE("cli") {
TEST_CASE("graphs") {
  const auto r = run({"graphs", "--order", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "1; L R\n1; R L\n");
  const auto j = nlohmann::json::parse(run({"--format", "json", "graphs", "--order", "2"}).out);
  CHECK(j["count"] == 36);
  CHECK(run({"graphs", "--order", "5"}).code == 2);
  CHECK(run({"graphs"}).code == 2);
}

TEST_CASE("star") {
  const auto r = run({"star", "--pi", data("constant2d.txt"), "--order", "2", "--apply", "x", "y"});
  CHECK(r.code == 0);
  CHECK(r.out == "x*y + 1*h\n");
  CHECK(run({"star", "--pi", data("so3.txt"), "--order", "3"}).code == 1);
  CHECK(run({"star", "--pi", data("missing.txt"), "--order", "2"}).code == 2);
  CHECK(run({"star", "--pi", data("constant2d.txt"), "--order", "1", "--apply", "x+", "y"}).code == 2);
  const auto d = run({"star", "--pi", data("x_dxdy.txt"), "--order", "1", "--dirac", "--apply", "x", "y"});
  CHECK(d.out == "x*y + 1/2*x*h\n");
}

TEST_CASE("verify") {
  const auto r = run({"--format", "json", "verify", "--pi", data("so3.txt"), "--order", "2"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["sample_failures"] == 0);
  CHECK(run({"verify", "--pi", data("x_dxdy.txt"), "--order", "2", "--dirac"}).code == 0);
}

TEST_CASE("weight") {
  CHECK(run({"weight", "--graph", "2; L 2; 1 R"}).out == "2; L 2; 1 R: 1/24 = 0.041666666666666666667\n");
  CHECK(run({"weight", "--graph", "3; 2 R; 3 L; L R"}).code == 1);
  CHECK(run({"weight", "--graph", "1; L L"}).code == 2);
  const auto j = nlohmann::json::parse(
      run({"--format", "json", "weight", "--graph", "1; L R", "--mc", "100000", "4"}).out);
  CHECK(std::abs(j["mean"].get<double>() - 0.5) < 0.02);
  CHECK(j["seed"] == 4);
  CHECK(run({"weight", "--graph", "1; L R", "--mc", "100000"}).code == 2);
}

TEST_CASE("brackets and mzv") {
  CHECK(run({"brackets", "schouten", "dim 2; x * d/dy", "dim 2; y * d/dx"}).out ==
        "dim 2; x * d/dx - y * d/dy\n");
  CHECK(run({"brackets", "hochschild-d", "dim 1; arity 1; [dx^2]"}).out == "dim 1; arity 2; -2*[dx | dx]\n");
  CHECK(run({"brackets", "hkr", "dim 2; d/dx ^ d/dy"}).code == 0);
  CHECK(run({"brackets", "gerstenhaber", "dim 1; arity 2; [1 | 1]", "dim 1; arity 1; [dx]"}).code == 0);
  CHECK(run({"brackets", "schouten", "dim 2; d/dq", "dim 2; d/dx"}).code == 2);
  CHECK(run({"mzv", "-1/6048 + 9/128*zeta(3)^2/pi^6", "--digits", "12"}).out == "-5.96662141914e-05\n");
  CHECK(run({"mzv", "zeta(2)"}).code == 2);
}
}
