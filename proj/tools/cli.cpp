#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kstar/graphs.hpp"
#include "kstar/hochschild.hpp"
#include "kstar/mzv.hpp"
#include "kstar/star.hpp"
#include "kstar/text_format.hpp"
#include "kstar/weight_solver.hpp"
#include "kstar/weight_table.hpp"
#include "kstar/weights.hpp"

namespace kstar::cli {

namespace {

using nlohmann::json;

// Input problems (unreadable files, parse errors, bad values) exit with 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "@path" reads a file, anything else is literal text.
std::string read_input(const std::string& arg) { return !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg; }

std::uint64_t parse_count(const std::string& s, const char* what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
      s.size() > 19) {
    throw InputError(std::string(what) + " must be a non-negative integer, got '" + s + "'");
  }
  return std::stoull(s);
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

json estimate_json(const WeightEstimate& e) {
  return {{"mean", e.mean}, {"standard_error", e.standard_error}, {"samples", e.samples},
          {"seed", e.seed}, {"batches", e.batches},               {"rejected", e.rejected}};
}

json graph_json(const AdmissibleGraph& g) {
  return {{"encoding", encode(g)}, {"order", g.order}, {"targets", json::parse(to_json(g))}};
}

json weight_value_json(const WeightValue& w) {
  json terms = json::array();
  for (const auto& [s, r] : w.terms()) {
    terms.push_back({{"zeta", s}, {"coefficient", r.get_str()}, {"pi_power", composition_weight(s)}});
  }
  return {{"text", format_weight_value(w)}, {"terms", terms}, {"rational", w.is_rational()}};
}

MultivectorField load_pi(const std::string& path) {
  try {
    return parse_multivector(read_input("@" + path));
  } catch (const ParseError& e) {
    throw InputError("in Poisson structure file '" + path + "': " + e.what());
  }
}

struct Common {
  std::string format = "text";
  unsigned threads = 0;
};

AdmissibleGraph parse_graph_arg(const std::string& text) {
  try {
    const auto t = read_input(text);
    const auto first = t.find_first_not_of(" \t\n");
    if (first != std::string::npos && t[first] == '[') return from_json(t);
    return decode(t);
  } catch (const GraphParseError& e) {
    throw InputError(std::string("graph: ") + e.what());
  }
}

MonteCarloOptions mc_options(std::size_t batches, const std::string& sampler, unsigned threads) {
  MonteCarloOptions o;
  o.batches = batches;
  o.threads = threads;
  o.sampler = sampler == "mixture" ? Sampler::mixture : Sampler::cayley;
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph star products of polynomial Poisson structures, their weights and algebraic checks", "kstar"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads (default: KSTAR_THREADS or hardware concurrency)");

  // graphs
  auto* graphs_cmd = app.add_subcommand("graphs", "List the admissible graphs of one order");
  int graphs_order = 0;
  int graphs_cap = kDefaultEnumerationCap;
  graphs_cmd->add_option("--order", graphs_order, "Number of internal vertices")->required()->check(CLI::NonNegativeNumber);
  graphs_cmd->add_option("--cap", graphs_cap, "Largest order allowed")->capture_default_str();

  // weight
  auto* weight_cmd = app.add_subcommand("weight", "Exact or Monte-Carlo weight of a graph");
  std::string weight_graph;
  std::vector<std::string> weight_mc_args;
  bool weight_exact_flag = false;
  std::size_t weight_batches = 64;
  std::string weight_sampler = "cayley";
  std::string weight_file;
  int weight_digits = 20;
  weight_cmd->add_option("--graph", weight_graph, "Graph encoding, JSON pairs, or @file")->required();
  auto* mc_opt = weight_cmd->add_option("--mc", weight_mc_args, "Monte-Carlo estimate: SAMPLES SEED")->expected(2);
  weight_cmd->add_flag("--exact", weight_exact_flag, "Exact value (default)")->excludes(mc_opt);
  weight_cmd->add_option("--batches", weight_batches, "Monte-Carlo batches (>= 30)")->capture_default_str();
  weight_cmd->add_option("--sampler", weight_sampler, "Monte-Carlo sampler")
      ->check(CLI::IsMember({"cayley", "mixture"}))
      ->capture_default_str();
  weight_cmd->add_option("--weights", weight_file, "Additional weight file for exact lookups");
  weight_cmd->add_option("--digits", weight_digits, "Significant digits of numeric values")
      ->check(CLI::Range(1, kMaxMzvDigits))
      ->capture_default_str();

  // star
  auto* star_cmd = app.add_subcommand("star", "Build a star product and optionally apply it");
  std::string star_pi;
  int star_order = 2;
  std::vector<std::string> star_apply;
  bool star_dirac = false, star_non_poisson = false;
  std::vector<std::string> star_numeric;
  std::string star_weights;
  star_cmd->add_option("--pi", star_pi, "Poisson structure file")->required();
  star_cmd->add_option("--order", star_order, "Truncation order")->required()->check(CLI::Range(0, kDefaultEnumerationCap));
  star_cmd->add_option("--apply", star_apply, "Evaluate f * g")->expected(2);
  star_cmd->add_flag("--dirac", star_dirac, "Halve pi so that the skew part of B_1 is {f,g}/2");
  star_cmd->add_flag("--allow-non-poisson", star_non_poisson, "Accept a bivector that fails the Jacobi identity");
  star_cmd->add_option("--numeric", star_numeric, "Use Monte-Carlo weights: SAMPLES SEED")->expected(2);
  star_cmd->add_option("--weights", star_weights, "Additional weight file");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check associativity and the order-one normalization");
  std::string verify_pi;
  int verify_order = 2;
  int verify_cap = 2;
  bool verify_dirac = false, verify_non_poisson = false;
  std::string verify_weights;
  verify_cmd->add_option("--pi", verify_pi, "Poisson structure file")->required();
  verify_cmd->add_option("--order", verify_order, "Truncation order")->required()->check(CLI::Range(0, kDefaultEnumerationCap));
  verify_cmd->add_option("--degree-cap", verify_cap, "Largest monomial degree in the sampled check")
      ->check(CLI::Range(0, 6))
      ->capture_default_str();
  verify_cmd->add_flag("--dirac", verify_dirac, "Halve pi first");
  verify_cmd->add_flag("--allow-non-poisson", verify_non_poisson, "Accept a non-Poisson bivector");
  verify_cmd->add_option("--weights", verify_weights, "Additional weight file");

  // brackets
  auto* brackets_cmd = app.add_subcommand("brackets", "Bracket and differential utilities");
  brackets_cmd->require_subcommand(1);
  std::string br_a, br_b;
  auto* schouten_cmd = brackets_cmd->add_subcommand("schouten", "Schouten-Nijenhuis bracket of two multivectors");
  schouten_cmd->add_option("a", br_a, "Multivector text or @file")->required();
  schouten_cmd->add_option("b", br_b, "Multivector text or @file")->required();
  auto* gerst_cmd = brackets_cmd->add_subcommand("gerstenhaber", "Gerstenhaber bracket of two operators");
  gerst_cmd->add_option("a", br_a, "Operator text or @file")->required();
  gerst_cmd->add_option("b", br_b, "Operator text or @file")->required();
  auto* hd_cmd = brackets_cmd->add_subcommand("hochschild-d", "Hochschild differential of an operator");
  hd_cmd->add_option("a", br_a, "Operator text or @file")->required();
  auto* hkr_cmd = brackets_cmd->add_subcommand("hkr", "HKR image of a multivector");
  hkr_cmd->add_option("a", br_a, "Multivector text or @file")->required();

  // solve-weights
  auto* solve_cmd = app.add_subcommand("solve-weights", "Exact weights of one order from associativity");
  int solve_order = 2;
  std::uint64_t solve_pin = SolverOptions{}.pin_samples, solve_check = SolverOptions{}.check_samples;
  std::uint64_t solve_seed = SolverOptions{}.seed;
  std::vector<std::string> solve_structures;
  std::string solve_output;
  solve_cmd->add_option("--order", solve_order, "Order to solve")->required()->check(CLI::Range(1, 3));
  solve_cmd->add_option("--pin-samples", solve_pin, "Samples per undetermined orbit")->capture_default_str();
  solve_cmd->add_option("--check-samples", solve_check, "Samples per orbit for the cross-check")->capture_default_str();
  solve_cmd->add_option("--seed", solve_seed, "Monte-Carlo seed")->capture_default_str();
  solve_cmd->add_option("--pi", solve_structures, "Poisson structure files (default: the three shipped ones)");
  solve_cmd->add_option("--output", solve_output, "Also write the weight file here");

  // mzv
  auto* mzv_cmd = app.add_subcommand("mzv", "Numeric value of an exact weight");
  std::string mzv_value;
  int mzv_digits = 30;
  mzv_cmd->add_option("value", mzv_value, "Value such as \"-1/6048 + 9/128*zeta(3)^2/pi^6\"")->required();
  mzv_cmd->add_option("--digits", mzv_digits, "Significant digits")
      ->check(CLI::Range(1, kMaxMzvDigits))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const bool as_json = common.format == "json";
  try {
    if (*graphs_cmd) {
      const auto gs = enumerate_graphs(graphs_order, graphs_cap);
      if (as_json) {
        json arr = json::array();
        for (const auto& g : gs) arr.push_back(graph_json(g));
        out << json{{"order", graphs_order}, {"count", gs.size()}, {"graphs", arr}}.dump(2) << "\n";
      } else {
        for (const auto& g : gs) out << encode(g) << "\n";
      }
      return kExitOk;
    }

    if (*weight_cmd) {
      const auto g = parse_graph_arg(weight_graph);
      if (!weight_mc_args.empty()) {
        const auto samples = parse_count(weight_mc_args[0], "samples");
        const auto seed = parse_count(weight_mc_args[1], "seed");
        if (samples < weight_batches) throw InputError("samples must be at least the number of batches");
        if (weight_batches < kMinBatches) throw InputError("at least 30 batches are required");
        const auto est = weight_mc(g, samples, seed, mc_options(weight_batches, weight_sampler, common.threads));
        if (as_json) {
          json j = estimate_json(est);
          j["graph"] = graph_json(g);
          j["mode"] = "mc";
          j["sampler"] = weight_sampler;
          out << j.dump(2) << "\n";
        } else {
          out << encode(g) << ": " << fmt_double(est.mean) << " +- " << fmt_double(est.standard_error)
              << " (samples " << est.samples << ", seed " << est.seed << ", batches " << est.batches << ", rejected "
              << est.rejected << ")\n";
        }
        return kExitOk;
      }
      WeightTable user;
      if (!weight_file.empty()) user = WeightTable::load(weight_file);
      const auto w = weight_exact(g, weight_file.empty() ? nullptr : &user);
      if (!w) {
        if (as_json) {
          out << json{{"graph", graph_json(g)}, {"mode", "exact"}, {"known", false}}.dump(2) << "\n";
        } else {
          out << encode(g) << ": no exact weight known\n";
        }
        return kExitFailure;
      }
      const std::string numeric = format_real(mzv_eval(*w, weight_digits), weight_digits);
      if (as_json) {
        json j{{"graph", graph_json(g)}, {"mode", "exact"}, {"known", true}, {"value", weight_value_json(*w)},
               {"numeric", numeric}};
        out << j.dump(2) << "\n";
      } else {
        out << encode(g) << ": " << format_weight_value(*w) << " = " << numeric << "\n";
      }
      return kExitOk;
    }

    if (*star_cmd) {
      const auto pi = load_pi(star_pi);
      StarOptions so;
      so.dirac = star_dirac;
      so.allow_non_poisson = star_non_poisson;
      so.threads = common.threads;
      WeightTable user;
      if (!star_weights.empty()) {
        user = WeightTable::load(star_weights);
        so.user_weights = &user;
      }
      if (!star_numeric.empty()) {
        so.source = WeightSource::numeric;
        so.samples = parse_count(star_numeric[0], "samples");
        so.seed = parse_count(star_numeric[1], "seed");
        so.mc.threads = common.threads;
        if (so.samples < so.mc.batches) throw InputError("samples must be at least the number of batches");
      }
      StarProduct s;
      try {
        s = star_product(pi, star_order, so);
      } catch (const NotPoissonError& e) {
        throw InputError(e.what());
      }
      if (!star_apply.empty()) {
        Polynomial f, g;
        try {
          f = parse_polynomial(read_input(star_apply[0]), pi.dim());
          g = parse_polynomial(read_input(star_apply[1]), pi.dim());
        } catch (const ParseError& e) {
          throw InputError(std::string("--apply: ") + e.what());
        }
        const auto series = apply_star(s, f, g);
        if (as_json) {
          json coeffs = json::array();
          for (const auto& p : series) coeffs.push_back(format_polynomial(p));
          out << json{{"f", format_polynomial(f)}, {"g", format_polynomial(g)}, {"order", star_order},
                      {"dirac", star_dirac},       {"result", format_series(series)}, {"coefficients", coeffs}}
                         .dump(2)
              << "\n";
        } else {
          out << format_series(series) << "\n";
        }
        return kExitOk;
      }
      if (as_json) {
        json terms = json::array();
        for (int n = 0; n <= s.order(); ++n) terms.push_back({{"order", n}, {"operator", format_operator(s.series[n])}});
        json j{{"dim", pi.dim()}, {"order", s.order()}, {"dirac", star_dirac}, {"pi", format_multivector(pi)},
               {"weights", so.source == WeightSource::exact ? "exact" : "numeric"}, {"terms", terms}};
        if (!s.estimates.empty()) {
          json est = json::object();
          for (const auto& [k, e] : s.estimates) est[k] = estimate_json(e);
          j["estimates"] = est;
        }
        out << j.dump(2) << "\n";
      } else {
        out << format_bidiff_series(s.series);
      }
      return kExitOk;
    }

    if (*verify_cmd) {
      const auto pi = load_pi(verify_pi);
      const bool poisson = is_poisson(pi);
      if (!poisson && !verify_non_poisson) {
        throw InputError("pi is not Poisson ([pi, pi] != 0); pass --allow-non-poisson to verify anyway");
      }
      StarOptions so;
      so.dirac = verify_dirac;
      so.allow_non_poisson = true;
      so.threads = common.threads;
      WeightTable user;
      if (!verify_weights.empty()) {
        user = WeightTable::load(verify_weights);
        so.user_weights = &user;
      }
      const auto s = star_product(pi, verify_order, so);
      const auto report = verify_associativity(s, verify_cap);
      const bool quant = verify_order >= 1 ? verify_quantization(s) : true;
      const bool passed = poisson && report.passed() && quant;
      std::vector<int> bad_orders;
      for (std::size_t n = 0; n < report.residuals.size(); ++n) {
        if (!report.residuals[n].is_zero()) bad_orders.push_back(static_cast<int>(n));
      }
      if (as_json) {
        json residuals = json::array();
        for (std::size_t n = 0; n < report.residuals.size(); ++n) {
          residuals.push_back({{"order", n}, {"terms", report.residuals[n].size()},
                               {"operator", format_operator(report.residuals[n])}});
        }
        out << json{{"poisson", poisson},
                    {"order", verify_order},
                    {"dirac", verify_dirac},
                    {"associative", report.operator_identity_holds},
                    {"residuals", residuals},
                    {"sampled_triples", report.sampled_triples},
                    {"sample_failures", report.sample_failures},
                    {"failure_examples", report.failure_examples},
                    {"quantization", quant},
                    {"passed", passed}}
                   .dump(2)
            << "\n";
      } else {
        out << "poisson: " << (poisson ? "yes" : "no") << "\n";
        out << "associativity (operator identity, orders 0.." << verify_order
            << "): " << (report.operator_identity_holds ? "zero residual" : "FAILED") << "\n";
        for (int n : bad_orders) {
          out << "  order " << n << " residual: " << report.residuals[n].size() << " terms, "
              << format_operator(report.residuals[n]) << "\n";
        }
        out << "associativity (monomial triples up to degree " << verify_cap << "): " << report.sampled_triples
            << " triples, " << report.sample_failures << " failures\n";
        for (const auto& f : report.failure_examples) out << "  " << f << "\n";
        out << "order-one skew part equals " << (verify_dirac ? "pi/2" : "pi") << ": " << (quant ? "yes" : "no")
            << "\n";
        out << (passed ? "PASS" : "FAIL") << "\n";
      }
      return passed ? kExitOk : kExitFailure;
    }

    if (*brackets_cmd) {
      std::string result;
      try {
        if (*schouten_cmd) {
          result = format_multivector(schouten_bracket(parse_multivector(read_input(br_a)), parse_multivector(read_input(br_b))));
        } else if (*gerst_cmd) {
          result = format_operator(gerstenhaber_bracket(parse_operator(read_input(br_a)), parse_operator(read_input(br_b))));
        } else if (*hd_cmd) {
          result = format_operator(hochschild_d(parse_operator(read_input(br_a))));
        } else {
          result = format_operator(hkr(parse_multivector(read_input(br_a))));
        }
      } catch (const ParseError& e) {
        throw InputError(e.what());
      }
      if (as_json) {
        out << json{{"result", result}}.dump(2) << "\n";
      } else {
        out << result << "\n";
      }
      return kExitOk;
    }

    if (*solve_cmd) {
      SolverOptions so;
      so.pin_samples = solve_pin;
      so.check_samples = solve_check;
      so.seed = solve_seed;
      so.mc.threads = common.threads;
      for (const auto& p : solve_structures) so.structures.push_back(load_pi(p));
      const auto res = solve_weights_by_associativity(solve_order, so);
      std::vector<std::pair<AdmissibleGraph, WeightValue>> records;
      for (const auto& g : enumerate_graphs(solve_order)) {
        records.emplace_back(g, WeightValue::rational(res.weights.at(encode(g))));
      }
      if (!solve_output.empty()) {
        std::ofstream f(solve_output);
        if (!f) throw InputError("cannot write '" + solve_output + "'");
        for (const auto& d : res.diagnostics) f << "# " << d << "\n";
        f << format_weight_file(records);
      }
      if (as_json) {
        json orbits = json::array();
        for (std::size_t o = 0; o < res.orbits.size(); ++o) {
          json j{{"representative", encode(res.orbits[o].representative)},
                 {"size", res.orbits[o].members.size()},
                 {"weight", res.orbit_weights[o].get_str()},
                 {"free", std::find(res.free_orbits.begin(), res.free_orbits.end(), o) != res.free_orbits.end()}};
          if (o < res.check_estimates.size()) j["mc"] = estimate_json(res.check_estimates[o]);
          orbits.push_back(j);
        }
        json weights = json::object();
        for (const auto& [k, v] : res.weights) weights[k] = v.get_str();
        out << json{{"order", res.order},         {"equations", res.equations},
                    {"unknowns", res.unknowns},   {"rank", res.rank},
                    {"orbits", orbits},           {"weights", weights},
                    {"consistent_with_mc", res.consistent_with_mc}, {"diagnostics", res.diagnostics}}
                   .dump(2)
            << "\n";
      } else {
        for (const auto& d : res.diagnostics) out << "# " << d << "\n";
        out << format_weight_file(records);
      }
      return res.consistent_with_mc ? kExitOk : kExitFailure;
    }

    if (*mzv_cmd) {
      WeightValue w;
      try {
        w = parse_weight_value(mzv_value);
      } catch (const WeightFileError& e) {
        throw InputError(std::string("value: ") + e.detail + " at column " + std::to_string(e.column));
      }
      const std::string v = format_real(mzv_eval(w, mzv_digits), mzv_digits);
      if (as_json) {
        out << json{{"value", weight_value_json(w)}, {"digits", mzv_digits}, {"numeric", v}}.dump(2) << "\n";
      } else {
        out << v << "\n";
      }
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const WeightFileError& e) {
    err << "error: weight file " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace kstar::cli
