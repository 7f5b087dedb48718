#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kstar/graphs.hpp"
#include "kstar/hochschild.hpp"
#include "kstar/mzv.hpp"
#include "kstar/star.hpp"
#include "kstar/text_format.hpp"
#include "kstar/weight_table.hpp"
#include "kstar/weights.hpp"

namespace py = pybind11;
using namespace kstar;

namespace {

StarProduct build(const std::string& pi_text, int order, bool dirac, bool allow_non_poisson) {
  StarOptions o;
  o.dirac = dirac;
  o.allow_non_poisson = allow_non_poisson;
  return star_product(parse_multivector(pi_text), order, o);
}

}  // namespace

PYBIND11_MODULE(_kstar, m) {
  m.doc() = "Graph star products, weights and bracket utilities (text in, text out)";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const GraphParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const WeightFileError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const MissingWeightError& e) {
      PyErr_SetString(PyExc_LookupError, e.what());
    }
  });

  m.def("graphs", [](int order) {
    std::vector<std::string> out;
    for (const auto& g : enumerate_graphs(order)) out.push_back(encode(g));
    return out;
  }, py::arg("order"));
  m.def("graph_count", &graph_count, py::arg("order"));

  m.def("weight_exact", [](const std::string& graph) -> std::optional<std::string> {
    const auto w = weight_exact(decode(graph));
    if (!w) return std::nullopt;
    return format_weight_value(*w);
  }, py::arg("graph"));

  m.def("weight_mc", [](const std::string& graph, std::uint64_t samples, std::uint64_t seed, std::size_t batches,
                        const std::string& sampler) {
    MonteCarloOptions o;
    o.batches = batches;
    if (sampler == "mixture") {
      o.sampler = Sampler::mixture;
    } else if (sampler != "cayley") {
      throw std::invalid_argument("sampler must be 'cayley' or 'mixture'");
    }
    const auto g = decode(graph);
    WeightEstimate e;
    {
      py::gil_scoped_release release;
      e = weight_mc(g, samples, seed, o);
    }
    py::dict d;
    d["mean"] = e.mean;
    d["standard_error"] = e.standard_error;
    d["samples"] = e.samples;
    d["seed"] = e.seed;
    d["batches"] = e.batches;
    d["rejected"] = e.rejected;
    return d;
  }, py::arg("graph"), py::arg("samples"), py::arg("seed"), py::arg("batches") = 64, py::arg("sampler") = "cayley");

  m.def("wedge_integral", [](std::complex<double> y, std::complex<double> z) { return wedge_integral_closed(y, z); },
        py::arg("y"), py::arg("z"));

  m.def("star", [](const std::string& pi, int order, const std::string& f, const std::string& g, bool dirac,
                   bool allow_non_poisson) {
    const auto s = build(pi, order, dirac, allow_non_poisson);
    const int d = s.pi.dim();
    std::vector<std::string> out;
    for (const auto& c : apply_star(s, parse_polynomial(f, d), parse_polynomial(g, d))) out.push_back(format_polynomial(c));
    return out;
  }, py::arg("pi"), py::arg("order"), py::arg("f"), py::arg("g"), py::arg("dirac") = false,
     py::arg("allow_non_poisson") = false);

  m.def("star_series", [](const std::string& pi, int order, bool dirac) {
    return format_bidiff_series(build(pi, order, dirac, false).series);
  }, py::arg("pi"), py::arg("order"), py::arg("dirac") = false);

  m.def("verify", [](const std::string& pi, int order, int degree_cap, bool dirac) {
    const auto s = build(pi, order, dirac, false);
    const auto r = verify_associativity(s, degree_cap);
    py::dict d;
    d["associative"] = r.operator_identity_holds;
    d["sampled_triples"] = r.sampled_triples;
    d["sample_failures"] = r.sample_failures;
    d["quantization"] = order >= 1 && verify_quantization(s);
    return d;
  }, py::arg("pi"), py::arg("order"), py::arg("degree_cap") = 2, py::arg("dirac") = false);

  m.def("schouten", [](const std::string& a, const std::string& b) {
    return format_multivector(schouten_bracket(parse_multivector(a), parse_multivector(b)));
  }, py::arg("a"), py::arg("b"));
  m.def("is_poisson", [](const std::string& pi) { return is_poisson(parse_multivector(pi)); }, py::arg("pi"));
  m.def("gerstenhaber", [](const std::string& a, const std::string& b) {
    return format_operator(gerstenhaber_bracket(parse_operator(a), parse_operator(b)));
  }, py::arg("a"), py::arg("b"));
  m.def("hochschild_d", [](const std::string& a) { return format_operator(hochschild_d(parse_operator(a))); },
        py::arg("op"));
  m.def("hkr", [](const std::string& a) { return format_operator(hkr(parse_multivector(a))); }, py::arg("a"));

  m.def("mzv", [](const std::string& value, int digits) {
    return format_real(mzv_eval(parse_weight_value(value), digits), digits);
  }, py::arg("value"), py::arg("digits") = 30);
}
