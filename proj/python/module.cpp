#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "patternforge/cli.hpp"
#include "patternforge/detect.hpp"
#include "patternforge/oracle.hpp"
#include "patternforge/suites.hpp"

namespace py = pybind11;
using namespace pf;

namespace {

py::int_ big(const BigInt& v) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(v.str().c_str(), nullptr, 10))); }

py::dict ops_dict(const OpCounts& o) {
  py::dict d;
  d["adds"] = o.adds;
  d["muls"] = o.muls;
  return d;
}

DetectConfig config(int trials, std::uint64_t seed, const std::string& field, const std::string& route, int threads) {
  DetectConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.field = parse_field(field);
  cfg.route = parse_route(route);
  cfg.threads = threads;
  return cfg;
}

Graph as_pattern(const py::object& p) {
  if (py::isinstance<py::str>(p)) {
    PatternId id = parse_pattern_spec(p.cast<std::string>());
    validate(id);
    return make_pattern(id);
  }
  return p.cast<Graph>();
}

py::dict suite_dict(const SuiteResult& r) {
  py::list checks;
  for (const auto& c : r.checks) {
    py::dict d;
    d["name"] = c.name;
    d["pass"] = c.pass;
    d["detail"] = c.detail;
    d["seconds"] = c.seconds;
    checks.append(d);
  }
  py::dict d;
  d["suite"] = r.suite;
  d["pass"] = r.pass();
  d["checks"] = checks;
  d["seconds"] = r.seconds;
  return d;
}

}  // namespace

PYBIND11_MODULE(patternforge, m) {
  m.doc() = "Algebraic induced-subgraph detection with a brute-force oracle";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_RuntimeError);
  py::register_exception<GuardError>(m, "GuardError", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def(py::init<int>(), py::arg("n"))
      .def(py::init<int, const std::vector<Edge>&>(), py::arg("n"), py::arg("edges"))
      .def_static("from_graph6", &parse_graph6)
      .def_static("from_edge_list", &parse_edge_list)
      .def_static("random", &random_graph, py::arg("n"), py::arg("p"), py::arg("seed"))
      .def_static("pattern", [](const std::string& spec) { return as_pattern(py::str(spec)); })
      .def("to_graph6", &to_graph6)
      .def("to_edge_list", &to_edge_list)
      .def("complement", &complement)
      .def("has_edge", &Graph::has_edge)
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("m", &Graph::edge_count)
      .def("edges", &Graph::edges)
      .def("__eq__", &Graph::operator==)
      .def("__repr__", [](const Graph& g) { return "Graph(n=" + std::to_string(g.n()) + ", g6='" + to_graph6(g) + "')"; });

  py::class_<DetectionReport>(m, "DetectionReport")
      .def_property_readonly("verdict", [](const DetectionReport& r) { return verdict_name(r.verdict); })
      .def_property_readonly("present", [](const DetectionReport& r) { return r.verdict == Verdict::Present; })
      .def_readonly("trials", &DetectionReport::trials)
      .def_readonly("seed", &DetectionReport::seed)
      .def_property_readonly("ring_ops", [](const DetectionReport& r) { return ops_dict(r.ring_ops); })
      .def_property_readonly("base_ops", [](const DetectionReport& r) { return ops_dict(r.base_ops); })
      .def_readonly("seconds", &DetectionReport::seconds)
      .def_readonly("route", &DetectionReport::route)
      .def_readonly("field", &DetectionReport::field)
      .def_readonly("builder", &DetectionReport::builder)
      .def("__repr__", [](const DetectionReport& r) {
        return "DetectionReport(" + verdict_name(r.verdict) + ", trials=" + std::to_string(r.trials) + ", route=" + r.route + ")";
      });

  m.def(
      "detect_induced",
      [](const py::object& pattern, const Graph& host, int trials, std::uint64_t seed, const std::string& field,
         const std::string& route, int threads) {
        Graph h = as_pattern(pattern);
        py::gil_scoped_release release;
        return detect_induced(h, host, config(trials, seed, field, route, threads));
      },
      py::arg("pattern"), py::arg("host"), py::arg("trials") = 32, py::arg("seed") = 1, py::arg("field") = "gf2-64",
      py::arg("route") = "auto", py::arg("threads") = 1);
  m.def(
      "detect_subgraph",
      [](const py::object& pattern, const Graph& host, int trials, std::uint64_t seed, const std::string& field,
         const std::string& route, int threads) {
        Graph h = as_pattern(pattern);
        py::gil_scoped_release release;
        return detect_subgraph(h, host, config(trials, seed, field, route, threads));
      },
      py::arg("pattern"), py::arg("host"), py::arg("trials") = 32, py::arg("seed") = 1, py::arg("field") = "gf2-64",
      py::arg("route") = "auto", py::arg("threads") = 1);
  m.def(
      "count_homomorphisms", [](const py::object& p, const Graph& host) { return big(count_homomorphisms(as_pattern(p), host)); },
      py::arg("pattern"), py::arg("host"));
  m.def(
      "count_induced", [](const py::object& p, const Graph& host) { return brute_force_induced(as_pattern(p), host); },
      py::arg("pattern"), py::arg("host"));
  m.def(
      "parity_induced",
      [](const py::object& p, const Graph& host) {
        ParityReport r = parity_induced(as_pattern(p), host);
        py::dict d;
        d["brute"] = r.brute;
        d["identity"] = r.identity;
        d["agree"] = r.agree;
        d["route"] = r.route;
        d["evaluations"] = r.evaluations;
        return d;
      },
      py::arg("pattern"), py::arg("host"));
  m.def(
      "expand_hom", [](const py::object& p, int n) { return expand_hom(as_pattern(p), n).to_text(); }, py::arg("pattern"),
      py::arg("n"));
  m.def(
      "circuit_text",
      [](const std::string& spec, int n, const std::string& method) {
        PatternId id = parse_pattern_spec(spec);
        validate(id);
        BuildMethod bm = method.empty() ? default_method(id) : parse_method(method);
        return to_text(build(BuilderSpec{id, bm, n, false}));
      },
      py::arg("pattern"), py::arg("n"), py::arg("method") = "");
  m.def(
      "run_suite",
      [](const std::string& name, std::optional<int> n, std::uint64_t seed) { return suite_dict(run_suite(name, n, seed)); },
      py::arg("name"), py::arg("n") = py::none(), py::arg("seed") = 1);
  m.def("suite_names", &suite_names);
  m.def(
      "bench",
      [](const std::string& subject, const std::vector<int>& grid, std::uint64_t seed) {
        BenchResult b = bench(subject, grid, seed);
        py::list rows;
        for (const auto& r : b.rows) {
          py::dict d;
          d["n"] = r.n;
          d["ops"] = r.ops;
          d["seconds"] = r.seconds;
          rows.append(d);
        }
        py::dict d;
        d["subject"] = b.subject;
        d["rows"] = rows;
        d["slope"] = b.slope;
        return d;
      },
      py::arg("subject"), py::arg("grid") = std::vector<int>{8, 16, 32, 64}, py::arg("seed") = 1);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end in-process; returns (exit_code, stdout, stderr).");
  m.attr("SCHEMA") = kSchema;
}
