// Python module igraphing. Rationals cross the boundary as "p/q" strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ig/compiler.hpp"
#include "ig/corpus.hpp"
#include "ig/errors.hpp"
#include "ig/measurement.hpp"
#include "ig/properties.hpp"

namespace py = pybind11;
using namespace ig;

namespace {

py::dict path_sum_dict(const PathSum& s) {
  py::dict d;
  d["accept"] = to_string(s.stackRestored);
  d["all_classes"] = to_string(s.lowerBound);
  d["exact"] = s.exact;
  py::dict classes;
  for (const auto& [t, p] : s.total) classes[py::str(to_string(t))] = to_string(p);
  d["classes"] = classes;
  return d;
}

ExecOptions depth(std::uint32_t stackDepth) {
  ExecOptions o;
  o.stackDepth = stackDepth;
  return o;
}

}  // namespace

PYBIND11_MODULE(igraphing, m) {
  m.doc() = "Graphings, their execution and the automata they interpret";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());

  py::class_<Automaton>(m, "Automaton")
      .def_readonly("heads", &Automaton::heads)
      .def_readonly("pushdown", &Automaton::pushdown)
      .def_readonly("states", &Automaton::states)
      .def("to_text", [](const Automaton& a) { return to_text(a); })
      .def("violations", [](const Automaton& a) { return validate(a); });

  py::class_<GraphingRep>(m, "Graphing")
      .def_readonly("dialect", &GraphingRep::dialect)
      .def_property_readonly("edge_count", [](const GraphingRep& g) { return g.edges.size(); })
      .def("to_text", [](const GraphingRep& g) { return to_text(g); })
      .def("is_deterministic", [](const GraphingRep& g) { return is_deterministic(g); })
      .def("is_subprobabilistic", [](const GraphingRep& g) { return is_subprobabilistic(g); });

  py::class_<CompiledMachine>(m, "CompiledMachine")
      .def_readonly("graphing", &CompiledMachine::graphing)
      .def_readonly("heads", &CompiledMachine::heads)
      .def_readonly("pushdown", &CompiledMachine::pushdown)
      .def("describe_state", [](const CompiledMachine& c, std::uint32_t i) { return c.codec.describe(i); });

  m.def("parse_automaton", &automaton_from_text, py::arg("text"));
  m.def("parse_graphing", &from_text, py::arg("text"));
  m.def("corpus_names", [] {
    std::vector<std::string> out;
    for (const auto& na : corpus()) out.push_back(na.name);
    return out;
  });
  m.def("corpus_automaton", &corpus_automaton, py::arg("name"));

  m.def(
      "oracle",
      [](const Automaton& a, const std::string& w, std::uint32_t stackDepth) {
        OracleResult o = oracle(a, w, stackDepth);
        py::dict d;
        d["accept"] = to_string(o.accept);
        d["reject"] = to_string(o.reject);
        d["exact"] = o.exact;
        return d;
      },
      py::arg("automaton"), py::arg("word"), py::arg("stack_depth") = 16);

  m.def(
      "compile",
      [](const Automaton& a, bool prune) {
        require_valid(a);
        CompiledMachine c = compile(a);
        return prune ? prune_unreachable(c) : c;
      },
      py::arg("automaton"), py::arg("prune") = false);

  m.def(
      "accept",
      [](const CompiledMachine& c, const std::string& w, std::uint32_t stackDepth) {
        return path_sum_dict(run(c, canonical_representation(w), depth(stackDepth)));
      },
      py::arg("machine"), py::arg("word"), py::arg("stack_depth") = 16,
      "Path sum of the accepting cycles against the canonical representation of the word.");

  m.def(
      "membership",
      [](const GraphingRep& g, const std::string& w, const std::string& test, std::uint32_t stackDepth) {
        return membership(g, w, parse_test(test), depth(stackDepth));
      },
      py::arg("graphing"), py::arg("word"), py::arg("test") = "pos", py::arg("stack_depth") = 16,
      "Orthogonality to a test: 'neg', 'pos' or 'prob:<eps>'.");

  m.def(
      "uniform",
      [](const GraphingRep& g, const std::string& w, const std::string& test, std::size_t reps, std::uint64_t seed) {
        return check_uniformity(g, w, parse_test(test), reps, seed).uniform;
      },
      py::arg("graphing"), py::arg("word"), py::arg("test") = "pos", py::arg("reps") = 5, py::arg("seed") = 1);

  m.def(
      "plug",
      [](const GraphingRep& f, const GraphingRep& g, const std::string& v, const std::string& c, const std::string& w,
         std::uint32_t stackDepth) {
        PlugResult r = plug(f, g, CutSpec{parse_region(c), parse_region(v), parse_region(w)}, depth(stackDepth));
        return py::make_tuple(r.graphing, r.exact);
      },
      py::arg("f"), py::arg("g"), py::arg("left"), py::arg("cut"), py::arg("right"), py::arg("stack_depth") = 16,
      "Execution F::G; the regions are given as text. Returns (graphing, exact).");

  m.def("equivalent", &equivalent, py::arg("f"), py::arg("g"));
  m.def("is_refinement", &is_refinement, py::arg("f"), py::arg("g"));

  m.def("measure", [](const std::string& region) { return to_string(measure(parse_region(region))); },
        py::arg("region"));
  m.def("reduce_theta", [](const std::string& w) { return to_string(reduce(parse_theta(w))); }, py::arg("word"));

  m.def("suite_names", &suite_names);
  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed, std::size_t count) {
        SuiteResult r = run_suite(name, seed, count);
        py::dict d;
        d["name"] = r.name;
        d["cases"] = r.cases;
        d["failures"] = r.failures;
        d["skipped"] = r.skipped;
        d["passed"] = r.passed();
        d["counterexamples"] = r.counterexamples;
        return d;
      },
      py::arg("name"), py::arg("seed") = 1, py::arg("count") = 0);
}
