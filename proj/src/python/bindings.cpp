#include "cfsem/dsep.hpp"
#include "cfsem/error.hpp"
#include "cfsem/exact_dist.hpp"
#include "cfsem/generator.hpp"
#include "cfsem/graph_io.hpp"
#include "cfsem/query.hpp"
#include "cfsem/sem_io.hpp"
#include "cfsem/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

using namespace cfsem;

// Probability tables cross the boundary as {"scope": [...], "rows": {(values...): Fraction}}.
py::dict table_to_python(const ProbTable& t) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  py::dict rows;
  for (std::size_t f = 0; f < t.cell_count(); ++f) {
    const auto values = t.unflatten(f);
    py::tuple key(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) key[k] = t.domains()[k][values[k]].text();
    rows[key] = fraction(to_string(t.cell(f)));
  }
  py::dict out;
  out["scope"] = t.scope();
  out["rows"] = rows;
  return out;
}

py::dict criterion_to_python(const CriterionReport& r) {
  py::dict out;
  out["holds"] = r.holds();
  out["no_descendants"] = r.no_descendants;
  out["blocks_backdoor"] = r.blocks_backdoor;
  out["descendant_members"] = r.descendant_members;
  out["witness"] = r.witness ? py::object(py::str(r.witness->to_string())) : py::object(py::none());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact computations on finite structural causal models";

  static py::exception<PreconditionError> precondition(m, "PreconditionError", PyExc_ValueError);
  static py::exception<PositivityError> positivity(m, "PositivityError", PyExc_ValueError);
  static py::exception<CapacityError> capacity(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PreconditionError& e) {
      py::set_error(precondition, e.what());
    } catch (const PositivityError& e) {
      py::set_error(positivity, e.what());
    } catch (const CapacityError& e) {
      py::set_error(capacity, e.what());
    } catch (const InputError& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  py::class_<Dag>(m, "Dag")
      .def(py::init<std::vector<std::string>, std::vector<Edge>>(), py::arg("nodes"), py::arg("edges"))
      .def_property_readonly("nodes", &Dag::labels)
      .def_property_readonly("edges", &Dag::edges)
      .def("parents", [](const Dag& g, const std::string& v) { return parents(g, v); })
      .def("children", [](const Dag& g, const std::string& v) { return children(g, v); })
      .def("topological_order", [](const Dag& g) { return topological_sort(g); })
      .def("remove_outgoing", [](const Dag& g, const NodeSet& s) { return remove_outgoing(g, s); })
      .def("to_text", [](const Dag& g) { return format_graph_text(g); })
      .def("__eq__", [](const Dag& a, const Dag& b) { return a == b; })
      .def("__repr__", [](const Dag& g) {
        return "<Dag " + std::to_string(g.size()) + " nodes, " + std::to_string(g.edge_count()) + " edges>";
      });

  m.def("parse_graph", &parse_graph_text, py::arg("text"));
  m.def("load_graph", [](const std::string& path) { return load_graph_file(path); }, py::arg("path"));

  m.def(
      "is_d_separated",
      [](const Dag& g, const NodeSet& x, const NodeSet& y, const NodeSet& z) {
        return is_d_separated(g, {x, y, z});
      },
      py::arg("dag"), py::arg("x"), py::arg("y"), py::arg("z") = NodeSet{});
  m.def(
      "backdoor_criterion",
      [](const Dag& g, const NodeSet& a_set, const std::string& y, const NodeSet& l) {
        return criterion_to_python(backdoor_criterion(g, a_set, y, l));
      },
      py::arg("dag"), py::arg("treatment"), py::arg("outcome"), py::arg("adjust") = NodeSet{});

  py::class_<SemModel>(m, "Model")
      .def_property_readonly("dag", &SemModel::dag)
      .def_property_readonly("nodes", [](const SemModel& s) { return s.dag().labels(); })
      .def_property_readonly("mode", [](const SemModel& s) { return std::string(to_string(s.model_class())); })
      .def("to_json", &serialize_sem_json)
      .def("__eq__", [](const SemModel& a, const SemModel& b) { return a == b; });

  m.def("parse_model", [](const std::string& text) { return parse_sem_json(text); }, py::arg("text"));
  m.def("load_model", [](const std::string& path) { return load_sem_file(path); }, py::arg("path"));
  m.def(
      "generate",
      [](std::uint64_t seed, std::size_t max_nodes, std::size_t max_domain, std::size_t max_disturbance,
         double edge_probability, bool ffrcistg) {
        GeneratorProfile p;
        p.max_nodes = max_nodes;
        p.max_domain = max_domain;
        p.max_disturbance = max_disturbance;
        p.edge_probability = edge_probability;
        p.ffrcistg = ffrcistg;
        return generate_random_sem(seed, p);
      },
      py::arg("seed"), py::arg("max_nodes") = 7, py::arg("max_domain") = 3, py::arg("max_disturbance") = 3,
      py::arg("edge_probability") = 0.5, py::arg("ffrcistg") = false);

  m.def("joint", [](const SemModel& s) { return table_to_python(exact_joint(s)); }, py::arg("model"));
  m.def(
      "query",
      [](const SemModel& s, const std::string& q) { return table_to_python(evaluate_query(s, parse_query(q))); },
      py::arg("model"), py::arg("query"));
  m.def(
      "counterfactual",
      [](const SemModel& s, const std::string& iv, const NodeSet& targets) {
        return table_to_python(counterfactual_dist(s, Intervention::parse(iv), targets));
      },
      py::arg("model"), py::arg("intervention"), py::arg("targets"));

  m.def(
      "check_lemmas",
      [](const SemModel& s, const std::string& iv) { return check_lemma_equalities(s, Intervention::parse(iv)).passed(); },
      py::arg("model"), py::arg("intervention"));
  m.def(
      "check_consistency",
      [](const SemModel& s, const std::string& iv, const NodeSet& w) {
        return check_consistency_event(s, Intervention::parse(iv), w).holds;
      },
      py::arg("model"), py::arg("intervention"), py::arg("w"));
  m.def(
      "check_backdoor_theorem",
      [](const SemModel& s, const std::string& iv, const std::string& y, const NodeSet& l) {
        const auto r = check_backdoor_theorem(s, Intervention::parse(iv), y, l);
        py::dict out;
        out["criterion"] = criterion_to_python(r.criterion);
        out["positivity"] = r.positivity;
        out["ignorability"] = r.ignorability;
        out["formula_equal"] = r.formula_equal;
        out["confirmed"] = r.confirmed();
        out["counterfactual"] = table_to_python(r.counterfactual);
        out["adjusted"] = r.adjusted ? py::object(table_to_python(*r.adjusted)) : py::object(py::none());
        return out;
      },
      py::arg("model"), py::arg("intervention"), py::arg("outcome"), py::arg("adjust"));
  m.def("check_ffrcistg", [](const SemModel& s) { return check_ffrcistg(s).holds; }, py::arg("model"));
  m.def(
      "check_ffrcistg_preserved",
      [](const SemModel& s, const std::string& iv) { return check_ffrcistg_preserved(s, Intervention::parse(iv)); },
      py::arg("model"), py::arg("intervention"));
}
