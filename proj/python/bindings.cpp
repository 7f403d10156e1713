#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "refspin/engine.hpp"
#include "refspin/repro.hpp"
#include "refspin/rewrites.hpp"

namespace py = pybind11;
using namespace refspin;

namespace {

std::vector<std::vector<Complex>> to_rows(const CMatrix& m) {
  std::vector<std::vector<Complex>> rows(m.size(), std::vector<Complex>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) rows[i][j] = m(i, j);
  return rows;
}

CMatrix from_rows(const std::vector<std::vector<Complex>>& rows) {
  CMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

EngineConfig config(int threads) {
  EngineConfig cfg;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_refspin, m) {
  m.doc() = "Refined spin-model invariants of symmetric diagrams";

  static py::exception<Error> error(m, "RefspinError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  py::enum_<Method>(m, "Method")
      .value("NAIVE", Method::Naive)
      .value("ELIMINATE", Method::Eliminate)
      .value("AUTO", Method::Auto);

  py::class_<SpinModel>(m, "SpinModel")
      .def_readonly("n", &SpinModel::n)
      .def_readonly("d", &SpinModel::d)
      .def_readonly("alpha_w", &SpinModel::alpha_w)
      .def_property_readonly("w_plus", [](const SpinModel& s) { return to_rows(s.w_plus); })
      .def_property_readonly("w_minus", [](const SpinModel& s) { return to_rows(s.w_minus); });

  py::class_<RefinedSpinModel>(m, "RefinedSpinModel")
      .def_readonly("base", &RefinedSpinModel::base)
      .def_readonly("alpha_vp", &RefinedSpinModel::alpha_vp)
      .def_readonly("alpha_vm", &RefinedSpinModel::alpha_vm)
      .def_readonly("type_ii", &RefinedSpinModel::type_ii)
      .def_property_readonly("n", &RefinedSpinModel::n)
      .def_property_readonly("d", &RefinedSpinModel::d)
      .def_property_readonly("v_plus", [](const RefinedSpinModel& r) { return to_rows(r.v_plus); })
      .def_property_readonly("v_minus", [](const RefinedSpinModel& r) { return to_rows(r.v_minus); })
      .def_property_readonly("translation_invariant", [](const RefinedSpinModel& r) { return is_translation_invariant(r); });

  m.def("model", &parse_model_spec, py::arg("spec"), "Builds a refined model from a spec such as 'potts:n=3'.");
  m.def(
      "spin_model", [](const std::vector<std::vector<Complex>>& w, double d) { return verify_spin_model(from_rows(w), d); },
      py::arg("w_plus"), py::arg("d"));
  m.def(
      "refine", [](const SpinModel& s, const std::vector<std::vector<Complex>>& v) { return make_refined(s, from_rows(v)); },
      py::arg("base"), py::arg("v_plus"));

  py::class_<SymmetricDiagram>(m, "Diagram")
      .def_readonly("name", &SymmetricDiagram::name)
      .def_property_readonly("crossing_count", [](const SymmetricDiagram& d) { return d.crossings.size(); })
      .def("__str__", &format_sud);

  py::class_<TaitGraph>(m, "TaitGraph")
      .def_readonly("name", &TaitGraph::name)
      .def_readonly("vertex_count", &TaitGraph::vertex_count)
      .def_readonly("p_b", &TaitGraph::p_b)
      .def_readonly("n_b", &TaitGraph::n_b)
      .def_property_readonly("edge_count", [](const TaitGraph& g) { return g.edges.size(); })
      .def("__str__", &format_smg);

  m.def("parse_sud", [](const std::string& text) { return parse_sud(text); }, py::arg("text"));
  m.def("parse_smg", [](const std::string& text) { return parse_smg(text); }, py::arg("text"));
  m.def(
      "tait_graph",
      [](const SymmetricDiagram& d, int coloring) {
        const auto cs = checkerboard(d);
        return tait_graph(d, coloring == 2 ? cs.second : cs.first);
      },
      py::arg("diagram"), py::arg("coloring") = 1);
  m.def("fixture", [](const std::string& name) { return fixture_diagram(name); }, py::arg("name"));
  m.def("fixture_names", [] {
    std::vector<std::string> names;
    for (const auto& f : fixtures()) names.push_back(f.name);
    return names;
  });

  m.def(
      "invariant",
      [](const TaitGraph& g, const RefinedSpinModel& r, Method method, int threads) {
        return normalized_invariant(g, r, method, config(threads)).i;
      },
      py::arg("graph"), py::arg("model"), py::arg("method") = Method::Auto, py::arg("threads") = 0);
  m.def(
      "partition_function",
      [](const TaitGraph& g, const RefinedSpinModel& r, Method method, int threads) {
        return normalized_invariant(g, r, method, config(threads)).z;
      },
      py::arg("graph"), py::arg("model"), py::arg("method") = Method::Auto, py::arg("threads") = 0);
  m.def(
      "diagram_invariant",
      [](const SymmetricDiagram& d, const RefinedSpinModel& r, Method method, double tol) {
        return invariant_of_diagram(d, r, method, {}, tol).i;
      },
      py::arg("diagram"), py::arg("model"), py::arg("method") = Method::Auto, py::arg("tol") = kTolNum);

  m.def("connected_sum", &connected_sum, py::arg("a"), py::arg("b"), py::arg("v1") = 0, py::arg("v2") = 0);
  m.def("random_equivalent", &random_equivalent, py::arg("graph"), py::arg("seed"), py::arg("steps"),
        py::arg("axis_pairs_allowed"));

  m.def("acceptance", [] {
    std::vector<py::dict> out;
    for (const auto& c : run_acceptance()) {
      py::dict row;
      row["id"] = c.id;
      row["title"] = c.title;
      row["tol"] = c.tol;
      row["pass"] = c.pass;
      row["detail"] = c.detail;
      out.push_back(row);
    }
    return out;
  });
}
