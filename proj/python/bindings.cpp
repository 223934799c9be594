#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cactus/closure.hpp"
#include "cactus/equivalence.hpp"
#include "cactus/json_io.hpp"
#include "cactus/realize.hpp"

namespace py = pybind11;
using namespace cactus;

namespace {

SearchOptions search(std::size_t max_nodes, unsigned threads) {
  SearchOptions opts;
  opts.max_nodes = max_nodes;
  opts.threads = threads;
  return opts;
}

py::dict face_summary(GaussDiagram const& d) {
  auto const fs = faces(ribbon_graph(d));
  py::list components;
  for (auto const& c : fs.components) {
    py::dict entry;
    entry["vertices"] = c.vertices;
    entry["edges"] = c.edges;
    entry["faces"] = c.faces;
    entry["euler"] = c.euler();
    entry["free_loop"] = c.free_loop;
    components.append(entry);
  }
  py::dict out;
  out["vertices"] = fs.vertices;
  out["edges"] = fs.edges;
  out["faces"] = fs.faces.size();
  out["components"] = components;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cactus group words and Gauss diagrams of cactus doodles";

  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("perm", [](std::string const& word) { return perm_image(parse_word(word)).images(); },
        py::arg("word"), "Images of 1..n under the permutation of a word such as 'n=3 s(1,3)'.");
  m.def("normalize_word", [](std::string const& word) { return format_word(parse_word(word)); },
        py::arg("word"));

  py::class_<GaussDiagram>(m, "Diagram")
      .def_static("from_json", &parse_diagram, py::arg("text"))
      .def_static("close", [](std::string const& word) { return close(parse_word(word)); },
                  py::arg("word"), "The closure of a cactus braid word.")
      .def_static("figure_eight", &figure_eight)
      .def_static("embedded_circle", &embedded_circle)
      .def("to_json", [](GaussDiagram const& d) { return to_json(d).dump(); })
      .def("validate", [](GaussDiagram const& d) { return validate(d); },
           "None when valid, else the first violated invariant.")
      .def_property_readonly("crossing_count", [](GaussDiagram const& d) { return crossing_count(d); })
      .def_property_readonly("circle_count", [](GaussDiagram const& d) { return d.circles.size(); })
      .def_property_readonly("point_count", &GaussDiagram::point_count)
      .def("is_doodle", [](GaussDiagram const& d) { return is_doodle(d); })
      .def("canonical_form", [](GaussDiagram const& d, bool labeled) {
             return canonical_form(d, CanonicalOptions{labeled});
           }, py::arg("labeled_components") = false)
      .def("is_realizable", [](GaussDiagram const& d) { return is_realizable(d); })
      .def("faces", &face_summary)
      .def("psi_orbit", [](GaussDiagram const& d, std::size_t max_nodes, unsigned threads) {
             py::gil_scoped_release release;
             return psi_orbit(d, search(max_nodes, threads)).representatives;
           }, py::arg("max_nodes") = 1'000'000, py::arg("threads") = 1)
      .def("is_minimal", [](GaussDiagram const& d, std::size_t max_nodes) {
             py::gil_scoped_release release;
             return is_minimal(d, search(max_nodes, 1));
           }, py::arg("max_nodes") = 1'000'000)
      .def("minimize", [](GaussDiagram const& d, std::size_t max_nodes, unsigned threads) {
             py::gil_scoped_release release;
             return minimize(d, search(max_nodes, threads));
           }, py::arg("max_nodes") = 1'000'000, py::arg("threads") = 1)
      .def("min_crossing_number", [](GaussDiagram const& d, std::size_t max_nodes) {
             py::gil_scoped_release release;
             return min_crossing_number(d, search(max_nodes, 1));
           }, py::arg("max_nodes") = 1'000'000)
      .def("equivalence_key", [](GaussDiagram const& d, std::size_t max_nodes) {
             py::gil_scoped_release release;
             return equivalence_key(d, search(max_nodes, 1));
           }, py::arg("max_nodes") = 1'000'000)
      .def("equivalent", [](GaussDiagram const& a, GaussDiagram const& b, std::size_t max_nodes,
                            unsigned threads) {
             py::gil_scoped_release release;
             return equivalent(a, b, search(max_nodes, threads));
           }, py::arg("other"), py::arg("max_nodes") = 1'000'000, py::arg("threads") = 1)
      .def("doodle_equivalent", [](GaussDiagram const& a, GaussDiagram const& b) {
             return doodle_equivalent(a, b);
           }, py::arg("other"))
      .def("__eq__", [](GaussDiagram const& a, GaussDiagram const& b) {
             return canonical_form(a) == canonical_form(b);
           })
      .def("__hash__", [](GaussDiagram const& d) {
             return std::hash<std::string>{}(canonical_form(d));
           })
      .def("__repr__", [](GaussDiagram const& d) {
             return "<Diagram " + std::to_string(d.circles.size()) + " circles, " +
                    std::to_string(crossing_count(d)) + " singular sets>";
           });
}
