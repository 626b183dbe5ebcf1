#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "surgery/dehn.hpp"
#include "surgery/diagram.hpp"
#include "surgery/dsl.hpp"
#include "surgery/error.hpp"
#include "surgery/fixtures.hpp"
#include "surgery/morse.hpp"
#include "surgery/surgery1d2d.hpp"

namespace py = pybind11;
using namespace surgery;

namespace {

LinkDiagram fixture(const std::string& name) {
  auto d = fixtures::by_name(name);
  if (!d) throw py::key_error("unknown fixture: " + name);
  return *d;
}

Reconnection reconnection_from(const std::string& s) {
  if (s == "coherent") return Reconnection::Coherent;
  if (s == "crossed") return Reconnection::Crossed;
  throw py::value_error("reconnection must be 'coherent' or 'crossed'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Surgery toolkit core";

  auto error = py::register_exception<Error>(m, "SurgeryError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::class_<LinkDiagram>(m, "LinkDiagram")
      .def(py::init(&parse_pd), py::arg("pd"))
      .def_static("fixture", &fixture, py::arg("name"))
      .def_static("braid", [](int strands, std::vector<int> word) { return braid_closure(strands, word); },
                  py::arg("strands"), py::arg("word"))
      .def_property_readonly("crossings", &LinkDiagram::crossings)
      .def_property_readonly("free_loops", &LinkDiagram::free_loops)
      .def("component_count", [](const LinkDiagram& d) { return component_count(d); })
      .def("writhe", [](const LinkDiagram& d) { return writhe(d); })
      .def("linking_number", [](const LinkDiagram& d, std::size_t i, std::size_t j) {
        return linking_number(d, i, j);
      })
      .def("bracket", [](const LinkDiagram& d) { return kauffman_bracket(d).to_string(); })
      .def("jones", [](const LinkDiagram& d) { return normalized_bracket(d).to_string(); })
      .def("mirror", [](const LinkDiagram& d) { return mirror(d); })
      .def("union", [](const LinkDiagram& a, const LinkDiagram& b) { return disjoint_union(a, b); })
      .def(
          "reconnect",
          [](const LinkDiagram& d, int a, int b, const std::string& how) {
            return one_dim_zero_surgery(d, {ArcRef::edge(a), ArcRef::edge(b), reconnection_from(how)});
          },
          py::arg("a"), py::arg("b"), py::arg("how") = "coherent")
      .def("to_pd", [](const LinkDiagram& d) { return to_pd(d); })
      .def("__eq__", [](const LinkDiagram& a, const LinkDiagram& b) { return a == b; })
      .def("__repr__", [](const LinkDiagram& d) { return "LinkDiagram('" + to_pd(d) + "')"; });

  m.def(
      "h1",
      [](const LinkDiagram& d, std::vector<int> framings) {
        return h1_of_surgery(FramedLink(d, std::move(framings))).to_string();
      },
      py::arg("link"), py::arg("framings"), "First homology of the surgered manifold, e.g. 'Z/5'.");

  m.def(
      "group_order",
      [](const LinkDiagram& d, std::vector<int> framings, std::size_t max_cosets) -> std::optional<std::size_t> {
        auto p = tietze_simplify(surgery_group(FramedLink(d, std::move(framings))));
        auto r = todd_coxeter(p, max_cosets);
        if (!r.finite()) return std::nullopt;
        return r.order;
      },
      py::arg("link"), py::arg("framings"), py::arg("max_cosets") = kDefaultMaxCosets,
      "Order of the fundamental group, or None when coset enumeration exceeds the bound.");

  m.def(
      "presentation",
      [](const LinkDiagram& d, std::vector<int> framings) {
        auto p = tietze_simplify(surgery_group(FramedLink(d, std::move(framings))));
        std::vector<std::string> rels;
        for (const auto& r : p.relators) rels.push_back(word_to_string(r));
        return py::make_tuple(p.generator_count, rels);
      },
      py::arg("link"), py::arg("framings"));

  m.def(
      "surface_surgery",
      [](std::vector<int> genera, const std::string& op, std::size_t a, std::size_t b, const std::string& kind,
         int g1, int g2) {
        SurfaceDescriptor s(std::move(genera));
        if (op == "join") return two_dim_zero_surgery(s, {a, b}).genera();
        CurveKind k;
        if (kind == "trivial")
          k = CurveKind::TrivialSeparating;
        else if (kind == "nonsep")
          k = CurveKind::NonSeparating;
        else if (kind == "split")
          k = CurveKind::SeparatingSplit;
        else
          throw py::value_error("kind must be 'trivial', 'nonsep' or 'split'");
        if (op != "cut") throw py::value_error("op must be 'join' or 'cut'");
        return two_dim_one_surgery(s, {a, k, g1, g2}).genera();
      },
      py::arg("genera"), py::arg("op"), py::arg("a"), py::arg("b") = 0, py::arg("kind") = "trivial",
      py::arg("g1") = 0, py::arg("g2") = 0, "Returns the list of genera after one surgery.");

  m.def(
      "level_set",
      [](int dim, int index, double t, int resolution, double window, const std::string& format) {
        auto mesh = sample_level_set({dim, index, window}, t, resolution);
        py::dict out;
        out["components"] = mesh.component_count;
        out["vertices"] = mesh.vertices.size();
        out["cells"] = mesh.cells.size();
        out["mesh"] = emit_mesh(mesh, mesh_format_from_name(format));
        return out;
      },
      py::arg("dim"), py::arg("index"), py::arg("t"), py::arg("resolution") = 64, py::arg("window") = 1.0,
      py::arg("format") = "obj");

  m.def(
      "run_script",
      [](const std::string& source, std::size_t max_cosets, std::uint64_t seed, const std::string& mesh_root,
         bool write_meshes) {
        dsl::RunOptions o;
        o.max_cosets = max_cosets;
        o.seed = seed;
        o.mesh_root = mesh_root;
        o.write_meshes = write_meshes;
        return dsl::run_source(source, o).dump();
      },
      py::arg("source"), py::arg("max_cosets") = kDefaultMaxCosets, py::arg("seed") = 1,
      py::arg("mesh_root") = ".", py::arg("write_meshes") = false, "Runs a script; returns the JSON report text.");
}
