#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adsgeom/errors.hpp"
#include "adsgeom/serialize.hpp"
#include "adsgeom/suites.hpp"
#include "adsgeom/svg.hpp"
#include "adsgeom/version.hpp"

namespace py = pybind11;
using namespace adsgeom;

namespace {

// Structured results cross the boundary as JSON text; the Python package
// decodes them into dicts.
std::string dump(const Json& j) { return j.dump(); }
Json load(const std::string& s) {
  try {
    return Json::parse(s);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

bool is_first_return(const Json& j) { return j.is_object() && j.value("kind", "") == "first_return"; }

std::string classify_isometry_json(const ProjMatrix& g) {
  Json r{{"class", to_json(classify_isometry(g))}, {"trace", g.trace()}};
  if (!g.is_identity()) {
    Json rays = Json::array();
    for (const auto& f : fixed_points_hs2(g)) rays.push_back({{"region", region_name(f.region)}, {"ray", to_json(f.ray)}});
    r["fixed_points_hs2"] = rays;
    r["translation_number"] = translation_number(lift_canonical(g));
  }
  return dump(r);
}

std::string classify_link_json(const std::string& text) {
  const SingularityType t = classify_singularity(link_from_json(load(text)));
  const auto m = particle_mass(t);
  return dump({{"type", to_json(t)},
               {"description", describe(t)},
               {"causality", to_json(is_causal_line(t))},
               {"mass", m ? Json(*m) : Json(nullptr)}});
}

std::string surface_json(const std::string& text) {
  const Json in = load(text);
  if (is_first_return(in)) return dump(to_json(detect_ccc(first_return_from_json(in))));
  const HSSurface s = surface_from_json(in);
  return dump({{"census", to_json(region_decomposition(s))},
               {"causality", to_json(surface_causal(s))},
               {"interaction", interaction_name(classify_interaction(s))},
               {"surface", surface_to_json(s)}});
}

std::string spacetime_json(const std::string& text) {
  const Spacetime st = spacetime_from_json(load(text));
  return dump({{"kind", recipe_kind(*st.recipe)}, {"singular_graph", graph_to_json(st.graph)}});
}

std::string polyhedron_json(const std::string& text) {
  const HS3Polyhedron p = polyhedron_from_json(load(text));
  return dump({{"type", polyhedron_type_name(classify_polyhedron(p))}, {"induced", to_json(induced_structure(p))}});
}

std::string plot_svg(const std::string& text) {
  const Json in = load(text);
  if (is_first_return(in)) return cobweb_svg(first_return_from_json(in));
  return surface_svg(surface_from_json(in));
}

}  // namespace

PYBIND11_MODULE(_adsgeom, m) {
  m.doc() = "Singular anti-de Sitter spacetimes, HS surfaces and their isometries";
  m.attr("__version__") = std::string(kVersion);

  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  auto precondition = py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ArithmeticError);
  py::register_exception<UndecidableError>(m, "UndecidableError", precondition.ptr());
  (void)input_error;

  py::class_<ProjMatrix>(m, "ProjMatrix")
      .def(py::init<double, double, double, double>(), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
      .def_static("identity", &ProjMatrix::identity)
      .def_static("parse", &parse_matrix, py::arg("text"))
      .def_property_readonly("entries", &ProjMatrix::entries)
      .def_property_readonly("trace", &ProjMatrix::trace)
      .def("inverse", &ProjMatrix::inverse)
      .def("is_identity", &ProjMatrix::is_identity, py::arg("tol") = 1e-9)
      .def("__mul__", &ProjMatrix::operator*)
      .def("__repr__", [](const ProjMatrix& g) { return "ProjMatrix(" + format_matrix(g) + ")"; })
      .def("__str__", &format_matrix);

  m.def("rotation", &rotation, py::arg("angle"), "Elliptic element fixing the center of the disk.");
  m.def("diagonal_boost", &diagonal_boost, py::arg("length"));
  m.def("unipotent", &unipotent, py::arg("t"));
  m.def("is_elliptic", &is_elliptic);
  m.def("is_parabolic", &is_parabolic);
  m.def("is_hyperbolic", &is_hyperbolic);

  m.def("_classify_isometry", &classify_isometry_json);
  m.def("_classify_link", &classify_link_json);
  m.def("_surface", &surface_json);
  m.def("_spacetime", &spacetime_json);
  m.def("_polyhedron", &polyhedron_json);
  m.def("_plot", &plot_svg);
  m.def("_run_suite", [](const std::string& name, std::uint64_t seed) { return dump(to_json(run_suite(name, seed))); });
  m.def("suite_names", &suite_names);
}
