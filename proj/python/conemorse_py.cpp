#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "conemorse/morse.hpp"
#include "conemorse/pipeline.hpp"
#include "conemorse/report.hpp"
#include "conemorse/scenario.hpp"

namespace py = pybind11;
using namespace conemorse;

namespace {

std::vector<std::uint64_t> coefficients(const FormalSeries& s) {
  std::vector<std::uint64_t> out;
  for (int d = 0; d <= s.degree(); ++d) out.push_back(s.coefficient(d));
  return out;
}

FormalSeries from_coefficients(const std::vector<std::uint64_t>& c) {
  FormalSeries s;
  for (std::size_t d = 0; d < c.size(); ++d) s.set_coefficient(static_cast<int>(d), c[d]);
  return s;
}

// Complex and report built together, so Python sees one object per run.
struct MorseRun {
  Scenario scenario;
  SampledComplex complex;
  MorseReport report;

  std::string json() const { return morse_report(scenario, complex, report); }
};

MorseRun run_morse(const Scenario& s) {
  auto c = build_sampled_complex(s.surface(), s.p(), s.q(), s.complex_options());
  auto r = morse_relation_check(c.input, s.name, s.eps);
  return {s, std::move(c), std::move(r)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Morse theory of the path space of a cone: geodesics, flows, indices.";

  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
  py::register_exception<PathError>(m, "PathError", PyExc_ValueError);
  py::register_exception<MorseError>(m, "MorseError", PyExc_ValueError);
  py::register_exception<SeriesError>(m, "SeriesError", PyExc_ArithmeticError);
  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);

  py::class_<ConeSurface>(m, "ConeSurface")
      .def(py::init<double>(), py::arg("alpha"))
      .def_property_readonly("alpha", &ConeSurface::alpha)
      .def_property_readonly("is_plane", &ConeSurface::is_plane)
      .def("__repr__", [](const ConeSurface& s) {
        return "ConeSurface(alpha=" + std::to_string(s.alpha()) + ")";
      });

  py::class_<ConePoint>(m, "ConePoint")
      .def_readonly("r", &ConePoint::r)
      .def_readonly("theta", &ConePoint::theta)
      .def_property_readonly("is_vertex", &ConePoint::is_vertex)
      .def("__eq__", [](const ConePoint& a, const ConePoint& b) { return a == b; })
      .def("__repr__", [](const ConePoint& p) {
        return "ConePoint(r=" + std::to_string(p.r) + ", theta=" + std::to_string(p.theta) + ")";
      });

  m.def("make_point", &make_point, py::arg("surface"), py::arg("r"), py::arg("theta"));
  m.def("normalize_angle", &normalize_angle, py::arg("surface"), py::arg("theta"));
  m.def(
      "local_distance",
      [](const ConeSurface& s, const ConePoint& a, const ConePoint& b) {
        const auto d = local_distance(s, a, b);
        return py::make_tuple(d.length, to_string(d.route));
      },
      py::arg("surface"), py::arg("a"), py::arg("b"),
      "(length, route) of the shortest path between two points.");

  py::class_<Geodesic>(m, "Geodesic")
      .def_property_readonly("kind", [](const Geodesic& g) { return to_string(g.kind); })
      .def_property_readonly("is_broken", [](const Geodesic& g) { return g.kind.is_broken(); })
      .def_property_readonly("sheet", [](const Geodesic& g) -> std::optional<int> {
        if (g.kind.is_broken()) return std::nullopt;
        return g.kind.sheet;
      })
      .def_readonly("delta", &Geodesic::delta)
      .def_readonly("length", &Geodesic::length)
      .def_readonly("energy", &Geodesic::energy)
      .def("__repr__", [](const Geodesic& g) {
        return "Geodesic(" + to_string(g.kind) + ", energy=" + std::to_string(g.energy) + ")";
      });

  py::class_<GeodesicSet>(m, "GeodesicSet")
      .def_readonly("geodesics", &GeodesicSet::geodesics)
      .def_property_readonly("has_ties", &GeodesicSet::has_ties)
      .def_property_readonly("classical_count", &GeodesicSet::classical_count)
      .def("is_tied", &GeodesicSet::is_tied)
      .def("__len__", [](const GeodesicSet& s) { return s.geodesics.size(); });

  m.def("enumerate_classical", &enumerate_classical, py::arg("surface"), py::arg("p"), py::arg("q"));
  m.def("enumerate_all", &enumerate_all, py::arg("surface"), py::arg("p"), py::arg("q"));
  m.def("geodesic_count", &geodesic_count, py::arg("surface"), py::arg("p"), py::arg("q"));

  py::class_<DiscretePath>(m, "DiscretePath")
      .def(py::init<ConeSurface, std::vector<ConePoint>>(), py::arg("surface"), py::arg("nodes"))
      .def_property_readonly("nodes",
                             [](const DiscretePath& p) {
                               return std::vector<ConePoint>(p.nodes().begin(), p.nodes().end());
                             })
      .def_property_readonly("segments", &DiscretePath::segments)
      .def_property_readonly("energy", [](const DiscretePath& p) { return discrete_energy(p); })
      .def_property_readonly("length", [](const DiscretePath& p) { return discrete_length(p); });

  m.def("chord_interpolation", &chord_interpolation, py::arg("surface"), py::arg("p"), py::arg("q"),
        py::arg("segments") = 64);
  m.def("polar_interpolation", &polar_interpolation, py::arg("surface"), py::arg("p"), py::arg("q"),
        py::arg("segments") = 64);
  m.def("path_distance", &path_distance, py::arg("a"), py::arg("b"));

  py::class_<FlowOptions>(m, "FlowOptions")
      .def(py::init<>())
      .def_readwrite("tol", &FlowOptions::tol)
      .def_readwrite("max_iter", &FlowOptions::max_iter)
      .def_readwrite("step", &FlowOptions::step);

  py::class_<FlowResult>(m, "FlowResult")
      .def_readonly("path", &FlowResult::final)
      .def_readonly("converged", &FlowResult::converged)
      .def_readonly("iterations", &FlowResult::iterations)
      .def_readonly("energy_trace", &FlowResult::energy_trace)
      .def_property_readonly("energy", &FlowResult::energy);

  m.def("flow_to_critical", &flow_to_critical, py::arg("path"), py::arg("options") = FlowOptions{});
  m.def(
      "classify_limit",
      [](const FlowResult& r, const GeodesicSet& set, double tol) -> std::optional<std::string> {
        const auto k = classify_limit(r, set.geodesics, tol);
        if (!k) return std::nullopt;
        return to_string(*k);
      },
      py::arg("result"), py::arg("geodesics"), py::arg("energy_tol") = 1e-4);

  py::class_<FormalSeries>(m, "FormalSeries")
      .def(py::init(&from_coefficients), py::arg("coefficients"))
      .def_property_readonly("coefficients", &coefficients)
      .def_property_readonly("degree", &FormalSeries::degree)
      .def("at_one", &FormalSeries::at_one)
      .def("__add__", [](const FormalSeries& a, const FormalSeries& b) { return a + b; })
      .def("__eq__", [](const FormalSeries& a, const FormalSeries& b) { return a == b; })
      .def("__str__", &FormalSeries::to_string)
      .def("__repr__", [](const FormalSeries& s) { return "FormalSeries(" + s.to_string() + ")"; });
  m.def("divide_one_plus_lambda", &divide_one_plus_lambda, py::arg("series"));

  py::class_<Scenario>(m, "Scenario")
      .def_readwrite("name", &Scenario::name)
      .def_readwrite("samples", &Scenario::samples)
      .def_readwrite("flow_samples", &Scenario::flow_samples)
      .def_readwrite("seed", &Scenario::seed)
      .def_readonly("alpha", &Scenario::alpha)
      .def_property_readonly("surface", &Scenario::surface)
      .def_property_readonly("p", &Scenario::p)
      .def_property_readonly("q", &Scenario::q)
      .def("__str__", &format_scenario);
  m.def("parse_scenario", &parse_scenario, py::arg("text"), py::arg("origin") = "<scenario>");
  m.def("load_scenario", &load_scenario, py::arg("path"));

  m.def(
      "geodesics_json", [](const Scenario& s) {
        return geodesics_report(s, enumerate_all(s.surface(), s.p(), s.q()));
      },
      py::arg("scenario"));
  m.def(
      "flow_json",
      [](const Scenario& s) {
        const auto set = enumerate_all(s.surface(), s.p(), s.q());
        return flow_report(s, set, run_flows(s.surface(), s.p(), s.q(), set, s.flow_plan()));
      },
      py::arg("scenario"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "develop_svg",
      [](const Scenario& s) { return develop_svg(s, enumerate_all(s.surface(), s.p(), s.q())); },
      py::arg("scenario"));

  py::class_<MorseRun>(m, "MorseRun")
      .def_property_readonly("total", [](const MorseRun& r) { return r.report.total; })
      .def_property_readonly("relation_holds", [](const MorseRun& r) { return r.report.relation.holds(); })
      .def_property_readonly("quotient", [](const MorseRun& r) { return r.report.relation.quotient; })
      .def_property_readonly("violation", [](const MorseRun& r) { return r.report.relation.violation; })
      .def_property_readonly("essential_components",
                             [](const MorseRun& r) { return r.report.essential_components; })
      .def_property_readonly("level_indices",
                             [](const MorseRun& r) {
                               std::vector<std::pair<double, FormalSeries>> out;
                               for (const auto& l : r.report.levels) out.emplace_back(l.energy, l.pairs.front());
                               return out;
                             })
      .def_property_readonly("rips_scale", [](const MorseRun& r) { return r.complex.rips_scale; })
      .def("merges_in", [](const MorseRun& r, double lo, double hi) {
        return merge_deaths(r.complex.persistence, lo, hi);
      })
      .def("json", &MorseRun::json);
  m.def("morse", &run_morse, py::arg("scenario"), py::call_guard<py::gil_scoped_release>(),
        "Sample the path space, build the energy-filtered complex and check the Morse relation.");

  m.attr("__version__") = kToolVersion;
}
