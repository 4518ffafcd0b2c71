// Python bindings for the main operations.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symcube/bistellar.hpp"
#include "symcube/datasets.hpp"
#include "symcube/group.hpp"
#include "symcube/homology.hpp"
#include "symcube/isomorphism.hpp"

namespace py = pybind11;
using namespace symcube;

namespace {

std::vector<std::vector<std::string>> facet_labels(const Complex& x) {
  std::vector<std::vector<std::string>> out;
  out.reserve(x.facet_count());
  for (const Face& f : x.facets()) {
    auto labels = x.labels_of(f);
    std::sort(labels.begin(), labels.end());
    out.push_back(std::move(labels));
  }
  return out;
}

Face face_arg(const Complex& x, const std::vector<std::string>& labels) {
  return x.face_from_labels(labels);
}

py::dict homology_dict(const HomologyProfile& profile) {
  py::dict d;
  d["ring"] = profile.ring.name();
  d["betti"] = profile.betti;
  d["torsion"] = profile.torsion;
  d["ranks"] = profile.ranks;
  return d;
}

}  // namespace

PYBIND11_MODULE(symcube, m) {
  m.doc() = "finite simplicial complexes: orbit expansion, quotients, homology, "
            "bistellar flips, isomorphism";

  py::register_exception<Error>(m, "SymcubeError");

  py::class_<Complex>(m, "Complex")
      .def_static(
          "parse",
          [](const std::string& text) { return parse_facets(text).complex; },
          py::arg("text"), "Parse a facet file (one facet per line).")
      .def_property_readonly("dim", &Complex::dim)
      .def_property_readonly("n_vertices",
                             [](const Complex& x) { return x.vertices().size(); })
      .def_property_readonly("n_facets", &Complex::facet_count)
      .def_property_readonly("vertices",
                             [](const Complex& x) { return x.vertices().labels(); })
      .def_property_readonly("facets", &facet_labels)
      .def("f_vector", [](const Complex& x) { return f_vector(x).counts; })
      .def("euler", [](const Complex& x) { return euler_characteristic(x); })
      .def("neighborliness", [](const Complex& x) { return neighborliness(x); })
      .def(
          "link",
          [](const Complex& x, const std::vector<std::string>& face) {
            return link(x, face_arg(x, face));
          },
          py::arg("face"))
      .def(
          "antistar",
          [](const Complex& x, const std::vector<std::string>& face) {
            return antistar(x, face_arg(x, face));
          },
          py::arg("face"))
      .def(
          "induced",
          [](const Complex& x, const std::vector<std::string>& vertices) {
            return induced_subcomplex(x, vertices);
          },
          py::arg("vertices"))
      .def("boundary",
           [](const Complex& x) -> std::optional<Complex> {
             return boundary_subcomplex(x);
           })
      .def("is_pseudomanifold",
           [](const Complex& x) {
             const auto r = pseudomanifold_check(x);
             py::dict d;
             d["pure"] = r.pure;
             d["closed"] = r.closed;
             d["ridge_degrees_ok"] = r.ridge_degrees_ok;
             d["strongly_connected"] = r.strongly_connected;
             return d;
           })
      .def("orientable", [](const Complex& x) { return orientability(x); })
      .def(
          "homology",
          [](const Complex& x, const std::string& ring) {
            return homology_dict(homology(x, Ring::parse(ring)));
          },
          py::arg("ring") = "z")
      .def("render", &Complex::render)
      .def("__repr__", [](const Complex& x) {
        return "<Complex dim=" + std::to_string(x.dim()) +
               " vertices=" + std::to_string(x.vertices().size()) +
               " facets=" + std::to_string(x.facet_count()) + ">";
      });

  m.def("standard_sphere", &standard_sphere, py::arg("d"));
  m.def("standard_ball", &standard_ball, py::arg("d"));
  m.def("join_complexes", &join_complexes, py::arg("x"), py::arg("y"));
  m.def(
      "staircase_product",
      [](const Complex& x, const Complex& y) {
        return staircase_product(x, y, x.vertices().labels(), y.vertices().labels());
      },
      py::arg("x"), py::arg("y"),
      "Staircase triangulation of |x| x |y| in vertex-table order.");

  py::class_<GroupSpec>(m, "GroupSpec")
      .def_property_readonly("n_vertices",
                             [](const GroupSpec& s) { return s.vertices.size(); })
      .def_property_readonly("n_reps", [](const GroupSpec& s) { return s.reps.size(); })
      .def_property_readonly("generator_names", [](const GroupSpec& s) {
        std::vector<std::string> names;
        for (const auto& g : s.group.generators()) names.push_back(g.name);
        return names;
      });

  m.def("parse_group_spec",
        [](const std::string& text) { return parse_group_spec(text); });

  m.def(
      "expand",
      [](const GroupSpec& spec) {
        auto result = orbit_expand(spec.reps, spec.group);
        return py::make_tuple(result.complex, result.orbit_lengths);
      },
      py::arg("spec"), "Expand the orbit representatives; returns (complex, orbit_lengths).");

  m.def(
      "check_action",
      [](const Complex& x, const GroupSpec& spec,
         const std::vector<std::string>& generators) {
        std::vector<NamedPermutation> gens;
        for (const auto& g : spec.group.generators())
          if (generators.empty() ||
              std::find(generators.begin(), generators.end(), g.name) != generators.end())
            gens.push_back(g);
        Group group(spec.vertices, std::move(gens));
        const auto report = check_action(x, group);
        py::dict d;
        d["pure"] = report.is_pure;
        d["good"] = report.is_good;
        d["n_violations"] = report.violations.size();
        return d;
      },
      py::arg("complex"), py::arg("spec"),
      py::arg("generators") = std::vector<std::string>{});

  m.def(
      "quotient",
      [](const Complex& x, const GroupSpec& spec,
         const std::vector<std::string>& generators,
         const std::optional<std::unordered_map<std::string, std::string>>& naming) {
        std::vector<NamedPermutation> gens;
        for (const auto& g : spec.group.generators())
          if (generators.empty() ||
              std::find(generators.begin(), generators.end(), g.name) != generators.end())
            gens.push_back(g);
        Group group(spec.vertices, std::move(gens));
        return quotient(x, group, naming ? &*naming : nullptr).complex;
      },
      py::arg("complex"), py::arg("spec"),
      py::arg("generators") = std::vector<std::string>{},
      py::arg("naming") = std::nullopt);

  m.def(
      "reduce",
      [](const Complex& x, std::uint64_t seed, std::int64_t max_moves,
         double max_seconds, std::int64_t target_vertices) {
        SearchConfig cfg;
        cfg.seed = seed;
        cfg.max_moves = max_moves;
        cfg.max_seconds = max_seconds;
        cfg.target_vertices = target_vertices;
        auto result = reduce_search(x, cfg);
        py::dict d;
        d["best"] = result.best_complex;
        d["final"] = result.final_complex;
        d["log"] = result.log.render();
        d["moves"] = result.moves_applied;
        d["status"] = int(result.status);
        return d;
      },
      py::arg("complex"), py::arg("seed"), py::arg("max_moves") = 100000,
      py::arg("max_seconds") = 60.0, py::arg("target_vertices") = 0);

  m.def(
      "certify_manifold",
      [](const Complex& x, std::uint64_t seed, std::int64_t max_moves,
         double max_seconds) {
        SearchConfig budget;
        budget.seed = seed;
        budget.max_moves = max_moves;
        budget.max_seconds = max_seconds;
        const auto report = certify_manifold(x, budget);
        py::dict d;
        d["verdict"] = report.verdict == ManifoldReport::Verdict::manifold
                           ? "manifold"
                           : (report.verdict == ManifoldReport::Verdict::not_manifold
                                  ? "not_manifold"
                                  : "unknown");
        d["links"] = report.link_outcomes;
        return d;
      },
      py::arg("complex"), py::arg("seed"), py::arg("max_moves") = 10000,
      py::arg("max_seconds") = 600.0);

  m.def(
      "are_isomorphic",
      [](const Complex& x, const Complex& y)
          -> std::optional<std::unordered_map<std::string, std::string>> {
        const auto found = are_isomorphic(x, y);
        if (!found) return std::nullopt;
        std::unordered_map<std::string, std::string> map;
        for (VertexId v = 0; v < x.vertices().size(); ++v)
          map[x.vertices().label(v)] = y.vertices().label((*found)[v]);
        return map;
      },
      py::arg("x"), py::arg("y"));

  m.def(
      "automorphism_group",
      [](const Complex& x) {
        const auto group = automorphism_group(x);
        std::vector<std::string> gens;
        for (const auto& g : group.generators)
          gens.push_back(g.to_cycles(x.vertices()));
        return py::make_tuple(group.order, gens);
      },
      py::arg("x"), "Exact order and generators in cycle notation.");

  m.def("dataset_names", &dataset_names);
  m.def(
      "load_dataset",
      [](const std::string& name) {
        const Dataset& d = load_dataset(name);
        py::dict out;
        out["name"] = d.name;
        out["payload"] = d.payload;
        out["sha256"] = d.sha256;
        out["note"] = d.note;
        return out;
      },
      py::arg("name"));
  m.def("load_orbit_spec", &load_orbit_spec, py::arg("name"));
  m.def(
      "load_complex",
      [](const std::string& name) {
        const Dataset& d = load_dataset(name);
        if (d.kind == Dataset::Kind::facet_list)
          return parse_facets(d.payload).complex;
        if (d.kind == Dataset::Kind::orbit_spec) {
          const GroupSpec spec = parse_group_spec(d.payload);
          return orbit_expand(spec.reps, spec.group).complex;
        }
        throw Error("dataset '" + name + "' is not a complex");
      },
      py::arg("name"), "Load a dataset as a complex (orbit specs are expanded).");
  m.def("load_naming_map", &load_naming_map);
}
