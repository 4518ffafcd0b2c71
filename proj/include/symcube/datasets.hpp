#ifndef SYMCUBE_DATASETS_HPP
#define SYMCUBE_DATASETS_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "symcube/complex.hpp"
#include "symcube/group.hpp"

namespace symcube {

// Built-in, digest-pinned data: the 124-vertex triangulation of
// S^2 x S^2 x S^2 (as group generators plus 149 orbit representatives),
// the 30-vertex CP^3 quotient (A4 generators plus 149 representatives),
// the 18-vertex CP^3 (622 explicit facets), and the vertex naming used by
// the quotient map V124 -> V30.
struct Dataset {
  std::string name;
  enum class Kind { orbit_spec, facet_list, naming_map } kind;
  std::string payload;
  std::string sha256;
  std::vector<std::int64_t> expected_f_vector;                   // empty if n/a
  std::vector<std::pair<std::size_t, std::size_t>> expected_orbits;  // (length, count)
  std::string note;
};

const Dataset& load_dataset(const std::string& name);
std::vector<std::string> dataset_names();

// Convenience loaders.
GroupSpec load_orbit_spec(const std::string& name);       // s2s2s2_124, cp3_30
Complex load_facet_complex(const std::string& name);      // cp3_18
std::unordered_map<std::string, std::string> load_naming_map();  // cp3_30_naming

enum class BuiltinAction { S3_on_V124, A4_on_V124, A4_on_V30 };

// The symmetry groups constructed from their subscript rules rather than
// from the embedded cycle text; tests check the two routes agree.  S3
// permutes the positions of x/v subscripts, A4 permutes their values, and
// both act on the u vertices by explicit cycles.
Group builtin_action(BuiltinAction which);

// Vertex table in the canonical order used by the 124-vertex dataset.
VertexTable v124_table();
VertexTable v30_table();

}  // namespace symcube

#endif
