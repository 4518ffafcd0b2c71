#ifndef SYMCUBE_TEST_HELPERS_HPP
#define SYMCUBE_TEST_HELPERS_HPP

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "symcube/complex.hpp"
#include "symcube/group.hpp"
#include "symcube/rng.hpp"

namespace symcube::testing {

inline Complex complex_of(const std::string& facet_text) {
  return parse_facets(facet_text).complex;
}

inline Face face_of(const Complex& x, const std::vector<std::string>& labels) {
  return x.face_from_labels(labels);
}

inline std::vector<std::int64_t> fvec(const Complex& x) {
  return f_vector(x).counts;
}

// Random complex on up to `max_vertices` with random faces; never empty.
inline Complex random_complex(SplitMix64& rng, int max_vertices = 8,
                              int max_faces = 10, int max_face_size = 4) {
  const int n = 3 + int(rng.below(std::uint64_t(max_vertices - 2)));
  VertexTable table;
  for (int i = 0; i < n; ++i) table.intern("w" + std::to_string(i));
  const int m = 1 + int(rng.below(std::uint64_t(max_faces)));
  std::vector<Face> faces;
  for (int f = 0; f < m; ++f) {
    const int size = 1 + int(rng.below(std::uint64_t(std::min(max_face_size, n))));
    Face face;
    while (int(face.size()) < size) {
      const VertexId v = VertexId(rng.below(n));
      if (std::find(face.begin(), face.end(), v) == face.end()) face.push_back(v);
    }
    std::sort(face.begin(), face.end());
    faces.push_back(std::move(face));
  }
  return Complex::from_faces(table, std::move(faces)).complex;
}

// Random permutation of the vertices of x, as a relabelled copy plus the map.
inline std::pair<Complex, std::vector<VertexId>> random_relabel(const Complex& x,
                                                                SplitMix64& rng) {
  const std::size_t n = x.vertices().size();
  std::vector<VertexId> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = VertexId(i);
  for (std::size_t i = n; i > 1; --i)
    std::swap(perm[i - 1], perm[rng.below(i)]);
  // new labels: fresh names in permuted positions
  VertexTable table;
  std::vector<std::string> new_label(n);
  for (std::size_t i = 0; i < n; ++i)
    new_label[perm[i]] = "r" + std::to_string(i);
  for (std::size_t i = 0; i < n; ++i) table.intern(new_label[i]);
  std::vector<Face> facets;
  for (const Face& f : x.facets()) {
    Face g;
    for (VertexId v : f) g.push_back(perm[v]);
    std::sort(g.begin(), g.end());
    facets.push_back(std::move(g));
  }
  return {Complex::from_facets(table, std::move(facets)), perm};
}

// Barycentric subdivision: one vertex per face, facets are the maximal
// flags of faces ordered by inclusion.
inline Complex barycentric(const Complex& x) {
  VertexTable table;
  std::unordered_map<Face, VertexId, FaceHash> cone;
  for (int k = 0; k <= x.dim(); ++k) {
    for (const Face& f : x.faces(k)) {
      std::string label = "c";
      for (VertexId v : f) label += "_" + x.vertices().label(v);
      cone.emplace(f, table.intern(label));
    }
  }
  std::vector<Face> facets;
  for (const Face& f : x.facets()) {
    std::vector<VertexId> order(f.begin(), f.end());
    std::sort(order.begin(), order.end());
    do {
      Face flag;
      Face partial;
      for (VertexId v : order) {
        partial.push_back(v);
        std::sort(partial.begin(), partial.end());
        flag.push_back(cone.at(partial));
      }
      std::sort(flag.begin(), flag.end());
      facets.push_back(flag);
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return Complex::from_facets(table, std::move(facets));
}

// Boundary complex of the icosahedron: apexes t/b, upper cycle u0..u4,
// lower cycle l0..l4; the antipodal map is (t b)(u_i l_{i+2})(l_i u_{i+3}).
inline Complex icosahedron() {
  std::string text;
  auto tri = [&](const std::string& a, const std::string& b, const std::string& c) {
    text += a + " " + b + " " + c + "\n";
  };
  auto u = [](int i) { return "u" + std::to_string(((i % 5) + 5) % 5); };
  auto l = [](int i) { return "l" + std::to_string(((i % 5) + 5) % 5); };
  for (int i = 0; i < 5; ++i) {
    tri("t", u(i), u(i + 1));
    tri("b", l(i), l(i + 1));
    tri(u(i), u(i + 1), l(i));
    tri(l(i), l(i + 1), u(i + 1));
  }
  return complex_of(text);
}

inline Permutation icosahedron_antipodal(const Complex& ico) {
  std::string cycles = "(t b)";
  auto u = [](int i) { return "u" + std::to_string(((i % 5) + 5) % 5); };
  auto l = [](int i) { return "l" + std::to_string(((i % 5) + 5) % 5); };
  for (int i = 0; i < 5; ++i) cycles += "(" + u(i) + " " + l(i + 2) + ")";
  return Permutation::from_cycles(cycles, ico.vertices());
}

}  // namespace symcube::testing

#endif
