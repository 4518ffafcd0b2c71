#ifndef SYMCUBE_COMPLEX_HPP
#define SYMCUBE_COMPLEX_HPP

#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "symcube/error.hpp"

namespace symcube {

using VertexId = std::uint32_t;

// A face is a strictly increasing vector of vertex ids.
using Face = std::vector<VertexId>;

struct FaceHash {
  std::size_t operator()(const Face& f) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (VertexId v : f) {
      h ^= v;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Interned vertex labels with a stable iteration order.
class VertexTable {
 public:
  VertexTable() = default;
  explicit VertexTable(std::vector<std::string> labels);

  static bool valid_label(std::string_view s);

  // Adds the label if absent; returns its id.
  VertexId intern(const std::string& label);
  std::optional<VertexId> find(std::string_view label) const;
  // Like find() but throws Error when the label is unknown.
  VertexId id_of(std::string_view label) const;

  const std::string& label(VertexId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }

  bool operator==(const VertexTable& other) const {
    return labels_ == other.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> index_;
};

struct FVector {
  std::vector<std::int64_t> counts;  // f_0 .. f_d

  bool operator==(const FVector& other) const { return counts == other.counts; }
  std::string to_string() const;
};

struct PseudomanifoldReport {
  bool pure = false;
  bool closed = false;
  bool ridge_degrees_ok = false;
  bool strongly_connected = false;

  bool all() const { return pure && closed && ridge_degrees_ok && strongly_connected; }
};

// Immutable finite simplicial complex, identified with its facet set.
// Facets are stored sorted (ids within a facet, facets lexicographically);
// every vertex of the table occurs in at least one facet and no facet is
// contained in another.
class Complex {
 public:
  struct Normalized;

  // Builds a complex from arbitrary faces: deduplicates, drops non-maximal
  // faces, restricts the table to used labels.  Throws on an empty family.
  static Normalized from_faces(const VertexTable& verts, std::vector<Face> faces);
  static Complex from_facets(const VertexTable& verts, std::vector<Face> facets);

  const VertexTable& vertices() const { return verts_; }
  const std::vector<Face>& facets() const { return facets_; }
  std::size_t facet_count() const { return facets_.size(); }
  int dim() const { return dim_; }
  bool is_pure() const;

  bool has_vertex(std::string_view label) const {
    return verts_.find(label).has_value();
  }
  // True iff f is a face of the complex (subset of some facet).  The empty
  // face is always a face.
  bool has_face(const Face& f) const;

  // All k-faces in lexicographic id order; cached after the first call.
  const std::vector<Face>& faces(int k) const;

  Face face_from_labels(std::span<const std::string> labels) const;
  std::vector<std::string> labels_of(const Face& f) const;

  // Canonical facet-file rendering: labels sorted within a line, lines sorted.
  std::string render() const;

  Complex(const Complex& other);
  Complex& operator=(const Complex& other);
  Complex(Complex&& other) noexcept;
  Complex& operator=(Complex&& other) noexcept;

 private:
  Complex(VertexTable verts, std::vector<Face> facets, int dim)
      : verts_(std::move(verts)), facets_(std::move(facets)), dim_(dim) {}

  VertexTable verts_;
  std::vector<Face> facets_;
  int dim_ = -1;

  mutable std::mutex cache_mutex_;
  mutable std::vector<std::vector<Face>> face_cache_;  // indexed by dimension
  mutable std::vector<bool> face_cache_ready_;
};

struct Complex::Normalized {
  Complex complex;
  std::size_t absorbed = 0;  // input faces dropped as subsets of others
};

struct ParsedComplex {
  Complex complex;
  std::size_t absorbed = 0;
};

// Facet-file format: one facet per line, whitespace-separated labels,
// '#' starts a comment, blank lines ignored.
ParsedComplex parse_facets(std::string_view text);

FVector f_vector(const Complex& x);
std::int64_t euler_characteristic(const Complex& x);

Complex link(const Complex& x, const Face& sigma);
Complex antistar(const Complex& x, const Face& sigma);
Complex induced_subcomplex(const Complex& x, const std::vector<std::string>& labels);
Complex join_complexes(const Complex& x, const Complex& y);

// Subcomplex generated by the ridges lying in exactly one facet; nullopt
// when the complex is closed.  Requires a pure complex.
std::optional<Complex> boundary_subcomplex(const Complex& x);

PseudomanifoldReport pseudomanifold_check(const Complex& x);

// Largest k with f_{k-1} = C(f_0, k).
int neighborliness(const Complex& x);

Complex standard_sphere(int d);
Complex standard_ball(int d);

// Staircase (chain-of-poset) triangulation of |X| x |Y|.  The vertex orders
// are label lists covering V(X) and V(Y) exactly; product vertices are
// labelled "<x>__<y>".
Complex staircase_product(const Complex& x, const Complex& y,
                          const std::vector<std::string>& order_x,
                          const std::vector<std::string>& order_y);

std::int64_t binomial(std::int64_t n, std::int64_t k);

}  // namespace symcube

#endif
