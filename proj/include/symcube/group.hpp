#ifndef SYMCUBE_GROUP_HPP
#define SYMCUBE_GROUP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "symcube/complex.hpp"

namespace symcube {

// Total bijection on the ids of a fixed VertexTable.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<VertexId> images);

  static Permutation identity(std::size_t n);
  // Parses parenthesized cycle notation, e.g. "(a b c)(d e)".  Labels not
  // mentioned are fixed.  Throws on unknown labels or overlapping cycles.
  static Permutation from_cycles(std::string_view text, const VertexTable& verts);

  std::size_t degree() const { return images_.size(); }
  VertexId apply(VertexId v) const { return images_[v]; }
  Face apply_face(const Face& f) const;

  Permutation compose(const Permutation& inner) const;  // this(inner(v))
  Permutation inverse() const;
  bool is_identity() const;

  const std::vector<VertexId>& images() const { return images_; }
  bool operator==(const Permutation& other) const { return images_ == other.images_; }
  bool operator<(const Permutation& other) const { return images_ < other.images_; }

  std::string to_cycles(const VertexTable& verts) const;

 private:
  std::vector<VertexId> images_;
};

struct NamedPermutation {
  std::string name;
  Permutation perm;
};

inline constexpr std::size_t kDefaultGroupCap = 1000000;

// Permutation group given by named generators; the closure is enumerated
// on demand (breadth-first by word length, levels sorted by image vector)
// and cached.
class Group {
 public:
  Group(VertexTable verts, std::vector<NamedPermutation> generators);

  const VertexTable& vertices() const { return verts_; }
  const std::vector<NamedPermutation>& generators() const { return gens_; }

  // All elements in deterministic order; throws ErrorCode::cap_exceeded if
  // the closure grows beyond cap.
  const std::vector<Permutation>& elements(std::size_t cap = kDefaultGroupCap) const;
  std::size_t order(std::size_t cap = kDefaultGroupCap) const {
    return elements(cap).size();
  }

  // Orbits of the vertex set, each sorted, listed by smallest member.
  std::vector<std::vector<VertexId>> vertex_orbits(
      std::size_t cap = kDefaultGroupCap) const;

 private:
  VertexTable verts_;
  std::vector<NamedPermutation> gens_;
  mutable std::vector<Permutation> closure_;
  mutable bool closure_ready_ = false;
};

// Orbit-spec file: sections "VERTICES:", "GEN <name>: <cycles>", "REPS:".
struct GroupSpec {
  VertexTable vertices;
  Group group;
  std::vector<Face> reps;
};

GroupSpec parse_group_spec(std::string_view text);

struct ExpandResult {
  Complex complex;
  std::vector<std::size_t> orbit_lengths;  // one per representative
};

// Union of the G-orbits of the representative facets.
ExpandResult orbit_expand(const std::vector<Face>& reps, const Group& g,
                          std::size_t cap = kDefaultGroupCap);

bool is_automorphism(const Complex& x, const Permutation& p);

struct ActionViolation {
  enum class Kind {
    orbit_mates_adjacent,     // purity condition (a)
    stabilizer_not_transitive,  // purity condition (b)
    no_goodness_witness,
  };
  Kind kind;
  std::vector<std::string> witness;  // offending vertices / face labels
};

struct ActionReport {
  bool is_pure = false;
  bool is_good = false;
  std::vector<ActionViolation> violations;
};

// Checks purity (conditions (a) and (b) over every face) and goodness
// (witness search over the whole group).  Every generator must be an
// automorphism of x.
ActionReport check_action(const Complex& x, const Group& g);

struct QuotientResult {
  Complex complex;
  std::vector<VertexId> vertex_map;       // id in x -> id in quotient
  std::vector<std::string> orbit_names;   // quotient label per orbit
};

// Quotient by a pure action.  Orbits are named by their lexicographically
// least member unless `naming` maps every vertex label to an orbit label.
QuotientResult quotient(const Complex& x, const Group& g,
                        const std::unordered_map<std::string, std::string>* naming = nullptr);

}  // namespace symcube

#endif
