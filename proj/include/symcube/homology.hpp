#ifndef SYMCUBE_HOMOLOGY_HPP
#define SYMCUBE_HOMOLOGY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "symcube/complex.hpp"

namespace symcube {

// Coefficient ring for homology computations.
struct Ring {
  enum class Kind { integers, rationals, prime_field };
  Kind kind = Kind::integers;
  int p = 0;  // prime, for prime_field

  static Ring Z() { return {Kind::integers, 0}; }
  static Ring Q() { return {Kind::rationals, 0}; }
  static Ring GF(int p) { return {Kind::prime_field, p}; }

  // "z", "q", "gf2", "gf3", "gf5", ... (any prime)
  static Ring parse(std::string_view name);
  std::string name() const;
};

struct SparseEntry {
  std::uint32_t row;
  std::int8_t value;  // +1 / -1 for boundary matrices
};

// Simplicial chain complex data: faces per dimension in lexicographic order
// and signed boundary columns.  cols[k][j] is the boundary of the j-th
// k-face (k >= 1), rows indexing the (k-1)-faces.
struct ChainData {
  std::vector<std::vector<Face>> faces;
  std::vector<std::vector<std::vector<SparseEntry>>> cols;

  int dim() const { return int(faces.size()) - 1; }
  std::int64_t face_count(int k) const {
    return (k >= 0 && k <= dim()) ? std::int64_t(faces[k].size()) : 0;
  }
};

// Builds the chain complex and verifies d∘d = 0.
ChainData boundary_matrices(const Complex& x);

struct HomologyProfile {
  Ring ring;
  std::vector<std::int64_t> betti;                  // b_0 .. b_d
  std::vector<std::vector<std::int64_t>> torsion;   // invariant factors > 1 per dim
  std::vector<std::int64_t> ranks;                  // rank of boundary_k, k = 0 .. d
};

inline constexpr int kDefaultBitBound = 4096;

// Betti numbers (and torsion over the integers).  Exact over every ring;
// integer and rational paths throw ErrorCode::overflow when intermediate
// entries exceed bit_bound bits.
HomologyProfile homology(const Complex& x, Ring ring,
                         int bit_bound = kDefaultBitBound);

// Coherent orientability of a closed pseudomanifold.
bool orientability(const Complex& x);

// Rank of one boundary matrix over GF(p) (mainly for tests).
std::int64_t boundary_rank_gf(const ChainData& chain, int k, int p);

// Invariant factors (absolute values, divisibility-ordered, including 1s)
// of one boundary matrix over the integers.
std::vector<std::int64_t> boundary_invariant_factors(const ChainData& chain, int k,
                                                     int bit_bound = kDefaultBitBound);

}  // namespace symcube

#endif
