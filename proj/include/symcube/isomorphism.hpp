#ifndef SYMCUBE_ISOMORPHISM_HPP
#define SYMCUBE_ISOMORPHISM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "symcube/complex.hpp"
#include "symcube/group.hpp"

namespace symcube {

inline constexpr std::uint64_t kDefaultNodeBudget = 100000000;

// A facet-set-preserving bijection (x id -> y id), or nullopt.  Uses
// iterated link-signature refinement with individualization backtracking.
std::optional<std::vector<VertexId>> are_isomorphic(
    const Complex& x, const Complex& y,
    std::uint64_t node_budget = kDefaultNodeBudget);

struct AutomorphismGroup {
  std::uint64_t order = 0;
  std::vector<Permutation> generators;
};

// Exact automorphism group order and a generating set, by exhausting the
// refinement-pruned search tree.  Throws ErrorCode::budget when the tree
// exceeds node_budget nodes.
AutomorphismGroup automorphism_group(const Complex& x,
                                     std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace symcube

#endif
