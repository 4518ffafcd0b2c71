#include "symcube/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace symcube {

namespace {

using Colors = std::vector<std::uint32_t>;

struct Side {
  const Complex* complex;
  std::vector<std::vector<std::uint32_t>> facets_of;  // vertex -> facet ids
};

Side make_side(const Complex& c) {
  Side s{&c, {}};
  s.facets_of.resize(c.vertices().size());
  const auto& facets = c.facets();
  for (std::uint32_t fi = 0; fi < facets.size(); ++fi)
    for (VertexId v : facets[fi]) s.facets_of[v].push_back(fi);
  return s;
}

// One refinement round: the signature of a vertex is its color plus the
// sorted multiset, over incident facets, of the sorted colors of the other
// facet vertices.  Signatures from both sides share one renumbering so
// colors stay comparable across the two complexes.
using Signature = std::vector<std::uint32_t>;

Signature vertex_signature(const Side& side, const Colors& colors, VertexId v) {
  Signature sig;
  sig.push_back(colors[v]);
  std::vector<std::vector<std::uint32_t>> per_facet;
  per_facet.reserve(side.facets_of[v].size());
  for (std::uint32_t fi : side.facets_of[v]) {
    const Face& f = side.complex->facets()[fi];
    std::vector<std::uint32_t> fs;
    fs.reserve(f.size() - 1);
    for (VertexId w : f)
      if (w != v) fs.push_back(colors[w]);
    std::sort(fs.begin(), fs.end());
    per_facet.push_back(std::move(fs));
  }
  std::sort(per_facet.begin(), per_facet.end());
  for (const auto& fs : per_facet) {
    sig.push_back(std::uint32_t(fs.size()));
    sig.insert(sig.end(), fs.begin(), fs.end());
  }
  return sig;
}

// Refines both color vectors to a joint fixed point.  Returns false when the
// color classes of the two sides stop matching (no isomorphism possible).
bool refine(const Side& sx, const Side& sy, Colors& cx, Colors& cy,
            std::uint32_t& next_color) {
  while (true) {
    std::map<Signature, std::uint32_t> renumber;
    std::vector<Signature> sigs_x(cx.size()), sigs_y(cy.size());
    for (VertexId v = 0; v < cx.size(); ++v) {
      sigs_x[v] = vertex_signature(sx, cx, v);
      renumber.emplace(sigs_x[v], 0);
    }
    for (VertexId v = 0; v < cy.size(); ++v) {
      sigs_y[v] = vertex_signature(sy, cy, v);
      renumber.emplace(sigs_y[v], 0);
    }
    std::uint32_t id = 0;
    for (auto& [sig, value] : renumber) value = id++;

    Colors nx(cx.size()), ny(cy.size());
    for (VertexId v = 0; v < cx.size(); ++v) nx[v] = renumber.at(sigs_x[v]);
    for (VertexId v = 0; v < cy.size(); ++v) ny[v] = renumber.at(sigs_y[v]);

    // compare class sizes on both sides
    std::vector<std::int64_t> count_x(id, 0), count_y(id, 0);
    for (auto c : nx) ++count_x[c];
    for (auto c : ny) ++count_y[c];
    if (count_x != count_y) return false;

    // stop when the partition no longer splits
    std::set<std::uint32_t> old_classes(cx.begin(), cx.end());
    bool changed = id != old_classes.size();
    if (!changed) {
      // partition sizes equal; check the partition itself is unchanged
      std::map<std::uint32_t, std::uint32_t> forward;
      for (VertexId v = 0; v < cx.size(); ++v) {
        auto it = forward.find(cx[v]);
        if (it == forward.end())
          forward.emplace(cx[v], nx[v]);
        else if (it->second != nx[v])
          changed = true;
      }
    }
    cx = std::move(nx);
    cy = std::move(ny);
    next_color = id;
    if (!changed) return true;
  }
}

struct SearchContext {
  const Side* sx;
  const Side* sy;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool find_all = false;  // exhaust tree, collecting every bijection
  std::vector<std::vector<VertexId>> found;

  bool leaf(const Colors& cx, const Colors& cy) {
    // colors discrete on both sides: build the map color -> vertex
    std::vector<VertexId> map(cx.size());
    std::map<std::uint32_t, VertexId> y_of_color;
    for (VertexId v = 0; v < cy.size(); ++v) y_of_color[cy[v]] = v;
    for (VertexId v = 0; v < cx.size(); ++v) {
      auto it = y_of_color.find(cx[v]);
      if (it == y_of_color.end()) return false;
      map[v] = it->second;
    }
    // verify the facet sets correspond
    std::unordered_set<Face, FaceHash> target(sy->complex->facets().begin(),
                                              sy->complex->facets().end());
    for (const Face& f : sx->complex->facets()) {
      Face g;
      g.reserve(f.size());
      for (VertexId v : f) g.push_back(map[v]);
      std::sort(g.begin(), g.end());
      if (!target.count(g)) return false;
    }
    found.push_back(std::move(map));
    return true;
  }

  // returns true to stop early (first match found in decision mode)
  bool search(Colors cx, Colors cy, std::uint32_t next_color) {
    if (++nodes > budget)
      throw Error("isomorphism search exceeded the node budget", ErrorCode::budget);
    if (!refine(*sx, *sy, cx, cy, next_color)) return false;

    // smallest non-singleton class
    std::map<std::uint32_t, std::vector<VertexId>> class_x, class_y;
    for (VertexId v = 0; v < cx.size(); ++v) class_x[cx[v]].push_back(v);
    for (VertexId v = 0; v < cy.size(); ++v) class_y[cy[v]].push_back(v);
    const std::vector<VertexId>* cell_x = nullptr;
    const std::vector<VertexId>* cell_y = nullptr;
    std::uint32_t cell_color = 0;
    for (const auto& [color, members] : class_x) {
      if (members.size() < 2) continue;
      if (!cell_x || members.size() < cell_x->size()) {
        cell_x = &members;
        cell_y = &class_y.at(color);
        cell_color = color;
      }
    }
    if (!cell_x) {
      const bool ok = leaf(cx, cy);
      return ok && !find_all;
    }

    const VertexId v = cell_x->front();
    for (VertexId w : *cell_y) {
      Colors nx = cx, ny = cy;
      nx[v] = next_color;
      ny[w] = next_color;
      if (search(std::move(nx), std::move(ny), next_color + 1) && !find_all)
        return true;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<VertexId>> are_isomorphic(const Complex& x,
                                                    const Complex& y,
                                                    std::uint64_t node_budget) {
  if (x.dim() != y.dim() || x.facet_count() != y.facet_count() ||
      x.vertices().size() != y.vertices().size())
    return std::nullopt;
  if (f_vector(x).counts != f_vector(y).counts) return std::nullopt;

  Side sx = make_side(x), sy = make_side(y);
  SearchContext ctx{&sx, &sy, node_budget};
  Colors cx(x.vertices().size(), 0), cy(y.vertices().size(), 0);
  ctx.search(std::move(cx), std::move(cy), 1);
  if (ctx.found.empty()) return std::nullopt;
  return ctx.found.front();
}

AutomorphismGroup automorphism_group(const Complex& x, std::uint64_t node_budget) {
  Side sx = make_side(x), sy = make_side(x);
  SearchContext ctx{&sx, &sy, node_budget};
  ctx.find_all = true;
  Colors cx(x.vertices().size(), 0), cy(x.vertices().size(), 0);
  ctx.search(std::move(cx), std::move(cy), 1);

  AutomorphismGroup group;
  group.order = ctx.found.size();

  // greedily keep automorphisms that enlarge the generated subgroup
  std::set<std::vector<VertexId>> generated;
  generated.insert(Permutation::identity(x.vertices().size()).images());
  std::vector<NamedPermutation> gens;
  for (const auto& images : ctx.found) {
    if (generated.count(images)) continue;
    gens.push_back({"g" + std::to_string(gens.size() + 1), Permutation(images)});
    Group g(x.vertices(), gens);
    generated.clear();
    for (const auto& e : g.elements()) generated.insert(e.images());
  }
  for (auto& g : gens) group.generators.push_back(std::move(g.perm));
  return group;
}

}  // namespace symcube
