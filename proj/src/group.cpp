#include "symcube/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace symcube {

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<VertexId> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (VertexId v : images_) {
    if (v >= images_.size() || hit[v])
      throw Error("permutation images are not a bijection");
    hit[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<VertexId> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<VertexId>(i);
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::from_cycles(std::string_view text, const VertexTable& verts) {
  std::vector<VertexId> images(verts.size());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = static_cast<VertexId>(i);
  std::vector<bool> moved(verts.size(), false);

  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(')
      throw Error("cycle notation: expected '(' near '" +
                      std::string(text.substr(i, 12)) + "'",
                  ErrorCode::parse);
    const std::size_t close = text.find(')', i);
    if (close == std::string_view::npos)
      throw Error("cycle notation: missing ')'", ErrorCode::parse);
    std::istringstream cyc{std::string(text.substr(i + 1, close - i - 1))};
    std::vector<VertexId> ids;
    std::string token;
    while (cyc >> token) {
      auto v = verts.find(token);
      if (!v)
        throw Error("cycle references unknown label '" + token + "'",
                    ErrorCode::parse);
      ids.push_back(*v);
    }
    if (ids.size() < 2)
      throw Error("cycle must name at least two vertices", ErrorCode::parse);
    for (VertexId v : ids) {
      if (moved[v])
        throw Error("label '" + verts.label(v) + "' occurs in two cycles",
                    ErrorCode::parse);
      moved[v] = true;
    }
    for (std::size_t k = 0; k < ids.size(); ++k)
      images[ids[k]] = ids[(k + 1) % ids.size()];
    i = close + 1;
  }
  return Permutation(std::move(images));
}

Face Permutation::apply_face(const Face& f) const {
  Face out;
  out.reserve(f.size());
  for (VertexId v : f) out.push_back(images_[v]);
  std::sort(out.begin(), out.end());
  return out;
}

Permutation Permutation::compose(const Permutation& inner) const {
  std::vector<VertexId> images(images_.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    images[i] = images_[inner.images_[i]];
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<VertexId> images(images_.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    images[images_[i]] = static_cast<VertexId>(i);
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::string Permutation::to_cycles(const VertexTable& verts) const {
  std::vector<bool> seen(images_.size(), false);
  // cycles keyed by smallest label, rotated to start there
  std::map<std::string, std::vector<std::string>> cycles;
  for (VertexId start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    std::vector<VertexId> cyc;
    VertexId v = start;
    while (!seen[v]) {
      seen[v] = true;
      cyc.push_back(v);
      v = images_[v];
    }
    std::size_t least = 0;
    for (std::size_t k = 1; k < cyc.size(); ++k)
      if (verts.label(cyc[k]) < verts.label(cyc[least])) least = k;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < cyc.size(); ++k)
      labels.push_back(verts.label(cyc[(least + k) % cyc.size()]));
    cycles.emplace(labels.front(), std::move(labels));
  }
  if (cycles.empty()) return "()";
  std::string out;
  for (const auto& [_, labels] : cycles) {
    out.push_back('(');
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (k) out.push_back(' ');
      out += labels[k];
    }
    out.push_back(')');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Group

Group::Group(VertexTable verts, std::vector<NamedPermutation> generators)
    : verts_(std::move(verts)), gens_(std::move(generators)) {
  for (const auto& g : gens_)
    if (g.perm.degree() != verts_.size())
      throw Error("generator '" + g.name + "' degree mismatch");
}

const std::vector<Permutation>& Group::elements(std::size_t cap) const {
  if (closure_ready_) {
    if (closure_.size() > cap)
      throw Error("group closure exceeds cap", ErrorCode::cap_exceeded);
    return closure_;
  }
  if (cap < 1) throw Error("cap must be >= 1");
  std::set<std::vector<VertexId>> seen;
  std::vector<Permutation> ordered;
  const Permutation id = Permutation::identity(verts_.size());
  seen.insert(id.images());
  ordered.push_back(id);
  std::vector<Permutation> level{id};
  while (!level.empty()) {
    std::vector<Permutation> next;
    for (const Permutation& e : level) {
      for (const auto& g : gens_) {
        Permutation c = g.perm.compose(e);
        if (seen.insert(c.images()).second) {
          next.push_back(std::move(c));
          if (seen.size() > cap)
            throw Error("group closure exceeds cap (" + std::to_string(cap) + ")",
                        ErrorCode::cap_exceeded);
        }
      }
    }
    std::sort(next.begin(), next.end());
    for (const Permutation& p : next) ordered.push_back(p);
    level = std::move(next);
  }
  closure_ = std::move(ordered);
  closure_ready_ = true;
  return closure_;
}

std::vector<std::vector<VertexId>> Group::vertex_orbits(std::size_t cap) const {
  const auto& elems = elements(cap);
  std::vector<std::vector<VertexId>> orbits;
  std::vector<bool> seen(verts_.size(), false);
  for (VertexId v = 0; v < verts_.size(); ++v) {
    if (seen[v]) continue;
    std::set<VertexId> orbit;
    for (const auto& e : elems) orbit.insert(e.apply(v));
    std::vector<VertexId> sorted(orbit.begin(), orbit.end());
    for (VertexId w : sorted) seen[w] = true;
    orbits.push_back(std::move(sorted));
  }
  return orbits;
}

// ---------------------------------------------------------------------------
// Orbit-spec parsing

GroupSpec parse_group_spec(std::string_view text) {
  std::vector<std::string> vertex_labels;
  std::vector<std::pair<std::string, std::string>> gen_sources;
  std::vector<std::vector<std::string>> rep_lines;

  enum class Section { none, vertices, reps } section = Section::none;
  std::size_t pos = 0, line_no = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    // trim
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
      line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.remove_suffix(1);
    if (line.empty()) continue;

    if (line == "VERTICES:") {
      section = Section::vertices;
      continue;
    }
    if (line == "REPS:") {
      section = Section::reps;
      continue;
    }
    if (line.starts_with("GEN ")) {
      const std::size_t colon = line.find(':');
      if (colon == std::string_view::npos)
        throw Error("line " + std::to_string(line_no) + ": GEN needs ':'",
                    ErrorCode::parse);
      std::string name(line.substr(4, colon - 4));
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
        name.pop_back();
      gen_sources.emplace_back(name, std::string(line.substr(colon + 1)));
      section = Section::none;
      continue;
    }

    std::istringstream words{std::string(line)};
    std::string token;
    std::vector<std::string> tokens;
    while (words >> token) tokens.push_back(token);
    if (section == Section::vertices) {
      for (auto& t : tokens) vertex_labels.push_back(std::move(t));
    } else if (section == Section::reps) {
      rep_lines.push_back(std::move(tokens));
    } else {
      throw Error("line " + std::to_string(line_no) + ": unexpected content",
                  ErrorCode::parse);
    }
  }

  if (vertex_labels.empty())
    throw Error("orbit spec has no VERTICES section", ErrorCode::parse);
  VertexTable table(std::move(vertex_labels));

  std::vector<NamedPermutation> gens;
  for (auto& [name, source] : gen_sources)
    gens.push_back({name, Permutation::from_cycles(source, table)});

  std::vector<Face> reps;
  for (const auto& tokens : rep_lines) {
    Face f;
    for (const auto& t : tokens) f.push_back(table.id_of(t));
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
      throw Error("representative repeats a vertex", ErrorCode::parse);
    reps.push_back(std::move(f));
  }
  if (reps.empty()) throw Error("orbit spec has no representatives", ErrorCode::parse);

  Group group(table, std::move(gens));
  return GroupSpec{std::move(table), std::move(group), std::move(reps)};
}

// ---------------------------------------------------------------------------
// Orbit expansion and action checks

ExpandResult orbit_expand(const std::vector<Face>& reps, const Group& g,
                          std::size_t cap) {
  if (reps.empty()) throw Error("no representatives to expand");
  const auto& elems = g.elements(cap);
  std::vector<Face> facets;
  std::vector<std::size_t> lengths;
  for (const Face& rep : reps) {
    std::set<Face> orbit;
    for (const auto& e : elems) orbit.insert(e.apply_face(rep));
    lengths.push_back(orbit.size());
    facets.insert(facets.end(), orbit.begin(), orbit.end());
  }
  auto norm = Complex::from_faces(g.vertices(), std::move(facets));
  return ExpandResult{std::move(norm.complex), std::move(lengths)};
}

bool is_automorphism(const Complex& x, const Permutation& p) {
  if (p.degree() != x.vertices().size()) return false;
  std::unordered_set<Face, FaceHash> facet_set(x.facets().begin(), x.facets().end());
  for (const Face& f : x.facets())
    if (!facet_set.count(p.apply_face(f))) return false;
  return true;
}

namespace {

std::vector<std::string> face_labels(const Complex& x, const Face& f) {
  return x.labels_of(f);
}

// vertex id -> index of its orbit
std::vector<std::size_t> orbit_index(const std::vector<std::vector<VertexId>>& orbits,
                                     std::size_t n) {
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t o = 0; o < orbits.size(); ++o)
    for (VertexId v : orbits[o]) idx[v] = o;
  return idx;
}

}  // namespace

ActionReport check_action(const Complex& x, const Group& g) {
  if (g.vertices() != x.vertices())
    throw Error("group and complex use different vertex tables");
  for (const auto& gen : g.generators())
    if (!is_automorphism(x, gen.perm))
      throw Error("generator '" + gen.name + "' is not an automorphism",
                  ErrorCode::not_automorphism);

  const auto& elems = g.elements();
  const auto orbits = g.vertex_orbits();
  const auto oidx = orbit_index(orbits, x.vertices().size());

  ActionReport report;
  report.is_pure = true;
  report.is_good = true;

  // Edge set, for condition (a) / goodness non-edge requirement.
  std::unordered_set<Face, FaceHash> edges;
  for (const Face& e : x.faces(1)) edges.insert(e);
  auto adjacent = [&](VertexId a, VertexId b) {
    Face e{std::min(a, b), std::max(a, b)};
    return edges.count(e) != 0;
  };

  // Vertex link vertex-sets, for goodness witnesses.
  std::vector<std::unordered_set<VertexId>> lk_vertices(x.vertices().size());
  for (const Face& f : x.facets())
    for (VertexId v : f)
      for (VertexId w : f)
        if (v != w) lk_vertices[v].insert(w);

  for (const auto& orbit : orbits) {
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (std::size_t j = i + 1; j < orbit.size(); ++j) {
        const VertexId a = orbit[i], b = orbit[j];
        if (adjacent(a, b)) {
          report.is_pure = false;
          report.is_good = false;
          report.violations.push_back(
              {ActionViolation::Kind::orbit_mates_adjacent,
               {x.vertices().label(a), x.vertices().label(b)}});
          continue;
        }
        // goodness witness: g(a) = b fixing lk(a) ∩ lk(b) pointwise
        std::vector<VertexId> fixed;
        for (VertexId w : lk_vertices[a])
          if (lk_vertices[b].count(w)) fixed.push_back(w);
        bool witness = false;
        for (const auto& e : elems) {
          if (e.apply(a) != b) continue;
          bool fixes = true;
          for (VertexId w : fixed)
            if (e.apply(w) != w) {
              fixes = false;
              break;
            }
          if (fixes) {
            witness = true;
            break;
          }
        }
        if (!witness) {
          report.is_good = false;
          report.violations.push_back(
              {ActionViolation::Kind::no_goodness_witness,
               {x.vertices().label(a), x.vertices().label(b)}});
        }
      }
    }
  }

  // Purity condition (b): for every face α and every orbit θ, the stabiliser
  // of α acts transitively on θ ∩ V(lk(α)).
  //
  // Walk all faces through the facet subsets; the cofacet lists give the
  // link vertex sets.
  std::unordered_map<Face, std::vector<std::uint32_t>, FaceHash> cofacets;
  {
    const auto& facets = x.facets();
    for (std::uint32_t fi = 0; fi < facets.size(); ++fi) {
      const Face& f = facets[fi];
      const std::size_t n = f.size();
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        Face sub;
        for (std::size_t b = 0; b < n; ++b)
          if (mask & (1u << b)) sub.push_back(f[b]);
        cofacets[sub].push_back(fi);
      }
    }
  }

  for (const auto& [alpha, flist] : cofacets) {
    // stabiliser of alpha (setwise)
    std::vector<const Permutation*> stab;
    for (const auto& e : elems)
      if (e.apply_face(alpha) == alpha) stab.push_back(&e);

    // V(lk(alpha))
    std::unordered_set<VertexId> lkv;
    for (std::uint32_t fi : flist)
      for (VertexId v : x.facets()[fi])
        lkv.insert(v);
    for (VertexId v : alpha) lkv.erase(v);
    if (lkv.empty()) continue;

    // group lk vertices by orbit, then check single stabiliser-orbit each
    std::unordered_map<std::size_t, std::vector<VertexId>> per_orbit;
    for (VertexId v : lkv) per_orbit[oidx[v]].push_back(v);
    for (auto& [o, members] : per_orbit) {
      if (members.size() <= 1) continue;
      std::sort(members.begin(), members.end());
      // orbit of members.front() under the stabiliser
      std::unordered_set<VertexId> reached{members.front()};
      bool grew = true;
      while (grew) {
        grew = false;
        for (const Permutation* s : stab) {
          for (VertexId v : std::vector<VertexId>(reached.begin(), reached.end())) {
            const VertexId w = s->apply(v);
            if (reached.insert(w).second) grew = true;
          }
        }
      }
      for (VertexId v : members) {
        if (!reached.count(v)) {
          report.is_pure = false;
          auto witness = face_labels(x, alpha);
          witness.push_back(x.vertices().label(members.front()));
          witness.push_back(x.vertices().label(v));
          report.violations.push_back(
              {ActionViolation::Kind::stabilizer_not_transitive, std::move(witness)});
          break;
        }
      }
    }
  }

  if (!report.is_pure) report.is_good = false;
  return report;
}

QuotientResult quotient(const Complex& x, const Group& g,
                        const std::unordered_map<std::string, std::string>* naming) {
  ActionReport report = check_action(x, g);
  if (!report.is_pure) {
    std::string msg = "action is not pure";
    if (!report.violations.empty()) {
      msg += " (witness:";
      for (const auto& w : report.violations.front().witness) msg += " " + w;
      msg += ")";
    }
    throw Error(msg, ErrorCode::impure);
  }

  const auto orbits = g.vertex_orbits();
  const auto oidx = orbit_index(orbits, x.vertices().size());

  std::vector<std::string> orbit_names(orbits.size());
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    if (naming) {
      const std::string* chosen = nullptr;
      for (VertexId v : orbits[o]) {
        auto it = naming->find(x.vertices().label(v));
        if (it == naming->end())
          throw Error("naming map misses vertex '" + x.vertices().label(v) + "'");
        if (chosen && *chosen != it->second)
          throw Error("naming map is not constant on the orbit of '" +
                      x.vertices().label(orbits[o].front()) + "'");
        chosen = &it->second;
      }
      orbit_names[o] = *chosen;
    } else {
      std::string least = x.vertices().label(orbits[o].front());
      for (VertexId v : orbits[o])
        least = std::min(least, x.vertices().label(v));
      orbit_names[o] = least;
    }
  }
  {
    std::set<std::string> distinct(orbit_names.begin(), orbit_names.end());
    if (distinct.size() != orbit_names.size())
      throw Error("orbit names collide");
  }

  // Quotient table ordered by name.
  std::vector<std::string> sorted_names(orbit_names.begin(), orbit_names.end());
  std::sort(sorted_names.begin(), sorted_names.end());
  VertexTable table(sorted_names);

  std::vector<VertexId> vmap(x.vertices().size());
  for (VertexId v = 0; v < x.vertices().size(); ++v)
    vmap[v] = table.id_of(orbit_names[oidx[v]]);

  std::set<Face> qfacets;
  for (const Face& f : x.facets()) {
    Face q;
    q.reserve(f.size());
    for (VertexId v : f) q.push_back(vmap[v]);
    std::sort(q.begin(), q.end());
    // purity condition (a) guarantees injectivity on faces
    qfacets.insert(std::move(q));
  }
  std::vector<Face> facets(qfacets.begin(), qfacets.end());
  Complex qc = Complex::from_facets(table, std::move(facets));

  // Re-express the map in the final table (from_facets may drop no labels
  // here since every orbit meets a facet, but stay defensive).
  std::vector<VertexId> final_map(x.vertices().size());
  for (VertexId v = 0; v < x.vertices().size(); ++v)
    final_map[v] = qc.vertices().id_of(orbit_names[oidx[v]]);

  return QuotientResult{std::move(qc), std::move(final_map), std::move(orbit_names)};
}

}  // namespace symcube
