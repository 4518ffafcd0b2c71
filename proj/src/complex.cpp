#include "symcube/complex.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace symcube {

// ---------------------------------------------------------------------------
// VertexTable

VertexTable::VertexTable(std::vector<std::string> labels) {
  for (auto& l : labels) intern(l);
  if (labels_.size() != labels.size())
    throw Error("duplicate vertex label in table", ErrorCode::parse);
}

bool VertexTable::valid_label(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

VertexId VertexTable::intern(const std::string& label) {
  auto it = index_.find(label);
  if (it != index_.end()) return it->second;
  if (!valid_label(label))
    throw Error("invalid vertex label: '" + label + "'", ErrorCode::parse);
  const VertexId id = static_cast<VertexId>(labels_.size());
  labels_.push_back(label);
  index_.emplace(label, id);
  return id;
}

std::optional<VertexId> VertexTable::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId VertexTable::id_of(std::string_view label) const {
  auto v = find(label);
  if (!v) throw Error("unknown vertex label: '" + std::string(label) + "'");
  return *v;
}

// ---------------------------------------------------------------------------
// Complex construction

namespace {

void sort_unique(Face& f) {
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
}

}  // namespace

Complex::Complex(const Complex& other)
    : verts_(other.verts_), facets_(other.facets_), dim_(other.dim_) {}

Complex& Complex::operator=(const Complex& other) {
  if (this != &other) {
    verts_ = other.verts_;
    facets_ = other.facets_;
    dim_ = other.dim_;
    std::lock_guard<std::mutex> lock(cache_mutex_);
    face_cache_.clear();
    face_cache_ready_.clear();
  }
  return *this;
}

Complex::Complex(Complex&& other) noexcept
    : verts_(std::move(other.verts_)),
      facets_(std::move(other.facets_)),
      dim_(other.dim_) {}

Complex& Complex::operator=(Complex&& other) noexcept {
  if (this != &other) {
    verts_ = std::move(other.verts_);
    facets_ = std::move(other.facets_);
    dim_ = other.dim_;
    std::lock_guard<std::mutex> lock(cache_mutex_);
    face_cache_.clear();
    face_cache_ready_.clear();
  }
  return *this;
}

Complex::Normalized Complex::from_faces(const VertexTable& verts,
                                        std::vector<Face> faces) {
  faces.erase(std::remove_if(faces.begin(), faces.end(),
                             [](const Face& f) { return f.empty(); }),
              faces.end());
  if (faces.empty())
    throw Error("complex must have at least one nonempty facet",
                ErrorCode::empty_complex);
  for (Face& f : faces) sort_unique(f);
  std::sort(faces.begin(), faces.end());
  const std::size_t before_dedup = faces.size();
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  std::size_t absorbed = before_dedup - faces.size();

  // Drop faces contained in a larger one.  Candidates are looked up through
  // a vertex -> faces-of-larger-size index.
  std::stable_sort(faces.begin(), faces.end(),
                   [](const Face& a, const Face& b) { return a.size() > b.size(); });
  std::vector<Face> kept;
  std::unordered_map<VertexId, std::vector<std::size_t>> by_vertex;
  for (Face& f : faces) {
    bool subset = false;
    if (!kept.empty()) {
      const auto it = by_vertex.find(f.front());
      if (it != by_vertex.end()) {
        for (std::size_t idx : it->second) {
          const Face& g = kept[idx];
          if (g.size() > f.size() &&
              std::includes(g.begin(), g.end(), f.begin(), f.end())) {
            subset = true;
            break;
          }
        }
      }
    }
    if (subset) {
      ++absorbed;
      continue;
    }
    const std::size_t idx = kept.size();
    kept.push_back(std::move(f));
    for (VertexId v : kept.back()) by_vertex[v].push_back(idx);
  }

  // Restrict the table to labels that actually occur, preserving its order.
  std::vector<bool> used(verts.size(), false);
  for (const Face& f : kept)
    for (VertexId v : f) used[v] = true;
  VertexTable table;
  std::vector<VertexId> remap(verts.size(), 0);
  for (VertexId v = 0; v < verts.size(); ++v)
    if (used[v]) remap[v] = table.intern(verts.label(v));
  for (Face& f : kept) {
    for (VertexId& v : f) v = remap[v];
    std::sort(f.begin(), f.end());
  }
  std::sort(kept.begin(), kept.end());

  int dim = 0;
  for (const Face& f : kept) dim = std::max<int>(dim, int(f.size()) - 1);
  return Normalized{Complex(std::move(table), std::move(kept), dim), absorbed};
}

Complex Complex::from_facets(const VertexTable& verts, std::vector<Face> facets) {
  return from_faces(verts, std::move(facets)).complex;
}

bool Complex::is_pure() const {
  for (const Face& f : facets_)
    if (int(f.size()) - 1 != dim_) return false;
  return true;
}

bool Complex::has_face(const Face& f) const {
  if (f.empty()) return true;
  for (const Face& g : facets_) {
    if (g.size() >= f.size() &&
        std::includes(g.begin(), g.end(), f.begin(), f.end()))
      return true;
  }
  return false;
}

const std::vector<Face>& Complex::faces(int k) const {
  if (k < 0 || k > dim_) {
    static const std::vector<Face> empty;
    return empty;
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (face_cache_.empty()) {
    face_cache_.resize(dim_ + 1);
    face_cache_ready_.assign(dim_ + 1, false);
  }
  if (!face_cache_ready_[k]) {
    std::unordered_set<Face, FaceHash> seen;
    Face buf;
    // Enumerate the (k+1)-subsets of every facet.
    const std::size_t want = std::size_t(k) + 1;
    for (const Face& f : facets_) {
      if (f.size() < want) continue;
      std::vector<std::size_t> pick(want);
      for (std::size_t i = 0; i < want; ++i) pick[i] = i;
      while (true) {
        buf.clear();
        for (std::size_t i : pick) buf.push_back(f[i]);
        seen.insert(buf);
        // next combination
        std::size_t i = want;
        while (i > 0) {
          --i;
          if (pick[i] != i + f.size() - want) break;
        }
        if (pick[i] == i + f.size() - want) break;
        ++pick[i];
        for (std::size_t j = i + 1; j < want; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    std::vector<Face> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    face_cache_[k] = std::move(out);
    face_cache_ready_[k] = true;
  }
  return face_cache_[k];
}

Face Complex::face_from_labels(std::span<const std::string> labels) const {
  Face f;
  f.reserve(labels.size());
  for (const auto& l : labels) f.push_back(verts_.id_of(l));
  std::sort(f.begin(), f.end());
  if (std::adjacent_find(f.begin(), f.end()) != f.end())
    throw Error("repeated vertex in face");
  return f;
}

std::vector<std::string> Complex::labels_of(const Face& f) const {
  std::vector<std::string> out;
  out.reserve(f.size());
  for (VertexId v : f) out.push_back(verts_.label(v));
  return out;
}

std::string Complex::render() const {
  std::vector<std::vector<std::string>> lines;
  lines.reserve(facets_.size());
  for (const Face& f : facets_) {
    auto labels = labels_of(f);
    std::sort(labels.begin(), labels.end());
    lines.push_back(std::move(labels));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& line : lines) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out.push_back(' ');
      out += line[i];
    }
    out.push_back('\n');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

ParsedComplex parse_facets(std::string_view text) {
  VertexTable table;
  std::vector<Face> faces;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);

    Face face;
    std::size_t i = 0;
    std::unordered_set<VertexId> in_line;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      const std::string token(line.substr(i, j - i));
      if (!VertexTable::valid_label(token))
        throw Error("line " + std::to_string(line_no) +
                        ": malformed label '" + token + "'",
                    ErrorCode::parse);
      const VertexId v = table.intern(token);
      if (!in_line.insert(v).second)
        throw Error("line " + std::to_string(line_no) +
                        ": duplicate vertex '" + token + "'",
                    ErrorCode::parse);
      face.push_back(v);
      i = j;
    }
    if (!face.empty()) faces.push_back(std::move(face));
  }
  if (faces.empty())
    throw Error("no facets in input", ErrorCode::empty_complex);
  auto norm = Complex::from_faces(table, std::move(faces));
  return ParsedComplex{std::move(norm.complex), norm.absorbed};
}

// ---------------------------------------------------------------------------
// Counting

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

FVector f_vector(const Complex& x) {
  FVector fv;
  fv.counts.resize(x.dim() + 1);
  for (int k = 0; k <= x.dim(); ++k)
    fv.counts[k] = static_cast<std::int64_t>(x.faces(k).size());
  return fv;
}

std::string FVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) os << ", ";
    os << counts[i];
  }
  os << ')';
  return os.str();
}

std::int64_t euler_characteristic(const Complex& x) {
  std::int64_t chi = 0;
  int sign = 1;
  for (int k = 0; k <= x.dim(); ++k) {
    chi += sign * static_cast<std::int64_t>(x.faces(k).size());
    sign = -sign;
  }
  return chi;
}

// ---------------------------------------------------------------------------
// Subcomplex operations

namespace {

Complex relabelled(const Complex& parent, std::vector<Face> faces,
                   const char* empty_msg) {
  if (faces.empty()) throw Error(empty_msg, ErrorCode::empty_complex);
  return Complex::from_faces(parent.vertices(), std::move(faces)).complex;
}

}  // namespace

Complex link(const Complex& x, const Face& sigma) {
  if (sigma.empty()) return x;
  if (!x.has_face(sigma)) throw Error("not a face", ErrorCode::not_a_face);
  std::vector<Face> faces;
  for (const Face& f : x.facets()) {
    if (f.size() < sigma.size() ||
        !std::includes(f.begin(), f.end(), sigma.begin(), sigma.end()))
      continue;
    Face rest;
    std::set_difference(f.begin(), f.end(), sigma.begin(), sigma.end(),
                        std::back_inserter(rest));
    if (!rest.empty()) faces.push_back(std::move(rest));
  }
  return relabelled(x, std::move(faces), "link is the void complex");
}

Complex antistar(const Complex& x, const Face& sigma) {
  if (sigma.empty()) return x;
  if (!x.has_face(sigma)) throw Error("not a face", ErrorCode::not_a_face);
  std::vector<Face> faces;
  for (const Face& f : x.facets()) {
    Face rest;
    std::set_difference(f.begin(), f.end(), sigma.begin(), sigma.end(),
                        std::back_inserter(rest));
    if (!rest.empty()) faces.push_back(std::move(rest));
  }
  return relabelled(x, std::move(faces), "antistar is the void complex");
}

Complex induced_subcomplex(const Complex& x, const std::vector<std::string>& labels) {
  std::vector<bool> keep(x.vertices().size(), false);
  for (const auto& l : labels) {
    auto v = x.vertices().find(l);
    if (!v) throw Error("vertex '" + l + "' not in complex");
    keep[*v] = true;
  }
  std::vector<Face> faces;
  for (const Face& f : x.facets()) {
    Face g;
    for (VertexId v : f)
      if (keep[v]) g.push_back(v);
    if (!g.empty()) faces.push_back(std::move(g));
  }
  return relabelled(x, std::move(faces), "induced subcomplex is empty");
}

Complex join_complexes(const Complex& x, const Complex& y) {
  VertexTable table;
  for (const auto& l : x.vertices().labels()) table.intern(l);
  for (const auto& l : y.vertices().labels()) {
    if (table.find(l))
      throw Error("join: vertex label '" + l + "' occurs on both sides");
    table.intern(l);
  }
  const VertexId offset = static_cast<VertexId>(x.vertices().size());
  std::vector<Face> facets;
  facets.reserve(x.facet_count() * y.facet_count());
  for (const Face& a : x.facets()) {
    for (const Face& b : y.facets()) {
      Face f = a;
      for (VertexId v : b) f.push_back(v + offset);
      facets.push_back(std::move(f));
    }
  }
  return Complex::from_facets(table, std::move(facets));
}

std::optional<Complex> boundary_subcomplex(const Complex& x) {
  if (!x.is_pure())
    throw Error("boundary requires a pure complex", ErrorCode::precondition);
  std::unordered_map<Face, int, FaceHash> ridge_count;
  for (const Face& f : x.facets()) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      Face r;
      r.reserve(f.size() - 1);
      for (std::size_t j = 0; j < f.size(); ++j)
        if (j != i) r.push_back(f[j]);
      ++ridge_count[r];
    }
  }
  std::vector<Face> boundary;
  for (auto& [r, c] : ridge_count)
    if (c == 1) boundary.push_back(r);
  if (boundary.empty()) return std::nullopt;
  return Complex::from_faces(x.vertices(), std::move(boundary)).complex;
}

PseudomanifoldReport pseudomanifold_check(const Complex& x) {
  PseudomanifoldReport report;
  report.pure = x.is_pure();

  // Ridge incidence over all facets (ridges = facet subsets of codimension 1).
  std::unordered_map<Face, std::vector<std::uint32_t>, FaceHash> ridge_facets;
  const auto& facets = x.facets();
  for (std::uint32_t fi = 0; fi < facets.size(); ++fi) {
    const Face& f = facets[fi];
    for (std::size_t i = 0; i < f.size(); ++i) {
      Face r;
      r.reserve(f.size() - 1);
      for (std::size_t j = 0; j < f.size(); ++j)
        if (j != i) r.push_back(f[j]);
      if (!r.empty()) ridge_facets[r].push_back(fi);
    }
  }
  report.ridge_degrees_ok = true;
  report.closed = true;
  for (const auto& [r, fs] : ridge_facets) {
    if (fs.size() > 2) report.ridge_degrees_ok = false;
    if (fs.size() != 2) report.closed = false;
  }

  // Connectivity of the facet-ridge dual graph.
  std::vector<std::vector<std::uint32_t>> adj(facets.size());
  for (const auto& [r, fs] : ridge_facets) {
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = i + 1; j < fs.size(); ++j) {
        adj[fs[i]].push_back(fs[j]);
        adj[fs[j]].push_back(fs[i]);
      }
  }
  std::vector<bool> seen(facets.size(), false);
  std::queue<std::uint32_t> bfs;
  bfs.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!bfs.empty()) {
    const std::uint32_t f = bfs.front();
    bfs.pop();
    for (std::uint32_t g : adj[f]) {
      if (!seen[g]) {
        seen[g] = true;
        ++reached;
        bfs.push(g);
      }
    }
  }
  report.strongly_connected = (reached == facets.size());
  return report;
}

int neighborliness(const Complex& x) {
  const auto fv = f_vector(x);
  const std::int64_t n = fv.counts[0];
  int best = 1;
  for (int k = 2; k <= x.dim() + 1; ++k) {
    if (fv.counts[k - 1] == binomial(n, k)) best = k;
  }
  return best;
}

Complex standard_sphere(int d) {
  if (d < 0) throw Error("sphere dimension must be >= 0");
  VertexTable table;
  const int n = d + 2;
  for (int i = 1; i <= n; ++i) table.intern("v" + std::to_string(i));
  std::vector<Face> facets;
  // All (d+1)-subsets of the vertex set.
  for (int skip = 0; skip < n; ++skip) {
    Face f;
    for (int v = 0; v < n; ++v)
      if (v != skip) f.push_back(v);
    facets.push_back(std::move(f));
  }
  return Complex::from_facets(table, std::move(facets));
}

Complex standard_ball(int d) {
  if (d < 0) throw Error("ball dimension must be >= 0");
  VertexTable table;
  Face f;
  for (int i = 1; i <= d + 1; ++i) f.push_back(table.intern("v" + std::to_string(i)));
  return Complex::from_facets(table, {f});
}

// ---------------------------------------------------------------------------
// Staircase product

namespace {

// All monotone lattice paths from (0,0) to (na-1, nb-1).
void staircase_paths(int na, int nb, std::vector<std::pair<int, int>>& path,
                     std::vector<std::vector<std::pair<int, int>>>& out) {
  const auto [i, j] = path.back();
  if (i == na - 1 && j == nb - 1) {
    out.push_back(path);
    return;
  }
  if (i + 1 < na) {
    path.push_back({i + 1, j});
    staircase_paths(na, nb, path, out);
    path.pop_back();
  }
  if (j + 1 < nb) {
    path.push_back({i, j + 1});
    staircase_paths(na, nb, path, out);
    path.pop_back();
  }
}

std::vector<VertexId> order_ranks(const Complex& c,
                                  const std::vector<std::string>& order) {
  if (order.size() != c.vertices().size())
    throw Error("vertex order must cover all vertices exactly");
  std::vector<VertexId> rank(c.vertices().size(), 0);
  std::vector<bool> seen(c.vertices().size(), false);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const VertexId v = c.vertices().id_of(order[i]);
    if (seen[v]) throw Error("vertex order repeats '" + order[i] + "'");
    seen[v] = true;
    rank[v] = static_cast<VertexId>(i);
  }
  return rank;
}

}  // namespace

Complex staircase_product(const Complex& x, const Complex& y,
                          const std::vector<std::string>& order_x,
                          const std::vector<std::string>& order_y) {
  const auto rank_x = order_ranks(x, order_x);
  const auto rank_y = order_ranks(y, order_y);

  VertexTable table;
  std::unordered_map<std::uint64_t, VertexId> pair_ids;
  auto pair_vertex = [&](VertexId a, VertexId b) {
    const std::uint64_t key = (std::uint64_t(a) << 32) | b;
    auto it = pair_ids.find(key);
    if (it != pair_ids.end()) return it->second;
    const VertexId id =
        table.intern(x.vertices().label(a) + "__" + y.vertices().label(b));
    pair_ids.emplace(key, id);
    return id;
  };

  std::vector<Face> facets;
  for (const Face& a : x.facets()) {
    Face as = a;
    std::sort(as.begin(), as.end(),
              [&](VertexId u, VertexId v) { return rank_x[u] < rank_x[v]; });
    for (const Face& b : y.facets()) {
      Face bs = b;
      std::sort(bs.begin(), bs.end(),
                [&](VertexId u, VertexId v) { return rank_y[u] < rank_y[v]; });
      std::vector<std::vector<std::pair<int, int>>> paths;
      std::vector<std::pair<int, int>> path{{0, 0}};
      staircase_paths(int(as.size()), int(bs.size()), path, paths);
      for (const auto& p : paths) {
        Face f;
        f.reserve(p.size());
        for (const auto& [i, j] : p) f.push_back(pair_vertex(as[i], bs[j]));
        facets.push_back(std::move(f));
      }
    }
  }
  return Complex::from_facets(table, std::move(facets));
}

}  // namespace symcube
