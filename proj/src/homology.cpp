#include "symcube/homology.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

namespace symcube {

using boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Ring

Ring Ring::parse(std::string_view name) {
  if (name == "z" || name == "Z") return Z();
  if (name == "q" || name == "Q") return Q();
  if (name.starts_with("gf") || name.starts_with("GF")) {
    int p = 0;
    for (char c : name.substr(2)) {
      if (c < '0' || c > '9') throw Error("bad ring name: " + std::string(name));
      p = p * 10 + (c - '0');
    }
    if (p < 2) throw Error("bad ring name: " + std::string(name));
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) throw Error("ring gf" + std::to_string(p) + ": not a prime");
    return GF(p);
  }
  throw Error("unknown ring '" + std::string(name) + "' (use z, q, gf<p>)");
}

std::string Ring::name() const {
  switch (kind) {
    case Kind::integers: return "z";
    case Kind::rationals: return "q";
    case Kind::prime_field: return "gf" + std::to_string(p);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Chain complex construction

ChainData boundary_matrices(const Complex& x) {
  ChainData chain;
  const int d = x.dim();
  chain.faces.resize(d + 1);
  for (int k = 0; k <= d; ++k) chain.faces[k] = x.faces(k);

  chain.cols.resize(d + 1);
  std::unordered_map<Face, std::uint32_t, FaceHash> index;
  for (int k = 1; k <= d; ++k) {
    index.clear();
    index.reserve(chain.faces[k - 1].size());
    for (std::uint32_t i = 0; i < chain.faces[k - 1].size(); ++i)
      index.emplace(chain.faces[k - 1][i], i);

    auto& cols = chain.cols[k];
    cols.resize(chain.faces[k].size());
    Face sub;
    for (std::size_t j = 0; j < chain.faces[k].size(); ++j) {
      const Face& f = chain.faces[k][j];
      auto& col = cols[j];
      col.reserve(f.size());
      for (std::size_t t = 0; t < f.size(); ++t) {
        sub.clear();
        for (std::size_t s = 0; s < f.size(); ++s)
          if (s != t) sub.push_back(f[s]);
        col.push_back({index.at(sub), std::int8_t((t % 2 == 0) ? 1 : -1)});
      }
      std::sort(col.begin(), col.end(),
                [](const SparseEntry& a, const SparseEntry& b) { return a.row < b.row; });
    }
  }

  // d∘d = 0
  for (int k = 2; k <= d; ++k) {
    std::unordered_map<std::uint32_t, int> acc;
    for (const auto& col : chain.cols[k]) {
      acc.clear();
      for (const auto& [mid, s1] : col)
        for (const auto& [row, s2] : chain.cols[k - 1][mid])
          acc[row] += int(s1) * int(s2);
      for (const auto& [row, v] : acc)
        if (v != 0) throw Error("boundary of boundary is nonzero");
    }
  }
  return chain;
}

// ---------------------------------------------------------------------------
// Field reduction (persistence-style column algorithm with clearing)

namespace {

struct GFColumn {
  // sorted ascending by row; values in [1, p)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
};

// c -= (a/b) * pivot  targeting c's top row; all mod p.
void gf_eliminate(GFColumn& c, const GFColumn& pivot, std::uint32_t p) {
  const std::uint32_t a = c.entries.back().second;
  const std::uint32_t b = pivot.entries.back().second;
  // factor = a * b^-1 mod p
  std::uint64_t inv = 1, base = b, e = p - 2;
  while (e) {
    if (e & 1) inv = inv * base % p;
    base = base * base % p;
    e >>= 1;
  }
  const std::uint64_t factor = (std::uint64_t(a) * inv) % p;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> merged;
  merged.reserve(c.entries.size() + pivot.entries.size());
  auto ci = c.entries.begin();
  auto pi = pivot.entries.begin();
  while (ci != c.entries.end() || pi != pivot.entries.end()) {
    if (pi == pivot.entries.end() || (ci != c.entries.end() && ci->first < pi->first)) {
      merged.push_back(*ci++);
    } else if (ci == c.entries.end() || pi->first < ci->first) {
      const std::uint32_t v = std::uint32_t((p - factor * pi->second % p) % p);
      if (v) merged.push_back({pi->first, v});
      ++pi;
    } else {
      const std::uint32_t v =
          std::uint32_t((ci->second + p * p - factor * pi->second % p) % p);
      if (v) merged.push_back({ci->first, v});
      ++ci;
      ++pi;
    }
  }
  c.entries = std::move(merged);
}

// Rank of each boundary map over GF(p), top dimension first so that pivot
// rows clear columns one dimension down.
std::vector<std::int64_t> field_ranks(const ChainData& chain, int p) {
  const int d = chain.dim();
  std::vector<std::int64_t> ranks(d + 1, 0);
  std::vector<std::vector<bool>> cleared(d + 1);
  for (int k = 0; k <= d; ++k) cleared[k].assign(chain.faces[k].size(), false);

  for (int k = d; k >= 1; --k) {
    const auto& cols = chain.cols[k];
    std::vector<std::int32_t> pivot_of_row(chain.faces[k - 1].size(), -1);
    std::vector<GFColumn> stored;
    stored.reserve(cols.size());

    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cleared[k][j]) continue;
      GFColumn col;
      col.entries.reserve(cols[j].size());
      for (const auto& e : cols[j]) {
        const std::uint32_t v = (e.value > 0) ? 1u : std::uint32_t(p - 1);
        col.entries.push_back({e.row, v});
      }
      while (!col.entries.empty()) {
        const std::uint32_t low = col.entries.back().first;
        const std::int32_t piv = pivot_of_row[low];
        if (piv < 0) {
          pivot_of_row[low] = std::int32_t(stored.size());
          stored.push_back(std::move(col));
          ++ranks[k];
          cleared[k - 1][low] = true;
          break;
        }
        gf_eliminate(col, stored[piv], std::uint32_t(p));
      }
    }
  }
  return ranks;
}

// Exact integer columns kept primitive (content 1); gives ranks over Q.
struct ZColumn {
  std::vector<std::pair<std::uint32_t, cpp_int>> entries;
};

void z_normalize(ZColumn& c) {
  cpp_int g = 0;
  for (const auto& [row, v] : c.entries) {
    g = boost::multiprecision::gcd(g, v);
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& [row, v] : c.entries) v /= g;
}

void z_check_bits(const ZColumn& c, int bit_bound) {
  for (const auto& [row, v] : c.entries) {
    if (int(boost::multiprecision::msb(boost::multiprecision::abs(v)) + 1) > bit_bound)
      throw Error("integer entries exceed bit bound; retry over a prime field",
                  ErrorCode::overflow);
  }
}

void z_eliminate(ZColumn& c, const ZColumn& pivot, int bit_bound) {
  const cpp_int a = c.entries.back().second;
  const cpp_int b = pivot.entries.back().second;
  const cpp_int g = boost::multiprecision::gcd(a, b);
  const cpp_int ca = b / g;  // multiply c by this
  const cpp_int cb = a / g;  // subtract cb * pivot

  std::vector<std::pair<std::uint32_t, cpp_int>> merged;
  merged.reserve(c.entries.size() + pivot.entries.size());
  auto ci = c.entries.begin();
  auto pi = pivot.entries.begin();
  while (ci != c.entries.end() || pi != pivot.entries.end()) {
    if (pi == pivot.entries.end() || (ci != c.entries.end() && ci->first < pi->first)) {
      merged.push_back({ci->first, ci->second * ca});
      ++ci;
    } else if (ci == c.entries.end() || pi->first < ci->first) {
      merged.push_back({pi->first, -pi->second * cb});
      ++pi;
    } else {
      cpp_int v = ci->second * ca - pi->second * cb;
      if (v != 0) merged.push_back({ci->first, std::move(v)});
      ++ci;
      ++pi;
    }
  }
  c.entries = std::move(merged);
  z_normalize(c);
  z_check_bits(c, bit_bound);
}

std::vector<std::int64_t> rational_ranks(const ChainData& chain, int bit_bound) {
  const int d = chain.dim();
  std::vector<std::int64_t> ranks(d + 1, 0);
  std::vector<std::vector<bool>> cleared(d + 1);
  for (int k = 0; k <= d; ++k) cleared[k].assign(chain.faces[k].size(), false);

  for (int k = d; k >= 1; --k) {
    const auto& cols = chain.cols[k];
    std::vector<std::int32_t> pivot_of_row(chain.faces[k - 1].size(), -1);
    std::vector<ZColumn> stored;

    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cleared[k][j]) continue;
      ZColumn col;
      col.entries.reserve(cols[j].size());
      for (const auto& e : cols[j]) col.entries.push_back({e.row, cpp_int(e.value)});
      while (!col.entries.empty()) {
        const std::uint32_t low = col.entries.back().first;
        const std::int32_t piv = pivot_of_row[low];
        if (piv < 0) {
          pivot_of_row[low] = std::int32_t(stored.size());
          stored.push_back(std::move(col));
          ++ranks[k];
          cleared[k - 1][low] = true;
          break;
        }
        z_eliminate(col, stored[piv], bit_bound);
      }
    }
  }
  return ranks;
}

// ---------------------------------------------------------------------------
// Integer Smith normal form of a single boundary matrix

struct SnfMatrix {
  // row-major entries; column index sets kept in sync
  std::vector<std::map<std::uint32_t, cpp_int>> rows;
  std::vector<std::unordered_set<std::uint32_t>> col_rows;
  std::set<std::pair<std::uint32_t, std::uint32_t>> rows_by_nnz;  // (nnz, row)
  int bit_bound;

  SnfMatrix(std::size_t nrows, std::size_t ncols, int bound)
      : rows(nrows), col_rows(ncols), bit_bound(bound) {}

  void set_initial(std::uint32_t r, std::uint32_t c, cpp_int v) {
    rows[r][c] = std::move(v);
    col_rows[c].insert(r);
  }
  void finish_init() {
    for (std::uint32_t r = 0; r < rows.size(); ++r)
      if (!rows[r].empty())
        rows_by_nnz.insert({std::uint32_t(rows[r].size()), r});
  }

  void write(std::uint32_t r, std::uint32_t c, cpp_int v) {
    auto& row = rows[r];
    auto it = row.find(c);
    if (v == 0) {
      if (it != row.end()) {
        rows_by_nnz.erase({std::uint32_t(row.size()), r});
        row.erase(it);
        col_rows[c].erase(r);
        if (!row.empty()) rows_by_nnz.insert({std::uint32_t(row.size()), r});
      }
      return;
    }
    if (int(boost::multiprecision::msb(boost::multiprecision::abs(v)) + 1) > bit_bound)
      throw Error("Smith normal form entries exceed bit bound",
                  ErrorCode::overflow);
    if (it != row.end()) {
      it->second = std::move(v);
    } else {
      rows_by_nnz.erase({std::uint32_t(row.size()), r});
      row.emplace(c, std::move(v));
      col_rows[c].insert(r);
      rows_by_nnz.insert({std::uint32_t(row.size()), r});
    }
  }

  cpp_int get(std::uint32_t r, std::uint32_t c) const {
    auto it = rows[r].find(c);
    return it == rows[r].end() ? cpp_int(0) : it->second;
  }

  // row r2 -= q * row r1
  void row_op(std::uint32_t r2, std::uint32_t r1, const cpp_int& q) {
    if (q == 0) return;
    std::vector<std::pair<std::uint32_t, cpp_int>> updates;
    for (const auto& [c, v] : rows[r1]) updates.push_back({c, get(r2, c) - q * v});
    for (auto& [c, v] : updates) write(r2, c, std::move(v));
  }

  // col c2 -= q * col c1
  void col_op(std::uint32_t c2, std::uint32_t c1, const cpp_int& q) {
    if (q == 0) return;
    std::vector<std::uint32_t> rs(col_rows[c1].begin(), col_rows[c1].end());
    for (std::uint32_t r : rs) write(r, c2, get(r, c2) - q * get(r, c1));
  }
};

// Diagonalizes by unimodular row/column operations and returns the
// divisibility-ordered absolute invariant factors.
std::vector<cpp_int> snf_diagonal(SnfMatrix& m) {
  std::vector<cpp_int> diag;
  while (!m.rows_by_nnz.empty()) {
    // pivot row: fewest entries; pivot entry: unit if possible, then
    // smallest |value|, then sparsest column
    const std::uint32_t r = m.rows_by_nnz.begin()->second;
    std::uint32_t c = 0;
    cpp_int best_val;
    std::size_t best_cnnz = 0;
    bool first = true;
    for (const auto& [cc, v] : m.rows[r]) {
      const cpp_int av = boost::multiprecision::abs(v);
      const std::size_t cn = m.col_rows[cc].size();
      if (first || std::make_pair(av, cn) < std::make_pair(best_val, best_cnnz)) {
        first = false;
        best_val = av;
        best_cnnz = cn;
        c = cc;
      }
    }

    // Euclidean phase: shrink the pivot until it divides its row and column.
    std::uint32_t pr = r, pc = c;
    while (true) {
      const cpp_int b = m.get(pr, pc);
      bool changed = false;
      // column offenders
      std::vector<std::uint32_t> crs(m.col_rows[pc].begin(), m.col_rows[pc].end());
      for (std::uint32_t r2 : crs) {
        if (r2 == pr) continue;
        const cpp_int a = m.get(r2, pc);
        if (a % b != 0) {
          m.row_op(r2, pr, a / b);
          pr = r2;  // remainder is strictly smaller
          changed = true;
          break;
        }
      }
      if (changed) continue;
      // row offenders
      std::vector<std::pair<std::uint32_t, cpp_int>> row_entries(m.rows[pr].begin(),
                                                                 m.rows[pr].end());
      for (const auto& [c2, a] : row_entries) {
        if (c2 == pc) continue;
        if (a % b != 0) {
          m.col_op(c2, pc, a / b);
          pc = c2;
          changed = true;
          break;
        }
      }
      if (!changed) break;
    }

    const cpp_int b = m.get(pr, pc);
    // clear the pivot column with row ops (exact divisions)
    std::vector<std::uint32_t> crs(m.col_rows[pc].begin(), m.col_rows[pc].end());
    for (std::uint32_t r2 : crs) {
      if (r2 == pr) continue;
      m.row_op(r2, pr, m.get(r2, pc) / b);
    }
    // clearing the pivot row with column ops only touches row pr
    std::vector<std::uint32_t> rcs;
    for (const auto& [c2, v] : m.rows[pr])
      if (c2 != pc) rcs.push_back(c2);
    for (std::uint32_t c2 : rcs) m.write(pr, c2, 0);
    diag.push_back(boost::multiprecision::abs(b));
    m.write(pr, pc, 0);  // removes the row from the queue
  }

  // Enforce the divisibility chain (pairwise gcd/lcm preserves the class).
  bool stable = false;
  while (!stable) {
    stable = true;
    for (std::size_t i = 0; i < diag.size(); ++i) {
      for (std::size_t j = i + 1; j < diag.size(); ++j) {
        if (diag[j] % diag[i] != 0) {
          const cpp_int g = boost::multiprecision::gcd(diag[i], diag[j]);
          diag[j] = diag[i] / g * diag[j];
          diag[i] = g;
          stable = false;
        }
      }
    }
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

std::vector<cpp_int> invariant_factors(const ChainData& chain, int k, int bit_bound) {
  if (k < 1 || k > chain.dim()) return {};
  SnfMatrix m(chain.faces[k - 1].size(), chain.faces[k].size(), bit_bound);
  for (std::uint32_t j = 0; j < chain.cols[k].size(); ++j)
    for (const auto& e : chain.cols[k][j])
      m.set_initial(e.row, j, cpp_int(e.value));
  m.finish_init();
  return snf_diagonal(m);
}

std::int64_t to_int64_checked(const cpp_int& v) {
  if (v > cpp_int(std::numeric_limits<std::int64_t>::max()))
    throw Error("invariant factor exceeds 64 bits", ErrorCode::overflow);
  return v.convert_to<std::int64_t>();
}

}  // namespace

// ---------------------------------------------------------------------------
// Public entry points

std::int64_t boundary_rank_gf(const ChainData& chain, int k, int p) {
  if (k < 1 || k > chain.dim()) return 0;
  // single-matrix reduction (no clearing)
  std::vector<std::int32_t> pivot_of_row(chain.faces[k - 1].size(), -1);
  std::vector<GFColumn> stored;
  std::int64_t rank = 0;
  for (const auto& src : chain.cols[k]) {
    GFColumn col;
    for (const auto& e : src)
      col.entries.push_back({e.row, e.value > 0 ? 1u : std::uint32_t(p - 1)});
    while (!col.entries.empty()) {
      const std::uint32_t low = col.entries.back().first;
      const std::int32_t piv = pivot_of_row[low];
      if (piv < 0) {
        pivot_of_row[low] = std::int32_t(stored.size());
        stored.push_back(std::move(col));
        ++rank;
        break;
      }
      gf_eliminate(col, stored[piv], std::uint32_t(p));
    }
  }
  return rank;
}

std::vector<std::int64_t> boundary_invariant_factors(const ChainData& chain, int k,
                                                     int bit_bound) {
  std::vector<std::int64_t> out;
  for (const cpp_int& v : invariant_factors(chain, k, bit_bound))
    out.push_back(to_int64_checked(v));
  return out;
}

HomologyProfile homology(const Complex& x, Ring ring, int bit_bound) {
  const ChainData chain = boundary_matrices(x);
  const int d = chain.dim();

  HomologyProfile profile;
  profile.ring = ring;
  profile.betti.assign(d + 1, 0);
  profile.torsion.assign(d + 1, {});
  profile.ranks.assign(d + 1, 0);

  std::vector<std::int64_t> ranks(d + 2, 0);
  if (ring.kind == Ring::Kind::prime_field) {
    auto r = field_ranks(chain, ring.p);
    for (int k = 1; k <= d; ++k) ranks[k] = r[k];
  } else if (ring.kind == Ring::Kind::rationals) {
    auto r = rational_ranks(chain, bit_bound);
    for (int k = 1; k <= d; ++k) ranks[k] = r[k];
  } else {
    for (int k = 1; k <= d; ++k) {
      auto factors = invariant_factors(chain, k, bit_bound);
      ranks[k] = std::int64_t(factors.size());
      std::vector<std::int64_t> nontrivial;
      for (const cpp_int& f : factors)
        if (f != 1) nontrivial.push_back(to_int64_checked(f));
      // invariant factors of boundary_k give the torsion of H_{k-1}
      profile.torsion[k - 1] = std::move(nontrivial);
    }
  }

  for (int k = 0; k <= d; ++k) {
    profile.betti[k] = chain.face_count(k) - ranks[k] - ranks[k + 1];
    profile.ranks[k] = ranks[k];
  }
  return profile;
}

bool orientability(const Complex& x) {
  const auto report = pseudomanifold_check(x);
  if (!report.pure || !report.closed)
    throw Error("orientability requires a closed pseudomanifold",
                ErrorCode::precondition);

  const auto& facets = x.facets();
  std::unordered_map<Face, std::vector<std::pair<std::uint32_t, int>>, FaceHash>
      ridge_incidence;  // ridge -> (facet, sign of omitted position)
  for (std::uint32_t fi = 0; fi < facets.size(); ++fi) {
    const Face& f = facets[fi];
    for (std::size_t t = 0; t < f.size(); ++t) {
      Face r;
      r.reserve(f.size() - 1);
      for (std::size_t s = 0; s < f.size(); ++s)
        if (s != t) r.push_back(f[s]);
      ridge_incidence[r].push_back({fi, (t % 2 == 0) ? 1 : -1});
    }
  }

  std::vector<int> orient(facets.size(), 0);
  std::queue<std::uint32_t> bfs;
  orient[0] = 1;
  bfs.push(0);
  // adjacency through shared ridges; adjacent facets must induce opposite
  // orientations on the shared ridge
  std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, int>>> adj;
  for (const auto& [r, inc] : ridge_incidence) {
    if (inc.size() != 2) continue;
    const auto [f1, s1] = inc[0];
    const auto [f2, s2] = inc[1];
    // relation: orient[f1] * s1 = - orient[f2] * s2
    const int rel = -s1 * s2;
    adj[f1].push_back({f2, rel});
    adj[f2].push_back({f1, rel});
  }
  while (!bfs.empty()) {
    const std::uint32_t f = bfs.front();
    bfs.pop();
    for (const auto& [g, rel] : adj[f]) {
      const int expected = rel * orient[f];
      if (orient[g] == 0) {
        orient[g] = expected;
        bfs.push(g);
      } else if (orient[g] != expected) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace symcube
