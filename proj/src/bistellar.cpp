#include "symcube/bistellar.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <boost/container/small_vector.hpp>

#include "symcube/homology.hpp"
#include "symcube/rng.hpp"
#include "symcube/sha256.hpp"

namespace symcube {

namespace {

using SubsetMap = std::unordered_map<Face, std::vector<std::uint32_t>, FaceHash>;

// face -> ids of facets containing it, over all nonempty facet subsets
SubsetMap build_subset_map(const Complex& x) {
  SubsetMap map;
  const auto& facets = x.facets();
  for (std::uint32_t fi = 0; fi < facets.size(); ++fi) {
    const Face& f = facets[fi];
    const std::size_t n = f.size();
    Face sub;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      sub.clear();
      for (std::size_t b = 0; b < n; ++b)
        if (mask & (1u << b)) sub.push_back(f[b]);
      map[sub].push_back(fi);
    }
  }
  return map;
}

std::vector<std::string> sorted_labels(const Complex& x, const Face& f) {
  auto labels = x.labels_of(f);
  std::sort(labels.begin(), labels.end());
  return labels;
}

}  // namespace

// ---------------------------------------------------------------------------
// Move enumeration and application

std::vector<Move> enumerate_moves(const Complex& x, std::optional<int> index) {
  if (!x.is_pure())
    throw Error("bistellar moves need a pure complex", ErrorCode::precondition);
  const int d = x.dim();
  std::vector<Move> moves;

  if (!index || *index == 0) {
    for (const Face& f : x.facets()) moves.push_back(Move{f, {}, 0});
  }

  const SubsetMap subsets = build_subset_map(x);
  for (const auto& [a, cofacets] : subsets) {
    const int i = d - int(a.size()) + 1;
    if (i < 1 || i > d) continue;
    if (index && *index != i) continue;
    if (cofacets.size() != std::size_t(i) + 1) continue;
    // B = union of the link facets F \ A
    std::set<VertexId> b_set;
    for (std::uint32_t fi : cofacets) {
      const Face& f = x.facets()[fi];
      for (VertexId v : f)
        if (!std::binary_search(a.begin(), a.end(), v)) b_set.insert(v);
    }
    if (b_set.size() != std::size_t(i) + 1) continue;
    Face b(b_set.begin(), b_set.end());
    if (subsets.count(b)) continue;  // B is already a face
    moves.push_back(Move{a, std::move(b), i});
  }

  std::sort(moves.begin(), moves.end(), [&](const Move& m1, const Move& m2) {
    if (m1.index != m2.index) return m1.index < m2.index;
    return sorted_labels(x, m1.a) < sorted_labels(x, m2.a);
  });
  return moves;
}

namespace {

std::string pick_fresh_label(const Complex& x, const std::string& prefix) {
  for (int n = 1;; ++n) {
    std::string label = prefix + std::to_string(n);
    if (!x.has_vertex(label)) return label;
  }
}

}  // namespace

Complex apply_move(const Complex& x, const Move& m, const std::string& fresh_prefix) {
  if (!x.is_pure())
    throw Error("bistellar moves need a pure complex", ErrorCode::precondition);
  const int d = x.dim();
  if (m.index < 0 || m.index > d)
    throw Error("illegal move: index out of range", ErrorCode::illegal_move);
  if (int(m.a.size()) != d - m.index + 1)
    throw Error("illegal move: A has the wrong dimension for the index",
                ErrorCode::illegal_move);

  // cofacets of A
  std::vector<Face> cofacets;
  for (const Face& f : x.facets())
    if (std::includes(f.begin(), f.end(), m.a.begin(), m.a.end()))
      cofacets.push_back(f);
  if (cofacets.empty())
    throw Error("illegal move: A is not a face", ErrorCode::illegal_move);

  VertexTable table = x.vertices();
  Face b;
  if (m.index == 0) {
    if (cofacets.size() != 1 || cofacets[0] != m.a)
      throw Error("illegal move: A is not a facet", ErrorCode::illegal_move);
    std::string fresh = m.fresh.empty() ? pick_fresh_label(x, fresh_prefix) : m.fresh;
    if (x.has_vertex(fresh))
      throw Error("illegal move: fresh vertex '" + fresh + "' already in use",
                  ErrorCode::illegal_move);
    b.push_back(table.intern(fresh));
  } else {
    if (cofacets.size() != std::size_t(m.index) + 1)
      throw Error("illegal move: the link of A is not the boundary of a simplex",
                  ErrorCode::illegal_move);
    std::set<VertexId> b_set;
    for (const Face& f : cofacets)
      for (VertexId v : f)
        if (!std::binary_search(m.a.begin(), m.a.end(), v)) b_set.insert(v);
    if (b_set.size() != std::size_t(m.index) + 1)
      throw Error("illegal move: the link of A is not the boundary of a simplex",
                  ErrorCode::illegal_move);
    b.assign(b_set.begin(), b_set.end());
    if (!m.b.empty() && b != m.b)
      throw Error("illegal move: B does not match the link of A",
                  ErrorCode::illegal_move);
    if (x.has_face(b))
      throw Error("illegal move: B is already a face", ErrorCode::illegal_move);
  }

  std::unordered_set<Face, FaceHash> removed(cofacets.begin(), cofacets.end());
  std::vector<Face> facets;
  facets.reserve(x.facet_count() + m.a.size());
  for (const Face& f : x.facets())
    if (!removed.count(f)) facets.push_back(f);
  for (std::size_t t = 0; t < m.a.size(); ++t) {
    Face f;
    f.reserve(d + 1);
    for (std::size_t s = 0; s < m.a.size(); ++s)
      if (s != t) f.push_back(m.a[s]);
    for (VertexId v : b) f.push_back(v);
    std::sort(f.begin(), f.end());
    facets.push_back(std::move(f));
  }
  return Complex::from_facets(table, std::move(facets));
}

Move inverse_move(const Complex& before, const Move& m, const Complex& after) {
  const int d = before.dim();
  auto translate = [&](const Face& f) {
    Face out;
    out.reserve(f.size());
    for (VertexId v : f) out.push_back(after.vertices().id_of(before.vertices().label(v)));
    std::sort(out.begin(), out.end());
    return out;
  };
  Move inv;
  inv.index = d - m.index;
  if (m.index == 0) {
    if (m.fresh.empty())
      throw Error("inverse of a 0-move needs the fresh vertex name");
    inv.a = Face{after.vertices().id_of(m.fresh)};
    // inv.b is recomputed from the link on application
  } else if (m.index == d) {
    inv.a = translate(m.b);
    inv.fresh = before.vertices().label(m.a.at(0));
  } else {
    inv.a = translate(m.b);
    inv.b = translate(m.a);
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Move log

std::string MoveLog::render() const {
  std::string out = "digest " + initial_digest + "\n";
  for (const auto& mv : moves) {
    out.push_back(mv.direction);
    out += " " + std::to_string(mv.index) + " |";
    for (const auto& l : mv.a_labels) out += " " + l;
    out += " |";
    for (const auto& l : mv.b_labels) out += " " + l;
    out.push_back('\n');
  }
  return out;
}

MoveLog MoveLog::parse(std::string_view text) {
  MoveLog log;
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_digest = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!have_digest) {
      std::string hex;
      if (first != "digest" || !(ls >> hex))
        throw Error("move log must start with 'digest <hex>'", ErrorCode::parse);
      log.initial_digest = hex;
      have_digest = true;
      continue;
    }
    LoggedMove mv;
    if (first != "+" && first != "-")
      throw Error("move log line " + std::to_string(line_no) +
                      ": direction must be + or -",
                  ErrorCode::parse);
    mv.direction = first[0];
    std::string token;
    if (!(ls >> token)) throw Error("move log: missing index", ErrorCode::parse);
    mv.index = std::stoi(token);
    int section = 0;
    while (ls >> token) {
      if (token == "|") {
        ++section;
        continue;
      }
      if (section == 1)
        mv.a_labels.push_back(token);
      else if (section == 2)
        mv.b_labels.push_back(token);
      else
        throw Error("move log line " + std::to_string(line_no) + ": bad format",
                    ErrorCode::parse);
    }
    if (section != 2)
      throw Error("move log line " + std::to_string(line_no) + ": bad format",
                  ErrorCode::parse);
    log.moves.push_back(std::move(mv));
  }
  if (!have_digest) throw Error("move log has no digest line", ErrorCode::parse);
  return log;
}

namespace {

// Re-applies a logged move to the current complex.  Fresh vertices of
// 0-moves keep their recorded names.
Complex apply_logged(const Complex& x, const LoggedMove& mv) {
  Move m;
  m.index = mv.index;
  char direction = mv.direction;
  std::vector<std::string> a_labels = mv.a_labels;
  std::vector<std::string> b_labels = mv.b_labels;
  if (direction == '-') {
    std::swap(a_labels, b_labels);
    m.index = x.dim() - m.index;
  }
  m.a = x.face_from_labels(a_labels);
  if (m.index == 0) {
    if (b_labels.size() != 1)
      throw Error("move log: a 0-move names exactly one fresh vertex",
                  ErrorCode::parse);
    // apply manually so the fresh vertex keeps its logged name
    if (x.has_vertex(b_labels[0]))
      throw Error("move log: fresh vertex '" + b_labels[0] + "' already in use",
                  ErrorCode::illegal_move);
    std::vector<Face> cofacets;
    for (const Face& f : x.facets())
      if (std::includes(f.begin(), f.end(), m.a.begin(), m.a.end()))
        cofacets.push_back(f);
    if (cofacets.size() != 1 || cofacets[0] != m.a)
      throw Error("illegal move: A is not a facet", ErrorCode::illegal_move);
    VertexTable table = x.vertices();
    const VertexId fresh = table.intern(b_labels[0]);
    std::vector<Face> facets;
    for (const Face& f : x.facets())
      if (f != m.a) facets.push_back(f);
    for (std::size_t t = 0; t < m.a.size(); ++t) {
      Face f;
      for (std::size_t s = 0; s < m.a.size(); ++s)
        if (s != t) f.push_back(m.a[s]);
      f.push_back(fresh);
      std::sort(f.begin(), f.end());
      facets.push_back(std::move(f));
    }
    return Complex::from_facets(table, std::move(facets));
  }
  m.b = x.face_from_labels(b_labels);
  return apply_move(x, m);
}

}  // namespace

Complex replay_log(const Complex& start, const MoveLog& log, std::size_t prefix) {
  const std::string digest = sha256_hex(start.render());
  if (digest != log.initial_digest)
    throw Error("move log digest does not match the starting complex");
  Complex current = start;
  std::size_t count = 0;
  for (const auto& mv : log.moves) {
    if (count >= prefix) break;
    current = apply_logged(current, mv);
    ++count;
  }
  return current;
}

// ---------------------------------------------------------------------------
// Reduction search

namespace {

// Face-count change of an i-move on a d-complex:
//   delta f_j = C(|A|, j+1-|B|) - C(|B|, j+1-|A|),  |A| = d-i+1, |B| = i+1.
std::vector<std::int64_t> move_delta(int d, int i) {
  const std::int64_t na = d - i + 1, nb = i + 1;
  std::vector<std::int64_t> delta(d + 1, 0);
  for (int j = 0; j <= d; ++j)
    delta[j] = binomial(na, j + 1 - nb) - binomial(nb, j + 1 - na);
  return delta;
}

bool lex_less(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool lex_negative(const std::vector<std::int64_t>& delta) {
  for (std::int64_t v : delta) {
    if (v < 0) return true;
    if (v > 0) return false;
  }
  return false;
}

}  // namespace

namespace {

// Incremental search state.  Vertices live in stable slots (they only
// disappear during a reduction run: the schedule never applies 0-moves),
// faces are packed into 64-bit keys of at most eight 8-bit slot ids, and
// the face -> cofacet map plus the structural move candidates are updated
// only around the facets a move touches.
class FlipState {
 public:
  static bool supports(const Complex& x) {
    return x.dim() <= 7 && x.vertices().size() <= 254;
  }

  explicit FlipState(const Complex& x) : d_(x.dim()) {
    labels_ = x.vertices().labels();
    for (const Face& f : x.facets()) add_facet(f);
    for (const auto& [key, list] : subsets_) reevaluate(key);
  }

  int dim() const { return d_; }

  struct Legal {
    Face a;
    Face b;
    int index;
  };

  // Legal moves with index >= 1, sorted by (index, slots of A).
  void collect_legal(std::vector<Legal>& out) const {
    out.clear();
    for (const auto& [key, cand] : cand_) {
      if (subsets_.count(pack(cand.b))) continue;  // B is a face
      out.push_back({cand.a, cand.b, cand.index});
    }
    std::sort(out.begin(), out.end(), [](const Legal& l, const Legal& r) {
      if (l.index != r.index) return l.index < r.index;
      return l.a < r.a;
    });
  }

  // Applies a legal move; returns the sorted label lists for the log.
  std::pair<std::vector<std::string>, std::vector<std::string>> apply(const Legal& m) {
    const auto cofacet_ids = subsets_.at(pack(m.a));
    std::vector<Key> touched;
    for (std::uint32_t fid : cofacet_ids) remove_facet(fid, touched);
    for (std::size_t t = 0; t < m.a.size(); ++t) {
      Face f;
      f.reserve(m.a.size() - 1 + m.b.size());
      for (std::size_t s = 0; s < m.a.size(); ++s)
        if (s != t) f.push_back(m.a[s]);
      for (VertexId v : m.b) f.push_back(v);
      std::sort(f.begin(), f.end());
      add_facet(f, &touched);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (Key key : touched) reevaluate(key);

    auto labels_of = [&](const Face& f) {
      std::vector<std::string> out;
      for (VertexId v : f) out.push_back(labels_[v]);
      std::sort(out.begin(), out.end());
      return out;
    };
    return {labels_of(m.a), labels_of(m.b)};
  }

  struct Raw {
    std::vector<std::string> labels;
    std::vector<Face> facets;
  };

  Raw raw() const {
    Raw r;
    r.labels = labels_;
    for (const Face& f : facets_)
      if (!f.empty()) r.facets.push_back(f);
    return r;
  }

  static Complex materialize(const Raw& raw) {
    // restrict to used slots, preserving slot order
    std::vector<bool> used(raw.labels.size(), false);
    for (const Face& f : raw.facets)
      for (VertexId v : f) used[v] = true;
    VertexTable table;
    std::vector<VertexId> remap(raw.labels.size(), 0);
    for (std::size_t s = 0; s < raw.labels.size(); ++s)
      if (used[s]) remap[s] = table.intern(raw.labels[s]);
    std::vector<Face> facets;
    facets.reserve(raw.facets.size());
    for (const Face& f : raw.facets) {
      Face g;
      g.reserve(f.size());
      for (VertexId v : f) g.push_back(remap[v]);
      std::sort(g.begin(), g.end());
      facets.push_back(std::move(g));
    }
    return Complex::from_facets(table, std::move(facets));
  }

  Complex snapshot() const { return materialize(raw()); }

 private:
  using Key = std::uint64_t;
  using CofacetList = boost::container::small_vector<std::uint32_t, 4>;

  static Key pack(const Face& slots) {
    Key k = ~0ULL;
    int shift = 0;
    for (VertexId v : slots) {
      k = (k & ~(Key(0xFF) << shift)) | (Key(v) << shift);
      shift += 8;
    }
    return k;
  }

  static Face unpack(Key k) {
    Face f;
    for (int shift = 0; shift < 64; shift += 8) {
      const std::uint32_t byte = (k >> shift) & 0xFF;
      if (byte == 0xFF) break;
      f.push_back(byte);
    }
    return f;
  }

  void add_facet(const Face& f, std::vector<Key>* touched = nullptr) {
    std::uint32_t fid;
    if (!free_facets_.empty()) {
      fid = free_facets_.back();
      free_facets_.pop_back();
      facets_[fid] = f;
    } else {
      fid = std::uint32_t(facets_.size());
      facets_.push_back(f);
    }
    const std::size_t n = f.size();
    Face sub;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      sub.clear();
      for (std::size_t b = 0; b < n; ++b)
        if (mask & (1u << b)) sub.push_back(f[b]);
      const Key key = pack(sub);
      subsets_[key].push_back(fid);
      if (touched) touched->push_back(key);
    }
  }

  void remove_facet(std::uint32_t fid, std::vector<Key>& touched) {
    const Face f = facets_[fid];
    const std::size_t n = f.size();
    Face sub;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      sub.clear();
      for (std::size_t b = 0; b < n; ++b)
        if (mask & (1u << b)) sub.push_back(f[b]);
      const Key key = pack(sub);
      auto it = subsets_.find(key);
      auto& list = it->second;
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (list[i] == fid) {
          list[i] = list.back();
          list.pop_back();
          break;
        }
      }
      if (list.empty()) subsets_.erase(it);
      touched.push_back(key);
    }
    facets_[fid].clear();
    free_facets_.push_back(fid);
  }

  // Recomputes the structural candidacy of the face behind `key`: its
  // cofacet count must be i+1 and the link vertices must span i+1 slots.
  void reevaluate(Key key) {
    auto it = subsets_.find(key);
    if (it == subsets_.end()) {
      cand_.erase(key);
      return;
    }
    const Face a = unpack(key);
    const int i = d_ - int(a.size()) + 1;
    if (i < 1 || i > d_ || it->second.size() != std::size_t(i) + 1) {
      cand_.erase(key);
      return;
    }
    std::set<VertexId> b_set;
    for (std::uint32_t fid : it->second)
      for (VertexId v : facets_[fid])
        if (!std::binary_search(a.begin(), a.end(), v)) b_set.insert(v);
    if (b_set.size() != std::size_t(i) + 1) {
      cand_.erase(key);
      return;
    }
    cand_[key] = Cand{a, Face(b_set.begin(), b_set.end()), i};
  }

  struct Cand {
    Face a;
    Face b;
    int index;
  };

  int d_;
  std::vector<std::string> labels_;
  std::vector<Face> facets_;
  std::vector<std::uint32_t> free_facets_;
  std::unordered_map<Key, CofacetList> subsets_;
  std::unordered_map<Key, Cand> cand_;
};

// Fallback for complexes too large for the packed fast path: re-enumerates
// moves from scratch each step through the public operations.
SearchResult reduce_search_generic(const Complex& x, const SearchConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  const int d = x.dim();
  std::vector<std::vector<std::int64_t>> deltas(d + 1);
  for (int i = 0; i <= d; ++i) deltas[i] = move_delta(d, i);

  SplitMix64 rng(cfg.seed);
  Complex current = x;
  std::vector<std::int64_t> fvec = f_vector(current).counts;

  SearchResult result{current, current, {}, 0, SearchStatus::stuck, 0};
  result.log.initial_digest = sha256_hex(x.render());
  std::vector<std::int64_t> best_fvec = fvec;

  double excursion_len = cfg.excursion_initial;
  std::int64_t excursion_left = 0;
  int consecutive_failures = 0;
  bool checkpoint_stop = false;

  auto apply_and_log = [&](Move m) {
    LoggedMove logged;
    logged.direction = '+';
    logged.index = m.index;
    logged.a_labels = sorted_labels(current, m.a);
    if (m.index == 0) {
      if (m.fresh.empty()) m.fresh = pick_fresh_label(current, cfg.fresh_prefix);
      logged.b_labels = {m.fresh};
    } else {
      logged.b_labels = sorted_labels(current, m.b);
    }
    current = apply_move(current, m, cfg.fresh_prefix);
    for (int j = 0; j <= d; ++j) fvec[j] += deltas[m.index][j];
    result.log.moves.push_back(std::move(logged));
    ++result.moves_applied;
    if (lex_less(fvec, best_fvec)) {
      best_fvec = fvec;
      result.best_complex = current;
      result.best_at = result.log.moves.size();
      consecutive_failures = 0;
      excursion_len = cfg.excursion_initial;
    }
    if (cfg.checkpoint_every > 0 && cfg.checkpoint &&
        result.moves_applied % cfg.checkpoint_every == 0) {
      if (!cfg.checkpoint(current, result.moves_applied)) {
        checkpoint_stop = true;
        return false;
      }
    }
    return true;
  };

  while (true) {
    if (checkpoint_stop) {
      result.status = SearchStatus::stopped;
      break;
    }
    if (cfg.target_vertices > 0 && fvec[0] <= cfg.target_vertices) {
      result.status = SearchStatus::reached_target;
      break;
    }
    if (result.moves_applied >= cfg.max_moves) {
      result.status = SearchStatus::budget_moves;
      break;
    }
    if (elapsed() >= cfg.max_seconds) {
      result.status = SearchStatus::budget_seconds;
      break;
    }

    const auto moves = enumerate_moves(current);
    std::vector<const Move*> nonzero;
    for (const auto& m : moves)
      if (m.index >= 1) nonzero.push_back(&m);

    if (excursion_left > 0) {
      if (nonzero.empty()) {
        result.status = SearchStatus::stuck;
        break;
      }
      --excursion_left;
      apply_and_log(*nonzero[rng.below(nonzero.size())]);
      continue;
    }

    const std::vector<std::int64_t>* best_delta = nullptr;
    for (const Move* m : nonzero) {
      if (!lex_negative(deltas[m->index])) continue;
      if (!best_delta || lex_less(deltas[m->index], *best_delta))
        best_delta = &deltas[m->index];
    }
    if (best_delta) {
      std::vector<const Move*> cand;
      for (const Move* m : nonzero)
        if (deltas[m->index] == *best_delta) cand.push_back(m);
      apply_and_log(*cand[rng.below(cand.size())]);
      continue;
    }

    ++consecutive_failures;
    if (consecutive_failures > 1)
      excursion_len = std::min(excursion_len * cfg.excursion_growth,
                               double(cfg.excursion_cap));
    excursion_left = std::int64_t(excursion_len);
    if (nonzero.empty()) {
      result.status = SearchStatus::stuck;
      break;
    }
  }

  result.final_complex = current;
  return result;
}

}  // namespace

SearchResult reduce_search(const Complex& x, const SearchConfig& cfg) {
  const auto pm = pseudomanifold_check(x);
  if (!pm.pure || !pm.closed)
    throw Error("reduction needs a pure closed pseudomanifold", ErrorCode::precondition);

  if (!FlipState::supports(x)) return reduce_search_generic(x, cfg);

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  const int d = x.dim();
  std::vector<std::vector<std::int64_t>> deltas(d + 1);
  for (int i = 0; i <= d; ++i) deltas[i] = move_delta(d, i);

  SplitMix64 rng(cfg.seed);
  FlipState state(x);
  std::vector<std::int64_t> fvec = f_vector(x).counts;

  SearchResult result{x, x, {}, 0, SearchStatus::stuck, 0};
  result.log.initial_digest = sha256_hex(x.render());
  std::vector<std::int64_t> best_fvec = fvec;
  FlipState::Raw best_raw = state.raw();
  bool best_dirty = false;

  double excursion_len = cfg.excursion_initial;
  std::int64_t excursion_left = 0;
  int consecutive_failures = 0;
  bool checkpoint_stop = false;

  auto apply_and_log = [&](const FlipState::Legal& m) {
    auto [a_labels, b_labels] = state.apply(m);
    result.log.moves.push_back({'+', m.index, std::move(a_labels), std::move(b_labels)});
    for (int j = 0; j <= d; ++j) fvec[j] += deltas[m.index][j];
    ++result.moves_applied;
    if (lex_less(fvec, best_fvec)) {
      best_fvec = fvec;
      best_raw = state.raw();
      best_dirty = true;
      result.best_at = result.log.moves.size();
      consecutive_failures = 0;
      excursion_len = cfg.excursion_initial;
    }
    if (cfg.checkpoint_every > 0 && cfg.checkpoint &&
        result.moves_applied % cfg.checkpoint_every == 0) {
      if (!cfg.checkpoint(state.snapshot(), result.moves_applied)) {
        checkpoint_stop = true;
        return false;
      }
    }
    return true;
  };

  std::vector<FlipState::Legal> legal;
  while (true) {
    if (checkpoint_stop) {
      result.status = SearchStatus::stopped;
      break;
    }
    if (cfg.target_vertices > 0 && fvec[0] <= cfg.target_vertices) {
      result.status = SearchStatus::reached_target;
      break;
    }
    if (result.moves_applied >= cfg.max_moves) {
      result.status = SearchStatus::budget_moves;
      break;
    }
    if (elapsed() >= cfg.max_seconds) {
      result.status = SearchStatus::budget_seconds;
      break;
    }

    state.collect_legal(legal);
    if (legal.empty()) {
      result.status = SearchStatus::stuck;
      break;
    }

    if (excursion_left > 0) {
      --excursion_left;
      apply_and_log(legal[rng.below(legal.size())]);
      continue;
    }

    const std::vector<std::int64_t>* best_delta = nullptr;
    for (const auto& m : legal) {
      if (!lex_negative(deltas[m.index])) continue;
      if (!best_delta || lex_less(deltas[m.index], *best_delta))
        best_delta = &deltas[m.index];
    }
    if (best_delta) {
      std::vector<const FlipState::Legal*> cand;
      for (const auto& m : legal)
        if (deltas[m.index] == *best_delta) cand.push_back(&m);
      apply_and_log(*cand[rng.below(cand.size())]);
      continue;
    }

    ++consecutive_failures;
    if (consecutive_failures > 1)
      excursion_len = std::min(excursion_len * cfg.excursion_growth,
                               double(cfg.excursion_cap));
    excursion_left = std::int64_t(excursion_len);
  }

  result.final_complex = state.snapshot();
  result.best_complex = best_dirty ? FlipState::materialize(best_raw) : x;
  return result;
}

// ---------------------------------------------------------------------------
// Certification

namespace {

bool is_standard_sphere(const Complex& x) {
  const int d = x.dim();
  if (std::int64_t(x.vertices().size()) != d + 2) return false;
  return std::int64_t(x.facet_count()) == d + 2;  // all (d+1)-subsets
}

std::vector<std::int64_t> sphere_betti(int d) {
  std::vector<std::int64_t> b(d + 1, 0);
  if (d == 0) {
    b[0] = 2;
  } else {
    b[0] = 1;
    b[d] = 1;
  }
  return b;
}

}  // namespace

SphereCertificate certify_sphere(const Complex& x, const SearchConfig& budget) {
  const auto pm = pseudomanifold_check(x);
  if (!pm.pure || !pm.closed || !pm.ridge_degrees_ok || !pm.strongly_connected)
    throw Error("sphere certification needs a closed pseudomanifold",
                ErrorCode::precondition);
  const int d = x.dim();

  const auto profile = homology(x, Ring::GF(2));
  if (profile.betti != sphere_betti(d))
    return {SphereCertificate::Verdict::not_sphere, "homology"};

  if (is_standard_sphere(x)) return {SphereCertificate::Verdict::sphere, "standard"};
  if (d == 0) return {SphereCertificate::Verdict::not_sphere, "f-vector"};

  SearchConfig cfg = budget;
  cfg.target_vertices = d + 2;
  const auto result = reduce_search(x, cfg);
  if (is_standard_sphere(result.best_complex))
    return {SphereCertificate::Verdict::sphere,
            "reduced in " + std::to_string(result.best_at) + " moves"};
  return {SphereCertificate::Verdict::unknown, "search budget exhausted"};
}

ManifoldReport certify_manifold(const Complex& x, const SearchConfig& budget) {
  if (!x.is_pure())
    throw Error("manifold certification needs a pure complex", ErrorCode::precondition);
  ManifoldReport report;
  bool all_spheres = true;
  bool any_unknown = false;
  for (VertexId v = 0; v < x.vertices().size(); ++v) {
    const std::string& label = x.vertices().label(v);
    Complex lk = link(x, Face{v});
    std::string outcome;
    const auto pm = pseudomanifold_check(lk);
    if (!pm.pure || !pm.closed || !pm.ridge_degrees_ok || !pm.strongly_connected ||
        lk.dim() != x.dim() - 1) {
      outcome = "not_sphere(pseudomanifold)";
      all_spheres = false;
    } else {
      SearchConfig cfg = budget;
      cfg.seed = budget.seed + v;  // independent but deterministic per vertex
      const auto cert = certify_sphere(lk, cfg);
      switch (cert.verdict) {
        case SphereCertificate::Verdict::sphere:
          outcome = "sphere";
          break;
        case SphereCertificate::Verdict::not_sphere:
          outcome = "not_sphere(" + cert.reason + ")";
          all_spheres = false;
          break;
        case SphereCertificate::Verdict::unknown:
          outcome = "unknown";
          any_unknown = true;
          break;
      }
    }
    report.link_outcomes.emplace_back(label, outcome);
  }
  if (!all_spheres)
    report.verdict = ManifoldReport::Verdict::not_manifold;
  else if (any_unknown)
    report.verdict = ManifoldReport::Verdict::unknown;
  else
    report.verdict = ManifoldReport::Verdict::manifold;
  return report;
}

}  // namespace symcube
