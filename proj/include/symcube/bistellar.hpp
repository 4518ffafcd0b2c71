#ifndef SYMCUBE_BISTELLAR_HPP
#define SYMCUBE_BISTELLAR_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symcube/complex.hpp"

namespace symcube {

// Bistellar i-move: replace A*∂B by ∂A*B.  A has d-i+1 vertices; B has i+1.
// For i = 0 the new vertex is not part of the complex yet, so `b` stays
// empty and `fresh` optionally names it (auto-assigned when empty).
struct Move {
  Face a;
  Face b;
  int index = 0;
  std::string fresh;

  bool operator==(const Move& other) const = default;
};

struct LoggedMove {
  char direction;                  // '+' forward, '-' inverse replay
  int index;
  std::vector<std::string> a_labels;
  std::vector<std::string> b_labels;
};

struct MoveLog {
  std::string initial_digest;      // SHA-256 of the canonical rendering
  std::vector<LoggedMove> moves;

  std::string render() const;
  static MoveLog parse(std::string_view text);
};

enum class SearchStatus { reached_target, budget_moves, budget_seconds, stuck, stopped };

struct SearchConfig {
  std::uint64_t seed = 0;
  std::int64_t max_moves = 100000;
  double max_seconds = 60.0;
  std::int64_t target_vertices = 0;   // stop when f0 <= target (0 = none)
  int excursion_initial = 8;
  double excursion_growth = 1.5;
  int excursion_cap = 500;
  std::string fresh_prefix = "t";
  std::int64_t checkpoint_every = 0;  // 0 = no checkpoints
  // return false to stop the search early
  std::function<bool(const Complex&, std::int64_t moves_done)> checkpoint;
};

struct SearchResult {
  Complex final_complex;
  Complex best_complex;
  MoveLog log;
  std::size_t best_at = 0;  // moves into the log where best was reached
  SearchStatus status = SearchStatus::stuck;
  std::int64_t moves_applied = 0;
};

// All legal moves, sorted by (index, labels of A).  Restrict to one index by
// passing it; X must be pure.
std::vector<Move> enumerate_moves(const Complex& x, std::optional<int> index = {});

// Applies a move after re-verifying legality.  For i = 0 the fresh vertex
// is m.fresh when set, otherwise "<prefix><n>" with the smallest unused n.
Complex apply_move(const Complex& x, const Move& m,
                   const std::string& fresh_prefix = "t");

// The inverse of a move, expressed in the complex it produced.  For a
// 0-move, `m.fresh` must name the vertex that was added.
Move inverse_move(const Complex& before, const Move& m, const Complex& after);

// Seeded greedy reduction with randomized excursions; deterministic per
// seed.  See README for the exact schedule.
SearchResult reduce_search(const Complex& x, const SearchConfig& cfg);

struct SphereCertificate {
  enum class Verdict { sphere, not_sphere, unknown };
  Verdict verdict = Verdict::unknown;
  std::string reason;
};

SphereCertificate certify_sphere(const Complex& x, const SearchConfig& budget);

struct ManifoldReport {
  enum class Verdict { manifold, not_manifold, unknown };
  Verdict verdict = Verdict::unknown;
  std::vector<std::pair<std::string, std::string>> link_outcomes;  // vertex -> outcome
};

ManifoldReport certify_manifold(const Complex& x, const SearchConfig& budget);

// Replays a move log against its starting complex (digest-checked).
Complex replay_log(const Complex& start, const MoveLog& log,
                   std::size_t prefix = SIZE_MAX);

}  // namespace symcube

#endif
