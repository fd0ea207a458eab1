#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "rankagg/error.hpp"
#include "rankagg/ranking.hpp"
#include "rankagg/weights.hpp"

namespace rankagg {

/// Largest n for which distances are computed by exhaustive search over S_n.
inline constexpr int kDefaultExactCap = 9;

inline long long kendall_tau(const Ranking& p, const Ranking& s) {
  require_same_size(p, s);
  const int n = p.size();
  long long inversions = 0;
  for (Candidate a = 1; a <= n; ++a)
    for (Candidate b = a + 1; b <= n; ++b)
      if ((p.rank_of(a) < p.rank_of(b)) != (s.rank_of(a) < s.rank_of(b))) ++inversions;
  return inversions;
}

inline long long spearman_footrule(const Ranking& p, const Ranking& s) {
  require_same_size(p, s);
  long long total = 0;
  for (Candidate c = 1; c <= p.size(); ++c) total += std::abs(p.rank_of(c) - s.rank_of(c));
  return total;
}

/// D(p, s): for every candidate, the shortest-path weight between its two ranks.
inline double generalized_footrule(const Ranking& p, const Ranking& s, const PathTable& f) {
  require_same_size(p, s);
  if (f.size() != p.size()) throw Error(ErrorCode::dimension_mismatch, "path table size differs from ranking size");
  double total = 0.0;
  for (Candidate c = 1; c <= p.size(); ++c) total += f(p.rank_of(c), s.rank_of(c));
  return total;
}

namespace detail {

/// A transposition of two rank positions (1-based) and its cost.
struct Move {
  Rank a;
  Rank b;
  double cost;
};

inline std::vector<Move> adjacent_moves(const WeightVector& w) {
  std::vector<Move> moves;
  for (Rank k = 1; k < w.candidates(); ++k) moves.push_back({k, k + 1, w(k)});
  return moves;
}

inline std::vector<Move> transposition_moves(const TranspositionWeights& phi) {
  std::vector<Move> moves;
  for (Rank a = 1; a <= phi.size(); ++a)
    for (Rank b = a + 1; b <= phi.size(); ++b)
      if (std::isfinite(phi(a, b))) moves.push_back({a, b, phi(a, b)});
  return moves;
}

inline void require_exact_cap(int n, int cap) {
  if (n > cap) {
    throw Error(ErrorCode::size_cap_exceeded,
                "exact distance unavailable at this size (n=" + std::to_string(n) +
                    " exceeds exact cap " + std::to_string(cap) + ")");
  }
}

/// Label-setting shortest-path search over S_n, where every state may be
/// right-multiplied by any of `moves`. Returns distances indexed by
/// permutation_index. When `target` is given the search stops as soon as it
/// is settled; unsettled entries are left at +infinity.
inline std::vector<double> search_permutation_graph(std::span<const Candidate> source,
                                                    const std::vector<Move>& moves,
                                                    const std::uint64_t* target = nullptr) {
  const int n = static_cast<int>(source.size());
  std::vector<double> dist(factorial(n), kInfinity);
  std::vector<char> settled(dist.size(), 0);
  using Entry = std::pair<double, std::uint64_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;

  const std::uint64_t start = permutation_index(source);
  dist[start] = 0.0;
  frontier.emplace(0.0, start);
  std::vector<Candidate> state(source.size());
  while (!frontier.empty()) {
    const auto [d, u] = frontier.top();
    frontier.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    if (target && u == *target) break;
    permutation_from_index(u, state);
    for (const Move& mv : moves) {
      std::swap(state[mv.a - 1], state[mv.b - 1]);
      const std::uint64_t v = permutation_index(state);
      const double nd = d + mv.cost;
      if (!settled[v] && nd < dist[v]) {
        dist[v] = nd;
        frontier.emplace(nd, v);
      }
      std::swap(state[mv.a - 1], state[mv.b - 1]);
    }
  }
  return dist;
}

inline double exact_pair(const Ranking& p, const Ranking& s, const std::vector<Move>& moves) {
  const std::uint64_t target = permutation_index(s.seq());
  return search_permutation_graph(p.seq(), moves, &target)[target];
}

/// Index of p^{-1} o s; the exact distances are invariant under relabeling,
/// so d(p, s) = d(e, p^{-1} o s).
inline std::uint64_t relative_index(const Ranking& p, const Ranking& s) {
  std::vector<Candidate> rel(static_cast<std::size_t>(p.size()));
  for (int k = 0; k < p.size(); ++k) rel[k] = p.pos()[s.seq()[k] - 1];
  return permutation_index(rel);
}

}  // namespace detail

/// Minimum total weight of adjacent swaps turning p into s.
inline double weighted_kendall_exact(const Ranking& p, const Ranking& s, const WeightVector& w,
                                     int exact_cap = kDefaultExactCap) {
  require_same_size(p, s);
  require_weights_for(w, p.size());
  detail::require_exact_cap(p.size(), exact_cap);
  return detail::exact_pair(p, s, detail::adjacent_moves(w));
}

/// Minimum total weight of position transpositions turning p into s.
inline double weighted_transposition_exact(const Ranking& p, const Ranking& s,
                                           const TranspositionWeights& phi,
                                           int exact_cap = kDefaultExactCap) {
  require_same_size(p, s);
  if (phi.size() != p.size()) throw Error(ErrorCode::dimension_mismatch, "transposition weights size differs from ranking size");
  detail::require_exact_cap(p.size(), exact_cap);
  return detail::exact_pair(p, s, detail::transposition_moves(phi));
}

/// Distances from the identity to every permutation for a fixed move set.
/// Any exact distance is then a single lookup via relabeling invariance.
class ExactDistanceTable {
 public:
  ExactDistanceTable(int n, const std::vector<detail::Move>& moves)
      : n_(n), field_(detail::search_permutation_graph(identity(n).seq(), moves)) {}

  int size() const noexcept { return n_; }

  double operator()(const Ranking& p, const Ranking& s) const {
    return field_[detail::relative_index(p, s)];
  }

 private:
  int n_;
  std::vector<double> field_;
};

enum class MetricKind { weighted_kendall, weighted_transposition, generalized_footrule, kendall_tau, footrule };
enum class Space { ranks, elements };

inline std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::weighted_kendall: return "weighted-kendall";
    case MetricKind::weighted_transposition: return "weighted-transposition";
    case MetricKind::generalized_footrule: return "generalized-footrule";
    case MetricKind::kendall_tau: return "kendall-tau";
    case MetricKind::footrule: return "footrule";
  }
  return "unknown";
}

/// A distance selector over rankings of a fixed size.
///
/// Exact kinds (weighted Kendall, weighted transposition) are evaluated by
/// table lookup into a shortest-path field that is built on first use and
/// shared between copies. They refuse sizes above the exact cap; callers
/// that must still produce an objective use surrogate(), the generalized
/// footrule D over the same weights, which brackets d within a factor 2.
class Metric {
 public:
  static Metric weighted_kendall(WeightVector w, int exact_cap = kDefaultExactCap) {
    Metric m(MetricKind::weighted_kendall, w.candidates(), exact_cap);
    m.moves_ = detail::adjacent_moves(w);
    m.paths_ = path_table_from_adjacent(w);
    m.weights_ = std::move(w);
    return m;
  }

  static Metric weighted_transposition(const TranspositionWeights& phi, int exact_cap = kDefaultExactCap) {
    Metric m(MetricKind::weighted_transposition, phi.size(), exact_cap);
    m.moves_ = detail::transposition_moves(phi);
    m.paths_ = path_table_general(phi);
    return m;
  }

  static Metric generalized_footrule(PathTable f) {
    Metric m(MetricKind::generalized_footrule, f.size(), 0);
    m.paths_ = std::move(f);
    return m;
  }

  static Metric kendall_tau(int n) { return Metric(MetricKind::kendall_tau, n, 0); }
  static Metric footrule(int n) { return Metric(MetricKind::footrule, n, 0); }

  MetricKind kind() const noexcept { return kind_; }
  Space space() const noexcept { return space_; }
  int candidates() const noexcept { return n_; }
  int exact_cap() const noexcept { return cap_; }

  bool needs_search() const noexcept {
    return kind_ == MetricKind::weighted_kendall || kind_ == MetricKind::weighted_transposition;
  }

  /// False only for search-based kinds above the exact cap.
  bool evaluable() const noexcept { return !needs_search() || n_ <= cap_; }

  /// True unless this is the generalized footrule standing in for d.
  bool exact() const noexcept { return kind_ != MetricKind::generalized_footrule; }

  const PathTable& path_table() const noexcept { return paths_; }
  const std::optional<WeightVector>& weights() const noexcept { return weights_; }

  Metric in_space(Space space) const {
    Metric m = *this;
    m.space_ = space;
    return m;
  }

  /// Generalized footrule D over this metric's path table (itself for the
  /// closed-form kinds).
  Metric surrogate() const {
    if (!needs_search()) return *this;
    return generalized_footrule(paths_).in_space(space_);
  }

  /// This metric when it can be evaluated, else its surrogate.
  Metric evaluable_or_surrogate() const { return evaluable() ? *this : surrogate(); }

  std::string name() const {
    std::string s = to_string(kind_);
    if (space_ == Space::elements) s += "[elements]";
    return s;
  }

  double operator()(const Ranking& p, const Ranking& s) const {
    require_same_size(p, s);
    if (p.size() != n_) throw Error(ErrorCode::dimension_mismatch, "metric built for n=" + std::to_string(n_));
    if (space_ == Space::elements) return evaluate(invert(p), invert(s));
    return evaluate(p, s);
  }

 private:
  Metric(MetricKind kind, int n, int cap) : kind_(kind), n_(n), cap_(cap) {
    if (needs_search()) table_ = std::make_shared<LazyTable>();
  }

  struct LazyTable {
    std::once_flag once;
    std::unique_ptr<ExactDistanceTable> table;
  };

  double evaluate(const Ranking& p, const Ranking& s) const {
    switch (kind_) {
      case MetricKind::kendall_tau: return static_cast<double>(rankagg::kendall_tau(p, s));
      case MetricKind::footrule: return static_cast<double>(spearman_footrule(p, s));
      case MetricKind::generalized_footrule: return rankagg::generalized_footrule(p, s, paths_);
      default: break;
    }
    detail::require_exact_cap(n_, cap_);
    std::call_once(table_->once, [&] { table_->table = std::make_unique<ExactDistanceTable>(n_, moves_); });
    return (*table_->table)(p, s);
  }

  MetricKind kind_;
  Space space_ = Space::ranks;
  int n_;
  int cap_;
  std::vector<detail::Move> moves_;
  PathTable paths_;
  std::optional<WeightVector> weights_;
  std::shared_ptr<LazyTable> table_;
};

/// Metric whose weights attach to elements rather than ranks.
inline Metric element_space(const Metric& metric) { return metric.in_space(Space::elements); }

/// Generic form for any callable distance d(p, s).
template <class Distance>
auto element_space(Distance distance) {
  return [distance = std::move(distance)](const Ranking& p, const Ranking& s) {
    return distance(invert(p), invert(s));
  };
}

struct Objective {
  double cumulative = 0.0;
  double average = 0.0;
  bool exact = true;
};

/// Sum (and mean) of d(p, vote) over the profile.
inline Objective cumulative_objective(const Ranking& p, const VoteProfile& profile, const Metric& metric) {
  if (profile.candidates() != metric.candidates()) {
    throw Error(ErrorCode::dimension_mismatch, "profile and metric sizes differ");
  }
  Objective out;
  for (const Ranking& vote : profile.votes()) out.cumulative += metric(p, vote);
  out.average = out.cumulative / profile.voters();
  out.exact = metric.exact();
  return out;
}

}  // namespace rankagg
