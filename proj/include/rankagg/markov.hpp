#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rankagg/distance.hpp"
#include "rankagg/error.hpp"
#include "rankagg/matrix.hpp"
#include "rankagg/ranking.hpp"
#include "rankagg/result.hpp"
#include "rankagg/weights.hpp"

namespace rankagg {

inline constexpr double kRowSumTolerance = 1e-12;
inline constexpr double kStationaryResidual = 1e-9;
inline constexpr long kStationaryIterationCap = 1'000'000;

/// Row-stochastic matrix over states 0..n-1.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(SquareMatrix<double> p) : p_(std::move(p)) {
    for (int i = 0; i < p_.size(); ++i) {
      double sum = 0.0;
      for (double x : p_.row(i)) {
        if (!(x >= 0.0)) throw Error(ErrorCode::invalid_weights, "transition probabilities must be non-negative");
        sum += x;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance) {
        throw Error(ErrorCode::invalid_weights, "transition row " + std::to_string(i + 1) + " does not sum to 1");
      }
    }
  }

  int size() const noexcept { return p_.size(); }
  double operator()(int i, int j) const { return p_(i, j); }
  std::span<const double> row(int i) const { return p_.row(i); }
  const SquareMatrix<double>& matrix() const noexcept { return p_; }

 private:
  SquareMatrix<double> p_;
};

using StationaryDistribution = std::vector<double>;

/// ||x P - x||_inf
inline double stationary_residual(const TransitionMatrix& p, std::span<const double> x) {
  const int n = p.size();
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    double xj = 0.0;
    for (int i = 0; i < n; ++i) xj += x[i] * p(i, j);
    worst = std::max(worst, std::abs(xj - x[j]));
  }
  return worst;
}

/// Equilibrium distribution reached from the uniform start.
///
/// Iterates the lazy chain (P + I) / 2, which has the same stationary
/// vectors as P but no periodicity, so the iterates converge to the
/// time-averaged limit of P from the same start. Reducible chains therefore
/// get a deterministic answer.
inline StationaryDistribution stationary(const TransitionMatrix& p) {
  const int n = p.size();
  std::vector<double> x(n, 1.0 / n), next(n);
  for (long it = 0; it < kStationaryIterationCap; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0.0) continue;
      const auto row = p.row(i);
      for (int j = 0; j < n; ++j) next[j] += x[i] * row[j];
    }
    double residual = 0.0;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      residual = std::max(residual, std::abs(next[j] - x[j]));
      next[j] = 0.5 * (next[j] + x[j]);
      sum += next[j];
    }
    for (double& v : next) v /= sum;
    x.swap(next);
    if (residual <= 1e-14) break;
  }
  if (stationary_residual(p, x) >= kStationaryResidual) {
    throw Error(ErrorCode::non_convergence, "stationary distribution did not converge within the iteration cap");
  }
  return x;
}

/// alpha(i, j) (0-based candidates): number of votes ranking j at least as
/// high as i.
inline SquareMatrix<int> alpha_counts(const VoteProfile& profile) {
  const int n = profile.candidates();
  SquareMatrix<int> alpha(n, 0);
  for (const Ranking& vote : profile.votes())
    for (Candidate i = 1; i <= n; ++i)
      for (Candidate j = 1; j <= n; ++j)
        if (vote.rank_of(j) <= vote.rank_of(i)) ++alpha(i - 1, j - 1);
  return alpha;
}

/// Which chain mc_aggregate builds.
enum class ChainKind { case1, case2, case3, weighted };

inline std::string to_string(ChainKind kind) {
  switch (kind) {
    case ChainKind::case1: return "mc1";
    case ChainKind::case2: return "mc2";
    case ChainKind::case3: return "mc3";
    case ChainKind::weighted: return "mc";
  }
  return "unknown";
}

namespace detail {

/// Votes restricted to a subset of candidates. Each surviving candidate
/// keeps the rank it had in the original vote.
struct Ballots {
  std::vector<Candidate> candidates;          // ascending ids
  std::vector<std::vector<Rank>> positions;   // positions[vote][index into candidates]

  static Ballots from(const VoteProfile& profile) {
    Ballots b;
    b.candidates.resize(profile.candidates());
    std::iota(b.candidates.begin(), b.candidates.end(), 1);
    for (const Ranking& vote : profile.votes()) b.positions.emplace_back(vote.pos().begin(), vote.pos().end());
    return b;
  }

  int size() const { return static_cast<int>(candidates.size()); }
  int voters() const { return static_cast<int>(positions.size()); }

  Ballots without(const std::vector<int>& drop) const {
    Ballots b;
    std::vector<int> keep;
    for (int t = 0; t < size(); ++t)
      if (std::find(drop.begin(), drop.end(), t) == drop.end()) keep.push_back(t);
    for (int t : keep) b.candidates.push_back(candidates[t]);
    for (const auto& pos : positions) {
      std::vector<Rank> reduced;
      for (int t : keep) reduced.push_back(pos[t]);
      b.positions.push_back(std::move(reduced));
    }
    return b;
  }

  /// Number of surviving candidates strictly above index t in vote l.
  int above(int l, int t) const {
    int count = 0;
    for (int k = 0; k < size(); ++k)
      if (positions[l][k] < positions[l][t]) ++count;
    return count;
  }
};

inline TransitionMatrix average_rows(const std::vector<SquareMatrix<double>>& per_vote) {
  const int n = per_vote.front().size();
  SquareMatrix<double> p(n, 0.0);
  for (const auto& q : per_vote)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) += q(i, j);
  const double m = static_cast<double>(per_vote.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) /= m;
  return TransitionMatrix(std::move(p));
}

inline TransitionMatrix chain_case1(const Ballots& b) {
  const int n = b.size();
  SquareMatrix<double> p(n, 0.0);
  for (int i = 0; i < n; ++i) {
    std::vector<char> reach(n, 0);
    for (const auto& pos : b.positions)
      for (int j = 0; j < n; ++j)
        if (pos[j] <= pos[i]) reach[j] = 1;
    const double support = static_cast<double>(std::count(reach.begin(), reach.end(), 1));
    for (int j = 0; j < n; ++j) p(i, j) = reach[j] ? 1.0 / support : 0.0;
  }
  return TransitionMatrix(std::move(p));
}

inline TransitionMatrix chain_case2(const Ballots& b) {
  const int n = b.size();
  std::vector<SquareMatrix<double>> per_vote;
  for (int l = 0; l < b.voters(); ++l) {
    SquareMatrix<double> q(n, 0.0);
    for (int i = 0; i < n; ++i) {
      const double prefix = b.above(l, i) + 1.0;
      for (int j = 0; j < n; ++j)
        if (b.positions[l][j] <= b.positions[l][i]) q(i, j) = 1.0 / prefix;
    }
    per_vote.push_back(std::move(q));
  }
  return average_rows(per_vote);
}

inline TransitionMatrix chain_case3(const Ballots& b) {
  const int n = b.size();
  std::vector<SquareMatrix<double>> per_vote;
  for (int l = 0; l < b.voters(); ++l) {
    SquareMatrix<double> q(n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        if (b.positions[l][j] < b.positions[l][i]) q(i, j) = 1.0 / n;
      q(i, i) = 1.0 - static_cast<double>(b.above(l, i)) / n;
    }
    per_vote.push_back(std::move(q));
  }
  return average_rows(per_vote);
}

/// beta over the candidates of one ballot, positions taken from `pos`.
inline SquareMatrix<double> beta_from_positions(std::span<const Rank> pos, const WeightVector& w) {
  const int n = static_cast<int>(pos.size());
  SquareMatrix<double> beta(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const Rank ri = pos[i];
    // best[r] = max over l in [r, ri) of w(l:ri) / (ri - l)
    std::vector<double> best(static_cast<std::size_t>(ri), 0.0);
    double run = 0.0;
    double running_max = 0.0;
    for (Rank l = ri - 1; l >= 1; --l) {
      run += w(l);
      running_max = std::max(running_max, run / (ri - l));
      best[l] = running_max;
    }
    for (int j = 0; j < n; ++j)
      if (pos[j] < ri) beta(i, j) = best[pos[j]];
  }
  for (int i = 0; i < n; ++i) {
    double self = 0.0;
    for (int k = 0; k < n; ++k)
      if (pos[k] > pos[i]) self += beta(k, i);
    beta(i, i) = self;
  }
  return beta;
}

inline TransitionMatrix chain_weighted(const Ballots& b, const WeightVector& w) {
  const int n = b.size();
  std::vector<SquareMatrix<double>> per_vote;
  for (const auto& pos : b.positions) {
    SquareMatrix<double> q = beta_from_positions(pos, w);
    for (int i = 0; i < n; ++i) {
      double sum = 0.0;
      for (double x : q.row(i)) sum += x;
      if (sum > 0.0) {
        for (double& x : q.row(i)) x /= sum;
      } else {
        q(i, i) = 1.0;
      }
    }
    per_vote.push_back(std::move(q));
  }
  return average_rows(per_vote);
}

inline TransitionMatrix build_chain(const Ballots& b, ChainKind kind, const WeightVector& w) {
  switch (kind) {
    case ChainKind::case1: return chain_case1(b);
    case ChainKind::case2: return chain_case2(b);
    case ChainKind::case3: return chain_case3(b);
    case ChainKind::weighted: return chain_weighted(b, w);
  }
  throw Error(ErrorCode::invalid_weights, "unknown chain kind");
}

}  // namespace detail

inline TransitionMatrix transitions_case1(const VoteProfile& profile) {
  return detail::chain_case1(detail::Ballots::from(profile));
}

inline TransitionMatrix transitions_case2(const VoteProfile& profile) {
  return detail::chain_case2(detail::Ballots::from(profile));
}

inline TransitionMatrix transitions_case3(const VoteProfile& profile) {
  return detail::chain_case3(detail::Ballots::from(profile));
}

/// beta(i, j) for one vote (0-based candidates). Off-diagonal entries are
/// the largest average weight of a run of adjacent ranks ending at i's rank
/// and starting at or below j's; beta(i, i) collects the entries of all
/// candidates ranked below i that point at i.
inline SquareMatrix<double> beta_matrix(const Ranking& vote, const WeightVector& w) {
  require_weights_for(w, vote.size());
  return detail::beta_from_positions(vote.pos(), w);
}

inline TransitionMatrix transitions_weighted(const VoteProfile& profile, const WeightVector& w) {
  require_weights_for(w, profile.candidates());
  return detail::chain_weighted(detail::Ballots::from(profile), w);
}

/// Ranks candidates by the stationary distribution of the selected chain.
///
/// Candidates whose averaged self-transition is 1 are absorbing: they are
/// placed first (ordered by mean rank, then id), removed from every vote,
/// and the chain is rebuilt on the remaining candidates, which keep their
/// original rank positions. The rest are ordered by descending probability,
/// ties by ascending id. `w` drives the weighted chain and the reported
/// objective.
inline AggregationResult mc_aggregate(const VoteProfile& profile, const WeightVector& w,
                                      ChainKind kind = ChainKind::weighted, int exact_cap = kDefaultExactCap) {
  require_weights_for(w, profile.candidates());
  AggregationResult result;
  result.method = to_string(kind);

  std::vector<Candidate> order;
  detail::Ballots ballots = detail::Ballots::from(profile);
  while (ballots.size() > 0) {
    const TransitionMatrix p = detail::build_chain(ballots, kind, w);
    ChainRound round{ballots.candidates, stationary(p), {}};

    std::vector<int> absorbing;
    for (int i = 0; i < ballots.size(); ++i)
      if (p(i, i) >= 1.0 - kRowSumTolerance) absorbing.push_back(i);

    if (absorbing.empty()) {
      std::vector<int> idx(ballots.size());
      std::iota(idx.begin(), idx.end(), 0);
      // Probabilities equal up to rounding count as ties.
      auto key = [&](int t) { return std::llround(round.stationary[t] * 1e12); };
      std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return key(a) > key(b); });
      for (int t : idx) order.push_back(ballots.candidates[t]);
      result.diagnostics.chain_rounds.push_back(std::move(round));
      break;
    }

    std::vector<double> rank_sum(ballots.size(), 0.0);
    for (int l = 0; l < ballots.voters(); ++l)
      for (int t : absorbing) rank_sum[t] += ballots.above(l, t);
    std::stable_sort(absorbing.begin(), absorbing.end(), [&](int a, int b) { return rank_sum[a] < rank_sum[b]; });
    for (int t : absorbing) {
      order.push_back(ballots.candidates[t]);
      round.absorbing.push_back(ballots.candidates[t]);
    }
    result.diagnostics.chain_rounds.push_back(std::move(round));
    ballots = ballots.without(absorbing);
  }

  result.ranking = Ranking(std::move(order));
  detail::fill_objective(result, profile, Metric::weighted_kendall(w, exact_cap));
  return result;
}

}  // namespace rankagg
