#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "rankagg/distance.hpp"
#include "rankagg/error.hpp"
#include "rankagg/ranking.hpp"
#include "rankagg/result.hpp"

namespace rankagg {

namespace detail {

inline bool clearly_less(double value, double incumbent) {
  if (std::isinf(incumbent)) return value < incumbent;
  return value < incumbent - 1e-12 * std::max(1.0, std::abs(incumbent));
}

}  // namespace detail

/// Largest n for which the exhaustive median search is attempted.
inline constexpr int kDefaultOptCap = 8;

/// Global minimizer of the cumulative distance over all n! rankings.
/// Ties go to the lexicographically smallest ranking.
inline AggregationResult exhaustive_opt(const VoteProfile& profile, const Metric& metric,
                                        int opt_cap = kDefaultOptCap) {
  const int n = profile.candidates();
  if (n > opt_cap) {
    throw Error(ErrorCode::size_cap_exceeded,
                "exhaustive search unavailable at this size (n=" + std::to_string(n) + " exceeds cap " +
                    std::to_string(opt_cap) + ")");
  }
  if (!metric.evaluable()) {
    throw Error(ErrorCode::size_cap_exceeded, "exhaustive search needs an evaluable metric");
  }
  AggregationResult result;
  result.method = "opt";
  double best = kInfinity;
  for_each_ranking(n, [&](const Ranking& candidate) {
    const double value = cumulative_objective(candidate, profile, metric).cumulative;
    // Enumeration is lexicographic, so only a clear improvement replaces the incumbent.
    if (detail::clearly_less(value, best)) {
      best = value;
      result.ranking = candidate;
    }
  });
  detail::fill_objective(result, profile, metric);
  return result;
}

/// The input vote closest to the rest of the profile (earliest on ties).
inline AggregationResult best_input_vote(const VoteProfile& profile, const Metric& metric) {
  const Metric eval = metric.evaluable_or_surrogate();
  AggregationResult result;
  result.method = "best-input";
  double best = kInfinity;
  for (const Ranking& vote : profile.votes()) {
    const double value = cumulative_objective(vote, profile, eval).cumulative;
    if (detail::clearly_less(value, best)) {
      best = value;
      result.ranking = vote;
    }
  }
  detail::fill_objective(result, profile, metric);
  return result;
}

namespace detail {

inline Ranking order_by_score(const std::vector<long long>& score) {
  std::vector<Candidate> seq(score.size());
  std::iota(seq.begin(), seq.end(), 1);
  std::stable_sort(seq.begin(), seq.end(), [&](Candidate a, Candidate b) { return score[a - 1] > score[b - 1]; });
  return Ranking(std::move(seq));
}

}  // namespace detail

/// Candidates by number of first-place votes, ties by id.
inline Ranking plurality(const VoteProfile& profile) {
  std::vector<long long> firsts(static_cast<std::size_t>(profile.candidates()), 0);
  for (const Ranking& vote : profile.votes()) ++firsts[vote.at(1) - 1];
  return detail::order_by_score(firsts);
}

/// Candidates by Borda score sum(n - rank), ties by id.
inline Ranking borda(const VoteProfile& profile) {
  const int n = profile.candidates();
  std::vector<long long> score(static_cast<std::size_t>(n), 0);
  for (const Ranking& vote : profile.votes())
    for (Candidate c = 1; c <= n; ++c) score[c - 1] += n - vote.rank_of(c);
  return detail::order_by_score(score);
}

/// Wraps a plain ranking rule so it reports the same objective fields as
/// the optimizing methods.
inline AggregationResult scored(std::string method, Ranking ranking, const VoteProfile& profile,
                                const Metric& metric) {
  AggregationResult result;
  result.method = std::move(method);
  result.ranking = std::move(ranking);
  detail::fill_objective(result, profile, metric);
  return result;
}

}  // namespace rankagg
