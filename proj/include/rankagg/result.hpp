#pragma once

#include <string>
#include <vector>

#include "rankagg/distance.hpp"
#include "rankagg/ranking.hpp"

namespace rankagg {

/// One Markov-chain solve: the candidates still in play, their stationary
/// probabilities (same order), and any candidates found absorbing.
struct ChainRound {
  std::vector<Candidate> candidates;
  std::vector<double> stationary;
  std::vector<Candidate> absorbing;
};

struct Diagnostics {
  // Local descent: objective after each accepted step, starting value first.
  std::vector<double> objective_trace;
  std::vector<Rank> swaps;
  std::vector<ChainRound> chain_rounds;
  // Set when the objective is the generalized footrule bound instead of d.
  bool surrogate_objective = false;
  std::string objective_metric;
  std::string note;
};

struct AggregationResult {
  std::string method;
  Ranking ranking;
  double cumulative = 0.0;
  double average = 0.0;
  bool exact = true;
  Diagnostics diagnostics;
};

namespace detail {

inline void fill_objective(AggregationResult& result, const VoteProfile& profile, const Metric& metric) {
  const Metric eval = metric.evaluable_or_surrogate();
  const Objective obj = cumulative_objective(result.ranking, profile, eval);
  result.cumulative = obj.cumulative;
  result.average = obj.average;
  result.exact = obj.exact;
  result.diagnostics.surrogate_objective = !obj.exact;
  result.diagnostics.objective_metric = eval.name();
}

}  // namespace detail

}  // namespace rankagg
