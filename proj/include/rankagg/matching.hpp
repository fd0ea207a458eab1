#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rankagg/distance.hpp"
#include "rankagg/error.hpp"
#include "rankagg/matrix.hpp"
#include "rankagg/ranking.hpp"
#include "rankagg/result.hpp"
#include "rankagg/weights.hpp"

namespace rankagg {

/// C(i, j): cost of placing candidate j at rank i (both 1-based).
class CostMatrix {
 public:
  explicit CostMatrix(SquareMatrix<double> c) : c_(std::move(c)) {
    if (c_.size() < 1) throw Error(ErrorCode::invalid_size, "cost matrix must be non-empty");
    for (int i = 0; i < c_.size(); ++i) {
      for (int j = 0; j < c_.size(); ++j) {
        if (!std::isfinite(c_(i, j))) throw Error(ErrorCode::infinite_cost, "assignment costs must be finite");
        if (c_(i, j) < 0.0) throw Error(ErrorCode::invalid_weights, "assignment costs must be non-negative");
      }
    }
  }

  /// Builds from nested rows; rejects ragged input.
  static CostMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    SquareMatrix<double> c(n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n) {
        throw Error(ErrorCode::dimension_mismatch, "cost matrix must be square");
      }
      for (int j = 0; j < n; ++j) c(i, j) = rows[i][j];
    }
    return CostMatrix(std::move(c));
  }

  int size() const noexcept { return c_.size(); }
  double operator()(Rank i, Candidate j) const { return c_(i - 1, j - 1); }
  const SquareMatrix<double>& matrix() const noexcept { return c_; }

  double cost_of(const Ranking& r) const {
    double total = 0.0;
    for (Rank i = 1; i <= r.size(); ++i) total += (*this)(i, r.at(i));
    return total;
  }

 private:
  SquareMatrix<double> c_;
};

inline CostMatrix build_cost_matrix(const VoteProfile& profile, const PathTable& f) {
  const int n = profile.candidates();
  if (f.size() != n) throw Error(ErrorCode::dimension_mismatch, "path table size differs from profile size");
  if (!f.finite()) throw Error(ErrorCode::infinite_cost, "path table has unreachable positions; matching undefined");
  SquareMatrix<double> c(n, 0.0);
  for (const Ranking& vote : profile.votes())
    for (Rank i = 1; i <= n; ++i)
      for (Candidate j = 1; j <= n; ++j) c(i - 1, j - 1) += f(i, vote.rank_of(j));
  return CostMatrix(std::move(c));
}

namespace detail {

/// Shortest augmenting path assignment with row/column potentials, O(n^3).
/// `rows` and `cols` select the submatrix; returns the optimal total and
/// fills assignment[r] = index into cols for each selected row r.
inline double hungarian(const SquareMatrix<double>& c, const std::vector<int>& rows,
                        const std::vector<int>& cols, std::vector<int>* assignment = nullptr) {
  const int n = static_cast<int>(rows.size());
  if (n == 0) return 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = c(rows[i0 - 1], cols[j - 1]) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  double total = 0.0;
  std::vector<int> row_to_col(n);
  for (int j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
  for (int r = 0; r < n; ++r) total += c(rows[r], cols[row_to_col[r]]);
  if (assignment) *assignment = std::move(row_to_col);
  return total;
}

inline bool same_cost(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace detail

/// Minimum-cost perfect matching of ranks to candidates.
///
/// Among optimal assignments the lexicographically smallest ranking is
/// returned: ranks are fixed in order, each to the smallest candidate that
/// still admits an optimal completion.
inline Ranking min_cost_assignment(const CostMatrix& cost) {
  const int n = cost.size();
  const auto& c = cost.matrix();
  std::vector<int> rows(n), cols(n);
  for (int k = 0; k < n; ++k) rows[k] = cols[k] = k;
  const double optimum = detail::hungarian(c, rows, cols);

  std::vector<Candidate> seq;
  seq.reserve(n);
  double fixed_cost = 0.0;
  for (int i = 0; i < n; ++i) {
    std::vector<int> rest_rows(rows.begin() + i + 1, rows.end());
    bool placed = false;
    for (std::size_t t = 0; t < cols.size(); ++t) {
      std::vector<int> rest_cols;
      for (std::size_t s = 0; s < cols.size(); ++s)
        if (s != t) rest_cols.push_back(cols[s]);
      const double total = fixed_cost + c(i, cols[t]) + detail::hungarian(c, rest_rows, rest_cols);
      if (detail::same_cost(total, optimum)) {
        fixed_cost += c(i, cols[t]);
        seq.push_back(cols[t] + 1);
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(t));
        placed = true;
        break;
      }
    }
    if (!placed) {
      // Rounding pushed every completion past the tolerance; take the solver's choice.
      std::vector<int> assignment;
      detail::hungarian(c, std::vector<int>(rows.begin() + i, rows.end()), cols, &assignment);
      for (int r : assignment) seq.push_back(cols[r] + 1);
      break;
    }
  }
  return Ranking(std::move(seq));
}

namespace detail {

/// Matching on the path table of `metric`, scored with `metric`.
inline AggregationResult aggregate_matching(const VoteProfile& profile, const Metric& metric) {
  if (metric.space() != Space::ranks) {
    throw Error(ErrorCode::invalid_weights, "matching aggregation works on rank-indexed weights");
  }
  AggregationResult result;
  result.method = "matching";
  result.ranking = min_cost_assignment(build_cost_matrix(profile, metric.path_table()));
  fill_objective(result, profile, metric);
  return result;
}

}  // namespace detail

/// Minimizer of the cumulative generalized footrule D over adjacent weights.
/// The reported objective is the exact weighted Kendall distance when n is
/// within the exact cap, else D (flagged as a bound).
inline AggregationResult aggregate_matching(const VoteProfile& profile, const WeightVector& w,
                                            int exact_cap = kDefaultExactCap) {
  require_weights_for(w, profile.candidates());
  return detail::aggregate_matching(profile, Metric::weighted_kendall(w, exact_cap));
}

inline AggregationResult aggregate_matching(const VoteProfile& profile, const TranspositionWeights& phi,
                                            int exact_cap = kDefaultExactCap) {
  if (phi.size() != profile.candidates()) {
    throw Error(ErrorCode::dimension_mismatch, "transposition weights size differs from profile size");
  }
  return detail::aggregate_matching(profile, Metric::weighted_transposition(phi, exact_cap));
}

/// Greedy adjacent-swap descent from `start`.
///
/// Each step scores all n-1 adjacent swaps and moves to the best one that
/// strictly lowers the cumulative objective (lowest swap index on ties).
/// Stops when no swap improves. Metrics above the exact cap are replaced by
/// their generalized-footrule surrogate.
inline AggregationResult local_descent(const VoteProfile& profile, const Metric& metric, Ranking start) {
  const Metric eval = metric.evaluable_or_surrogate();
  const int n = profile.candidates();
  if (start.size() != n) throw Error(ErrorCode::dimension_mismatch, "start ranking size differs from profile size");

  auto objective = [&](const Ranking& r) { return cumulative_objective(r, profile, eval).cumulative; };
  auto improves = [](double candidate, double current) {
    return candidate < current - 1e-12 * std::max(1.0, std::abs(current));
  };

  AggregationResult result;
  result.method = "bmls";
  Ranking current = std::move(start);
  double current_value = objective(current);
  result.diagnostics.objective_trace.push_back(current_value);
  for (;;) {
    std::optional<Rank> best_swap;
    double best_value = current_value;
    for (Rank k = 1; k < n; ++k) {
      const double value = objective(swap_adjacent(current, k));
      if (improves(value, best_value)) {
        best_value = value;
        best_swap = k;
      }
    }
    if (!best_swap) break;
    current = swap_adjacent(current, *best_swap);
    current_value = best_value;
    result.diagnostics.swaps.push_back(*best_swap);
    result.diagnostics.objective_trace.push_back(current_value);
  }
  result.ranking = std::move(current);
  detail::fill_objective(result, profile, metric);
  return result;
}

/// Bipartite matching followed by local descent (BMLS). Without an explicit
/// start the matching aggregate is used.
inline AggregationResult bmls(const VoteProfile& profile, const WeightVector& w,
                              std::optional<Ranking> start = std::nullopt, int exact_cap = kDefaultExactCap) {
  require_weights_for(w, profile.candidates());
  const Metric metric = Metric::weighted_kendall(w, exact_cap);
  if (!start) start = detail::aggregate_matching(profile, metric).ranking;
  return local_descent(profile, metric, std::move(*start));
}

}  // namespace rankagg
