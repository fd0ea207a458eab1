#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankagg/error.hpp"
#include "rankagg/matrix.hpp"
#include "rankagg/ranking.hpp"

namespace rankagg {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Adjacent-transposition weights w_1..w_{n-1}; w(k) is the cost of
/// exchanging ranks k and k+1.
class WeightVector {
 public:
  WeightVector() = default;

  explicit WeightVector(std::vector<double> w) : w_(std::move(w)) {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      if (!std::isfinite(w_[k]) || w_[k] < 0.0) {
        throw Error(ErrorCode::invalid_weights,
                    "weight w_" + std::to_string(k + 1) + " must be finite and non-negative");
      }
    }
  }

  WeightVector(std::initializer_list<double> w) : WeightVector(std::vector<double>(w)) {}

  /// Number of candidates the vector applies to.
  int candidates() const noexcept { return static_cast<int>(w_.size()) + 1; }

  /// 1-based: weight of swapping ranks k and k+1.
  double operator()(Rank k) const { return w_.at(static_cast<std::size_t>(k - 1)); }

  std::span<const double> values() const noexcept { return w_; }

  bool strictly_positive() const {
    return std::all_of(w_.begin(), w_.end(), [](double x) { return x > 0.0; });
  }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<double> w_;
};

inline void require_weights_for(const WeightVector& w, int n) {
  if (w.candidates() != n) {
    throw Error(ErrorCode::dimension_mismatch,
                "weight vector has " + std::to_string(w.values().size()) + " entries, expected " +
                    std::to_string(n - 1));
  }
}

/// Sum of w_h for h in [k, l).
inline double prefix_weight(const WeightVector& w, Rank k, Rank l) {
  if (k >= l) throw Error(ErrorCode::out_of_range, "prefix_weight requires k < l");
  if (k < 1 || l > w.candidates()) throw Error(ErrorCode::out_of_range, "prefix_weight range outside 1..n");
  double sum = 0.0;
  for (Rank h = k; h < l; ++h) sum += w(h);
  return sum;
}

/// Symmetric weights phi(a, b) for transposing ranks a and b. Entries may be
/// +infinity, meaning the transposition is not allowed.
class TranspositionWeights {
 public:
  TranspositionWeights() = default;

  explicit TranspositionWeights(int n) : phi_(n, kInfinity) {
    if (n < 1) throw Error(ErrorCode::invalid_size, "transposition weights need n >= 1");
    for (int i = 0; i < n; ++i) phi_(i, i) = 0.0;
  }

  /// Builds from a full matrix (0-based rows); the diagonal is ignored.
  explicit TranspositionWeights(const SquareMatrix<double>& phi) : TranspositionWeights(phi.size()) {
    for (int a = 1; a <= size(); ++a) {
      for (int b = a + 1; b <= size(); ++b) {
        if (phi(a - 1, b - 1) != phi(b - 1, a - 1)) {
          throw Error(ErrorCode::invalid_weights, "transposition weights must be symmetric");
        }
        set(a, b, phi(a - 1, b - 1));
      }
    }
  }

  int size() const noexcept { return phi_.size(); }

  double operator()(Rank a, Rank b) const { return phi_(a - 1, b - 1); }

  void set(Rank a, Rank b, double weight) {
    if (a == b || a < 1 || b < 1 || a > size() || b > size()) {
      throw Error(ErrorCode::out_of_range, "transposition (" + std::to_string(a) + " " +
                                               std::to_string(b) + ") invalid");
    }
    if (std::isnan(weight) || weight < 0.0) {
      throw Error(ErrorCode::invalid_weights, "transposition weights must be non-negative");
    }
    phi_(a - 1, b - 1) = weight;
    phi_(b - 1, a - 1) = weight;
  }

  /// Weighted Kendall: adjacent entries from w, everything else infinite.
  static TranspositionWeights from_adjacent(const WeightVector& w) {
    TranspositionWeights phi(w.candidates());
    for (Rank k = 1; k < w.candidates(); ++k) phi.set(k, k + 1, w(k));
    return phi;
  }

  /// Cayley: every transposition costs 1.
  static TranspositionWeights uniform(int n) {
    TranspositionWeights phi(n);
    for (Rank a = 1; a <= n; ++a)
      for (Rank b = a + 1; b <= n; ++b) phi.set(a, b, 1.0);
    return phi;
  }

  /// Footrule: phi(a, b) = |a - b|.
  static TranspositionWeights footrule(int n) {
    TranspositionWeights phi(n);
    for (Rank a = 1; a <= n; ++a)
      for (Rank b = a + 1; b <= n; ++b) phi.set(a, b, static_cast<double>(b - a));
    return phi;
  }

 private:
  SquareMatrix<double> phi_;
};

/// Shortest-path weights f(i, j) between rank positions.
class PathTable {
 public:
  PathTable() = default;
  explicit PathTable(SquareMatrix<double> f) : f_(std::move(f)) {}

  int size() const noexcept { return f_.size(); }
  double operator()(Rank i, Rank j) const { return f_(i - 1, j - 1); }

  bool finite() const {
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (!std::isfinite(f_(i, j))) return false;
    return true;
  }

  const SquareMatrix<double>& matrix() const noexcept { return f_; }

 private:
  SquareMatrix<double> f_;
};

inline PathTable path_table_from_adjacent(const WeightVector& w) {
  const int n = w.candidates();
  SquareMatrix<double> f(n, 0.0);
  for (int i = 1; i <= n; ++i) {
    double run = 0.0;
    for (int j = i + 1; j <= n; ++j) {
      run += w(j - 1);
      f(i - 1, j - 1) = run;
      f(j - 1, i - 1) = run;
    }
  }
  return PathTable(std::move(f));
}

/// All-pairs shortest paths over the complete graph on positions with edge
/// weights phi (Floyd-Warshall). Unreachable pairs stay infinite.
inline PathTable path_table_general(const TranspositionWeights& phi) {
  const int n = phi.size();
  SquareMatrix<double> f(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f(i, j) = i == j ? 0.0 : phi(i + 1, j + 1);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (f(i, k) + f(k, j) < f(i, j)) f(i, j) = f(i, k) + f(k, j);
  return PathTable(std::move(f));
}

}  // namespace rankagg
