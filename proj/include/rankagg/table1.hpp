#pragma once

#include <array>
#include <string_view>

#include "rankagg/io.hpp"
#include "rankagg/ranking.hpp"
#include "rankagg/weights.hpp"

namespace rankagg::table1 {

/// Eleven votes over five candidates, matrix layout: line r holds the
/// candidates at rank r, one column per vote.
inline constexpr std::string_view kVoteMatrix =
    "1 1 1 2 2 3 3 4 4 5 5\n"
    "2 2 2 3 3 2 2 2 2 2 2\n"
    "3 3 3 4 4 4 4 5 5 3 3\n"
    "4 4 4 5 5 5 5 3 3 4 4\n"
    "5 5 5 1 1 1 1 1 1 1 1\n";

inline VoteProfile profile() { return parse_votes(kVoteMatrix, VoteLayout::matrix); }

/// One column of the published comparison: a weight vector and the average
/// distance reported for each method.
struct Column {
  std::array<double, 4> weights;
  double opt;
  double bmls;
  double mc;
};

inline constexpr std::array<Column, 4> kColumns{{
    {{1, 0, 0, 0}, 0.7273, 0.7273, 0.7273},
    {{1, 1, 1, 1}, 2.3636, 2.3636, 2.3636},
    {{1, 1, 0, 0}, 1.455, 1.455, 1.546},
    {{0, 1, 0, 0}, 0.636, 0.636, 0.636},
}};

/// Tolerance on the printed averages.
inline constexpr double kAverageTolerance = 5e-4;

inline WeightVector weights(const Column& column) {
  return WeightVector(std::vector<double>(column.weights.begin(), column.weights.end()));
}

}  // namespace rankagg::table1
