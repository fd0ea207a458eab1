#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankagg/error.hpp"

namespace rankagg {

// Candidates and ranks are both 1-based: rank 1 is the best position.
using Candidate = int;
using Rank = int;

/// A complete ranking of n candidates.
///
/// Stores the rank -> candidate sequence together with its inverse
/// (candidate -> rank), so both directions are O(1). Construction validates
/// the permutation property; instances are immutable afterwards.
class Ranking {
 public:
  Ranking() = default;

  explicit Ranking(std::vector<Candidate> seq) : seq_(std::move(seq)) {
    const auto n = static_cast<int>(seq_.size());
    if (n == 0) throw Error(ErrorCode::invalid_size, "ranking must contain at least one candidate");
    pos_.assign(seq_.size(), 0);
    for (int k = 0; k < n; ++k) {
      const Candidate c = seq_[k];
      if (c < 1 || c > n) {
        throw Error(ErrorCode::invalid_permutation,
                    "candidate " + std::to_string(c) + " outside 1.." + std::to_string(n));
      }
      if (pos_[c - 1] != 0) {
        throw Error(ErrorCode::invalid_permutation,
                    "duplicate candidate " + std::to_string(c));
      }
      pos_[c - 1] = k + 1;
    }
  }

  Ranking(std::initializer_list<Candidate> seq) : Ranking(std::vector<Candidate>(seq)) {}

  int size() const noexcept { return static_cast<int>(seq_.size()); }

  /// Candidate placed at rank k.
  Candidate at(Rank k) const {
    if (k < 1 || k > size()) throw Error(ErrorCode::out_of_range, "rank " + std::to_string(k) + " out of range");
    return seq_[k - 1];
  }

  /// Rank held by candidate c.
  Rank rank_of(Candidate c) const {
    if (c < 1 || c > size()) {
      throw Error(ErrorCode::unknown_candidate, "unknown candidate " + std::to_string(c));
    }
    return pos_[c - 1];
  }

  std::span<const Candidate> seq() const noexcept { return seq_; }
  std::span<const Rank> pos() const noexcept { return pos_; }

  friend bool operator==(const Ranking& a, const Ranking& b) { return a.seq_ == b.seq_; }
  friend bool operator<(const Ranking& a, const Ranking& b) { return a.seq_ < b.seq_; }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t k = 0; k < seq_.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(seq_[k]);
    }
    return out + "]";
  }

 private:
  std::vector<Candidate> seq_;
  std::vector<Rank> pos_;
};

inline Ranking identity(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_size, "identity requires n >= 1");
  std::vector<Candidate> seq(static_cast<std::size_t>(n));
  std::iota(seq.begin(), seq.end(), 1);
  return Ranking(std::move(seq));
}

inline Ranking invert(const Ranking& r) {
  return Ranking(std::vector<Candidate>(r.pos().begin(), r.pos().end()));
}

/// Exchanges the candidates at ranks k and k+1 (right composition with the
/// adjacent transposition (k k+1)).
inline Ranking swap_adjacent(const Ranking& r, Rank k) {
  if (k < 1 || k >= r.size()) {
    throw Error(ErrorCode::out_of_range, "adjacent swap index " + std::to_string(k) +
                                             " outside 1.." + std::to_string(r.size() - 1));
  }
  std::vector<Candidate> seq(r.seq().begin(), r.seq().end());
  std::swap(seq[k - 1], seq[k]);
  return Ranking(std::move(seq));
}

inline bool ranks_before(const Ranking& r, Candidate a, Candidate b) {
  return r.rank_of(a) < r.rank_of(b);
}

inline void require_same_size(const Ranking& a, const Ranking& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::dimension_mismatch, "rankings of different sizes (" +
                                                   std::to_string(a.size()) + " vs " +
                                                   std::to_string(b.size()) + ")");
  }
}

/// Function composition (outer after inner): result.at(k) = outer.at(inner.at(k)).
inline Ranking compose(const Ranking& outer, const Ranking& inner) {
  require_same_size(outer, inner);
  std::vector<Candidate> seq(static_cast<std::size_t>(inner.size()));
  for (int k = 0; k < inner.size(); ++k) seq[k] = outer.seq()[inner.seq()[k] - 1];
  return Ranking(std::move(seq));
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

/// Lexicographic index of a permutation sequence in [0, n!).
inline std::uint64_t permutation_index(std::span<const Candidate> seq) {
  const auto n = static_cast<int>(seq.size());
  std::uint64_t index = 0;
  std::uint32_t used = 0;  // bit c-1 set once candidate c is consumed
  for (int k = 0; k < n; ++k) {
    const int c = seq[k] - 1;
    const int smaller_unused = c - __builtin_popcount(used & ((1u << c) - 1u));
    index = index * static_cast<std::uint64_t>(n - k) + static_cast<std::uint64_t>(smaller_unused);
    used |= 1u << c;
  }
  return index;
}

/// Inverse of permutation_index, writing into a caller-provided buffer.
inline void permutation_from_index(std::uint64_t index, std::span<Candidate> out) {
  const auto n = static_cast<int>(out.size());
  std::vector<int> digits(out.size());
  for (int k = n - 1; k >= 0; --k) {
    const auto base = static_cast<std::uint64_t>(n - k);
    digits[k] = static_cast<int>(index % base);
    index /= base;
  }
  std::uint32_t used = 0;
  for (int k = 0; k < n; ++k) {
    int skip = digits[k];
    int c = 0;
    for (;; ++c) {
      if (used & (1u << c)) continue;
      if (skip-- == 0) break;
    }
    used |= 1u << c;
    out[k] = c + 1;
  }
}

inline Ranking ranking_from_index(int n, std::uint64_t index) {
  std::vector<Candidate> seq(static_cast<std::size_t>(n));
  permutation_from_index(index, seq);
  return Ranking(std::move(seq));
}

/// Calls fn(const Ranking&) for every ranking of n candidates, in
/// lexicographic order.
template <class Fn>
void for_each_ranking(int n, Fn&& fn) {
  std::vector<Candidate> seq(static_cast<std::size_t>(n));
  std::iota(seq.begin(), seq.end(), 1);
  do {
    fn(Ranking(seq));
  } while (std::next_permutation(seq.begin(), seq.end()));
}

/// The vote set: m complete rankings over the same n candidates.
class VoteProfile {
 public:
  explicit VoteProfile(std::vector<Ranking> votes) : votes_(std::move(votes)) {
    if (votes_.empty()) throw Error(ErrorCode::invalid_size, "profile needs at least one vote");
    n_ = votes_.front().size();
    for (std::size_t l = 0; l < votes_.size(); ++l) {
      if (votes_[l].size() != n_) {
        throw Error(ErrorCode::dimension_mismatch,
                    "vote " + std::to_string(l + 1) + " ranks " + std::to_string(votes_[l].size()) +
                        " candidates, expected " + std::to_string(n_));
      }
    }
  }

  int candidates() const noexcept { return n_; }
  int voters() const noexcept { return static_cast<int>(votes_.size()); }
  std::span<const Ranking> votes() const noexcept { return votes_; }
  const Ranking& vote(std::size_t l) const { return votes_.at(l); }

  friend bool operator==(const VoteProfile& a, const VoteProfile& b) { return a.votes_ == b.votes_; }

 private:
  int n_ = 0;
  std::vector<Ranking> votes_;
};

}  // namespace rankagg
