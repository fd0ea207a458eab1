#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rankagg {

/// Dense row-major n x n matrix, indexed 0-based.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n, T fill = T{})
      : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}

  int size() const noexcept { return n_; }

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

  std::span<T> row(int i) { return {data_.data() + index(i, 0), static_cast<std::size_t>(n_)}; }
  std::span<const T> row(int i) const {
    return {data_.data() + index(i, 0), static_cast<std::size_t>(n_)};
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<T> data_;
};

}  // namespace rankagg
