// Copyright 2026 The stricteq Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STRICTEQ_MATRIX_HPP_
#define STRICTEQ_MATRIX_HPP_

#include <cassert>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "stricteq/scalar.hpp"

namespace stricteq {

/// Small dense row-major matrix. Auction instances are desk scale, so
/// no sparsity or blocking; clarity over throughput.
template <typename N>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols)
      : rows_(rows), cols_(cols),
        data_(static_cast<size_t>(rows) * cols, scalar_traits<N>::zero()) {}

  static Mat from_rows(const std::vector<std::vector<N>>& rows) {
    if (rows.empty()) return Mat(0, 0);
    Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows_; ++i) {
      if (static_cast<int>(rows[i].size()) != m.cols_) {
        throw std::invalid_argument("ragged matrix rows");
      }
      for (int j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  N& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<size_t>(i) * cols_ + j];
  }
  const N& operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  std::vector<N> row(int i) const {
    std::vector<N> out(cols_);
    for (int j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
    return out;
  }

  /// Matrix-vector product A x.
  std::vector<N> apply(const std::vector<N>& x) const {
    assert(static_cast<int>(x.size()) == cols_);
    std::vector<N> out(rows_, scalar_traits<N>::zero());
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * x[j];
    }
    return out;
  }

  /// Transposed product A^T y.
  std::vector<N> apply_transposed(const std::vector<N>& y) const {
    assert(static_cast<int>(y.size()) == rows_);
    std::vector<N> out(cols_, scalar_traits<N>::zero());
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) out[j] += (*this)(i, j) * y[i];
    }
    return out;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_, cols_;
  std::vector<N> data_;
};

template <typename N>
N dot(const std::vector<N>& a, const std::vector<N>& b) {
  assert(a.size() == b.size());
  N s = scalar_traits<N>::zero();
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace stricteq

#endif  // STRICTEQ_MATRIX_HPP_
