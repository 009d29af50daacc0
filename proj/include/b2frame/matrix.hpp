// Copyright 2026 The b2frame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace b2frame {

/// Small dense row-major matrix over any commutative ring (scalars,
/// polynomials, complex numbers).
template <class R>
class SmallMatrix {
 public:
  SmallMatrix() = default;
  SmallMatrix(std::size_t rows, std::size_t cols, R fill = R{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  R& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Copy with row `r` and column `c` deleted.
  SmallMatrix minor_matrix(std::size_t r, std::size_t c) const {
    SmallMatrix out(rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, oi = 0; i < rows_; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0, oj = 0; j < cols_; ++j) {
        if (j == c) continue;
        out(oi, oj++) = (*this)(i, j);
      }
      ++oi;
    }
    return out;
  }

  SmallMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    SmallMatrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
    }
    return out;
  }

  template <class F>
  auto map(F&& f) const -> SmallMatrix<decltype(f(std::declval<const R&>()))> {
    SmallMatrix<decltype(f(std::declval<const R&>()))> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<R> data_;
};

/// Division-free determinant by Laplace expansion with memoized minors
/// (O(n 2^n) ring operations). Exact over any commutative ring, which is what
/// the polynomial-entry determinants need. `one` and `zero` are the ring
/// identities.
template <class R>
R laplace_determinant(const SmallMatrix<R>& m, const R& zero, const R& one) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return one;
  if (n > 20) throw std::invalid_argument("laplace_determinant: matrix too large");
  // dp[mask] = determinant of the minor on the last popcount(mask) rows and
  // the columns in mask.
  std::vector<R> dp(std::size_t{1} << n, zero);
  dp[0] = one;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const std::size_t k = static_cast<std::size_t>(__builtin_popcount(mask));
    const std::size_t row = n - k;
    R acc = zero;
    int pos = 0;  // position of column j among the columns in mask
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      const std::uint32_t rest = mask & ~(1u << j);
      R term = m(row, j) * dp[rest];
      if (pos % 2 == 0) {
        acc = acc + term;
      } else {
        acc = acc - term;
      }
      ++pos;
    }
    dp[mask] = acc;
  }
  return dp[(std::size_t{1} << n) - 1];
}

/// (-1)^(r+c) times the (r, c) minor.
template <class R>
R cofactor(const SmallMatrix<R>& m, std::size_t r, std::size_t c, const R& zero, const R& one) {
  R d = laplace_determinant(m.minor_matrix(r, c), zero, one);
  if ((r + c) % 2 == 1) return zero - d;
  return d;
}

}  // namespace b2frame
