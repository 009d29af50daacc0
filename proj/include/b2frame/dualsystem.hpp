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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "b2frame/lattice.hpp"
#include "b2frame/matrix.hpp"
#include "b2frame/regions.hpp"
#include "b2frame/splinecore.hpp"

namespace b2frame {

/// The (2m-1)x(2m-1) duality-condition matrix G_m on [-a/2, a/2].
///
/// Row i carries the frequency index l = m-1-i (descending), column j the
/// time index k = j-(m-1); entry (i, j) is x -> B2(x + l/b + k a). For m = 3
/// the first row is B2(x + 2/b - 2a), ..., B2(x + 2/b + 2a).
template <class T>
struct DualityMatrix {
  int m = 1;
  LatticeParams params;
  Interval<T> domain;
  SmallMatrix<PiecewisePoly<T>> entries;

  std::size_t size() const { return static_cast<std::size_t>(2 * m - 1); }
  std::size_t center() const { return static_cast<std::size_t>(m - 1); }
  int row_index(std::size_t i) const { return m - 1 - static_cast<int>(i); }
  int col_index(std::size_t j) const { return static_cast<int>(j) - (m - 1); }

  /// l/b + k a for entry (i, j).
  T offset(std::size_t i, std::size_t j) const {
    return T(row_index(i)) / params.b_as<T>() + T(col_index(j)) * params.a_as<T>();
  }

  /// Numeric matrix G_m(x).
  SmallMatrix<T> at(const T& x) const {
    SmallMatrix<T> out(size(), size());
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < size(); ++j) out(i, j) = entries(i, j)(x);
    }
    return out;
  }

  /// Entries restricted to [-a/2, 0], the half-interval all analysis uses.
  SmallMatrix<PiecewisePoly<T>> left_half() const {
    Interval<T> half{domain.lo, T(0)};
    return entries.map([&](const PiecewisePoly<T>& e) { return e.restrict(half); });
  }
};

template <class T>
DualityMatrix<T> build_G(int m, const LatticeParams& params) {
  if (m < 1) throw PreconditionError("build_G: m must be positive");
  const T a = params.a_as<T>();
  const T b = params.b_as<T>();
  if (!regions::in_strip(m, a, b)) {
    throw PreconditionError("build_G: (a, b) = (" + params.a_string() + ", " + params.b_string() +
                            ") violates the strip hypothesis for m = " + std::to_string(m));
  }
  DualityMatrix<T> g;
  g.m = m;
  g.params = params;
  g.domain = Interval<T>{-a / T(2), a / T(2)};
  g.entries = SmallMatrix<PiecewisePoly<T>>(g.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) g.entries(i, j) = shifted_b2_as_pp(g.offset(i, j), g.domain);
  }
  return g;
}

/// Union of all entry breakpoints (normalized to the entries' domain).
template <class T>
std::vector<T> common_breakpoints(const SmallMatrix<PiecewisePoly<T>>& entries) {
  std::vector<T> all;
  for (std::size_t i = 0; i < entries.rows(); ++i) {
    for (std::size_t j = 0; j < entries.cols(); ++j) {
      const auto& bp = entries(i, j).breakpoints();
      all.insert(all.end(), bp.begin(), bp.end());
    }
  }
  return normalize_breakpoints(std::move(all), entries(0, 0).domain());
}

/// Polynomial matrix valid on the piece of the common partition containing
/// `mid` (an interior point of that piece).
template <class T>
SmallMatrix<Polynomial<T>> polynomial_matrix_at(const SmallMatrix<PiecewisePoly<T>>& entries, const T& mid) {
  return entries.map([&](const PiecewisePoly<T>& e) { return e.piece(e.piece_index(mid)); });
}

// ---------------------------------------------------------------------------
// Sparsity structure of G_3 on [-a/2, 0].

enum class EntrySign { IdenticallyZero, StrictlyPositive, Mixed };

std::string to_string(EntrySign s);

struct SparsityViolation {
  int l = 0;  ///< row index l (entry is B2(x + l/b + k a))
  int k = 0;
  std::string rule;
  double witness_x = 0;
  double value = 0;
};

struct SparsityReport {
  SmallMatrix<EntrySign> classes;
  bool top_row_zeros = true;       ///< B2(x + 2/b + k a) = 0, k = 0, 1, 2
  bool bottom_row_zeros = true;    ///< B2(x - 2/b + k a) = 0, k = -2..1
  bool diagonal_positive = true;   ///< B2(x + k/b - k a) > 0, k = -2..2
  bool lambda3_checked = false;
  bool lambda3_zeros = true;       ///< extra zeros on Lambda3
  std::vector<SparsityViolation> violations;

  bool ok() const { return violations.empty(); }
};

namespace detail {

template <class T>
EntrySign classify_entry(const PiecewisePoly<T>& e, T* witness) {
  if (e.is_zero()) return EntrySign::IdenticallyZero;
  for (std::size_t p = 0; p < e.piece_count(); ++p) {
    const auto& poly = e.piece(p);
    const std::array<T, 3> probes{e.piece_lo(p), e.piece_hi(p), T((e.piece_lo(p) + e.piece_hi(p)) / T(2))};
    for (const T& x : probes) {
      if (!(poly(x) > T(0))) {
        if (witness) *witness = x;
        return EntrySign::Mixed;
      }
    }
  }
  return EntrySign::StrictlyPositive;
}

template <class T>
T nonzero_witness(const PiecewisePoly<T>& e) {
  for (std::size_t p = 0; p < e.piece_count(); ++p) {
    if (!e.piece(p).is_zero()) return (e.piece_lo(p) + e.piece_hi(p)) / T(2);
  }
  return e.domain().lo;
}

}  // namespace detail

/// Classifies every entry of G_3 on [-a/2, 0] and checks the zero/positivity
/// pattern that holds on Gamma3 and Lambda3.
template <class T>
SparsityReport check_sparsity(const DualityMatrix<T>& g) {
  if (g.m != 3) throw PreconditionError("check_sparsity: requires m = 3");
  const bool lambda = regions::in_lambda3(g.params);
  if (!regions::in_gamma3(g.params) && !lambda) {
    throw PreconditionError("check_sparsity: (a, b) must lie in Gamma3 or Lambda3");
  }
  SparsityReport rep;
  const auto half = g.left_half();
  rep.classes = SmallMatrix<EntrySign>(g.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) rep.classes(i, j) = detail::classify_entry<T>(half(i, j), nullptr);
  }
  auto idx = [&](int l, int k) {
    return std::pair<std::size_t, std::size_t>{static_cast<std::size_t>(g.m - 1 - l),
                                               static_cast<std::size_t>(k + g.m - 1)};
  };
  auto require_zero = [&](int l, int k, const char* rule, bool& flag) {
    auto [i, j] = idx(l, k);
    if (rep.classes(i, j) != EntrySign::IdenticallyZero) {
      flag = false;
      T w = detail::nonzero_witness(half(i, j));
      rep.violations.push_back({l, k, rule, to_double(w), to_double(half(i, j)(w))});
    }
  };
  for (int k : {0, 1, 2}) require_zero(2, k, "B2(x+2/b+ka)=0", rep.top_row_zeros);
  for (int k : {-2, -1, 0, 1}) require_zero(-2, k, "B2(x-2/b+ka)=0", rep.bottom_row_zeros);
  for (int k = -2; k <= 2; ++k) {
    auto [i, j] = idx(k, -k);
    T w = half(i, j).domain().lo;
    if (detail::classify_entry<T>(half(i, j), &w) != EntrySign::StrictlyPositive) {
      rep.diagonal_positive = false;
      rep.violations.push_back({k, -k, "B2(x+k/b-ka)>0", to_double(w), to_double(half(i, j)(w))});
    }
  }
  if (lambda) {
    rep.lambda3_checked = true;
    require_zero(1, 1, "Lambda3: B2(x+1/b+a)=0", rep.lambda3_zeros);
    require_zero(0, -2, "Lambda3: B2(x-2a)=0", rep.lambda3_zeros);
    require_zero(-1, -2, "Lambda3: B2(x-1/b-2a)=0", rep.lambda3_zeros);
    require_zero(-1, -1, "Lambda3: B2(x-1/b-a)=0", rep.lambda3_zeros);
  }
  return rep;
}

/// G_3 on [-a/2, 0] in block form [[D, v], [0, corner]].
template <class T>
struct BlockReduction {
  SmallMatrix<PiecewisePoly<T>> D;
  std::vector<PiecewisePoly<T>> v;
  std::vector<PiecewisePoly<T>> last_row;  ///< the four entries left of the corner
  PiecewisePoly<T> corner;                 ///< B2(x - 2/b + 2a)
};

template <class T>
BlockReduction<T> reduce_to_block(const DualityMatrix<T>& g) {
  if (g.m != 3) throw PreconditionError("reduce_to_block: requires m = 3");
  if (!regions::in_gamma3(g.params) && !regions::in_lambda3(g.params)) {
    throw PreconditionError("reduce_to_block: (a, b) must lie in Gamma3 or Lambda3");
  }
  const auto half = g.left_half();
  BlockReduction<T> out;
  out.D = half.submatrix({0, 1, 2, 3}, {0, 1, 2, 3});
  for (std::size_t i = 0; i < 4; ++i) out.v.push_back(half(i, 4));
  for (std::size_t j = 0; j < 4; ++j) out.last_row.push_back(half(4, j));
  out.corner = half(4, 4);
  if (detail::classify_entry<T>(out.corner, nullptr) != EntrySign::StrictlyPositive) {
    throw PreconditionError("reduce_to_block: corner B2(x-2/b+2a) not strictly positive on [-a/2, 0]");
  }
  for (const auto& e : out.last_row) {
    if (!e.is_zero()) throw PreconditionError("reduce_to_block: last row of G_3 is not zero left of the corner");
  }
  return out;
}

}  // namespace b2frame
