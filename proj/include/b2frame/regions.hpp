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

#include <algorithm>
#include <cmath>
#include <optional>

#include "b2frame/lattice.hpp"
#include "b2frame/scalar.hpp"

namespace b2frame::regions {

// Hyperbolic boundary curves in the (a, b) plane.

/// 2(m-1) / (2 + (2m-3) a)
template <class T>
T strip_lower(int m, const T& a) {
  return T(2 * (m - 1)) / (T(2) + T(2 * m - 3) * a);
}

/// 2m / (2 + (2m-1) a)
template <class T>
T strip_upper(int m, const T& a) {
  return T(2 * m) / (T(2) + T(2 * m - 1) * a);
}

/// Duality-system strip: 0 < a < 2, lower(m) < b <= upper(m).
template <class T>
bool in_strip(int m, const T& a, const T& b) {
  if (m < 1 || !(a > T(0)) || !(a < T(2))) return false;
  return strip_lower(m, a) < b && b <= strip_upper(m, a);
}

/// The m with lower(m) < b <= upper(m). The strips tile 0 < b < 1/a, and
/// upper(m) >= b exactly when m >= (2b - ab) / (2(1 - ab)).
template <class T>
std::optional<int> find_strip(const T& a, const T& b) {
  if (!(a > T(0)) || !(a < T(2)) || !(b > T(0)) || !(a * b < T(1))) return std::nullopt;
  const double est = to_double(T((T(2) * b - a * b) / (T(2) * (T(1) - a * b))));
  if (!(est < 1e9)) return std::nullopt;
  const int m0 = std::max(1, static_cast<int>(std::ceil(est)));
  for (int m = std::max(1, m0 - 1); m <= m0 + 1; ++m) {
    if (in_strip(m, a, b)) return m;
  }
  return std::nullopt;
}

template <class T>
bool in_gamma3(const T& a, const T& b) {
  if (!(a > T(0)) || !(a < T(1) / T(2))) return false;
  return T(4) / (T(2) + T(3) * a) < b && b <= T(2) / (T(1) + a);
}

template <class T>
bool in_lambda3(const T& a, const T& b) {
  if (a < T(1) / T(2) || a > T(4) / T(5)) return false;
  return T(4) / (T(2) + T(3) * a) < b && b <= T(6) / (T(2) + T(5) * a) && b > T(1);
}

/// T_m of the strip theorem (m >= 1, spline order N = 2 in T_1).
template <class T>
bool in_t_strip(int m, const T& a, const T& b) {
  if (!(b > T(0)) || !(b < T(1))) return false;
  if (m == 1) return a > T(0) && a < T(1) && b <= T(2) / (T(2) + a);
  if (m < 2) return false;
  T a_lo = T(2 * (m - 2)) / T(2 * m - 3);
  if (!(a > a_lo) || !(a < T(1))) return false;
  return strip_lower(m, a) < b && b <= strip_upper(m, a);
}

/// Runs `f` with the lattice constants in the natural scalar type.
template <class F>
decltype(auto) with_scalars(const LatticeParams& p, F&& f) {
  if (p.is_exact()) return f(p.a_exact(), p.b_exact());
  return f(p.a(), p.b());
}

inline bool in_gamma3(const LatticeParams& p) {
  return with_scalars(p, [](const auto& a, const auto& b) { return in_gamma3(a, b); });
}

inline bool in_lambda3(const LatticeParams& p) {
  return with_scalars(p, [](const auto& a, const auto& b) { return in_lambda3(a, b); });
}

inline bool in_strip(int m, const LatticeParams& p) {
  return with_scalars(p, [m](const auto& a, const auto& b) { return in_strip(m, a, b); });
}

}  // namespace b2frame::regions
