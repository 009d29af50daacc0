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
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "b2frame/polynomial.hpp"
#include "b2frame/scalar.hpp"

namespace b2frame {

template <class T>
struct Interval {
  T lo;
  T hi;

  bool contains(const T& x) const { return lo <= x && x <= hi; }
  bool interior(const T& x) const { return lo < x && x < hi; }
};

/// The 2-spline max(1 - |x|, 0).
template <class T>
T eval_b2(const T& x) {
  T ax = abs_of(x);
  if (ax >= T(1)) return T(0);
  return T(1) - ax;
}

/// Sorts and deduplicates breakpoints; in float mode points closer than
/// kBreakpointMergeTol collapse onto the first one. Points not strictly
/// inside `domain` are dropped.
template <class T>
std::vector<T> normalize_breakpoints(std::vector<T> pts, const Interval<T>& domain) {
  std::sort(pts.begin(), pts.end());
  std::vector<T> out;
  for (const T& p : pts) {
    if (!domain.interior(p)) continue;
    if constexpr (ScalarTraits<T>::exact) {
      if (!out.empty() && out.back() == p) continue;
    } else {
      if (!out.empty() && p - out.back() <= kBreakpointMergeTol) continue;
      if (p - domain.lo <= kBreakpointMergeTol || domain.hi - p <= kBreakpointMergeTol) continue;
    }
    out.push_back(p);
  }
  return out;
}

/// Piecewise polynomial on a closed interval. Each piece owns its left
/// endpoint; the last piece owns both endpoints.
template <class T>
class PiecewisePoly {
 public:
  PiecewisePoly() = default;

  PiecewisePoly(Interval<T> domain, std::vector<T> breaks, std::vector<Polynomial<T>> pieces)
      : domain_(std::move(domain)), breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
    if (!(domain_.lo < domain_.hi)) throw std::invalid_argument("PiecewisePoly: empty domain");
    if (pieces_.size() != breaks_.size() + 1) {
      throw std::invalid_argument("PiecewisePoly: piece count must be breakpoint count + 1");
    }
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      if (!domain_.interior(breaks_[i])) {
        throw std::invalid_argument("PiecewisePoly: breakpoint outside domain interior");
      }
      if (i > 0 && !(breaks_[i - 1] < breaks_[i])) {
        throw std::invalid_argument("PiecewisePoly: breakpoints not strictly increasing");
      }
    }
  }

  static PiecewisePoly constant(Interval<T> domain, const T& v) {
    return PiecewisePoly(std::move(domain), {}, {Polynomial<T>::constant(v)});
  }

  const Interval<T>& domain() const { return domain_; }
  const std::vector<T>& breakpoints() const { return breaks_; }
  const std::vector<Polynomial<T>>& pieces() const { return pieces_; }
  std::size_t piece_count() const { return pieces_.size(); }
  const Polynomial<T>& piece(std::size_t i) const { return pieces_[i]; }

  T piece_lo(std::size_t i) const { return i == 0 ? domain_.lo : breaks_[i - 1]; }
  T piece_hi(std::size_t i) const { return i == breaks_.size() ? domain_.hi : breaks_[i]; }

  /// Index of the piece owning x (left-closed convention). Throws when x is
  /// outside the domain.
  std::size_t piece_index(const T& x) const {
    if (!domain_.contains(x)) throw std::out_of_range("PiecewisePoly: x outside domain");
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    return static_cast<std::size_t>(it - breaks_.begin());
  }

  T operator()(const T& x) const { return pieces_[piece_index(x)](x); }

  bool is_zero() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const auto& p) { return p.is_zero(); });
  }

  int max_degree() const {
    int d = -1;
    for (const auto& p : pieces_) d = std::max(d, p.degree());
    return d;
  }

  /// Same function, re-expressed on a partition containing `extra` as well.
  PiecewisePoly refine(const std::vector<T>& extra) const {
    std::vector<T> all = breaks_;
    all.insert(all.end(), extra.begin(), extra.end());
    std::vector<T> merged = normalize_breakpoints(std::move(all), domain_);
    return on_partition(domain_, merged);
  }

  /// Restriction to a sub-interval of the domain.
  PiecewisePoly restrict(const Interval<T>& sub) const {
    if (sub.lo < domain_.lo || sub.hi > domain_.hi || !(sub.lo < sub.hi)) {
      throw std::invalid_argument("PiecewisePoly::restrict: not a sub-interval");
    }
    return on_partition(sub, normalize_breakpoints(breaks_, sub));
  }

  friend bool operator==(const PiecewisePoly& p, const PiecewisePoly& q) {
    return p.domain_.lo == q.domain_.lo && p.domain_.hi == q.domain_.hi && p.breaks_ == q.breaks_ &&
           p.pieces_ == q.pieces_;
  }

 private:
  // Re-samples onto `breaks` within `dom`; each new piece inherits the
  // polynomial owning its midpoint.
  PiecewisePoly on_partition(const Interval<T>& dom, const std::vector<T>& breaks) const {
    std::vector<Polynomial<T>> pcs;
    pcs.reserve(breaks.size() + 1);
    for (std::size_t i = 0; i <= breaks.size(); ++i) {
      T lo = i == 0 ? dom.lo : breaks[i - 1];
      T hi = i == breaks.size() ? dom.hi : breaks[i];
      T mid = (lo + hi) / T(2);
      auto it = std::upper_bound(breaks_.begin(), breaks_.end(), mid);
      pcs.push_back(pieces_[static_cast<std::size_t>(it - breaks_.begin())]);
    }
    return PiecewisePoly(dom, breaks, std::move(pcs));
  }

  Interval<T> domain_{T(0), T(1)};
  std::vector<T> breaks_;
  std::vector<Polynomial<T>> pieces_{Polynomial<T>{}};
};

namespace detail {

template <class T>
Interval<T> intersect_domains(const PiecewisePoly<T>& p, const PiecewisePoly<T>& q) {
  Interval<T> d{std::max(p.domain().lo, q.domain().lo), std::min(p.domain().hi, q.domain().hi)};
  if (!(d.lo < d.hi)) throw std::invalid_argument("piecewise operation: domains do not intersect");
  return d;
}

template <class T, class Op>
PiecewisePoly<T> combine(const PiecewisePoly<T>& p, const PiecewisePoly<T>& q, Op op) {
  Interval<T> dom = intersect_domains(p, q);
  std::vector<T> all = p.breakpoints();
  all.insert(all.end(), q.breakpoints().begin(), q.breakpoints().end());
  std::vector<T> breaks = normalize_breakpoints(std::move(all), dom);
  std::vector<Polynomial<T>> pcs;
  pcs.reserve(breaks.size() + 1);
  for (std::size_t i = 0; i <= breaks.size(); ++i) {
    T lo = i == 0 ? dom.lo : breaks[i - 1];
    T hi = i == breaks.size() ? dom.hi : breaks[i];
    T mid = (lo + hi) / T(2);
    pcs.push_back(op(p.piece(p.piece_index(mid)), q.piece(q.piece_index(mid))));
  }
  return PiecewisePoly<T>(dom, std::move(breaks), std::move(pcs));
}

}  // namespace detail

template <class T>
PiecewisePoly<T> pp_add(const PiecewisePoly<T>& p, const PiecewisePoly<T>& q) {
  return detail::combine(p, q, [](const Polynomial<T>& u, const Polynomial<T>& v) { return u + v; });
}

template <class T>
PiecewisePoly<T> pp_sub(const PiecewisePoly<T>& p, const PiecewisePoly<T>& q) {
  return detail::combine(p, q, [](const Polynomial<T>& u, const Polynomial<T>& v) { return u - v; });
}

template <class T>
PiecewisePoly<T> pp_mul(const PiecewisePoly<T>& p, const PiecewisePoly<T>& q) {
  return detail::combine(p, q, [](const Polynomial<T>& u, const Polynomial<T>& v) { return u * v; });
}

/// x -> B2(x + offset) restricted to `domain`. Kinks of the shift sit at
/// -1 - offset, -offset and 1 - offset; those inside the domain become the
/// breakpoints.
template <class T>
PiecewisePoly<T> shifted_b2_as_pp(const T& offset, const Interval<T>& domain) {
  std::vector<T> kinks{T(-1) - offset, -offset, T(1) - offset};
  std::vector<T> breaks = normalize_breakpoints(std::move(kinks), domain);
  std::vector<Polynomial<T>> pcs;
  pcs.reserve(breaks.size() + 1);
  for (std::size_t i = 0; i <= breaks.size(); ++i) {
    T lo = i == 0 ? domain.lo : breaks[i - 1];
    T hi = i == breaks.size() ? domain.hi : breaks[i];
    T u = (lo + hi) / T(2) + offset;
    if (u <= T(-1) || u >= T(1)) {
      pcs.emplace_back();
    } else if (u < T(0)) {
      pcs.push_back(Polynomial<T>::affine(T(1) + offset, T(1)));  // 1 + (x + offset)
    } else {
      pcs.push_back(Polynomial<T>::affine(T(1) - offset, T(-1)));  // 1 - (x + offset)
    }
  }
  return PiecewisePoly<T>(domain, std::move(breaks), std::move(pcs));
}

}  // namespace b2frame
