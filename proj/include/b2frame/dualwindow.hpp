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

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "b2frame/certify.hpp"
#include "b2frame/dualsystem.hpp"

namespace b2frame {

/// G_m(x) is singular at a sample point, or the determinant vanishes inside
/// [-a/2, 0].
class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& what, double x) : std::runtime_error(what), x_(x) {}
  double x() const { return x_; }

 private:
  double x_;
};

/// Solves A u = rhs. Exact mode uses fraction Gaussian elimination, float
/// mode a full-pivot LU. Throws SingularSystemError when A is singular.
template <class T>
std::vector<T> solve_linear(const SmallMatrix<T>& A, const std::vector<T>& rhs, double where = 0) {
  const std::size_t n = A.rows();
  if constexpr (ScalarTraits<T>::exact) {
    SmallMatrix<T> M = A;
    std::vector<T> r = rhs;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && sgn(M(piv, col)) == 0) ++piv;
      if (piv == n) throw SingularSystemError("singular system", where);
      if (piv != col) {
        for (std::size_t j = 0; j < n; ++j) std::swap(M(piv, j), M(col, j));
        std::swap(r[piv], r[col]);
      }
      for (std::size_t i = col + 1; i < n; ++i) {
        if (sgn(M(i, col)) == 0) continue;
        T f = M(i, col) / M(col, col);
        for (std::size_t j = col; j < n; ++j) M(i, j) -= f * M(col, j);
        r[i] -= f * r[col];
      }
    }
    std::vector<T> u(n);
    for (std::size_t i = n; i-- > 0;) {
      T acc = r[i];
      for (std::size_t j = i + 1; j < n; ++j) acc -= M(i, j) * u[j];
      u[i] = acc / M(i, i);
    }
    return u;
  } else {
    Eigen::MatrixXd E(n, n);
    Eigen::VectorXd v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v(i) = rhs[i];
      for (std::size_t j = 0; j < n; ++j) E(i, j) = A(i, j);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(E);
    if (lu.rank() < static_cast<Eigen::Index>(n)) throw SingularSystemError("singular system", where);
    Eigen::VectorXd u = lu.solve(v);
    return std::vector<T>(u.data(), u.data() + n);
  }
}

/// (h(x + k a))_{k=-(m-1)..m-1}: b times the centre column of G_m(x)^{-1}.
template <class T>
std::vector<T> solve_dual_at(const T& x, const DualityMatrix<T>& g) {
  const T a = g.params.template a_as<T>();
  if (!(x > -a / T(2)) || x > T(0)) throw PreconditionError("solve_dual_at: x must lie in (-a/2, 0]");
  std::vector<T> rhs(g.size(), T(0));
  rhs[g.center()] = g.params.template b_as<T>();
  return solve_linear(g.at(x), rhs, to_double(x));
}

namespace detail {

template <class T>
struct CramerParts {
  T corner;
  T d33;  ///< D without its third row and third column
  T d34;  ///< D without its third row and fourth column
  T det_g;
};

template <class T>
CramerParts<T> cramer_parts(const T& x, const DualityMatrix<T>& g) {
  if (g.m != 3) throw PreconditionError("cramer_h: requires m = 3");
  if (!regions::in_gamma3(g.params)) throw PreconditionError("cramer_h: (a, b) must lie in Gamma3");
  const T a = g.params.template a_as<T>();
  if (x < -a / T(2) || x > T(0)) throw PreconditionError("cramer_h: x must lie in [-a/2, 0]");
  SmallMatrix<T> G = g.at(x);
  SmallMatrix<T> D = G.submatrix({0, 1, 2, 3}, {0, 1, 2, 3});
  CramerParts<T> c;
  c.corner = G(4, 4);
  c.d33 = laplace_determinant(D.minor_matrix(2, 2), T(0), T(1));
  c.d34 = laplace_determinant(D.minor_matrix(2, 3), T(0), T(1));
  c.det_g = laplace_determinant(G, T(0), T(1));
  if (ScalarTraits<T>::is_zero(c.det_g)) throw SingularSystemError("cramer_h: |G_3(x)| = 0", to_double(x));
  return c;
}

}  // namespace detail

/// h(x) = b B2(x - 2/b + 2a) |D33(x)| / |G_3(x)| for x in (-a/2, 0].
template <class T>
T cramer_h(const T& x, const DualityMatrix<T>& g) {
  auto c = detail::cramer_parts(x, g);
  return g.params.template b_as<T>() * c.corner * c.d33 / c.det_g;
}

/// h(x + a) = -b B2(x - 2/b + 2a) |D34(x)| / |G_3(x)| for x in (-a/2, 0].
template <class T>
T cramer_h_shifted(const T& x, const DualityMatrix<T>& g) {
  auto c = detail::cramer_parts(x, g);
  return -g.params.template b_as<T>() * c.corner * c.d34 / c.det_g;
}

/// One piece of h on [lo, hi): h(t) = num(t) / den(t).
template <class T>
struct RationalPiece {
  T lo;
  T hi;
  Polynomial<T> num;
  Polynomial<T> den;
  int shift = 0;          ///< k: the piece comes from h(x + k a), x in [-a/2, 0]
  bool mirrored = false;  ///< obtained through h(t) = h(-t)
  // Same quotient in the base variable x in [-a/2, 0]; evaluating here
  // avoids the cancellation of the shifted form in floating point.
  Polynomial<T> local_num;
  Polynomial<T> local_den;
  T shift_offset{};  ///< k a

  T to_local(const T& t) const { return mirrored ? T(-t - shift_offset) : T(t - shift_offset); }
};

template <class T>
struct Discontinuity {
  T location;
  T left;
  T right;
  T jump() const { return right - left; }
};

struct DualSample {
  double x = 0;
  double h = 0;
  int piece = -1;  ///< -1 outside the support
  bool discontinuity_adjacent = false;
};

/// Value of num/den at t, cancelling common roots at t.
template <class T>
T rational_limit(Polynomial<T> num, Polynomial<T> den, const T& t) {
  for (int guard = 0; guard < 16; ++guard) {
    T d = den(t);
    bool den_zero;
    if constexpr (ScalarTraits<T>::exact) {
      den_zero = sgn(d) == 0;
    } else {
      double scale = 0;
      for (double c : den.coeffs()) scale = std::max(scale, std::fabs(c));
      den_zero = std::fabs(d) <= 1e-13 * std::max(scale, 1e-300);
    }
    if (!den_zero) return num(t) / d;
    num = num.derivative();
    den = den.derivative();
    if (den.is_zero()) break;
  }
  throw SingularSystemError("rational_limit: pole", to_double(t));
}

/// The compactly supported dual window of B2 for strip m.
template <class T>
class DualWindow {
 public:
  int m = 1;
  LatticeParams params;
  T support_radius{};
  std::vector<RationalPiece<T>> pieces;  ///< sorted, tiling [-R, R]
  std::vector<Discontinuity<T>> discontinuities;
  std::vector<DualSample> samples;
  DetCertificate<T> certificate;

  /// Index of the piece owning t (right-limit convention), -1 outside.
  int piece_index(const T& t) const {
    if (t < -support_radius || t >= support_radius) return -1;
    std::size_t lo = 0, hi = pieces.size();
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (pieces[mid].lo <= t) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return static_cast<int>(lo);
  }

  T operator()(const T& t) const {
    int p = piece_index(t);
    if (p < 0) return T(0);
    return rational_limit(pieces[p].local_num, pieces[p].local_den, pieces[p].to_local(t));
  }

  T right_limit(const T& t) const { return (*this)(t); }

  T left_limit(const T& t) const {
    if (t <= -support_radius || t > support_radius) return T(0);
    std::size_t p = 0;
    while (p + 1 < pieces.size() && pieces[p].hi < t) ++p;
    return rational_limit(pieces[p].local_num, pieces[p].local_den, pieces[p].to_local(t));
  }

  double max_abs_sample() const {
    double best = 0;
    for (const auto& s : samples) best = std::max(best, std::fabs(s.h));
    return best;
  }
};

/// Discontinuities of h: every piece boundary (and +-R) where the one-sided
/// limits differ (exactly, or by more than 1e-8 in float mode).
template <class T>
std::vector<Discontinuity<T>> find_discontinuities(const DualWindow<T>& h) {
  std::vector<T> locs;
  for (const auto& p : h.pieces) locs.push_back(p.lo);
  if (!h.pieces.empty()) locs.push_back(h.pieces.back().hi);
  std::vector<Discontinuity<T>> out;
  for (const T& t : locs) {
    Discontinuity<T> d{t, h.left_limit(t), h.right_limit(t)};
    bool jump;
    if constexpr (ScalarTraits<T>::exact) {
      jump = d.left != d.right;
    } else {
      jump = std::fabs(d.left - d.right) > 1e-8;
    }
    if (jump) out.push_back(d);
  }
  return out;
}

template <class T>
std::vector<Discontinuity<T>> discontinuity_report(const DualWindow<T>& h) {
  return h.discontinuities;
}

inline constexpr int kMaxPiecewiseStrip = 5;

/// Builds h on [-(2m-1)a/2, (2m-1)a/2] from the cofactors of G_m on
/// [-a/2, 0], extended by evenness, with `resolution` midpoint samples.
template <class T>
DualWindow<T> build_dual(int m, const LatticeParams& params, int resolution) {
  if (resolution < 1) throw PreconditionError("build_dual: resolution must be positive");
  if (m > kMaxPiecewiseStrip) throw PreconditionError("build_dual: m > " + std::to_string(kMaxPiecewiseStrip) + " not supported");
  auto g = build_G<T>(m, params);
  auto half = g.left_half();
  PiecewisePoly<T> det = det_piecewise(half);
  DualWindow<T> h;
  h.m = m;
  h.params = params;
  h.certificate = certify_nonvanishing(det, params);
  if (!h.certificate.overall) {
    double where = to_double(half(0, 0).domain().lo);
    for (const auto& rs : h.certificate.roots) {
      for (const auto& r : rs) {
        if (!r.at_domain_endpoint) where = r.approx;
      }
    }
    throw SingularSystemError("build_dual: |G_m(x)| vanishes inside [-a/2, 0]", where);
  }
  const T a = params.a_as<T>();
  const T b = params.b_as<T>();
  h.support_radius = T(2 * m - 1) * a / T(2);
  const std::size_t n = g.size();
  const std::size_t c = g.center();
  std::vector<RationalPiece<T>> direct;
  for (std::size_t p = 0; p < det.piece_count(); ++p) {
    const T lo = det.piece_lo(p);
    const T hi = det.piece_hi(p);
    auto pm = polynomial_matrix_at(half, T((lo + hi) / T(2)));
    for (std::size_t j = 0; j < n; ++j) {
      SmallMatrix<Polynomial<T>> minor = pm.minor_matrix(c, j);
      Polynomial<T> cof = polynomial_determinant(minor, lo, hi);
      if ((c + j) % 2 == 1) cof = -cof;
      const int k = g.col_index(j);
      const T ka = T(k) * a;
      RationalPiece<T> dp;
      dp.lo = lo + ka;
      dp.hi = hi + ka;
      dp.num = (b * cof).compose_affine(-ka, T(1));
      dp.den = det.piece(p).compose_affine(-ka, T(1));
      dp.shift = k;
      dp.local_num = b * cof;
      dp.local_den = det.piece(p);
      dp.shift_offset = ka;
      RationalPiece<T> mp;
      mp.lo = -hi - ka;
      mp.hi = -lo - ka;
      mp.num = (b * cof).compose_affine(-ka, T(-1));
      mp.den = det.piece(p).compose_affine(-ka, T(-1));
      mp.shift = k;
      mp.local_num = dp.local_num;
      mp.local_den = dp.local_den;
      mp.shift_offset = ka;
      mp.mirrored = true;
      direct.push_back(std::move(dp));
      direct.push_back(std::move(mp));
    }
  }
  std::sort(direct.begin(), direct.end(),
            [](const RationalPiece<T>& u, const RationalPiece<T>& v) { return u.lo < v.lo; });
  h.pieces = std::move(direct);
  for (std::size_t i = 1; i < h.pieces.size(); ++i) {
    if (h.pieces[i - 1].hi != h.pieces[i].lo) {
      if constexpr (ScalarTraits<T>::exact) {
        throw std::logic_error("build_dual: pieces do not tile the support");
      } else {
        if (std::fabs(h.pieces[i - 1].hi - h.pieces[i].lo) > 1e-12) {
          throw std::logic_error("build_dual: pieces do not tile the support");
        }
        h.pieces[i].lo = h.pieces[i - 1].hi;
      }
    }
  }
  h.discontinuities = find_discontinuities(h);
  const double R = to_double(h.support_radius);
  const double step = 2.0 * R / resolution;
  h.samples.reserve(static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) {
    DualSample s;
    s.x = -R + (i + 0.5) * step;
    T t = ScalarTraits<T>::from_rational(rational_from_double(s.x));
    s.piece = h.piece_index(t);
    s.h = to_double(h(t));
    for (const auto& d : h.discontinuities) {
      if (std::fabs(to_double(d.location) - s.x) <= step) s.discontinuity_adjacent = true;
    }
    h.samples.push_back(s);
  }
  return h;
}

/// CSV with header x,h,piece_index,is_discontinuity_adjacent.
template <class T>
void write_dual_csv(std::ostream& os, const DualWindow<T>& h) {
  os << "x,h,piece_index,is_discontinuity_adjacent\n";
  for (const auto& s : h.samples) {
    os << format_double(s.x) << ',' << format_double(s.h) << ',' << s.piece << ','
       << (s.discontinuity_adjacent ? 1 : 0) << '\n';
  }
}

/// Summary of a dual window: support, pieces and the jumps of h.
template <class T>
nlohmann::json dual_json(const DualWindow<T>& h) {
  nlohmann::json jumps = nlohmann::json::array();
  for (const auto& d : h.discontinuities) {
    jumps.push_back({{"location", scalar_json(d.location)},
                     {"left", scalar_json(d.left)},
                     {"right", scalar_json(d.right)},
                     {"jump", scalar_json(d.jump())}});
  }
  nlohmann::json j;
  j["a"] = h.params.a_string();
  j["b"] = h.params.b_string();
  j["m"] = h.m;
  j["mode"] = ScalarTraits<T>::exact ? "exact" : "float";
  j["support_radius"] = scalar_json(h.support_radius);
  j["piece_count"] = h.pieces.size();
  j["discontinuities"] = jumps;
  j["max_abs_sample"] = h.max_abs_sample();
  j["det_certified_nonvanishing"] = h.certificate.overall;
  return j;
}

}  // namespace b2frame
