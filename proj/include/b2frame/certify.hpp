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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "b2frame/dualsystem.hpp"
#include "b2frame/lattice.hpp"
#include "b2frame/matrix.hpp"
#include "b2frame/roots.hpp"
#include "b2frame/splinecore.hpp"

namespace b2frame {

/// Root-isolation tolerance in float mode (not a certificate).
inline constexpr double kFloatRootTol = 1e-10;

/// Determinant of a polynomial matrix by cofactor expansion in the
/// coefficient field. The interval is kept for callers that track it.
template <class T>
Polynomial<T> polynomial_determinant(const SmallMatrix<Polynomial<T>>& pm, const T& lo, const T& hi) {
  (void)lo;
  (void)hi;
  return laplace_determinant(pm, Polynomial<T>{}, Polynomial<T>::constant(T(1)));
}

/// Determinant of a square matrix of piecewise polynomials, one polynomial
/// per piece of the common partition of all entries.
template <class T>
PiecewisePoly<T> det_piecewise(const SmallMatrix<PiecewisePoly<T>>& m) {
  const std::size_t n = m.rows();
  if (n == 0 || n != m.cols()) throw std::invalid_argument("det_piecewise: matrix must be square and nonempty");
  const Interval<T> dom = m(0, 0).domain();
  std::vector<T> breaks = common_breakpoints(m);
  std::vector<Polynomial<T>> pieces;
  pieces.reserve(breaks.size() + 1);
  for (std::size_t p = 0; p <= breaks.size(); ++p) {
    T lo = p == 0 ? dom.lo : breaks[p - 1];
    T hi = p == breaks.size() ? dom.hi : breaks[p];
    pieces.push_back(polynomial_determinant(polynomial_matrix_at(m, T((lo + hi) / T(2))), lo, hi));
  }
  return PiecewisePoly<T>(dom, std::move(breaks), std::move(pieces));
}

enum class PieceStatus { StrictlyPositive, StrictlyNegative, VanishesAt, IdenticallyZero };

std::string to_string(PieceStatus s);

struct RootRecord {
  double approx = 0;
  double lo = 0;
  double hi = 0;
  bool exact = false;
  std::string exact_value;  ///< set when the root is known exactly
  bool at_domain_endpoint = false;
};

/// Nonvanishing certificate for a piecewise-polynomial determinant.
template <class T>
struct DetCertificate {
  std::optional<LatticeParams> params;
  PiecewisePoly<T> det;
  std::vector<PieceStatus> statuses;
  std::vector<std::vector<RootRecord>> roots;  ///< per piece, closed piece interval
  std::vector<RootRecord> endpoint_roots;      ///< roots at the domain endpoints
  int interior_roots = 0;                      ///< distinct roots strictly inside the domain
  bool has_zero_piece = false;
  bool overall = false;
  bool certified = false;  ///< true only in exact mode
  std::string case_label = "unspecified";
};

/// Which of the appendix cases (a-subinterval of Gamma3, or Lambda3) the
/// parameters fall in.
std::string case_label(const LatticeParams& params);

template <class T>
DetCertificate<T> certify_nonvanishing(const PiecewisePoly<T>& det, std::optional<LatticeParams> params = std::nullopt,
                                       double float_root_tol = kFloatRootTol) {
  DetCertificate<T> cert;
  cert.params = params;
  cert.det = det;
  cert.certified = ScalarTraits<T>::exact;
  if (params) cert.case_label = case_label(*params);
  const Interval<T>& dom = det.domain();
  std::vector<T> interior_seen;
  auto note_interior = [&](const T& r) {
    for (const T& s : interior_seen) {
      if constexpr (ScalarTraits<T>::exact) {
        if (s == r) return;
      } else {
        if (std::fabs(s - r) <= float_root_tol) return;
      }
    }
    interior_seen.push_back(r);
  };
  for (std::size_t p = 0; p < det.piece_count(); ++p) {
    const auto& poly = det.piece(p);
    T lo = det.piece_lo(p);
    T hi = det.piece_hi(p);
    std::vector<RootRecord> recs;
    if (poly.is_zero()) {
      cert.statuses.push_back(PieceStatus::IdenticallyZero);
      cert.roots.push_back({});
      cert.has_zero_piece = true;
      continue;
    }
    if constexpr (ScalarTraits<T>::exact) {
      for (const auto& br : isolate_real_roots(poly, lo, hi, Rational(mpz_class(1), mpz_class(1) << 40))) {
        RootRecord r;
        r.lo = br.lo.get_d();
        r.hi = br.hi.get_d();
        r.approx = br.approx();
        r.exact = br.exact;
        if (br.exact) r.exact_value = to_string(br.lo);
        r.at_domain_endpoint = br.exact && (br.lo == dom.lo || br.lo == dom.hi);
        if (!r.at_domain_endpoint) note_interior(br.exact ? br.lo : T((br.lo + br.hi) / 2));
        recs.push_back(r);
      }
    } else {
      for (double z : companion_real_roots(poly, lo, hi, float_root_tol)) {
        RootRecord r;
        r.approx = r.lo = r.hi = z;
        r.at_domain_endpoint = std::fabs(z - dom.lo) <= float_root_tol || std::fabs(z - dom.hi) <= float_root_tol;
        if (!r.at_domain_endpoint) note_interior(z);
        recs.push_back(r);
      }
    }
    if (recs.empty()) {
      T mid = (lo + hi) / T(2);
      cert.statuses.push_back(sign_of(poly(mid)) > 0 ? PieceStatus::StrictlyPositive : PieceStatus::StrictlyNegative);
    } else {
      cert.statuses.push_back(PieceStatus::VanishesAt);
      for (const auto& r : recs) {
        if (!r.at_domain_endpoint) continue;
        bool dup = false;
        for (const auto& e : cert.endpoint_roots) dup = dup || e.approx == r.approx;
        if (!dup) cert.endpoint_roots.push_back(r);
      }
    }
    cert.roots.push_back(std::move(recs));
  }
  cert.interior_roots = static_cast<int>(interior_seen.size());
  cert.overall = cert.interior_roots == 0 && !cert.has_zero_piece;
  return cert;
}

/// Builds G_3 and certifies det D(x) != 0 on [-a/2, 0] for (a, b) in Gamma3
/// or Lambda3 (exact mode when the parameters are rational).
template <class T>
DetCertificate<T> certify_block(const LatticeParams& params, double float_root_tol = kFloatRootTol) {
  auto g = build_G<T>(3, params);
  auto blk = reduce_to_block(g);
  return certify_nonvanishing(det_piecewise(blk.D), params, float_root_tol);
}

/// Certifies det G_m(x) != 0 on [-a/2, 0] for any strip m.
template <class T>
DetCertificate<T> certify_strip(int m, const LatticeParams& params, double float_root_tol = kFloatRootTol) {
  auto g = build_G<T>(m, params);
  return certify_nonvanishing(det_piecewise(g.left_half()), params, float_root_tol);
}

/// {"exact": "p/q", "approx": x} for rationals, a plain number otherwise.
template <class T>
nlohmann::json scalar_json(const T& v) {
  if constexpr (ScalarTraits<T>::exact) {
    return nlohmann::json{{"exact", to_string(v)}, {"approx", v.get_d()}};
  } else {
    return v;
  }
}

template <class T>
nlohmann::json certificate_to_json(const DetCertificate<T>& cert);

// ---------------------------------------------------------------------------
// Closed forms for a in (0, 2/13].

/// (4a/b)(bx - b + 2)((1 - b)x + a(1 - b)), as printed for the left segment.
Polynomial<Rational> left_closed_form(const Rational& a, const Rational& b);
/// (4a(b - 1)(x + a)/b)(1 - x - 2/b + 2a), the right segment.
Polynomial<Rational> right_closed_form(const Rational& a, const Rational& b);

struct ClosedFormSegment {
  std::string name;  ///< "left" or "right"
  Rational lo;
  Rational hi;
  Polynomial<Rational> expected;
  Polynomial<Rational> actual;
  Polynomial<Rational> difference;  ///< actual - expected
  bool match = false;
};

struct ClosedFormReport {
  Rational split;  ///< 1 - 2/b + a
  std::vector<ClosedFormSegment> segments;
  bool all_match = false;
};

/// Compares the exact determinant of D against the two closed forms on
/// [-a/2, 1 - 2/b + a) and [1 - 2/b + a, 0]. Requires exact parameters in
/// Gamma3 with a <= 2/13.
ClosedFormReport check_closed_forms(const LatticeParams& params);

// ---------------------------------------------------------------------------
// Minors of D on Lambda3.

template <class T>
struct MinorReport {
  T x{};
  T d32{};  ///< det of D without row 3 and column 2 (1-based)
  T d33{};
  T d34{};
  T det_d{};
  T b2_x_minus_a{};
  T b2_x{};
  T b2_x_plus_a{};
  bool b2_x_exceeds_left = false;   ///< B2(x) > B2(x - a)
  bool b2_x_dominates_right = false;  ///< B2(x) >= B2(x + a), equality only at -a/2
  bool d32_positive = false;
  bool d34_nonnegative = false;
  bool d34_zero_set = false;        ///< D34 == 0 exactly when x <= 1/b - 1
  bool d33_dominates = false;       ///< D33 > D32 + D34
  bool cofactor_identity = false;   ///< |D| = -B2(x-a)D32 + B2(x)D33 - B2(x+a)D34
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

template <class T>
MinorReport<T> minor_report(const LatticeParams& params, const T& x) {
  if (!regions::in_lambda3(params)) throw PreconditionError("minor_report: (a, b) must lie in Lambda3");
  const T a = params.a_as<T>();
  const T b = params.b_as<T>();
  if (x < -a / T(2) || x > T(0)) throw PreconditionError("minor_report: x must lie in [-a/2, 0]");
  auto g = build_G<T>(3, params);
  SmallMatrix<T> full = g.at(x);
  SmallMatrix<T> d = full.submatrix({0, 1, 2, 3}, {0, 1, 2, 3});
  MinorReport<T> r;
  r.x = x;
  r.d32 = laplace_determinant(d.minor_matrix(2, 1), T(0), T(1));
  r.d33 = laplace_determinant(d.minor_matrix(2, 2), T(0), T(1));
  r.d34 = laplace_determinant(d.minor_matrix(2, 3), T(0), T(1));
  r.det_d = laplace_determinant(d, T(0), T(1));
  r.b2_x_minus_a = d(2, 1);
  r.b2_x = d(2, 2);
  r.b2_x_plus_a = d(2, 3);
  const bool at_left_end = x == -a / T(2);
  auto fail = [&](const std::string& what) {
    r.failures.push_back(what + " at x = " + ScalarTraits<T>::format(x));
  };
  r.b2_x_exceeds_left = r.b2_x > r.b2_x_minus_a;
  if (!r.b2_x_exceeds_left) fail("B2(x) > B2(x-a) violated");
  r.b2_x_dominates_right = at_left_end ? r.b2_x == r.b2_x_plus_a : r.b2_x > r.b2_x_plus_a;
  if (!r.b2_x_dominates_right) fail("B2(x) >= B2(x+a) (equality only at -a/2) violated");
  r.d32_positive = r.d32 > T(0);
  if (!r.d32_positive) fail("|D32| > 0 violated: " + ScalarTraits<T>::format(r.d32));
  r.d34_nonnegative = r.d34 >= T(0);
  if (!r.d34_nonnegative) fail("|D34| >= 0 violated: " + ScalarTraits<T>::format(r.d34));
  const bool in_zero_set = x <= T(1) / b - T(1);
  r.d34_zero_set = (r.d34 == T(0)) == in_zero_set;
  if (!r.d34_zero_set) fail("|D34| = 0 exactly on [-a/2, 1/b - 1] violated");
  r.d33_dominates = r.d33 > r.d32 + r.d34;
  if (!r.d33_dominates) fail("|D33| > |D32| + |D34| violated");
  T expansion = -r.b2_x_minus_a * r.d32 + r.b2_x * r.d33 - r.b2_x_plus_a * r.d34;
  if constexpr (ScalarTraits<T>::exact) {
    r.cofactor_identity = expansion == r.det_d;
  } else {
    r.cofactor_identity = std::fabs(expansion - r.det_d) <= 1e-12 * std::max(1.0, std::fabs(r.det_d));
  }
  if (!r.cofactor_identity) fail("cofactor expansion along row 3 does not reproduce |D|");
  return r;
}

}  // namespace b2frame
