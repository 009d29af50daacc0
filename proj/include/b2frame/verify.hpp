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
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "b2frame/dualwindow.hpp"
#include "b2frame/frameset.hpp"
#include "b2frame/zibulski.hpp"

namespace b2frame {

inline constexpr double kResidualTol = 1e-10;

struct ResidualReport {
  double max_residual = 0;
  double worst_x = 0;
  int worst_l = 0;
  int grid_size = 0;
  bool exact = false;
  std::vector<std::pair<int, double>> per_l;  ///< (l, max residual)
};

namespace detail {

// x avoids every kink of B2(x - l/b + ka) and every breakpoint of h(x + ka).
template <class T>
bool near_kink(const T& x, const T& a, const T& b, int m, const std::vector<T>& h_breaks) {
  for (int k = 1 - m; k <= m - 1; ++k) {
    const T shifted = x + T(k) * a;
    for (int l = 1 - m; l <= m - 1; ++l) {
      const T arg = shifted - T(l) / b;
      for (int kink = -1; kink <= 1; ++kink) {
        if constexpr (ScalarTraits<T>::exact) {
          if (arg == T(kink)) return true;
        } else {
          if (std::fabs(arg - kink) <= 1e-12) return true;
        }
      }
    }
    for (const T& br : h_breaks) {
      if constexpr (ScalarTraits<T>::exact) {
        if (shifted == br) return true;
      } else {
        if (std::fabs(shifted - br) <= 1e-12) return true;
      }
    }
  }
  return false;
}

}  // namespace detail

/// max over midpoint samples x in (-a/2, a/2) and |l| <= m-1 of
/// |sum_k B2(x - l/b + ka) h(x + ka) - b delta_{l,0}|.
template <class T, class H>
ResidualReport duality_residual(const H& h, const LatticeParams& params, int m, int grid,
                                const std::vector<T>& h_breaks = {}) {
  if (grid < 1) throw PreconditionError("duality_residual: grid must be positive");
  const T a = params.a_as<T>();
  const T b = params.b_as<T>();
  ResidualReport rep;
  rep.grid_size = grid;
  rep.exact = ScalarTraits<T>::exact;
  for (int l = 1 - m; l <= m - 1; ++l) rep.per_l.push_back({l, 0.0});
  const T step = a / T(grid);
  for (int i = 0; i < grid; ++i) {
    T x = -a / T(2) + (T(i) + T(1) / T(2)) * step;
    for (int nudge = 1; nudge < 64 && detail::near_kink(x, a, b, m, h_breaks); ++nudge) {
      x = -a / T(2) + (T(i) + T(1) / T(2) + T(1) / T(nudge + 7)) * step;
    }
    std::vector<T> hv;
    for (int k = 1 - m; k <= m - 1; ++k) hv.push_back(h(T(x + T(k) * a)));
    for (int l = 1 - m; l <= m - 1; ++l) {
      T acc(0);
      for (int k = 1 - m; k <= m - 1; ++k) {
        acc += eval_b2(T(x - T(l) / b + T(k) * a)) * hv[static_cast<std::size_t>(k + m - 1)];
      }
      if (l == 0) acc -= b;
      const double r = std::fabs(to_double(acc));
      auto& slot = rep.per_l[static_cast<std::size_t>(l + m - 1)].second;
      slot = std::max(slot, r);
      if (r > rep.max_residual || (i == 0 && l == 1 - m)) {
        rep.max_residual = std::max(rep.max_residual, r);
        rep.worst_x = to_double(x);
        rep.worst_l = l;
      }
    }
  }
  return rep;
}

template <class T>
std::vector<T> window_breakpoints(const DualWindow<T>& h) {
  std::vector<T> out;
  for (const auto& p : h.pieces) out.push_back(p.lo);
  if (!h.pieces.empty()) out.push_back(h.pieces.back().hi);
  return out;
}

template <class T>
ResidualReport duality_residual(const DualWindow<T>& h, const LatticeParams& params, int m, int grid) {
  return duality_residual<T>([&h](const T& x) { return h(x); }, params, m, grid, window_breakpoints(h));
}

/// Duality residual of the pointwise solution of G_m(x) u = b e_centre, for
/// strips too large for the piecewise representation. Exact arithmetic is
/// used when requested and the parameters are rational.
ResidualReport pointwise_duality_residual(const LatticeParams& params, int m, int grid, bool exact = false);

inline constexpr int kBesselGrid = 512;

/// (1/b) sup_x sum_n |sum_k h(x - ka) h(x - ka - n/b)| over x in [0, a),
/// sampled at `grid` midpoints; h vanishes outside [-radius, radius].
double bessel_bound(const std::function<double(double)>& h, double radius, const LatticeParams& params,
                    int grid = kBesselGrid);

template <class T>
double bessel_bound(const DualWindow<T>& h, const LatticeParams& params, int grid = kBesselGrid) {
  return bessel_bound(
      [&h](double x) { return to_double(h(ScalarTraits<T>::from_rational(rational_from_double(x)))); },
      to_double(h.support_radius), params, grid);
}

struct CrossCheckOptions {
  bool exact = true;          ///< use exact arithmetic when the parameters are rational
  int residual_grid = 64;
  int dual_resolution = 64;
  int zz_grid = 50;           ///< sweeps at n x n and 2n x 2n
  long max_q = 32;            ///< skip Zibulski-Zeevi when q is larger
  int max_piecewise_m = kMaxPiecewiseStrip;   ///< larger strips use the pointwise residual
  double residual_tol = kResidualTol;
  double zz_level = kNonFrameLevel;
};

struct CrossCheckReport {
  RegionVerdict verdict;
  std::optional<int> strip;
  bool dual_attempted = false;
  bool dual_built = false;
  std::string dual_method;  ///< "piecewise", "pointwise" or empty
  std::string dual_error;
  std::optional<ResidualReport> residual;
  std::optional<double> bessel;
  bool zz_run = false;
  std::string zz_skip_reason;
  std::optional<EvidenceReport> zz;
  std::vector<std::string> divergences;
  bool agree() const { return divergences.empty(); }
};

CrossCheckReport cross_check(const LatticeParams& params, const CrossCheckOptions& opt = {});

nlohmann::json residual_json(const ResidualReport& r);
nlohmann::json cross_check_json(const LatticeParams& params, const CrossCheckReport& r);

}  // namespace b2frame
