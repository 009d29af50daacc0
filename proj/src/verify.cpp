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

#include "b2frame/verify.hpp"

#include <algorithm>
#include <cmath>

namespace b2frame {

namespace {

template <class T>
ResidualReport pointwise_residual_impl(const LatticeParams& params, int m, int grid) {
  auto g = build_G<T>(m, params);
  const T a = params.a_as<T>();
  const T b = params.b_as<T>();
  ResidualReport rep;
  rep.grid_size = grid;
  rep.exact = ScalarTraits<T>::exact;
  for (int l = 1 - m; l <= m - 1; ++l) rep.per_l.push_back({l, 0.0});
  const T step = a / T(grid);
  for (int i = 0; i < grid; ++i) {
    const T x = -a / T(2) + (T(i) + T(1) / T(2)) * step;
    // For x > 0, h(x + ka) = h(-x - ka) = u_{-k}(-x).
    const bool right = x > T(0);
    std::vector<T> u = solve_dual_at(right ? T(-x) : x, g);
    if (right) std::reverse(u.begin(), u.end());
    for (int l = 1 - m; l <= m - 1; ++l) {
      T acc(0);
      for (int k = 1 - m; k <= m - 1; ++k) {
        acc += eval_b2(T(x - T(l) / b + T(k) * a)) * u[static_cast<std::size_t>(k + m - 1)];
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

}  // namespace

ResidualReport pointwise_duality_residual(const LatticeParams& params, int m, int grid, bool exact) {
  if (grid < 1) throw PreconditionError("pointwise_duality_residual: grid must be positive");
  if (exact && params.is_exact()) return pointwise_residual_impl<Rational>(params, m, grid);
  return pointwise_residual_impl<double>(LatticeParams::floating(params.a(), params.b(), params.rational_form()), m,
                                         grid);
}

double bessel_bound(const std::function<double(double)>& h, double radius, const LatticeParams& params, int grid) {
  if (grid < 1) throw PreconditionError("bessel_bound: grid must be positive");
  const double a = params.a();
  const double b = params.b();
  const long nmax = static_cast<long>(std::floor(2.0 * radius * b)) + 1;
  double sup = 0;
  for (int i = 0; i < grid; ++i) {
    const double x = (i + 0.5) * a / grid;
    const long k0 = static_cast<long>(std::floor((x - radius) / a)) - 1;
    const long k1 = static_cast<long>(std::ceil((x + radius) / a)) + 1;
    std::vector<double> hv;
    for (long k = k0; k <= k1; ++k) hv.push_back(h(x - k * a));
    double total = 0;
    for (long n = -nmax; n <= nmax; ++n) {
      double inner = 0;
      for (long k = k0; k <= k1; ++k) {
        const double hk = hv[static_cast<std::size_t>(k - k0)];
        if (hk == 0.0) continue;
        inner += hk * h(x - k * a - n / b);
      }
      total += std::fabs(inner);
    }
    sup = std::max(sup, total);
  }
  return sup / b;
}

namespace {

bool construction_provenance(const RegionVerdict& v) {
  for (const auto& p : v.provenance) {
    if (p == "Gamma3" || p == "Lambda3" || p == "Prop2b" || p == "Prop2d") return true;
    if (p.size() > 1 && p[0] == 'T') return true;
  }
  return false;
}

template <class T>
void run_piecewise(const LatticeParams& params, int m, const CrossCheckOptions& opt, CrossCheckReport& rep) {
  DualWindow<T> h = build_dual<T>(m, params, opt.dual_resolution);
  rep.dual_built = true;
  rep.dual_method = "piecewise";
  rep.residual = duality_residual(h, params, m, opt.residual_grid);
  rep.bessel = bessel_bound(h, params, 128);
}

}  // namespace

CrossCheckReport cross_check(const LatticeParams& params, const CrossCheckOptions& opt) {
  CrossCheckReport rep;
  rep.verdict = classify(params);
  rep.strip = rep.verdict.strip;
  const bool frame = rep.verdict.label == Label::Frame;
  const bool not_frame = rep.verdict.label == Label::NotFrame;

  if (frame && rep.strip) {
    const int m = *rep.strip;
    rep.dual_attempted = true;
    try {
      if (m <= opt.max_piecewise_m) {
        if (opt.exact && params.is_exact()) {
          run_piecewise<Rational>(params, m, opt, rep);
        } else {
          run_piecewise<double>(LatticeParams::floating(params.a(), params.b(), params.rational_form()), m, opt, rep);
        }
      } else {
        rep.residual = pointwise_duality_residual(params, m, opt.residual_grid, opt.exact);
        rep.dual_built = true;
        rep.dual_method = "pointwise";
      }
    } catch (const SingularSystemError& e) {
      rep.dual_error = e.what();
    } catch (const PreconditionError& e) {
      rep.dual_error = e.what();
    }
    if (!rep.dual_built && construction_provenance(rep.verdict)) {
      rep.divergences.push_back("Frame(" + rep.verdict.primary + ") but the dual could not be constructed: " +
                                rep.dual_error);
    }
    if (rep.residual && rep.residual->max_residual > opt.residual_tol) {
      rep.divergences.push_back("Frame(" + rep.verdict.primary + ") but duality residual " +
                                format_double(rep.residual->max_residual) + " at x = " +
                                format_double(rep.residual->worst_x) + ", l = " + std::to_string(rep.residual->worst_l));
    }
    if (rep.bessel && !std::isfinite(*rep.bessel)) rep.divergences.push_back("Bessel bound of the dual is not finite");
  }

  const auto& rf = params.rational_form();
  if (!rf) {
    rep.zz_skip_reason = "ab has no rational form";
  } else if (rf->p >= rf->q) {
    rep.zz_skip_reason = "ab >= 1";
  } else if (rf->q > opt.max_q) {
    rep.zz_skip_reason = "q = " + std::to_string(rf->q) + " exceeds " + std::to_string(opt.max_q);
  } else {
    rep.zz_run = true;
    rep.zz = frame_evidence(params, opt.zz_grid, SweepKind::Psi, opt.zz_level);
    const EvidenceReport& z = *rep.zz;
    if (frame && (!(z.fine.A_est > 0) || z.level == Evidence::NumericallyNonFrame)) {
      rep.divergences.push_back("Frame(" + rep.verdict.primary + ") but Zibulski-Zeevi evidence is " +
                                to_string(z.level) + " (A_est = " + format_double(z.fine.A_est) + ")");
    }
    if (not_frame && z.level != Evidence::NumericallyNonFrame && z.level != Evidence::Degenerating) {
      rep.divergences.push_back("NotFrame (" + rep.verdict.reason + ") but Zibulski-Zeevi evidence is " +
                                to_string(z.level) + " (A_est = " + format_double(z.fine.A_est) + ")");
    }
  }
  return rep;
}

nlohmann::json residual_json(const ResidualReport& r) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& [l, v] : r.per_l) per.push_back({{"l", l}, {"max_residual", v}});
  return nlohmann::json{{"max_residual", r.max_residual}, {"worst_x", r.worst_x}, {"worst_l", r.worst_l},
                        {"grid_size", r.grid_size},       {"exact", r.exact},     {"per_l", per}};
}

nlohmann::json cross_check_json(const LatticeParams& params, const CrossCheckReport& r) {
  nlohmann::json j;
  j["verdict"] = verdict_json(params, r.verdict);
  j["dual"] = {{"attempted", r.dual_attempted},
               {"built", r.dual_built},
               {"method", r.dual_method},
               {"error", r.dual_error},
               {"residual", r.residual ? residual_json(*r.residual) : nlohmann::json(nullptr)},
               {"bessel_bound", r.bessel ? nlohmann::json(*r.bessel) : nlohmann::json(nullptr)}};
  j["zz"] = r.zz ? evidence_json(*r.zz) : nlohmann::json{{"skipped", r.zz_skip_reason}};
  j["divergences"] = r.divergences;
  j["agree"] = r.agree();
  return j;
}

}  // namespace b2frame
