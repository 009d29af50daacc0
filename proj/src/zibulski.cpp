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

#include "b2frame/zibulski.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "b2frame/splinecore.hpp"

namespace b2frame {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

template <class F>
void parallel_rows(int n, F&& f) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(std::max(n, 1))));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Integers n with |c + step * n| < 1.
std::pair<long, long> n_range(double c, double step) {
  long lo = static_cast<long>(std::floor((-1.0 - c) / step));
  long hi = static_cast<long>(std::ceil((1.0 - c) / step));
  return {lo, hi};
}

}  // namespace

RationalLattice rational_lattice(const LatticeParams& params) {
  const auto& rf = params.rational_form();
  if (!rf) throw PreconditionError("ab is not rational: no p/q form for (" + params.a_string() + ", " + params.b_string() + ")");
  return {params.a(), params.b(), rf->p, rf->q};
}

ComplexMatrix build_phi(double x, double nu, const LatticeParams& params) {
  const RationalLattice L = rational_lattice(params);
  ComplexMatrix m = ComplexMatrix::Zero(L.p, L.q);
  const double scale = std::sqrt(static_cast<double>(L.p));
  const double pq = static_cast<double>(L.p) / static_cast<double>(L.q);
  for (long l = 0; l < L.q; ++l) {
    const double c = x - pq * static_cast<double>(l);
    auto [n0, n1] = n_range(c, -1.0 / L.b);
    for (long n = std::min(n0, n1); n <= std::max(n0, n1); ++n) {
      const double w = eval_b2(c - static_cast<double>(n) / L.b);
      if (w == 0.0) continue;
      for (long k = 0; k < L.p; ++k) {
        const double phase = kTwoPi * (static_cast<double>(n) / L.b) * (nu + static_cast<double>(k) / L.p);
        m(k, l) += scale * w * std::polar(1.0, phase);
      }
    }
  }
  return m;
}

ComplexMatrix build_psi(double x, double nu, const LatticeParams& params) {
  const RationalLattice L = rational_lattice(params);
  ComplexMatrix m = ComplexMatrix::Zero(L.p, L.q);
  const double scale = 1.0 / std::sqrt(L.b);
  const double aq = L.a * static_cast<double>(L.q);
  for (long k = 0; k < L.p; ++k) {
    for (long l = 0; l < L.q; ++l) {
      const double c = x + L.a * static_cast<double>(l) + static_cast<double>(k) / L.b;
      auto [n0, n1] = n_range(c, aq);
      for (long n = n0; n <= n1; ++n) {
        const double w = eval_b2(c + aq * static_cast<double>(n));
        if (w == 0.0) continue;
        m(k, l) += scale * w * std::polar(1.0, -kTwoPi * aq * static_cast<double>(n) * nu);
      }
    }
  }
  return m;
}

ComplexMatrix build_p(double x, Complex y, const LatticeParams& params) {
  const RationalLattice L = rational_lattice(params);
  ComplexMatrix m = ComplexMatrix::Zero(L.q, L.p);
  const double aq = L.a * static_cast<double>(L.q);
  for (long l = 0; l < L.q; ++l) {
    for (long k = 0; k < L.p; ++k) {
      const double c = x + L.a * static_cast<double>(l) + static_cast<double>(k) / L.b;
      auto [n0, n1] = n_range(-c, aq);
      for (long n = n0; n <= n1; ++n) {
        const double w = eval_b2(c - aq * static_cast<double>(n));
        if (w == 0.0) continue;
        m(l, k) += w * std::pow(y, static_cast<int>(n));
      }
    }
  }
  return m;
}

Eigen::VectorXd singular_values(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

namespace {

ZZSpectrum sweep(const LatticeParams& params, int nx, int nnu, double threshold, SweepKind kind) {
  if (nx < 1 || nnu < 1) throw PreconditionError("sweep: grid sizes must be positive");
  const RationalLattice L = rational_lattice(params);
  if (L.p >= L.q) throw PreconditionError("sweep: requires ab < 1 (p < q)");
  ZZSpectrum s;
  s.kind = kind;
  s.p = L.p;
  s.q = L.q;
  s.nx = nx;
  s.nnu = nnu;
  s.threshold = threshold;
  if (kind == SweepKind::Psi) {
    s.x_extent = L.a;
    s.nu_extent = 1.0 / (L.a * static_cast<double>(L.q));
  } else {
    s.x_extent = 1.0;
    s.nu_extent = 1.0;
  }
  const std::size_t cells = static_cast<std::size_t>(nx) * static_cast<std::size_t>(nnu);
  s.smin.assign(cells, 0.0);
  s.smax.assign(cells, 0.0);
  parallel_rows(nx, [&](int ix) {
    const double x = s.cell_x(ix);
    for (int inu = 0; inu < nnu; ++inu) {
      const double nu = s.cell_nu(inu);
      ComplexMatrix m = kind == SweepKind::Psi ? build_psi(x, nu, params) : build_phi(x, nu, params);
      Eigen::VectorXd sv = singular_values(m);
      const std::size_t idx = static_cast<std::size_t>(ix) * nnu + inu;
      s.smax[idx] = sv(0);
      s.smin[idx] = sv(sv.size() - 1);
    }
  });
  s.A_est = std::numeric_limits<double>::infinity();
  s.B_est = 0;
  for (int ix = 0; ix < nx; ++ix) {
    for (int inu = 0; inu < nnu; ++inu) {
      const std::size_t idx = static_cast<std::size_t>(ix) * nnu + inu;
      s.A_est = std::min(s.A_est, s.smin[idx] * s.smin[idx]);
      s.B_est = std::max(s.B_est, s.smax[idx] * s.smax[idx]);
      if (s.smin[idx] < threshold) s.singular_cells.emplace_back(ix, inu);
    }
  }
  return s;
}

}  // namespace

ZZSpectrum rank_sweep(const LatticeParams& params, int nx, int nnu, double threshold) {
  return sweep(params, nx, nnu, threshold, SweepKind::Psi);
}

ZZSpectrum phi_sweep(const LatticeParams& params, int nx, int nnu, double threshold) {
  return sweep(params, nx, nnu, threshold, SweepKind::Phi);
}

std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::NumericallyNonFrame:
      return "numerically-non-frame";
    case Evidence::Degenerating:
      return "degenerating";
    case Evidence::FrameLike:
      return "frame-like";
    case Evidence::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

Evidence classify_evidence(double a_coarse, double a_fine, double level) {
  if (a_coarse < level) {
    if (a_fine * kNonFrameDrop <= a_coarse) return Evidence::NumericallyNonFrame;
    if (a_fine < a_coarse) return Evidence::Degenerating;
  }
  if (a_fine >= level && 2.0 * a_fine >= a_coarse) return Evidence::FrameLike;
  return Evidence::Inconclusive;
}

EvidenceReport frame_evidence(const LatticeParams& params, int n, SweepKind kind, double level) {
  EvidenceReport r;
  r.coarse = sweep(params, n, n, kSingularCellThreshold, kind);
  r.fine = sweep(params, 2 * n, 2 * n, kSingularCellThreshold, kind);
  r.level = classify_evidence(r.coarse.A_est, r.fine.A_est, level);
  r.drop = r.fine.A_est > 0 ? r.coarse.A_est / r.fine.A_est : std::numeric_limits<double>::infinity();
  return r;
}

void write_spectrum_csv(std::ostream& os, const ZZSpectrum& s) {
  os << "x,nu,smin,smax\n";
  for (int ix = 0; ix < s.nx; ++ix) {
    for (int inu = 0; inu < s.nnu; ++inu) {
      const std::size_t idx = static_cast<std::size_t>(ix) * s.nnu + inu;
      os << format_double(s.cell_x(ix)) << ',' << format_double(s.cell_nu(inu)) << ',' << format_double(s.smin[idx])
         << ',' << format_double(s.smax[idx]) << '\n';
    }
  }
}

nlohmann::json spectrum_json(const ZZSpectrum& s) {
  nlohmann::json j;
  j["matrix"] = s.kind == SweepKind::Psi ? "psi" : "phi";
  j["p"] = s.p;
  j["q"] = s.q;
  j["nx"] = s.nx;
  j["nnu"] = s.nnu;
  j["A_est"] = s.A_est;
  j["B_est"] = s.B_est;
  j["singular_threshold"] = s.threshold;
  j["singular_cells"] = s.singular_cells.size();
  return j;
}

nlohmann::json evidence_json(const EvidenceReport& r) {
  nlohmann::json j;
  j["coarse"] = spectrum_json(r.coarse);
  j["fine"] = spectrum_json(r.fine);
  j["drop"] = std::isfinite(r.drop) ? nlohmann::json(r.drop) : nlohmann::json("inf");
  j["evidence"] = to_string(r.level);
  return j;
}

// ---------------------------------------------------------------------------

LatticeParams j1_params() { return LatticeParams::exact(Rational(1, 2), Rational(3, 2)); }
LatticeParams j3_params() { return LatticeParams::exact(Rational(3, 8), Rational(3, 2)); }

ComplexMatrix j1_m(double x, Complex y) {
  static const LatticeParams params = j1_params();
  ComplexMatrix p = build_p(x, y, params);
  ComplexMatrix m(3, 3);
  m.row(0) = p.row(0);
  m.row(1) = p.row(2);
  m.row(2) = p.row(3);
  return m;
}

ComplexMatrix j1_n(double x, Complex y) {
  ComplexMatrix n = j1_m(x, y);
  n.row(1) /= y;
  n.row(2) /= y;
  return n;
}

double j1_full_smin(double x, double nu) {
  static const LatticeParams params = j1_params();
  ComplexMatrix p = build_p(x, std::polar(1.0, 4.0 * M_PI * nu), params);
  Eigen::VectorXd sv = singular_values(p);
  return sv(sv.size() - 1);
}

J1Report case_j1_check(double x) {
  if (x < 0.0 || x > 0.5) throw PreconditionError("case_j1_check: x must lie in [0, 1/2]");
  J1Report r;
  r.x = x;
  const double x2 = x * x;
  const double x3 = x2 * x;
  if (x <= 1.0 / 6.0) {
    r.interval = "[0,1/6]";
    r.f = 2 * x3 - 3 * x2 + 10.0 / 9.0 * x - 1.0 / 3.0;
    r.g = 2 * x3 + x2 + 4.0 / 9.0 * x + 1.0 / 9.0;
  } else if (x <= 1.0 / 3.0) {
    r.interval = "[1/6,1/3]";
    r.f = 2 * x3 - 3 * x2 + 16.0 / 9.0 * x - 4.0 / 9.0;
    r.g = 2 * x3 + x2 - 2.0 / 9.0 * x + 2.0 / 9.0;
  } else {
    r.interval = "[1/3,1/2]";
    r.quadratic = true;
    r.f = -x * (x2 - 0.5 * x + 1.0 / 18.0);
    r.g = 2 * x2 - 4.0 / 3.0 * x + 5.0 / 9.0;
    r.h = x3 - 2.5 * x2 + 37.0 / 18.0 * x - 5.0 / 9.0;
  }
  auto model = [&](Complex y) {
    return r.quadratic ? r.f * y * y - r.g * y + r.h : Complex(r.f) - y * r.g;
  };
  constexpr int kSamples = 64;
  for (int i = 0; i < kSamples; ++i) {
    Complex y = std::polar(1.0, kTwoPi * i / kSamples);
    double err = std::abs(j1_n(x, y).determinant() - model(y));
    r.max_identity_error = std::max(r.max_identity_error, err);
  }
  r.identity_ok = r.max_identity_error <= kIdentityTol;
  if (!r.identity_ok) {
    r.failures.push_back("|N1| deviates from the quoted polynomials by " + format_double(r.max_identity_error) +
                         " at x = " + format_double(x));
  }
  if (r.quadratic) {
    r.discriminant = r.g * r.g - 4 * r.f * r.h;
    r.discriminant_positive = r.discriminant > 0;
    if (!r.discriminant_positive) r.failures.push_back("discriminant not positive at x = " + format_double(x));
    r.unit_roots_excluded = std::abs(model(1.0)) > kIdentityTol && std::abs(model(-1.0)) > kIdentityTol;
    if (!r.unit_roots_excluded) r.failures.push_back("y = +-1 solves the quadratic at x = " + format_double(x));
    r.signs_ok = true;
  } else {
    r.signs_ok = r.f < 0 && r.g > 0;
    if (!r.signs_ok) r.failures.push_back("f < 0 < g violated at x = " + format_double(x));
  }
  return r;
}

ComplexMatrix j3_m(double x, Complex y) {
  static const LatticeParams params = j3_params();
  static const int rows[9] = {0, 1, 2, 3, 8, 9, 10, 11, 12};
  static const int cols[9] = {8, 0, 7, 6, 1, 5, 4, 3, 2};
  ComplexMatrix p = build_p(x, y, params);
  ComplexMatrix m(9, 9);
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) m(i, j) = p(rows[i], cols[j]);
  }
  return m;
}

J3Report case_j3_check(double x, Complex y) {
  if (x < 0.0 || x > 0.375) throw PreconditionError("case_j3_check: x must lie in [0, 3/8]");
  if (std::fabs(std::abs(y) - 1.0) > 1e-12) throw PreconditionError("case_j3_check: y must have unit modulus");
  J3Report r;
  r.x = x;
  r.y = y;
  auto blocks = [&](Complex yy, Complex& f, Complex& g, double* omax) {
    ComplexMatrix m = j3_m(x, yy);
    Complex da = m.block(0, 0, 4, 4).determinant();
    Complex db = m.block(4, 4, 5, 5).determinant();
    f = da / std::pow(yy, 3);
    g = db / std::pow(yy, 5);
    if (omax) {
      *omax = m.block(4, 0, 5, 4).cwiseAbs().maxCoeff();
      r.det_a = da;
      r.det_b = db;
    }
  };
  blocks(y, r.f, r.g, &r.o_block_max);
  Complex f1, g1;
  blocks(1.0, f1, g1, nullptr);
  r.o_block_zero = r.o_block_max <= 1e-14;
  if (!r.o_block_zero) {
    r.failures.push_back("block structure violated: O block entry " + format_double(r.o_block_max) +
                         " at x = " + format_double(x));
  }
  r.f_real = std::fabs(r.f.imag()) <= kIdentityTol;
  r.g_real = std::fabs(r.g.imag()) <= kIdentityTol;
  if (!r.f_real || !r.g_real) r.failures.push_back("|A3|/y^3 or |B3|/y^5 not real at x = " + format_double(x));
  r.f_spread = std::abs(r.f - f1);
  r.g_spread = std::abs(r.g - g1);
  r.y_independent = r.f_spread <= kIdentityTol && r.g_spread <= kIdentityTol;
  if (!r.y_independent) r.failures.push_back("|A3|/y^3 or |B3|/y^5 depends on y at x = " + format_double(x));
  r.f_positive = r.f.real() > 0;
  r.g_positive = r.g.real() > 0;
  if (!r.f_positive) r.failures.push_back("f(x) = |A3|/y^3 > 0 violated: f = " + format_double(r.f.real()) +
                                          " at x = " + format_double(x));
  if (!r.g_positive) r.failures.push_back("g(x) = |B3|/y^5 > 0 violated: g = " + format_double(r.g.real()) +
                                          " at x = " + format_double(x));
  r.nonvanishing = std::abs(r.f) > kIdentityTol && std::abs(r.g) > kIdentityTol;
  return r;
}

nlohmann::json j1_json(const J1Report& r) {
  nlohmann::json j{{"x", r.x},
                   {"interval", r.interval},
                   {"quadratic", r.quadratic},
                   {"f", r.f},
                   {"g", r.g},
                   {"max_identity_error", r.max_identity_error},
                   {"identity_ok", r.identity_ok},
                   {"signs_ok", r.signs_ok}};
  if (r.quadratic) {
    j["h"] = r.h;
    j["discriminant"] = r.discriminant;
    j["discriminant_positive"] = r.discriminant_positive;
    j["unit_roots_excluded"] = r.unit_roots_excluded;
  }
  j["failures"] = r.failures;
  return j;
}

nlohmann::json j3_json(const J3Report& r) {
  return nlohmann::json{{"x", r.x},
                        {"y", {r.y.real(), r.y.imag()}},
                        {"f", {r.f.real(), r.f.imag()}},
                        {"g", {r.g.real(), r.g.imag()}},
                        {"o_block_max", r.o_block_max},
                        {"o_block_zero", r.o_block_zero},
                        {"y_independent", r.y_independent},
                        {"f_positive", r.f_positive},
                        {"g_positive", r.g_positive},
                        {"nonvanishing", r.nonvanishing},
                        {"failures", r.failures}};
}

}  // namespace b2frame
