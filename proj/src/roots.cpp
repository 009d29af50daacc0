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

#include "b2frame/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace b2frame {

double RootBracket::approx() const {
  Rational mid = (lo + hi) / 2;
  return mid.get_d();
}

std::vector<Polynomial<Rational>> sturm_sequence(const Polynomial<Rational>& p) {
  std::vector<Polynomial<Rational>> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  Polynomial<Rational> d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    auto [q, r] = divmod(seq[seq.size() - 2], seq.back());
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

int sign_variations(const std::vector<Polynomial<Rational>>& seq, const Rational& x) {
  int count = 0;
  int prev = 0;
  for (const auto& s : seq) {
    int sg = sgn(s(x));
    if (sg == 0) continue;
    if (prev != 0 && sg != prev) ++count;
    prev = sg;
  }
  return count;
}

namespace {

// p / (x - r), p(r) == 0.
Polynomial<Rational> deflate(const Polynomial<Rational>& p, const Rational& r) {
  return divmod(p, Polynomial<Rational>::affine(-r, Rational(1))).first;
}

Polynomial<Rational> strip_root(Polynomial<Rational> p, const Rational& r) {
  while (!p.is_zero() && p.degree() > 0 && sgn(p(r)) == 0) p = deflate(p, r);
  return p;
}

// Distinct roots of p in the open interval (lo, hi); p(lo), p(hi) != 0.
void isolate_open(Polynomial<Rational> p, const Rational& lo, const Rational& hi, const Rational& width,
                  std::vector<RootBracket>& out) {
  auto seq = sturm_sequence(p);
  int n = sign_variations(seq, lo) - sign_variations(seq, hi);
  if (n <= 0) return;
  if (n == 1 && hi - lo <= width) {
    out.push_back({lo, hi, false});
    return;
  }
  Rational mid = (lo + hi) / 2;
  if (sgn(p(mid)) == 0) {
    out.push_back({mid, mid, true});
    p = strip_root(p, mid);
    isolate_open(p, lo, mid, width, out);
    isolate_open(p, mid, hi, width, out);
    return;
  }
  isolate_open(p, lo, mid, width, out);
  isolate_open(p, mid, hi, width, out);
}

}  // namespace

std::vector<RootBracket> isolate_real_roots(const Polynomial<Rational>& p, const Rational& lo, const Rational& hi,
                                            const Rational& width) {
  if (p.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
  if (hi < lo) throw std::invalid_argument("isolate_real_roots: empty interval");
  std::vector<RootBracket> out;
  Polynomial<Rational> q = p;
  if (sgn(q(lo)) == 0) {
    out.push_back({lo, lo, true});
    q = strip_root(q, lo);
  }
  if (hi != lo && sgn(q(hi)) == 0) {
    out.push_back({hi, hi, true});
    q = strip_root(q, hi);
  }
  if (lo < hi && q.degree() > 0) isolate_open(q, lo, hi, width, out);
  std::sort(out.begin(), out.end(), [](const RootBracket& u, const RootBracket& v) { return u.lo < v.lo; });
  return out;
}

std::vector<double> companion_real_roots(const Polynomial<double>& p, double lo, double hi, double tol) {
  if (p.is_zero()) throw std::invalid_argument("companion_real_roots: zero polynomial");
  std::vector<double> out;
  // Leading coefficients left over from cancellation (|c_n| r^n at rounding
  // level on the interval) would put a spurious eigenvalue near the roots.
  std::vector<double> c = p.coeffs();
  const double r = std::max(std::fabs(lo), std::fabs(hi));
  auto weight = [&](std::size_t i) { return std::fabs(c[i]) * std::pow(r, static_cast<double>(i)); };
  double total = 0;
  for (std::size_t i = 0; i < c.size(); ++i) total += weight(i);
  while (c.size() > 1 && weight(c.size() - 1) <= 64 * std::numeric_limits<double>::epsilon() * total) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return out;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  for (int i = 0; i < n; ++i) {
    std::complex<double> z = es.eigenvalues()[i];
    double scale = std::max(1.0, std::abs(z.real()));
    if (std::abs(z.imag()) > tol * scale) continue;
    if (z.real() < lo - tol || z.real() > hi + tol) continue;
    out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace b2frame
