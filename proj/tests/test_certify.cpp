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

#include <doctest.h>

#include <cmath>
#include <random>

#include "b2frame/certify.hpp"
#include "sampling.hpp"

using namespace b2frame;
using b2frame::testing::frac;

namespace {

using PolyQ = Polynomial<Rational>;

PiecewisePoly<Rational> block_det(const LatticeParams& p) {
  return det_piecewise(reduce_to_block(build_G<Rational>(3, p)).D);
}

// Coefficients computed by the sympy oracle in tests/oracles/oracle.py.
PolyQ poly(std::initializer_list<Rational> c) { return PolyQ(std::vector<Rational>(c)); }

}  // namespace

TEST_CASE("det_piecewise at (1/10, 7/4) matches the symbolic oracle") {
  const auto p = LatticeParams::exact(frac(1, 10), frac(7, 4));
  auto det = block_det(p);
  REQUIRE(det.piece_count() == 2);
  CHECK(det.breakpoints()[0] == frac(-3, 70));  // 1 - 2/b + a
  CHECK(det.piece(0) == poly({frac(3, 1225), frac(51, 1225), frac(6, 35)}));
  CHECK(det.piece(1) == poly({frac(6, 6125), frac(-9, 1225), frac(-6, 35)}));
}

TEST_CASE("det_piecewise at (2/13, 26/15) is a single piece") {
  const auto p = LatticeParams::exact(frac(2, 13), frac(26, 15));
  auto det = block_det(p);
  REQUIRE(det.piece_count() == 1);
  CHECK(det.piece(0) == poly({frac(176, 28561), frac(176, 2197), frac(44, 169)}));
}

TEST_CASE("right-segment closed form matches; left-segment form is off by -1/b") {
  const Rational a = frac(1, 10), b = frac(7, 4);
  auto det = block_det(LatticeParams::exact(a, b));
  CHECK(det.piece(1) == right_closed_form(a, b));
  CHECK(det.piece(0) != left_closed_form(a, b));
  CHECK(det.piece(0) == left_closed_form(a, b) * Rational(-1 / b));
  // the printed left form is negative at x = -1/20, the determinant is positive
  CHECK(left_closed_form(a, b)(frac(-1, 20)) < 0);
  CHECK(det(frac(-1, 20)) > 0);
}

TEST_CASE("check_closed_forms reports per-segment matches") {
  auto rep = check_closed_forms(LatticeParams::exact(frac(1, 10), frac(7, 4)));
  REQUIRE(rep.segments.size() == 2);
  CHECK(rep.split == frac(-3, 70));
  CHECK(rep.segments[0].name == "left");
  CHECK_FALSE(rep.segments[0].match);
  CHECK_FALSE(rep.segments[0].difference.is_zero());
  CHECK(rep.segments[1].name == "right");
  CHECK(rep.segments[1].match);
  CHECK_FALSE(rep.all_match);

  auto edge = check_closed_forms(LatticeParams::exact(frac(2, 13), frac(26, 15)));
  REQUIRE(edge.segments.size() == 1);
  CHECK(edge.segments[0].name == "left");
}

TEST_CASE("check_closed_forms preconditions") {
  // b = 1.74 exceeds 2/(1+a) = 26/15 at a = 2/13
  CHECK_THROWS_AS(check_closed_forms(LatticeParams::exact(frac(2, 13), frac(87, 50))), PreconditionError);
  CHECK_THROWS_AS(check_closed_forms(LatticeParams::exact(frac(3, 10), frac(3, 2))), PreconditionError);
  CHECK_THROWS_AS(check_closed_forms(LatticeParams::floating(0.1, 1.75)), PreconditionError);
}

TEST_CASE("det_piecewise of the identity is 1") {
  Interval<Rational> dom{Rational(-1), Rational(0)};
  SmallMatrix<PiecewisePoly<Rational>> m(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = PiecewisePoly<Rational>::constant(dom, Rational(i == j ? 1 : 0));
  auto d = det_piecewise(m);
  REQUIRE(d.piece_count() == 1);
  CHECK(d.piece(0) == PolyQ::constant(Rational(1)));
}

TEST_CASE("det_piecewise degree is at most 4 and agrees with numeric determinants") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0, 1);
  for (const auto& sub : b2frame::testing::gamma3_subcases()) {
    auto p = b2frame::testing::sample_gamma3(rng, sub);
    auto pf = LatticeParams::floating(p.a(), p.b());
    auto g = build_G<double>(3, pf);
    auto det = det_piecewise(reduce_to_block(g).D);
    CHECK(det.max_degree() <= 4);
    auto exact = block_det(p);
    CHECK(exact.max_degree() <= 4);
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
      const double x = -pf.a() / 2 * u(rng);
      SmallMatrix<double> d = g.at(x).submatrix({0, 1, 2, 3}, {0, 1, 2, 3});
      const double ref = laplace_determinant(d, 0.0, 1.0);
      worst = std::max(worst, std::fabs(det(x) - ref) / std::max(std::fabs(ref), 1e-3));
    }
    CAPTURE(sub.name);
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("certify_nonvanishing on a Gamma3 and a Lambda3 point") {
  auto c1 = certify_block<Rational>(LatticeParams::exact(frac(3, 10), frac(3, 2)));
  CHECK(c1.overall);
  CHECK(c1.certified);
  CHECK(c1.interior_roots == 0);
  CHECK(c1.case_label == "Gamma3: a in (2/7, 1/3]");
  auto c2 = certify_block<Rational>(LatticeParams::exact(frac(3, 5), frac(23, 20)));
  CHECK(c2.overall);
  CHECK(c2.case_label == "Lambda3");
}

TEST_CASE("certify_nonvanishing: root at the domain endpoint") {
  Interval<Rational> dom{frac(-1, 10), Rational(0)};
  PiecewisePoly<Rational> det(dom, {}, {poly({Rational(0), Rational(1)})});
  auto c = certify_nonvanishing(det);
  CHECK(c.overall);
  CHECK(c.interior_roots == 0);
  REQUIRE(c.endpoint_roots.size() == 1);
  CHECK(c.endpoint_roots[0].exact);
  CHECK(c.endpoint_roots[0].exact_value == "0");
  CHECK(c.endpoint_roots[0].at_domain_endpoint);
}

TEST_CASE("certify_nonvanishing: interior root and zero piece") {
  Interval<Rational> dom{Rational(-1), Rational(0)};
  PiecewisePoly<Rational> det(dom, {}, {poly({frac(1, 2), Rational(1)})});
  auto c = certify_nonvanishing(det);
  CHECK_FALSE(c.overall);
  CHECK(c.interior_roots == 1);
  CHECK(c.statuses[0] == PieceStatus::VanishesAt);

  PiecewisePoly<Rational> z(dom, {frac(-1, 2)}, {PolyQ::constant(Rational(1)), PolyQ{}});
  auto cz = certify_nonvanishing(z);
  CHECK_FALSE(cz.overall);
  CHECK(cz.has_zero_piece);
  CHECK(cz.statuses[1] == PieceStatus::IdenticallyZero);
  CHECK(cz.statuses[0] == PieceStatus::StrictlyPositive);
}

TEST_CASE("certify_nonvanishing in float mode is not a certificate") {
  auto c = certify_block<double>(LatticeParams::floating(0.3, 1.5));
  CHECK(c.overall);
  CHECK_FALSE(c.certified);
  Interval<double> dom{-1, 0};
  PiecewisePoly<double> det(dom, {}, {Polynomial<double>{0.5, 1.0}});
  auto cf = certify_nonvanishing(det);
  CHECK_FALSE(cf.overall);
  REQUIRE(cf.roots[0].size() == 1);
  CHECK(cf.roots[0][0].approx == doctest::Approx(-0.5));
}

TEST_CASE("overall is equivalent to no interior root and no zero piece") {
  std::mt19937_64 rng(67);
  for (const auto& sub : b2frame::testing::gamma3_subcases()) {
    for (int t = 0; t < 4; ++t) {
      auto p = b2frame::testing::sample_gamma3(rng, sub);
      auto c = certify_block<Rational>(p);
      CHECK(c.overall == (c.interior_roots == 0 && !c.has_zero_piece));
      CHECK(c.case_label == "Gamma3: a in " + sub.name);
    }
  }
  for (int t = 0; t < 10; ++t) {
    auto p = b2frame::testing::sample_lambda3(rng);
    auto c = certify_block<Rational>(p);
    CHECK(c.overall == (c.interior_roots == 0 && !c.has_zero_piece));
    CHECK(c.overall);
  }
}

TEST_CASE("certificate partition contains every entry breakpoint") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    auto p = t % 2 ? b2frame::testing::sample_lambda3(rng)
                   : b2frame::testing::sample_gamma3(rng, b2frame::testing::gamma3_subcases()[t % 9]);
    auto blk = reduce_to_block(build_G<Rational>(3, p));
    auto c = certify_block<Rational>(p);
    const auto& part = c.det.breakpoints();
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        for (const auto& bp : blk.D(i, j).breakpoints()) CHECK(std::find(part.begin(), part.end(), bp) != part.end());
    // each partition point has the form +-k/b + j a + i
    const Rational a = p.a_exact(), b = p.b_exact();
    for (const auto& x : part) {
      bool found = false;
      for (int k = -2; k <= 2 && !found; ++k)
        for (int j = -2; j <= 2 && !found; ++j)
          for (int i = -1; i <= 1 && !found; ++i) found = x == Rational(k) / b + j * a + i;
      CHECK(found);
    }
  }
}

TEST_CASE("det G3 changes sign inside a thin part of Gamma3") {
  // Near the upper edge b = 2/(1+a) around a = 0.245 the determinant has a root
  // strictly inside [-a/2, 0]; found by the 100 x 100 sweep, confirmed with numpy.
  const auto p = LatticeParams::exact(frac(49, 200), frac(641, 400));
  REQUIRE(regions::in_gamma3(p));
  auto c = certify_block<Rational>(p);
  CHECK_FALSE(c.overall);
  CHECK(c.interior_roots == 1);
  REQUIRE(c.roots[0].size() == 1);
  CHECK(c.roots[0][0].approx == doctest::Approx(-0.120343168).epsilon(1e-8));
  CHECK(c.det(frac(-49, 400)) < 0);
  CHECK(c.det(Rational(0)) > 0);
}

TEST_CASE("case_label covers all nine a-ranges and Lambda3") {
  CHECK(case_label(LatticeParams::exact(frac(1, 10), frac(7, 4))) == "Gamma3: a in (0, 2/13]");
  CHECK(case_label(LatticeParams::exact(frac(2, 13), frac(26, 15))) == "Gamma3: a in (0, 2/13]");
  CHECK(case_label(LatticeParams::exact(frac(1, 5), frac(8, 5))) == "Gamma3: a in [1/5, 2/9]");
  CHECK(case_label(LatticeParams::exact(frac(1, 4), frac(3, 2))) == "Gamma3: a in (2/9, 1/4]");
  CHECK(case_label(LatticeParams::exact(frac(2, 5), frac(13, 10))) == "Gamma3: a in [2/5, 1/2)");
  CHECK(case_label(LatticeParams::exact(frac(3, 5), frac(23, 20))) == "Lambda3");
}

TEST_CASE("certificate JSON carries exact values") {
  auto c = certify_block<Rational>(LatticeParams::exact(frac(1, 10), frac(7, 4)));
  auto j = certificate_to_json(c);
  CHECK(j["overall"] == true);
  CHECK(j["mode"] == "exact");
  CHECK(j["params"]["a"] == "1/10");
  CHECK(j["partition"][0]["exact"] == "-3/70");
  CHECK(j["pieces"].size() == 2);
  CHECK(j["pieces"][0]["coefficients"][2]["exact"] == "6/35");
  CHECK(j["pieces"][0]["status"] == "strictly-positive");
}

TEST_CASE("certify_strip handles small strips") {
  std::mt19937_64 rng(73);
  for (int m = 1; m <= 3; ++m) {
    for (int t = 0; t < 5; ++t) {
      auto p = b2frame::testing::sample_t_strip(rng, m);
      auto c = certify_strip<Rational>(m, p);
      CAPTURE(m);
      CAPTURE(p.a_string());
      CAPTURE(p.b_string());
      CHECK(c.overall);
    }
  }
}

TEST_CASE("minor_report at (3/5, 23/20), x = -1/10") {
  auto r = minor_report(LatticeParams::exact(frac(3, 5), frac(23, 20)), frac(-1, 10));
  CHECK(r.d32 == frac(198273, 2433400));
  CHECK(r.d33 == frac(714531, 2433400));
  CHECK(r.d34 == frac(172473, 12167000));
  CHECK(r.det_d == frac(5663487, 24334000));
  CHECK(r.ok());
  CHECK(r.cofactor_identity);
  CHECK(r.d33_dominates);
  CHECK(r.d32_positive);
  CHECK(r.d34_nonnegative);
}

TEST_CASE("minor_report: D34 vanishes up to 1/b - 1 and the endpoint equality") {
  const auto p = LatticeParams::exact(frac(3, 5), frac(23, 20));
  // 1/b - 1 = -3/23
  auto r = minor_report(p, frac(-1, 5));
  CHECK(r.d34 == 0);
  CHECK(r.d34_zero_set);
  auto e = minor_report(p, frac(-3, 10));
  CHECK(e.b2_x == e.b2_x_plus_a);
  CHECK(e.ok());
}

TEST_CASE("minor_report holds on sampled Lambda3 points") {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 20; ++t) {
    auto p = b2frame::testing::sample_lambda3(rng);
    const Rational a = p.a_exact();
    for (int s = 0; s <= 10; ++s) {
      const Rational x = -a / 2 * frac(s, 10);
      auto r = minor_report(p, x);
      CAPTURE(p.a_string());
      CAPTURE(p.b_string());
      CAPTURE(x.get_str());
      CHECK(r.ok());
      CHECK(r.cofactor_identity);
    }
    auto rf = minor_report(LatticeParams::floating(p.a(), p.b()), -p.a() / 3);
    CHECK(rf.cofactor_identity);
  }
}

TEST_CASE("minor_report preconditions") {
  CHECK_THROWS_AS(minor_report(LatticeParams::exact(frac(3, 10), frac(3, 2)), frac(-1, 10)), PreconditionError);
  CHECK_THROWS_AS(minor_report(LatticeParams::exact(frac(3, 5), frac(23, 20)), frac(1, 10)), PreconditionError);
}

TEST_CASE("PieceStatus names") {
  CHECK(to_string(PieceStatus::StrictlyPositive) == "strictly-positive");
  CHECK(to_string(PieceStatus::StrictlyNegative) == "strictly-negative");
  CHECK(to_string(PieceStatus::VanishesAt) == "vanishes-at");
  CHECK(to_string(PieceStatus::IdenticallyZero) == "identically-zero");
}
