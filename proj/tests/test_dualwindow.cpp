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
#include <sstream>

#include "b2frame/dualwindow.hpp"
#include "sampling.hpp"

using namespace b2frame;
using b2frame::testing::frac;

namespace {

std::vector<Rational> solve_at(int m, const Rational& a, const Rational& b, const Rational& x) {
  return solve_dual_at(x, build_G<Rational>(m, LatticeParams::exact(a, b)));
}

}  // namespace

// Reference vectors below come from sympy LUsolve in tests/oracles/oracle.py.

TEST_CASE("solve_dual_at at (3/10, 3/2)") {
  const Rational a = frac(3, 10), b = frac(3, 2);
  CHECK(solve_at(3, a, b, frac(-1, 10)) ==
        std::vector<Rational>{frac(675, 674), frac(-7425, 1348), frac(2760, 337), frac(-2415, 674), Rational(0)});
  CHECK(solve_at(3, a, b, frac(-1, 20)) ==
        std::vector<Rational>{frac(3, 17), frac(-57, 17), frac(105, 17), Rational(-3), Rational(0)});
}

TEST_CASE("solve_dual_at at (1/4, 3/2)") {
  CHECK(solve_at(3, frac(1, 4), frac(3, 2), frac(-1, 16)) ==
        std::vector<Rational>{Rational(0), Rational(-4), Rational(8), Rational(-4), Rational(0)});
}

TEST_CASE("solve_dual_at for m = 1 and m = 2") {
  CHECK(solve_at(1, frac(1, 2), frac(3, 4), Rational(0)) == std::vector<Rational>{frac(3, 4)});
  CHECK(solve_at(1, frac(1, 2), frac(3, 4), frac(-1, 5)) == std::vector<Rational>{frac(15, 16)});
  CHECK(solve_at(2, frac(1, 2), frac(9, 10), frac(-1, 8)) ==
        std::vector<Rational>{frac(-9, 320), frac(333, 320), Rational(0)});
}

TEST_CASE("solve_dual_at preconditions") {
  auto g = build_G<Rational>(3, LatticeParams::exact(frac(3, 10), frac(3, 2)));
  CHECK_THROWS_AS(solve_dual_at(frac(-3, 20), g), PreconditionError);
  CHECK_THROWS_AS(solve_dual_at(frac(1, 100), g), PreconditionError);
}

TEST_CASE("solve_linear reports singular systems") {
  SmallMatrix<Rational> s(2, 2);
  s(0, 0) = 1;
  s(0, 1) = 2;
  s(1, 0) = 2;
  s(1, 1) = 4;
  CHECK_THROWS_AS(solve_linear(s, std::vector<Rational>{Rational(1), Rational(0)}), SingularSystemError);
  SmallMatrix<double> sf(2, 2);
  sf(0, 0) = 1;
  sf(0, 1) = 2;
  sf(1, 0) = 2;
  sf(1, 1) = 4;
  CHECK_THROWS_AS(solve_linear(sf, std::vector<double>{1.0, 0.0}), SingularSystemError);
}

TEST_CASE("Cramer formulas agree with the linear solve on Gamma3") {
  std::mt19937_64 rng(83);
  for (const auto& sub : b2frame::testing::gamma3_subcases()) {
    for (int t = 0; t < 3; ++t) {
      auto p = b2frame::testing::sample_gamma3(rng, sub);
      if (!certify_block<Rational>(p).overall) continue;  // sliver points
      auto g = build_G<Rational>(3, p);
      const Rational a = p.a_exact();
      for (int s = 0; s < 10; ++s) {
        const Rational x = -a / 2 * frac(s, 10);
        auto v = solve_dual_at(x, g);
        CAPTURE(p.a_string());
        CAPTURE(p.b_string());
        CHECK(cramer_h(x, g) == v[2]);
        CHECK(cramer_h_shifted(x, g) == v[3]);
      }
    }
  }
}

TEST_CASE("Cramer formulas in float mode") {
  auto g = build_G<double>(3, LatticeParams::floating(0.3, 1.5));
  CHECK(cramer_h(-0.1, g) == doctest::Approx(2760.0 / 337).epsilon(1e-12));
  CHECK(cramer_h_shifted(-0.1, g) == doctest::Approx(-2415.0 / 674).epsilon(1e-12));
  CHECK_THROWS_AS(cramer_h(0.1, g), PreconditionError);
  auto g2 = build_G<double>(2, LatticeParams::floating(0.5, 0.9));
  CHECK_THROWS_AS(cramer_h(-0.1, g2), PreconditionError);
}

TEST_CASE("build_dual at (3/10, 3/2): values, support and jumps") {
  auto h = build_dual<Rational>(3, LatticeParams::exact(frac(3, 10), frac(3, 2)), 64);
  CHECK(h.support_radius == frac(3, 4));
  CHECK(h.certificate.overall);
  CHECK(h(frac(-1, 10)) == frac(2760, 337));
  CHECK(h(frac(-1, 10) + frac(3, 10)) == frac(-2415, 674));
  CHECK(h(frac(-1, 10) - frac(6, 10)) == frac(675, 674));
  CHECK(h(frac(1, 10)) == frac(2760, 337));
  CHECK(h.left_limit(frac(-3, 4)) == 0);
  CHECK(h(frac(-3, 4)) == h.discontinuities[0].right);
  CHECK(h(frac(-3, 4)) != 0);
  CHECK(h(frac(3, 4)) == 0);
  CHECK(h(Rational(1)) == 0);

  std::vector<Rational> locs;
  for (const auto& d : h.discontinuities) locs.push_back(d.location);
  CHECK(locs == std::vector<Rational>{frac(-3, 4), frac(-9, 20), frac(-3, 20), frac(3, 20), frac(9, 20), frac(3, 4)});
  const auto& at = h.discontinuities[2];
  CHECK(at.left == frac(-4345, 1149));
  CHECK(at.right == frac(11455, 1149));
  CHECK(at.jump() == frac(11455 + 4345, 1149));
  // mirrored jump
  CHECK(h.discontinuities[3].left == frac(11455, 1149));
  CHECK(h.discontinuities[3].right == frac(-4345, 1149));
}

TEST_CASE("build_dual: h vanishes on (3a/2, 2a)") {
  std::mt19937_64 rng(89);
  for (int t = 0; t < 10; ++t) {
    auto p = b2frame::testing::sample_gamma3(rng, b2frame::testing::gamma3_subcases()[t % 9]);
    if (!certify_block<Rational>(p).overall) continue;
    auto h = build_dual<Rational>(3, p, 8);
    const Rational a = p.a_exact();
    for (int s = 1; s < 10; ++s) {
      const Rational x = 3 * a / 2 + a / 2 * frac(s, 10);
      CHECK(h(x) == 0);
      CHECK(h(Rational(-x)) == 0);
    }
  }
}

TEST_CASE("build_dual: h is even away from jumps and matches pointwise solves") {
  std::mt19937_64 rng(97);
  for (int t = 0; t < 12; ++t) {
    auto p = t % 3 ? b2frame::testing::sample_gamma3(rng, b2frame::testing::gamma3_subcases()[t % 9])
                   : b2frame::testing::sample_lambda3(rng);
    if (!certify_block<Rational>(p).overall) continue;
    auto h = build_dual<Rational>(3, p, 8);
    auto g = build_G<Rational>(3, p);
    const Rational a = p.a_exact();
    for (int s = 1; s < 10; ++s) {
      const Rational x = -a / 2 * frac(s, 10);
      auto v = solve_dual_at(x, g);
      for (int k = -2; k <= 2; ++k) {
        const Rational t_k = x + k * a;
        CHECK(h(t_k) == v[k + 2]);
        CHECK(h(Rational(-t_k)) == v[k + 2]);
      }
    }
  }
}

TEST_CASE("build_dual for m = 1 is b / B2 on [-a/2, a/2]") {
  auto h = build_dual<Rational>(1, LatticeParams::exact(frac(1, 2), frac(3, 4)), 16);
  CHECK(h.support_radius == frac(1, 4));
  CHECK(h(Rational(0)) == frac(3, 4));
  CHECK(h(frac(-1, 5)) == frac(15, 16));
  CHECK(h(frac(1, 5)) == frac(15, 16));
  CHECK(h(frac(1, 2)) == 0);
  REQUIRE(h.discontinuities.size() == 2);
  CHECK(h.discontinuities[0].location == frac(-1, 4));
  CHECK(h.discontinuities[0].right == 1);
}

TEST_CASE("build_dual for m = 2") {
  auto h = build_dual<Rational>(2, LatticeParams::exact(frac(1, 2), frac(9, 10)), 16);
  CHECK(h.support_radius == frac(3, 4));
  CHECK(h(frac(-1, 8)) == frac(333, 320));
  CHECK(h(frac(-5, 8)) == frac(-9, 320));
  CHECK(h(frac(3, 8)) == 0);
  CHECK(h(frac(5, 8)) == frac(-9, 320));
}

TEST_CASE("build_dual float mode tracks exact mode") {
  auto he = build_dual<Rational>(3, LatticeParams::exact(frac(3, 10), frac(3, 2)), 128);
  auto hf = build_dual<double>(3, LatticeParams::floating(0.3, 1.5), 128);
  REQUIRE(he.samples.size() == hf.samples.size());
  CHECK_FALSE(hf.certificate.certified);
  for (std::size_t i = 0; i < he.samples.size(); ++i) {
    CHECK(hf.samples[i].x == he.samples[i].x);
    CHECK(hf.samples[i].h == doctest::Approx(he.samples[i].h).epsilon(1e-10));
    CHECK(hf.samples[i].piece == he.samples[i].piece);
  }
  CHECK(hf.discontinuities.size() == he.discontinuities.size());
}

TEST_CASE("build_dual preconditions") {
  CHECK_THROWS_AS(build_dual<Rational>(3, LatticeParams::exact(frac(3, 10), frac(3, 2)), 0), PreconditionError);
  CHECK_THROWS_AS(build_dual<double>(6, LatticeParams::floating(0.9, 1.05), 8), PreconditionError);
  CHECK_THROWS_AS(build_dual<Rational>(3, LatticeParams::exact(frac(49, 200), frac(641, 400)), 8),
                  SingularSystemError);
}

TEST_CASE("dual CSV and JSON") {
  auto h = build_dual<Rational>(3, LatticeParams::exact(frac(3, 10), frac(3, 2)), 4);
  std::ostringstream os;
  write_dual_csv(os, h);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "x,h,piece_index,is_discontinuity_adjacent");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 4);
  CHECK(h.samples[0].x == doctest::Approx(-0.5625));

  auto j = dual_json(h);
  CHECK(j["m"] == 3);
  CHECK(j["mode"] == "exact");
  CHECK(j["support_radius"]["exact"] == "3/4");
  CHECK(j["discontinuities"].size() == 6);
  CHECK(j["discontinuities"][2]["left"]["exact"] == "-4345/1149");
  CHECK(j["det_certified_nonvanishing"] == true);
}

TEST_CASE("rational_limit cancels a common root") {
  using P = Polynomial<Rational>;
  // (x^2 - 1) / (x - 1) at 1 is 2
  P num(std::vector<Rational>{Rational(-1), Rational(0), Rational(1)});
  P den(std::vector<Rational>{Rational(-1), Rational(1)});
  CHECK(rational_limit(num, den, Rational(1)) == 2);
  CHECK(rational_limit(num, den, Rational(3)) == 4);
}

TEST_CASE("discontinuity_report on Gamma3: jumps at +-a/2 match the minor formulas") {
  std::mt19937_64 rng(149);
  auto subs = b2frame::testing::gamma3_subcases();
  for (int t = 0; t < 18; ++t) {
    auto pe = b2frame::testing::sample_gamma3(rng, subs[static_cast<std::size_t>(t) % subs.size()]);
    if (!certify_block<Rational>(pe).overall) continue;
    auto h = build_dual<Rational>(3, pe, 4);
    const Rational half = pe.a_exact() / 2;
    auto g = build_G<Rational>(3, pe);
    bool left_found = false, right_found = false;
    for (const auto& d : discontinuity_report(h)) {
      CHECK(d.left != d.right);
      if (d.location == -half) {
        left_found = true;
        CHECK(d.right == cramer_h(Rational(-half), g));
        CHECK(d.left == cramer_h_shifted(Rational(-half), g));
      }
      if (d.location == half) right_found = true;
    }
    CAPTURE(pe.a_string());
    CAPTURE(pe.b_string());
    CHECK(left_found);
    CHECK(right_found);
  }
}

TEST_CASE("discontinuity_report in float mode uses a 1e-8 threshold") {
  auto he = build_dual<Rational>(3, LatticeParams::exact(frac(3, 10), frac(3, 2)), 4);
  auto hf = build_dual<double>(3, LatticeParams::floating(0.3, 1.5), 4);
  auto de = discontinuity_report(he);
  auto df = discontinuity_report(hf);
  REQUIRE(de.size() == df.size());
  for (std::size_t i = 0; i < de.size(); ++i) {
    CHECK(df[i].location == doctest::Approx(de[i].location.get_d()).epsilon(1e-14));
    CHECK(df[i].jump() == doctest::Approx(de[i].jump().get_d()).epsilon(1e-10));
    CHECK(std::fabs(df[i].jump()) > 1e-8);
  }
}
