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

#include "b2frame/frameset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "b2frame/regions.hpp"

namespace b2frame {

std::string to_string(Label l) {
  switch (l) {
    case Label::Frame:
      return "Frame";
    case Label::NotFrame:
      return "NotFrame";
    case Label::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

bool RegionVerdict::has(const std::string& p) const {
  return std::find(provenance.begin(), provenance.end(), p) != provenance.end();
}

namespace {

template <class T>
bool is_integer_at_least_two(const T& b) {
  if constexpr (ScalarTraits<T>::exact) {
    return b.get_den() == 1 && b >= 2;
  } else {
    return b >= 2.0 - 1e-12 && std::fabs(b - std::round(b)) <= 1e-12;
  }
}

template <class T>
bool same_point(const T& a, const T& b, const Rational& a0, const Rational& b0) {
  if constexpr (ScalarTraits<T>::exact) {
    return a == a0 && b == b0;
  } else {
    return std::fabs(a - a0.get_d()) <= 1e-12 && std::fabs(b - b0.get_d()) <= 1e-12;
  }
}

// Specificity rank for choosing the primary provenance (higher wins).
int specificity(const std::string& p) {
  if (p.rfind("ZZ-special", 0) == 0) return 6;
  if (p == "Lambda3" || p == "Gamma3") return 5;
  if (p.size() > 1 && p[0] == 'T') return 4;
  if (p == "Prop2c") return 3;
  if (p == "Prop2d") return 2;
  return 1;
}

template <class T>
RegionVerdict classify_impl(const T& a, const T& b, int max_m) {
  RegionVerdict v;
  const T ab = a * b;
  v.witnesses.push_back({"ab", to_double(ab)});
  v.witnesses.push_back({"2/(2+a)", to_double(T(T(2) / (T(2) + a)))});
  v.witnesses.push_back({"4/(2+3a)", to_double(T(T(4) / (T(2) + T(3) * a)))});
  v.witnesses.push_back({"2/(1+a)", to_double(T(T(2) / (T(1) + a)))});
  v.witnesses.push_back({"6/(2+5a)", to_double(T(T(6) / (T(2) + T(5) * a)))});
  v.witnesses.push_back({"1/a", to_double(T(T(1) / a))});

  if (a >= T(2)) {
    v.label = Label::NotFrame;
    v.reason = "a >= 2: a = " + format_double(to_double(a));
  } else if (ab >= T(1)) {
    v.label = Label::NotFrame;
    v.reason = "ab >= 1: ab = " + format_double(to_double(ab));
  } else if (is_integer_at_least_two(b)) {
    v.label = Label::NotFrame;
    v.reason = "integer b with ab < 1: b = " + format_double(to_double(b));
  } else if (same_point(a, b, Rational(2, 7), Rational(7, 4))) {
    v.label = Label::NotFrame;
    v.reason = "known obstruction point (2/7, 7/4)";
  }

  v.strip = regions::find_strip(a, b);
  if (v.strip) {
    v.witnesses.push_back({"strip_lower", to_double(regions::strip_lower(*v.strip, a))});
    v.witnesses.push_back({"strip_upper", to_double(regions::strip_upper(*v.strip, a))});
  }

  std::vector<std::string> frames;
  if (a > T(0) && a < T(2) && b <= T(2) / (T(2) + a)) frames.push_back("Prop2b");
  if (a >= T(1) && a < T(2) && b < T(1) / a) frames.push_back("Prop2c");
  if (a > T(0) && a < T(2) && T(2) / (T(2) + a) < b && b <= T(4) / (T(2) + T(3) * a)) frames.push_back("Prop2d");
  for (int m = 1; m <= max_m; ++m) {
    if (regions::in_t_strip(m, a, b)) frames.push_back("T" + std::to_string(m));
  }
  if (regions::in_gamma3(a, b)) frames.push_back("Gamma3");
  if (regions::in_lambda3(a, b)) frames.push_back("Lambda3");
  if (same_point(a, b, Rational(1, 2), Rational(3, 2))) frames.push_back("ZZ-special(j=1)");
  if (same_point(a, b, Rational(3, 8), Rational(3, 2))) frames.push_back("ZZ-special(j=3)");

  if (v.label == Label::NotFrame) {
    if (!frames.empty()) {
      throw std::logic_error("classify: non-frame point (" + v.reason + ") matched frame region " + frames.front());
    }
    return v;
  }
  if (frames.empty()) {
    v.label = Label::Unknown;
    return v;
  }
  v.label = Label::Frame;
  v.provenance = frames;
  v.primary = *std::max_element(frames.begin(), frames.end(), [](const std::string& x, const std::string& y) {
    return specificity(x) < specificity(y);
  });
  return v;
}

}  // namespace

RegionVerdict classify(const LatticeParams& params, int max_m) {
  return regions::with_scalars(params, [max_m](const auto& a, const auto& b) { return classify_impl(a, b, max_m); });
}

std::optional<int> strip_index(const LatticeParams& params) {
  return regions::with_scalars(params, [](const auto& a, const auto& b) { return regions::find_strip(a, b); });
}

std::vector<BoundaryRow> region_boundaries(int m, const std::vector<double>& a_grid) {
  if (m < 1) throw PreconditionError("region_boundaries: m must be positive");
  std::vector<BoundaryRow> rows;
  rows.reserve(a_grid.size());
  for (double a : a_grid) {
    BoundaryRow r;
    r.a = a;
    r.strip_lower = regions::strip_lower(m, a);
    r.strip_upper = regions::strip_upper(m, a);
    r.gamma_lambda_lower = 4.0 / (2.0 + 3.0 * a);
    r.lambda_upper = 6.0 / (2.0 + 5.0 * a);
    r.gamma_upper = 2.0 / (1.0 + a);
    rows.push_back(r);
  }
  return rows;
}

nlohmann::json verdict_json(const LatticeParams& params, const RegionVerdict& v) {
  nlohmann::json j;
  j["a"] = params.a_string();
  j["b"] = params.b_string();
  j["label"] = to_string(v.label);
  j["provenance"] = v.provenance;
  j["primary"] = v.primary;
  j["reason"] = v.reason;
  j["strip"] = v.strip ? nlohmann::json(*v.strip) : nlohmann::json(nullptr);
  nlohmann::json w = nlohmann::json::object();
  for (const auto& [name, value] : v.witnesses) w[name] = value;
  j["witnesses"] = w;
  return j;
}

std::vector<SweepRow> sweep_classify(const Rational& a_lo, const Rational& a_hi, int na, const Rational& b_lo,
                                     const Rational& b_hi, int nb, int max_m) {
  if (na < 1 || nb < 1) throw PreconditionError("sweep: grid sizes must be positive");
  if (!(a_lo < a_hi) || !(b_lo < b_hi)) throw PreconditionError("sweep: empty range");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb));
  for (int i = 0; i < na; ++i) {
    Rational a = a_lo + (a_hi - a_lo) * Rational(2 * i + 1, 2 * na);
    a.canonicalize();
    for (int j = 0; j < nb; ++j) {
      Rational b = b_lo + (b_hi - b_lo) * Rational(2 * j + 1, 2 * nb);
      b.canonicalize();
      if (a <= 0 || b <= 0) throw PreconditionError("sweep: parameters must be positive");
      LatticeParams p = LatticeParams::exact(a, b);
      rows.push_back({p, classify(p, max_m)});
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "a,b,label,provenance\n";
  for (const auto& r : rows) {
    std::string prov;
    if (r.verdict.label == Label::NotFrame) {
      prov = r.verdict.reason;
    } else {
      for (std::size_t i = 0; i < r.verdict.provenance.size(); ++i) {
        if (i) prov += '|';
        prov += r.verdict.provenance[i];
      }
    }
    os << format_double(r.params.a()) << ',' << format_double(r.params.b()) << ',' << to_string(r.verdict.label) << ",\""
       << prov << "\"\n";
  }
}

}  // namespace b2frame
