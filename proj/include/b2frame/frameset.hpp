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

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "b2frame/lattice.hpp"

namespace b2frame {

enum class Label { Frame, NotFrame, Unknown };

std::string to_string(Label l);

/// Classification of (a, b) against the known frame and non-frame regions.
struct RegionVerdict {
  Label label = Label::Unknown;
  std::string reason;                   ///< NotFrame only, e.g. "ab >= 1: ab = 1.25"
  std::vector<std::string> provenance;  ///< every matching frame region, in evaluation order
  std::string primary;                  ///< most specific provenance
  std::vector<std::pair<std::string, double>> witnesses;
  std::optional<int> strip;             ///< m of the strip containing (a, b)

  bool has(const std::string& p) const;
};

inline constexpr int kDefaultMaxStrip = 64;

RegionVerdict classify(const LatticeParams& params, int max_m = kDefaultMaxStrip);

/// The unique m >= 1 with 2(m-1)/(2+(2m-3)a) < b <= 2m/(2+(2m-1)a), if any.
std::optional<int> strip_index(const LatticeParams& params);

struct BoundaryRow {
  double a = 0;
  double strip_lower = 0;
  double strip_upper = 0;
  double gamma_lambda_lower = 0;  ///< 4/(2+3a)
  double lambda_upper = 0;        ///< 6/(2+5a)
  double gamma_upper = 0;         ///< 2/(1+a)
};

std::vector<BoundaryRow> region_boundaries(int m, const std::vector<double>& a_grid);

nlohmann::json verdict_json(const LatticeParams& params, const RegionVerdict& v);

struct SweepRow {
  LatticeParams params;
  RegionVerdict verdict;
};

/// Cell midpoints of an na x nb grid over [a_lo, a_hi] x [b_lo, b_hi], in
/// exact arithmetic. Rows are ordered by a, then b.
std::vector<SweepRow> sweep_classify(const Rational& a_lo, const Rational& a_hi, int na, const Rational& b_lo,
                                     const Rational& b_hi, int nb, int max_m = kDefaultMaxStrip);

/// CSV with header a,b,label,provenance.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace b2frame
