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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "b2frame/scalar.hpp"

namespace b2frame {

/// Violated operation precondition (bad region, bad parameters).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// ab = p/q with gcd(p, q) = 1.
struct RationalForm {
  std::int64_t p = 0;
  std::int64_t q = 1;
};

/// Lattice constants (a, b): time shift a, frequency shift b.
class LatticeParams {
 public:
  /// Exact mode. a, b > 0.
  static LatticeParams exact(const Rational& a, const Rational& b);
  /// Float mode; an optional rational form of ab is checked to 1e-12.
  static LatticeParams floating(double a, double b, std::optional<RationalForm> ab = std::nullopt);

  double a() const { return a_; }
  double b() const { return b_; }
  bool is_exact() const { return a_exact_.has_value(); }
  const Rational& a_exact() const;
  const Rational& b_exact() const;
  const std::optional<RationalForm>& rational_form() const { return rational_form_; }

  /// a and b in the requested scalar type (Rational requires exact mode).
  template <class T>
  T a_as() const;
  template <class T>
  T b_as() const;

  std::string a_string() const;
  std::string b_string() const;

 private:
  double a_ = 0;
  double b_ = 0;
  std::optional<Rational> a_exact_;
  std::optional<Rational> b_exact_;
  std::optional<RationalForm> rational_form_;
};

template <>
inline Rational LatticeParams::a_as<Rational>() const {
  return a_exact();
}
template <>
inline Rational LatticeParams::b_as<Rational>() const {
  return b_exact();
}
template <>
inline double LatticeParams::a_as<double>() const {
  return a_;
}
template <>
inline double LatticeParams::b_as<double>() const {
  return b_;
}

/// Parses both constants with parse_rational; exact mode unless `force_float`.
LatticeParams parse_lattice(std::string_view a, std::string_view b, bool force_float = false);

}  // namespace b2frame
