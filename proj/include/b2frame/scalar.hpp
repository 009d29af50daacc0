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
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace b2frame {

/// Exact rational scalar. Used whenever the lattice constants are rational.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal literal ("0.3", "-1.25e-2") into an
/// exact rational. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

/// Exact rational value of a finite double.
Rational rational_from_double(double v);

// Scalar traits: the two coefficient modes share every algorithm through
// these few hooks.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static double to_double(const Rational& v) { return v.get_d(); }
  static Rational from_rational(const Rational& v) { return v; }
  static Rational from_int(long v) { return Rational(v); }
  static int sign(const Rational& v) { return sgn(v); }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static Rational abs(const Rational& v) { return Rational(::abs(v)); }
  static std::string format(const Rational& v) { return to_string(v); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double to_double(double v) { return v; }
  static double from_rational(const Rational& v) { return v.get_d(); }
  static double from_int(long v) { return static_cast<double>(v); }
  static int sign(double v) { return (v > 0.0) - (v < 0.0); }
  static bool is_zero(double v) { return v == 0.0; }
  static double abs(double v) { return std::fabs(v); }
  static std::string format(double v);
};

template <class T>
double to_double(const T& v) {
  return ScalarTraits<T>::to_double(v);
}

template <class T>
int sign_of(const T& v) {
  return ScalarTraits<T>::sign(v);
}

template <class T>
T abs_of(const T& v) {
  return ScalarTraits<T>::abs(v);
}

/// Formats a double with 17 significant digits (round-trip safe).
std::string format_double(double v);

/// Tolerance used to merge near-coincident breakpoints in float mode.
inline constexpr double kBreakpointMergeTol = 1e-14;

}  // namespace b2frame
