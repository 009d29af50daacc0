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

#include "b2frame/scalar.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "b2frame/lattice.hpp"

namespace b2frame {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

// Unsigned decimal: digits[.digits][e[+-]digits]
Rational parse_decimal(std::string_view s, std::string_view whole) {
  std::string_view mant = s;
  long exp10 = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    mant = s.substr(0, epos);
    std::string_view es = s.substr(epos + 1);
    bool eneg = false;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      eneg = es[0] == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 6) {
      throw std::invalid_argument("invalid number: '" + std::string(whole) + "'");
    }
    exp10 = std::stol(std::string(es));
    if (eneg) exp10 = -exp10;
  }
  std::string digits;
  std::size_t dot = mant.find('.');
  std::string_view ip = mant.substr(0, dot);
  std::string_view fp = dot == std::string_view::npos ? std::string_view{} : mant.substr(dot + 1);
  if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
    throw std::invalid_argument("invalid number: '" + std::string(whole) + "'");
  }
  digits.append(ip);
  digits.append(fp);
  exp10 -= static_cast<long>(fp.size());
  Rational r(mpz_class(digits.empty() ? "0" : digits));
  r *= pow10(exp10);
  r.canonicalize();
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("invalid number: empty string");
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("invalid rational: '" + std::string(text) + "'");
    }
    mpz_class d{std::string(den)};
    if (d == 0) throw std::invalid_argument("invalid rational: zero denominator in '" + std::string(text) + "'");
    r = Rational(mpz_class(std::string(num)), d);
    r.canonicalize();
  } else {
    r = parse_decimal(s, text);
  }
  if (neg) r = -r;
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("rational_from_double: non-finite value");
  Rational r(v);  // mpq_set_d is exact
  return r;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string ScalarTraits<double>::format(double v) { return format_double(v); }

// ---------------------------------------------------------------------------

LatticeParams LatticeParams::exact(const Rational& a, const Rational& b) {
  if (sgn(a) <= 0 || sgn(b) <= 0) throw PreconditionError("lattice constants must be positive");
  LatticeParams p;
  p.a_exact_ = a;
  p.b_exact_ = b;
  p.a_ = a.get_d();
  p.b_ = b.get_d();
  Rational ab = a * b;
  if (ab.get_num().fits_slong_p() && ab.get_den().fits_slong_p()) {
    p.rational_form_ = RationalForm{ab.get_num().get_si(), ab.get_den().get_si()};
  }
  return p;
}

LatticeParams LatticeParams::floating(double a, double b, std::optional<RationalForm> ab) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw PreconditionError("lattice constants must be positive and finite");
  }
  if (ab) {
    if (ab->p <= 0 || ab->q <= 0) throw PreconditionError("rational form must be positive");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), mpz_class(static_cast<long>(ab->p)).get_mpz_t(),
            mpz_class(static_cast<long>(ab->q)).get_mpz_t());
    if (g != 1) throw PreconditionError("rational form p/q must be coprime");
    if (std::fabs(a * b - static_cast<double>(ab->p) / static_cast<double>(ab->q)) > 1e-12) {
      throw PreconditionError("rational form does not match ab to 1e-12");
    }
  }
  LatticeParams p;
  p.a_ = a;
  p.b_ = b;
  p.rational_form_ = ab;
  return p;
}

const Rational& LatticeParams::a_exact() const {
  if (!a_exact_) throw PreconditionError("exact value of a requested in float mode");
  return *a_exact_;
}

const Rational& LatticeParams::b_exact() const {
  if (!b_exact_) throw PreconditionError("exact value of b requested in float mode");
  return *b_exact_;
}

std::string LatticeParams::a_string() const { return a_exact_ ? to_string(*a_exact_) : format_double(a_); }
std::string LatticeParams::b_string() const { return b_exact_ ? to_string(*b_exact_) : format_double(b_); }

LatticeParams parse_lattice(std::string_view a, std::string_view b, bool force_float) {
  Rational ra = parse_rational(a);
  Rational rb = parse_rational(b);
  LatticeParams exact = LatticeParams::exact(ra, rb);
  if (!force_float) return exact;
  return LatticeParams::floating(exact.a(), exact.b(), exact.rational_form());
}

}  // namespace b2frame
