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

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "b2frame/scalar.hpp"

namespace b2frame {

/// Dense univariate polynomial, coefficients in ascending degree order.
/// Trailing exact zeros are trimmed, so the zero polynomial has no
/// coefficients and degree -1.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const T& v) { return Polynomial(std::vector<T>{v}); }
  /// alpha + beta * x
  static Polynomial affine(const T& alpha, const T& beta) {
    return Polynomial(std::vector<T>{alpha, beta});
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }

  /// Coefficient of x^i (zero beyond the degree).
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }

  T operator()(const T& x) const {
    T acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * x + c_[i];
    }
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  /// p(alpha + beta * t) as a polynomial in t.
  Polynomial compose_affine(const T& alpha, const T& beta) const {
    Polynomial inner = affine(alpha, beta);
    Polynomial out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      out = out * inner + constant(c_[i]);
    }
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator-(Polynomial p) {
    for (auto& v : p.c_) v = -v;
    return p;
  }
  friend Polynomial operator*(Polynomial p, const T& s) { return p *= s; }
  friend Polynomial operator*(const T& s, Polynomial p) { return p *= s; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<T> r(p.c_.size() + q.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i) {
      for (std::size_t j = 0; j < q.c_.size(); ++j) r[i + j] += p.c_[i] * q.c_[j];
    }
    return Polynomial(std::move(r));
  }
  friend bool operator==(const Polynomial& p, const Polynomial& q) { return p.c_ == q.c_; }
  friend bool operator!=(const Polynomial& p, const Polynomial& q) { return !(p == q); }

  /// Euclidean division; divisor must be nonzero. Returns {quotient, remainder}.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<T> rem = num.c_;
    const int dd = den.degree();
    if (num.degree() < dd) return {Polynomial{}, num};
    std::vector<T> quot(static_cast<std::size_t>(num.degree() - dd + 1), T(0));
    const T& lead = den.c_.back();
    for (int i = num.degree(); i >= dd; --i) {
      T f = rem[static_cast<std::size_t>(i)] / lead;
      quot[static_cast<std::size_t>(i - dd)] = f;
      for (int j = 0; j <= dd; ++j) {
        rem[static_cast<std::size_t>(i - dd + j)] -= f * den.c_[static_cast<std::size_t>(j)];
      }
      rem[static_cast<std::size_t>(i)] = T(0);
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += " + ";
      s += "(" + ScalarTraits<T>::format(c_[i]) + ")";
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && ScalarTraits<T>::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

}  // namespace b2frame
