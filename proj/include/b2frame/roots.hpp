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

#include <vector>

#include "b2frame/polynomial.hpp"
#include "b2frame/scalar.hpp"

namespace b2frame {

/// A real root located in [lo, hi]. When `exact` is set, lo == hi is the root.
struct RootBracket {
  Rational lo;
  Rational hi;
  bool exact = false;
  double approx() const;
};

/// Sturm sequence p, p', -rem(p, p'), ...
std::vector<Polynomial<Rational>> sturm_sequence(const Polynomial<Rational>& p);

/// Number of sign changes of the sequence at x (zeros skipped).
int sign_variations(const std::vector<Polynomial<Rational>>& seq, const Rational& x);

/// Isolates every distinct real root of a nonzero p in the closed interval
/// [lo, hi]; brackets are refined by bisection until narrower than `width`.
/// Results are sorted and disjoint.
std::vector<RootBracket> isolate_real_roots(const Polynomial<Rational>& p, const Rational& lo, const Rational& hi,
                                            const Rational& width);

/// Real roots of a nonzero p in [lo - tol, hi + tol] via eigenvalues of the
/// companion matrix; eigenvalues with |imag| > tol are discarded.
std::vector<double> companion_real_roots(const Polynomial<double>& p, double lo, double hi, double tol);

}  // namespace b2frame
