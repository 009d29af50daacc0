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

#include "b2frame/certify.hpp"

namespace b2frame {

std::string to_string(PieceStatus s) {
  switch (s) {
    case PieceStatus::StrictlyPositive:
      return "strictly-positive";
    case PieceStatus::StrictlyNegative:
      return "strictly-negative";
    case PieceStatus::VanishesAt:
      return "vanishes-at";
    case PieceStatus::IdenticallyZero:
      return "identically-zero";
  }
  return "unknown";
}

namespace {

template <class T>
std::string gamma3_case(const T& a) {
  const T third(T(1) / T(3));
  if (a <= T(2) / T(13)) return "Gamma3: a in (0, 2/13]";
  if (a < T(1) / T(5)) return "Gamma3: a in (2/13, 1/5)";
  if (a <= T(2) / T(9)) return "Gamma3: a in [1/5, 2/9]";
  if (a <= T(1) / T(4)) return "Gamma3: a in (2/9, 1/4]";
  if (a <= T(4) / T(15)) return "Gamma3: a in (1/4, 4/15]";
  if (a <= T(2) / T(7)) return "Gamma3: a in (4/15, 2/7]";
  if (a <= third) return "Gamma3: a in (2/7, 1/3]";
  if (a < T(2) / T(5)) return "Gamma3: a in (1/3, 2/5)";
  return "Gamma3: a in [2/5, 1/2)";
}


nlohmann::json root_json(const RootRecord& r) {
  nlohmann::json j{{"approx", r.approx}, {"lo", r.lo}, {"hi", r.hi}, {"exact", r.exact}};
  if (r.exact) j["value"] = r.exact_value;
  j["at_domain_endpoint"] = r.at_domain_endpoint;
  return j;
}

}  // namespace

std::string case_label(const LatticeParams& params) {
  if (regions::in_gamma3(params)) {
    return regions::with_scalars(params, [](const auto& a, const auto&) { return gamma3_case(a); });
  }
  if (regions::in_lambda3(params)) return "Lambda3";
  return "outside Gamma3 and Lambda3";
}

template <class T>
nlohmann::json certificate_to_json(const DetCertificate<T>& cert) {
  nlohmann::json j;
  if (cert.params) {
    j["params"] = {{"a", cert.params->a_string()}, {"b", cert.params->b_string()}};
  } else {
    j["params"] = nullptr;
  }
  j["mode"] = ScalarTraits<T>::exact ? "exact" : "float";
  j["domain"] = {scalar_json(cert.det.domain().lo), scalar_json(cert.det.domain().hi)};
  nlohmann::json part = nlohmann::json::array();
  for (const T& x : cert.det.breakpoints()) part.push_back(scalar_json(x));
  j["partition"] = part;
  nlohmann::json pieces = nlohmann::json::array();
  for (std::size_t p = 0; p < cert.det.piece_count(); ++p) {
    nlohmann::json pc;
    pc["lo"] = scalar_json(cert.det.piece_lo(p));
    pc["hi"] = scalar_json(cert.det.piece_hi(p));
    nlohmann::json coeffs = nlohmann::json::array();
    for (const T& c : cert.det.piece(p).coeffs()) coeffs.push_back(scalar_json(c));
    pc["coefficients"] = coeffs;
    pc["status"] = to_string(cert.statuses[p]);
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& r : cert.roots[p]) roots.push_back(root_json(r));
    pc["roots"] = roots;
    pieces.push_back(pc);
  }
  j["pieces"] = pieces;
  nlohmann::json ends = nlohmann::json::array();
  for (const auto& r : cert.endpoint_roots) ends.push_back(root_json(r));
  j["endpoint_roots"] = ends;
  j["interior_roots"] = cert.interior_roots;
  j["overall"] = cert.overall;
  j["certified"] = cert.certified;
  j["case_label"] = cert.case_label;
  return j;
}

template nlohmann::json certificate_to_json<Rational>(const DetCertificate<Rational>&);
template nlohmann::json certificate_to_json<double>(const DetCertificate<double>&);

Polynomial<Rational> left_closed_form(const Rational& a, const Rational& b) {
  using P = Polynomial<Rational>;
  Rational one_minus_b = 1 - b;
  P first = P::affine(Rational(2 - b), b);
  P second = P::affine(Rational(a * one_minus_b), one_minus_b);
  return Rational(4 * a / b) * (first * second);
}

Polynomial<Rational> right_closed_form(const Rational& a, const Rational& b) {
  using P = Polynomial<Rational>;
  P shift = P::affine(a, Rational(1));
  P tail = P::affine(Rational(1 - 2 / b + 2 * a), Rational(-1));
  return Rational(4 * a * (b - 1) / b) * (shift * tail);
}

ClosedFormReport check_closed_forms(const LatticeParams& params) {
  if (!params.is_exact()) throw PreconditionError("check_closed_forms: requires exact (rational) parameters");
  if (!regions::in_gamma3(params)) throw PreconditionError("check_closed_forms: (a, b) must lie in Gamma3");
  const Rational& a = params.a_exact();
  const Rational& b = params.b_exact();
  if (a > Rational(2, 13)) throw PreconditionError("check_closed_forms: requires a <= 2/13");
  auto g = build_G<Rational>(3, params);
  auto det = det_piecewise(reduce_to_block(g).D);
  ClosedFormReport rep;
  rep.split = 1 - 2 / b + a;
  const Polynomial<Rational> d1 = left_closed_form(a, b);
  const Polynomial<Rational> d2 = right_closed_form(a, b);
  rep.all_match = true;
  for (std::size_t p = 0; p < det.piece_count(); ++p) {
    ClosedFormSegment seg;
    seg.lo = det.piece_lo(p);
    seg.hi = det.piece_hi(p);
    const bool left = seg.hi <= rep.split;
    if (!left && seg.lo < rep.split) throw std::logic_error("check_closed_forms: piece straddles the split point");
    seg.name = left ? "left" : "right";
    seg.expected = left ? d1 : d2;
    seg.actual = det.piece(p);
    seg.difference = seg.actual - seg.expected;
    seg.match = seg.difference.is_zero();
    rep.all_match = rep.all_match && seg.match;
    rep.segments.push_back(std::move(seg));
  }
  return rep;
}

}  // namespace b2frame
