// Copyright 2026 The qsym Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Literal set-definition quantiles, evaluated by scanning.
//
// Nothing here calls into quantile.hpp; the only shared primitive is
// dist_fn. Every distribution function of the model is affine on each open
// cell between consecutive breakpoints, so the set {x : F(x) R p} is a union
// of candidate points and open intervals between consecutive candidates once
// the candidates include the breakpoints and each cell's solution of F(x) = p.
// Membership of an open interval is then decided by its midpoint.

#pragma once

#include <algorithm>
#include <string_view>
#include <vector>

#include "qsym/distribution.hpp"
#include "qsym/extended_real.hpp"
#include "qsym/probability.hpp"

namespace qsym::verify {

/// The six set definitions of the one-sided quantiles.
enum class QuantileVariant {
  kLqClosedInf,  // inf{x : P(X <= x) >= p}
  kLqOpenInf,    // inf{x : P(X <  x) >= p}
  kLqClosedSup,  // sup{x : P(X <= x) <  p}
  kRqClosedInf,  // inf{x : P(X <= x) >  p}
  kRqOpenInf,    // inf{x : P(X <  x) >  p}
  kRqClosedSup,  // sup{x : P(X <= x) <= p}
};

inline constexpr QuantileVariant kLeftVariants[] = {QuantileVariant::kLqClosedInf, QuantileVariant::kLqOpenInf,
                                                    QuantileVariant::kLqClosedSup};
inline constexpr QuantileVariant kRightVariants[] = {QuantileVariant::kRqClosedInf, QuantileVariant::kRqOpenInf,
                                                     QuantileVariant::kRqClosedSup};

constexpr std::string_view to_string(QuantileVariant v) {
  switch (v) {
    case QuantileVariant::kLqClosedInf: return "LQ_CLOSED_INF";
    case QuantileVariant::kLqOpenInf: return "LQ_OPEN_INF";
    case QuantileVariant::kLqClosedSup: return "LQ_CLOSED_SUP";
    case QuantileVariant::kRqClosedInf: return "RQ_CLOSED_INF";
    case QuantileVariant::kRqOpenInf: return "RQ_OPEN_INF";
    case QuantileVariant::kRqClosedSup: return "RQ_CLOSED_SUP";
  }
  return "?";
}

namespace detail {

struct VariantSpec {
  DistFnFlavor flavor;
  bool take_sup;
  bool (*member)(const Real& f, const Real& p);
};

inline VariantSpec spec_of(QuantileVariant v) {
  switch (v) {
    case QuantileVariant::kLqClosedInf:
      return {DistFnFlavor::kLeftClosed, false, [](const Real& f, const Real& p) { return f >= p; }};
    case QuantileVariant::kLqOpenInf:
      return {DistFnFlavor::kLeftOpen, false, [](const Real& f, const Real& p) { return f >= p; }};
    case QuantileVariant::kLqClosedSup:
      return {DistFnFlavor::kLeftClosed, true, [](const Real& f, const Real& p) { return f < p; }};
    case QuantileVariant::kRqClosedInf:
      return {DistFnFlavor::kLeftClosed, false, [](const Real& f, const Real& p) { return f > p; }};
    case QuantileVariant::kRqOpenInf:
      return {DistFnFlavor::kLeftOpen, false, [](const Real& f, const Real& p) { return f > p; }};
    case QuantileVariant::kRqClosedSup:
      return {DistFnFlavor::kLeftClosed, true, [](const Real& f, const Real& p) { return f <= p; }};
  }
  return {DistFnFlavor::kLeftClosed, false, nullptr};
}

// Breakpoints straight from the atoms and segments.
inline std::vector<Real> raw_breakpoints(const MixtureDistribution& d) {
  std::vector<Real> pts;
  for (const auto& a : d.atoms()) pts.push_back(a.location);
  for (const auto& s : d.segments()) {
    pts.push_back(s.lo);
    pts.push_back(s.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace detail

/// Candidate points of the scan for level p under `flavor`: breakpoints plus,
/// per cell, the solution of F(x) = p when F is not constant on the cell.
inline std::vector<Real> scan_candidates(const MixtureDistribution& d, DistFnFlavor flavor, const Real& p) {
  auto pts = detail::raw_breakpoints(d);
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Real t1 = pts[i] + (pts[i + 1] - pts[i]) / 4;
    const Real t2 = pts[i] + 3 * (pts[i + 1] - pts[i]) / 4;
    const Real f1 = dist_fn(d, flavor, ExtendedReal(t1)).value();
    const Real f2 = dist_fn(d, flavor, ExtendedReal(t2)).value();
    if (f1 == f2) continue;
    const Real x = t1 + (p - f1) * (t2 - t1) / (f2 - f1);
    if (pts[i] < x && x < pts[i + 1]) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// Evaluates the set definition named by `v` at level p by scanning.
inline ExtendedReal quantile_by_definition(const MixtureDistribution& d, const Probability& p, QuantileVariant v) {
  const auto spec = detail::spec_of(v);
  const Real& level = p.value();
  const auto c = scan_candidates(d, spec.flavor, level);
  auto in_set = [&](const Real& x) { return spec.member(dist_fn(d, spec.flavor, ExtendedReal(x)).value(), level); };

  // Pieces of the line in ascending order: (-inf, c0), c0, (c0, c1), c1, ..., (c_last, +inf).
  const std::size_t n = c.size();
  std::vector<bool> point_in(n);
  std::vector<bool> gap_in(n + 1);  // gap_in[i] is the open interval ending at c[i]
  gap_in[0] = in_set(Real(c.front() - 1));
  gap_in[n] = in_set(Real(c.back() + 1));
  for (std::size_t i = 0; i < n; ++i) {
    point_in[i] = in_set(c[i]);
    if (i > 0) gap_in[i] = in_set(Real((c[i - 1] + c[i]) / 2));
  }

  if (!spec.take_sup) {
    if (gap_in[0]) return ExtendedReal::neg_inf();
    for (std::size_t i = 0; i < n; ++i) {
      if (point_in[i] || gap_in[i + 1]) return ExtendedReal(c[i]);
    }
    return ExtendedReal::pos_inf();  // empty set
  }
  if (gap_in[n]) return ExtendedReal::pos_inf();
  for (std::size_t i = n; i-- > 0;) {
    if (point_in[i] || gap_in[i]) return ExtendedReal(c[i]);
  }
  return ExtendedReal::neg_inf();  // empty set
}

}  // namespace qsym::verify
