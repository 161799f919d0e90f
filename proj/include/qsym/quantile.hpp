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

#pragma once

#include <vector>

#include "qsym/distribution.hpp"
#include "qsym/error.hpp"
#include "qsym/extended_real.hpp"
#include "qsym/probability.hpp"

namespace qsym {

namespace detail {

// Cumulative distribution sampled at each breakpoint b: below = P(X < b),
// upto = P(X <= b). Between consecutive knots the distribution function rises
// affinely from upto[i-1] to below[i].
struct CdfKnot {
  Real at;
  Real below;
  Real upto;
};

inline std::vector<CdfKnot> cdf_knots(const MixtureDistribution& d) {
  const auto& bp = d.breakpoints();
  const auto& atoms = d.atoms();
  const auto& segs = d.segments();
  std::vector<CdfKnot> knots;
  knots.reserve(bp.size());

  Real running(0);
  std::size_t next_atom = 0;
  std::size_t seg = 0;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    if (i > 0) {
      // Segments never overlap, so at most one covers the cell (bp[i-1], bp[i]).
      while (seg < segs.size() && segs[seg].hi <= bp[i - 1]) ++seg;
      if (seg < segs.size() && segs[seg].lo <= bp[i - 1] && segs[seg].hi >= bp[i]) {
        running += segs[seg].density() * (bp[i] - bp[i - 1]);
      }
    }
    CdfKnot k{bp[i], running, running};
    if (next_atom < atoms.size() && atoms[next_atom].location == bp[i]) {
      k.upto += atoms[next_atom].mass;
      ++next_atom;
    }
    running = k.upto;
    knots.push_back(std::move(k));
  }
  return knots;
}

// Point of the cell (prev.at, cur.at) where the affine rise reaches p.
inline Real invert_cell(const CdfKnot& prev, const CdfKnot& cur, const Real& p) {
  return Real(prev.at + (p - prev.upto) / (cur.below - prev.upto) * (cur.at - prev.at));
}

}  // namespace detail

/// Left quantile inf{x : P(X <= x) >= p}; the traditional quantile.
///
/// lq(0) is -inf (every real qualifies) and lq(1) is the essential supremum.
inline ExtendedReal left_quantile(const MixtureDistribution& d, const Probability& p) {
  if (p.is_zero()) return ExtendedReal::neg_inf();
  const Real& level = p.value();
  const auto knots = detail::cdf_knots(d);
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (knots[i].upto < level) continue;
    if (i > 0 && knots[i - 1].upto < level && level < knots[i].below) {
      return ExtendedReal(detail::invert_cell(knots[i - 1], knots[i], level));
    }
    return ExtendedReal(knots[i].at);
  }
  return ExtendedReal(knots.back().at);  // unreachable: the last knot has upto == 1
}

/// Right quantile inf{x : P(X <= x) > p}.
///
/// rq(1) is +inf (the set is empty) and rq(0) is the essential infimum.
inline ExtendedReal right_quantile(const MixtureDistribution& d, const Probability& p) {
  if (p.is_one()) return ExtendedReal::pos_inf();
  const Real& level = p.value();
  const auto knots = detail::cdf_knots(d);
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (knots[i].upto <= level) continue;
    if (i > 0 && knots[i - 1].upto <= level && level < knots[i].below) {
      return ExtendedReal(detail::invert_cell(knots[i - 1], knots[i], level));
    }
    return ExtendedReal(knots[i].at);
  }
  return ExtendedReal::pos_inf();  // unreachable for p < 1
}

/// Both one-sided quantiles at one level; left <= right always.
struct QuantilePair {
  ExtendedReal left;
  ExtendedReal right;
  Probability level;
};

inline QuantilePair quantile_pair(const MixtureDistribution& d, const Probability& p) {
  QuantilePair out{left_quantile(d, p), right_quantile(d, p), p};
  if (out.left > out.right) {
    throw Error(ErrorCode::kInvalidDistribution, "left quantile above right quantile");
  }
  return out;
}

/// -rq_{-X}(1 - p). Routed through negate() so it can cross-check left_quantile.
inline ExtendedReal left_quantile_via_symmetry(const MixtureDistribution& d, const Probability& p) {
  return -right_quantile(negate(d), p.complement());
}

/// -lq_{-X}(1 - p), the mirror identity for the right quantile.
inline ExtendedReal right_quantile_via_symmetry(const MixtureDistribution& d, const Probability& p) {
  return -left_quantile(negate(d), p.complement());
}

}  // namespace qsym
