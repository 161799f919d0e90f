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

#include <algorithm>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsym/distribution.hpp"
#include "qsym/extended_real.hpp"
#include "qsym/probability.hpp"
#include "qsym/quantile.hpp"
#include "qsym/verify/oracle.hpp"
#include "qsym/verify/report.hpp"

namespace qsym::verify {

/// The quantile implementation under test. Checks never call left_quantile
/// or right_quantile directly, so a substitute engine can be injected.
struct QuantileEngine {
  std::string_view name;
  ExtendedReal (*left)(const MixtureDistribution&, const Probability&);
  ExtendedReal (*right)(const MixtureDistribution&, const Probability&);
};

inline constexpr QuantileEngine kReferenceEngine{"reference", &left_quantile, &right_quantile};

namespace detail {

inline Real cdf(const MixtureDistribution& d, DistFnFlavor f, const ExtendedReal& x) { return dist_fn(d, f, x).value(); }

inline PropertyResult result(std::string id, bool pass, std::string expected, std::string actual,
                             std::string details = {}) {
  return PropertyResult{std::move(id), pass, false, std::move(expected), std::move(actual), std::move(details)};
}

inline PropertyResult vacuous(std::string id, std::string details) {
  return PropertyResult{std::move(id), true, true, {}, {}, std::move(details)};
}

// Offsets used for the probe points of clause (k).
inline std::vector<Real> probe_offsets() {
  std::vector<Real> out;
  const mpz_class one(1);
  for (unsigned shift : {40u, 20u, 10u, 3u, 1u}) {
    Real r(one, one << shift);
    r.canonicalize();
    out.push_back(r);
  }
  out.emplace_back(1);
  out.emplace_back(4);
  out.emplace_back(64);
  return out;  // 8 offsets per side
}

// Levels strictly above p used for clause (c).
inline std::vector<Probability> levels_above(const Probability& p) {
  std::vector<Probability> out;
  if (p.is_one()) return out;
  const Real gap = 1 - p.value();
  for (int k = 1; k <= 8; ++k) out.emplace_back(Real(p.value() + gap * k / 8));
  Real tiny(mpz_class(1), mpz_class(1) << 30);
  out.emplace_back(Real(p.value() + gap * tiny));
  return out;
}

}  // namespace detail

/// Clauses (a)-(k) of the quantile properties at one level.
inline PropertyReport check_quantile_properties(const MixtureDistribution& d, const Probability& p,
                                                const QuantileEngine& engine = kReferenceEngine) {
  using detail::cdf;
  using detail::result;
  using detail::vacuous;
  constexpr auto kFc = DistFnFlavor::kLeftClosed;
  constexpr auto kFo = DistFnFlavor::kLeftOpen;
  constexpr auto kGc = DistFnFlavor::kRightClosed;

  PropertyReport report{describe(d), p, {}};
  const Real& level = p.value();
  const ExtendedReal lq = engine.left(d, p);
  const ExtendedReal rq = engine.right(d, p);
  const std::string lq_s = format(lq);
  const std::string rq_s = format(rq);

  {  // (a) F(lq(p)) >= p
    const Real f = cdf(d, kFc, lq);
    report.add(result("a", f >= level, ">= " + format(p), format_real(f), "F(lq)=F(" + lq_s + ")"));
  }
  // (b) lq(p) <= rq(p)
  report.add(result("b", lq <= rq, "lq <= rq", lq_s + " vs " + rq_s));

  {  // (c) p < p2 implies rq(p) <= lq(p2)
    const auto above = detail::levels_above(p);
    if (above.empty()) {
      report.add(vacuous("c", "no level above p=1"));
    } else {
      bool ok = true;
      std::string actual;
      for (const auto& p2 : above) {
        const auto l2 = engine.left(d, p2);
        if (!(rq <= l2)) {
          ok = false;
          actual = "rq(p)=" + rq_s + " > lq(" + format(p2) + ")=" + format(l2);
          break;
        }
      }
      report.add(result("c", ok, "rq(p) <= lq(p2) for 9 levels p2 > p", ok ? "holds" : actual));
    }
  }

  {  // (d) rq(p) = sup{x : F(x) <= p}
    const auto sup = quantile_by_definition(d, p, QuantileVariant::kRqClosedSup);
    report.add(result("d", sup == rq, format(sup), rq_s, "sup{x : F(x) <= p} vs rq"));
  }

  // (e) P(lq < X < rq) = 0
  if (lq < rq) {
    const Real mass = cdf(d, kFo, rq) - cdf(d, kFc, lq);
    report.add(result("e", mass == 0, "0", format_real(mass), "P(" + lq_s + " < X < " + rq_s + ")"));
  } else {
    report.add(vacuous("e", "lq = rq, empty interval"));
  }

  {  // (f) P(X < rq(p)) <= p
    const Real f = cdf(d, kFo, rq);
    report.add(result("f", f <= level, "<= " + format(p), format_real(f), "P(X < " + rq_s + ")"));
  }

  // (g) lq < rq implies F(lq) = p and P(X >= rq) = 1 - p; stated for interior levels only
  if (p.is_zero() || p.is_one()) {
    report.add(vacuous("g", "skipped at p in {0,1}"));
  } else if (!(lq < rq)) {
    report.add(vacuous("g", "lq = rq"));
  } else {
    const Real f = cdf(d, kFc, lq);
    const Real g = cdf(d, kGc, rq);
    const bool ok = f == level && g == 1 - level;
    report.add(result("g", ok, "F(lq)=" + format(p) + ", P(X>=rq)=" + format_real(Real(1 - level)),
                      "F(lq)=" + format_real(f) + ", P(X>=rq)=" + format_real(g)));
  }

  {  // (h) lq(1) > -inf, rq(0) < +inf, P(rq(0) <= X <= lq(1)) = 1
    const auto top = engine.left(d, Probability::one());
    const auto bottom = engine.right(d, Probability::zero());
    bool ok = top.is_finite() && bottom.is_finite();
    std::string actual = "lq(1)=" + format(top) + ", rq(0)=" + format(bottom);
    if (ok) {
      const Real mass = cdf(d, kFc, top) - cdf(d, kFo, bottom);
      ok = mass == 1;
      actual += ", mass=" + format_real(mass);
    }
    report.add(result("h", ok, "finite bounds carrying mass 1", actual));
  }

  {  // (i) both quantile functions non-decreasing on a grid containing p
    std::vector<Probability> grid;
    for (long k = 0; k <= 16; ++k) grid.emplace_back(k, 16);
    grid.push_back(p);
    std::sort(grid.begin(), grid.end());
    bool ok = true;
    std::string actual = "non-decreasing";
    ExtendedReal prev_l = engine.left(d, grid.front());
    ExtendedReal prev_r = engine.right(d, grid.front());
    for (std::size_t i = 1; i < grid.size() && ok; ++i) {
      const auto l = engine.left(d, grid[i]);
      const auto r = engine.right(d, grid[i]);
      if (l < prev_l || r < prev_r) {
        ok = false;
        actual = "decrease between levels " + format(grid[i - 1]) + " and " + format(grid[i]);
      }
      prev_l = l;
      prev_r = r;
    }
    report.add(result("i", ok, "non-decreasing", actual));
  }

  // (j) P(X = x) > 0 implies lq(F(x)) = x
  if (!d.has_atoms()) {
    report.add(vacuous("j", "no atoms"));
  } else {
    bool ok = true;
    std::string actual = "all atoms recovered";
    for (const auto& a : d.atoms()) {
      const ExtendedReal x(a.location);
      const auto back = engine.left(d, dist_fn(d, kFc, x));
      if (back != x) {
        ok = false;
        actual = "lq(F(" + format(x) + ")) = " + format(back);
        break;
      }
    }
    report.add(result("j", ok, "lq(F(x)) = x at every atom", actual));
  }

  {  // (k) x < lq(p) gives F(x) < p; x > rq(p) gives F(x) > p
    bool ok = true;
    std::string actual = "holds";
    int probes = 0;
    for (const auto& delta : detail::probe_offsets()) {
      if (lq.is_finite()) {
        const ExtendedReal x(Real(lq.value() - delta));
        ++probes;
        if (ok && !(cdf(d, kFc, x) < level)) {
          ok = false;
          actual = "F(" + format(x) + ") >= p";
        }
      }
      if (rq.is_finite()) {
        const ExtendedReal x(Real(rq.value() + delta));
        ++probes;
        if (ok && !(cdf(d, kFc, x) > level)) {
          ok = false;
          actual = "F(" + format(x) + ") <= p";
        }
      }
    }
    if (probes == 0) {
      report.add(vacuous("k", "both quantiles infinite"));
    } else {
      report.add(result("k", ok, "strict inequalities outside [lq, rq]", actual,
                        std::to_string(probes) + " probes"));
    }
  }
  return report;
}

/// lq_X(p) = -rq_{-X}(1-p) and rq_X(p) = -lq_{-X}(1-p).
///
/// S and SR compare the engine against the scan oracle on the negated
/// distribution; S-closed and SR-closed use the engine on both sides.
inline PropertyReport check_symmetry(const MixtureDistribution& d, const Probability& p,
                                     const QuantileEngine& engine = kReferenceEngine) {
  using detail::result;
  PropertyReport report{describe(d), p, {}};
  const auto neg = negate(d);
  const auto q = p.complement();
  const auto lq = engine.left(d, p);
  const auto rq = engine.right(d, p);

  const auto s_oracle = -quantile_by_definition(neg, q, QuantileVariant::kRqClosedInf);
  report.add(result("S", lq == s_oracle, format(s_oracle), format(lq), "lq_X(p) vs -rq_{-X}(1-p) by scan"));
  const auto r_oracle = -quantile_by_definition(neg, q, QuantileVariant::kLqClosedInf);
  report.add(result("SR", rq == r_oracle, format(r_oracle), format(rq), "rq_X(p) vs -lq_{-X}(1-p) by scan"));

  const auto s_closed = -engine.right(neg, q);
  report.add(result("S-closed", lq == s_closed, format(s_closed), format(lq), "lq_X(p) vs -rq_{-X}(1-p)"));
  const auto r_closed = -engine.left(neg, q);
  report.add(result("SR-closed", rq == r_closed, format(r_closed), format(rq), "rq_X(p) vs -lq_{-X}(1-p)"));
  return report;
}

/// All three left variants agree with each other and with the engine's
/// left quantile; likewise for the right variants.
inline PropertyReport check_variants(const MixtureDistribution& d, const Probability& p,
                                     const QuantileEngine& engine = kReferenceEngine) {
  PropertyReport report{describe(d), p, {}};
  auto run = [&](std::string id, std::span<const QuantileVariant> variants, const ExtendedReal& closed) {
    bool ok = true;
    std::string actual;
    for (auto v : variants) {
      const auto value = quantile_by_definition(d, p, v);
      if (!actual.empty()) actual += ", ";
      actual += std::string(to_string(v)) + "=" + format(value);
      ok = ok && value == closed;
    }
    report.add(detail::result(std::move(id), ok, format(closed), actual, "closed form vs set definitions"));
  };
  run("V-LQ", kLeftVariants, engine.left(d, p));
  run("V-RQ", kRightVariants, engine.right(d, p));
  return report;
}

/// Support has no interior gap, computed from the parts directly.
inline bool support_is_interval(const MixtureDistribution& d) {
  std::vector<std::pair<Real, Real>> pieces;
  for (const auto& a : d.atoms()) pieces.emplace_back(a.location, a.location);
  for (const auto& s : d.segments()) pieces.emplace_back(s.lo, s.hi);
  std::sort(pieces.begin(), pieces.end());
  Real reach = pieces.front().second;
  for (const auto& [lo, hi] : pieces) {
    if (lo > reach) return false;
    if (hi > reach) reach = hi;
  }
  return true;
}

/// Continuity and strict monotonicity agree across the four flavors and
/// with the structural truth (no atoms; no gap in the support).
inline PropertyReport check_flavor_independence(const MixtureDistribution& d) {
  PropertyReport report{describe(d), std::nullopt, {}};
  auto run = [&](std::string id, bool (*predicate)(const MixtureDistribution&, DistFnFlavor), bool truth) {
    bool ok = true;
    std::string actual;
    for (auto f : kAllFlavors) {
      const bool v = predicate(d, f);
      if (!actual.empty()) actual += ", ";
      actual += std::string(to_string(f)) + "=" + (v ? "true" : "false");
      ok = ok && v == truth;
    }
    report.add(detail::result(std::move(id), ok, truth ? "true" : "false", actual));
  };
  run("F-continuous", &is_continuous, !d.has_atoms());
  run("F-strict", &is_strictly_monotone_on_hull, support_is_interval(d));
  return report;
}

}  // namespace qsym::verify
