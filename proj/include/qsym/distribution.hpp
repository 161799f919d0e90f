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
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsym/error.hpp"
#include "qsym/extended_real.hpp"
#include "qsym/probability.hpp"
#include "qsym/real.hpp"

namespace qsym {

struct Atom {
  Real location;
  Real mass;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Uniform mass on [lo, hi]; density mass / (hi - lo).
struct UniformSegment {
  Real lo;
  Real hi;
  Real mass;

  Real density() const { return Real(mass / (hi - lo)); }

  /// Mass carried by [lo, x] (equivalently [lo, x)).
  Real mass_below(const Real& x) const {
    if (x <= lo) return Real(0);
    if (x >= hi) return mass;
    return Real(mass * (x - lo) / (hi - lo));
  }

  friend bool operator==(const UniformSegment&, const UniformSegment&) = default;
};

/// The four distribution functions:
/// LEFT_CLOSED P(X <= x), LEFT_OPEN P(X < x), RIGHT_CLOSED P(X >= x), RIGHT_OPEN P(X > x).
enum class DistFnFlavor { kLeftClosed, kLeftOpen, kRightClosed, kRightOpen };

inline constexpr DistFnFlavor kAllFlavors[] = {DistFnFlavor::kLeftClosed, DistFnFlavor::kLeftOpen,
                                               DistFnFlavor::kRightClosed, DistFnFlavor::kRightOpen};

constexpr std::string_view to_string(DistFnFlavor f) {
  switch (f) {
    case DistFnFlavor::kLeftClosed: return "LEFT_CLOSED";
    case DistFnFlavor::kLeftOpen: return "LEFT_OPEN";
    case DistFnFlavor::kRightClosed: return "RIGHT_CLOSED";
    case DistFnFlavor::kRightOpen: return "RIGHT_OPEN";
  }
  return "?";
}

constexpr bool is_left_flavor(DistFnFlavor f) {
  return f == DistFnFlavor::kLeftClosed || f == DistFnFlavor::kLeftOpen;
}

/// A probability distribution made of finitely many atoms and uniform segments.
///
/// Atoms are sorted by strictly increasing location. Segments are sorted by
/// `lo` and may touch at endpoints but never overlap. Atoms may sit anywhere,
/// including inside a segment. Immutable once built.
class MixtureDistribution {
 public:
  /// Sorts the parts, merges atoms sharing a location and rescales by the
  /// total mass. The total must already be within 1e-12 of 1.
  MixtureDistribution(std::vector<Atom> atoms, std::vector<UniformSegment> segments)
      : MixtureDistribution(std::move(atoms), std::move(segments), /*rescale_any_total=*/false) {}

  /// Same as the constructor but accepts any positive total.
  static MixtureDistribution normalized(std::vector<Atom> atoms, std::vector<UniformSegment> segments) {
    return MixtureDistribution(std::move(atoms), std::move(segments), true);
  }

  static MixtureDistribution point_mass(const Real& c) { return MixtureDistribution({Atom{c, Real(1)}}, {}); }
  static MixtureDistribution uniform(const Real& lo, const Real& hi) {
    return MixtureDistribution({}, {UniformSegment{lo, hi, Real(1)}});
  }

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<UniformSegment>& segments() const noexcept { return segments_; }

  /// Sorted union of atom locations and segment endpoints.
  const std::vector<Real>& breakpoints() const noexcept { return breakpoints_; }

  bool has_atoms() const noexcept { return !atoms_.empty(); }
  bool has_segments() const noexcept { return !segments_.empty(); }

  friend bool operator==(const MixtureDistribution& a, const MixtureDistribution& b) {
    return a.atoms_ == b.atoms_ && a.segments_ == b.segments_;
  }

 private:
  MixtureDistribution(std::vector<Atom> atoms, std::vector<UniformSegment> segments, bool rescale_any_total);

  std::vector<Atom> atoms_;
  std::vector<UniformSegment> segments_;
  std::vector<Real> breakpoints_;
};

inline MixtureDistribution::MixtureDistribution(std::vector<Atom> atoms, std::vector<UniformSegment> segments,
                                                bool rescale_any_total) {
  if (atoms.empty() && segments.empty()) {
    throw Error(ErrorCode::kInvalidDistribution, "distribution needs at least one atom or segment");
  }
  // Callers may hand in unreduced fractions; exact comparison needs canonical form.
  for (auto& a : atoms) a.location.canonicalize(), a.mass.canonicalize();
  for (auto& s : segments) s.lo.canonicalize(), s.hi.canonicalize(), s.mass.canonicalize();
  Real total(0);
  for (const auto& a : atoms) {
    if (a.mass <= 0) throw Error(ErrorCode::kBadMass, "atom mass must be positive");
    total += a.mass;
  }
  for (const auto& s : segments) {
    if (s.mass <= 0) throw Error(ErrorCode::kBadMass, "segment mass must be positive");
    if (!(s.lo < s.hi)) throw Error(ErrorCode::kInvalidDistribution, "segment needs lo < hi");
    total += s.mass;
  }
  if (!rescale_any_total) {
    const Real tolerance(1, 1000000000000);  // 1e-12
    if (abs(total - 1) > tolerance) {
      throw Error(ErrorCode::kBadMass, "total mass " + format_real(total) + " is not 1");
    }
  }

  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.location < b.location; });
  for (auto& a : atoms) {
    if (!atoms_.empty() && atoms_.back().location == a.location) {
      atoms_.back().mass += a.mass;
    } else {
      atoms_.push_back(std::move(a));
    }
  }
  std::sort(segments.begin(), segments.end(),
            [](const UniformSegment& a, const UniformSegment& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < segments.size(); ++i) {
    if (segments[i - 1].hi > segments[i].lo) {
      throw Error(ErrorCode::kInvalidDistribution, "segments overlap");
    }
  }
  segments_ = std::move(segments);

  if (total != 1) {
    for (auto& a : atoms_) a.mass /= total;
    for (auto& s : segments_) s.mass /= total;
  }

  breakpoints_.reserve(atoms_.size() + 2 * segments_.size());
  for (const auto& a : atoms_) breakpoints_.push_back(a.location);
  for (const auto& s : segments_) {
    breakpoints_.push_back(s.lo);
    breakpoints_.push_back(s.hi);
  }
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
}

/// Empirical distribution of a data vector, optionally weighted.
///
/// Each row carries mass 1/n (or weight / total weight); rows with equal
/// values collapse into a single atom.
inline MixtureDistribution make_empirical(std::span<const Real> values,
                                          std::optional<std::span<const Real>> weights = std::nullopt) {
  if (values.empty()) throw Error(ErrorCode::kEmptyData, "no data values");
  if (weights && weights->size() != values.size()) {
    throw Error(ErrorCode::kBadWeight, "weights and values differ in length");
  }
  std::vector<Atom> atoms;
  atoms.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    Real w(1);
    if (weights) {
      w = (*weights)[i];
      if (w <= 0) throw Error(ErrorCode::kBadWeight, "weight at row " + std::to_string(i) + " is not positive");
    }
    atoms.push_back(Atom{values[i], w});
  }
  return MixtureDistribution::normalized(std::move(atoms), {});
}

inline MixtureDistribution make_empirical(std::span<const double> values,
                                          std::optional<std::span<const double>> weights = std::nullopt) {
  std::vector<Real> v;
  v.reserve(values.size());
  for (double x : values) v.push_back(real_from_double(x));
  if (!weights) return make_empirical(std::span<const Real>(v));
  std::vector<Real> w;
  w.reserve(weights->size());
  for (double x : *weights) {
    if (!std::isfinite(x)) throw Error(ErrorCode::kBadWeight, "non-finite weight");
    w.push_back(Real(x));
  }
  return make_empirical(std::span<const Real>(v), std::span<const Real>(w));
}

/// Evaluates one of the four distribution functions, each by direct summation.
inline Probability dist_fn(const MixtureDistribution& d, DistFnFlavor flavor, const ExtendedReal& x) {
  const bool left = is_left_flavor(flavor);
  if (x.is_neg_inf()) return left ? Probability::zero() : Probability::one();
  if (x.is_pos_inf()) return left ? Probability::one() : Probability::zero();
  const Real& t = x.value();

  Real sum(0);
  switch (flavor) {
    case DistFnFlavor::kLeftClosed:
      for (const auto& a : d.atoms()) {
        if (a.location > t) break;
        sum += a.mass;
      }
      for (const auto& s : d.segments()) sum += s.mass_below(t);
      break;
    case DistFnFlavor::kLeftOpen:
      for (const auto& a : d.atoms()) {
        if (a.location >= t) break;
        sum += a.mass;
      }
      for (const auto& s : d.segments()) sum += s.mass_below(t);
      break;
    case DistFnFlavor::kRightClosed:
      for (const auto& a : d.atoms()) {
        if (a.location >= t) sum += a.mass;
      }
      for (const auto& s : d.segments()) sum += s.mass - s.mass_below(t);
      break;
    case DistFnFlavor::kRightOpen:
      for (const auto& a : d.atoms()) {
        if (a.location > t) sum += a.mass;
      }
      for (const auto& s : d.segments()) sum += s.mass - s.mass_below(t);
      break;
  }
  return Probability(std::move(sum));
}

/// Distribution of -X.
inline MixtureDistribution negate(const MixtureDistribution& d) {
  std::vector<Atom> atoms;
  atoms.reserve(d.atoms().size());
  for (auto it = d.atoms().rbegin(); it != d.atoms().rend(); ++it) atoms.push_back(Atom{Real(-it->location), it->mass});
  std::vector<UniformSegment> segments;
  segments.reserve(d.segments().size());
  for (auto it = d.segments().rbegin(); it != d.segments().rend(); ++it) {
    segments.push_back(UniformSegment{Real(-it->hi), Real(-it->lo), it->mass});
  }
  return MixtureDistribution(std::move(atoms), std::move(segments));
}

/// (smallest support point, largest support point); always finite here.
inline std::pair<ExtendedReal, ExtendedReal> essential_bounds(const MixtureDistribution& d) {
  return {ExtendedReal(d.breakpoints().front()), ExtendedReal(d.breakpoints().back())};
}

namespace detail {

struct OneSidedLimits {
  Real from_left;
  Real from_right;
};

// The model's distribution functions are affine on every open cell between
// consecutive breakpoints, so a one-sided limit at a breakpoint is the linear
// extrapolation of two interior probes of the adjacent cell. Only the named
// flavor is evaluated.
inline OneSidedLimits one_sided_limits(const MixtureDistribution& d, DistFnFlavor flavor, std::size_t index) {
  const auto& bp = d.breakpoints();
  const Real& b = bp[index];
  const Real left_end = index == 0 ? Real(b - 2) : bp[index - 1];
  const Real right_end = index + 1 == bp.size() ? Real(b + 2) : bp[index + 1];
  auto f = [&](const Real& x) { return dist_fn(d, flavor, ExtendedReal(x)).value(); };

  const Real l1 = left_end + (b - left_end) / 3;
  const Real l2 = left_end + 2 * (b - left_end) / 3;
  const Real r1 = b + (right_end - b) / 3;
  const Real r2 = b + 2 * (right_end - b) / 3;
  // Probes are equally spaced, so the extrapolation to b has weight 2 and -1.
  return {Real(2 * f(l2) - f(l1)), Real(2 * f(r1) - f(r2))};
}

}  // namespace detail

/// True iff the named distribution function has no jump.
inline bool is_continuous(const MixtureDistribution& d, DistFnFlavor flavor) {
  for (std::size_t i = 0; i < d.breakpoints().size(); ++i) {
    const auto lim = detail::one_sided_limits(d, flavor, i);
    if (lim.from_left != lim.from_right) return false;
  }
  return true;
}

/// True iff the named function is strictly monotone on [ess_inf, ess_sup]:
/// increasing for the left flavors, decreasing for the right flavors.
///
/// A compactly supported distribution function is never strictly monotone on
/// the whole line, so the test is restricted to the support hull. A single
/// point hull is vacuously strictly monotone.
inline bool is_strictly_monotone_on_hull(const MixtureDistribution& d, DistFnFlavor flavor) {
  const auto& bp = d.breakpoints();
  const bool increasing = is_left_flavor(flavor);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const Real t1 = bp[i] + (bp[i + 1] - bp[i]) / 3;
    const Real t2 = bp[i] + 2 * (bp[i + 1] - bp[i]) / 3;
    const Real f1 = dist_fn(d, flavor, ExtendedReal(t1)).value();
    const Real f2 = dist_fn(d, flavor, ExtendedReal(t2)).value();
    if (increasing ? !(f1 < f2) : !(f1 > f2)) return false;
  }
  return true;
}

/// Short human-readable description, e.g. "atoms{1:1/2, 2:1/2} segs{[0,1]:1/2}".
inline std::string describe(const MixtureDistribution& d) {
  std::ostringstream os;
  os << "atoms{";
  for (std::size_t i = 0; i < d.atoms().size(); ++i) {
    if (i) os << ", ";
    os << format_real(d.atoms()[i].location) << ':' << format_real(d.atoms()[i].mass);
  }
  os << "} segs{";
  for (std::size_t i = 0; i < d.segments().size(); ++i) {
    const auto& s = d.segments()[i];
    if (i) os << ", ";
    os << '[' << format_real(s.lo) << ',' << format_real(s.hi) << "]:" << format_real(s.mass);
  }
  os << '}';
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const MixtureDistribution& d) { return os << describe(d); }

}  // namespace qsym
