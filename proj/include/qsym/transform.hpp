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

// Monotone maps, exact pushforward of mixtures, and quantile equivariance.
//
// For a non-decreasing map phi:
//   lq_{phi(X)}(p) = phi(lq_X(p))      when phi is left-continuous,
//   rq_{phi(X)}(p) = phi(rq_X(p))      when phi is right-continuous.
// For a non-increasing map phi:
//   lq_{phi(X)}(p) = phi(rq_X(1 - p))  when phi is right-continuous,
//   rq_{phi(X)}(p) = phi(lq_X(1 - p))  when phi is left-continuous.
// None of these survive a continuity side mismatch, even for strictly
// increasing phi; see equivariance_counterexample().

#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qsym/distribution.hpp"
#include "qsym/error.hpp"
#include "qsym/extended_real.hpp"
#include "qsym/probability.hpp"
#include "qsym/quantile.hpp"

namespace qsym {

enum class Direction { kNonDecreasing, kNonIncreasing };

/// Which one-sided limit a map takes at a breakpoint; also selects the
/// quantile (left or right) in equivariant_quantile.
enum class Side { kLeft, kRight };

constexpr std::string_view to_string(Direction d) {
  return d == Direction::kNonDecreasing ? "non_decreasing" : "non_increasing";
}
constexpr std::string_view to_string(Side s) { return s == Side::kLeft ? "left" : "right"; }

/// x -> slope * x + intercept on (lo, hi).
struct MapPiece {
  ExtendedReal lo;
  ExtendedReal hi;
  Real slope;
  Real intercept;

  Real eval(const Real& x) const { return Real(slope * x + intercept); }
};

/// A monotone piecewise-affine map of the real line.
///
/// Pieces are contiguous and cover (-inf, +inf). At the i-th interior
/// breakpoint (pieces[i].hi) the map takes the limit of the piece named by
/// continuity[i]: kLeft means pieces[i], kRight means pieces[i+1].
class PiecewiseMonotoneMap {
 public:
  PiecewiseMonotoneMap(Direction direction, std::vector<MapPiece> pieces, std::vector<Side> continuity)
      : direction_(direction), pieces_(std::move(pieces)), continuity_(std::move(continuity)) {
    for (auto& p : pieces_) p.slope.canonicalize(), p.intercept.canonicalize();
    validate();
  }

  /// Two affine pieces joined at `at`.
  static PiecewiseMonotoneMap two_piece(Direction direction, const Real& at, Side continuity, const Real& slope_left,
                                        const Real& intercept_left, const Real& slope_right,
                                        const Real& intercept_right) {
    return PiecewiseMonotoneMap(direction,
                                {MapPiece{ExtendedReal::neg_inf(), ExtendedReal(at), slope_left, intercept_left},
                                 MapPiece{ExtendedReal(at), ExtendedReal::pos_inf(), slope_right, intercept_right}},
                                {continuity});
  }

  Direction direction() const noexcept { return direction_; }
  const std::vector<MapPiece>& pieces() const noexcept { return pieces_; }
  const std::vector<Side>& continuity() const noexcept { return continuity_; }

  /// Value of piece i's affine formula at its upper end (the left limit
  /// at breakpoint i) and of piece i+1 at its lower end.
  Real left_limit(std::size_t breakpoint) const {
    return pieces_[breakpoint].eval(pieces_[breakpoint].hi.value());
  }
  Real right_limit(std::size_t breakpoint) const {
    return pieces_[breakpoint + 1].eval(pieces_[breakpoint + 1].lo.value());
  }

  bool jumps_at(std::size_t breakpoint) const { return left_limit(breakpoint) != right_limit(breakpoint); }

  /// Every jump takes its left limit.
  bool is_left_continuous() const {
    for (std::size_t i = 0; i < continuity_.size(); ++i) {
      if (jumps_at(i) && continuity_[i] != Side::kLeft) return false;
    }
    return true;
  }

  bool is_right_continuous() const {
    for (std::size_t i = 0; i < continuity_.size(); ++i) {
      if (jumps_at(i) && continuity_[i] != Side::kRight) return false;
    }
    return true;
  }

  ExtendedReal apply(const ExtendedReal& x) const {
    if (!x.is_finite()) {
      const MapPiece& tail = x.is_neg_inf() ? pieces_.front() : pieces_.back();
      if (tail.slope == 0) return ExtendedReal(tail.intercept);
      const bool up = (tail.slope > 0) == x.is_pos_inf();
      return up ? ExtendedReal::pos_inf() : ExtendedReal::neg_inf();
    }
    const Real& t = x.value();
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const MapPiece& piece = pieces_[i];
      if (ExtendedReal(t) < piece.hi) return ExtendedReal(piece.eval(t));
      if (ExtendedReal(t) == piece.hi) {
        return ExtendedReal(continuity_[i] == Side::kLeft ? left_limit(i) : right_limit(i));
      }
    }
    return ExtendedReal(pieces_.back().eval(t));  // unreachable: last piece ends at +inf
  }

 private:
  void validate() const {
    if (pieces_.empty()) throw Error(ErrorCode::kInvalidMap, "map needs at least one piece");
    if (continuity_.size() + 1 != pieces_.size()) {
      throw Error(ErrorCode::kInvalidMap, "need exactly one continuity flag per interior breakpoint");
    }
    if (!pieces_.front().lo.is_neg_inf() || !pieces_.back().hi.is_pos_inf()) {
      throw Error(ErrorCode::kInvalidMap, "pieces must cover the whole real line");
    }
    const bool up = direction_ == Direction::kNonDecreasing;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const auto& piece = pieces_[i];
      if (!(piece.lo < piece.hi)) throw Error(ErrorCode::kInvalidMap, "piece needs lo < hi");
      if (up ? piece.slope < 0 : piece.slope > 0) {
        throw Error(ErrorCode::kInvalidMap, "piece slope contradicts the map direction");
      }
      if (i + 1 < pieces_.size()) {
        if (!piece.hi.is_finite() || piece.hi != pieces_[i + 1].lo) {
          throw Error(ErrorCode::kInvalidMap, "pieces must be contiguous");
        }
        const Real l = left_limit(i);
        const Real r = right_limit(i);
        if (up ? l > r : l < r) throw Error(ErrorCode::kInvalidMap, "map is not monotone across a breakpoint");
      }
    }
  }

  Direction direction_;
  std::vector<MapPiece> pieces_;
  std::vector<Side> continuity_;
};

/// Everywhere-continuous strictly monotone maps.
class SmoothMonotoneMap {
 public:
  enum class Kind { kNegation, kAffine, kPow10Neg, kNegLog10 };

  static SmoothMonotoneMap negation() { return SmoothMonotoneMap(Kind::kNegation, Real(-1), Real(0)); }
  /// x -> a * x + b, a != 0.
  static SmoothMonotoneMap affine(const Real& a, const Real& b) {
    if (a == 0) throw Error(ErrorCode::kInvalidMap, "affine map needs a nonzero slope");
    return SmoothMonotoneMap(Kind::kAffine, a, b);
  }
  /// x -> 10^(-x).
  static SmoothMonotoneMap pow10neg() { return SmoothMonotoneMap(Kind::kPow10Neg, Real(0), Real(0)); }
  /// x -> -log10(x), x > 0.
  static SmoothMonotoneMap neglog10() { return SmoothMonotoneMap(Kind::kNegLog10, Real(0), Real(0)); }

  Kind kind() const noexcept { return kind_; }
  const Real& slope() const noexcept { return a_; }
  const Real& intercept() const noexcept { return b_; }
  bool is_affine() const noexcept { return kind_ == Kind::kNegation || kind_ == Kind::kAffine; }

  Direction direction() const noexcept {
    if (is_affine()) return a_ > 0 ? Direction::kNonDecreasing : Direction::kNonIncreasing;
    return Direction::kNonIncreasing;
  }

  /// The non-affine kinds round through double and return that double exactly.
  ExtendedReal apply(const ExtendedReal& x) const {
    switch (kind_) {
      case Kind::kNegation:
      case Kind::kAffine:
        if (!x.is_finite()) return (a_ > 0) == x.is_pos_inf() ? ExtendedReal::pos_inf() : ExtendedReal::neg_inf();
        return ExtendedReal(Real(a_ * x.value() + b_));
      case Kind::kPow10Neg:
        if (x.is_neg_inf()) return ExtendedReal::pos_inf();
        if (x.is_pos_inf()) return ExtendedReal(0);
        return ExtendedReal::from_double(std::pow(10.0, -x.to_double()));
      case Kind::kNegLog10:
        if (x.is_pos_inf()) return ExtendedReal::neg_inf();
        if (!(x > ExtendedReal(0))) throw Error(ErrorCode::kDomainError, "-log10 needs x > 0, got " + format(x));
        return ExtendedReal::from_double(-std::log10(x.to_double()));
    }
    return x;
  }

 private:
  SmoothMonotoneMap(Kind kind, Real a, Real b) : kind_(kind), a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }

  Kind kind_;
  Real a_;
  Real b_;
};

constexpr std::string_view to_string(SmoothMonotoneMap::Kind k) {
  switch (k) {
    case SmoothMonotoneMap::Kind::kNegation: return "negation";
    case SmoothMonotoneMap::Kind::kAffine: return "affine";
    case SmoothMonotoneMap::Kind::kPow10Neg: return "pow10neg";
    case SmoothMonotoneMap::Kind::kNegLog10: return "neglog10";
  }
  return "?";
}

using MonotoneMap = std::variant<PiecewiseMonotoneMap, SmoothMonotoneMap>;

inline Direction direction(const MonotoneMap& m) {
  return std::visit([](const auto& map) { return map.direction(); }, m);
}

inline bool is_left_continuous(const MonotoneMap& m) {
  if (const auto* pw = std::get_if<PiecewiseMonotoneMap>(&m)) return pw->is_left_continuous();
  return true;
}

inline bool is_right_continuous(const MonotoneMap& m) {
  if (const auto* pw = std::get_if<PiecewiseMonotoneMap>(&m)) return pw->is_right_continuous();
  return true;
}

/// phi(x); at +-inf the monotone limit. Throws DOMAIN_ERROR outside the domain.
inline ExtendedReal apply_map(const MonotoneMap& m, const ExtendedReal& x) {
  return std::visit([&](const auto& map) { return map.apply(x); }, m);
}

namespace detail {

inline void push_affine_image(const Real& slope, const Real& intercept, const Real& lo, const Real& hi,
                              const Real& mass, std::vector<Atom>& atoms, std::vector<UniformSegment>& segments) {
  if (slope == 0) {
    atoms.push_back(Atom{intercept, mass});
    return;
  }
  Real a = slope * lo + intercept;
  Real b = slope * hi + intercept;
  if (slope < 0) std::swap(a, b);
  segments.push_back(UniformSegment{std::move(a), std::move(b), mass});
}

}  // namespace detail

/// Exact distribution of phi(X).
///
/// Atoms map to atoms (colliding images merge); a segment is cut at the
/// map's breakpoints and each part maps to a uniform segment, or to an atom
/// on a flat piece. Non-affine smooth maps accept atom-only input.
inline MixtureDistribution pushforward(const MixtureDistribution& d, const MonotoneMap& m) {
  std::vector<Atom> atoms;
  std::vector<UniformSegment> segments;

  if (const auto* smooth = std::get_if<SmoothMonotoneMap>(&m)) {
    if (!smooth->is_affine() && d.has_segments()) {
      throw Error(ErrorCode::kUnsupportedPushforward,
                  std::string(to_string(smooth->kind())) + " does not map uniform segments to uniform segments");
    }
    for (const auto& a : d.atoms()) atoms.push_back(Atom{smooth->apply(ExtendedReal(a.location)).value(), a.mass});
    for (const auto& s : d.segments()) {
      detail::push_affine_image(smooth->slope(), smooth->intercept(), s.lo, s.hi, s.mass, atoms, segments);
    }
    return MixtureDistribution(std::move(atoms), std::move(segments));
  }

  const auto& map = std::get<PiecewiseMonotoneMap>(m);
  for (const auto& a : d.atoms()) atoms.push_back(Atom{map.apply(ExtendedReal(a.location)).value(), a.mass});
  for (const auto& s : d.segments()) {
    const Real density = s.density();
    for (const auto& piece : map.pieces()) {
      const ExtendedReal lo = std::max(piece.lo, ExtendedReal(s.lo));
      const ExtendedReal hi = std::min(piece.hi, ExtendedReal(s.hi));
      if (!(lo < hi)) continue;
      const Real& a = lo.value();
      const Real& b = hi.value();
      detail::push_affine_image(piece.slope, piece.intercept, a, b, Real(density * (b - a)), atoms, segments);
    }
  }
  return MixtureDistribution(std::move(atoms), std::move(segments));
}

/// True when the identity for `side` is established for this map.
inline bool equivariance_applies(const MonotoneMap& m, Side side) {
  const bool up = direction(m) == Direction::kNonDecreasing;
  if (side == Side::kLeft) return up ? is_left_continuous(m) : is_right_continuous(m);
  return up ? is_right_continuous(m) : is_left_continuous(m);
}

/// The transformed side of the equivariance identity for `side`:
///   LEFT:  phi(lq_X(p)) if phi is non-decreasing, phi(rq_X(1-p)) otherwise;
///   RIGHT: phi(rq_X(p)) if phi is non-decreasing, phi(lq_X(1-p)) otherwise.
/// When the inner quantile is infinite (p = 0 for LEFT, p = 1 for RIGHT)
/// the result is the matching boundary value, -inf or +inf.
/// Throws CONTINUITY_MISMATCH when the map's continuity side does not fit.
inline ExtendedReal equivariant_quantile(const MixtureDistribution& d, const MonotoneMap& m, const Probability& p,
                                         Side side) {
  if (!equivariance_applies(m, side)) {
    const bool up = direction(m) == Direction::kNonDecreasing;
    const bool needs_left = (side == Side::kLeft) == up;
    throw Error(ErrorCode::kContinuityMismatch,
                std::string("the ") + std::string(to_string(side)) + " quantile identity for a " +
                    std::string(to_string(direction(m))) + " map needs it to be " +
                    (needs_left ? "left" : "right") + "-continuous");
  }
  const bool up = direction(m) == Direction::kNonDecreasing;
  ExtendedReal inner;
  if (side == Side::kLeft) {
    inner = up ? left_quantile(d, p) : right_quantile(d, p.complement());
  } else {
    inner = up ? right_quantile(d, p) : left_quantile(d, p.complement());
  }
  if (!inner.is_finite()) return side == Side::kLeft ? ExtendedReal::neg_inf() : ExtendedReal::pos_inf();
  return apply_map(m, inner);
}

/// Quantile of phi(X) computed directly on the pushforward.
inline ExtendedReal pushforward_quantile(const MixtureDistribution& d, const MonotoneMap& m, const Probability& p,
                                         Side side) {
  const auto image = pushforward(d, m);
  return side == Side::kLeft ? left_quantile(image, p) : right_quantile(image, p);
}

/// Witness that left-quantile equivariance needs left continuity.
struct EquivarianceCounterexample {
  MixtureDistribution distribution;
  PiecewiseMonotoneMap map;
  Probability level;
  ExtendedReal quantile_of_image;   // lq_{phi(X)}(p)
  ExtendedReal image_of_quantile;   // phi(lq_X(p))
};

/// X ~ Uniform[0,1], phi(x) = x below 1/2 and x + 1 from 1/2 on
/// (right-continuous, strictly increasing), p = 1/2: lq_{phi(X)}(1/2) = 1/2
/// while phi(lq_X(1/2)) = 3/2.
inline EquivarianceCounterexample equivariance_counterexample() {
  auto d = MixtureDistribution::uniform(Real(0), Real(1));
  auto phi = PiecewiseMonotoneMap::two_piece(Direction::kNonDecreasing, Real(1, 2), Side::kRight, Real(1), Real(0),
                                             Real(1), Real(1));
  const Probability half(1, 2);
  const MonotoneMap as_map = phi;
  auto direct = left_quantile(pushforward(d, as_map), half);
  auto naive = phi.apply(left_quantile(d, half));
  return {std::move(d), std::move(phi), half, std::move(direct), std::move(naive)};
}

}  // namespace qsym
