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

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "qsym/error.hpp"
#include "qsym/real.hpp"

namespace qsym {

/// A rational number or one of the two infinities.
class ExtendedReal {
 public:
  enum class Kind : std::uint8_t { kNegInf, kFinite, kPosInf };

  ExtendedReal() = default;
  ExtendedReal(Real value) : value_(std::move(value)) { value_.canonicalize(); }  // NOLINT: implicit by design
  ExtendedReal(long v) : value_(v) {}                     // NOLINT
  ExtendedReal(int v) : value_(v) {}                      // NOLINT

  /// Exact conversion; ±inf map to the infinite kinds, NaN throws.
  static ExtendedReal from_double(double v) {
    if (std::isnan(v)) throw Error(ErrorCode::kBadValue, "NaN is not an extended real");
    if (std::isinf(v)) return v > 0 ? pos_inf() : neg_inf();
    return ExtendedReal(Real(v));
  }

  static ExtendedReal neg_inf() { return ExtendedReal(Kind::kNegInf); }
  static ExtendedReal pos_inf() { return ExtendedReal(Kind::kPosInf); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::kFinite; }
  bool is_neg_inf() const noexcept { return kind_ == Kind::kNegInf; }
  bool is_pos_inf() const noexcept { return kind_ == Kind::kPosInf; }

  const Real& value() const {
    if (!is_finite()) throw Error(ErrorCode::kDomainError, "value() of an infinite extended real");
    return value_;
  }

  double to_double() const {
    switch (kind_) {
      case Kind::kNegInf: return -std::numeric_limits<double>::infinity();
      case Kind::kPosInf: return std::numeric_limits<double>::infinity();
      case Kind::kFinite: break;
    }
    return qsym::to_double(value_);
  }

  ExtendedReal operator-() const {
    switch (kind_) {
      case Kind::kNegInf: return pos_inf();
      case Kind::kPosInf: return neg_inf();
      case Kind::kFinite: break;
    }
    return ExtendedReal(Real(-value_));
  }

  /// Defined unless the operands are opposite infinities.
  friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.is_finite() && b.is_finite()) return ExtendedReal(Real(a.value_ + b.value_));
    if (!a.is_finite() && !b.is_finite() && a.kind_ != b.kind_) {
      throw Error(ErrorCode::kDomainError, "inf + -inf is undefined");
    }
    return a.is_finite() ? b : a;
  }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::kFinite || a.value_ == b.value_);
  }

  friend std::strong_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (a.kind_ != Kind::kFinite) return std::strong_ordering::equal;
    return cmp(a.value_, b.value_) <=> 0;
  }

 private:
  explicit ExtendedReal(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::kFinite;
  Real value_;
};

/// "-inf", "+inf", or format_real of the value.
inline std::string format(const ExtendedReal& x) {
  if (x.is_neg_inf()) return "-inf";
  if (x.is_pos_inf()) return "+inf";
  return format_real(x.value());
}

inline std::string format_display(const ExtendedReal& x) {
  return x.is_finite() ? format_real_display(x.value()) : format(x);
}

/// Inverse of format(); also accepts "inf" and "-infinity" spellings.
inline std::optional<ExtendedReal> parse_extended(std::string_view s) {
  if (s == "-inf" || s == "-infinity") return ExtendedReal::neg_inf();
  if (s == "+inf" || s == "inf" || s == "+infinity" || s == "infinity") return ExtendedReal::pos_inf();
  if (auto r = parse_real(s)) return ExtendedReal(*r);
  return std::nullopt;
}

inline std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) { return os << format(x); }

}  // namespace qsym
