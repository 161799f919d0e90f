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

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "qsym/error.hpp"
#include "qsym/real.hpp"

namespace qsym {

/// An exact number in [0, 1]; checked at construction.
class Probability {
 public:
  Probability() = default;
  explicit Probability(Real p) : p_(std::move(p)) {
    p_.canonicalize();
    if (p_ < 0 || p_ > 1) {
      throw Error(ErrorCode::kBadLevel, "probability " + p_.get_str() + " outside [0,1]");
    }
  }
  explicit Probability(long numerator, unsigned long denominator = 1)
      : Probability(make(numerator, denominator)) {}

  static Probability zero() { return Probability(0); }
  static Probability one() { return Probability(1); }

  const Real& value() const noexcept { return p_; }
  double to_double() const { return qsym::to_double(p_); }

  /// 1 - p.
  Probability complement() const { return Probability(Real(1 - p_)); }

  bool is_zero() const { return p_ == 0; }
  bool is_one() const { return p_ == 1; }

  friend bool operator==(const Probability& a, const Probability& b) { return a.p_ == b.p_; }
  friend std::strong_ordering operator<=>(const Probability& a, const Probability& b) {
    return cmp(a.p_, b.p_) <=> 0;
  }

 private:
  static Real make(long numerator, unsigned long denominator) {
    if (denominator == 0) throw Error(ErrorCode::kBadLevel, "zero denominator");
    Real r(numerator, denominator);
    r.canonicalize();
    return r;
  }

  Real p_{0};
};

/// Parses a level: a decimal in [0,1] or a percentage such as "20%".
inline std::optional<Probability> parse_level(std::string_view s) {
  bool percent = false;
  if (!s.empty() && s.back() == '%') {
    percent = true;
    s.remove_suffix(1);
  }
  auto r = parse_real(s);
  if (!r) return std::nullopt;
  if (percent) *r /= 100;
  if (*r < 0 || *r > 1) return std::nullopt;
  return Probability(*r);
}

inline std::string format(const Probability& p) { return format_real(p.value()); }

inline std::ostream& operator<<(std::ostream& os, const Probability& p) { return os << format(p); }

}  // namespace qsym
