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

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "qsym/error.hpp"

namespace qsym {

/// Exact rational scalar used for every location, mass and level.
using Real = mpq_class;

/// Exact conversion; throws BAD_VALUE for NaN or infinity.
inline Real real_from_double(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kBadValue, "non-finite value");
  }
  return Real(v);
}

/// Nearest double, ties to even. (mpq_get_d truncates toward zero.)
inline double to_double(const Real& q) {
  const double t = q.get_d();
  if (!std::isfinite(t)) return t;
  const Real exact_t(t);
  const int c = cmp(q, exact_t);
  if (c == 0) return t;
  const double other = std::nextafter(t, c > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(other)) return t;
  const Real dt = abs(q - exact_t);
  const Real doth = abs(q - Real(other));
  const int d = cmp(dt, doth);
  if (d < 0) return t;
  if (d > 0) return other;
  // Tie: keep the candidate with an even significand.
  int e = 0;
  const double m = std::frexp(t, &e);
  const auto bits = static_cast<long long>(std::ldexp(m, 53));
  return (bits % 2 == 0) ? t : other;
}

/// Parses a plain decimal literal exactly: `[+-]digits[.digits][(e|E)[+-]digits]`.
/// Returns nullopt for anything else (including "inf" and "nan").
inline std::optional<Real> parse_decimal(std::string_view s) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long long scale = 0;
  bool any_digit = false;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
    digits.push_back(s[i++]);
    any_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      digits.push_back(s[i++]);
      --scale;
      any_digit = true;
    }
  }
  if (!any_digit) return std::nullopt;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    long long exponent = 0;
    const char* first = s.data() + i;
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc{} || ptr == first) return std::nullopt;
    if (exponent > 100000 || exponent < -100000) return std::nullopt;
    scale += exponent;
    i = static_cast<std::size_t>(ptr - s.data());
  }
  if (i != s.size()) return std::nullopt;

  mpz_class numerator(digits.empty() ? std::string("0") : digits, 10);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Real out;
  if (scale >= 0) {
    out = Real(numerator * power);
  } else {
    out = Real(numerator, power);
    out.canonicalize();
  }
  if (negative) out = -out;
  return out;
}

namespace detail {

inline std::string shortest_double(double d) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace detail

/// Renders a rational so that parsing the text back yields the same value.
///
/// Preference order: the shortest round-trip form of the nearest double
/// when that text denotes the value exactly; otherwise the terminating
/// decimal expansion; otherwise `p/q`.
inline std::string format_real(const Real& q) {
  const std::string shortest = detail::shortest_double(to_double(q));
  if (auto back = parse_decimal(shortest); back && *back == q) {
    return shortest;
  }
  mpz_class den = q.get_den();
  unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
  unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
  if (den == 1) {
    const unsigned long k = twos > fives ? twos : fives;
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 10, k);
    mpz_class scaled = q.get_num() * power / q.get_den();
    const bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string body = scaled.get_str();
    if (body.size() <= k) body.insert(0, k + 1 - body.size(), '0');
    body.insert(body.size() - k, ".");
    return (negative ? "-" : "") + body;
  }
  return q.get_str();
}

/// Like format_real, but values that are not short decimals print as the
/// nearest double (17 significant digits at most). For tables meant to be read.
inline std::string format_real_display(const Real& q) {
  std::string exact = format_real(q);
  if (exact.size() <= 24 && exact.find('/') == std::string::npos) return exact;
  return detail::shortest_double(to_double(q));
}

/// Accepts the output of format_real: decimals or `p/q`.
inline std::optional<Real> parse_real(std::string_view s) {
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Real out;
    if (out.set_str(std::string(s), 10) != 0 || out.get_den() == 0) return std::nullopt;
    out.canonicalize();
    return out;
  }
  return parse_decimal(s);
}

}  // namespace qsym
