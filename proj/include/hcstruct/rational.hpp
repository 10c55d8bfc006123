// Copyright 2026 The hcstruct Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "hcstruct/error.hpp"

namespace hcs {

/// Nonnegative rational with a reserved +infinity (den == 0).
///
/// Used wherever exact comparisons matter: ratio costs of integer-weighted
/// graphs and the delta threshold. Products are taken in 128 bits.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) {
      if (num == 0) throw Error(Errc::invalid_param, "0/0 is not a rational");
      num_ = 1;
      den_ = 0;
      return;
    }
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num_ = num / g;
    den_ = den / g;
  }

  static Rational infinity() {
    Rational r;
    r.num_ = 1;
    r.den_ = 0;
    return r;
  }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_infinite() const noexcept { return den_ == 0; }

  double to_double() const noexcept {
    if (is_infinite()) return std::numeric_limits<double>::infinity();
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  Rational operator*(const Rational& o) const {
    if (is_infinite() || o.is_infinite()) return infinity();
    const __int128 n = static_cast<__int128>(num_) * o.num_;
    const __int128 d = static_cast<__int128>(den_) * o.den_;
    return reduce(n, d);
  }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) noexcept {
    if (a.is_infinite() || b.is_infinite()) {
      return int{a.is_infinite()} <=> int{b.is_infinite()};
    }
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  /// "4/3", "1" or "inf".
  std::string str() const {
    if (is_infinite()) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  static Rational reduce(__int128 n, __int128 d) {
    auto abs128 = [](__int128 x) { return x < 0 ? -x : x; };
    __int128 a = abs128(n), b = abs128(d);
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr __int128 lim = std::numeric_limits<std::int64_t>::max();
    if (abs128(n) > lim || abs128(d) > lim)
      throw Error(Errc::invalid_param, "rational overflow");
    return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Exact integer view of a double, if it is one and fits comfortably.
inline std::optional<std::int64_t> exact_integer(double x) {
  if (!std::isfinite(x) || x != std::floor(x) || std::fabs(x) > 9.0e15)
    return std::nullopt;
  return static_cast<std::int64_t>(x);
}

/// total / base with 0/0 = 1 and x/0 = +inf, when both are exact integers.
inline std::optional<Rational> exact_ratio(double total, double base) {
  const auto t = exact_integer(total);
  const auto b = exact_integer(base);
  if (!t || !b) return std::nullopt;
  if (*b == 0) return *t == 0 ? Rational(1) : Rational::infinity();
  return Rational(*t, *b);
}

/// Floating ratio with the same conventions.
inline double ratio_value(double total, double base) {
  if (base == 0.0)
    return total == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return total / base;
}

/// Parses "1.5", "3/2", "2" or "1e0" into an exact rational. Plain decimals
/// and fractions are exact; anything else falls back to nullopt.
inline std::optional<Rational> parse_rational(std::string_view s) {
  auto digits = [](std::string_view d, std::int64_t& out) {
    if (d.empty() || d.size() > 17) return false;
    out = 0;
    for (char c : d) {
      if (c < '0' || c > '9') return false;
      out = out * 10 + (c - '0');
    }
    return true;
  };
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    std::int64_t n = 0, d = 0;
    if (!digits(s.substr(0, slash), n) || !digits(s.substr(slash + 1), d) ||
        d == 0)
      return std::nullopt;
    return Rational(n, d);
  }
  const auto dot = s.find('.');
  std::string_view whole = s.substr(0, dot);
  std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (whole.empty()) whole = "0";
  std::int64_t w = 0, f = 0;
  if (!digits(whole, w)) return std::nullopt;
  if (dot != std::string_view::npos && !frac.empty() && !digits(frac, f))
    return std::nullopt;
  if (whole.size() + frac.size() > 17) return std::nullopt;
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  return Rational(w * scale + f, scale);
}

}  // namespace hcs
