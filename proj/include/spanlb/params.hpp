// Copyright 2026 The spanlb Authors
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

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "spanlb/errors.hpp"

namespace spanlb {

/// Exact non-negative rational, used for epsilon and delta so that ceilings
/// like ceil(3 / 0.3) do not suffer from binary rounding.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t n, std::int64_t d) {
    if (d == 0) throw InputError("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    return g == 0 ? Rational{0, 1} : Rational{n / g, d / g};
  }

  /// Accepts "a/b", "a" or a plain decimal such as "0.25".
  static Rational parse(std::string_view text) {
    auto to_int = [&](std::string_view s) {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw InputError("cannot parse rational '" + std::string(text) + "'");
      return v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos)
      return make(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      const auto whole = text.substr(0, dot);
      const auto frac = text.substr(dot + 1);
      if (frac.size() > 15)
        throw InputError("too many decimals in '" + std::string(text) + "'");
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      const std::int64_t w = whole.empty() ? 0 : to_int(whole);
      const std::int64_t f = frac.empty() ? 0 : to_int(frac);
      return make(w * scale + f, scale);
    }
    return make(to_int(text), 1);
  }

  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  std::string to_string() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Scalar parameters of the whole construction pipeline.
struct ConstructionParams {
  std::optional<Rational> epsilon;
  std::optional<Rational> delta;        // 1 / (2 d^2) when derived from epsilon
  std::optional<std::uint32_t> advisory_k;  // asymptotic choice, often 0 here
  std::uint32_t d = 0;                  // shell dimension
  std::uint64_t p = 0;                  // coordinate range [p]
  std::uint32_t k = 0;                  // average-freeness order = base path length
  std::uint64_t q = 0;                  // digit base (k + 1) p
  std::uint64_t N = 0;                  // universe size q^d
  std::uint64_t r_star = 0;             // squared norm of the chosen shell
  bool fixture = false;                 // handcrafted set, no shell provenance

  // Stage-dependent; populated as the pipeline advances.
  std::optional<std::uint32_t> pair_distance;     // Delta of the current host
  std::optional<std::uint32_t> extension_length;  // ell = 3 Delta
  std::optional<std::uint32_t> op_distance;       // D = Delta ell + Delta - 1

  /// Throws InputError if the recorded fields are inconsistent.
  void validate() const;
};

/// Overflow-checked integer power.
inline std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t out = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base)
      throw BudgetExceeded("integer overflow in " + std::to_string(base) + "^" +
                           std::to_string(exp));
    out *= base;
  }
  return out;
}

/// d = ceil(3 / epsilon) for 0 < epsilon <= 1.
inline std::uint32_t dimension_for_epsilon(const Rational& eps) {
  if (eps.num <= 0 || eps.num > eps.den)
    throw InputError("epsilon must lie in (0, 1], got " + eps.to_string());
  const std::int64_t n = 3 * eps.den;
  return static_cast<std::uint32_t>((n + eps.num - 1) / eps.num);
}

/// delta = 1 / (2 d^2).
inline Rational delta_for_dimension(std::uint32_t d) {
  return Rational::make(1, 2 * static_cast<std::int64_t>(d) * d);
}

/// Largest r with r^e <= x.
inline std::uint64_t integer_root(std::uint64_t x, std::uint32_t e) {
  if (e == 0) throw InputError("integer_root: zero exponent");
  if (e == 1) return x;
  std::uint64_t lo = 0;
  std::uint64_t hi = x < 2 ? x : std::min<std::uint64_t>(x, 1ULL << 32);
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    bool fits = true;
    std::uint64_t acc = 1;
    for (std::uint32_t i = 0; i < e && fits; ++i) {
      if (acc > x / mid) fits = false;
      else acc *= mid;
    }
    if (fits && acc <= x) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

/// Asymptotic k = floor(p^(delta d / (1 - delta d))) - 1 with
/// delta = 1/(2 d^2); the exponent simplifies to 1 / (2d - 1).
/// Returns 0 (not negative) when the floor is below 2.
inline std::uint32_t advisory_k(std::uint64_t p, std::uint32_t d) {
  const std::uint64_t root = integer_root(p, 2 * d - 1);
  return root == 0 ? 0 : static_cast<std::uint32_t>(root - 1);
}

inline void ConstructionParams::validate() const {
  if (k < 1) throw DegenerateParameterError("k must be at least 1");
  if (!fixture) {
    if (d < 1) throw InputError("d must be at least 1");
    if (p < 2) throw InputError("p must be at least 2");
    if (q != (static_cast<std::uint64_t>(k) + 1) * p)
      throw InputError("q must equal (k + 1) p");
    if (N != checked_pow(q, d)) throw InputError("N must equal q^d");
  }
  if (epsilon) {
    if (d != dimension_for_epsilon(*epsilon))
      throw InputError("d must equal ceil(3 / epsilon)");
    if (delta && !(*delta == delta_for_dimension(d)))
      throw InputError("delta must equal 1 / (2 d^2)");
  }
  if (pair_distance && extension_length &&
      *extension_length != 3 * *pair_distance)
    throw InputError("ell must equal 3 Delta");
  if (pair_distance && extension_length && op_distance &&
      *op_distance != *pair_distance * *extension_length + *pair_distance - 1)
    throw InputError("D must equal Delta ell + (Delta - 1)");
}

}  // namespace spanlb
