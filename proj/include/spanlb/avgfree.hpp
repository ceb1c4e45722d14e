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
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spanlb/errors.hpp"
#include "spanlb/parallel.hpp"
#include "spanlb/params.hpp"
#include "spanlb/rng.hpp"

namespace spanlb {

using LatticeVector = std::vector<std::uint32_t>;

/// Partition of [p]^d by squared Euclidean norm, with the selected shell.
struct Shell {
  std::uint64_t p = 0;
  std::uint32_t d = 0;
  std::uint64_t r_star = 0;
  std::map<std::uint64_t, std::size_t> sizes;  // squared norm -> |X_r|
  std::vector<LatticeVector> vectors;          // X_{r_star}, lexicographic
};

inline constexpr std::uint64_t kDefaultLatticeBudget = 10'000'000;

/// Largest constant-norm slice of [p]^d; ties go to the smallest norm.
inline Shell build_shell(std::uint64_t p, std::uint32_t d,
                         std::uint64_t budget = kDefaultLatticeBudget) {
  if (p < 1 || d < 1) throw InputError("build_shell: need p >= 1 and d >= 1");
  const std::uint64_t total = checked_pow(p, d);
  if (total > budget)
    throw BudgetExceeded("build_shell: [p]^d has " + std::to_string(total) +
                         " vectors, budget " + std::to_string(budget));

  Shell shell;
  shell.p = p;
  shell.d = d;
  LatticeVector v(d, 1);
  std::vector<std::uint64_t> norms;
  norms.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) {
    std::uint64_t r = 0;
    for (auto c : v) r += std::uint64_t{c} * c;
    norms.push_back(r);
    ++shell.sizes[r];
    // Odometer step with the last coordinate fastest: lexicographic order.
    for (std::size_t j = d; j-- > 0;) {
      if (v[j] < p) {
        ++v[j];
        break;
      }
      v[j] = 1;
    }
  }
  std::size_t best = 0;
  for (const auto& [r, count] : shell.sizes) {
    if (count > best) {
      best = count;
      shell.r_star = r;
    }
  }
  v.assign(d, 1);
  for (std::uint64_t i = 0; i < total; ++i) {
    if (norms[i] == shell.r_star) shell.vectors.push_back(v);
    for (std::size_t j = d; j-- > 0;) {
      if (v[j] < p) {
        ++v[j];
        break;
      }
      v[j] = 1;
    }
  }
  return shell;
}

/// Sum of digits[j] * q^j. Digits may exceed p (sums of shell vectors) but
/// must stay below q, otherwise a carry would break injectivity.
inline std::uint64_t encode_digits(std::span<const std::uint64_t> digits,
                                   std::uint64_t q) {
  std::uint64_t out = 0;
  std::uint64_t place = 1;
  for (std::size_t j = 0; j < digits.size(); ++j) {
    if (digits[j] >= q) throw InputError("encode_digits: digit >= base");
    if (digits[j] != 0 && place > (UINT64_MAX - out) / digits[j])
      throw BudgetExceeded("encode_digits: overflow");
    out += digits[j] * place;
    if (j + 1 < digits.size()) {
      if (place > UINT64_MAX / q) throw BudgetExceeded("encode_digits: overflow");
      place *= q;
    }
  }
  return out;
}

/// f(v) = v_1 + v_2 q + ... + v_d q^(d-1) with q = (k + 1) p.
inline std::uint64_t encode_vector(std::span<const std::uint32_t> v,
                                   std::uint32_t k, std::uint64_t p) {
  std::vector<std::uint64_t> digits(v.begin(), v.end());
  for (auto c : digits)
    if (c < 1 || c > p)
      throw InputError("encode_vector: coordinate " + std::to_string(c) +
                       " outside [1, " + std::to_string(p) + "]");
  return encode_digits(digits, (std::uint64_t{k} + 1) * p);
}

/// A k-average-free subset of [N], with the shell it was encoded from (empty
/// for handcrafted fixtures).
struct AvgFreeSet {
  std::uint64_t N = 0;
  std::uint32_t k = 0;
  std::uint64_t p = 0;
  std::uint32_t d = 0;
  std::uint64_t r_star = 0;
  std::vector<std::uint64_t> elements;
  std::vector<LatticeVector> shell;
  bool fixture = false;

  std::size_t size() const { return elements.size(); }
  bool contains(std::uint64_t x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
  }

  /// Handcrafted set; elements are sorted and checked against [1, N].
  static AvgFreeSet from_elements(std::uint64_t N, std::uint32_t k,
                                  std::vector<std::uint64_t> elements) {
    std::sort(elements.begin(), elements.end());
    if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
      throw InputError("AvgFreeSet: duplicate element");
    for (auto x : elements)
      if (x < 1 || x > N)
        throw InputError("AvgFreeSet: element " + std::to_string(x) +
                         " outside [1, " + std::to_string(N) + "]");
    AvgFreeSet a;
    a.N = N;
    a.k = k;
    a.elements = std::move(elements);
    a.fixture = true;
    return a;
  }
};

/// Behrend-shell set A = f(X_{r*}) inside [((k+1)p)^d]. `size_cap` keeps only
/// the smallest elements, which preserves average-freeness.
inline AvgFreeSet build_avgfree(std::uint64_t p, std::uint32_t d,
                                std::uint32_t k,
                                std::optional<std::size_t> size_cap = {}) {
  if (p < 2 || d < 1 || k < 1)
    throw InputError("build_avgfree: need p >= 2, d >= 1, k >= 1");
  const std::uint64_t q = (std::uint64_t{k} + 1) * p;
  AvgFreeSet a;
  a.N = checked_pow(q, d);
  a.k = k;
  a.p = p;
  a.d = d;
  Shell shell = build_shell(p, d);
  a.r_star = shell.r_star;
  for (const auto& v : shell.vectors) a.elements.push_back(encode_vector(v, k, p));
  // Keep shell order aligned with the sorted elements.
  std::vector<std::size_t> order(shell.vectors.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a.elements[x] < a.elements[y];
  });
  std::vector<std::uint64_t> sorted;
  for (auto i : order) {
    sorted.push_back(a.elements[i]);
    a.shell.push_back(shell.vectors[i]);
  }
  a.elements = std::move(sorted);
  if (size_cap && *size_cap < a.elements.size()) {
    a.elements.resize(*size_cap);
    a.shell.resize(*size_cap);
  }
  return a;
}

/// |A| >= p^d / (d p^2), compared exactly as p^(d-2) <= d |A| (d >= 2).
/// For d < 2 the right side is below one and any non-empty set passes.
inline bool meets_shell_size_bound(const AvgFreeSet& a) {
  if (a.fixture) return true;
  if (a.d < 2) return a.size() >= 1;
  return checked_pow(a.p, a.d - 2) <= std::uint64_t{a.d} * a.size();
}

/// k elements (not all equal) whose sum is k times another element.
struct AvgFreeViolation {
  std::vector<std::uint64_t> tuple;
  std::uint64_t mean = 0;

  friend bool operator==(const AvgFreeViolation&,
                         const AvgFreeViolation&) = default;
};

struct VerifyOptions {
  enum class Mode { kExhaustive, kSampled };
  Mode mode = Mode::kExhaustive;
  std::uint64_t trials = 100'000;  // sampled mode
  std::uint64_t seed = 0;          // sampled mode
  std::uint64_t budget = 100'000'000;  // max |A|^k for exhaustive mode
  std::size_t max_violations = 64;
  unsigned threads = 0;

  static VerifyOptions exhaustive() { return {}; }
  static VerifyOptions sampled(std::uint64_t trials, std::uint64_t seed) {
    VerifyOptions o;
    o.mode = Mode::kSampled;
    o.trials = trials;
    o.seed = seed;
    return o;
  }
};

namespace detail {

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint32_t exp,
                                    std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

inline void check_tuple(const AvgFreeSet& a, std::span<const std::size_t> idx,
                        std::vector<AvgFreeViolation>& out,
                        std::size_t max_violations) {
  bool all_equal = true;
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    sum += a.elements[idx[i]];
    if (idx[i] != idx[0]) all_equal = false;
  }
  if (all_equal || sum % a.k != 0) return;
  const std::uint64_t mean = sum / a.k;
  if (!a.contains(mean) || out.size() >= max_violations) return;
  AvgFreeViolation v;
  for (auto i : idx) v.tuple.push_back(a.elements[i]);
  std::sort(v.tuple.begin(), v.tuple.end());
  v.mean = mean;
  out.push_back(std::move(v));
}

}  // namespace detail

/// Searches for k-tuples violating average-freeness. Exhaustive mode walks
/// every k-multiset (non-decreasing index tuple) and refuses with
/// BudgetExceeded when |A|^k is above the budget. Empty result means no
/// violation was found.
inline std::vector<AvgFreeViolation> verify_avgfree(
    const AvgFreeSet& a, const VerifyOptions& opt = VerifyOptions::exhaustive()) {
  const std::size_t m = a.size();
  const std::uint32_t k = a.k;
  if (k < 1) throw InputError("verify_avgfree: k must be at least 1");
  std::vector<AvgFreeViolation> found;
  if (m < 2 || k < 2) return found;  // "not all equal" is unsatisfiable

  if (opt.mode == VerifyOptions::Mode::kSampled) {
    Rng rng(opt.seed);
    std::vector<std::size_t> idx(k);
    for (std::uint64_t t = 0; t < opt.trials; ++t) {
      for (auto& i : idx) i = static_cast<std::size_t>(rng.below(m));
      detail::check_tuple(a, idx, found, opt.max_violations);
    }
    return found;
  }

  const std::uint64_t tuples = detail::saturating_pow(m, k, opt.budget);
  if (tuples > opt.budget)
    throw BudgetExceeded("verify_avgfree: exhaustive mode needs |A|^k = " +
                         std::to_string(m) + "^" + std::to_string(k) +
                         " tuples, above budget " + std::to_string(opt.budget));

  std::vector<std::vector<AvgFreeViolation>> per_first(m);
  parallel_for(m, opt.threads, [&](std::size_t first) {
    auto& local = per_first[first];
    std::vector<std::size_t> idx(k, first);
    for (;;) {
      detail::check_tuple(a, idx, local, opt.max_violations);
      // Next non-decreasing tuple with idx[0] fixed.
      std::size_t j = k;
      while (j > 1 && idx[j - 1] == m - 1) --j;
      if (j == 1) break;
      ++idx[j - 1];
      for (std::size_t t = j; t < k; ++t) idx[t] = idx[j - 1];
    }
  });
  for (auto& local : per_first)
    for (auto& v : local) {
      if (found.size() >= opt.max_violations) break;
      found.push_back(std::move(v));
    }
  return found;
}

}  // namespace spanlb
