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

#include <catch_amalgamated.hpp>

#include <algorithm>

#include "oracles.hpp"
#include "spanlb/spanlb.hpp"

using namespace spanlb;

TEST_CASE("shell matches an odometer enumeration of the lattice") {
  for (std::uint64_t p = 2; p <= 5; ++p)
    for (std::uint32_t d = 1; d <= 3; ++d) {
      const auto shell = build_shell(p, d);
      auto [r, vectors] = oracle::shell(p, d);
      CHECK(shell.r_star == r);
      std::sort(vectors.begin(), vectors.end());
      std::vector<std::vector<std::uint32_t>> got(shell.vectors.begin(),
                                                  shell.vectors.end());
      CHECK(got == vectors);
      std::size_t total = 0;
      for (const auto& [norm, count] : shell.sizes) total += count;
      CHECK(total == checked_pow(p, d));
    }
}

TEST_CASE("shell picks the smallest norm among equally large slices") {
  // [2]^2 has norms 2, 5, 5, 8.
  const auto s = build_shell(2, 2);
  CHECK(s.r_star == 5);
  CHECK(s.vectors.size() == 2);
  // [2]^1: norms 1 and 4 tie with one vector each.
  CHECK(build_shell(2, 1).r_star == 1);
}

TEST_CASE("encoding agrees with the positional oracle and is injective") {
  for (std::uint32_t k : {1u, 2u, 4u}) {
    const std::uint64_t p = 4;
    const auto [r, vectors] = oracle::shell(p, 3);
    std::vector<std::uint64_t> codes;
    for (const auto& v : vectors) {
      const auto code = encode_vector(v, k, p);
      CHECK(code == oracle::encode(v, (k + 1) * p));
      codes.push_back(code);
    }
    std::sort(codes.begin(), codes.end());
    CHECK(std::adjacent_find(codes.begin(), codes.end()) == codes.end());
  }
  const std::vector<std::uint32_t> zero = {0, 1};
  CHECK_THROWS_AS(encode_vector(zero, 2, 3), InputError);
  const std::vector<std::uint64_t> digits = {3, 9};
  CHECK_THROWS_AS(encode_digits(digits, 9), InputError);
}

TEST_CASE("built sets are the sorted encoded shell with consistent metadata") {
  const auto a = build_avgfree(3, 3, 2);
  const auto [r, vectors] = oracle::shell(3, 3);
  std::vector<std::uint64_t> want;
  for (const auto& v : vectors) want.push_back(oracle::encode(v, 9));
  std::sort(want.begin(), want.end());
  CHECK(a.elements == want);
  CHECK(a.N == 729);
  CHECK(a.r_star == r);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(encode_vector(a.shell[i], a.k, a.p) == a.elements[i]);
  for (auto x : a.elements) {
    CHECK(x >= 1);
    CHECK(x <= a.N);
  }
}

TEST_CASE("a planted average is reported") {
  const auto a = AvgFreeSet::from_elements(10, 2, {1, 2, 3});
  const auto bad = verify_avgfree(a);
  REQUIRE_FALSE(bad.empty());
  CHECK(bad.front().tuple == std::vector<std::uint64_t>{1, 3});
  CHECK(bad.front().mean == 2);
  CHECK(oracle::has_average_violation(a.elements, 2));
  const auto sampled = verify_avgfree(a, VerifyOptions::sampled(2000, 3));
  CHECK_FALSE(sampled.empty());
}

TEST_CASE("higher-order averages are found among repeated elements") {
  // 1 + 1 + 4 = 3 * 2.
  const auto a = AvgFreeSet::from_elements(10, 3, {1, 2, 4});
  const auto bad = verify_avgfree(a);
  REQUIRE_FALSE(bad.empty());
  CHECK(bad.front().tuple == std::vector<std::uint64_t>{1, 1, 4});
  CHECK(oracle::has_average_violation(a.elements, 3));
}

TEST_CASE("verification agrees with the ordered-tuple oracle on small sets") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng.below(3));
    std::vector<std::uint64_t> elems;
    for (std::uint64_t x = 1; x <= 30; ++x)
      if (rng.below(4) == 0) elems.push_back(x);
    if (elems.empty()) continue;
    const auto a = AvgFreeSet::from_elements(30, k, elems);
    CHECK(verify_avgfree(a).empty() == !oracle::has_average_violation(a.elements, k));
  }
}

TEST_CASE("shell sets are average-free across a parameter grid") {
  for (std::uint64_t p = 2; p <= 4; ++p)
    for (std::uint32_t d = 2; d <= 3; ++d)
      for (std::uint32_t k = 1; k <= 3; ++k) {
        const auto a = build_avgfree(p, d, k);
        CHECK(verify_avgfree(a).empty());
        CHECK(meets_shell_size_bound(a));
        if (std::pow(double(a.size()), double(k)) <= 2e5)
          CHECK_FALSE(oracle::has_average_violation(a.elements, k));
      }
}

TEST_CASE("the shell size bound holds for every tested lattice") {
  for (std::uint64_t p = 2; p <= 8; ++p)
    for (std::uint32_t d = 2; d <= 4; ++d) {
      const auto a = build_avgfree(p, d, 1);
      const double bound = std::pow(double(p), double(d)) / (d * double(p) * p);
      CHECK(double(a.size()) >= bound);
      CHECK(meets_shell_size_bound(a));
    }
}

TEST_CASE("size cap keeps the smallest elements") {
  const auto full = build_avgfree(4, 3, 2);
  const auto capped = build_avgfree(4, 3, 2, 3);
  REQUIRE(capped.size() == 3);
  CHECK(std::equal(capped.elements.begin(), capped.elements.end(), full.elements.begin()));
  CHECK(verify_avgfree(capped).empty());
}

TEST_CASE("budgets and argument checks") {
  CHECK_THROWS_AS(build_shell(10, 8), BudgetExceeded);
  CHECK_THROWS_AS(build_avgfree(1, 2, 2), InputError);
  CHECK_THROWS_AS(build_avgfree(3, 2, 0), InputError);
  VerifyOptions opt;
  opt.budget = 10;
  CHECK_THROWS_AS(verify_avgfree(build_avgfree(4, 3, 2), opt), BudgetExceeded);
  CHECK_THROWS_AS(AvgFreeSet::from_elements(5, 2, {0, 1}), InputError);
  CHECK_THROWS_AS(AvgFreeSet::from_elements(5, 2, {6}), InputError);
  CHECK_THROWS_AS(AvgFreeSet::from_elements(5, 2, {2, 2}), InputError);
}

TEST_CASE("k = 1 and singletons are trivially average-free") {
  CHECK(verify_avgfree(AvgFreeSet::from_elements(9, 1, {1, 2, 3})).empty());
  CHECK(verify_avgfree(AvgFreeSet::from_elements(9, 4, {5})).empty());
}
