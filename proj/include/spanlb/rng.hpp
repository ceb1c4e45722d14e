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

#include <cstdint>
#include <random>

#include "spanlb/errors.hpp"

namespace spanlb {

/// Seeded generator shared by every randomized routine.
///
/// The engine is std::mt19937_64 seeded with the 64-bit seed directly; its
/// output sequence is fixed by the C++ standard. Bounded draws use rejection
/// sampling on raw 64-bit outputs: with limit = 2^64 - (2^64 mod n), draw x
/// until x < limit and return x mod n. The standard distributions are not used
/// because their algorithms differ across library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw InputError("Rng::below: empty range");
    // 2^64 mod n; draws at or above 2^64 - rem are rejected.
    const std::uint64_t rem = (UINT64_MAX % n + 1) % n;
    for (;;) {
      const std::uint64_t x = engine_();
      if (rem == 0 || x <= UINT64_MAX - rem) return x % n;
    }
  }

  /// Fisher-Yates shuffle driven by below().
  template <typename Range>
  void shuffle(Range& r) {
    const auto n = static_cast<std::uint64_t>(r.size());
    for (std::uint64_t i = n; i > 1; --i) {
      const std::uint64_t j = below(i);
      using std::swap;
      swap(r[i - 1], r[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace spanlb
