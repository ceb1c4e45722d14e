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

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "spanlb/graph.hpp"

namespace spanlb {

/// Designated pair, oriented from s to t.
struct NodePair {
  NodeId s = 0;
  NodeId t = 0;
  friend bool operator==(const NodePair&, const NodePair&) = default;
};

/// Base pair ((x, 0), (x + k a, k)).
struct BaseOrigin {
  std::uint64_t witness_a = 0;
  std::uint64_t start_x = 0;
  friend bool operator==(const BaseOrigin&, const BaseOrigin&) = default;
};

/// Product pair built from host pairs `first` (coordinate 1) and `second`.
struct ProductOrigin {
  std::size_t first = 0;
  std::size_t second = 0;
  friend bool operator==(const ProductOrigin&, const ProductOrigin&) = default;
};

/// Obstacle-product pair derived from host pair `host_pair`.
struct HostOrigin {
  std::size_t host_pair = 0;
  friend bool operator==(const HostOrigin&, const HostOrigin&) = default;
};

using PairOrigin =
    std::variant<std::monostate, BaseOrigin, ProductOrigin, HostOrigin>;

/// Pairs with one canonical path each; paths[i] runs from pairs[i].s to
/// pairs[i].t. `paths` may be empty for pair sets read back from disk.
struct PairSet {
  std::vector<NodePair> pairs;
  std::vector<Path> paths;
  std::vector<PairOrigin> origins;

  std::size_t size() const { return pairs.size(); }
  bool has_paths() const { return paths.size() == pairs.size(); }
};

}  // namespace spanlb
