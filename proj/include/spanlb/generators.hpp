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
#include <set>
#include <vector>

#include "spanlb/errors.hpp"
#include "spanlb/graph.hpp"
#include "spanlb/rng.hpp"

namespace spanlb {

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return Graph(n, std::move(edges));
}

/// Star K_{1,leaves} with center 0.
inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return Graph(leaves + 1, std::move(edges));
}

/// Uniform random labelled tree from a seeded random parent sequence.
inline Graph random_tree(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v)
    edges.push_back({static_cast<NodeId>(rng.below(v)), v});
  return Graph(n, std::move(edges));
}

/// Uniform G(n, m): m distinct edges drawn by rejection, or the complement
/// drawn instead when m exceeds half of all possible edges.
inline Graph random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  const std::uint64_t all = std::uint64_t{n} * (n - (n > 0)) / 2;
  if (m > all)
    throw InputError("random_graph: " + std::to_string(m) +
                     " edges exceed the " + std::to_string(all) + " possible");
  Rng rng(seed);
  const bool invert = 2 * m > all;
  const std::uint64_t draw = invert ? all - m : m;
  std::set<Edge> chosen;
  while (chosen.size() < draw) {
    const auto u = static_cast<NodeId>(rng.below(n));
    const auto v = static_cast<NodeId>(rng.below(n));
    if (u != v) chosen.insert(make_edge(u, v));
  }
  std::vector<Edge> edges;
  if (!invert) {
    edges.assign(chosen.begin(), chosen.end());
  } else {
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (!chosen.count({u, v})) edges.push_back({u, v});
  }
  return Graph(n, std::move(edges));
}

}  // namespace spanlb
