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

#include <memory>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "spanlb/spanlb.hpp"

namespace fixtures {

inline oracle::Adj adjacency_of(const spanlb::Graph& g) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const auto& e : g.edges()) edges.emplace_back(e.u, e.v);
  return oracle::adjacency(g.node_count(), edges);
}

/// Same, without the edges whose mask flag is cleared.
inline oracle::Adj adjacency_of(const spanlb::Graph& g, const spanlb::EdgeMask& kept) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (spanlb::EdgeId e = 0; e < g.edge_count(); ++e)
    if (kept.kept(e)) edges.emplace_back(g.edge(e).u, g.edge(e).v);
  return oracle::adjacency(g.node_count(), edges);
}

inline const spanlb::BaseBuild& base() {
  static const auto b = spanlb::build_base(spanlb::fixture_set());
  return b;
}

inline const spanlb::CompressedGraph& compressed() {
  static const auto cg = [] {
    const auto& b = base();
    return spanlb::compress(b.layered, b.pairs, spanlb::orient(b.layered, b.pairs));
  }();
  return cg;
}

inline const spanlb::ObstacleGraph& op_on_base() {
  static const auto og = spanlb::build_op(
      std::make_shared<const spanlb::Graph>(base().layered.graph), base().pairs, 2,
      "base", base().layered.params);
  return og;
}

inline const spanlb::ObstacleGraph& op_on_compressed() {
  static const auto og = spanlb::build_op(
      std::make_shared<const spanlb::Graph>(compressed().graph), compressed().pairs, 4,
      "compressed", compressed().params);
  return og;
}

}  // namespace fixtures
