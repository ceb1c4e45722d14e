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
#include <limits>
#include <string>
#include <vector>

#include "spanlb/avgfree.hpp"
#include "spanlb/errors.hpp"
#include "spanlb/graph.hpp"
#include "spanlb/labels.hpp"
#include "spanlb/pairs.hpp"
#include "spanlb/parallel.hpp"
#include "spanlb/params.hpp"

namespace spanlb {

/// Nodes (x, j) for x in [(k+1)N], j in {0..k}; edges {(x, j), (x + a, j + 1)}
/// for a in A. Node id of (x, j) is (x - 1)(k + 1) + j.
struct LayeredGraph {
  Graph graph;
  NodeLabelTable labels;
  ConstructionParams params;
  AvgFreeSet avgfree;
  bool verification_waived = false;

  std::uint32_t layers() const { return params.k + 1; }
  std::uint64_t width() const { return (std::uint64_t{params.k} + 1) * params.N; }
  NodeId id(std::uint64_t x, std::uint32_t j) const {
    return static_cast<NodeId>((x - 1) * layers() + j);
  }
};

struct BaseBuild {
  LayeredGraph layered;
  PairSet pairs;
};

struct BaseOptions {
  /// Skip the exhaustive average-freeness check; recorded in the manifest.
  bool waive_verification = false;
  std::uint64_t node_ceiling = 10'000'000;
};

/// Builds the layered graph and the pair set {((x,0), (x + k a, k))} with
/// canonical paths (x + j a, j), j = 0..k. Edges are admitted for all
/// x, y in [(k+1)N] so that every canonical path exists.
inline BaseBuild build_base(const AvgFreeSet& a, const BaseOptions& opt = {}) {
  const std::uint32_t k = a.k;
  if (k == 0) throw DegenerateParameterError("build_base: k = 0 gives no paths");
  if (a.elements.empty()) throw InputError("build_base: empty set A");
  if (!opt.waive_verification) {
    if (auto bad = verify_avgfree(a); !bad.empty())
      throw InputError("build_base: A is not " + std::to_string(k) +
                       "-average-free (e.g. mean " +
                       std::to_string(bad.front().mean) + ")");
  }

  BaseBuild out;
  LayeredGraph& lg = out.layered;
  lg.avgfree = a;
  lg.verification_waived = opt.waive_verification;
  auto& params = lg.params;
  params.k = k;
  params.p = a.p;
  params.d = a.d;
  params.N = a.N;
  params.q = a.fixture ? 0 : (std::uint64_t{k} + 1) * a.p;
  params.r_star = a.r_star;
  params.fixture = a.fixture;
  params.pair_distance = k;

  const std::uint64_t width = lg.width();
  const std::uint64_t nodes = width * lg.layers();
  if (nodes > opt.node_ceiling || nodes > std::numeric_limits<NodeId>::max())
    throw BudgetExceeded("build_base: " + std::to_string(nodes) +
                         " nodes exceeds ceiling " +
                         std::to_string(opt.node_ceiling));

  std::vector<NodeLabel> labels;
  labels.reserve(nodes);
  for (std::uint64_t x = 1; x <= width; ++x)
    for (std::uint32_t j = 0; j <= k; ++j) labels.emplace_back(BaseLabel{x, j});
  lg.labels = NodeLabelTable(std::move(labels));

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(width) * k * a.size());
  for (std::uint64_t x = 1; x <= width; ++x)
    for (std::uint32_t j = 0; j < k; ++j)
      for (auto step : a.elements) {
        if (x + step > width) break;
        edges.push_back({lg.id(x, j), lg.id(x + step, j + 1)});
      }
  lg.graph = Graph(static_cast<std::size_t>(nodes), std::move(edges));

  auto& ps = out.pairs;
  ps.pairs.reserve(a.N * a.size());
  for (std::uint64_t x = 1; x <= a.N; ++x)
    for (auto step : a.elements) {
      Path path;
      path.nodes.reserve(k + 1);
      for (std::uint32_t j = 0; j <= k; ++j)
        path.nodes.push_back(lg.id(x + j * step, j));
      ps.pairs.push_back({path.front(), path.back()});
      ps.paths.push_back(std::move(path));
      ps.origins.emplace_back(BaseOrigin{step, x});
    }
  return out;
}

struct EdgeSharing {
  EdgeId edge = 0;
  std::size_t first_pair = 0;
  std::size_t second_pair = 0;
  friend bool operator==(const EdgeSharing&, const EdgeSharing&) = default;
};

struct BaseAuditReport {
  std::vector<std::size_t> unique_sp_failures;
  std::vector<std::size_t> distance_failures;
  std::vector<EdgeSharing> edge_disjoint_violations;

  bool clean() const {
    return unique_sp_failures.empty() && distance_failures.empty() &&
           edge_disjoint_violations.empty();
  }
};

namespace detail {

/// Layer of every node if all edges join consecutive layers, else empty.
inline std::vector<std::uint32_t> layering(const LayeredGraph& lg) {
  std::vector<std::uint32_t> layer(lg.graph.node_count());
  for (NodeId v = 0; v < layer.size(); ++v) {
    const auto* l = std::get_if<BaseLabel>(&lg.labels[v]);
    if (l == nullptr) return {};
    layer[v] = l->layer;
  }
  for (const auto& e : lg.graph.edges()) {
    const auto a = layer[e.u];
    const auto b = layer[e.v];
    if (a + 1 != b && b + 1 != a) return {};
  }
  return layer;
}

}  // namespace detail

/// Checks unique shortest paths at distance k and edge-disjointness of the
/// canonical paths.
///
/// When every edge joins consecutive layers, an s-t path from layer 0 to
/// layer k has at least k edges and the length-k ones are exactly the
/// layer-monotone paths, so one forward sweep per source counts them. Any
/// other graph falls back to count_shortest_paths per pair.
inline BaseAuditReport audit_base(const LayeredGraph& lg, const PairSet& ps,
                                  unsigned threads = 0) {
  const Graph& g = lg.graph;
  const std::uint32_t k = lg.params.k;
  const std::size_t m = ps.size();
  std::vector<std::uint8_t> unique_fail(m, 0), dist_fail(m, 0);

  const auto layer = detail::layering(lg);
  // Pairs are grouped by source.
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return ps.pairs[x].s < ps.pairs[y].s;
  });
  std::vector<std::size_t> group_start;
  for (std::size_t i = 0; i < m; ++i)
    if (i == 0 || ps.pairs[order[i]].s != ps.pairs[order[i - 1]].s)
      group_start.push_back(i);
  group_start.push_back(m);
  const std::size_t groups = group_start.size() - 1;

  parallel_chunks(groups, threads, [&](std::size_t gb, std::size_t ge) {
    std::vector<std::uint8_t> count(layer.empty() ? 0 : g.node_count(), 0);
    std::vector<NodeId> frontier, next, touched;
    BfsWorkspace ws;
    for (std::size_t grp = gb; grp < ge; ++grp) {
      const NodeId s = ps.pairs[order[group_start[grp]]].s;
      if (layer.empty()) {
        for (std::size_t i = group_start[grp]; i < group_start[grp + 1]; ++i) {
          const auto idx = order[i];
          const auto pc = ws.count_paths(g, s, ps.pairs[idx].t);
          if (pc.dist != k) dist_fail[idx] = 1;
          else if (pc.multiplicity != Multiplicity::kOne) unique_fail[idx] = 1;
        }
        continue;
      }
      // Forward sweep over k layers with counts saturated at 2.
      frontier.assign(1, s);
      touched.assign(1, s);
      count[s] = 1;
      for (std::uint32_t step = 0; step < k; ++step) {
        next.clear();
        for (NodeId u : frontier) {
          for (NodeId v : g.neighbors(u)) {
            if (layer[v] != layer[u] + 1) continue;
            if (count[v] == 0) {
              next.push_back(v);
              touched.push_back(v);
            }
            count[v] = static_cast<std::uint8_t>(
                std::min<unsigned>(2, count[v] + count[u]));
          }
        }
        frontier.swap(next);
      }
      for (std::size_t i = group_start[grp]; i < group_start[grp + 1]; ++i) {
        const auto idx = order[i];
        const NodeId t = ps.pairs[idx].t;
        if (layer[s] != 0 || layer[t] != k || count[t] == 0) dist_fail[idx] = 1;
        else if (count[t] > 1) unique_fail[idx] = 1;
      }
      for (NodeId v : touched) count[v] = 0;
    }
  });

  BaseAuditReport report;
  std::vector<std::size_t> claim(g.edge_count(), SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) {
    bool path_ok = ps.has_paths() && ps.paths[i].length() == k &&
                   ps.paths[i].front() == ps.pairs[i].s &&
                   ps.paths[i].back() == ps.pairs[i].t &&
                   is_valid_path(g, ps.paths[i]);
    if (!path_ok) dist_fail[i] = 1;
    if (!ps.has_paths()) continue;
    const auto& nodes = ps.paths[i].nodes;
    for (std::size_t h = 0; h + 1 < nodes.size(); ++h) {
      const auto e = g.find_edge(nodes[h], nodes[h + 1]);
      if (!e) continue;
      if (claim[*e] == SIZE_MAX) claim[*e] = i;
      else if (claim[*e] != i)
        report.edge_disjoint_violations.push_back({*e, claim[*e], i});
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (dist_fail[i]) report.distance_failures.push_back(i);
    else if (unique_fail[i]) report.unique_sp_failures.push_back(i);
  }
  return report;
}

}  // namespace spanlb
