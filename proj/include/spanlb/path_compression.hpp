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
#include <tuple>
#include <vector>

#include "spanlb/base_graph.hpp"
#include "spanlb/errors.hpp"
#include "spanlb/graph.hpp"
#include "spanlb/labels.hpp"
#include "spanlb/pairs.hpp"
#include "spanlb/parallel.hpp"
#include "spanlb/params.hpp"

namespace spanlb {

/// Direction of each base edge induced by the canonical path that uses it.
/// Edges on no canonical path stay unoriented and produce no product edges.
class ForwardOrientation {
 public:
  ForwardOrientation() = default;
  explicit ForwardOrientation(std::size_t edge_count)
      : dir_(edge_count, 0), owner_(edge_count, kNone) {}

  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  bool oriented(EdgeId e) const { return dir_[e] != 0; }
  /// Pair whose canonical path uses e, or kNone.
  std::size_t owner(EdgeId e) const { return owner_[e]; }
  std::size_t edge_count() const { return dir_.size(); }

  /// Tail of an oriented edge.
  NodeId tail(const Graph& g, EdgeId e) const {
    return dir_[e] > 0 ? g.edge(e).u : g.edge(e).v;
  }
  NodeId head(const Graph& g, EdgeId e) const {
    return dir_[e] > 0 ? g.edge(e).v : g.edge(e).u;
  }

  /// Oriented edges as (tail, head), in edge-id order.
  std::vector<std::pair<NodeId, NodeId>> arcs(const Graph& g) const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (EdgeId e = 0; e < dir_.size(); ++e)
      if (dir_[e] != 0) out.emplace_back(tail(g, e), head(g, e));
    return out;
  }
  std::size_t forward_count() const {
    return static_cast<std::size_t>(
        std::count_if(dir_.begin(), dir_.end(), [](auto d) { return d != 0; }));
  }

  void set(const Graph& g, EdgeId e, NodeId from, std::size_t pair) {
    dir_[e] = from == g.edge(e).u ? 1 : -1;
    owner_[e] = pair;
  }

 private:
  std::vector<std::int8_t> dir_;
  std::vector<std::size_t> owner_;
};

/// Orients every canonical-path edge from s towards t. Throws
/// ConstructionViolation if two pairs claim the same edge.
inline ForwardOrientation orient(const Graph& g, const PairSet& ps) {
  if (!ps.has_paths()) throw InputError("orient: pair set has no canonical paths");
  ForwardOrientation o(g.edge_count());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto& nodes = ps.paths[i].nodes;
    for (std::size_t h = 0; h + 1 < nodes.size(); ++h) {
      const auto e = g.find_edge(nodes[h], nodes[h + 1]);
      if (!e) throw InputError("orient: canonical path hop is not an edge");
      if (o.owner(*e) != ForwardOrientation::kNone)
        throw ConstructionViolation(
            "orient: edge {" + std::to_string(g.edge(*e).u) + "," +
            std::to_string(g.edge(*e).v) + "} lies on canonical paths of pairs " +
            std::to_string(o.owner(*e)) + " and " + std::to_string(i));
      o.set(g, *e, nodes[h], i);
    }
  }
  return o;
}

inline ForwardOrientation orient(const LayeredGraph& lg, const PairSet& ps) {
  return orient(lg.graph, ps);
}

/// Id scheme (u1, u2, i) -> (u1 n + u2) 2 + (i - 1) over an n-node base.
struct ProductIndex {
  std::uint64_t n = 0;

  NodeId id(NodeId u1, NodeId u2, unsigned slot) const {
    return static_cast<NodeId>((u1 * n + u2) * 2 + (slot - 1));
  }
  ProductLabel label(NodeId id) const {
    const std::uint64_t cell = id / 2;
    return {static_cast<NodeId>(cell / n), static_cast<NodeId>(cell % n),
            static_cast<std::uint8_t>(id % 2 + 1)};
  }
};

struct CompressedGraph {
  Graph graph;
  NodeLabelTable labels;
  PairSet pairs;
  ConstructionParams params;  // pair_distance = 2 Delta of the base
  std::size_t base_node_count = 0;
  std::size_t forward_edge_count = 0;

  ProductIndex index() const { return {base_node_count}; }
};

/// Product path for the pair built from base paths `first` and `second`:
/// alternately advance coordinate 1 then coordinate 2, 2 Delta edges total.
inline Path build_rho(const Path& first, const Path& second,
                      std::size_t base_node_count) {
  if (first.length() != second.length() || first.nodes.empty())
    throw InputError("build_rho: base paths must have equal positive length");
  const ProductIndex ix{base_node_count};
  const std::size_t delta = first.length();
  Path rho;
  rho.nodes.reserve(2 * delta + 1);
  for (std::size_t j = 0; j < delta; ++j) {
    rho.nodes.push_back(ix.id(first.nodes[j], second.nodes[j], 1));
    rho.nodes.push_back(ix.id(first.nodes[j + 1], second.nodes[j], 2));
  }
  rho.nodes.push_back(ix.id(first.nodes[delta], second.nodes[delta], 1));
  return rho;
}

/// Two-copy product: edges {(u1,u2,1), (u1',u2,2)} and {(u1,u2,2), (u1,u2',1)}
/// for every forward base edge and every passive coordinate in V. Pairs are
/// all ordered pairs of base pairs, diagonal included.
inline CompressedGraph compress(const Graph& base, const PairSet& ps,
                                const ForwardOrientation& o,
                                ConstructionParams params = {},
                                std::uint64_t node_ceiling = 10'000'000) {
  if (!ps.has_paths() || ps.size() == 0)
    throw InputError("compress: need a non-empty pair set with paths");
  if (o.edge_count() != base.edge_count())
    throw InputError("compress: orientation does not match the base graph");
  const std::size_t delta = ps.paths.front().length();
  for (const auto& p : ps.paths)
    if (p.length() != delta)
      throw InputError("compress: canonical paths must share one length");

  const std::uint64_t n = base.node_count();
  const std::uint64_t nodes = 2 * n * n;
  if (nodes > node_ceiling || nodes > std::numeric_limits<NodeId>::max())
    throw BudgetExceeded("compress: " + std::to_string(nodes) +
                         " product nodes exceeds ceiling " +
                         std::to_string(node_ceiling));

  CompressedGraph cg;
  cg.base_node_count = n;
  const ProductIndex ix{n};

  std::vector<NodeLabel> labels;
  labels.reserve(nodes);
  for (NodeId id = 0; id < nodes; ++id) labels.emplace_back(ix.label(id));
  cg.labels = NodeLabelTable(std::move(labels));

  const auto arcs = o.arcs(base);
  cg.forward_edge_count = arcs.size();
  std::vector<Edge> edges;
  edges.reserve(2 * n * arcs.size());
  for (const auto& [from, to] : arcs)
    for (NodeId w = 0; w < n; ++w) {
      edges.push_back(make_edge(ix.id(from, w, 1), ix.id(to, w, 2)));
      edges.push_back(make_edge(ix.id(w, from, 2), ix.id(w, to, 1)));
    }
  cg.graph = Graph(static_cast<std::size_t>(nodes), std::move(edges));

  auto& out = cg.pairs;
  out.pairs.reserve(ps.size() * ps.size());
  for (std::size_t a = 0; a < ps.size(); ++a)
    for (std::size_t b = 0; b < ps.size(); ++b) {
      out.pairs.push_back({ix.id(ps.pairs[a].s, ps.pairs[b].s, 1),
                           ix.id(ps.pairs[a].t, ps.pairs[b].t, 1)});
      out.paths.push_back(build_rho(ps.paths[a], ps.paths[b], n));
      out.origins.emplace_back(ProductOrigin{a, b});
    }

  cg.params = params;
  cg.params.pair_distance = static_cast<std::uint32_t>(2 * delta);
  cg.params.extension_length.reset();
  cg.params.op_distance.reset();
  return cg;
}

inline CompressedGraph compress(const LayeredGraph& lg, const PairSet& ps,
                                const ForwardOrientation& o,
                                std::uint64_t node_ceiling = 10'000'000) {
  return compress(lg.graph, ps, o, lg.params, node_ceiling);
}

/// Product nodes touched by at least one edge. For display only; the
/// canonical product keeps every (u1, u2, i).
inline std::vector<NodeId> reachable_core(const CompressedGraph& cg) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < cg.graph.node_count(); ++v)
    if (cg.graph.degree(v) > 0) out.push_back(v);
  return out;
}

/// Two consecutive edges (a, b, c), stored with a <= c.
struct TwoPath {
  NodeId a = 0;
  NodeId b = 0;
  NodeId c = 0;
  friend auto operator<=>(const TwoPath&, const TwoPath&) = default;
};

inline TwoPath make_two_path(NodeId a, NodeId b, NodeId c) {
  return a <= c ? TwoPath{a, b, c} : TwoPath{c, b, a};
}

struct TwoPathSharing {
  TwoPath two_path;
  std::size_t first_pair = 0;
  std::size_t second_pair = 0;
  friend bool operator==(const TwoPathSharing&, const TwoPathSharing&) = default;
};

/// Every 2-path claimed by more than one canonical path.
inline std::vector<TwoPathSharing> two_path_collisions(const PairSet& ps) {
  std::vector<std::pair<TwoPath, std::size_t>> registry;
  for (std::size_t i = 0; i < ps.paths.size(); ++i) {
    const auto& v = ps.paths[i].nodes;
    for (std::size_t h = 0; h + 2 < v.size(); ++h)
      registry.emplace_back(make_two_path(v[h], v[h + 1], v[h + 2]), i);
  }
  std::sort(registry.begin(), registry.end());
  std::vector<TwoPathSharing> out;
  for (std::size_t i = 1; i < registry.size(); ++i)
    if (registry[i].first == registry[i - 1].first &&
        registry[i].second != registry[i - 1].second)
      out.push_back({registry[i].first, registry[i - 1].second,
                     registry[i].second});
  return out;
}

struct CompressedAuditReport {
  std::vector<std::size_t> unique_sp_failures;
  std::vector<std::size_t> distance_failures;
  std::vector<TwoPathSharing> two_path_violations;

  bool clean() const {
    return unique_sp_failures.empty() && distance_failures.empty() &&
           two_path_violations.empty();
  }
};

/// Per pair: distance exactly `expected_distance` with a unique shortest path
/// equal to the canonical one; globally: no 2-path shared by two pairs.
inline CompressedAuditReport audit_pairs_unique_two_path(
    const Graph& g, const PairSet& ps, Dist expected_distance,
    unsigned threads = 0) {
  const std::size_t m = ps.size();
  std::vector<std::uint8_t> unique_fail(m, 0), dist_fail(m, 0);
  parallel_chunks(m, threads, [&](std::size_t b, std::size_t e) {
    BfsWorkspace ws;
    for (std::size_t i = b; i < e; ++i) {
      const auto pc = ws.count_paths(g, ps.pairs[i].s, ps.pairs[i].t);
      if (pc.dist != expected_distance) dist_fail[i] = 1;
      else if (pc.multiplicity != Multiplicity::kOne) unique_fail[i] = 1;
      if (ps.has_paths()) {
        const auto& p = ps.paths[i];
        if (p.length() != expected_distance || p.front() != ps.pairs[i].s ||
            p.back() != ps.pairs[i].t || !is_valid_path(g, p))
          dist_fail[i] = 1;
      }
    }
  });
  CompressedAuditReport r;
  for (std::size_t i = 0; i < m; ++i) {
    if (dist_fail[i]) r.distance_failures.push_back(i);
    else if (unique_fail[i]) r.unique_sp_failures.push_back(i);
  }
  r.two_path_violations = two_path_collisions(ps);
  return r;
}

inline CompressedAuditReport audit_compressed(const CompressedGraph& cg,
                                              unsigned threads = 0) {
  if (!cg.params.pair_distance)
    throw InputError("audit_compressed: pair distance not recorded");
  return audit_pairs_unique_two_path(cg.graph, cg.pairs,
                                     *cg.params.pair_distance, threads);
}

}  // namespace spanlb
