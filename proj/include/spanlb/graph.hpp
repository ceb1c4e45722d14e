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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spanlb/errors.hpp"

namespace spanlb {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using Dist = std::uint32_t;

inline constexpr Dist kUnreachable = std::numeric_limits<Dist>::max();

/// Undirected edge stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(NodeId a, NodeId b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

/// Per-edge keep/drop flags over a host graph's edge ids.
class EdgeMask {
 public:
  EdgeMask() = default;
  explicit EdgeMask(std::size_t edge_count, bool kept = true)
      : bits_(edge_count, kept ? 1 : 0) {}

  std::size_t size() const { return bits_.size(); }
  bool kept(EdgeId e) const { return bits_[e] != 0; }
  void set(EdgeId e, bool kept) { bits_[e] = kept ? 1 : 0; }
  void keep(EdgeId e) { bits_[e] = 1; }
  void drop(EdgeId e) { bits_[e] = 0; }

  std::size_t kept_count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
  }

  /// True when every edge kept here is also kept in `other`.
  bool subset_of(const EdgeMask& other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !other.bits_[i]) return false;
    return true;
  }

  friend bool operator==(const EdgeMask&, const EdgeMask&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Immutable simple undirected graph on dense node ids 0..n-1.
///
/// Edges are kept sorted, so an edge id is its rank in lexicographic (u, v)
/// order. Adjacency is CSR with per-node neighbor lists sorted ascending and
/// a parallel array of incident edge ids.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Throws InputError on out-of-range endpoints, self-loops or duplicates.
  Graph(std::size_t node_count, std::vector<Edge> edges)
      : n_(node_count), edges_(std::move(edges)) {
    if (n_ > std::numeric_limits<NodeId>::max())
      throw InputError("Graph: node count exceeds 32-bit id space");
    for (auto& e : edges_) {
      if (e.u == e.v)
        throw InputError("Graph: self-loop at node " + std::to_string(e.u));
      if (e.u >= n_ || e.v >= n_)
        throw InputError("Graph: edge endpoint out of range");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    if (!std::is_sorted(edges_.begin(), edges_.end()))
      std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end());
        dup != edges_.end())
      throw InputError("Graph: duplicate edge {" + std::to_string(dup->u) +
                       "," + std::to_string(dup->v) + "}");
    if (edges_.size() > std::numeric_limits<EdgeId>::max())
      throw InputError("Graph: edge count exceeds 32-bit id space");

    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
    adj_.resize(2 * edges_.size());
    adj_edge_.resize(2 * edges_.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    // Filling in sorted edge order leaves every neighbor list sorted.
    for (std::size_t id = 0; id < edges_.size(); ++id) {
      const auto& e = edges_[id];
      adj_[fill[e.u]] = e.v;
      adj_edge_[fill[e.u]++] = static_cast<EdgeId>(id);
      adj_[fill[e.v]] = e.u;
      adj_edge_[fill[e.v]++] = static_cast<EdgeId>(id);
    }
  }

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  /// Edge ids aligned index-for-index with neighbors(v).
  std::span<const EdgeId> incident_edges(NodeId v) const {
    return {adj_edge_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::optional<EdgeId> find_edge(NodeId a, NodeId b) const {
    if (a >= n_ || b >= n_ || a == b) return std::nullopt;
    if (degree(a) > degree(b)) std::swap(a, b);
    const auto nb = neighbors(a);
    const auto it = std::lower_bound(nb.begin(), nb.end(), b);
    if (it == nb.end() || *it != b) return std::nullopt;
    return incident_edges(a)[static_cast<std::size_t>(it - nb.begin())];
  }
  bool has_edge(NodeId a, NodeId b) const { return find_edge(a, b).has_value(); }

  void check_node(NodeId v, const char* what) const {
    if (v >= n_)
      throw InputError(std::string(what) + ": node " + std::to_string(v) +
                       " out of range (n=" + std::to_string(n_) + ")");
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adj_;
  std::vector<EdgeId> adj_edge_;
};

/// Ordered node sequence; consecutive entries must be adjacent in the host.
struct Path {
  std::vector<NodeId> nodes;

  std::size_t length() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  NodeId front() const { return nodes.front(); }
  NodeId back() const { return nodes.back(); }

  friend bool operator==(const Path&, const Path&) = default;
};

inline bool edge_kept(const EdgeMask* mask, EdgeId e) {
  return mask == nullptr || mask->kept(e);
}

/// True when every hop of `path` is an edge of g (and kept by `mask`).
inline bool is_valid_path(const Graph& g, const Path& path,
                          const EdgeMask* mask = nullptr) {
  if (path.nodes.empty()) return false;
  for (NodeId v : path.nodes)
    if (v >= g.node_count()) return false;
  for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
    const auto e = g.find_edge(path.nodes[i], path.nodes[i + 1]);
    if (!e || !edge_kept(mask, *e)) return false;
  }
  return true;
}

/// Edge ids along a valid path. Throws InputError on a missing hop.
inline std::vector<EdgeId> path_edges(const Graph& g, const Path& path) {
  std::vector<EdgeId> out;
  out.reserve(path.length());
  for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
    const auto e = g.find_edge(path.nodes[i], path.nodes[i + 1]);
    if (!e) throw InputError("path_edges: hop is not an edge");
    out.push_back(*e);
  }
  return out;
}

enum class Multiplicity : std::uint8_t { kZero = 0, kOne = 1, kMany = 2 };

struct PathCount {
  Dist dist = kUnreachable;
  Multiplicity multiplicity = Multiplicity::kZero;

  friend bool operator==(const PathCount&, const PathCount&) = default;
};

/// Reusable BFS scratch space. Only touched entries are reset between runs,
/// so repeated early-exit searches on a large graph stay proportional to the
/// explored region. Not thread-safe; use one workspace per worker.
class BfsWorkspace {
 public:
  /// Full single-source distances; the returned span is valid until the next
  /// call on this workspace.
  std::span<const Dist> distances(const Graph& g, NodeId source,
                                  const EdgeMask* mask = nullptr) {
    g.check_node(source, "bfs_distances");
    reset(g);
    seed(source);
    expand(g, mask, kNoTarget);
    return dist_;
  }

  /// Multi-source distances (distance to the nearest source).
  std::span<const Dist> distances_from_set(const Graph& g,
                                           std::span<const NodeId> sources,
                                           const EdgeMask* mask = nullptr) {
    reset(g);
    for (NodeId s : sources) {
      g.check_node(s, "bfs_distances_from_set");
      if (dist_[s] == kUnreachable) seed(s);
    }
    expand(g, mask, kNoTarget);
    return dist_;
  }

  /// s-t distance with early exit once t is labelled.
  Dist distance(const Graph& g, NodeId s, NodeId t,
                const EdgeMask* mask = nullptr) {
    g.check_node(s, "bfs_distance");
    g.check_node(t, "bfs_distance");
    reset(g);
    seed(s);
    expand(g, mask, t);
    return dist_[t];
  }

  /// s-t distance and saturated shortest-path count over the BFS DAG.
  PathCount count_paths(const Graph& g, NodeId s, NodeId t,
                        const EdgeMask* mask = nullptr) {
    g.check_node(s, "count_shortest_paths");
    g.check_node(t, "count_shortest_paths");
    reset(g);
    seed(s);
    count_[s] = 1;
    std::size_t head = 0;
    while (head < queue_.size()) {
      const NodeId u = queue_[head++];
      // Every node of t's level was discovered from fully counted parents.
      if (dist_[t] != kUnreachable && dist_[u] >= dist_[t]) break;
      const auto nb = g.neighbors(u);
      const auto ids = g.incident_edges(u);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (!edge_kept(mask, ids[i])) continue;
        const NodeId v = nb[i];
        if (dist_[v] == kUnreachable) {
          dist_[v] = dist_[u] + 1;
          count_[v] = count_[u];
          queue_.push_back(v);
        } else if (dist_[v] == dist_[u] + 1) {
          count_[v] = static_cast<std::uint8_t>(
              std::min<unsigned>(2, count_[v] + count_[u]));
        }
      }
    }
    PathCount out;
    out.dist = dist_[t];
    out.multiplicity = static_cast<Multiplicity>(
        dist_[t] == kUnreachable ? 0 : count_[t]);
    return out;
  }

  /// A shortest s-t path; ties resolved by walking back from t to the
  /// lowest-id predecessor at each level.
  std::optional<Path> shortest_path(const Graph& g, NodeId s, NodeId t,
                                    const EdgeMask* mask = nullptr) {
    const Dist d = distance(g, s, t, mask);
    if (d == kUnreachable) return std::nullopt;
    Path p;
    p.nodes.resize(d + 1);
    p.nodes[d] = t;
    NodeId cur = t;
    for (Dist level = d; level > 0; --level) {
      const auto nb = g.neighbors(cur);
      const auto ids = g.incident_edges(cur);
      bool found = false;
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (!edge_kept(mask, ids[i])) continue;
        if (dist_[nb[i]] == level - 1) {
          cur = nb[i];
          found = true;
          break;
        }
      }
      if (!found) throw IntegrityError("shortest_path: broken BFS labels");
      p.nodes[level - 1] = cur;
    }
    return p;
  }

 private:
  static constexpr NodeId kNoTarget = std::numeric_limits<NodeId>::max();

  void reset(const Graph& g) {
    if (dist_.size() != g.node_count()) {
      dist_.assign(g.node_count(), kUnreachable);
      count_.assign(g.node_count(), 0);
    } else {
      for (NodeId v : queue_) {
        dist_[v] = kUnreachable;
        count_[v] = 0;
      }
    }
    queue_.clear();
  }

  void seed(NodeId s) {
    dist_[s] = 0;
    queue_.push_back(s);
  }

  // Plain BFS. With a target, stops once a node at t's level is popped; by
  // then every node closer than t is labelled and expanded.
  void expand(const Graph& g, const EdgeMask* mask, NodeId target) {
    std::size_t head = 0;
    while (head < queue_.size()) {
      const NodeId u = queue_[head++];
      if (target != kNoTarget && dist_[target] != kUnreachable &&
          dist_[u] >= dist_[target])
        break;
      const auto nb = g.neighbors(u);
      const auto ids = g.incident_edges(u);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        const NodeId v = nb[i];
        if (dist_[v] != kUnreachable || !edge_kept(mask, ids[i])) continue;
        dist_[v] = dist_[u] + 1;
        queue_.push_back(v);
      }
    }
  }

  std::vector<Dist> dist_;
  std::vector<std::uint8_t> count_;
  std::vector<NodeId> queue_;
};

/// Exact unweighted distances from `source`; kUnreachable where disconnected.
inline std::vector<Dist> bfs_distances(const Graph& g, NodeId source,
                                       const EdgeMask* mask = nullptr) {
  BfsWorkspace ws;
  const auto d = ws.distances(g, source, mask);
  return {d.begin(), d.end()};
}

inline Dist bfs_distance(const Graph& g, NodeId s, NodeId t,
                         const EdgeMask* mask = nullptr) {
  BfsWorkspace ws;
  return ws.distance(g, s, t, mask);
}

/// Distance plus shortest-path multiplicity saturated at two.
inline PathCount count_shortest_paths(const Graph& g, NodeId s, NodeId t,
                                      const EdgeMask* mask = nullptr) {
  BfsWorkspace ws;
  return ws.count_paths(g, s, t, mask);
}

inline std::optional<Path> bfs_shortest_path(const Graph& g, NodeId s,
                                             NodeId t,
                                             const EdgeMask* mask = nullptr) {
  BfsWorkspace ws;
  return ws.shortest_path(g, s, t, mask);
}

/// New graph with the same node set and `removed` taken out. Every removed
/// edge must exist; a missing one is an InputError.
inline Graph delete_edges(const Graph& g, std::span<const Edge> removed) {
  std::vector<std::uint8_t> drop(g.edge_count(), 0);
  for (const auto& r : removed) {
    const Edge e = make_edge(r.u, r.v);
    const auto id = g.find_edge(e.u, e.v);
    if (!id)
      throw InputError("delete_edges: edge {" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + "} not present");
    drop[*id] = 1;
  }
  std::vector<Edge> kept;
  kept.reserve(g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i)
    if (!drop[i]) kept.push_back(g.edges()[i]);
  return Graph(g.node_count(), std::move(kept));
}

/// Materializes the kept edges of `mask` as a standalone graph.
inline Graph apply_mask(const Graph& g, const EdgeMask& mask) {
  std::vector<Edge> kept;
  kept.reserve(mask.kept_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i)
    if (mask.kept(static_cast<EdgeId>(i))) kept.push_back(g.edges()[i]);
  return Graph(g.node_count(), std::move(kept));
}

/// Mask over g's edges keeping exactly the edges that are present in `sub`.
/// `sub` must be a subgraph of g on the same node set.
inline EdgeMask mask_of_subgraph(const Graph& g, const Graph& sub) {
  if (sub.node_count() != g.node_count())
    throw InputError("mask_of_subgraph: node sets differ");
  EdgeMask mask(g.edge_count(), false);
  for (const auto& e : sub.edges()) {
    const auto id = g.find_edge(e.u, e.v);
    if (!id) throw InputError("mask_of_subgraph: edge not in host");
    mask.keep(*id);
  }
  return mask;
}

}  // namespace spanlb
