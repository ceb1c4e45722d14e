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
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spanlb/errors.hpp"
#include "spanlb/graph.hpp"
#include "spanlb/verification.hpp"

namespace spanlb {

struct SpannerResult {
  SubgraphMask subgraph;
  std::string algorithm;
  std::map<std::string, double> params;
  std::size_t edge_count = 0;
  /// Filled by audit_spanner; never set from the construction's promise.
  std::optional<Dist> verified_additive;
  std::optional<double> verified_multiplicative;
  std::string audit_mode;  // "all-pairs", "sampled" or "none"
  std::size_t audited_pairs = 0;
};

inline constexpr std::size_t kAllPairsAuditLimit = 1500;
inline constexpr std::size_t kSampledAuditPairs = 10'000;

/// Exact all-pairs audit up to kAllPairsAuditLimit nodes, otherwise
/// kSampledAuditPairs seeded random pairs plus `extra`.
inline void audit_spanner(const Graph& g, SpannerResult& r,
                          std::span<const NodePair> extra = {},
                          std::uint64_t seed = 0, unsigned threads = 0) {
  PairStretchSummary s;
  if (g.node_count() <= kAllPairsAuditLimit) {
    s = all_pairs_stretch(g, r.subgraph.kept, threads);
    r.audit_mode = "all-pairs";
  } else {
    s = sampled_pairs_stretch(g, r.subgraph.kept, kSampledAuditPairs, seed,
                              extra);
    r.audit_mode = "sampled";
  }
  r.verified_additive = s.max_additive;
  r.verified_multiplicative = s.max_multiplicative;
  r.audited_pairs = s.pairs_checked;
}

namespace detail {

/// Greedy closed-neighbourhood dominating set of `targets`: repeatedly take
/// the node covering the most undominated targets, lowest id on ties.
inline std::vector<NodeId> greedy_dominators(const Graph& g,
                                             const std::vector<std::uint8_t>& targets) {
  const std::size_t n = g.node_count();
  std::vector<std::uint8_t> open(targets);
  std::size_t remaining = std::count(open.begin(), open.end(), 1);
  std::vector<NodeId> centers;
  while (remaining > 0) {
    NodeId best = 0;
    std::size_t best_cover = 0;
    for (NodeId c = 0; c < n; ++c) {
      std::size_t cover = open[c];
      for (NodeId w : g.neighbors(c)) cover += open[w];
      if (cover > best_cover) {
        best_cover = cover;
        best = c;
      }
    }
    centers.push_back(best);
    remaining -= open[best];
    open[best] = 0;
    for (NodeId w : g.neighbors(best)) {
      remaining -= open[w];
      open[w] = 0;
    }
  }
  std::sort(centers.begin(), centers.end());
  return centers;
}

/// Adds the BFS tree of `root` (parent = lowest-id neighbour one level up).
inline void add_bfs_tree(const Graph& g, NodeId root, EdgeMask& kept,
                         BfsWorkspace& ws) {
  const auto dist = ws.distances(g, root);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == root || dist[v] == kUnreachable) continue;
    const auto nb = g.neighbors(v);
    const auto ids = g.incident_edges(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (dist[nb[i]] + 1 == dist[v]) {
        kept.keep(ids[i]);
        break;
      }
  }
}

inline std::size_t ceil_root(std::size_t n, double e) {
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(std::pow(double(n), e) - 1e-9)));
}

}  // namespace detail

/// Additive +2 spanner: every edge touching a node of degree < threshold,
/// plus a BFS tree from each center of a greedy dominating set of the
/// high-degree nodes.
inline SpannerResult spanner_plus2(const Graph& g,
                                   std::optional<std::size_t> threshold = {},
                                   bool audit = true, unsigned threads = 0) {
  const std::size_t n = g.node_count();
  const std::size_t s = threshold.value_or(detail::ceil_root(n, 0.5));
  SpannerResult r;
  r.algorithm = "plus2";
  r.params["threshold"] = double(s);
  r.subgraph = {EdgeMask(g.edge_count(), false), "additive +2 spanner"};
  auto& kept = r.subgraph.kept;

  std::vector<std::uint8_t> heavy(n, 0);
  for (NodeId v = 0; v < n; ++v) heavy[v] = g.degree(v) >= s;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!heavy[g.edge(e).u] || !heavy[g.edge(e).v]) kept.keep(e);

  const auto centers = detail::greedy_dominators(g, heavy);
  BfsWorkspace ws;
  for (NodeId c : centers) detail::add_bfs_tree(g, c, kept, ws);
  r.params["centers"] = double(centers.size());
  r.edge_count = kept.kept_count();
  if (audit) audit_spanner(g, r, {}, 0, threads);
  else r.audit_mode = "none";
  return r;
}

namespace detail {

/// Clusters around dominating centers of the nodes with degree >= h. Every
/// clustered node is a center or adjacent to its center.
struct Clustering {
  std::vector<std::int64_t> cluster_of;  // -1 when unclustered
  std::vector<std::vector<NodeId>> members;
};

inline Clustering cluster(const Graph& g, std::size_t h) {
  const std::size_t n = g.node_count();
  std::vector<std::uint8_t> heavy(n, 0);
  for (NodeId v = 0; v < n; ++v) heavy[v] = g.degree(v) >= h;
  const auto centers = greedy_dominators(g, heavy);
  Clustering c;
  c.cluster_of.assign(n, -1);
  c.members.resize(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i) {
    c.cluster_of[centers[i]] = static_cast<std::int64_t>(i);
    c.members[i].push_back(centers[i]);
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!heavy[v] || c.cluster_of[v] >= 0) continue;
    // Lowest-id adjacent center; neighbours are sorted.
    for (NodeId w : g.neighbors(v)) {
      const auto it = std::lower_bound(centers.begin(), centers.end(), w);
      if (it != centers.end() && *it == w) {
        c.cluster_of[v] = it - centers.begin();
        c.members[it - centers.begin()].push_back(v);
        break;
      }
    }
  }
  return c;
}

/// Cluster-to-cluster distances in the masked graph.
inline std::vector<std::vector<Dist>> cluster_distances(const Graph& g,
                                                        const EdgeMask& kept,
                                                        const Clustering& c) {
  const std::size_t k = c.members.size();
  std::vector<std::vector<Dist>> out(k, std::vector<Dist>(k, kUnreachable));
  BfsWorkspace ws;
  for (std::size_t a = 0; a < k; ++a) {
    const auto d = ws.distances_from_set(g, c.members[a], &kept);
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (c.cluster_of[v] >= 0) {
        auto& cell = out[a][c.cluster_of[v]];
        cell = std::min(cell, d[v]);
      }
  }
  return out;
}

}  // namespace detail

/// Additive +6 spanner by clustering and path buying.
///
/// Nodes of degree >= ceil(n^(1/3)) are clustered around greedy dominating
/// centers; star edges and every edge with an unclustered endpoint are kept.
/// Then for each cluster pair (C, C') in index order, with P a shortest
/// G-path from C to C' of length L, a cluster X on P is "settled" when
/// d_H(C, X) <= first position of X on P and d_H(X, C') <= L - last position.
/// P is bought (all its edges kept) when no cluster on it is settled. After
/// the pass d_H(C, C') <= L + 2 for every pair, which gives stretch <= 6.
inline SpannerResult spanner_plus6(const Graph& g, bool audit = true,
                                   unsigned threads = 0) {
  const std::size_t n = g.node_count();
  const std::size_t h = detail::ceil_root(n, 1.0 / 3.0);
  SpannerResult r;
  r.algorithm = "plus6";
  r.params["cluster_threshold"] = double(h);
  r.subgraph = {EdgeMask(g.edge_count(), false), "additive +6 spanner"};
  auto& kept = r.subgraph.kept;

  const auto cl = detail::cluster(g, h);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edge(e);
    if (cl.cluster_of[u] < 0 || cl.cluster_of[v] < 0) kept.keep(e);
  }
  for (std::size_t c = 0; c < cl.members.size(); ++c)
    for (std::size_t i = 1; i < cl.members[c].size(); ++i)
      kept.keep(*g.find_edge(cl.members[c][0], cl.members[c][i]));

  auto dh = detail::cluster_distances(g, kept, cl);
  const std::size_t k = cl.members.size();
  std::size_t bought = 0, bought_edges = 0;
  BfsWorkspace ws;
  for (std::size_t a = 0; a < k; ++a) {
    const auto dist = ws.distances_from_set(g, cl.members[a]);
    const std::vector<Dist> dg(dist.begin(), dist.end());
    for (std::size_t b = a + 1; b < k; ++b) {
      // Closest member of C' (lowest id on ties), then walk back to C.
      NodeId end = cl.members[b][0];
      for (NodeId v : cl.members[b])
        if (dg[v] < dg[end] || (dg[v] == dg[end] && v < end)) end = v;
      const Dist L = dg[end];
      if (L == kUnreachable || dh[a][b] <= L) continue;
      std::vector<NodeId> path(L + 1);
      path[L] = end;
      for (Dist lvl = L; lvl > 0; --lvl)
        for (NodeId w : g.neighbors(path[lvl]))
          if (dg[w] + 1 == lvl) {
            path[lvl - 1] = w;
            break;
          }
      std::map<std::int64_t, std::pair<Dist, Dist>> span;  // first, last
      for (Dist i = 0; i <= L; ++i) {
        const auto x = cl.cluster_of[path[i]];
        if (x < 0) continue;
        auto [it, fresh] = span.try_emplace(x, i, i);
        if (!fresh) it->second.second = i;
      }
      bool settled = false;
      for (const auto& [x, fl] : span)
        if (dh[a][x] <= fl.first && dh[x][b] <= L - fl.second) {
          settled = true;
          break;
        }
      if (settled) continue;
      for (Dist i = 0; i < L; ++i) {
        const EdgeId e = *g.find_edge(path[i], path[i + 1]);
        if (!kept.kept(e)) ++bought_edges;
        kept.keep(e);
      }
      ++bought;
      dh = detail::cluster_distances(g, kept, cl);
    }
  }
  r.params["clusters"] = double(k);
  r.params["paths_bought"] = double(bought);
  r.params["edges_bought"] = double(bought_edges);
  r.edge_count = kept.kept_count();
  if (audit) audit_spanner(g, r, {}, 0, threads);
  else r.audit_mode = "none";
  return r;
}

/// Greedy multiplicative (2t-1)-spanner: scan edges in sorted order and keep
/// {u, v} iff the current spanner distance from u to v exceeds 2t - 1.
inline SpannerResult spanner_greedy_mult(const Graph& g, std::uint32_t t,
                                         bool audit = true,
                                         unsigned threads = 0) {
  if (t < 1) throw InputError("spanner_greedy_mult: t must be at least 1");
  const std::size_t n = g.node_count();
  const Dist bound = 2 * t - 1;
  SpannerResult r;
  r.algorithm = "greedy_mult";
  r.params["t"] = double(t);
  r.subgraph = {EdgeMask(g.edge_count(), false),
                "greedy multiplicative spanner"};
  std::vector<std::vector<NodeId>> adj(n);
  std::vector<Dist> dist(n, kUnreachable);
  std::vector<NodeId> touched;
  std::deque<NodeId> queue;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edge(e);
    // Depth-limited BFS from u in the current spanner.
    bool close = false;
    dist[u] = 0;
    touched.assign(1, u);
    queue.assign(1, u);
    while (!queue.empty() && !close) {
      const NodeId x = queue.front();
      queue.pop_front();
      if (dist[x] == bound) continue;
      for (NodeId y : adj[x]) {
        if (dist[y] != kUnreachable) continue;
        dist[y] = dist[x] + 1;
        if (y == v) {
          close = true;
          break;
        }
        touched.push_back(y);
        queue.push_back(y);
      }
    }
    for (NodeId x : touched) dist[x] = kUnreachable;
    dist[v] = kUnreachable;
    if (close) continue;
    r.subgraph.kept.keep(e);
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  r.edge_count = r.subgraph.kept.kept_count();
  if (audit) audit_spanner(g, r, {}, 0, threads);
  else r.audit_mode = "none";
  return r;
}

/// Length of a shortest cycle, or empty for a forest.
inline std::optional<std::size_t> girth(const Graph& g) {
  const std::size_t n = g.node_count();
  std::optional<std::size_t> best;
  std::vector<Dist> dist(n, kUnreachable);
  std::vector<NodeId> parent(n), order;
  for (NodeId s = 0; s < n; ++s) {
    order.assign(1, s);
    dist[s] = 0;
    parent[s] = s;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId x = order[head];
      if (best && 2 * dist[x] + 1 >= *best) break;
      for (NodeId y : g.neighbors(x)) {
        if (dist[y] == kUnreachable) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          order.push_back(y);
        } else if (parent[x] != y) {
          const std::size_t cyc = dist[x] + dist[y] + 1;
          if (!best || cyc < *best) best = cyc;
        }
      }
    }
    for (NodeId x : order) dist[x] = kUnreachable;
  }
  return best;
}

}  // namespace spanlb
