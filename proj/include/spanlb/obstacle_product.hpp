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
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spanlb/base_graph.hpp"
#include "spanlb/errors.hpp"
#include "spanlb/graph.hpp"
#include "spanlb/labels.hpp"
#include "spanlb/pairs.hpp"
#include "spanlb/parallel.hpp"
#include "spanlb/params.hpp"

namespace spanlb {

/// Host graph after edge extension, before clique replacement. Host nodes
/// keep ids 0..n-1; interior node (e, i), i in [1, ell-1], has id
/// n + e (ell - 1) + (i - 1). Each host edge becomes a path of exactly ell
/// edges; (e, 1) sits next to the endpoint with the smaller id.
struct ExtendedGraph {
  Graph graph;
  std::size_t host_node_count = 0;
  std::uint32_t ell = 0;

  std::uint32_t interior_per_edge() const { return ell - 1; }
  NodeId interior(EdgeId e, std::uint32_t i) const {
    return static_cast<NodeId>(host_node_count +
                               std::size_t{e} * interior_per_edge() + (i - 1));
  }
};

inline ExtendedGraph extend_edges(const Graph& host, std::uint32_t ell) {
  if (ell < 1) throw InputError("extend_edges: ell must be at least 1");
  ExtendedGraph x;
  x.host_node_count = host.node_count();
  x.ell = ell;
  const std::size_t nodes =
      host.node_count() + host.edge_count() * x.interior_per_edge();
  std::vector<Edge> edges;
  edges.reserve(host.edge_count() * ell);
  for (EdgeId e = 0; e < host.edge_count(); ++e) {
    const auto [u, v] = host.edge(e);
    if (ell == 1) {
      edges.push_back({u, v});
      continue;
    }
    edges.push_back(make_edge(u, x.interior(e, 1)));
    for (std::uint32_t i = 1; i + 1 < ell; ++i)
      edges.push_back(make_edge(x.interior(e, i), x.interior(e, i + 1)));
    edges.push_back(make_edge(x.interior(e, ell - 1), v));
  }
  x.graph = Graph(nodes, std::move(edges));
  return x;
}

/// Obstacle product of a host graph with cliques.
///
/// Node ids: clique nodes first, grouped by host node v and ordered by v's
/// incident edges (neighbor order); then the interior path nodes, edge by
/// edge. pairs[i] comes from host pair i with canonical path of D edges, and
/// certificates[i] lists its Delta - 1 clique edges in walk order.
struct ObstacleGraph {
  Graph graph;
  NodeLabelTable labels;
  std::shared_ptr<const Graph> host;
  PairSet host_pairs;
  std::string host_kind;  // "base", "compressed" or "custom"
  ConstructionParams params;
  PairSet pairs;
  std::vector<std::vector<Edge>> certificates;
  std::vector<std::string> warnings;
  std::size_t path_node_count = 0;
  std::size_t clique_node_count = 0;
  std::size_t clique_edge_count = 0;

  Dist op_distance() const { return *params.op_distance; }
  std::uint32_t pair_distance() const { return *params.pair_distance; }
  /// Separation k = Delta - 1.
  std::uint32_t separation() const { return *params.pair_distance - 1; }
  std::uint32_t ell() const { return *params.extension_length; }

  NodeId clique_node(NodeId v, EdgeId e) const {
    return labels.at(CliqueLabel{v, e});
  }

  bool is_clique_edge(EdgeId id) const {
    const auto& e = graph.edge(id);
    const auto* a = std::get_if<CliqueLabel>(&labels[e.u]);
    const auto* b = std::get_if<CliqueLabel>(&labels[e.v]);
    return a && b && a->host_node == b->host_node;
  }

  /// Certificate edge ids; edges missing from the graph are skipped.
  std::vector<EdgeId> certificate_ids(std::size_t pair) const {
    std::vector<EdgeId> out;
    for (const auto& e : certificates[pair])
      if (auto id = graph.find_edge(e.u, e.v)) out.push_back(*id);
    return out;
  }
};

/// Replaces every non-isolated host node v by a clique on deg(v) nodes, one
/// per incident edge, and wires each clique node to its edge's path.
/// Isolated host nodes disappear and are listed in `warnings`.
inline ObstacleGraph replace_cliques(const ExtendedGraph& x,
                                     const Graph& host) {
  ObstacleGraph og;
  const std::size_t n = host.node_count();
  const std::uint32_t ell = x.ell;

  std::vector<NodeLabel> labels;
  labels.reserve(2 * host.edge_count() +
                 host.edge_count() * x.interior_per_edge());
  std::vector<std::size_t> clique_start(n + 1, 0);
  std::size_t isolated = 0;
  for (NodeId v = 0; v < n; ++v) {
    clique_start[v] = labels.size();
    if (host.degree(v) == 0) ++isolated;
    for (EdgeId e : host.incident_edges(v))
      labels.emplace_back(CliqueLabel{v, e});
  }
  clique_start[n] = labels.size();
  og.clique_node_count = labels.size();
  if (isolated > 0)
    og.warnings.push_back(std::to_string(isolated) +
                          " isolated host nodes skipped (empty cliques)");

  const std::size_t path_base = labels.size();
  for (EdgeId e = 0; e < host.edge_count(); ++e)
    for (std::uint32_t i = 1; i < ell; ++i)
      labels.emplace_back(PathLabel{e, i});
  og.path_node_count = labels.size() - path_base;

  auto clique_id = [&](NodeId v, EdgeId e) {
    const auto inc = host.incident_edges(v);
    const auto it = std::find(inc.begin(), inc.end(), e);
    return static_cast<NodeId>(clique_start[v] + (it - inc.begin()));
  };
  auto interior_id = [&](EdgeId e, std::uint32_t i) {
    return static_cast<NodeId>(path_base + std::size_t{e} * (ell - 1) + (i - 1));
  };

  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) {
    const std::size_t b = clique_start[v], end = clique_start[v + 1];
    for (std::size_t i = b; i < end; ++i)
      for (std::size_t j = i + 1; j < end; ++j)
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
    og.clique_edge_count += (end - b) * (end - b - 1) / 2;
  }
  for (EdgeId e = 0; e < host.edge_count(); ++e) {
    const auto [u, v] = host.edge(e);
    const NodeId cu = clique_id(u, e), cv = clique_id(v, e);
    if (ell == 1) {
      edges.push_back(make_edge(cu, cv));
      continue;
    }
    edges.push_back(make_edge(cu, interior_id(e, 1)));
    for (std::uint32_t i = 1; i + 1 < ell; ++i)
      edges.push_back(make_edge(interior_id(e, i), interior_id(e, i + 1)));
    edges.push_back(make_edge(interior_id(e, ell - 1), cv));
  }
  og.graph = Graph(labels.size(), std::move(edges));
  og.labels = NodeLabelTable(std::move(labels));
  og.params.extension_length = ell;
  return og;
}

/// Full obstacle product over a host whose pairs have unique, pairwise
/// 2-path-disjoint shortest paths of length `delta_host`. Sets ell = 3 Delta
/// and D = Delta ell + (Delta - 1), and records for every host pair the
/// endpoints s' = (s, e_1), t' = (t, e_Delta), the canonical D-edge path and
/// the clique-edge certificate.
inline ObstacleGraph build_op(std::shared_ptr<const Graph> host,
                              const PairSet& host_pairs,
                              std::uint32_t delta_host,
                              std::string host_kind = "custom",
                              ConstructionParams params = {},
                              std::uint64_t node_ceiling = 10'000'000) {
  if (!host) throw InputError("build_op: null host");
  if (delta_host <= 1)
    throw DegenerateParameterError(
        "build_op: degenerate Delta = " + std::to_string(delta_host) +
        " (separation k = Delta - 1 must be at least 1)");
  if (!host_pairs.has_paths())
    throw InputError("build_op: host pairs need canonical paths");
  {
    BfsWorkspace ws;
    for (std::size_t i = 0; i < host_pairs.size(); ++i) {
      const auto& p = host_pairs.paths[i];
      const Dist d = ws.distance(*host, host_pairs.pairs[i].s,
                                 host_pairs.pairs[i].t);
      if (d != delta_host || p.length() != delta_host ||
          !is_valid_path(*host, p))
        throw InputError("build_op: host pair " + std::to_string(i) +
                         " is not at distance Delta = " +
                         std::to_string(delta_host));
    }
  }
  const std::uint32_t ell = 3 * delta_host;
  const std::uint64_t nodes = (std::uint64_t{ell} + 1) * host->edge_count();
  if (nodes > node_ceiling || nodes > std::numeric_limits<NodeId>::max())
    throw BudgetExceeded("build_op: " + std::to_string(nodes) +
                         " nodes exceeds ceiling " +
                         std::to_string(node_ceiling));

  ObstacleGraph og = replace_cliques(extend_edges(*host, ell), *host);
  og.host = host;
  og.host_pairs = host_pairs;
  og.host_kind = std::move(host_kind);
  og.params = params;
  og.params.pair_distance = delta_host;
  og.params.extension_length = ell;
  og.params.op_distance = delta_host * ell + (delta_host - 1);

  for (std::size_t i = 0; i < host_pairs.size(); ++i) {
    const auto& u = host_pairs.paths[i].nodes;
    std::vector<EdgeId> e(delta_host);
    for (std::uint32_t h = 0; h < delta_host; ++h)
      e[h] = *host->find_edge(u[h], u[h + 1]);

    Path walk;
    walk.nodes.reserve(*og.params.op_distance + 1);
    std::vector<Edge> cert;
    for (std::uint32_t h = 0; h < delta_host; ++h) {
      // Traverse the extended path of e[h] from u[h] to u[h + 1].
      walk.nodes.push_back(og.clique_node(u[h], e[h]));
      if (u[h] < u[h + 1]) {
        for (std::uint32_t j = 1; j < ell; ++j)
          walk.nodes.push_back(og.labels.at(PathLabel{e[h], j}));
      } else {
        for (std::uint32_t j = ell - 1; j >= 1; --j)
          walk.nodes.push_back(og.labels.at(PathLabel{e[h], j}));
      }
      const NodeId arrive = og.clique_node(u[h + 1], e[h]);
      walk.nodes.push_back(arrive);
      if (h + 1 < delta_host) {
        const NodeId leave = og.clique_node(u[h + 1], e[h + 1]);
        cert.push_back(make_edge(arrive, leave));
      }
    }
    Path rho = std::move(walk);
    if (rho.length() != *og.params.op_distance || !is_valid_path(og.graph, rho))
      throw IntegrityError("build_op: canonical walk of pair " +
                           std::to_string(i) + " does not have D edges");
    og.pairs.pairs.push_back({rho.front(), rho.back()});
    og.pairs.paths.push_back(std::move(rho));
    og.pairs.origins.emplace_back(HostOrigin{i});
    og.certificates.push_back(std::move(cert));
  }
  return og;
}

/// Host nodes whose cliques a path visits, consecutive repeats collapsed.
inline std::vector<NodeId> clique_sequence(const ObstacleGraph& og,
                                           const Path& path) {
  std::vector<NodeId> out;
  for (NodeId v : path.nodes) {
    const auto* c = std::get_if<CliqueLabel>(&og.labels[v]);
    if (c == nullptr) continue;
    if (out.empty() || out.back() != c->host_node) out.push_back(c->host_node);
  }
  return out;
}

struct OpAuditOptions {
  unsigned threads = 0;
  /// Other pairs re-measured after each certificate deletion; all of them
  /// when there are at most this many, else an evenly strided subset.
  std::size_t cross_check_limit = 64;
};

struct OpAuditReport {
  std::vector<std::size_t> distance_failures;
  std::vector<EdgeSharing> certificate_disjointness_violations;
  std::vector<std::size_t> detour_failures;

  bool clean() const {
    return distance_failures.empty() &&
           certificate_disjointness_violations.empty() &&
           detour_failures.empty();
  }
};

/// (a) dist(s', t') = D for every pair; (b) certificates pairwise disjoint;
/// (c) removing a pair's certificate pushes that pair to >= D + k while the
/// re-measured other pairs stay at exactly D.
inline OpAuditReport audit_op(const ObstacleGraph& og,
                              const OpAuditOptions& opt = {}) {
  const Graph& g = og.graph;
  const std::size_t m = og.pairs.size();
  const Dist D = og.op_distance();
  const Dist k = og.separation();
  OpAuditReport report;

  std::vector<std::uint8_t> dist_fail(m, 0), detour_fail(m, 0);
  std::vector<std::vector<EdgeId>> cert_ids(m);
  for (std::size_t i = 0; i < m; ++i) {
    cert_ids[i] = og.certificate_ids(i);
    if (cert_ids[i].size() != og.certificates[i].size()) dist_fail[i] = 1;
  }

  std::vector<std::size_t> owner(g.edge_count(), SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    for (EdgeId e : cert_ids[i]) {
      if (owner[e] == SIZE_MAX) owner[e] = i;
      else if (owner[e] != i)
        report.certificate_disjointness_violations.push_back({e, owner[e], i});
    }

  parallel_chunks(m, opt.threads, [&](std::size_t b, std::size_t e) {
    BfsWorkspace ws;
    EdgeMask mask(g.edge_count(), true);
    for (std::size_t i = b; i < e; ++i) {
      if (ws.distance(g, og.pairs.pairs[i].s, og.pairs.pairs[i].t) != D)
        dist_fail[i] = 1;
      for (EdgeId c : cert_ids[i]) mask.drop(c);
      const Dist after = ws.distance(g, og.pairs.pairs[i].s,
                                     og.pairs.pairs[i].t, &mask);
      if (after < D + k) detour_fail[i] = 1;
      const std::size_t others = m - 1;
      const std::size_t checks = std::min(others, opt.cross_check_limit);
      for (std::size_t c = 0; c < checks; ++c) {
        const std::size_t off =
            checks == others ? c : (c * others) / std::max<std::size_t>(checks, 1);
        const std::size_t j = (i + 1 + off) % m;
        if (ws.distance(g, og.pairs.pairs[j].s, og.pairs.pairs[j].t, &mask) != D)
          detour_fail[i] = 1;
      }
      for (EdgeId c : cert_ids[i]) mask.keep(c);
    }
  });
  for (std::size_t i = 0; i < m; ++i) {
    if (dist_fail[i]) report.distance_failures.push_back(i);
    if (detour_fail[i]) report.detour_failures.push_back(i);
  }
  return report;
}

}  // namespace spanlb
