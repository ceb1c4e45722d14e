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

#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "spanlb/spanlb.hpp"

using namespace spanlb;

TEST_CASE("edge extension replaces each edge by a path of ell edges") {
  const auto x = extend_edges(path_graph(4), 3);
  CHECK(x.graph.node_count() == 4 + 3 * 2);
  CHECK(x.graph.edge_count() == 9);
  CHECK(bfs_distance(x.graph, 0, 3) == 9);
  CHECK(x.graph.has_edge(0, x.interior(0, 1)));
  CHECK(x.graph.has_edge(x.interior(0, 2), 1));

  const auto& host = fixtures::base().layered.graph;
  const auto y = extend_edges(host, 6);
  CHECK(y.graph.node_count() - host.node_count() == 90);
  for (EdgeId e = 0; e < host.edge_count(); ++e)
    CHECK(bfs_distance(y.graph, host.edge(e).u, host.edge(e).v) == 6);
  CHECK_THROWS_AS(extend_edges(host, 0), InputError);
}

TEST_CASE("clique replacement on a star with unit extension") {
  const Graph host = star_graph(3);
  const auto og = replace_cliques(extend_edges(host, 1), host);
  CHECK(og.graph.node_count() == 6);
  CHECK(og.clique_node_count == 6);
  CHECK(og.path_node_count == 0);
  CHECK(og.clique_edge_count == 3);
  CHECK(og.graph.edge_count() == 6);
  CHECK(og.warnings.empty());
}

TEST_CASE("node and edge counts follow the host degrees") {
  for (const auto* og : {&fixtures::op_on_base(), &fixtures::op_on_compressed()}) {
    const Graph& host = *og->host;
    const std::size_t E = host.edge_count();
    std::size_t clique_edges = 0, non_isolated = 0;
    for (NodeId v = 0; v < host.node_count(); ++v) {
      const std::size_t d = host.degree(v);
      clique_edges += d * (d - (d > 0 ? 1 : 0)) / 2;
      non_isolated += d > 0;
    }
    CHECK(og->clique_node_count == 2 * E);
    CHECK(og->path_node_count == (og->ell() - 1) * E);
    CHECK(og->graph.node_count() == (og->ell() + 1) * E);
    CHECK(og->clique_edge_count == clique_edges);
    CHECK(og->graph.edge_count() == clique_edges + og->ell() * E);
    std::size_t counted = 0;
    for (EdgeId e = 0; e < og->graph.edge_count(); ++e) counted += og->is_clique_edge(e);
    CHECK(counted == clique_edges);
    CHECK(og->warnings.size() == (non_isolated < host.node_count() ? 1u : 0u));
  }
  CHECK(fixtures::op_on_base().graph.node_count() == 126);
  CHECK(fixtures::op_on_base().graph.edge_count() == 136);
  CHECK(fixtures::op_on_compressed().graph.node_count() == 3744);
  CHECK(fixtures::op_on_compressed().graph.edge_count() == 3728);
  CHECK(fixtures::op_on_compressed().clique_edge_count == 272);
}

TEST_CASE("clique nodes have host degree and path nodes have degree two") {
  const auto& og = fixtures::op_on_compressed();
  for (NodeId v = 0; v < og.graph.node_count(); ++v) {
    if (const auto* c = std::get_if<CliqueLabel>(&og.labels[v])) {
      CHECK(og.graph.degree(v) == og.host->degree(c->host_node));
      const auto& e = og.host->edge(c->host_edge);
      CHECK((e.u == c->host_node || e.v == c->host_node));
    } else {
      CHECK(og.graph.degree(v) == 2);
    }
  }
}

TEST_CASE("pair distance and separation") {
  const auto& a = fixtures::op_on_base();
  CHECK(a.ell() == 6);
  CHECK(a.op_distance() == 13);
  CHECK(a.separation() == 1);
  const auto& b = fixtures::op_on_compressed();
  CHECK(b.ell() == 12);
  CHECK(b.op_distance() == 51);
  CHECK(b.separation() == 3);
  CHECK_NOTHROW(b.params.validate());
}

TEST_CASE("certificates are clique edges on the canonical path") {
  for (const auto* og : {&fixtures::op_on_base(), &fixtures::op_on_compressed()}) {
    std::set<std::pair<NodeId, NodeId>> seen;
    for (std::size_t i = 0; i < og->pairs.size(); ++i) {
      const auto& cert = og->certificates[i];
      CHECK(cert.size() == og->pair_distance() - 1);
      const auto ids = og->certificate_ids(i);
      REQUIRE(ids.size() == cert.size());
      const auto on_path = path_edges(og->graph, og->pairs.paths[i]);
      for (EdgeId e : ids) {
        CHECK(og->is_clique_edge(e));
        CHECK(std::count(on_path.begin(), on_path.end(), e) == 1);
      }
      for (const auto& e : cert) CHECK(seen.insert({e.u, e.v}).second);
      CHECK(std::get<HostOrigin>(og->pairs.origins[i]).host_pair == i);
    }
  }
}

TEST_CASE("pair endpoints and clique sequence follow the host path") {
  for (const auto* og : {&fixtures::op_on_base(), &fixtures::op_on_compressed()}) {
    for (std::size_t i = 0; i < og->pairs.size(); ++i) {
      const auto& hp = og->host_pairs.paths[i].nodes;
      const auto& rho = og->pairs.paths[i];
      CHECK(is_valid_path(og->graph, rho));
      CHECK(rho.length() == og->op_distance());
      CHECK(clique_sequence(*og, rho) == hp);
      const auto first_edge = *og->host->find_edge(hp[0], hp[1]);
      CHECK(og->pairs.pairs[i].s == og->clique_node(hp[0], first_edge));
    }
  }
}

TEST_CASE("every shortest path between a pair visits the host path cliques") {
  const auto& og = fixtures::op_on_base();
  const auto adj = fixtures::adjacency_of(og.graph);
  for (std::size_t i = 0; i < og.pairs.size(); ++i) {
    const auto [s, t] = og.pairs.pairs[i];
    const auto all = oracle::all_shortest_paths(adj, s, t);
    REQUIRE(all.size() == 1);
    Path p{std::vector<NodeId>(all[0].begin(), all[0].end())};
    CHECK(p.nodes == og.pairs.paths[i].nodes);
    CHECK(clique_sequence(og, p) == og.host_pairs.paths[i].nodes);
  }
}

TEST_CASE("audits of both obstacle products are clean") {
  CHECK(audit_op(fixtures::op_on_base()).clean());
  OpAuditOptions opt;
  opt.cross_check_limit = 4;
  CHECK(audit_op(fixtures::op_on_compressed(), opt).clean());
  CHECK(audit_op(fixtures::op_on_compressed()).clean());
}

TEST_CASE("deleting a certificate costs at least the separation and spares other pairs") {
  for (const auto* og : {&fixtures::op_on_base(), &fixtures::op_on_compressed()}) {
    const Dist D = og->op_distance();
    const Dist k = og->separation();
    for (std::size_t i = 0; i < og->pairs.size(); ++i) {
      EdgeMask mask(og->graph.edge_count(), true);
      for (EdgeId e : og->certificate_ids(i)) mask.drop(e);
      const auto adj = fixtures::adjacency_of(og->graph, mask);
      const auto d = oracle::bfs(adj, og->pairs.pairs[i].s);
      const auto after = d[og->pairs.pairs[i].t];
      CHECK(after >= D + k);
      CHECK((after == D + k || after == oracle::kInf));
      for (std::size_t j = 0; j < og->pairs.size(); ++j) {
        if (j == i) continue;
        CHECK(oracle::bfs(adj, og->pairs.pairs[j].s)[og->pairs.pairs[j].t] == D);
      }
    }
  }
}

TEST_CASE("the base-host product reaches exactly one step past D") {
  const auto& og = fixtures::op_on_base();
  for (std::size_t i = 0; i < og.pairs.size(); ++i) {
    const auto h = delete_edges(og.graph, og.certificates[i]);
    CHECK(bfs_distance(h, og.pairs.pairs[i].s, og.pairs.pairs[i].t) == 14);
  }
}

TEST_CASE("partial deletion is monotone and a single edge costs one step or more") {
  const auto& og = fixtures::op_on_compressed();
  const Dist D = og.op_distance();
  for (std::size_t i = 0; i < og.pairs.size(); ++i) {
    const auto ids = og.certificate_ids(i);
    EdgeMask mask(og.graph.edge_count(), true);
    Dist prev = D;
    for (EdgeId e : ids) {
      EdgeMask single(og.graph.edge_count(), true);
      single.drop(e);
      const Dist one = bfs_distance(og.graph, og.pairs.pairs[i].s, og.pairs.pairs[i].t, &single);
      CHECK((one == D + 1 || one == kUnreachable));
      mask.drop(e);
      const Dist now = bfs_distance(og.graph, og.pairs.pairs[i].s, og.pairs.pairs[i].t, &mask);
      CHECK(now >= prev);
      prev = now;
    }
  }
}

TEST_CASE("audit detects a missing certificate edge") {
  auto og = fixtures::op_on_base();
  og.graph = delete_edges(og.graph, std::vector<Edge>{og.certificates[2][0]});
  const auto report = audit_op(og);
  CHECK(std::count(report.distance_failures.begin(), report.distance_failures.end(), 2u) == 1);
  CHECK_FALSE(report.clean());
}

TEST_CASE("audit detects shared certificates") {
  auto og = fixtures::op_on_compressed();
  og.certificates[1] = og.certificates[0];
  const auto report = audit_op(og);
  REQUIRE_FALSE(report.certificate_disjointness_violations.empty());
  CHECK(report.certificate_disjointness_violations[0].first_pair == 0);
  CHECK(report.certificate_disjointness_violations[0].second_pair == 1);
}

TEST_CASE("obstacle product input checks") {
  const auto& b = fixtures::base();
  const auto host = std::make_shared<const Graph>(b.layered.graph);
  CHECK_THROWS_AS(build_op(host, b.pairs, 1), DegenerateParameterError);
  CHECK_THROWS_AS(build_op(host, b.pairs, 3), InputError);
  CHECK_THROWS_AS(build_op(nullptr, b.pairs, 2), InputError);
  CHECK_THROWS_AS(build_op(host, b.pairs, 2, "base", {}, 50), BudgetExceeded);

  // Node 3 is isolated.
  const auto lonely = std::make_shared<const Graph>(Graph(4, {{0, 1}, {1, 2}}));
  PairSet ps;
  ps.pairs = {{0, 2}};
  ps.paths = {Path{{0, 1, 2}}};
  const auto og = build_op(lonely, ps, 2);
  REQUIRE(og.warnings.size() == 1);
  CHECK(og.warnings[0].find("1 isolated") != std::string::npos);
  CHECK(og.op_distance() == 13);
  CHECK(audit_op(og).clean());
}
