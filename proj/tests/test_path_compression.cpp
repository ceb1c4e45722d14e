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

#include <map>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "spanlb/spanlb.hpp"

using namespace spanlb;

TEST_CASE("fixture compression has the expected size") {
  const auto& b = fixtures::base();
  const auto& cg = fixtures::compressed();
  const auto o = orient(b.layered, b.pairs);
  CHECK(o.forward_count() == 8);
  CHECK(cg.forward_edge_count == 8);
  CHECK(cg.graph.node_count() == 2 * 18 * 18);
  CHECK(cg.graph.edge_count() == 2 * 18 * 8);
  CHECK(cg.pairs.size() == 16);
  CHECK(cg.params.pair_distance == 4u);
  CHECK(reachable_core(cg).size() == 362);
}

TEST_CASE("orientation points from source to target along each path") {
  const auto& b = fixtures::base();
  const auto o = orient(b.layered, b.pairs);
  const auto& g = b.layered.graph;
  for (std::size_t i = 0; i < b.pairs.size(); ++i) {
    const auto& nodes = b.pairs.paths[i].nodes;
    for (std::size_t h = 0; h + 1 < nodes.size(); ++h) {
      const EdgeId e = *g.find_edge(nodes[h], nodes[h + 1]);
      CHECK(o.owner(e) == i);
      CHECK(o.tail(g, e) == nodes[h]);
      CHECK(o.head(g, e) == nodes[h + 1]);
    }
  }
}

TEST_CASE("product edges match a direct enumeration") {
  const auto& b = fixtures::base();
  const auto& cg = fixtures::compressed();
  const auto o = orient(b.layered, b.pairs);
  const auto ix = cg.index();
  std::set<std::pair<NodeId, NodeId>> want;
  const NodeId n = static_cast<NodeId>(b.layered.graph.node_count());
  for (const auto& [from, to] : o.arcs(b.layered.graph))
    for (NodeId w = 0; w < n; ++w) {
      want.insert(std::minmax(ix.id(from, w, 1), ix.id(to, w, 2)));
      want.insert(std::minmax(ix.id(w, from, 2), ix.id(w, to, 1)));
    }
  std::set<std::pair<NodeId, NodeId>> got;
  for (const auto& e : cg.graph.edges()) got.insert({e.u, e.v});
  CHECK(got == want);
  for (NodeId v = 0; v < cg.graph.node_count(); ++v)
    CHECK(cg.labels.as<ProductLabel>(v) == ix.label(v));
}

TEST_CASE("product paths alternate copies and advance one coordinate at a time") {
  const auto& b = fixtures::base();
  const auto& cg = fixtures::compressed();
  for (std::size_t i = 0; i < cg.pairs.size(); ++i) {
    const auto& rho = cg.pairs.paths[i];
    const auto origin = std::get<ProductOrigin>(cg.pairs.origins[i]);
    REQUIRE(rho.length() == 4);
    CHECK(is_valid_path(cg.graph, rho));
    CHECK(rho.front() == cg.pairs.pairs[i].s);
    CHECK(rho.back() == cg.pairs.pairs[i].t);
    for (std::size_t h = 0; h < rho.nodes.size(); ++h) {
      const auto l = cg.labels.as<ProductLabel>(rho.nodes[h]);
      CHECK(l.slot == (h % 2 == 0 ? 1 : 2));
      CHECK(l.first == b.pairs.paths[origin.first].nodes[(h + 1) / 2]);
      CHECK(l.second == b.pairs.paths[origin.second].nodes[h / 2]);
    }
  }
}

TEST_CASE("compressed pairs have unique shortest paths by exact count") {
  const auto& cg = fixtures::compressed();
  CHECK(audit_compressed(cg).clean());
  const auto adj = fixtures::adjacency_of(cg.graph);
  for (std::size_t i = 0; i < cg.pairs.size(); ++i) {
    const auto [s, t] = cg.pairs.pairs[i];
    CHECK(oracle::bfs(adj, s)[t] == 4);
    const auto all = oracle::all_shortest_paths(adj, s, t);
    REQUIRE(all.size() == 1);
    CHECK(std::vector<NodeId>(all[0].begin(), all[0].end()) == cg.pairs.paths[i].nodes);
  }
}

TEST_CASE("2-path registry agrees with a brute-force comparison") {
  const auto& cg = fixtures::compressed();
  auto triples = [](const Path& p) {
    std::set<std::vector<NodeId>> out;
    for (std::size_t h = 0; h + 2 < p.nodes.size(); ++h) {
      std::vector<NodeId> t = {p.nodes[h], p.nodes[h + 1], p.nodes[h + 2]};
      if (t[0] > t[2]) std::swap(t[0], t[2]);
      out.insert(t);
    }
    return out;
  };
  std::size_t shared = 0;
  for (std::size_t i = 0; i < cg.pairs.size(); ++i)
    for (std::size_t j = i + 1; j < cg.pairs.size(); ++j) {
      const auto a = triples(cg.pairs.paths[i]);
      const auto b = triples(cg.pairs.paths[j]);
      for (const auto& t : a) shared += b.count(t);
    }
  CHECK(shared == 0);
  CHECK(two_path_collisions(cg.pairs).empty());

  PairSet ps;
  ps.paths = {Path{{0, 1, 2, 3}}, Path{{5, 2, 1, 0}}, Path{{3, 2, 1}}};
  ps.pairs = {{0, 3}, {5, 0}, {3, 1}};
  const auto hits = two_path_collisions(ps);
  REQUIRE(hits.size() == 2);
  CHECK(hits[0].two_path == TwoPath{0, 1, 2});
  CHECK(hits[0].first_pair == 0);
  CHECK(hits[0].second_pair == 1);
  CHECK(hits[1].two_path == TwoPath{1, 2, 3});
  CHECK(hits[1].first_pair == 0);
  CHECK(hits[1].second_pair == 2);
}

TEST_CASE("two pairs sharing an edge cannot be oriented") {
  const Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
  PairSet ps;
  ps.pairs = {{0, 2}, {3, 1}};
  ps.paths = {Path{{0, 1, 2}}, Path{{3, 2, 1}}};
  CHECK_THROWS_AS(orient(g, ps), ConstructionViolation);
  ps.paths[1] = Path{{3, 1}};
  CHECK_THROWS_AS(orient(g, ps), InputError);
}

TEST_CASE("a shell-based base of width 108 compresses cleanly") {
  const auto b = build_base(build_avgfree(2, 2, 2));
  REQUIRE(b.layered.graph.node_count() == 324);
  const auto cg = compress(b.layered, b.pairs, orient(b.layered, b.pairs));
  CHECK(cg.pairs.size() == 72 * 72);
  CHECK(cg.graph.node_count() == 2 * 324 * 324);
  const auto report = audit_compressed(cg);
  CHECK(report.clean());
}

TEST_CASE("compression input checks") {
  const auto& b = fixtures::base();
  const auto o = orient(b.layered, b.pairs);
  CHECK_THROWS_AS(compress(b.layered, b.pairs, o, 100), BudgetExceeded);
  PairSet no_paths = b.pairs;
  no_paths.paths.clear();
  CHECK_THROWS_AS(compress(b.layered, no_paths, o), InputError);
  CHECK_THROWS_AS(compress(b.layered, b.pairs, ForwardOrientation(3)), InputError);
  CHECK_THROWS_AS(build_rho(Path{{0, 1}}, Path{{0, 1, 2}}, 3), InputError);
}

TEST_CASE("compression is deterministic") {
  const auto& b = fixtures::base();
  const auto again = compress(b.layered, b.pairs, orient(b.layered, b.pairs));
  CHECK(again.graph == fixtures::compressed().graph);
  CHECK(again.pairs.pairs == fixtures::compressed().pairs.pairs);
}
