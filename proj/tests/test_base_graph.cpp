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

TEST_CASE("fixture base graph has the expected size") {
  const auto& b = fixtures::base();
  CHECK(b.layered.graph.node_count() == 18);
  CHECK(b.layered.graph.edge_count() == 18);
  CHECK(b.pairs.size() == 4);
  CHECK(b.layered.params.pair_distance == 2u);
}

TEST_CASE("node ids follow the label table") {
  const auto& lg = fixtures::base().layered;
  for (std::uint64_t x = 1; x <= lg.width(); ++x)
    for (std::uint32_t j = 0; j < lg.layers(); ++j)
      CHECK(lg.labels.at(BaseLabel{x, j}) == lg.id(x, j));
}

TEST_CASE("every edge joins consecutive layers with a step from A") {
  const auto& lg = fixtures::base().layered;
  for (const auto& e : lg.graph.edges()) {
    const auto& a = lg.labels.as<BaseLabel>(e.u);
    const auto& b = lg.labels.as<BaseLabel>(e.v);
    CHECK(b.layer == a.layer + 1);
    CHECK(lg.avgfree.contains(b.x - a.x));
  }
}

TEST_CASE("canonical paths start at layer 0 with constant steps") {
  const auto& b = fixtures::base();
  for (std::size_t i = 0; i < b.pairs.size(); ++i) {
    const auto& path = b.pairs.paths[i];
    const auto origin = std::get<BaseOrigin>(b.pairs.origins[i]);
    REQUIRE(path.length() == 2);
    CHECK(is_valid_path(b.layered.graph, path));
    for (std::uint32_t j = 0; j <= 2; ++j)
      CHECK(b.layered.labels.as<BaseLabel>(path.nodes[j]) ==
            BaseLabel{origin.start_x + j * origin.witness_a, j});
  }
}

namespace {

void check_with_oracles(const BaseBuild& b) {
  const auto adj = fixtures::adjacency_of(b.layered.graph);
  const std::uint32_t k = b.layered.params.k;
  std::set<std::pair<NodeId, NodeId>> used;
  std::size_t hops = 0;
  for (std::size_t i = 0; i < b.pairs.size(); ++i) {
    const auto [s, t] = b.pairs.pairs[i];
    REQUIRE(oracle::bfs(adj, s)[t] == k);
    REQUIRE(oracle::count_shortest(adj, s, t) == 1);
    const auto& nodes = b.pairs.paths[i].nodes;
    for (std::size_t h = 0; h + 1 < nodes.size(); ++h, ++hops)
      used.insert(std::minmax(nodes[h], nodes[h + 1]));
  }
  CHECK(used.size() == hops);
}

}  // namespace

TEST_CASE("fixture audit is clean and agrees with exact path counts") {
  const auto& b = fixtures::base();
  CHECK(audit_base(b.layered, b.pairs).clean());
  check_with_oracles(b);
}

TEST_CASE("shell-based base graphs are clean on a small grid") {
  for (std::uint64_t p = 2; p <= 3; ++p)
    for (std::uint32_t k = 1; k <= 3; ++k) {
      const auto b = build_base(build_avgfree(p, 2, k));
      const auto report = audit_base(b.layered, b.pairs);
      CHECK(report.clean());
      check_with_oracles(b);
      CHECK(b.pairs.size() == b.layered.params.N * b.layered.avgfree.size());
      CHECK(b.layered.graph.node_count() ==
            (k + 1) * b.layered.params.N * (k + 1));
    }
}

TEST_CASE("audit without the layering shortcut matches the layered audit") {
  const auto b = build_base(build_avgfree(3, 2, 2));
  // A graph whose labels are not layered forces the generic BFS path.
  LayeredGraph plain = b.layered;
  std::vector<NodeLabel> relabelled;
  for (NodeId v = 0; v < plain.graph.node_count(); ++v)
    relabelled.emplace_back(PathLabel{v, 1});
  plain.labels = NodeLabelTable(std::move(relabelled));
  CHECK(detail::layering(plain).empty());
  CHECK(audit_base(plain, b.pairs).clean());
}

TEST_CASE("a set with an average produces non-unique shortest paths") {
  const auto a = AvgFreeSet::from_elements(6, 2, {1, 2, 3});
  CHECK_THROWS_AS(build_base(a), InputError);
  BaseOptions opt;
  opt.waive_verification = true;
  const auto b = build_base(a, opt);
  CHECK(b.layered.verification_waived);
  const auto report = audit_base(b.layered, b.pairs);
  REQUIRE_FALSE(report.unique_sp_failures.empty());
  const auto adj = fixtures::adjacency_of(b.layered.graph);
  for (std::size_t i = 0; i < b.pairs.size(); ++i) {
    const auto [s, t] = b.pairs.pairs[i];
    const bool flagged = std::count(report.unique_sp_failures.begin(),
                                    report.unique_sp_failures.end(), i) > 0;
    CHECK(flagged == (oracle::count_shortest(adj, s, t) > 1));
  }
  // Distinct (x, a) still give distinct edges, so paths stay disjoint.
  CHECK(report.edge_disjoint_violations.empty());
}

TEST_CASE("audit flags a broken canonical path") {
  auto b = fixtures::base();
  std::swap(b.pairs.paths[0], b.pairs.paths[1]);
  const auto report = audit_base(b.layered, b.pairs);
  CHECK(report.distance_failures == std::vector<std::size_t>{0, 1});
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(build_base(AvgFreeSet::from_elements(4, 0, {1})),
                  DegenerateParameterError);
  CHECK_THROWS_AS(build_base(AvgFreeSet::from_elements(4, 2, {})), InputError);
  BaseOptions opt;
  opt.node_ceiling = 100;
  CHECK_THROWS_AS(build_base(build_avgfree(3, 3, 2), opt), BudgetExceeded);
}
