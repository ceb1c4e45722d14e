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

// Walks the smallest complete instance: A = {1, 2}, N = 2, k = 2. Builds the
// layered base graph, compresses it, wraps it in cliques and prints what the
// audits and a +2 spanner see.

#include <iostream>
#include <memory>

#include "spanlb/spanlb.hpp"

int main() {
  using namespace spanlb;

  const auto base = build_base(fixture_set());
  const auto& lg = base.layered;
  std::cout << "base: " << lg.graph.node_count() << " nodes, "
            << lg.graph.edge_count() << " edges, " << base.pairs.size()
            << " pairs at distance " << lg.params.k << '\n';
  std::cout << "  audit clean: " << audit_base(lg, base.pairs).clean() << '\n';

  const auto cg = compress(lg, base.pairs, orient(lg, base.pairs));
  std::cout << "compressed: " << cg.graph.node_count() << " nodes, "
            << cg.graph.edge_count() << " edges, " << cg.pairs.size()
            << " pairs at distance " << *cg.params.pair_distance << '\n';
  std::cout << "  audit clean: " << audit_compressed(cg).clean() << '\n';

  const auto og = build_op(std::make_shared<const Graph>(cg.graph), cg.pairs,
                           *cg.params.pair_distance, "compressed");
  std::cout << "obstacle product: " << og.graph.node_count() << " nodes, "
            << og.graph.edge_count() << " edges, D = " << og.op_distance()
            << ", k = " << og.separation() << '\n';
  std::cout << "  audit clean: " << audit_op(og).clean() << '\n';

  // Dropping one pair's certificate stretches exactly that pair.
  SubgraphMask h = SubgraphMask::full(og.graph, "minus certificate 1");
  for (EdgeId e : og.certificate_ids(1)) h.kept.drop(e);
  const auto rep = stretch_audit(og, h);
  std::cout << "  without certificate 1: max stretch "
            << dist_text(rep.max_stretch) << " at pair " << *rep.witness << '\n';

  const auto sp = spanner_plus2(og.graph);
  const auto over_pairs = stretch_audit(og, sp.subgraph);
  std::cout << "+2 spanner: " << sp.edge_count << " of "
            << og.graph.edge_count() << " edges, verified additive stretch "
            << dist_text(*sp.verified_additive) << ", stretch over pairs "
            << dist_text(over_pairs.max_stretch) << ", clique edges kept "
            << over_pairs.kept_clique_edges << '\n';
}
