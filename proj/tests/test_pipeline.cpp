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

#include <filesystem>

#include "spanlb/spanlb.hpp"

using namespace spanlb;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("spanlb_pipeline_" + name);
  fs::remove_all(dir);
  return dir;
}

bool audit_clean(const Json& audit) {
  for (const auto& [name, items] : audit.items())
    if (!items.empty()) return false;
  return true;
}

PipelineOptions fixture_options(Stage last = Stage::kOp) {
  PipelineOptions opt;
  opt.params.fixture = true;
  opt.params.k = 2;
  opt.last_stage = last;
  return opt;
}

}  // namespace

TEST_CASE("plan derives dimension, delta and distances") {
  const auto a = plan(Rational::make(1, 1), 32);
  CHECK(a.params.d == 3);
  CHECK(*a.params.delta == Rational::make(1, 18));
  CHECK(a.advisory_k == 1);
  CHECK_FALSE(a.advisory_degenerate);
  CHECK(a.params.k == 1);
  CHECK(a.params.N == 64 * 64 * 64);
  CHECK(*a.params.pair_distance == 2);
  CHECK(*a.params.extension_length == 6);
  CHECK(*a.params.op_distance == 13);

  const auto b = plan(Rational::parse("0.5"), 2);
  CHECK(b.params.d == 6);
  CHECK(b.advisory_degenerate);
  CHECK(b.notes.size() == 1);
  CHECK_FALSE(b.params.pair_distance.has_value());

  const auto c = plan(Rational::make(1, 1), 2, 2);
  CHECK(c.params.k == 2);
  CHECK(c.params.N == 216);
  CHECK(*c.params.pair_distance == 4);
  CHECK(*c.params.op_distance == 51);
  CHECK_NOTHROW(c.params.validate());
}

TEST_CASE("stage names round-trip") {
  for (Stage s : {Stage::kBase, Stage::kCompress, Stage::kOp})
    CHECK(parse_stage(stage_name(s)) == s);
  CHECK_THROWS_AS(parse_stage("final"), InputError);
}

TEST_CASE("shell-based base stage at p = 2, d = 3, k = 2") {
  PipelineOptions opt;
  opt.params.p = 2;
  opt.params.d = 3;
  opt.params.k = 2;
  const auto run = run_pipeline(opt);
  REQUIRE(run.base.has_value());
  CHECK(run.base->layered.avgfree.size() == 3);
  CHECK(run.base->layered.params.N == 216);
  CHECK(run.base->layered.graph.node_count() == 1944);
  CHECK(run.base->layered.graph.edge_count() == 3544);
  CHECK(run.base->pairs.size() == 648);
  REQUIRE(run.manifest.stages.size() == 1);
  CHECK(audit_clean(run.manifest.stages[0].audit));
  CHECK_FALSE(run.compressed.has_value());
}

TEST_CASE("full fixture run writes every stage and a valid chain") {
  const auto dir = scratch("full");
  const auto run = run_pipeline(fixture_options(), dir);
  REQUIRE(run.manifest.stages.size() == 3);
  CHECK(run.manifest.chain_valid());
  for (const char* stage : {"stage-base", "stage-compress", "stage-op"})
    for (const char* file : {"graph.edges", "labels.json", "pairs.txt", "manifest.json"})
      CHECK(fs::exists(dir / stage / file));
  CHECK(fs::exists(dir / "stage-base" / "avgfree.json"));
  CHECK(fs::exists(dir / "stage-op" / "certificates.txt"));
  CHECK(fs::exists(dir / "manifest.json"));

  const Json root = Json::parse(read_text_file(dir / "manifest.json"));
  CHECK(root["format"] == "spanlb-manifest/1");
  CHECK(root["stages"].size() == 3);
  CHECK(root["counting"]["pairs"] == 16);
  for (const auto& s : root["stages"]) CHECK(audit_clean(s["audit"]));

  // File digests recorded in the manifest match the bytes on disk.
  const Json op = Json::parse(read_text_file(dir / "stage-op" / "manifest.json"));
  for (const auto& [name, digest] : op["files"].items())
    CHECK(sha256_file(dir / "stage-op" / name) == digest.get<std::string>());

  const auto g = read_edge_list(dir / "stage-op" / "graph.edges");
  CHECK(g == run.op->graph);
  CHECK(g.node_count() == 3744);
  fs::remove_all(dir);
}

TEST_CASE("reruns are byte-identical") {
  const auto a = scratch("rerun_a");
  const auto b = scratch("rerun_b");
  run_pipeline(fixture_options(), a);
  run_pipeline(fixture_options(), b);
  CHECK(sha256_tree(a) == sha256_tree(b));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("op stage over the base host") {
  auto opt = fixture_options();
  opt.op_host = OpHost::kBase;
  const auto run = run_pipeline(opt);
  REQUIRE(run.op.has_value());
  CHECK_FALSE(run.compressed.has_value());
  CHECK(run.op->graph.node_count() == 126);
  CHECK(run.op->op_distance() == 13);
  CHECK(run.manifest.chain_valid());
}

TEST_CASE("pipeline rejects degenerate and oversized requests") {
  auto opt = fixture_options();
  opt.params.k = 1;
  CHECK_THROWS_AS(run_pipeline(opt), DegenerateParameterError);
  opt.last_stage = Stage::kCompress;
  CHECK_NOTHROW(run_pipeline(opt));

  PipelineOptions big;
  big.params.p = 4;
  big.params.d = 3;
  big.params.k = 3;
  big.node_ceiling = 1000;
  CHECK_THROWS_AS(run_pipeline(big), BudgetExceeded);

  auto small = fixture_options();
  small.node_ceiling = 100;
  CHECK_THROWS_AS(run_pipeline(small), BudgetExceeded);
}
