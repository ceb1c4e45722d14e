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

#include <filesystem>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spanlb/avgfree.hpp"
#include "spanlb/base_graph.hpp"
#include "spanlb/digest.hpp"
#include "spanlb/errors.hpp"
#include "spanlb/io.hpp"
#include "spanlb/obstacle_product.hpp"
#include "spanlb/params.hpp"
#include "spanlb/path_compression.hpp"

namespace spanlb {

/// A stage audit found problems; `report` holds the findings.
class AuditFailure : public std::runtime_error {
 public:
  AuditFailure(const std::string& stage, Json report)
      : std::runtime_error("audit of stage '" + stage + "' failed"),
        stage_(stage),
        report_(std::move(report)) {}

  const std::string& stage() const { return stage_; }
  const Json& report() const { return report_; }

 private:
  std::string stage_;
  Json report_;
};

struct PlanResult {
  ConstructionParams params;
  std::uint32_t advisory_k = 0;
  bool advisory_degenerate = false;  // advisory k < 1
  std::vector<std::string> notes;
};

/// Parameter algebra: d = ceil(3/eps), delta = 1/(2d^2), advisory k from
/// (p, d), then N and the full-pipeline Delta = 2k, ell, D.
inline PlanResult plan(const Rational& epsilon, std::uint64_t p,
                       std::optional<std::uint32_t> k_override = {}) {
  PlanResult out;
  auto& c = out.params;
  c.epsilon = epsilon;
  c.d = dimension_for_epsilon(epsilon);
  c.delta = delta_for_dimension(c.d);
  c.p = p;
  out.advisory_k = advisory_k(p, c.d);
  c.advisory_k = out.advisory_k;
  out.advisory_degenerate = out.advisory_k < 1;
  if (out.advisory_degenerate)
    out.notes.push_back("advisory k = " + std::to_string(out.advisory_k) +
                        " < 1 at p = " + std::to_string(p) +
                        "; pass an explicit k");
  c.k = k_override.value_or(out.advisory_k);
  if (c.k >= 1 && p >= 1) {
    c.q = (std::uint64_t{c.k} + 1) * p;
    c.N = checked_pow(c.q, c.d);
    const std::uint32_t delta = 2 * c.k;
    c.pair_distance = delta;
    c.extension_length = 3 * delta;
    c.op_distance = delta * 3 * delta + delta - 1;
  }
  return out;
}

enum class Stage { kBase = 0, kCompress = 1, kOp = 2 };
enum class OpHost { kCompressed, kBase };

inline const char* stage_name(Stage s) {
  switch (s) {
    case Stage::kBase: return "base";
    case Stage::kCompress: return "compress";
    case Stage::kOp: return "op";
  }
  return "?";
}

inline Stage parse_stage(std::string_view s) {
  if (s == "base") return Stage::kBase;
  if (s == "compress") return Stage::kCompress;
  if (s == "op") return Stage::kOp;
  throw InputError("unknown stage '" + std::string(s) + "'");
}

/// Handcrafted set {1, 2} in [2]. A mean of terms from {1, 2} is an element
/// only when all terms are equal, so the set is k-average-free for every k.
inline AvgFreeSet fixture_set(std::uint32_t k = 2) {
  return AvgFreeSet::from_elements(2, k, {1, 2});
}

struct PipelineOptions {
  ConstructionParams params;          // p, d, k (and epsilon) or fixture
  std::optional<AvgFreeSet> fixture;  // used when params.fixture
  Stage last_stage = Stage::kBase;
  OpHost op_host = OpHost::kCompressed;
  std::uint64_t node_ceiling = 10'000'000;
  std::optional<std::size_t> size_cap;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  OpAuditOptions op_audit;
};

struct StageRecord {
  std::string name;
  std::string input_digest;
  std::string output_digest;
  Json params;
  Json counts;
  Json audit;
  Json files;  // file name -> sha256
  std::vector<std::string> warnings;

  Json to_json() const {
    return {{"stage", name},          {"input_digest", input_digest},
            {"output_digest", output_digest}, {"params", params},
            {"counts", counts},       {"audit", audit},
            {"files", files},         {"warnings", warnings}};
  }
};

struct PipelineManifest {
  std::vector<StageRecord> stages;
  Json counting;  // filled when the OP stage ran
  Json request;

  Json to_json() const {
    Json st = Json::array();
    for (const auto& s : stages) st.push_back(s.to_json());
    return {{"format", "spanlb-manifest/1"},
            {"request", request},
            {"stages", st},
            {"counting", counting}};
  }

  /// Input digest of each stage equals the output digest of the previous.
  bool chain_valid() const {
    for (std::size_t i = 1; i < stages.size(); ++i)
      if (stages[i].input_digest != stages[i - 1].output_digest) return false;
    return true;
  }
};

struct PipelineRun {
  PipelineManifest manifest;
  std::optional<BaseBuild> base;
  std::optional<CompressedGraph> compressed;
  std::optional<ObstacleGraph> op;
};

namespace detail {

struct StageFiles {
  std::vector<std::pair<std::string, std::string>> files;  // name, text

  std::string digest() const {
    std::vector<std::string> lines;
    for (const auto& [name, text] : files)
      lines.push_back(name + " " + sha256_hex(text) + "\n");
    std::sort(lines.begin(), lines.end());
    Sha256 h;
    for (const auto& l : lines) h.update(l);
    return h.hex();
  }

  Json file_digests() const {
    Json j = Json::object();
    for (const auto& [name, text] : files) j[name] = sha256_hex(text);
    return j;
  }
};

inline StageFiles stage_files(const Graph& g, const NodeLabelTable& labels,
                              const PairSet& pairs,
                              const std::vector<std::vector<Edge>>& certs) {
  StageFiles f;
  f.files.emplace_back("graph.edges", edge_list_text(g));
  f.files.emplace_back("labels.json", dump_json(labels_to_json(labels)));
  std::ostringstream ps, cs;
  write_pairs(ps, pairs);
  write_certificates(cs, certs);
  f.files.emplace_back("pairs.txt", ps.str());
  f.files.emplace_back("certificates.txt", cs.str());
  return f;
}

inline void finish_stage(StageRecord& rec, const StageFiles& files,
                         const std::optional<std::filesystem::path>& out_dir) {
  rec.output_digest = files.digest();
  rec.files = files.file_digests();
  if (!out_dir) return;
  const auto dir = *out_dir / ("stage-" + rec.name);
  std::filesystem::create_directories(dir);
  for (const auto& [name, text] : files.files) write_text_file(dir / name, text);
  write_text_file(dir / "manifest.json", dump_json(rec.to_json()));
}

template <typename Report>
Json index_list(const Report& items) {
  Json j = Json::array();
  for (const auto& i : items) j.push_back(i);
  return j;
}

inline Json sharing_list(const std::vector<EdgeSharing>& items) {
  Json j = Json::array();
  for (const auto& s : items)
    j.push_back({{"edge", s.edge}, {"first_pair", s.first_pair},
                 {"second_pair", s.second_pair}});
  return j;
}

}  // namespace detail

inline Json audit_json(const BaseAuditReport& r) {
  return {{"unique_sp_failures", detail::index_list(r.unique_sp_failures)},
          {"distance_failures", detail::index_list(r.distance_failures)},
          {"edge_disjoint_violations",
           detail::sharing_list(r.edge_disjoint_violations)}};
}

inline Json audit_json(const CompressedAuditReport& r) {
  Json tp = Json::array();
  for (const auto& s : r.two_path_violations)
    tp.push_back({{"two_path", {s.two_path.a, s.two_path.b, s.two_path.c}},
                  {"first_pair", s.first_pair},
                  {"second_pair", s.second_pair}});
  return {{"unique_sp_failures", detail::index_list(r.unique_sp_failures)},
          {"distance_failures", detail::index_list(r.distance_failures)},
          {"two_path_violations", tp}};
}

inline Json audit_json(const OpAuditReport& r) {
  return {{"distance_failures", detail::index_list(r.distance_failures)},
          {"certificate_disjointness_violations",
           detail::sharing_list(r.certificate_disjointness_violations)},
          {"detour_failures", detail::index_list(r.detour_failures)}};
}

/// Counting summary of an obstacle product: pair count versus certificate
/// and clique edge totals, node breakdown, D and k.
inline Json counting_summary(const ObstacleGraph& og) {
  std::size_t cert_edges = 0;
  for (const auto& c : og.certificates) cert_edges += c.size();
  return {{"pairs", og.pairs.size()},
          {"certificate_edges", cert_edges},
          {"clique_edges", og.clique_edge_count},
          {"nodes", {{"path", og.path_node_count},
                     {"clique", og.clique_node_count},
                     {"total", og.graph.node_count()}}},
          {"edges", og.graph.edge_count()},
          {"D", og.op_distance()},
          {"k", og.separation()},
          {"host", og.host_kind}};
}

/// Runs base -> (compress) -> (op), auditing each stage before the next one
/// starts. With `out_dir`, writes <out>/stage-<name>/ artifacts plus a
/// top-level manifest.json. Throws AuditFailure on any audit finding.
inline PipelineRun run_pipeline(const PipelineOptions& opt,
                                const std::optional<std::filesystem::path>& out_dir = {}) {
  ConstructionParams params = opt.params;
  const bool want_op = opt.last_stage == Stage::kOp;
  const bool want_compress =
      opt.last_stage == Stage::kCompress ||
      (want_op && opt.op_host == OpHost::kCompressed);
  if (want_op && params.k < 2)
    throw DegenerateParameterError(
        "degenerate Delta: the op stage needs base path length k >= 2, got k = " +
        std::to_string(params.k));

  AvgFreeSet a;
  if (params.fixture) {
    a = opt.fixture ? *opt.fixture : fixture_set(params.k);
    a.k = params.k;
    params.N = a.N;
  } else {
    params.q = (std::uint64_t{params.k} + 1) * params.p;
    params.N = checked_pow(params.q, params.d);
  }
  params.validate();
  if (!params.fixture) a = build_avgfree(params.p, params.d, params.k, opt.size_cap);

  PipelineRun run;
  auto& man = run.manifest;
  man.request = {{"params", to_json(params)},
                 {"last_stage", stage_name(opt.last_stage)},
                 {"op_host", opt.op_host == OpHost::kBase ? "base" : "compressed"},
                 {"node_ceiling", opt.node_ceiling},
                 {"seed", opt.seed},
                 {"fixture", params.fixture}};
  if (out_dir) std::filesystem::create_directories(*out_dir);

  // Base.
  {
    BaseOptions bo;
    bo.node_ceiling = opt.node_ceiling;
    run.base = build_base(a, bo);
    auto& lg = run.base->layered;
    lg.params.epsilon = params.epsilon;
    lg.params.delta = params.delta;
    lg.params.advisory_k = params.advisory_k;
    StageRecord rec;
    rec.name = "base";
    rec.input_digest = sha256_hex(dump_json(to_json(a)));
    rec.params = to_json(lg.params);
    rec.counts = {{"p", a.p}, {"d", a.d}, {"k", a.k}, {"N", a.N},
                  {"A_size", a.size()},
                  {"node_count", lg.graph.node_count()},
                  {"edge_count", lg.graph.edge_count()},
                  {"pair_count", run.base->pairs.size()}};
    const auto report = audit_base(lg, run.base->pairs, opt.threads);
    rec.audit = audit_json(report);
    if (!report.clean()) throw AuditFailure("base", rec.audit);
    auto files = detail::stage_files(lg.graph, lg.labels, run.base->pairs, {});
    files.files.emplace_back("avgfree.json", dump_json(to_json(a)));
    detail::finish_stage(rec, files, out_dir);
    man.stages.push_back(std::move(rec));
  }

  // Compression.
  if (want_compress) {
    const auto& b = *run.base;
    const auto o = orient(b.layered, b.pairs);
    run.compressed = compress(b.layered, b.pairs, o, opt.node_ceiling);
    const auto& cg = *run.compressed;
    StageRecord rec;
    rec.name = "compress";
    rec.input_digest = man.stages.back().output_digest;
    rec.params = to_json(cg.params);
    rec.counts = {{"node_count", cg.graph.node_count()},
                  {"edge_count", cg.graph.edge_count()},
                  {"pair_count", cg.pairs.size()},
                  {"forward_edge_count", cg.forward_edge_count},
                  {"edge_count_all_base_edges_oriented",
                   2 * cg.base_node_count * b.layered.graph.edge_count()},
                  {"reachable_core_nodes", reachable_core(cg).size()}};
    const auto report = audit_compressed(cg, opt.threads);
    rec.audit = audit_json(report);
    if (!report.clean()) throw AuditFailure("compress", rec.audit);
    detail::finish_stage(rec, detail::stage_files(cg.graph, cg.labels, cg.pairs, {}),
                         out_dir);
    man.stages.push_back(std::move(rec));
  }

  // Obstacle product.
  if (want_op) {
    const bool on_compressed = opt.op_host == OpHost::kCompressed;
    std::shared_ptr<const Graph> host;
    const PairSet* host_pairs;
    ConstructionParams host_params;
    if (on_compressed) {
      host = std::make_shared<const Graph>(run.compressed->graph);
      host_pairs = &run.compressed->pairs;
      host_params = run.compressed->params;
    } else {
      host = std::make_shared<const Graph>(run.base->layered.graph);
      host_pairs = &run.base->pairs;
      host_params = run.base->layered.params;
    }
    run.op = build_op(host, *host_pairs, *host_params.pair_distance,
                      on_compressed ? "compressed" : "base", host_params,
                      opt.node_ceiling);
    const auto& og = *run.op;
    StageRecord rec;
    rec.name = "op";
    rec.input_digest = man.stages.back().output_digest;
    rec.params = to_json(og.params);
    rec.counts = {{"node_count", og.graph.node_count()},
                  {"edge_count", og.graph.edge_count()},
                  {"pair_count", og.pairs.size()},
                  {"path_nodes", og.path_node_count},
                  {"clique_nodes", og.clique_node_count},
                  {"clique_edges", og.clique_edge_count},
                  {"host", og.host_kind}};
    rec.warnings = og.warnings;
    OpAuditOptions audit_opt = opt.op_audit;
    audit_opt.threads = opt.threads;
    const auto report = audit_op(og, audit_opt);
    rec.audit = audit_json(report);
    if (!report.clean()) throw AuditFailure("op", rec.audit);
    detail::finish_stage(
        rec, detail::stage_files(og.graph, og.labels, og.pairs, og.certificates),
        out_dir);
    man.stages.push_back(std::move(rec));
    man.counting = counting_summary(og);
  }

  if (out_dir) write_text_file(*out_dir / "manifest.json", dump_json(man.to_json()));
  return run;
}

}  // namespace spanlb
