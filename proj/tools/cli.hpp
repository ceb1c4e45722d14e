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

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spanlb/spanlb.hpp"

namespace spanlb::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFindings = 2;

/// Artifacts of one pipeline stage read back from disk.
struct StageArtifacts {
  fs::path dir;
  std::string kind;  // "base", "compress" or "op"
  Json manifest;
  Graph graph;
  NodeLabelTable labels;
  PairSet pairs;
  std::vector<std::vector<Edge>> certificates;
};

/// A pipeline root resolves to its last stage directory.
inline fs::path resolve_stage_dir(const fs::path& in) {
  const auto root_manifest = in / "manifest.json";
  if (fs::exists(root_manifest)) {
    const Json m = Json::parse(read_text_file(root_manifest), nullptr, false);
    if (m.is_object() && m.contains("stages") && !m["stages"].empty())
      return in / ("stage-" + m["stages"].back()["stage"].get<std::string>());
  }
  return in;
}

inline StageArtifacts load_stage(const fs::path& in) {
  StageArtifacts s;
  s.dir = resolve_stage_dir(in);
  s.manifest = Json::parse(read_text_file(s.dir / "manifest.json"), nullptr, false);
  if (!s.manifest.is_object() || !s.manifest.contains("stage"))
    throw InputError("bad stage manifest in " + s.dir.string());
  s.kind = s.manifest["stage"].get<std::string>();
  s.graph = read_edge_list(s.dir / "graph.edges");
  const Json lj = Json::parse(read_text_file(s.dir / "labels.json"), nullptr, false);
  if (lj.is_discarded()) throw InputError("labels.json is not valid JSON");
  s.labels = labels_from_json(lj);
  if (s.labels.labels().size() != s.graph.node_count())
    throw InputError("labels.json has " + std::to_string(s.labels.labels().size()) +
                     " entries for " + std::to_string(s.graph.node_count()) +
                     " nodes");
  {
    std::istringstream in(read_text_file(s.dir / "pairs.txt"));
    s.pairs = read_pairs(in);
  }
  {
    std::istringstream in(read_text_file(s.dir / "certificates.txt"));
    s.certificates = read_certificates(in);
  }
  for (const auto& p : s.pairs.pairs)
    if (p.s >= s.graph.node_count() || p.t >= s.graph.node_count())
      throw InputError("pairs.txt names a node outside the graph");
  return s;
}

inline std::uint32_t manifest_param(const StageArtifacts& s, const char* key) {
  const auto& p = s.manifest.at("params");
  if (!p.contains(key) || !p[key].is_number_unsigned())
    throw InputError(std::string("stage manifest lacks params.") + key);
  return p[key].get<std::uint32_t>();
}

/// Canonical base paths rebuilt from labels: (x + j a, j) for j = 0..k. A
/// missing node leaves an empty path, which every audit rejects.
inline void attach_base_paths(const StageArtifacts& s, PairSet& ps,
                              std::uint32_t k) {
  ps.paths.assign(ps.size(), Path{});
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto* o = std::get_if<BaseOrigin>(&ps.origins[i]);
    if (!o) continue;
    Path p;
    bool ok = true;
    for (std::uint32_t j = 0; j <= k && ok; ++j) {
      const auto id = s.labels.find(BaseLabel{o->start_x + j * o->witness_a, j});
      if (id) p.nodes.push_back(*id);
      else ok = false;
    }
    if (ok) ps.paths[i] = std::move(p);
  }
}

/// Paths recovered as the BFS shortest path (lowest-id predecessor).
inline void attach_bfs_paths(const Graph& g, PairSet& ps, unsigned threads) {
  ps.paths.assign(ps.size(), Path{});
  parallel_chunks(ps.size(), threads, [&](std::size_t b, std::size_t e) {
    BfsWorkspace ws;
    for (std::size_t i = b; i < e; ++i)
      if (auto p = ws.shortest_path(g, ps.pairs[i].s, ps.pairs[i].t))
        ps.paths[i] = std::move(*p);
  });
}

inline ObstacleGraph op_from_stage(StageArtifacts s, unsigned threads) {
  if (s.kind != "op") throw InputError("expected an op stage, got " + s.kind);
  ObstacleGraph og;
  og.params.pair_distance = manifest_param(s, "Delta");
  og.params.extension_length = manifest_param(s, "ell");
  og.params.op_distance = manifest_param(s, "D");
  if (s.certificates.size() != s.pairs.size())
    throw InputError("certificates.txt and pairs.txt disagree on pair count");
  attach_bfs_paths(s.graph, s.pairs, threads);
  for (const auto& l : s.labels.labels()) {
    if (std::holds_alternative<CliqueLabel>(l)) ++og.clique_node_count;
    if (std::holds_alternative<PathLabel>(l)) ++og.path_node_count;
  }
  og.graph = std::move(s.graph);
  og.labels = std::move(s.labels);
  og.pairs = std::move(s.pairs);
  og.certificates = std::move(s.certificates);
  og.host_kind = s.manifest.at("counts").value("host", "custom");
  for (EdgeId e = 0; e < og.graph.edge_count(); ++e)
    if (og.is_clique_edge(e)) ++og.clique_edge_count;
  return og;
}

/// Flag echo plus output digests, written next to a subcommand's outputs.
inline void write_command_manifest(const fs::path& path, const std::string& cmd,
                                   const Json& flags, const Json& outputs) {
  write_text_file(path, dump_json({{"command", cmd},
                                   {"flags", flags},
                                   {"outputs", outputs}}));
}

struct GlobalFlags {
  unsigned threads = 0;
};

// gen -----------------------------------------------------------------------

struct GenFlags {
  std::string stage = "op";
  std::optional<std::uint64_t> p;
  std::optional<std::uint32_t> d;
  std::optional<std::uint32_t> k;
  std::optional<std::string> eps;
  bool fixture = false;
  std::string out;
  std::string op_host = "compressed";
  std::uint64_t node_ceiling = 10'000'000;
  std::optional<std::size_t> size_cap;
  std::uint64_t seed = 0;
  std::size_t cross_check_limit = 64;
};

inline int run_gen(const GenFlags& f, const GlobalFlags& g, std::ostream& out,
                   std::ostream& err) {
  PipelineOptions opt;
  opt.last_stage = parse_stage(f.stage);
  if (f.op_host != "compressed" && f.op_host != "base")
    throw InputError("--op-host must be 'compressed' or 'base'");
  opt.op_host = f.op_host == "base" ? OpHost::kBase : OpHost::kCompressed;
  opt.node_ceiling = f.node_ceiling;
  opt.size_cap = f.size_cap;
  opt.seed = f.seed;
  opt.threads = g.threads;
  opt.op_audit.cross_check_limit = f.cross_check_limit;

  auto& params = opt.params;
  if (f.fixture) {
    if (f.p || f.d || f.eps)
      throw InputError("--fixture excludes --p, --d and --eps");
    params.fixture = true;
    params.k = f.k.value_or(2);
  } else {
    if (!f.p) throw InputError("--p is required without --fixture");
    if (f.eps) {
      const auto plan_result = plan(Rational::parse(*f.eps), *f.p, f.k);
      for (const auto& note : plan_result.notes) err << "note: " << note << '\n';
      if (f.d && *f.d != plan_result.params.d)
        throw InputError("--d disagrees with ceil(3 / eps) = " +
                         std::to_string(plan_result.params.d));
      params.epsilon = plan_result.params.epsilon;
      params.delta = plan_result.params.delta;
      params.advisory_k = plan_result.params.advisory_k;
      params.d = plan_result.params.d;
      params.k = plan_result.params.k;
    } else {
      if (!f.d) throw InputError("--d or --eps is required without --fixture");
      if (!f.k) throw InputError("--k is required without --eps");
      params.d = *f.d;
      params.k = *f.k;
    }
    params.p = *f.p;
  }

  const fs::path root = f.out;
  try {
    const auto run = run_pipeline(opt, root);
    Json flags = {{"stage", f.stage},       {"fixture", f.fixture},
                  {"op_host", f.op_host},   {"node_ceiling", f.node_ceiling},
                  {"seed", f.seed},         {"out", "."},
                  {"threads", g.threads},   {"cross_check_limit", f.cross_check_limit}};
    flags["p"] = f.p ? Json(*f.p) : Json(nullptr);
    flags["d"] = f.d ? Json(*f.d) : Json(nullptr);
    flags["k"] = f.k ? Json(*f.k) : Json(nullptr);
    flags["eps"] = f.eps ? Json(*f.eps) : Json(nullptr);
    flags["size_cap"] = f.size_cap ? Json(*f.size_cap) : Json(nullptr);
    Json outputs = Json::object();
    for (const auto& s : run.manifest.stages) outputs[s.name] = s.output_digest;
    write_command_manifest(root / "command.json", "gen", flags, outputs);
    const auto& last = run.manifest.stages.back();
    out << "stage " << last.name << ": " << last.counts.dump() << '\n';
    if (!run.manifest.counting.is_null())
      out << "counting: " << run.manifest.counting.dump() << '\n';
    return kExitOk;
  } catch (const AuditFailure& e) {
    fs::create_directories(root);
    write_text_file(root / "audit_failure.json",
                    dump_json({{"stage", e.stage()}, {"report", e.report()}}));
    err << e.what() << ": " << e.report().dump() << '\n';
    return kExitFindings;
  }
}

// verify --------------------------------------------------------------------

struct VerifyFlags {
  std::string in;
  std::string check = "all";
  std::optional<std::string> report;
  std::size_t family_limit = 16;
};

inline int run_verify(const VerifyFlags& f, const GlobalFlags& g,
                      std::ostream& out, std::ostream&) {
  static const std::vector<std::string> kChecks = {
      "all", "unique-sp", "disjoint", "2path", "op-claims", "family"};
  if (std::find(kChecks.begin(), kChecks.end(), f.check) == kChecks.end())
    throw InputError("unknown --check '" + f.check + "'");
  auto s = load_stage(f.in);
  const std::string kind = s.kind;
  const fs::path stage_dir = s.dir;
  const auto wants = [&](const char* c) { return f.check == "all" || f.check == c; };

  Json results = Json::object();
  std::size_t findings = 0;
  auto add = [&](const char* name, Json items) {
    findings += items.size();
    results[name] = std::move(items);
  };

  if (s.kind == "base") {
    const std::uint32_t k = manifest_param(s, "k");
    attach_base_paths(s, s.pairs, k);
    LayeredGraph lg;
    lg.graph = s.graph;
    lg.labels = s.labels;
    lg.params.k = k;
    const auto r = audit_base(lg, s.pairs, g.threads);
    const Json rj = audit_json(r);
    if (wants("unique-sp")) {
      add("unique_sp_failures", rj["unique_sp_failures"]);
      add("distance_failures", rj["distance_failures"]);
    }
    if (wants("disjoint")) add("edge_disjoint_violations", rj["edge_disjoint_violations"]);
    if (wants("2path")) {
      Json tp = Json::array();
      for (const auto& c : two_path_collisions(s.pairs))
        tp.push_back({c.first_pair, c.second_pair});
      add("two_path_violations", tp);
    }
  } else if (s.kind == "compress") {
    attach_bfs_paths(s.graph, s.pairs, g.threads);
    const auto r = audit_pairs_unique_two_path(s.graph, s.pairs,
                                               manifest_param(s, "Delta"), g.threads);
    const Json rj = audit_json(r);
    if (wants("unique-sp")) {
      add("unique_sp_failures", rj["unique_sp_failures"]);
      add("distance_failures", rj["distance_failures"]);
    }
    if (wants("2path")) add("two_path_violations", rj["two_path_violations"]);
  } else if (s.kind == "op") {
    const auto og = op_from_stage(std::move(s), g.threads);
    if (wants("op-claims") || wants("unique-sp") || wants("disjoint")) {
      OpAuditOptions ao;
      ao.threads = g.threads;
      const Json rj = audit_json(audit_op(og, ao));
      if (wants("op-claims") || wants("unique-sp"))
        add("distance_failures", rj["distance_failures"]);
      if (wants("op-claims") || wants("disjoint"))
        add("certificate_disjointness_violations",
            rj["certificate_disjointness_violations"]);
      if (wants("op-claims")) add("detour_failures", rj["detour_failures"]);
    }
    if (wants("family")) {
      if (og.pairs.size() > f.family_limit) {
        results["family"] = "skipped: " + std::to_string(og.pairs.size()) +
                            " pairs exceed --family-limit";
      } else {
        const Dist threshold = og.op_distance() + og.separation();
        const auto fr = verify_family(og, threshold, g.threads);
        Json fj = {{"members", fr.members},
                   {"outside_violations", fr.outside_violations},
                   {"inside_violations", fr.inside_violations},
                   {"inside_threshold", fr.inside_threshold},
                   {"min_inside_distance", dist_json(fr.min_inside_distance)}};
        findings += fr.outside_violations + fr.inside_violations;
        results["family"] = fj;
      }
    }
  } else {
    throw InputError("unknown stage kind '" + s.kind + "'");
  }

  const fs::path report = f.report ? fs::path(*f.report) : stage_dir / "verify-report.json";
  const Json doc = {{"stage", kind}, {"check", f.check},
                    {"findings", findings}, {"results", results}};
  write_text_file(report, dump_json(doc));
  out << (findings == 0 ? "clean" : "FINDINGS") << ' ' << doc.dump() << '\n';
  return findings == 0 ? kExitOk : kExitFindings;
}

// spanner -------------------------------------------------------------------

struct SpannerFlags {
  std::optional<std::string> in;
  std::optional<std::size_t> random_n;
  std::optional<std::size_t> random_m;
  std::string algo = "plus2";
  std::uint32_t t = 2;
  std::optional<std::size_t> threshold;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
};

inline int run_spanner(const SpannerFlags& f, const GlobalFlags& g,
                       std::ostream& out, std::ostream&) {
  if (f.in.has_value() == (f.random_n.has_value() || f.random_m.has_value()))
    throw InputError("give either --in or --random-n/--random-m");
  std::optional<ObstacleGraph> og;
  Graph graph;
  if (f.in) {
    auto s = load_stage(*f.in);
    if (s.kind == "op") {
      og = op_from_stage(std::move(s), g.threads);
      graph = og->graph;
    } else {
      graph = std::move(s.graph);
    }
  } else {
    if (!f.random_n || !f.random_m)
      throw InputError("--random-n and --random-m go together");
    graph = random_graph(*f.random_n, *f.random_m, f.seed);
  }

  SpannerResult r;
  double promised_add = -1, promised_mult = -1;
  if (f.algo == "plus2") {
    r = spanner_plus2(graph, f.threshold, true, g.threads);
    promised_add = 2;
  } else if (f.algo == "plus6") {
    r = spanner_plus6(graph, true, g.threads);
    promised_add = 6;
  } else if (f.algo == "greedy") {
    r = spanner_greedy_mult(graph, f.t, true, g.threads);
    promised_mult = 2.0 * f.t - 1;
  } else {
    throw InputError("--algo must be plus2, plus6 or greedy");
  }

  Json doc = to_json(r, graph);
  bool ok = promised_add < 0 || (*r.verified_additive != kUnreachable &&
                                 *r.verified_additive <= promised_add);
  ok = ok && (promised_mult < 0 || *r.verified_multiplicative <= promised_mult);
  if (og) {
    const auto rep = stretch_audit(*og, r.subgraph);
    const Dist k = og->separation();
    doc["designated_pairs"] = {
        {"pairs", og->pairs.size()},
        {"max_stretch", dist_json(rep.max_stretch)},
        {"kept_clique_edges", rep.kept_clique_edges},
        {"counting_consistent",
         rep.max_stretch > k || rep.kept_clique_edges >= og->pairs.size()}};
    ok = ok && doc["designated_pairs"]["counting_consistent"].get<bool>();
  }
  doc["guarantee_met"] = ok;
  if (f.out) {
    write_text_file(*f.out, dump_json(doc));
    Json flags = {{"algo", f.algo}, {"t", f.t}, {"seed", f.seed}};
    flags["in"] = f.in ? Json(*f.in) : Json(nullptr);
    flags["random_n"] = f.random_n ? Json(*f.random_n) : Json(nullptr);
    flags["random_m"] = f.random_m ? Json(*f.random_m) : Json(nullptr);
    flags["threshold"] = f.threshold ? Json(*f.threshold) : Json(nullptr);
    write_command_manifest(fs::path(*f.out).concat(".manifest.json"), "spanner",
                           flags, {{"report", sha256_file(*f.out)}});
  }
  out << doc.dump() << '\n';
  return ok ? kExitOk : kExitFindings;
}

// stress --------------------------------------------------------------------

struct StressFlags {
  std::string in;
  std::size_t budget = 0;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
};

inline int run_stress(const StressFlags& f, const GlobalFlags& g,
                      std::ostream& out, std::ostream& err) {
  const auto og = op_from_stage(load_stage(f.in), g.threads);
  const bool guaranteed = f.budget < og.pairs.size();
  if (!guaranteed)
    err << "note: budget " << f.budget << " >= " << og.pairs.size()
        << " pairs; rows are exploratory\n";
  Rng rng(f.seed);
  std::ostringstream csv;
  csv << "trial,regime,witness_pair,base_dist,sub_dist,stretch\n";
  std::size_t failures = 0, witnesses = 0;
  for (std::size_t t = 0; t < f.trials; ++t) {
    const auto h = random_certificate_mask(og, f.budget, rng);
    csv << t << ',' << (guaranteed ? "guaranteed" : "exploratory") << ',';
    std::optional<AdversaryWitness> w;
    try {
      w = counting_adversary(og, h);
    } catch (const IntegrityError& e) {
      err << e.what() << '\n';
      ++failures;
      csv << "integrity_error,,,\n";
      continue;
    }
    if (w) {
      ++witnesses;
      csv << w->pair << ',' << dist_text(w->base) << ',' << dist_text(w->sub)
          << ',' << dist_text(w->stretch) << '\n';
    } else {
      if (guaranteed) ++failures;
      csv << "none,,,\n";
    }
  }
  const fs::path path = f.out ? fs::path(*f.out) : fs::path(f.in) / "stress.csv";
  write_text_file(path, csv.str());
  write_command_manifest(fs::path(path).concat(".manifest.json"), "stress",
                         {{"in", f.in}, {"budget_clique_edges", f.budget},
                          {"trials", f.trials}, {"seed", f.seed},
                          {"out", path.string()}},
                         {{"csv", sha256_file(path)}});
  out << witnesses << " witnesses in " << f.trials << " trials, " << failures
      << " guarantee failures\n";
  return failures == 0 ? kExitOk : kExitFindings;
}

// incompress ----------------------------------------------------------------

struct IncompressFlags {
  std::string in;
  std::size_t bits = 8;
  std::string compressor = "hash";
  std::uint64_t seed = 0;
  std::optional<Dist> min_gap;
  std::optional<std::string> out;
};

inline int run_incompress(const IncompressFlags& f, const GlobalFlags& g,
                          std::ostream& out, std::ostream& err) {
  const auto og = op_from_stage(load_stage(f.in), g.threads);
  Compressor c;
  if (f.compressor == "prefix") c = prefix_compressor(og, f.bits);
  else if (f.compressor == "hash") c = hash_compressor(f.seed, f.bits);
  else if (f.compressor == "identity") c = identity_compressor(og);
  else throw InputError("--compressor must be prefix, hash or identity");
  PigeonholeOptions po;
  po.min_gap = f.min_gap;
  po.seed = f.seed;
  po.threads = g.threads;
  Json doc;
  int code = kExitOk;
  try {
    doc = to_json(pigeonhole_demo(og, f.bits, c, po));
    doc["status"] = "collision";
  } catch (const InconclusiveError& e) {
    err << e.what() << '\n';
    doc = {{"status", "inconclusive"}, {"reason", e.what()}};
    code = kExitFindings;
  }
  doc["bit_budget"] = f.bits;
  doc["compressor"] = f.compressor;
  doc["pairs"] = og.pairs.size();
  doc["k"] = og.separation();
  const fs::path path = f.out ? fs::path(*f.out) : fs::path(f.in) / "incompress.json";
  write_text_file(path, dump_json(doc));
  out << doc.dump() << '\n';
  return code;
}

// report --------------------------------------------------------------------

inline int run_report(const std::string& in, const std::optional<std::string>& out_path,
                      std::ostream& out) {
  const Json m = Json::parse(read_text_file(fs::path(in) / "manifest.json"), nullptr, false);
  if (!m.is_object() || !m.contains("stages"))
    throw InputError("report: " + in + " is not a pipeline root");
  std::ostringstream csv;
  csv << "stage,metric,value\n";
  for (const auto& s : m["stages"]) {
    const std::string name = s["stage"];
    for (const auto& [key, value] : s["counts"].items())
      csv << name << ',' << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  const Json flat =
      m.contains("counting") && m["counting"].is_object() ? m["counting"].flatten()
                                                          : Json::object();
  for (const auto& [key, value] : flat.items())
      csv << "counting," << key.substr(1) << ','
          << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  const fs::path path = out_path ? fs::path(*out_path) : fs::path(in) / "report.csv";
  write_text_file(path, csv.str());
  out << csv.str();
  return kExitOk;
}

/// Parses argv and dispatches; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"spanlb: hard instances for additive spanners"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "build and audit pipeline stages");
  gen_cmd->add_option("--stage", gen.stage, "base, compress or op");
  gen_cmd->add_option("--p", gen.p);
  gen_cmd->add_option("--d", gen.d);
  gen_cmd->add_option("--k", gen.k);
  gen_cmd->add_option("--eps", gen.eps, "epsilon as a/b or decimal");
  gen_cmd->add_flag("--fixture", gen.fixture, "use A = {1, 2}, N = 2");
  gen_cmd->add_option("--out", gen.out)->required();
  gen_cmd->add_option("--op-host", gen.op_host, "compressed or base");
  gen_cmd->add_option("--node-ceiling", gen.node_ceiling);
  gen_cmd->add_option("--size-cap", gen.size_cap);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--cross-check-limit", gen.cross_check_limit);

  VerifyFlags ver;
  auto* ver_cmd = app.add_subcommand("verify", "re-audit artifacts on disk");
  ver_cmd->add_option("--in", ver.in)->required();
  ver_cmd->add_option("--check", ver.check,
                      "all, unique-sp, disjoint, 2path, op-claims or family");
  ver_cmd->add_option("--report", ver.report);
  ver_cmd->add_option("--family-limit", ver.family_limit);

  SpannerFlags sp;
  auto* sp_cmd = app.add_subcommand("spanner", "build and audit a spanner");
  sp_cmd->add_option("--in", sp.in);
  sp_cmd->add_option("--random-n", sp.random_n);
  sp_cmd->add_option("--random-m", sp.random_m);
  sp_cmd->add_option("--algo", sp.algo, "plus2, plus6 or greedy");
  sp_cmd->add_option("--t", sp.t);
  sp_cmd->add_option("--threshold", sp.threshold);
  sp_cmd->add_option("--seed", sp.seed);
  sp_cmd->add_option("--out", sp.out);

  StressFlags st;
  auto* st_cmd = app.add_subcommand("stress", "counting adversary on random masks");
  st_cmd->add_option("--in", st.in)->required();
  st_cmd->add_option("--budget-clique-edges", st.budget)->required();
  st_cmd->add_option("--trials", st.trials);
  st_cmd->add_option("--seed", st.seed);
  st_cmd->add_option("--out", st.out);

  IncompressFlags ic;
  auto* ic_cmd = app.add_subcommand("incompress", "pigeonhole collision search");
  ic_cmd->add_option("--in", ic.in)->required();
  ic_cmd->add_option("--bits", ic.bits);
  ic_cmd->add_option("--compressor", ic.compressor, "prefix, hash or identity");
  ic_cmd->add_option("--seed", ic.seed);
  ic_cmd->add_option("--min-gap", ic.min_gap);
  ic_cmd->add_option("--out", ic.out);

  std::string rep_in;
  std::optional<std::string> rep_out;
  auto* rep_cmd = app.add_subcommand("report", "merged CSV of stage statistics");
  rep_cmd->add_option("--in", rep_in)->required();
  rep_cmd->add_option("--out", rep_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen, g, out, err);
    if (*ver_cmd) return run_verify(ver, g, out, err);
    if (*sp_cmd) return run_spanner(sp, g, out, err);
    if (*st_cmd) return run_stress(st, g, out, err);
    if (*ic_cmd) return run_incompress(ic, g, out, err);
    if (*rep_cmd) return run_report(rep_in, rep_out, out);
  } catch (const std::invalid_argument& e) {  // InputError and subclasses
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConstructionViolation& e) {
    err << "construction violation: " << e.what() << '\n';
    return kExitFindings;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << '\n';
    return kExitFindings;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace spanlb::cli
