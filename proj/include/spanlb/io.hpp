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

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "spanlb/avgfree.hpp"
#include "spanlb/errors.hpp"
#include "spanlb/graph.hpp"
#include "spanlb/labels.hpp"
#include "spanlb/pairs.hpp"
#include "spanlb/params.hpp"
#include "spanlb/spanners.hpp"
#include "spanlb/verification.hpp"

namespace spanlb {

using Json = nlohmann::json;

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_text_file(const std::filesystem::path& path,
                            std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("write failed for " + path.string());
}

/// JSON text with sorted keys, two-space indent and a trailing newline.
inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {

/// Whitespace-separated unsigned integers of one line; throws on junk.
inline std::vector<std::uint64_t> line_numbers(std::string_view line,
                                               std::size_t line_no) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size()) break;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
    if (ec != std::errc{})
      throw InputError("line " + std::to_string(line_no) + ": expected integer");
    i = static_cast<std::size_t>(ptr - line.data());
    if (i < line.size() && line[i] != ' ' && line[i] != '\t')
      throw InputError("line " + std::to_string(line_no) + ": expected integer");
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

// Edge list: "n <count>" then "u v" per edge, u < v, ascending.

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.node_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline std::string edge_list_text(const Graph& g) {
  std::ostringstream s;
  write_edge_list(s, g);
  return s.str();
}

inline Graph read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("n ", 0) != 0)
    throw InputError("edge list: missing 'n <count>' header");
  const auto head = detail::line_numbers(std::string_view(line).substr(2), 1);
  if (head.size() != 1) throw InputError("edge list: bad header");
  std::vector<Edge> edges;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = detail::line_numbers(line, line_no);
    if (f.size() != 2 || f[0] >= f[1])
      throw InputError("edge list line " + std::to_string(line_no) +
                       ": need 'u v' with u < v");
    const Edge e{static_cast<NodeId>(f[0]), static_cast<NodeId>(f[1])};
    if (!edges.empty() && !(edges.back() < e))
      throw InputError("edge list line " + std::to_string(line_no) +
                       ": edges must be strictly ascending");
    edges.push_back(e);
  }
  return Graph(head[0], std::move(edges));
}

inline Graph read_edge_list(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  return read_edge_list(in);
}

// Labels: {"format": "spanlb-labels/1", "labels": ["B:1:0", ...]}, index = id.

inline Json labels_to_json(const NodeLabelTable& t) {
  Json arr = Json::array();
  for (const auto& l : t.labels()) arr.push_back(to_string(l));
  return {{"format", "spanlb-labels/1"}, {"labels", std::move(arr)}};
}

inline NodeLabelTable labels_from_json(const Json& j) {
  if (!j.is_object() || j.value("format", "") != "spanlb-labels/1" ||
      !j.contains("labels") || !j["labels"].is_array())
    throw InputError("labels: expected spanlb-labels/1 document");
  std::vector<NodeLabel> out;
  for (const auto& s : j["labels"]) {
    if (!s.is_string()) throw InputError("labels: entries must be strings");
    out.push_back(parse_label(s.get<std::string>()));
  }
  return NodeLabelTable(std::move(out));
}

// Pairs: a "# s t ..." header naming the origin columns, then one pair per
// line. Base "s t a x", product "s t first second", host "s t host_pair".

inline void write_pairs(std::ostream& out, const PairSet& ps) {
  struct Header {
    const char* operator()(std::monostate) const { return "# s t"; }
    const char* operator()(const BaseOrigin&) const { return "# s t a x"; }
    const char* operator()(const ProductOrigin&) const {
      return "# s t first second";
    }
    const char* operator()(const HostOrigin&) const { return "# s t host_pair"; }
  };
  struct Columns {
    std::ostream& out;
    void operator()(std::monostate) const {}
    void operator()(const BaseOrigin& o) const {
      out << ' ' << o.witness_a << ' ' << o.start_x;
    }
    void operator()(const ProductOrigin& o) const {
      out << ' ' << o.first << ' ' << o.second;
    }
    void operator()(const HostOrigin& o) const { out << ' ' << o.host_pair; }
  };
  const PairOrigin first =
      ps.origins.empty() ? PairOrigin{} : ps.origins.front();
  out << std::visit(Header{}, first) << '\n';
  for (std::size_t i = 0; i < ps.size(); ++i) {
    out << ps.pairs[i].s << ' ' << ps.pairs[i].t;
    if (i < ps.origins.size()) {
      if (ps.origins[i].index() != first.index())
        throw InputError("write_pairs: mixed pair origins");
      std::visit(Columns{out}, ps.origins[i]);
    }
    out << '\n';
  }
}

inline PairSet read_pairs(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw InputError("pairs: empty file");
  std::size_t kind;
  if (header == "# s t") kind = 0;
  else if (header == "# s t a x") kind = 1;
  else if (header == "# s t first second") kind = 2;
  else if (header == "# s t host_pair") kind = 3;
  else throw InputError("pairs: unknown header '" + header + "'");
  const std::size_t width[] = {2, 4, 4, 3};
  PairSet ps;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = detail::line_numbers(line, line_no);
    if (f.size() != width[kind])
      throw InputError("pairs line " + std::to_string(line_no) +
                       ": expected " + std::to_string(width[kind]) + " fields");
    ps.pairs.push_back({static_cast<NodeId>(f[0]), static_cast<NodeId>(f[1])});
    switch (kind) {
      case 1: ps.origins.emplace_back(BaseOrigin{f[2], f[3]}); break;
      case 2: ps.origins.emplace_back(ProductOrigin{f[2], f[3]}); break;
      case 3: ps.origins.emplace_back(HostOrigin{f[2]}); break;
      default: ps.origins.emplace_back(std::monostate{}); break;
    }
  }
  return ps;
}

// Certificates: "pair_index : u1 v1 ; u2 v2 ; ..." per pair.

inline void write_certificates(std::ostream& out,
                               const std::vector<std::vector<Edge>>& certs) {
  for (std::size_t i = 0; i < certs.size(); ++i) {
    out << i << " :";
    for (std::size_t j = 0; j < certs[i].size(); ++j)
      out << (j ? " ; " : " ") << certs[i][j].u << ' ' << certs[i][j].v;
    out << '\n';
  }
}

inline std::vector<std::vector<Edge>> read_certificates(std::istream& in) {
  std::vector<std::vector<Edge>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw InputError("certificates line " + std::to_string(line_no) +
                       ": missing ':'");
    const auto idx = detail::line_numbers(
        std::string_view(line).substr(0, colon), line_no);
    if (idx.size() != 1 || idx[0] != out.size())
      throw InputError("certificates line " + std::to_string(line_no) +
                       ": pair indices must count up from 0");
    std::vector<Edge> cert;
    std::string_view rest = std::string_view(line).substr(colon + 1);
    while (!rest.empty()) {
      const auto semi = std::min(rest.find(';'), rest.size());
      const auto f = detail::line_numbers(rest.substr(0, semi), line_no);
      if (f.size() == 2) cert.push_back(make_edge(static_cast<NodeId>(f[0]),
                                                  static_cast<NodeId>(f[1])));
      else if (!f.empty() || semi < rest.size())
        throw InputError("certificates line " + std::to_string(line_no) +
                         ": expected 'u v' entries");
      rest = semi < rest.size() ? rest.substr(semi + 1) : std::string_view{};
    }
    out.push_back(std::move(cert));
  }
  return out;
}

// JSON views of value types.

inline Json to_json(const AvgFreeSet& a) {
  return {{"N", a.N},         {"k", a.k},         {"p", a.p},
          {"d", a.d},         {"r_star", a.r_star}, {"elements", a.elements},
          {"fixture", a.fixture}};
}

inline AvgFreeSet avgfree_from_json(const Json& j) {
  try {
    AvgFreeSet a = AvgFreeSet::from_elements(
        j.at("N").get<std::uint64_t>(), j.at("k").get<std::uint32_t>(),
        j.at("elements").get<std::vector<std::uint64_t>>());
    a.p = j.value("p", std::uint64_t{0});
    a.d = j.value("d", std::uint32_t{0});
    a.r_star = j.value("r_star", std::uint64_t{0});
    a.fixture = j.value("fixture", true);
    return a;
  } catch (const Json::exception& e) {
    throw InputError(std::string("average-free set JSON: ") + e.what());
  }
}

inline Json to_json(const ConstructionParams& p) {
  Json j = {{"d", p.d}, {"p", p.p},         {"k", p.k},
            {"q", p.q}, {"N", p.N},         {"r_star", p.r_star},
            {"fixture", p.fixture}};
  auto opt = [&](const char* key, const auto& v) {
    j[key] = v ? Json(*v) : Json(nullptr);
  };
  j["epsilon"] = p.epsilon ? Json(p.epsilon->to_string()) : Json(nullptr);
  j["delta"] = p.delta ? Json(p.delta->to_string()) : Json(nullptr);
  opt("advisory_k", p.advisory_k);
  opt("Delta", p.pair_distance);
  opt("ell", p.extension_length);
  opt("D", p.op_distance);
  return j;
}

inline Json dist_json(Dist d) {
  return d == kUnreachable ? Json("inf") : Json(d);
}

inline Json to_json(const CollisionWitness& w) {
  std::string code;
  for (bool b : w.code) code += b ? '1' : '0';
  return {{"T1", w.first},
          {"T2", w.second},
          {"code", code},
          {"pair", w.pair},
          {"dist_T1", dist_json(w.first_distance)},
          {"dist_T2", dist_json(w.second_distance)},
          {"gap", dist_json(w.gap)}};
}

/// {algo, params, n, m_in, m_out, verified_bound, audit_mode}.
inline Json to_json(const SpannerResult& r, const Graph& g) {
  Json bound = Json::object();
  if (r.verified_additive) bound["additive"] = dist_json(*r.verified_additive);
  if (r.verified_multiplicative) {
    const double m = *r.verified_multiplicative;
    bound["multiplicative"] = std::isfinite(m) ? Json(m) : Json("inf");
  }
  return {{"algo", r.algorithm},
          {"params", r.params},
          {"n", g.node_count()},
          {"m_in", g.edge_count()},
          {"m_out", r.edge_count},
          {"verified_bound", bound},
          {"audit_mode", r.audit_mode},
          {"audited_pairs", r.audited_pairs}};
}

}  // namespace spanlb
