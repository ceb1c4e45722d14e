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
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spanlb/errors.hpp"
#include "spanlb/graph.hpp"
#include "spanlb/obstacle_product.hpp"
#include "spanlb/pairs.hpp"
#include "spanlb/parallel.hpp"
#include "spanlb/rng.hpp"

namespace spanlb {

/// Candidate subgraph H of a host, as kept-edge flags over host edge ids.
struct SubgraphMask {
  EdgeMask kept;
  std::string note;

  static SubgraphMask full(const Graph& g, std::string note = "full host") {
    return {EdgeMask(g.edge_count(), true), std::move(note)};
  }
};

/// Additive stretch value; kUnreachable stands for infinite stretch.
inline Dist additive_stretch(Dist base, Dist sub) {
  if (sub == kUnreachable) return base == kUnreachable ? 0 : kUnreachable;
  return sub - base;
}

inline std::string dist_text(Dist d) {
  return d == kUnreachable ? "inf" : std::to_string(d);
}

struct StretchRow {
  std::size_t pair = 0;
  Dist base = 0;
  Dist sub = 0;
  Dist stretch = 0;
};

struct StretchReport {
  std::vector<StretchRow> rows;
  Dist max_stretch = 0;
  std::optional<std::size_t> witness;  // first pair attaining max_stretch
  std::size_t kept_edges = 0;
  std::size_t kept_clique_edges = 0;

  std::string csv() const {
    std::ostringstream out;
    out << "pair_index,base_dist,sub_dist,stretch\n";
    for (const auto& r : rows)
      out << r.pair << ',' << dist_text(r.base) << ',' << dist_text(r.sub)
          << ',' << dist_text(r.stretch) << '\n';
    return out.str();
  }
};

/// Exact host and subgraph distances for the given pair indices.
inline StretchReport stretch_audit(const Graph& g, const EdgeMask& kept,
                                   std::span<const NodePair> pairs,
                                   std::span<const std::size_t> indices,
                                   unsigned threads = 0) {
  if (kept.size() != g.edge_count())
    throw InputError("stretch_audit: mask does not match host");
  StretchReport rep;
  rep.rows.resize(indices.size());
  parallel_chunks(indices.size(), threads, [&](std::size_t b, std::size_t e) {
    BfsWorkspace ws;
    for (std::size_t r = b; r < e; ++r) {
      const auto& p = pairs[indices[r]];
      StretchRow row;
      row.pair = indices[r];
      row.base = ws.distance(g, p.s, p.t);
      row.sub = ws.distance(g, p.s, p.t, &kept);
      row.stretch = additive_stretch(row.base, row.sub);
      rep.rows[r] = row;
    }
  });
  for (const auto& row : rep.rows)
    if (!rep.witness || row.stretch > rep.max_stretch) {
      rep.max_stretch = row.stretch;
      rep.witness = row.pair;
    }
  rep.kept_edges = kept.kept_count();
  return rep;
}

/// Which designated pairs of an obstacle product to audit.
struct AuditScope {
  std::optional<std::size_t> sample;  // empty: every pair
  std::uint64_t seed = 0;

  static AuditScope all_pairs() { return {}; }
  static AuditScope sampled(std::size_t count, std::uint64_t seed) {
    return {count, seed};
  }
};

inline std::size_t kept_clique_edges(const ObstacleGraph& og,
                                     const EdgeMask& kept) {
  std::size_t c = 0;
  for (EdgeId e = 0; e < og.graph.edge_count(); ++e)
    if (kept.kept(e) && og.is_clique_edge(e)) ++c;
  return c;
}

inline StretchReport stretch_audit(const ObstacleGraph& og,
                                   const SubgraphMask& h,
                                   const AuditScope& scope = {},
                                   unsigned threads = 0) {
  std::vector<std::size_t> idx(og.pairs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  if (scope.sample && *scope.sample < idx.size()) {
    Rng rng(scope.seed);
    rng.shuffle(idx);
    idx.resize(*scope.sample);
    std::sort(idx.begin(), idx.end());
  }
  auto rep = stretch_audit(og.graph, h.kept, og.pairs.pairs, idx, threads);
  rep.kept_clique_edges = kept_clique_edges(og, h.kept);
  return rep;
}

/// Worst additive and multiplicative stretch of a subgraph over node pairs.
struct PairStretchSummary {
  Dist max_additive = 0;
  double max_multiplicative = 1.0;
  std::size_t pairs_checked = 0;
  std::optional<NodePair> worst;  // first pair attaining max_additive

  bool disconnects() const { return max_additive == kUnreachable; }
};

namespace detail {

inline void merge_stretch(PairStretchSummary& into,
                          const PairStretchSummary& part) {
  into.pairs_checked += part.pairs_checked;
  // Ties go to the lexicographically smaller pair so merge order is invisible.
  const auto key = [](const NodePair& p) { return std::pair{p.s, p.t}; };
  if (part.worst &&
      (!into.worst || part.max_additive > into.max_additive ||
       (part.max_additive == into.max_additive &&
        key(*part.worst) < key(*into.worst)))) {
    into.max_additive = part.max_additive;
    into.worst = part.worst;
  }
  into.max_multiplicative =
      std::max(into.max_multiplicative, part.max_multiplicative);
}

inline void record_stretch(PairStretchSummary& s, NodeId u, NodeId v,
                           Dist base, Dist sub) {
  if (base == kUnreachable || base == 0) return;
  ++s.pairs_checked;
  const Dist add = additive_stretch(base, sub);
  if (!s.worst || add > s.max_additive) {
    s.max_additive = add;
    s.worst = NodePair{u, v};
  }
  const double mult = sub == kUnreachable
                          ? std::numeric_limits<double>::infinity()
                          : static_cast<double>(sub) / base;
  s.max_multiplicative = std::max(s.max_multiplicative, mult);
}

}  // namespace detail

/// Exact stretch over every connected pair u < v; one BFS pair per source.
inline PairStretchSummary all_pairs_stretch(const Graph& g,
                                            const EdgeMask& kept,
                                            unsigned threads = 0) {
  const std::size_t n = g.node_count();
  PairStretchSummary out;
  std::mutex out_mutex;
  parallel_chunks(n, threads, [&](std::size_t b, std::size_t e) {
    BfsWorkspace base_ws, sub_ws;
    PairStretchSummary local;
    for (NodeId u = static_cast<NodeId>(b); u < e; ++u) {
      const auto db = base_ws.distances(g, u);
      const auto ds = sub_ws.distances(g, u, &kept);
      for (NodeId v = u + 1; v < n; ++v)
        detail::record_stretch(local, u, v, db[v], ds[v]);
    }
    std::lock_guard lock(out_mutex);
    detail::merge_stretch(out, local);
  });
  return out;
}

/// Stretch over `count` seeded random pairs plus any explicitly listed pairs.
inline PairStretchSummary sampled_pairs_stretch(
    const Graph& g, const EdgeMask& kept, std::size_t count,
    std::uint64_t seed, std::span<const NodePair> extra = {}) {
  std::vector<NodePair> pairs(extra.begin(), extra.end());
  Rng rng(seed);
  const std::size_t n = g.node_count();
  if (n >= 2)
    for (std::size_t i = 0; i < count; ++i) {
      const auto u = static_cast<NodeId>(rng.below(n));
      auto v = static_cast<NodeId>(rng.below(n - 1));
      if (v >= u) ++v;
      pairs.push_back({u, v});
    }
  PairStretchSummary out;
  BfsWorkspace ws;
  for (const auto& p : pairs)
    detail::record_stretch(out, p.s, p.t, ws.distance(g, p.s, p.t),
                           ws.distance(g, p.s, p.t, &kept));
  return out;
}

struct AdversaryWitness {
  std::size_t pair = 0;
  Dist base = 0;
  Dist sub = 0;
  Dist stretch = 0;
};

/// Lowest-index pair whose whole certificate is missing from h, re-checked
/// by BFS to have stretch >= k. A pair that fails the re-check means the
/// build is broken and raises IntegrityError.
inline std::optional<AdversaryWitness> counting_adversary(
    const ObstacleGraph& og, const SubgraphMask& h) {
  for (std::size_t i = 0; i < og.pairs.size(); ++i) {
    const auto ids = og.certificate_ids(i);
    const bool empty = std::none_of(ids.begin(), ids.end(),
                                    [&](EdgeId e) { return h.kept.kept(e); });
    if (!empty) continue;
    const auto& p = og.pairs.pairs[i];
    BfsWorkspace ws;
    AdversaryWitness w{i, ws.distance(og.graph, p.s, p.t), 0, 0};
    w.sub = ws.distance(og.graph, p.s, p.t, &h.kept);
    w.stretch = additive_stretch(w.base, w.sub);
    if (w.stretch < og.separation())
      throw IntegrityError("counting_adversary: pair " + std::to_string(i) +
                           " lost its certificate but has stretch " +
                           dist_text(w.stretch) + " < k = " +
                           std::to_string(og.separation()));
    return w;
  }
  return std::nullopt;
}

/// Edge ids of every certificate, pair by pair.
inline std::vector<EdgeId> certificate_union(const ObstacleGraph& og) {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < og.pairs.size(); ++i) {
    const auto ids = og.certificate_ids(i);
    out.insert(out.end(), ids.begin(), ids.end());
  }
  return out;
}

/// Keeps every non-certificate edge and `budget` uniformly chosen
/// certificate edges.
inline SubgraphMask random_certificate_mask(const ObstacleGraph& og,
                                            std::size_t budget, Rng& rng) {
  auto cert = certificate_union(og);
  if (budget > cert.size())
    throw InputError("random_certificate_mask: budget exceeds certificate "
                     "edge total " + std::to_string(cert.size()));
  rng.shuffle(cert);
  SubgraphMask h = SubgraphMask::full(og.graph, "random certificate mask");
  for (std::size_t i = budget; i < cert.size(); ++i) h.kept.drop(cert[i]);
  return h;
}

/// Family member G_T: the host minus the certificates of the pairs in T.
struct FamilyMember {
  std::vector<std::size_t> members;  // sorted T
  EdgeMask kept;
  Graph graph;
};

inline EdgeMask family_mask(const ObstacleGraph& og,
                            std::span<const std::size_t> members) {
  EdgeMask kept(og.graph.edge_count(), true);
  for (std::size_t p : members) {
    if (p >= og.pairs.size())
      throw InputError("family: pair index " + std::to_string(p) +
                       " out of range");
    for (EdgeId e : og.certificate_ids(p)) kept.drop(e);
  }
  return kept;
}

inline EdgeMask family_mask(const ObstacleGraph& og, std::uint64_t bits) {
  std::vector<std::size_t> members;
  for (std::size_t p = 0; p < og.pairs.size() && p < 64; ++p)
    if (bits >> p & 1) members.push_back(p);
  return family_mask(og, members);
}

inline FamilyMember build_family_member(const ObstacleGraph& og,
                                        std::vector<std::size_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  FamilyMember fm;
  fm.kept = family_mask(og, members);
  std::vector<Edge> removed;
  for (std::size_t p : members)
    removed.insert(removed.end(), og.certificates[p].begin(),
                   og.certificates[p].end());
  fm.graph = delete_edges(og.graph, removed);
  fm.members = std::move(members);
  return fm;
}

struct FamilyReport {
  std::uint64_t members = 0;
  /// Pairs outside T whose distance is not exactly D.
  std::uint64_t outside_violations = 0;
  /// Pairs inside T closer than `inside_threshold`.
  std::uint64_t inside_violations = 0;
  Dist inside_threshold = 0;
  Dist min_inside_distance = kUnreachable;
  double seconds = 0;

  bool clean() const { return outside_violations == 0 && inside_violations == 0; }
};

/// Enumerates all 2^|P| family members and BFS-checks every pair in each:
/// p outside T must sit at exactly D, p inside T at >= inside_threshold.
inline FamilyReport verify_family(const ObstacleGraph& og,
                                  Dist inside_threshold, unsigned threads = 0) {
  const std::size_t m = og.pairs.size();
  if (m > 24)
    throw BudgetExceeded("verify_family: 2^" + std::to_string(m) +
                         " members is too many to enumerate");
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t total = std::uint64_t{1} << m;
  const Dist D = og.op_distance();
  std::vector<std::vector<EdgeId>> cert(m);
  for (std::size_t p = 0; p < m; ++p) cert[p] = og.certificate_ids(p);

  std::atomic<std::uint64_t> outside{0}, inside{0};
  std::atomic<Dist> min_inside{kUnreachable};
  parallel_chunks(total, threads, [&](std::size_t b, std::size_t e) {
    BfsWorkspace ws;
    EdgeMask kept(og.graph.edge_count(), true);
    std::uint64_t out_local = 0, in_local = 0;
    Dist min_local = kUnreachable;
    for (std::uint64_t t = b; t < e; ++t) {
      for (std::size_t p = 0; p < m; ++p)
        for (EdgeId c : cert[p]) kept.set(c, !(t >> p & 1));
      for (std::size_t p = 0; p < m; ++p) {
        const auto& pr = og.pairs.pairs[p];
        const Dist d = ws.distance(og.graph, pr.s, pr.t, &kept);
        if (t >> p & 1) {
          min_local = std::min(min_local, d);
          if (d < inside_threshold) ++in_local;
        } else if (d != D) {
          ++out_local;
        }
      }
    }
    outside += out_local;
    inside += in_local;
    Dist cur = min_inside.load();
    while (min_local < cur && !min_inside.compare_exchange_weak(cur, min_local)) {
    }
  });
  FamilyReport rep;
  rep.members = total;
  rep.outside_violations = outside;
  rep.inside_violations = inside;
  rep.inside_threshold = inside_threshold;
  rep.min_inside_distance = min_inside;
  rep.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rep;
}

using Bits = std::vector<bool>;

/// Deterministic map from a family member (host plus kept-edge flags) to a
/// bitstring. Must be safe to call concurrently.
using Compressor = std::function<Bits(const Graph&, const EdgeMask&)>;

/// Bit i says whether pair i's certificate is fully missing, for the first
/// `bits` pairs.
inline Compressor prefix_compressor(const ObstacleGraph& og, std::size_t bits) {
  std::vector<std::vector<EdgeId>> cert;
  for (std::size_t p = 0; p < std::min(bits, og.pairs.size()); ++p)
    cert.push_back(og.certificate_ids(p));
  return [cert = std::move(cert)](const Graph&, const EdgeMask& kept) {
    Bits out;
    for (const auto& c : cert)
      out.push_back(std::none_of(c.begin(), c.end(),
                                 [&](EdgeId e) { return kept.kept(e); }));
    return out;
  };
}

/// Certificate bitmap over every pair; injective on the family.
inline Compressor identity_compressor(const ObstacleGraph& og) {
  return prefix_compressor(og, og.pairs.size());
}

/// Seeded XOR hash of the missing-edge set, truncated to `bits` bits. Each
/// edge id is mixed with the seed through the splitmix64 finalizer.
inline Compressor hash_compressor(std::uint64_t seed, std::size_t bits) {
  if (bits > 64) throw InputError("hash_compressor: at most 64 bits");
  return [seed, bits](const Graph& g, const EdgeMask& kept) {
    std::uint64_t acc = 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (kept.kept(e)) continue;
      std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (std::uint64_t{e} + 1);
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      acc ^= z ^ (z >> 31);
    }
    Bits out(bits);
    for (std::size_t i = 0; i < bits; ++i) out[i] = acc >> (63 - i) & 1;
    return out;
  };
}

struct CollisionWitness {
  std::vector<std::size_t> first;   // T1
  std::vector<std::size_t> second;  // T2
  Bits code;
  std::size_t pair = 0;
  Dist first_distance = 0;
  Dist second_distance = 0;
  Dist gap = 0;  // kUnreachable when one side disconnects the pair
};

struct PigeonholeOptions {
  /// Required distance gap; defaults to k + 1 when empty.
  std::optional<Dist> min_gap;
  /// Members drawn when 2^|P| is too large to enumerate.
  std::uint64_t samples = 1 << 16;
  std::uint64_t seed = 0;
  /// Cap on BFS runs spent testing candidate collisions.
  std::uint64_t bfs_budget = 1 << 20;
  std::size_t enumerate_limit = 20;
  unsigned threads = 0;
};

namespace detail {

inline std::vector<std::size_t> members_of(std::uint64_t bits, std::size_t m) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < m; ++p)
    if (bits >> p & 1) out.push_back(p);
  return out;
}

}  // namespace detail

/// Maps family members through `compressor`, groups equal outputs, and
/// returns the first colliding (T1, T2, p in T1 xor T2) whose BFS distances
/// differ by at least the required gap. Raises InconclusiveError when no
/// collision exists or none meets the gap within the BFS budget.
inline CollisionWitness pigeonhole_demo(const ObstacleGraph& og,
                                        std::size_t bit_budget,
                                        const Compressor& compressor,
                                        const PigeonholeOptions& opt = {}) {
  const std::size_t m = og.pairs.size();
  if (m > 63) throw InputError("pigeonhole_demo: at most 63 pairs");
  const Dist min_gap = opt.min_gap.value_or(og.separation() + 1);

  std::vector<std::uint64_t> family;
  if (m <= opt.enumerate_limit) {
    family.resize(std::size_t{1} << m);
    for (std::uint64_t t = 0; t < family.size(); ++t) family[t] = t;
  } else {
    Rng rng(opt.seed);
    for (std::uint64_t i = 0; i < opt.samples; ++i) {
      std::uint64_t t = 0;
      for (std::size_t p = 0; p < m; ++p) t |= (rng.next() & 1) << p;
      family.push_back(t);
    }
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
  }

  std::vector<Bits> codes(family.size());
  parallel_chunks(family.size(), opt.threads,
                  [&](std::size_t b, std::size_t e) {
                    for (std::size_t i = b; i < e; ++i) {
                      codes[i] = compressor(og.graph, family_mask(og, family[i]));
                      if (codes[i].size() > bit_budget)
                        throw InputError("pigeonhole_demo: compressor emitted " +
                                         std::to_string(codes[i].size()) +
                                         " bits, budget is " +
                                         std::to_string(bit_budget));
                    }
                  });

  std::map<Bits, std::vector<std::uint64_t>> buckets;
  for (std::size_t i = 0; i < family.size(); ++i)
    buckets[codes[i]].push_back(family[i]);

  bool any_collision = false;
  std::uint64_t bfs_runs = 0;
  BfsWorkspace ws;
  for (const auto& [code, group] : buckets) {
    if (group.size() < 2) continue;
    any_collision = true;
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        const std::uint64_t diff = group[i] ^ group[j];
        const EdgeMask k1 = family_mask(og, group[i]);
        const EdgeMask k2 = family_mask(og, group[j]);
        for (std::size_t p = 0; p < m; ++p) {
          if (!(diff >> p & 1)) continue;
          if (bfs_runs + 2 > opt.bfs_budget)
            throw InconclusiveError(
                "pigeonhole_demo: BFS budget spent before a collision with "
                "gap >= " + std::to_string(min_gap) + " was found");
          bfs_runs += 2;
          const auto& pr = og.pairs.pairs[p];
          const Dist d1 = ws.distance(og.graph, pr.s, pr.t, &k1);
          const Dist d2 = ws.distance(og.graph, pr.s, pr.t, &k2);
          const Dist lo = std::min(d1, d2), hi = std::max(d1, d2);
          const Dist gap = hi == kUnreachable ? kUnreachable : hi - lo;
          if (gap < min_gap) continue;
          return {detail::members_of(group[i], m), detail::members_of(group[j], m),
                  code, p, d1, d2, gap};
        }
      }
  }
  if (!any_collision)
    throw InconclusiveError("pigeonhole_demo: compressor is injective on the " +
                            std::to_string(family.size()) + " members searched");
  throw InconclusiveError("pigeonhole_demo: collisions exist but none has a "
                          "distance gap >= " + std::to_string(min_gap));
}

}  // namespace spanlb
