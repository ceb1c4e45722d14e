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

// Brute-force reference implementations. They share no code with the
// library beyond plain value types, so agreement is independent evidence.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Adj = std::vector<std::vector<std::uint32_t>>;
inline constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

inline Adj adjacency(std::size_t n,
                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  Adj adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

/// Floyd-Warshall; for graphs of a few hundred nodes.
inline std::vector<std::vector<std::uint32_t>> all_pairs(const Adj& adj) {
  const std::size_t n = adj.size();
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, kInf));
  for (std::size_t v = 0; v < n; ++v) {
    d[v][v] = 0;
    for (auto w : adj[v]) d[v][w] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == kInf) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (d[k][j] != kInf && d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    }
  return d;
}

/// Textbook queue BFS.
inline std::vector<std::uint32_t> bfs(const Adj& adj, std::uint32_t s) {
  std::vector<std::uint32_t> d(adj.size(), kInf);
  std::deque<std::uint32_t> q{s};
  d[s] = 0;
  while (!q.empty()) {
    auto u = q.front();
    q.pop_front();
    for (auto w : adj[u])
      if (d[w] == kInf) {
        d[w] = d[u] + 1;
        q.push_back(w);
      }
  }
  return d;
}

/// Exact number of shortest s-t paths by DFS over every walk of length
/// dist(s, t) that only steps to nodes one unit farther from s.
inline std::uint64_t count_shortest(const Adj& adj, std::uint32_t s, std::uint32_t t) {
  const auto ds = bfs(adj, s);
  if (ds[t] == kInf) return 0;
  std::uint64_t count = 0;
  std::vector<std::uint32_t> stack{s};
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    if (u == t) {
      ++count;
      continue;
    }
    if (ds[u] >= ds[t]) continue;
    for (auto w : adj[u])
      if (ds[w] == ds[u] + 1) stack.push_back(w);
  }
  return count;
}

/// Every shortest s-t path, listed explicitly (small graphs only).
inline std::vector<std::vector<std::uint32_t>> all_shortest_paths(
    const Adj& adj, std::uint32_t s, std::uint32_t t) {
  const auto ds = bfs(adj, s);
  std::vector<std::vector<std::uint32_t>> out;
  if (ds[t] == kInf) return out;
  std::vector<std::vector<std::uint32_t>> stack{{s}};
  while (!stack.empty()) {
    auto path = std::move(stack.back());
    stack.pop_back();
    const auto u = path.back();
    if (u == t) {
      out.push_back(path);
      continue;
    }
    for (auto w : adj[u])
      if (ds[w] == ds[u] + 1 && ds[w] <= ds[t]) {
        auto next = path;
        next.push_back(w);
        stack.push_back(std::move(next));
      }
  }
  return out;
}

/// Largest squared-norm class of [p]^d (smallest norm on ties), by
/// odometer enumeration.
inline std::pair<std::uint64_t, std::vector<std::vector<std::uint32_t>>> shell(
    std::uint64_t p, std::uint32_t d) {
  std::map<std::uint64_t, std::vector<std::vector<std::uint32_t>>> by_norm;
  std::vector<std::uint32_t> v(d, 1);
  for (;;) {
    std::uint64_t r = 0;
    for (auto x : v) r += std::uint64_t{x} * x;
    by_norm[r].push_back(v);
    std::size_t i = 0;
    while (i < d && v[i] == p) v[i++] = 1;
    if (i == d) break;
    ++v[i];
  }
  std::uint64_t best_r = 0;
  std::size_t best = 0;
  for (const auto& [r, vs] : by_norm)
    if (vs.size() > best) {
      best = vs.size();
      best_r = r;
    }
  return {best_r, by_norm[best_r]};
}

/// sum_j v_j q^(j-1).
inline std::uint64_t encode(const std::vector<std::uint32_t>& v, std::uint64_t q) {
  std::uint64_t out = 0, scale = 1;
  for (auto x : v) {
    out += x * scale;
    scale *= q;
  }
  return out;
}

/// True iff some ordered k-tuple over A, not constant, sums to k a for an
/// a in A. Enumerates all |A|^k ordered tuples.
inline bool has_average_violation(const std::vector<std::uint64_t>& a, std::uint32_t k) {
  const std::set<std::uint64_t> members(a.begin(), a.end());
  std::vector<std::size_t> idx(k, 0);
  for (;;) {
    std::uint64_t sum = 0;
    bool constant = true;
    for (auto i : idx) {
      sum += a[i];
      constant = constant && a[i] == a[idx[0]];
    }
    if (!constant && sum % k == 0 && members.count(sum / k)) return true;
    std::size_t j = 0;
    while (j < k && idx[j] + 1 == a.size()) idx[j++] = 0;
    if (j == k) return false;
    ++idx[j];
  }
}

/// Shortest cycle length by deleting each edge and measuring the detour.
inline std::uint64_t girth(const Adj& adj) {
  std::uint64_t best = kInf;
  for (std::uint32_t u = 0; u < adj.size(); ++u)
    for (auto v : adj[u]) {
      if (v < u) continue;
      Adj cut = adj;
      cut[u].erase(std::find(cut[u].begin(), cut[u].end(), v));
      cut[v].erase(std::find(cut[v].begin(), cut[v].end(), u));
      const auto d = bfs(cut, u)[v];
      if (d != kInf) best = std::min<std::uint64_t>(best, d + 1);
    }
  return best;
}

}  // namespace oracle
