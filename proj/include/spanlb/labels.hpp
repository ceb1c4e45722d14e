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
#include <charconv>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spanlb/errors.hpp"
#include "spanlb/graph.hpp"

namespace spanlb {

// Structured node roles. Text grammar (labels.json):
//   B:<x>:<j>        layered base node, integer x >= 1, layer j
//   P:<u1>:<u2>:<i>  compressed product node over base ids u1, u2; i in {1,2}
//   E:<e>:<i>        interior node i of the path replacing host edge id e
//   K:<v>:<e>        clique node of host node v for incident host edge id e

struct BaseLabel {
  std::uint64_t x = 0;
  std::uint32_t layer = 0;
  friend auto operator<=>(const BaseLabel&, const BaseLabel&) = default;
};

struct ProductLabel {
  NodeId first = 0;
  NodeId second = 0;
  std::uint8_t slot = 1;
  friend auto operator<=>(const ProductLabel&, const ProductLabel&) = default;
};

struct PathLabel {
  EdgeId host_edge = 0;
  std::uint32_t index = 0;
  friend auto operator<=>(const PathLabel&, const PathLabel&) = default;
};

struct CliqueLabel {
  NodeId host_node = 0;
  EdgeId host_edge = 0;
  friend auto operator<=>(const CliqueLabel&, const CliqueLabel&) = default;
};

using NodeLabel = std::variant<BaseLabel, ProductLabel, PathLabel, CliqueLabel>;

inline std::string to_string(const NodeLabel& label) {
  struct Visitor {
    std::string operator()(const BaseLabel& l) const {
      return "B:" + std::to_string(l.x) + ":" + std::to_string(l.layer);
    }
    std::string operator()(const ProductLabel& l) const {
      return "P:" + std::to_string(l.first) + ":" + std::to_string(l.second) +
             ":" + std::to_string(unsigned{l.slot});
    }
    std::string operator()(const PathLabel& l) const {
      return "E:" + std::to_string(l.host_edge) + ":" + std::to_string(l.index);
    }
    std::string operator()(const CliqueLabel& l) const {
      return "K:" + std::to_string(l.host_node) + ":" +
             std::to_string(l.host_edge);
    }
  };
  return std::visit(Visitor{}, label);
}

namespace detail {

inline std::vector<std::uint64_t> split_fields(std::string_view text,
                                               std::size_t expected) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 2;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(':', pos), text.size());
    std::uint64_t value = 0;
    const auto* first = text.data() + pos;
    const auto* last = text.data() + end;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last)
      throw InputError("bad node label '" + std::string(text) + "'");
    out.push_back(value);
    pos = end + 1;
  }
  if (out.size() != expected)
    throw InputError("bad node label '" + std::string(text) + "'");
  return out;
}

}  // namespace detail

inline NodeLabel parse_label(std::string_view text) {
  if (text.size() < 3 || text[1] != ':')
    throw InputError("bad node label '" + std::string(text) + "'");
  switch (text[0]) {
    case 'B': {
      auto f = detail::split_fields(text, 2);
      return BaseLabel{f[0], static_cast<std::uint32_t>(f[1])};
    }
    case 'P': {
      auto f = detail::split_fields(text, 3);
      if (f[2] != 1 && f[2] != 2)
        throw InputError("product label slot must be 1 or 2");
      return ProductLabel{static_cast<NodeId>(f[0]), static_cast<NodeId>(f[1]),
                          static_cast<std::uint8_t>(f[2])};
    }
    case 'E': {
      auto f = detail::split_fields(text, 2);
      return PathLabel{static_cast<EdgeId>(f[0]),
                       static_cast<std::uint32_t>(f[1])};
    }
    case 'K': {
      auto f = detail::split_fields(text, 2);
      return CliqueLabel{static_cast<NodeId>(f[0]), static_cast<EdgeId>(f[1])};
    }
    default:
      throw InputError("unknown node role in label '" + std::string(text) + "'");
  }
}

/// Bijection between dense node ids and structured labels.
class NodeLabelTable {
 public:
  NodeLabelTable() = default;

  /// Throws InputError if two ids carry the same label.
  explicit NodeLabelTable(std::vector<NodeLabel> labels)
      : labels_(std::move(labels)), by_label_(labels_.size()) {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      by_label_[i] = static_cast<NodeId>(i);
    std::sort(by_label_.begin(), by_label_.end(),
              [&](NodeId a, NodeId b) { return labels_[a] < labels_[b]; });
    for (std::size_t i = 1; i < by_label_.size(); ++i)
      if (labels_[by_label_[i - 1]] == labels_[by_label_[i]])
        throw InputError("NodeLabelTable: duplicate label " +
                         to_string(labels_[by_label_[i]]));
  }

  std::size_t size() const { return labels_.size(); }
  const NodeLabel& operator[](NodeId id) const { return labels_[id]; }
  const std::vector<NodeLabel>& labels() const { return labels_; }

  std::optional<NodeId> find(const NodeLabel& label) const {
    auto it = std::lower_bound(
        by_label_.begin(), by_label_.end(), label,
        [&](NodeId id, const NodeLabel& l) { return labels_[id] < l; });
    if (it == by_label_.end() || labels_[*it] != label) return std::nullopt;
    return *it;
  }

  NodeId at(const NodeLabel& label) const {
    auto id = find(label);
    if (!id) throw InputError("no node labelled " + to_string(label));
    return *id;
  }

  template <typename Role>
  const Role& as(NodeId id) const {
    const auto* r = std::get_if<Role>(&labels_[id]);
    if (r == nullptr)
      throw InputError("node " + std::to_string(id) + " has role " +
                       to_string(labels_[id]));
    return *r;
  }

 private:
  std::vector<NodeLabel> labels_;
  std::vector<NodeId> by_label_;
};

}  // namespace spanlb
