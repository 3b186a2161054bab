// Copyright 2026 The SSG Solver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ssg/error.hpp"
#include "ssg/game.hpp"
#include "ssg/rational.hpp"

namespace ssg {

/// A rewritten game plus, for every node of the input, the node that now
/// stands for it.
struct Transformed {
  Ssg game;
  std::vector<NodeId> mapping;  // old id -> new id
};

/// MAX/MIN nodes from which MAX can force reaching a RAN node or a sink
/// without randomness, i.e. the deterministic max-attractor of V_ran and the
/// sinks.
inline std::vector<bool> reach_ran_or_sink(const Ssg& game) {
  const auto n = static_cast<NodeId>(game.size());
  std::vector<bool> in(game.size(), false);
  for (NodeId x = 0; x < n; ++x) in[x] = !game.is_controlled(x);
  for (bool changed = true; changed;) {
    changed = false;
    for (NodeId x = 0; x < n; ++x) {
      if (in[x]) continue;
      const auto& succ = game.succ(x);
      bool take = game.kind(x) == NodeKind::Max
                      ? std::any_of(succ.begin(), succ.end(), [&](NodeId y) { return in[y]; })
                      : std::all_of(succ.begin(), succ.end(), [&](NodeId y) { return in[y]; });
      if (take) in[x] = changed = true;
    }
  }
  return in;
}

/**
 * Rewrites a game into canonical form:
 *  - MAX/MIN nodes that cannot be forced towards a RAN node or a sink are
 *    removed; arcs into them go to a probability-1 RAN node in front of a
 *    fresh 0-sink,
 *  - with epsilon > 0 every original RAN node keeps (1 - epsilon) of its
 *    distribution and sends epsilon to that 0-sink,
 *  - each MAX/MIN -> sink arc goes through a probability-1 RAN node, one per
 *    sink.
 * Surviving nodes keep their relative order; new nodes are appended.
 */
inline Transformed to_canonical_form(const Ssg& game, const Rational& epsilon) {
  require_valid(game);
  if (sgn(epsilon) < 0 || epsilon >= 1) throw Error(ErrorKind::Precondition, "epsilon must lie in [0, 1)");
  const auto n = static_cast<NodeId>(game.size());
  const auto keep = reach_ran_or_sink(game);

  Transformed out;
  out.mapping.assign(game.size(), kNoNode);
  for (NodeId x = 0; x < n; ++x) {
    if (!keep[x]) continue;
    const Node& nd = game.node(x);
    NodeId id = nd.kind == NodeKind::Sink ? out.game.add_sink(nd.value, nd.name)
                                          : (nd.kind == NodeKind::Max   ? out.game.add_max(nd.name)
                                             : nd.kind == NodeKind::Min ? out.game.add_min(nd.name)
                                                                        : out.game.add_ran(nd.name));
    out.mapping[x] = id;
  }

  NodeId zero_sink = kNoNode;
  auto get_zero_sink = [&] {
    if (zero_sink == kNoNode) zero_sink = out.game.add_sink(Rational(0), "zero");
    return zero_sink;
  };
  NodeId trap = kNoNode;
  auto get_trap = [&] {
    if (trap == kNoNode) {
      NodeId z = get_zero_sink();
      trap = out.game.add_ran("trap");
      out.game.set_distribution(trap, {{z, Rational(1)}});
    }
    return trap;
  };
  auto target = [&](NodeId y) { return keep[y] ? out.mapping[y] : get_trap(); };

  std::map<NodeId, NodeId> sink_guard;  // new sink id -> its RAN front node
  for (NodeId x = 0; x < n; ++x) {
    if (!keep[x]) continue;
    const Node& nd = game.node(x);
    NodeId nx = out.mapping[x];
    if (nd.kind == NodeKind::Sink) continue;
    if (nd.kind == NodeKind::Ran) {
      std::vector<std::pair<NodeId, Rational>> dist;
      for (std::size_t a = 0; a < nd.succ.size(); ++a)
        dist.emplace_back(target(nd.succ[a]), nd.prob[a] * (1 - epsilon));
      if (sgn(epsilon) > 0) dist.emplace_back(get_zero_sink(), epsilon);
      // merge repeated targets so the distribution stays a plain list
      std::vector<std::pair<NodeId, Rational>> merged;
      for (auto& [y, q] : dist) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& e) { return e.first == y; });
        if (it == merged.end())
          merged.emplace_back(y, q);
        else
          it->second += q;
      }
      out.game.set_distribution(nx, merged);
      continue;
    }
    std::vector<NodeId> succ;
    for (NodeId y : nd.succ) {
      NodeId ny = target(y);
      if (game.kind(y) == NodeKind::Sink) {
        auto it = sink_guard.find(ny);
        if (it == sink_guard.end()) {
          NodeId d = out.game.add_ran("to_" + game.name(y));
          out.game.set_distribution(d, {{ny, Rational(1)}});
          it = sink_guard.emplace(ny, d).first;
        }
        ny = it->second;
      }
      succ.push_back(ny);
    }
    out.game.set_successors(nx, std::move(succ));
  }
  for (NodeId x = 0; x < n; ++x)
    if (!keep[x]) out.mapping[x] = get_trap();
  return out;
}

/// Replaces every MAX node of outdegree d > 2 by a balanced binary tree of
/// d - 1 MAX nodes (left half floor(d/2), right half ceil(d/2)); outdegree-1
/// MAX nodes get their successor twice. Original ids are unchanged.
inline Transformed to_max_binary(const Ssg& game) {
  require_valid(game);
  Transformed out;
  out.game = game;
  out.mapping.resize(game.size());
  for (NodeId x = 0; x < static_cast<NodeId>(game.size()); ++x) out.mapping[x] = x;

  auto build = [&](auto&& self, const std::string& base, std::vector<NodeId> succ, NodeId at) -> void {
    const std::size_t d = succ.size();
    std::vector<NodeId> left(succ.begin(), succ.begin() + d / 2);
    std::vector<NodeId> right(succ.begin() + d / 2, succ.end());
    auto child = [&](std::vector<NodeId>& part, const char* tag) -> NodeId {
      if (part.size() == 1) return part.front();
      NodeId c = out.game.add_max(base + tag);
      self(self, base + tag, part, c);
      return c;
    };
    NodeId l = child(left, "l");
    NodeId r = child(right, "r");
    out.game.set_successors(at, {l, r});
  };

  for (NodeId x : game.max_nodes()) {
    const auto& succ = game.succ(x);
    if (succ.size() == 1)
      out.game.set_successors(x, {succ.front(), succ.front()});
    else if (succ.size() > 2)
      build(build, game.name(x) + "_", succ, x);
  }
  return out;
}

/// Follows a strategy of to_max_binary(game) from each original MAX node
/// down to the original successor it selects.
inline StrategyMax project_binary_strategy(const Ssg& original, const StrategyMax& sigma) {
  StrategyMax out(original.size());
  for (NodeId x : original.max_nodes()) {
    NodeId y = sigma[x];
    while (y >= static_cast<NodeId>(original.size())) y = sigma[y];
    out.set(x, y);
  }
  return out;
}

/// The strategy of to_max_binary(game) that realises sigma.
inline StrategyMax lift_binary_strategy(const Ssg& original, const Transformed& binary, const StrategyMax& sigma) {
  const Ssg& g = binary.game;
  StrategyMax out = first_successor_strategy<Player::Max>(g);
  const auto n0 = static_cast<NodeId>(original.size());
  // leaves reachable below each tree node
  auto covers = [&](auto&& self, NodeId node, NodeId leaf) -> bool {
    if (node < n0) return node == leaf;
    for (NodeId c : g.succ(node))
      if (self(self, c, leaf)) return true;
    return false;
  };
  for (NodeId x : original.max_nodes()) {
    NodeId target = sigma[x];
    NodeId at = x;
    for (;;) {
      NodeId next = kNoNode;
      for (NodeId c : g.succ(at)) {
        if (c == target || (c >= n0 && covers(covers, c, target))) {
          next = c;
          break;
        }
      }
      if (next == kNoNode) throw Error(ErrorKind::Precondition, "strategy picks a non-successor");
      out.set(at, next);
      if (next < n0) break;
      at = next;
    }
  }
  return out;
}

}  // namespace ssg
