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
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssg/error.hpp"
#include "ssg/rational.hpp"

namespace ssg {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

enum class NodeKind { Max, Min, Ran, Sink };

inline const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Max: return "max";
    case NodeKind::Min: return "min";
    case NodeKind::Ran: return "ran";
    case NodeKind::Sink: return "sink";
  }
  return "?";
}

struct Node {
  NodeKind kind = NodeKind::Sink;
  std::string name;
  std::vector<NodeId> succ;
  std::vector<Rational> prob;  // parallel to succ, RAN nodes only
  Rational value;              // sinks only

  bool operator==(const Node&) const = default;
};

/**
 * A simple stochastic game. Nodes are index-dense; MAX/MIN nodes carry an
 * ordered successor list, RAN nodes an ordered list of (successor, probability)
 * and sinks a value plus a self-loop.
 *
 * The builder methods do not check anything; run validate() on the result.
 */
class Ssg {
 public:
  NodeId add_max(std::string name = {}) { return add(NodeKind::Max, std::move(name)); }
  NodeId add_min(std::string name = {}) { return add(NodeKind::Min, std::move(name)); }
  NodeId add_ran(std::string name = {}) { return add(NodeKind::Ran, std::move(name)); }
  NodeId add_sink(Rational value, std::string name = {}) {
    NodeId id = add(NodeKind::Sink, std::move(name));
    nodes_[id].value = std::move(value);
    nodes_[id].succ = {id};
    return id;
  }

  void set_successors(NodeId x, std::vector<NodeId> succ) { nodes_.at(x).succ = std::move(succ); }

  void set_distribution(NodeId x, const std::vector<std::pair<NodeId, Rational>>& dist) {
    Node& n = nodes_.at(x);
    n.succ.clear();
    n.prob.clear();
    for (const auto& [y, q] : dist) {
      n.succ.push_back(y);
      n.prob.push_back(q);
    }
  }

  // Raw access, used by transforms and by tests that build broken games.
  Node& mutable_node(NodeId x) { return nodes_.at(x); }

  std::size_t size() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId x) const { return nodes_[x]; }
  NodeKind kind(NodeId x) const { return nodes_[x].kind; }
  const std::vector<NodeId>& succ(NodeId x) const { return nodes_[x].succ; }
  const std::vector<Rational>& prob(NodeId x) const { return nodes_[x].prob; }
  const Rational& value(NodeId x) const { return nodes_[x].value; }
  const std::string& name(NodeId x) const { return nodes_[x].name; }

  bool is_controlled(NodeId x) const {
    return nodes_[x].kind == NodeKind::Max || nodes_[x].kind == NodeKind::Min;
  }

  std::vector<NodeId> nodes_of(NodeKind kind) const {
    std::vector<NodeId> out;
    for (NodeId x = 0; x < static_cast<NodeId>(nodes_.size()); ++x)
      if (nodes_[x].kind == kind) out.push_back(x);
    return out;
  }
  std::vector<NodeId> max_nodes() const { return nodes_of(NodeKind::Max); }
  std::vector<NodeId> min_nodes() const { return nodes_of(NodeKind::Min); }
  // r_1..r_k in id order; control index i refers to ran_nodes()[i-1].
  std::vector<NodeId> ran_nodes() const { return nodes_of(NodeKind::Ran); }
  std::vector<NodeId> sinks() const { return nodes_of(NodeKind::Sink); }

  std::optional<NodeId> find(const std::string& name) const {
    for (NodeId x = 0; x < static_cast<NodeId>(nodes_.size()); ++x)
      if (nodes_[x].name == name) return x;
    return std::nullopt;
  }

  NodeId id(const std::string& name) const {
    auto x = find(name);
    if (!x) throw Error(ErrorKind::Precondition, "no node named '" + name + "'");
    return *x;
  }

  bool operator==(const Ssg&) const = default;

 private:
  NodeId add(NodeKind kind, std::string name) {
    NodeId id = static_cast<NodeId>(nodes_.size());
    if (name.empty()) name = "v" + std::to_string(id);
    nodes_.push_back(Node{kind, std::move(name), {}, {}, Rational(0)});
    return id;
  }

  std::vector<Node> nodes_;
};

enum class Player { Max, Min };

inline constexpr NodeKind owned_kind(Player p) { return p == Player::Max ? NodeKind::Max : NodeKind::Min; }

/// Stationary pure strategy: one successor per node owned by player P.
template <Player P>
class Strategy {
 public:
  Strategy() = default;
  explicit Strategy(std::size_t n) : choice_(n, kNoNode) {}

  NodeId operator[](NodeId x) const { return choice_[x]; }
  void set(NodeId x, NodeId y) { choice_[x] = y; }
  std::size_t size() const { return choice_.size(); }
  const std::vector<NodeId>& raw() const { return choice_; }

  bool operator==(const Strategy&) const = default;
  auto operator<=>(const Strategy&) const = default;

 private:
  std::vector<NodeId> choice_;
};

using StrategyMax = Strategy<Player::Max>;
using StrategyMin = Strategy<Player::Min>;

// Every owned node plays its first listed successor.
template <Player P>
Strategy<P> first_successor_strategy(const Ssg& game) {
  Strategy<P> s(game.size());
  for (NodeId x = 0; x < static_cast<NodeId>(game.size()); ++x)
    if (game.kind(x) == owned_kind(P) && !game.succ(x).empty()) s.set(x, game.succ(x).front());
  return s;
}

template <Player P>
bool is_valid_strategy(const Ssg& game, const Strategy<P>& s) {
  if (s.size() != game.size()) return false;
  for (NodeId x = 0; x < static_cast<NodeId>(game.size()); ++x) {
    if (game.kind(x) != owned_kind(P)) continue;
    const auto& succ = game.succ(x);
    if (std::find(succ.begin(), succ.end(), s[x]) == succ.end()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Structural validation

struct Violation {
  NodeId node;
  std::string rule;
  std::string message;
};

inline std::vector<Violation> validate(const Ssg& game) {
  std::vector<Violation> out;
  const auto n = static_cast<NodeId>(game.size());
  for (NodeId x = 0; x < n; ++x) {
    const Node& nd = game.node(x);
    const std::string who = "node " + std::to_string(x) + " (" + nd.name + ")";
    for (NodeId y : nd.succ)
      if (y < 0 || y >= n)
        out.push_back({x, "range", who + ": successor " + std::to_string(y) + " out of range"});
    if (nd.kind == NodeKind::Sink) {
      if (nd.succ.size() != 1 || nd.succ.front() != x)
        out.push_back({x, "sink-loop", who + ": a sink must have exactly one arc, a self-loop"});
      continue;
    }
    if (nd.succ.empty()) {
      out.push_back({x, "outdegree", who + ": outdegree is zero"});
      continue;
    }
    if (nd.kind == NodeKind::Ran) {
      if (nd.prob.size() != nd.succ.size()) {
        out.push_back({x, "distribution", who + ": probability list does not match successors"});
        continue;
      }
      Rational sum(0);
      bool positive = true;
      for (const auto& q : nd.prob) {
        if (sgn(q) <= 0) positive = false;
        sum += q;
      }
      if (!positive) out.push_back({x, "probability", who + ": non-positive probability"});
      if (sum != 1) out.push_back({x, "distribution", who + ": distribution sums to " + to_string(sum)});
    }
  }
  return out;
}

// Sinks with negative value. Not a violation: with the 0 payoff for plays that
// never reach a sink, MIN may prefer to avoid absorption in such games.
inline std::vector<NodeId> nonstandard_sinks(const Ssg& game) {
  std::vector<NodeId> out;
  for (NodeId s : game.sinks())
    if (sgn(game.value(s)) < 0) out.push_back(s);
  return out;
}

inline void require_valid(const Ssg& game) {
  auto v = validate(game);
  if (!v.empty()) throw Error(ErrorKind::Precondition, "invalid game: " + v.front().message);
}

inline bool is_max_binary(const Ssg& game) {
  for (NodeId x : game.max_nodes())
    if (game.succ(x).size() != 2) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Stopping checks

namespace detail {

// Greatest fixed point of non-sink sets C in which the play can stay forever:
// RAN nodes need all successors in C, MIN nodes some successor, MAX nodes
// sigma(x) when sigma is given and some successor otherwise.
inline std::vector<bool> trap_region(const Ssg& game, const StrategyMax* sigma) {
  const auto n = static_cast<NodeId>(game.size());
  std::vector<bool> in(game.size());
  for (NodeId x = 0; x < n; ++x) in[x] = game.kind(x) != NodeKind::Sink;
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId x = 0; x < n; ++x) {
      if (!in[x]) continue;
      const auto& succ = game.succ(x);
      bool keep = false;
      switch (game.kind(x)) {
        case NodeKind::Max:
          if (sigma) {
            keep = in[(*sigma)[x]];
            break;
          }
          [[fallthrough]];
        case NodeKind::Min:
          keep = std::any_of(succ.begin(), succ.end(), [&](NodeId y) { return in[y]; });
          break;
        case NodeKind::Ran:
          keep = std::all_of(succ.begin(), succ.end(), [&](NodeId y) { return in[y]; });
          break;
        case NodeKind::Sink: break;
      }
      if (!keep) {
        in[x] = false;
        changed = true;
      }
    }
  }
  return in;
}

inline std::vector<NodeId> members(const std::vector<bool>& set) {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < set.size(); ++i)
    if (set[i]) out.push_back(static_cast<NodeId>(i));
  return out;
}

}  // namespace detail

/// True iff every play consistent with sigma reaches a sink with probability
/// one, whatever MIN does.
inline bool check_stopping(const Ssg& game, const StrategyMax& sigma) {
  auto trap = detail::trap_region(game, &sigma);
  return std::none_of(trap.begin(), trap.end(), [](bool b) { return b; });
}

/// Non-sink nodes from which MIN can keep the play away from sinks forever
/// (with positive probability) against sigma.
inline std::vector<NodeId> stopping_counterexample(const Ssg& game, const StrategyMax& sigma) {
  return detail::members(detail::trap_region(game, &sigma));
}

/// True iff every strategy pair is stopping.
inline bool is_stopping_game(const Ssg& game) {
  auto trap = detail::trap_region(game, nullptr);
  return std::none_of(trap.begin(), trap.end(), [](bool b) { return b; });
}

struct StoppingRegion {
  std::vector<bool> in_region;  // MAX forces absorption with probability one from here
  StrategyMax strategy;         // positive-attractor moves inside the region
};

/**
 * Almost-sure reachability of the sinks for MAX. Alternates a positive
 * attractor of the sinks (RAN attracted by any successor) with removal of the
 * MIN/RAN attractor of what it misses, until the region is stable.
 */
inline StoppingRegion almost_sure_stopping_region(const Ssg& game) {
  const auto n = static_cast<NodeId>(game.size());
  std::vector<bool> region(game.size(), true);
  StrategyMax strategy(game.size());
  for (;;) {
    std::vector<int> level(game.size(), -1);
    std::vector<NodeId> via(game.size(), kNoNode);
    for (NodeId x = 0; x < n; ++x)
      if (game.kind(x) == NodeKind::Sink) level[x] = 0;
    for (int round = 1;; ++round) {
      bool grew = false;
      for (NodeId x = 0; x < n; ++x) {
        if (!region[x] || level[x] >= 0) continue;
        auto earlier = [&](NodeId y) { return region[y] && level[y] >= 0 && level[y] < round; };
        const auto& succ = game.succ(x);
        bool attracted = false;
        switch (game.kind(x)) {
          case NodeKind::Max:
            for (NodeId y : succ) {
              if (earlier(y)) {
                attracted = true;
                via[x] = y;
                break;
              }
            }
            break;
          case NodeKind::Ran:
            attracted = std::any_of(succ.begin(), succ.end(), earlier);
            break;
          case NodeKind::Min:
            attracted = std::all_of(succ.begin(), succ.end(), earlier);
            break;
          case NodeKind::Sink: break;
        }
        if (attracted) {
          level[x] = round;
          grew = true;
        }
      }
      if (!grew) break;
    }
    std::vector<bool> lost(game.size(), false);
    bool any_lost = false;
    for (NodeId x = 0; x < n; ++x) {
      if (region[x] && level[x] < 0) {
        lost[x] = true;
        any_lost = true;
      }
    }
    if (!any_lost) {
      for (NodeId x = 0; x < n; ++x)
        if (game.kind(x) == NodeKind::Max) strategy.set(x, region[x] ? via[x] : game.succ(x).front());
      return {region, strategy};
    }
    // Grow the lost set by what MIN or chance can push into it.
    bool changed = true;
    while (changed) {
      changed = false;
      for (NodeId x = 0; x < n; ++x) {
        if (!region[x] || lost[x]) continue;
        const auto& succ = game.succ(x);
        auto is_lost = [&](NodeId y) { return lost[y]; };
        bool falls = false;
        switch (game.kind(x)) {
          case NodeKind::Min:
          case NodeKind::Ran: falls = std::any_of(succ.begin(), succ.end(), is_lost); break;
          case NodeKind::Max:
            falls = std::all_of(succ.begin(), succ.end(), [&](NodeId y) { return !region[y] || lost[y]; });
            break;
          case NodeKind::Sink: break;
        }
        if (falls) {
          lost[x] = true;
          changed = true;
        }
      }
    }
    for (NodeId x = 0; x < n; ++x)
      if (lost[x]) region[x] = false;
  }
}

struct CanonicalFormReport {
  bool canonical = false;
  std::optional<StrategyMax> stopping_strategy;           // when canonical
  std::optional<std::pair<NodeId, NodeId>> sink_arc;      // MAX/MIN -> sink arc
  std::vector<NodeId> avoid_set;                          // nodes where absorption cannot be forced
};

/**
 * Canonical form: no MAX/MIN node has a sink successor and MAX owns a stopping
 * strategy. The stopping witness comes from the almost-sure attractor and is
 * re-verified with check_stopping.
 */
inline CanonicalFormReport check_canonical_form(const Ssg& game) {
  CanonicalFormReport report;
  for (NodeId x = 0; x < static_cast<NodeId>(game.size()); ++x) {
    if (!game.is_controlled(x)) continue;
    for (NodeId y : game.succ(x)) {
      if (game.kind(y) == NodeKind::Sink) {
        report.sink_arc = std::make_pair(x, y);
        return report;
      }
    }
  }
  auto region = almost_sure_stopping_region(game);
  for (std::size_t x = 0; x < game.size(); ++x)
    if (!region.in_region[x]) report.avoid_set.push_back(static_cast<NodeId>(x));
  if (!report.avoid_set.empty()) return report;
  if (!check_stopping(game, region.strategy))
    throw Error(ErrorKind::Internal, "almost-sure attractor strategy is not stopping");
  report.canonical = true;
  report.stopping_strategy = region.strategy;
  return report;
}

inline bool is_canonical_form(const Ssg& game) { return check_canonical_form(game).canonical; }

}  // namespace ssg
