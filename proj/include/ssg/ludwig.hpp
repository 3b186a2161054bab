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

// Strategy iteration for MAX: Bland's rule over a node order drawn once,
// its partially frozen and recursive forms, and switch-all Hoffman-Karp.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ssg/error.hpp"
#include "ssg/game.hpp"
#include "ssg/orders.hpp"
#include "ssg/rational.hpp"
#include "ssg/valuation.hpp"

namespace ssg {

/// A permutation of the MAX nodes; earlier means scanned first.
using NodeOrder = std::vector<NodeId>;

struct SwitchStep {
  StrategyMax sigma;              // strategy after the switch
  std::vector<NodeId> switched;   // one node for Bland, possibly many for Hoffman-Karp
  ValueVector values;             // Val_{sigma,*} after the switch
};

struct SwitchTrace {
  StrategyMax initial;
  ValueVector initial_values;
  std::vector<SwitchStep> steps;
  std::uint64_t seed = 0;
  NodeOrder order_used;
  std::optional<std::string> warning;

  std::size_t switch_count() const { return steps.size(); }

  std::vector<NodeId> switch_sequence() const {
    std::vector<NodeId> out;
    for (const auto& s : steps) out.insert(out.end(), s.switched.begin(), s.switched.end());
    return out;
  }
};

/// Uniform permutation of [0, count).
inline NodeOrder sample_node_order(std::size_t count, std::uint64_t seed) {
  auto perm = sample_permutation(static_cast<int>(count), seed);
  return NodeOrder(perm.begin(), perm.end());
}

/// Uniform order on the MAX nodes of game.
inline NodeOrder sample_node_order(const Ssg& game, std::uint64_t seed) {
  const auto maxes = game.max_nodes();
  NodeOrder out;
  for (NodeId i : sample_node_order(maxes.size(), seed)) out.push_back(maxes[i]);
  return out;
}

inline bool is_node_order(const Ssg& game, const NodeOrder& theta) {
  auto a = game.max_nodes();
  NodeOrder b = theta;
  std::sort(b.begin(), b.end());
  return a == b;
}

/// The game in which every x in frozen becomes a RAN node going to sigma(x)
/// with probability 1.
inline Ssg freeze(const Ssg& game, const StrategyMax& sigma, const std::set<NodeId>& frozen) {
  Ssg out = game;
  for (NodeId x : frozen) {
    if (game.kind(x) != NodeKind::Max) throw Error(ErrorKind::Precondition, "frozen node is not a MAX node");
    Node& nd = out.mutable_node(x);
    nd.kind = NodeKind::Ran;
    nd.succ = {sigma[x]};
    nd.prob = {Rational(1)};
  }
  return out;
}

struct BlandOptions {
  // When false only sigma0 has to be stopping; the trace then carries a warning.
  bool require_stopping_game = true;
  std::uint64_t seed = 0;
};

namespace detail {

inline void require_ludwig_input(const Ssg& game, const StrategyMax& sigma0, const BlandOptions& opt,
                                 SwitchTrace& trace, bool need_binary) {
  require_valid(game);
  if (need_binary && !is_max_binary(game)) throw Error(ErrorKind::Precondition, "game is not max-binary");
  if (!is_valid_strategy(game, sigma0)) throw Error(ErrorKind::Precondition, "invalid MAX strategy");
  if (!is_stopping_game(game)) {
    if (opt.require_stopping_game) throw Error(ErrorKind::Precondition, "game is not stopping");
    if (!check_stopping(game, sigma0)) throw Error(ErrorKind::Precondition, "initial strategy is not stopping");
    trace.warning = "game is not stopping: later strategies may stop being stopping";
  }
}

inline std::size_t switch_guard(const Ssg& game) {
  const auto m = game.max_nodes().size();
  std::size_t guard = 1;
  for (std::size_t i = 0; i < m && guard < (std::size_t{1} << 40); ++i) guard *= 2;
  return guard;
}

// Bland loop over the nodes of theta that are MAX nodes in `game`.
inline StrategyMax bland_loop(const Ssg& game, StrategyMax sigma, const NodeOrder& theta, SwitchTrace& trace,
                              std::size_t guard) {
  ValueVector values = best_response_min_unchecked(game, sigma).values;
  trace.initial = sigma;
  trace.initial_values = values;
  for (;;) {
    NodeId pick = kNoNode;
    for (NodeId x : theta) {
      if (game.kind(x) != NodeKind::Max) continue;
      const auto& succ = game.succ(x);
      if (std::any_of(succ.begin(), succ.end(), [&](NodeId y) { return values[y] > values[sigma[x]]; })) {
        pick = x;
        break;
      }
    }
    if (pick == kNoNode) return sigma;
    sigma = switch_strategy(game, sigma, pick, values);
    ValueVector next = best_response_min_unchecked(game, sigma).values;
    if (!strictly_improves(values, next))
      throw Error(ErrorKind::Internal, "switch at " + game.name(pick) + " did not improve the values");
    values = std::move(next);
    trace.steps.push_back({sigma, {pick}, values});
    if (trace.steps.size() > guard) throw Error(ErrorKind::Internal, "switch count exceeds the strategy count");
  }
}

}  // namespace detail

struct LudwigResult {
  StrategyMax sigma;
  SwitchTrace trace;
};

/// Bland's rule: repeatedly switch the first switchable node of theta.
inline LudwigResult solve_bland(const Ssg& game, const StrategyMax& sigma0, const NodeOrder& theta,
                                const BlandOptions& opt = {}) {
  LudwigResult res;
  detail::require_ludwig_input(game, sigma0, opt, res.trace, /*need_binary=*/true);
  if (!is_node_order(game, theta)) throw Error(ErrorKind::Precondition, "node order is not a permutation of the MAX nodes");
  res.trace.seed = opt.seed;
  res.trace.order_used = theta;
  res.sigma = detail::bland_loop(game, sigma0, theta, res.trace, detail::switch_guard(game));
  return res;
}

/// opt(sigma0, frozen): the best strategy agreeing with sigma0 on frozen,
/// found by Bland's rule on the free MAX nodes.
inline LudwigResult opt_partial(const Ssg& game, const StrategyMax& sigma0, const std::set<NodeId>& frozen,
                                const NodeOrder& theta, const BlandOptions& opt = {}) {
  LudwigResult res;
  detail::require_ludwig_input(game, sigma0, opt, res.trace, /*need_binary=*/true);
  if (!is_node_order(game, theta)) throw Error(ErrorKind::Precondition, "node order is not a permutation of the MAX nodes");
  res.trace.seed = opt.seed;
  res.trace.order_used = theta;
  Ssg g = freeze(game, sigma0, frozen);
  res.sigma = detail::bland_loop(g, sigma0, theta, res.trace, detail::switch_guard(game));
  return res;
}

namespace detail {

class RecursiveLudwig {
 public:
  RecursiveLudwig(const Ssg& game, const NodeOrder& theta, SwitchTrace& trace)
      : game_(game), theta_(theta), trace_(trace) {}

  StrategyMax run(const StrategyMax& sigma0, std::set<NodeId> frozen) {
    NodeId v0 = kNoNode;
    for (auto it = theta_.rbegin(); it != theta_.rend(); ++it) {
      if (!frozen.count(*it)) {
        v0 = *it;
        break;
      }
    }
    if (v0 == kNoNode) return sigma0;
    frozen.insert(v0);
    StrategyMax sigma1 = run(sigma0, frozen);
    Ssg g = freeze(game_, sigma1, frozen);
    g.mutable_node(v0) = game_.node(v0);
    ValueVector values = best_response_min_unchecked(g, sigma1).values;
    const auto& succ = game_.succ(v0);
    bool switchable = std::any_of(succ.begin(), succ.end(), [&](NodeId y) { return values[y] > values[sigma1[v0]]; });
    if (!switchable) return sigma1;
    StrategyMax sigma2 = switch_strategy(g, sigma1, v0, values);
    ValueVector next = best_response_min_unchecked(g, sigma2).values;
    if (!strictly_improves(values, next))
      throw Error(ErrorKind::Internal, "switch at " + game_.name(v0) + " did not improve the values");
    trace_.steps.push_back({sigma2, {v0}, std::move(next)});
    return run(sigma2, frozen);
  }

 private:
  const Ssg& game_;
  const NodeOrder& theta_;
  SwitchTrace& trace_;
};

}  // namespace detail

/// Recursive form of opt_partial: fix the last free node of theta, solve,
/// and switch it once if that is still profitable.
inline LudwigResult opt_partial_recursive(const Ssg& game, const StrategyMax& sigma0, const std::set<NodeId>& frozen,
                                          const NodeOrder& theta, const BlandOptions& opt = {}) {
  LudwigResult res;
  detail::require_ludwig_input(game, sigma0, opt, res.trace, /*need_binary=*/true);
  if (!is_node_order(game, theta)) throw Error(ErrorKind::Precondition, "node order is not a permutation of the MAX nodes");
  for (NodeId x : frozen)
    if (game.kind(x) != NodeKind::Max) throw Error(ErrorKind::Precondition, "frozen node is not a MAX node");
  res.trace.seed = opt.seed;
  res.trace.order_used = theta;
  res.trace.initial = sigma0;
  res.trace.initial_values = detail::best_response_min_unchecked(freeze(game, sigma0, frozen), sigma0).values;
  detail::RecursiveLudwig rec(game, theta, res.trace);
  res.sigma = rec.run(sigma0, frozen);
  return res;
}

/// Switch every switchable node at once, each to its best successor.
inline LudwigResult solve_hoffman_karp(const Ssg& game, const StrategyMax& sigma0, const BlandOptions& opt = {}) {
  LudwigResult res;
  detail::require_ludwig_input(game, sigma0, opt, res.trace, /*need_binary=*/false);
  res.trace.seed = opt.seed;
  StrategyMax sigma = sigma0;
  ValueVector values = detail::best_response_min_unchecked(game, sigma).values;
  res.trace.initial = sigma;
  res.trace.initial_values = values;
  const auto guard = detail::switch_guard(game);
  for (;;) {
    auto sw = switchable_nodes(game, sigma, values);
    if (sw.empty()) break;
    for (NodeId x : sw) sigma.set(x, best_successor(game, x, values, /*maximize=*/true));
    ValueVector next = detail::best_response_min_unchecked(game, sigma).values;
    if (!strictly_improves(values, next)) throw Error(ErrorKind::Internal, "switch-all round did not improve the values");
    values = std::move(next);
    res.trace.steps.push_back({sigma, sw, values});
    if (res.trace.steps.size() > guard) throw Error(ErrorKind::Internal, "round count exceeds the strategy count");
  }
  res.sigma = sigma;
  return res;
}

}  // namespace ssg
