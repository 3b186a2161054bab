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
#include <utility>
#include <vector>

#include "ssg/error.hpp"
#include "ssg/game.hpp"
#include "ssg/linear.hpp"
#include "ssg/rational.hpp"

namespace ssg {

/// The absorbing-chain system of a strategy pair: one unknown per live state,
/// i.e. per non-sink node that can still reach a sink under (sigma, tau).
struct PairSystem {
  LinearSystem system;
  std::vector<NodeId> live;  // unknown index -> node
};

namespace detail {

template <class Fn>
void for_each_move(const Ssg& game, const StrategyMax& sigma, const StrategyMin& tau, NodeId x,
                   Fn&& fn) {
  static const Rational one(1);
  switch (game.kind(x)) {
    case NodeKind::Max: fn(sigma[x], one); break;
    case NodeKind::Min: fn(tau[x], one); break;
    case NodeKind::Ran: {
      const auto& succ = game.succ(x);
      const auto& prob = game.prob(x);
      for (std::size_t i = 0; i < succ.size(); ++i) fn(succ[i], prob[i]);
      break;
    }
    case NodeKind::Sink: break;
  }
}

inline PairSystem pair_system_unchecked(const Ssg& game, const StrategyMax& sigma,
                                        const StrategyMin& tau) {
  const auto n = static_cast<NodeId>(game.size());
  // Backward search from the sinks marks every node that reaches one.
  std::vector<std::vector<NodeId>> pred(game.size());
  for (NodeId x = 0; x < n; ++x)
    for_each_move(game, sigma, tau, x, [&](NodeId y, const Rational&) { pred[y].push_back(x); });
  std::vector<bool> reaches(game.size(), false);
  std::vector<NodeId> stack;
  for (NodeId x = 0; x < n; ++x) {
    if (game.kind(x) == NodeKind::Sink) {
      reaches[x] = true;
      stack.push_back(x);
    }
  }
  while (!stack.empty()) {
    NodeId y = stack.back();
    stack.pop_back();
    for (NodeId x : pred[y]) {
      if (!reaches[x]) {
        reaches[x] = true;
        stack.push_back(x);
      }
    }
  }

  PairSystem ps;
  std::vector<int> index(game.size(), -1);
  for (NodeId x = 0; x < n; ++x) {
    if (game.kind(x) != NodeKind::Sink && reaches[x]) {
      index[x] = static_cast<int>(ps.live.size());
      ps.live.push_back(x);
    }
  }
  const std::size_t m = ps.live.size();
  ps.system.matrix.assign(m, std::vector<Rational>(m, Rational(0)));
  ps.system.rhs.assign(m, Rational(0));
  for (std::size_t r = 0; r < m; ++r) {
    NodeId x = ps.live[r];
    ps.system.matrix[r][r] = 1;
    for_each_move(game, sigma, tau, x, [&](NodeId y, const Rational& q) {
      if (game.kind(y) == NodeKind::Sink)
        ps.system.rhs[r] += q * game.value(y);
      else if (index[y] >= 0)
        ps.system.matrix[r][index[y]] -= q;
      // nodes that never reach a sink contribute 0
    });
  }
  return ps;
}

inline ValueVector evaluate_pair_unchecked(const Ssg& game, const StrategyMax& sigma,
                                           const StrategyMin& tau) {
  PairSystem ps = pair_system_unchecked(game, sigma, tau);
  auto sol = solve(std::move(ps.system));
  ValueVector v(game.size(), Rational(0));
  for (NodeId s : game.sinks()) v[s] = game.value(s);
  for (std::size_t r = 0; r < ps.live.size(); ++r) v[ps.live[r]] = sol[r];
  return v;
}

inline void require_strategies(const Ssg& game, const StrategyMax& sigma, const StrategyMin& tau) {
  if (!is_valid_strategy(game, sigma)) throw Error(ErrorKind::Precondition, "invalid MAX strategy");
  if (!is_valid_strategy(game, tau)) throw Error(ErrorKind::Precondition, "invalid MIN strategy");
}

}  // namespace detail

inline PairSystem pair_system(const Ssg& game, const StrategyMax& sigma, const StrategyMin& tau) {
  require_valid(game);
  detail::require_strategies(game, sigma, tau);
  return detail::pair_system_unchecked(game, sigma, tau);
}

/// Val_{sigma,tau}: expected sink value of the play from every node, 0 for
/// plays that are never absorbed.
inline ValueVector evaluate_pair(const Ssg& game, const StrategyMax& sigma, const StrategyMin& tau) {
  require_valid(game);
  detail::require_strategies(game, sigma, tau);
  return detail::evaluate_pair_unchecked(game, sigma, tau);
}

// Lowest-id successor of x minimizing (or maximizing) v.
inline NodeId best_successor(const Ssg& game, NodeId x, const ValueVector& v, bool maximize) {
  NodeId best = kNoNode;
  for (NodeId y : game.succ(x)) {
    if (best == kNoNode) {
      best = y;
      continue;
    }
    bool better = maximize ? v[y] > v[best] : v[y] < v[best];
    if (better || (v[y] == v[best] && y < best)) best = y;
  }
  return best;
}

struct BestResponse {
  StrategyMin tau;
  ValueVector values;
  bool sigma_stopping = true;  // false: values are the policy-iteration fixed point only
};

namespace detail {

inline BestResponse best_response_min_unchecked(const Ssg& game, const StrategyMax& sigma) {
  BestResponse br;
  br.sigma_stopping = check_stopping(game, sigma);
  br.tau = first_successor_strategy<Player::Min>(game);
  const auto mins = game.min_nodes();
  // Strict decrease of the value vector bounds the number of rounds by the
  // number of MIN strategies; the guard only matters for non-stopping sigma.
  std::size_t guard = 1;
  for (NodeId x : mins) {
    guard *= game.succ(x).size();
    if (guard > (1u << 20)) break;
  }
  for (std::size_t round = 0;; ++round) {
    br.values = evaluate_pair_unchecked(game, sigma, br.tau);
    bool improved = false;
    for (NodeId x : mins) {
      NodeId y = best_successor(game, x, br.values, /*maximize=*/false);
      if (br.values[y] < br.values[br.tau[x]]) {
        br.tau.set(x, y);
        improved = true;
      }
    }
    if (!improved) return br;
    if (round > guard) throw Error(ErrorKind::Internal, "MIN policy iteration does not terminate");
  }
}

}  // namespace detail

/// MIN's best response to sigma by policy iteration: returns tau* and
/// Val_{sigma,*}. Ties go to the lowest successor id.
inline BestResponse best_response_min(const Ssg& game, const StrategyMax& sigma) {
  require_valid(game);
  if (!is_valid_strategy(game, sigma)) throw Error(ErrorKind::Precondition, "invalid MAX strategy");
  return detail::best_response_min_unchecked(game, sigma);
}

/// MAX nodes with a successor strictly better than sigma(x) under `values`
/// (which must be Val_{sigma,*}).
inline std::vector<NodeId> switchable_nodes(const Ssg& game, const StrategyMax& sigma,
                                            const ValueVector& values) {
  std::vector<NodeId> out;
  for (NodeId x : game.max_nodes()) {
    const Rational& cur = values[sigma[x]];
    for (NodeId y : game.succ(x)) {
      if (values[y] > cur) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

inline std::vector<NodeId> switchable_nodes(const Ssg& game, const StrategyMax& sigma) {
  return switchable_nodes(game, sigma, best_response_min(game, sigma).values);
}

/// The profitable switch of sigma at x: the other successor of a binary node,
/// otherwise the best successor under `values` (lowest id on ties).
inline StrategyMax switch_strategy(const Ssg& game, const StrategyMax& sigma, NodeId x,
                                   const ValueVector& values) {
  if (game.kind(x) != NodeKind::Max) throw Error(ErrorKind::Precondition, "switch at a non-MAX node");
  const auto& succ = game.succ(x);
  NodeId target = kNoNode;
  if (succ.size() == 2) {
    target = succ[0] == sigma[x] ? succ[1] : succ[0];
    if (!(values[target] > values[sigma[x]])) target = kNoNode;
  } else {
    NodeId best = best_successor(game, x, values, /*maximize=*/true);
    if (values[best] > values[sigma[x]]) target = best;
  }
  if (target == kNoNode)
    throw Error(ErrorKind::Precondition, "node " + game.name(x) + " is not switchable");
  StrategyMax out = sigma;
  out.set(x, target);
  return out;
}

inline StrategyMax switch_strategy(const Ssg& game, const StrategyMax& sigma, NodeId x) {
  return switch_strategy(game, sigma, x, best_response_min(game, sigma).values);
}

/// Local optimality conditions: every MAX node takes the max of its
/// successors' values and every MIN node the min.
inline bool satisfies_optimality_conditions(const Ssg& game, const ValueVector& values) {
  for (NodeId x = 0; x < static_cast<NodeId>(game.size()); ++x) {
    NodeKind k = game.kind(x);
    if (k != NodeKind::Max && k != NodeKind::Min) continue;
    NodeId y = best_successor(game, x, values, k == NodeKind::Max);
    if (values[x] != values[y]) return false;
  }
  return true;
}

inline bool check_optimal(const Ssg& game, const StrategyMax& sigma, const StrategyMin& tau) {
  return satisfies_optimality_conditions(game, evaluate_pair(game, sigma, tau));
}

}  // namespace ssg
