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

// Derived games G[t] / G[p] with one MIN control node in front of every
// random node, their forcing strategies, and the small one-player process
// over control nodes that yields Val[t] and Val[p](t).

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssg/error.hpp"
#include "ssg/game.hpp"
#include "ssg/linear.hpp"
#include "ssg/orders.hpp"
#include "ssg/rational.hpp"

namespace ssg {

/// G[p]: a copy of the base game whose arcs into r_i are redirected to the
/// control node i. Control node i is a MIN node with arcs to r_i and to every
/// j with (i, j) in p. Base node ids are kept; control i gets id
/// base_size + i - 1.
struct ControlGame {
  Ssg game;
  std::size_t base_size = 0;
  int k = 0;
  PretotalOrder arcs;
  std::vector<NodeId> ran;  // ran[i-1] = r_i

  NodeId control(int i) const { return static_cast<NodeId>(base_size) + i - 1; }
};

namespace detail {

// control index of every RAN node, 0 elsewhere
inline std::vector<int> control_index(const Ssg& game) {
  std::vector<int> idx(game.size(), 0);
  int i = 0;
  for (NodeId r : game.ran_nodes()) idx[r] = ++i;
  return idx;
}

inline ControlGame build_control_game_unchecked(const Ssg& game, const PretotalOrder& p) {
  ControlGame cg;
  cg.base_size = game.size();
  cg.ran = game.ran_nodes();
  cg.k = static_cast<int>(cg.ran.size());
  cg.arcs = p;
  if (p.k() != cg.k) throw Error(ErrorKind::Precondition, "order size does not match the number of random nodes");
  auto idx = control_index(game);
  auto ctrl = [&](int i) { return static_cast<NodeId>(cg.base_size) + i - 1; };
  cg.game = game;
  for (NodeId x = 0; x < static_cast<NodeId>(game.size()); ++x) {
    if (game.kind(x) == NodeKind::Sink) continue;
    for (NodeId& y : cg.game.mutable_node(x).succ)
      if (idx[y] > 0) y = ctrl(idx[y]);
  }
  std::vector<std::vector<NodeId>> out(cg.k + 1);
  for (int i = 1; i <= cg.k; ++i) out[i].push_back(cg.ran[i - 1]);
  for (auto [i, j] : p.pairs()) out[i].push_back(ctrl(j));
  for (int i = 1; i <= cg.k; ++i) {
    NodeId c = cg.game.add_min("c" + std::to_string(i));
    cg.game.set_successors(c, out[i]);
  }
  return cg;
}

inline void require_canonical(const Ssg& game) {
  require_valid(game);
  auto cf = check_canonical_form(game);
  if (!cf.canonical) throw Error(ErrorKind::Precondition, "not canonical form");
}

}  // namespace detail

inline ControlGame build_control_game(const Ssg& game, const PretotalOrder& p) {
  detail::require_canonical(game);
  return detail::build_control_game_unchecked(game, p);
}

inline ControlGame build_control_game(const Ssg& game, const TotalOrder& t) {
  return build_control_game(game, pairs_of(t));
}

/// Forcing strategies for order t, expressed on the base game (sigma(x) and
/// tau(x) are successors of x in G).
struct ForcingData {
  StrategyMax sigma;
  StrategyMin tau;
  std::vector<std::vector<NodeId>> forcing_set;  // forcing_set[i-1]: MAX/MIN nodes reaching control i
  std::vector<int> reach;                        // control index absorbing x, 0 for RAN/sinks
};

/**
 * Solves the deterministic game in which control node i is a sink worth
 * rank_t(i), by peeling max-attractors from the highest rank down. Inside the
 * rank-j attractor MAX moves towards the target and MIN takes its lowest-id
 * successor that stays in the attractor; ties go to the lowest node id.
 */
inline ForcingData compute_forcing(const Ssg& game, const TotalOrder& t) {
  const auto n = static_cast<NodeId>(game.size());
  const auto idx = detail::control_index(game);
  const int k = static_cast<int>(game.ran_nodes().size());
  if (t.k() != k) throw Error(ErrorKind::Precondition, "order size does not match the number of random nodes");

  ForcingData fd;
  fd.sigma = StrategyMax(game.size());
  fd.tau = StrategyMin(game.size());
  fd.forcing_set.assign(k, {});
  fd.reach.assign(game.size(), 0);

  for (NodeId x = 0; x < n; ++x) {
    if (!game.is_controlled(x)) continue;
    for (NodeId y : game.succ(x))
      if (game.kind(y) == NodeKind::Sink)
        throw Error(ErrorKind::Precondition, "not canonical form: arc " + game.name(x) + " -> sink " + game.name(y));
  }

  std::vector<int> stage_rank(game.size(), 0);  // rank of the attractor holding x
  std::vector<int> level(game.size(), 0);       // round inside that attractor
  enum class Status { Target, Earlier, Higher, Other };

  for (int j = k; j >= 1; --j) {
    const int c = t.at(j - 1);
    for (int round = 1;; ++round) {
      auto status = [&](NodeId y) {
        if (idx[y] > 0) {
          int r = t.rank(idx[y]);
          return r == j ? Status::Target : (r > j ? Status::Higher : Status::Other);
        }
        if (stage_rank[y] > j) return Status::Higher;
        if (stage_rank[y] == j && level[y] < round) return Status::Earlier;
        return Status::Other;
      };
      std::vector<std::pair<NodeId, NodeId>> attracted;  // (node, move)
      for (NodeId x = 0; x < n; ++x) {
        if (!game.is_controlled(x) || stage_rank[x] != 0) continue;
        NodeId move = kNoNode;
        bool all_ok = true;
        for (NodeId y : game.succ(x)) {
          Status s = status(y);
          if (s == Status::Target || s == Status::Earlier) {
            if (move == kNoNode || y < move) move = y;
          } else if (s == Status::Other) {
            all_ok = false;
          }
        }
        bool takes = game.kind(x) == NodeKind::Max ? move != kNoNode : (all_ok && move != kNoNode);
        if (takes) attracted.emplace_back(x, move);
      }
      if (attracted.empty()) break;
      for (auto [x, move] : attracted) {
        stage_rank[x] = j;
        level[x] = round;
        fd.reach[x] = c;
        fd.forcing_set[c - 1].push_back(x);
        if (game.kind(x) == NodeKind::Max)
          fd.sigma.set(x, move);
        else
          fd.tau.set(x, move);
      }
    }
  }
  for (NodeId x = 0; x < n; ++x)
    if (game.is_controlled(x) && stage_rank[x] == 0)
      throw Error(ErrorKind::Precondition,
                  "not canonical form: " + game.name(x) + " is captured by no attractor");
  return fd;
}

/// One enter outcome of the collapsed process: a sink (control == 0) or a
/// control node.
struct Outcome {
  int control = 0;
  NodeId sink = kNoNode;
  Rational prob;

  bool operator==(const Outcome&) const = default;
};

/// MIN-only decision process over control nodes. Control i either enters
/// r_i (a distribution over sinks and control nodes) or defers to a control
/// node j with (i, j) among the arcs.
struct CollapsedMdp {
  int k = 0;
  std::vector<std::vector<Outcome>> enter;  // enter[i-1]
  std::vector<std::vector<int>> defer;      // defer[i-1], ascending
  std::map<NodeId, Rational> sink_value;
};

inline CollapsedMdp collapse(const Ssg& game, const PretotalOrder& arcs, const ForcingData& forcing) {
  const auto idx = detail::control_index(game);
  const auto ran = game.ran_nodes();
  CollapsedMdp mdp;
  mdp.k = static_cast<int>(ran.size());
  mdp.enter.resize(mdp.k);
  mdp.defer.resize(mdp.k);
  for (int i = 1; i <= mdp.k; ++i) {
    std::map<std::pair<int, int>, Rational> merged;  // (0, sink) or (1, control)
    const auto& succ = game.succ(ran[i - 1]);
    const auto& prob = game.prob(ran[i - 1]);
    for (std::size_t a = 0; a < succ.size(); ++a) {
      NodeId y = succ[a];
      std::pair<int, int> key;
      if (game.kind(y) == NodeKind::Sink) {
        key = {0, y};
        mdp.sink_value[y] = game.value(y);
      } else if (idx[y] > 0) {
        key = {1, idx[y]};
      } else {
        key = {1, forcing.reach[y]};
      }
      merged[key] += prob[a];
    }
    for (const auto& [key, q] : merged) {
      Outcome o;
      if (key.first == 0)
        o.sink = key.second;
      else
        o.control = key.second;
      o.prob = q;
      mdp.enter[i - 1].push_back(o);
    }
  }
  for (auto [i, j] : arcs.pairs()) mdp.defer[i - 1].push_back(j);
  for (auto& d : mdp.defer) std::sort(d.begin(), d.end());
  return mdp;
}

inline CollapsedMdp collapse(const Ssg& game, const TotalOrder& t, const ForcingData& forcing) {
  return collapse(game, pairs_of(t), forcing);
}

/// Policy: 0 = enter, j > 0 = defer to control j.
struct CollapsedSolution {
  std::vector<Rational> values;  // values[i-1]
  std::vector<int> policy;
};

namespace detail {

inline Rational enter_value(const CollapsedMdp& mdp, int i, const std::vector<Rational>& v) {
  Rational acc(0);
  for (const auto& o : mdp.enter[i - 1])
    acc += o.prob * (o.control == 0 ? mdp.sink_value.at(o.sink) : v[o.control - 1]);
  return acc;
}

inline std::vector<Rational> evaluate_policy(const CollapsedMdp& mdp, const std::vector<int>& policy) {
  const int k = mdp.k;
  // a control state is absorbing-connected if it can reach a sink outcome
  std::vector<bool> reaches(k + 1, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 1; i <= k; ++i) {
      if (reaches[i]) continue;
      bool r = false;
      if (policy[i - 1] == 0) {
        for (const auto& o : mdp.enter[i - 1])
          if (o.control == 0 || reaches[o.control]) r = true;
      } else {
        r = reaches[policy[i - 1]];
      }
      if (r) {
        reaches[i] = changed = true;
      }
    }
  }
  for (int i = 1; i <= k; ++i)
    if (!reaches[i])
      throw Error(ErrorKind::Precondition,
                  "not canonical form: control node " + std::to_string(i) + " lies in a non-absorbing class");
  LinearSystem sys;
  sys.matrix.assign(k, std::vector<Rational>(k, Rational(0)));
  sys.rhs.assign(k, Rational(0));
  for (int i = 1; i <= k; ++i) {
    sys.matrix[i - 1][i - 1] += 1;
    if (policy[i - 1] == 0) {
      for (const auto& o : mdp.enter[i - 1]) {
        if (o.control == 0)
          sys.rhs[i - 1] += o.prob * mdp.sink_value.at(o.sink);
        else
          sys.matrix[i - 1][o.control - 1] -= o.prob;
      }
    } else {
      sys.matrix[i - 1][policy[i - 1] - 1] -= 1;
    }
  }
  return solve(std::move(sys));
}

}  // namespace detail

/// Minimum expected sink value per control state by policy iteration, starting
/// from "enter everywhere". Ties prefer enter, then the lowest defer target.
inline CollapsedSolution solve_collapsed(const CollapsedMdp& mdp) {
  CollapsedSolution sol;
  sol.policy.assign(mdp.k, 0);
  for (;;) {
    sol.values = detail::evaluate_policy(mdp, sol.policy);
    bool improved = false;
    for (int i = 1; i <= mdp.k; ++i) {
      int best = 0;
      Rational best_value = detail::enter_value(mdp, i, sol.values);
      for (int j : mdp.defer[i - 1]) {
        if (sol.values[j - 1] < best_value) {
          best = j;
          best_value = sol.values[j - 1];
        }
      }
      if (best_value < sol.values[i - 1]) {
        sol.policy[i - 1] = best;
        improved = true;
      }
    }
    if (!improved) return sol;
  }
}

/// Values of a derived game under the forcing strategies of an order, with
/// control nodes playing optimally.
struct OrderValues {
  TotalOrder order;
  ForcingData forcing;
  std::vector<Rational> control;  // control[i-1]
  std::vector<Rational> ran;      // ran[i-1] = Val(r_i)
  ValueVector full;               // indexed by the node ids of G[t]
  std::vector<int> policy;        // control-node choices, see CollapsedSolution
};

namespace detail {

inline OrderValues expand(const Ssg& game, const TotalOrder& t, ForcingData forcing, const CollapsedMdp& mdp) {
  auto sol = solve_collapsed(mdp);
  OrderValues ov;
  ov.order = t;
  ov.control = sol.values;
  ov.policy = sol.policy;
  const int k = mdp.k;
  ov.ran.resize(k);
  for (int i = 1; i <= k; ++i) ov.ran[i - 1] = enter_value(mdp, i, ov.control);
  const auto ran = game.ran_nodes();
  ov.full.assign(game.size() + k, Rational(0));
  for (NodeId x = 0; x < static_cast<NodeId>(game.size()); ++x) {
    switch (game.kind(x)) {
      case NodeKind::Sink: ov.full[x] = game.value(x); break;
      case NodeKind::Ran: break;
      default: ov.full[x] = ov.control[forcing.reach[x] - 1]; break;
    }
  }
  for (int i = 1; i <= k; ++i) {
    ov.full[ran[i - 1]] = ov.ran[i - 1];
    ov.full[game.size() + i - 1] = ov.control[i - 1];
  }
  ov.forcing = std::move(forcing);
  return ov;
}

}  // namespace detail

/// Val[t]: optimal values of G[t].
inline OrderValues values_of_order(const Ssg& game, const TotalOrder& t) {
  ForcingData fd = compute_forcing(game, t);
  CollapsedMdp mdp = collapse(game, t, fd);
  return detail::expand(game, t, std::move(fd), mdp);
}

/// Val[p](t): forcing strategies of t, control nodes restricted to the arcs of p.
inline OrderValues val_p_t(const Ssg& game, const PretotalOrder& p, const TotalOrder& t) {
  if (!extends(t, p)) throw Error(ErrorKind::Precondition, to_string(t) + " does not extend " + to_string(p));
  ForcingData fd = compute_forcing(game, t);
  CollapsedMdp mdp = collapse(game, p, fd);
  return detail::expand(game, t, std::move(fd), mdp);
}

/// Control nodes i with Val[t](i) < Val[t](r_i), ascending.
inline std::vector<int> constrained_nodes(const std::vector<Rational>& control, const std::vector<Rational>& ran) {
  std::vector<int> out;
  for (std::size_t i = 0; i < control.size(); ++i)
    if (control[i] < ran[i]) out.push_back(static_cast<int>(i) + 1);
  return out;
}

inline std::vector<int> constrained_nodes(const OrderValues& ov) { return constrained_nodes(ov.control, ov.ran); }

}  // namespace ssg
