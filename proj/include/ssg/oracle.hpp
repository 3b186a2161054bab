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

// Brute force by enumeration. Deliberately naive: every stationary strategy
// pair is evaluated exactly and reduced by pointwise max / min.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssg/control.hpp"
#include "ssg/error.hpp"
#include "ssg/game.hpp"
#include "ssg/orders.hpp"
#include "ssg/pivot_solver.hpp"
#include "ssg/rational.hpp"
#include "ssg/valuation.hpp"

namespace ssg {

inline constexpr std::uint64_t kOracleStrategyLimit = 1000000;
inline constexpr std::uint64_t kOraclePairLimit = 20000000;

struct OracleResult {
  ValueVector values;
  StrategyMax witness_sigma;
  StrategyMin witness_tau;
  std::uint64_t strategies_enumerated = 0;
};

namespace detail {

inline std::uint64_t strategy_count(const Ssg& game, NodeKind kind) {
  std::uint64_t c = 1;
  for (NodeId x : game.nodes_of(kind)) {
    c *= game.succ(x).size();
    if (c > kOraclePairLimit) return kOraclePairLimit + 1;
  }
  return c;
}

inline void oracle_guard(const Ssg& game) {
  const auto smax = strategy_count(game, NodeKind::Max);
  const auto smin = strategy_count(game, NodeKind::Min);
  if (smax > kOracleStrategyLimit)
    throw Error(ErrorKind::Guard, "too many MAX strategies for enumeration (" + std::to_string(smax) + ")");
  if (smin > kOraclePairLimit || smax * smin > kOraclePairLimit)
    throw Error(ErrorKind::Guard, "too many strategy pairs for enumeration");
}

// Calls fn on every strategy of player P, odometer order over successor lists.
template <Player P>
void for_each_strategy(const Ssg& game, const std::function<void(const Strategy<P>&)>& fn) {
  const auto owned = game.nodes_of(owned_kind(P));
  std::vector<std::size_t> digit(owned.size(), 0);
  Strategy<P> s = first_successor_strategy<P>(game);
  for (;;) {
    fn(s);
    std::size_t a = 0;
    for (; a < owned.size(); ++a) {
      NodeId x = owned[a];
      if (++digit[a] < game.succ(x).size()) {
        s.set(x, game.succ(x)[digit[a]]);
        break;
      }
      digit[a] = 0;
      s.set(x, game.succ(x)[0]);
    }
    if (a == owned.size()) return;
  }
}

inline void pointwise(ValueVector& acc, const ValueVector& v, bool maximize) {
  for (std::size_t i = 0; i < acc.size(); ++i)
    if (maximize ? v[i] > acc[i] : v[i] < acc[i]) acc[i] = v[i];
}

}  // namespace detail

/// Optimal values by enumeration of max_sigma min_tau Val_{sigma,tau}.
inline OracleResult solve_bruteforce(const Ssg& game) {
  require_valid(game);
  detail::oracle_guard(game);
  OracleResult res;
  std::vector<std::pair<StrategyMax, ValueVector>> per_sigma;
  detail::for_each_strategy<Player::Max>(game, [&](const StrategyMax& sigma) {
    std::optional<ValueVector> best;
    detail::for_each_strategy<Player::Min>(game, [&](const StrategyMin& tau) {
      ValueVector v = detail::evaluate_pair_unchecked(game, sigma, tau);
      ++res.strategies_enumerated;
      if (!best)
        best = std::move(v);
      else
        detail::pointwise(*best, v, /*maximize=*/false);
    });
    per_sigma.emplace_back(sigma, std::move(*best));
  });
  res.values = per_sigma.front().second;
  for (const auto& [s, v] : per_sigma) detail::pointwise(res.values, v, /*maximize=*/true);
  bool found = false;
  for (const auto& [s, v] : per_sigma) {
    if (v == res.values) {
      res.witness_sigma = s;
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorKind::Internal, "no MAX strategy attains the optimal values everywhere");
  found = false;
  detail::for_each_strategy<Player::Min>(game, [&](const StrategyMin& tau) {
    if (!found && detail::evaluate_pair_unchecked(game, res.witness_sigma, tau) == res.values) {
      res.witness_tau = tau;
      found = true;
    }
  });
  if (!found) throw Error(ErrorKind::Internal, "no MIN strategy attains the optimal values everywhere");
  return res;
}

/// min_tau max_sigma Val_{sigma,tau}, the other side of the minimax equality.
inline ValueVector solve_bruteforce_minmax(const Ssg& game) {
  require_valid(game);
  detail::oracle_guard(game);
  std::optional<ValueVector> out;
  detail::for_each_strategy<Player::Min>(game, [&](const StrategyMin& tau) {
    std::optional<ValueVector> best;
    detail::for_each_strategy<Player::Max>(game, [&](const StrategyMax& sigma) {
      ValueVector v = detail::evaluate_pair_unchecked(game, sigma, tau);
      if (!best)
        best = std::move(v);
      else
        detail::pointwise(*best, v, /*maximize=*/true);
    });
    if (!out)
      out = std::move(*best);
    else
      detail::pointwise(*out, *best, /*maximize=*/false);
  });
  return *out;
}

inline constexpr int kOrderEnumerationMaxK = 8;

struct OrderEnumerationResult {
  TotalOrder order;
  OracleResult result;  // strategies_enumerated counts the orders tried
};

/// First total order (lexicographic from the identity) without constrained
/// control nodes.
inline OrderEnumerationResult solve_order_enumeration(const Ssg& game) {
  detail::require_canonical(game);
  const int k = static_cast<int>(game.ran_nodes().size());
  if (k > kOrderEnumerationMaxK)
    throw Error(ErrorKind::Guard, "order enumeration is limited to " + std::to_string(kOrderEnumerationMaxK) +
                                      " random nodes");
  std::vector<int> asc = TotalOrder::identity(k).ascending();
  std::uint64_t tried = 0;
  do {
    ++tried;
    TotalOrder t(asc);
    OrderValues ov = values_of_order(game, t);
    if (constrained_nodes(ov).empty()) {
      OrderEnumerationResult out;
      out.order = t;
      out.result.values.assign(ov.full.begin(), ov.full.begin() + game.size());
      out.result.witness_sigma = ov.forcing.sigma;
      out.result.witness_tau = ov.forcing.tau;
      out.result.strategies_enumerated = tried;
      return out;
    }
  } while (std::next_permutation(asc.begin(), asc.end()));
  throw Error(ErrorKind::Internal, "no total order is free of constrained control nodes");
}

/// Val_*[p]: optimal values of G[p] by enumeration, indexed by G[p] ids.
inline ValueVector val_star_pretotal(const Ssg& game, const PretotalOrder& p) {
  return solve_bruteforce(build_control_game(game, p).game).values;
}

}  // namespace ssg
