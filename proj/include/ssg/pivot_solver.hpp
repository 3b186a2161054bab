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

// Order-pivot solver: walk total orders of the random nodes, pivoting a
// constrained control node chosen by a pair order drawn once, until no
// control node is constrained. Iterative and recursive forms.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ssg/control.hpp"
#include "ssg/error.hpp"
#include "ssg/game.hpp"
#include "ssg/orders.hpp"
#include "ssg/rational.hpp"

namespace ssg {

struct PivotStep {
  TotalOrder order;
  std::vector<Rational> control;  // control[i-1]
  std::vector<Rational> ran;      // ran[i-1]
  ValueVector full;               // over G[order]
  std::vector<int> constrained;
  std::optional<int> pivot;
  IntervalPartition partition;
  StrategyMax sigma;  // forcing strategies of order, on G
  StrategyMin tau;
};

struct PivotTrace {
  std::vector<PivotStep> steps;
  PairOrder theta;
  std::uint64_t seed = 0;

  std::size_t pivot_count() const {
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [](const PivotStep& s) { return s.pivot.has_value(); }));
  }

  std::vector<int> pivots() const {
    std::vector<int> out;
    for (const auto& s : steps)
      if (s.pivot) out.push_back(*s.pivot);
    return out;
  }
};

/// Progress of the pair-order walk that selects a pivot.
struct PeelState {
  PretotalOrder remaining;         // arcs of t not consumed yet
  std::size_t position = 0;        // pairs of theta consumed
  std::map<int, int> countdown;    // d(i) left for each constrained i
  std::optional<int> pivot;
};

inline std::string to_string(const PeelState& s) {
  std::string out = "position " + std::to_string(s.position) + ", remaining " + to_string(s.remaining) + ", d:";
  for (auto [i, d] : s.countdown) out += " " + std::to_string(i) + "=" + std::to_string(d);
  if (s.pivot) out += ", pivot " + std::to_string(*s.pivot);
  return out;
}

/**
 * Walks theta; the pair {i, x} consumes one unit of d(i) when i is
 * constrained and x sits after i in i's value interval. The first i whose
 * count reaches zero is the pivot.
 */
inline PeelState peel_until_pivot(const TotalOrder& t, const IntervalPartition& partition,
                                  const std::vector<int>& constrained, const PairOrder& theta) {
  PeelState st;
  st.remaining = pairs_of(t);
  for (int i : constrained) {
    int d = static_cast<int>(partition.after_in_interval(i).size());
    if (d == 0)
      throw Error(ErrorKind::Internal,
                  "constrained control node " + std::to_string(i) + " ends its value interval");
    st.countdown[i] = d;
  }
  if (constrained.empty()) return st;
  for (; st.position < theta.size(); ++st.position) {
    auto [a, b] = theta[st.position];
    int u = t.before(a, b) ? a : b;
    int v = u == a ? b : a;
    st.remaining = st.remaining.remove(u, v);
    auto it = st.countdown.find(u);
    if (it == st.countdown.end()) continue;
    if (partition.interval_of(u) != partition.interval_of(v)) continue;
    if (--it->second == 0) {
      st.pivot = u;
      ++st.position;
      return st;
    }
  }
  throw Error(ErrorKind::Internal, "pair order exhausted without choosing a pivot");
}

inline std::optional<int> select_pivot(const TotalOrder& t, const IntervalPartition& partition,
                                       const std::vector<int>& constrained, const PairOrder& theta) {
  return peel_until_pivot(t, partition, constrained, theta).pivot;
}

namespace detail {

inline PivotStep make_step(const OrderValues& ov) {
  PivotStep s;
  s.order = ov.order;
  s.control = ov.control;
  s.ran = ov.ran;
  s.full = ov.full;
  s.constrained = constrained_nodes(ov);
  s.partition = value_intervals(ov.order, ov.control);
  s.sigma = ov.forcing.sigma;
  s.tau = ov.forcing.tau;
  return s;
}

inline std::size_t factorial_guard(int k) {
  std::size_t f = 1;
  for (int i = 2; i <= k && f < (std::size_t{1} << 40); ++i) f *= static_cast<std::size_t>(i);
  return f;
}

inline void require_pivot_input(const Ssg& game, const TotalOrder& t0, const PairOrder& theta) {
  require_canonical(game);
  const int k = static_cast<int>(game.ran_nodes().size());
  if (t0.k() != k) throw Error(ErrorKind::Precondition, "initial order does not cover the random nodes");
  if (!is_pair_order(theta, k)) throw Error(ErrorKind::Precondition, "pair order does not list every pair once");
}

}  // namespace detail

struct OptimalStrategies {
  StrategyMax sigma;
  StrategyMin tau;
  ValueVector values;  // over G
};

/// Forcing strategies of an order without constrained control nodes, with
/// every control node merged into its random node.
inline OptimalStrategies optimal_strategies_from_order(const Ssg& game, const TotalOrder& t_star) {
  OrderValues ov = values_of_order(game, t_star);
  auto c = constrained_nodes(ov);
  if (!c.empty())
    throw Error(ErrorKind::Precondition,
                "order " + to_string(t_star) + " has constrained control node " + std::to_string(c.front()));
  OptimalStrategies out{ov.forcing.sigma, ov.forcing.tau, ValueVector(ov.full.begin(), ov.full.begin() + game.size())};
  return out;
}

struct PivotResult {
  TotalOrder order;
  StrategyMax sigma;
  StrategyMin tau;
  ValueVector values;  // over G
  PivotTrace trace;
};

inline PivotResult solve_iterative(const Ssg& game, const TotalOrder& t0, const PairOrder& theta,
                                   std::uint64_t seed = 0) {
  detail::require_pivot_input(game, t0, theta);
  PivotResult res;
  res.trace.theta = theta;
  res.trace.seed = seed;
  const std::size_t guard = detail::factorial_guard(t0.k());
  TotalOrder t = t0;
  for (;;) {
    OrderValues ov = values_of_order(game, t);
    PivotStep step = detail::make_step(ov);
    step.pivot = select_pivot(t, step.partition, step.constrained, theta);
    if (!step.pivot) {
      res.order = t;
      res.sigma = ov.forcing.sigma;
      res.tau = ov.forcing.tau;
      res.values.assign(ov.full.begin(), ov.full.begin() + game.size());
      res.trace.steps.push_back(std::move(step));
      return res;
    }
    t = pivot(t, *step.pivot, step.partition);
    res.trace.steps.push_back(std::move(step));
    if (res.trace.pivot_count() > guard) throw Error(ErrorKind::Internal, "pivot count exceeds k!");
  }
}

/// One dichotomy node of the recursive solver: the order t1 returned for
/// p0 + (i, j) and whether (i, j) was found constraining.
struct RecursiveDecision {
  PretotalOrder p0;
  int i = 0;
  int j = 0;
  TotalOrder t1;
  bool constraining = false;
  std::size_t first_step = 0;  // trace index of t1's pivot step (constraining only)
  std::size_t end_step = 0;    // trace size once p0 + (j, i) is solved
  TotalOrder result;           // order returned for p0
};

namespace detail {

class RecursivePivot {
 public:
  RecursivePivot(const Ssg& game, const PairOrder& theta, PivotTrace& trace,
                 std::vector<RecursiveDecision>& decisions)
      : game_(game), theta_(theta), trace_(trace), decisions_(decisions) {}

  TotalOrder run(const PretotalOrder& p0, const TotalOrder& t0) {
    if (p0.is_total()) return t0;
    int i = 0, j = 0;
    for (auto it = theta_.rbegin(); it != theta_.rend(); ++it) {
      auto [a, b] = *it;
      int u = t0.before(a, b) ? a : b;
      int v = u == a ? b : a;
      if (!p0.contains(u, v)) {
        i = u;
        j = v;
        break;
      }
    }
    if (i == 0) throw Error(ErrorKind::Internal, "no unordered pair left in a non-total order");
    PretotalOrder p1 = p0.add(i, j);
    TotalOrder t1 = run(p1, t0);
    const OrderValues& ov = values(t1);
    PivotStep step = make_step(ov);
    RecursiveDecision d{p0, i, j, t1, false, trace_.steps.size(), trace_.steps.size(), t1};
    if (!arc_constraining(i, j, p1, step)) {
      decisions_.push_back(std::move(d));
      return t1;
    }
    d.constraining = true;
    step.pivot = i;
    TotalOrder t2 = pivot(t1, i, step.partition);
    trace_.steps.push_back(std::move(step));
    const std::size_t slot = decisions_.size();
    decisions_.push_back(d);
    TotalOrder t_star = run(p0.add(j, i), t2);
    decisions_[slot].end_step = trace_.steps.size();
    decisions_[slot].result = t_star;
    return t_star;
  }

  const OrderValues& values(const TotalOrder& t) {
    auto it = cache_.find(t);
    if (it == cache_.end()) it = cache_.emplace(t, values_of_order(game_, t)).first;
    return it->second;
  }

 private:
  // i constrained in G[t1], j after i in its interval, and no other interval
  // member after i is an arc target of i in p1.
  static bool arc_constraining(int i, int j, const PretotalOrder& p1, const PivotStep& s) {
    if (std::find(s.constrained.begin(), s.constrained.end(), i) == s.constrained.end()) return false;
    auto after = s.partition.after_in_interval(i);
    if (std::find(after.begin(), after.end(), j) == after.end()) return false;
    for (int x : after)
      if (x != j && p1.contains(i, x)) return false;
    return true;
  }

  const Ssg& game_;
  const PairOrder& theta_;
  PivotTrace& trace_;
  std::vector<RecursiveDecision>& decisions_;
  std::map<TotalOrder, OrderValues> cache_;
};

}  // namespace detail

struct RecursiveResult {
  TotalOrder order;
  PivotTrace trace;  // one step per pivot, then the final order
  std::vector<RecursiveDecision> decisions;
};

inline RecursiveResult solve_recursive(const Ssg& game, const PretotalOrder& p0, const TotalOrder& t0,
                                       const PairOrder& theta, std::uint64_t seed = 0) {
  detail::require_pivot_input(game, t0, theta);
  if (!extends(t0, p0)) throw Error(ErrorKind::Precondition, to_string(t0) + " does not extend " + to_string(p0));
  RecursiveResult res;
  res.trace.theta = theta;
  res.trace.seed = seed;
  detail::RecursivePivot rec(game, theta, res.trace, res.decisions);
  res.order = rec.run(p0, t0);
  res.trace.steps.push_back(detail::make_step(rec.values(res.order)));
  return res;
}

}  // namespace ssg
