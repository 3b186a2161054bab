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

#include <set>

#include <gtest/gtest.h>

#include "support.hpp"

namespace ssg {
namespace {

using testing::q;

IntervalPartition seven_partition(const TotalOrder& t) {
  std::vector<Rational> v(7);
  v[7 - 1] = v[2 - 1] = q(0);
  v[4 - 1] = v[1 - 1] = v[3 - 1] = q(1, 2);
  v[6 - 1] = v[5 - 1] = q(1);
  return value_intervals(t, v);
}

// The given prefix, then every other pair of {1..k} in lexicographic order.
PairOrder theta_with_prefix(int k, PairOrder prefix) {
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : prefix) seen.insert({std::min(a, b), std::max(a, b)});
  for (int a = 1; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b)
      if (!seen.count({a, b})) prefix.push_back({a, b});
  return prefix;
}

TEST(SelectPivot, SevenNodeExample) {
  TotalOrder t({7, 2, 4, 1, 3, 6, 5});
  auto part = seven_partition(t);
  auto theta = theta_with_prefix(7, {{2, 5}, {7, 6}, {1, 4}, {2, 7}});
  ASSERT_TRUE(is_pair_order(theta, 7));
  auto st = peel_until_pivot(t, part, {7}, theta);
  ASSERT_EQ(st.pivot, 7);
  EXPECT_EQ(st.position, 4u);
  EXPECT_EQ(pivot(t, 7, part), TotalOrder({2, 7, 4, 1, 3, 6, 5}));
  // 4 has two same-interval arcs and only {1,4} has been seen by then
  EXPECT_EQ(select_pivot(t, part, {4, 7}, theta), 7);
}

TEST(SelectPivot, NoConstrainedNodeMeansOptimal) {
  TotalOrder t({7, 2, 4, 1, 3, 6, 5});
  EXPECT_FALSE(select_pivot(t, seven_partition(t), {}, sample_pair_order(7, 1)).has_value());
}

TEST(SelectPivot, FirstPairDecides) {
  TotalOrder t({7, 2, 4, 1, 3, 6, 5});
  auto theta = theta_with_prefix(7, {{1, 3}});
  auto st = peel_until_pivot(t, seven_partition(t), {1}, theta);
  EXPECT_EQ(st.pivot, 1);
  EXPECT_EQ(st.position, 1u);
  EXPECT_NE(to_string(st).find("pivot 1"), std::string::npos);
}

TEST(SelectPivot, ConstrainedLastOfIntervalIsInternal) {
  TotalOrder t({7, 2, 4, 1, 3, 6, 5});
  try {
    select_pivot(t, seven_partition(t), {3}, sample_pair_order(7, 1));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Internal);
  }
}

void expect_fig2_run(const PivotResult& r, const Ssg& g) {
  ASSERT_EQ(r.trace.steps.size(), 3u);
  EXPECT_EQ(r.trace.pivots(), (std::vector<int>{3, 3}));
  EXPECT_EQ(r.trace.steps[0].order, TotalOrder({3, 1, 2}));
  EXPECT_EQ(r.trace.steps[1].order, TotalOrder({1, 3, 2}));
  EXPECT_EQ(r.trace.steps[2].order, TotalOrder({1, 2, 3}));
  EXPECT_EQ(r.trace.steps[0].ran, (std::vector<Rational>{q(1, 10), q(1, 2), q(9, 50)}));
  EXPECT_EQ(r.trace.steps[1].control, (std::vector<Rational>{q(23, 50), q(1, 2), q(1, 2)}));
  EXPECT_EQ(r.trace.steps[2].ran, (std::vector<Rational>{q(23, 50), q(1, 2), q(27, 50)}));
  EXPECT_EQ(r.order, TotalOrder({1, 2, 3}));
  EXPECT_EQ(r.sigma[g.id("M")], g.id("r2"));
  EXPECT_EQ(r.tau[g.id("m")], g.id("M"));
  for (int s = 0; s < 2; ++s) {
    EXPECT_EQ(r.trace.steps[s].sigma[g.id("M")], g.id("r2"));
    EXPECT_EQ(r.trace.steps[s].tau[g.id("m")], g.id("r3"));
  }
}

TEST(SolveIterative, Fig2GoldenRunForManyPairOrders) {
  Ssg g = fig2_game();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto r = solve_iterative(g, TotalOrder({3, 1, 2}), sample_pair_order(3, seed), seed);
    expect_fig2_run(r, g);
    EXPECT_EQ(r.values, solve_bruteforce(g).values);
  }
}

TEST(SolveIterative, OptimalStartNeedsNoPivot) {
  Ssg g = fig2_game();
  auto r = solve_iterative(g, TotalOrder({1, 2, 3}), sample_pair_order(3, 0));
  EXPECT_EQ(r.trace.pivot_count(), 0u);
  EXPECT_EQ(r.trace.steps.size(), 1u);
}

TEST(SolveIterative, SingleRandomNode) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenParams p;
    p.k = 1;
    p.n_max = 2;
    p.n_min = 2;
    p.seed = seed;
    Ssg g = generate(p);
    auto r = solve_iterative(g, TotalOrder({1}), {});
    EXPECT_EQ(r.trace.pivot_count(), 0u);
    EXPECT_EQ(r.values, solve_bruteforce(g).values) << seed;
  }
}

TEST(SolveIterative, RejectsBadInput) {
  Ssg g = fig2_game();
  EXPECT_THROW(solve_iterative(g, TotalOrder({1, 2}), sample_pair_order(2, 0)), Error);
  EXPECT_THROW(solve_iterative(g, TotalOrder({1, 2, 3}), {{1, 2}}), Error);
  Ssg bad = fig2_game();
  bad.set_successors(bad.id("M"), {bad.id("r1"), bad.id("s1/2")});
  try {
    solve_iterative(bad, TotalOrder({1, 2, 3}), sample_pair_order(3, 0));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
}

TEST(SolveIterative, StepsImproveAndNeverRepeat) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Ssg g = testing::random_cf_game(seed, 3, 4);
    const int k = static_cast<int>(g.ran_nodes().size());
    auto r = solve_iterative(g, TotalOrder::identity(k), sample_pair_order(k, seed));
    std::set<TotalOrder> seen;
    for (std::size_t s = 0; s < r.trace.steps.size(); ++s) {
      EXPECT_TRUE(seen.insert(r.trace.steps[s].order).second);
      if (s > 0) {
        EXPECT_TRUE(strictly_improves(r.trace.steps[s - 1].full, r.trace.steps[s].full)) << seed;
      }
      if (auto pv = r.trace.steps[s].pivot) {
        EXPECT_FALSE(r.trace.steps[s].partition.after_in_interval(*pv).empty());
      }
    }
    EXPECT_EQ(r.values, solve_bruteforce(g).values) << seed;
    EXPECT_TRUE(check_optimal(g, r.sigma, r.tau));
  }
}

TEST(SolveRecursive, TotalStartOrderIsReturned) {
  Ssg g = fig2_game();
  TotalOrder t0({3, 1, 2});
  auto r = solve_recursive(g, pairs_of(t0), t0, sample_pair_order(3, 0));
  EXPECT_EQ(r.order, t0);
  EXPECT_EQ(r.trace.pivot_count(), 0u);
  EXPECT_THROW(solve_recursive(g, pairs_of(TotalOrder({1, 2, 3})), t0, sample_pair_order(3, 0)), Error);
}

TEST(SolveRecursive, Fig2MatchesIterative) {
  Ssg g = fig2_game();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto theta = sample_pair_order(3, seed);
    auto rec = solve_recursive(g, PretotalOrder(3), TotalOrder({3, 1, 2}), theta);
    EXPECT_EQ(rec.trace.pivots(), (std::vector<int>{3, 3}));
    EXPECT_EQ(rec.order, TotalOrder({1, 2, 3}));
  }
}

TEST(SolveRecursive, MatchesIterativeOnRandomGames) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Ssg g = testing::random_cf_game(seed + 500, 3, 4);
    const int k = static_cast<int>(g.ran_nodes().size());
    std::vector<int> asc;
    for (int x : sample_permutation(k, seed)) asc.push_back(x + 1);
    TotalOrder t0(asc);
    auto theta = sample_pair_order(k, seed + 1);
    auto it = solve_iterative(g, t0, theta);
    auto rec = solve_recursive(g, PretotalOrder(k), t0, theta);
    EXPECT_EQ(it.order, rec.order) << seed;
    ASSERT_EQ(it.trace.pivots(), rec.trace.pivots()) << seed;
    ASSERT_EQ(it.trace.steps.size(), rec.trace.steps.size());
    for (std::size_t s = 0; s < it.trace.steps.size(); ++s) {
      const auto& a = it.trace.steps[s];
      EXPECT_EQ(a.order, rec.trace.steps[s].order) << seed << " step " << s << ": "
                                                   << to_string(peel_until_pivot(a.order, a.partition, a.constrained, theta));
    }
  }
}

TEST(OptimalStrategies, Fig2Merge) {
  Ssg g = fig2_game();
  auto o = optimal_strategies_from_order(g, TotalOrder({1, 2, 3}));
  EXPECT_EQ(o.sigma[g.id("M")], g.id("r2"));
  EXPECT_EQ(o.tau[g.id("m")], g.id("M"));
  EXPECT_EQ(o.values[g.id("M")], q(1, 2));
  EXPECT_EQ(o.values[g.id("m")], q(1, 2));
  EXPECT_EQ(o.values[g.id("r3")], q(27, 50));
  EXPECT_TRUE(satisfies_optimality_conditions(g, o.values));
  EXPECT_THROW(optimal_strategies_from_order(g, TotalOrder({3, 1, 2})), Error);
}

TEST(OptimalStrategies, OnlyRandomNodes) {
  Ssg g;
  NodeId a = g.add_ran("a");
  NodeId b = g.add_ran("b");
  NodeId lo = g.add_sink(q(0), "lo");
  NodeId hi = g.add_sink(q(1), "hi");
  g.set_distribution(a, {{lo, q(1, 4)}, {hi, q(3, 4)}});
  g.set_distribution(b, {{hi, q(1)}});
  auto r = solve_iterative(g, TotalOrder({2, 1}), sample_pair_order(2, 0));
  EXPECT_EQ(r.values[a], q(3, 4));
  EXPECT_EQ(r.values[b], q(1));
  EXPECT_EQ(r.trace.pivots(), std::vector<int>{2});
}

}  // namespace
}  // namespace ssg
