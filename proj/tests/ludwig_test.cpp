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

StrategyMax fig2_sigma(const Ssg& g, const char* to) {
  StrategyMax s(g.size());
  s.set(g.id("M"), g.id(to));
  return s;
}

// Two MAX nodes, each choosing between a low and a high random node.
Ssg two_gadgets() {
  Ssg g;
  NodeId a = g.add_max("a");
  NodeId b = g.add_max("b");
  NodeId a_lo = g.add_ran("a_lo"), a_hi = g.add_ran("a_hi");
  NodeId b_lo = g.add_ran("b_lo"), b_hi = g.add_ran("b_hi");
  NodeId zero = g.add_sink(q(0), "zero");
  NodeId one = g.add_sink(q(1), "one");
  g.set_successors(a, {a_lo, a_hi});
  g.set_successors(b, {b_lo, b_hi});
  g.set_distribution(a_lo, {{zero, q(3, 4)}, {one, q(1, 4)}});
  g.set_distribution(a_hi, {{zero, q(1, 4)}, {one, q(3, 4)}});
  g.set_distribution(b_lo, {{zero, q(1)}});
  g.set_distribution(b_hi, {{one, q(1)}});
  return g;
}

TEST(Bland, Fig2OneSwitchAtM) {
  Ssg g = fig2_game();
  auto r = solve_bland(g, fig2_sigma(g, "r1"), {g.id("M")});
  EXPECT_EQ(r.trace.switch_sequence(), std::vector<NodeId>{g.id("M")});
  EXPECT_EQ(r.sigma[g.id("M")], g.id("r2"));
  EXPECT_EQ(r.trace.steps.back().values, solve_bruteforce(g).values);
  EXPECT_FALSE(r.trace.warning.has_value());
}

TEST(Bland, OptimalStartHasNoSwitch) {
  Ssg g = fig2_game();
  auto r = solve_bland(g, fig2_sigma(g, "r2"), {g.id("M")});
  EXPECT_EQ(r.trace.switch_count(), 0u);
}

TEST(Bland, NodeOrderPicksFirstSwitch) {
  Ssg g = two_gadgets();
  StrategyMax s0 = first_successor_strategy<Player::Max>(g);
  NodeId a = g.id("a"), b = g.id("b");
  auto ab = solve_bland(g, s0, {a, b});
  auto ba = solve_bland(g, s0, {b, a});
  EXPECT_EQ(ab.trace.switch_sequence(), (std::vector<NodeId>{a, b}));
  EXPECT_EQ(ba.trace.switch_sequence(), (std::vector<NodeId>{b, a}));
  EXPECT_EQ(ab.sigma, ba.sigma);
  auto hk = solve_hoffman_karp(g, s0);
  EXPECT_EQ(hk.trace.switch_count(), 1u);
  EXPECT_EQ(hk.trace.steps[0].switched, (std::vector<NodeId>{a, b}));
}

TEST(Bland, RejectsUnsupportedInput) {
  Ssg g = fig2_game();
  EXPECT_THROW(solve_bland(g, fig2_sigma(g, "r1"), {}), Error);
  Ssg wide = two_gadgets();
  wide.set_successors(wide.id("a"), {wide.id("a_lo"), wide.id("a_hi"), wide.id("b_lo")});
  try {
    solve_bland(wide, first_successor_strategy<Player::Max>(wide), {0, 1});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
    EXPECT_NE(std::string(e.what()).find("max-binary"), std::string::npos);
  }
  Ssg loop;
  NodeId x = loop.add_max("x");
  NodeId r = loop.add_ran("r");
  NodeId s = loop.add_sink(q(1), "s");
  loop.set_successors(x, {x, r});
  loop.set_distribution(r, {{s, q(1)}});
  StrategyMax go(loop.size());
  go.set(x, r);
  EXPECT_THROW(solve_bland(loop, go, {x}), Error);
  BlandOptions lax;
  lax.require_stopping_game = false;
  auto res = solve_bland(loop, go, {x}, lax);
  EXPECT_TRUE(res.trace.warning.has_value());
  StrategyMax stay(loop.size());
  stay.set(x, x);
  EXPECT_THROW(solve_bland(loop, stay, {x}, lax), Error);
}

TEST(OptPartial, FrozenSets) {
  Ssg g = fig2_game();
  const NodeOrder theta{g.id("M")};
  auto s0 = fig2_sigma(g, "r1");
  auto all = opt_partial(g, s0, {g.id("M")}, theta);
  EXPECT_EQ(all.sigma, s0);
  EXPECT_EQ(all.trace.switch_count(), 0u);
  EXPECT_EQ(opt_partial(g, s0, {}, theta).sigma, solve_bland(g, s0, theta).sigma);
  auto rec = opt_partial_recursive(g, s0, {g.id("M")}, theta);
  EXPECT_EQ(rec.sigma, s0);
  EXPECT_EQ(rec.trace.switch_count(), 0u);
  EXPECT_THROW(opt_partial(g, s0, {g.id("m")}, theta), Error);
}

TEST(OptPartial, RecursiveMatchesIterative) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 1 + static_cast<int>(seed % 5);
    Ssg g = testing::random_stopping_binary_game(seed, n);
    auto theta = sample_node_order(g, seed);
    std::mt19937_64 rng(seed);
    auto s0 = testing::random_strategy<Player::Max>(g, rng);
    std::set<NodeId> frozen;
    for (NodeId x : g.max_nodes())
      if (rng() % 3 == 0) frozen.insert(x);
    auto it = opt_partial(g, s0, frozen, theta);
    auto rec = opt_partial_recursive(g, s0, frozen, theta);
    EXPECT_EQ(it.trace.switch_sequence(), rec.trace.switch_sequence()) << seed;
    EXPECT_EQ(it.sigma, rec.sigma) << seed;
    for (NodeId x : rec.trace.switch_sequence()) EXPECT_FALSE(frozen.count(x)) << seed;
    for (NodeId x : frozen) EXPECT_EQ(rec.sigma[x], s0[x]);
  }
}

TEST(Bland, MatchesOracleAndHoffmanKarp) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 1 + static_cast<int>(seed % 6);
    Ssg g = testing::random_stopping_binary_game(seed + 300, n);
    ASSERT_TRUE(is_stopping_game(g));
    ASSERT_TRUE(is_max_binary(g));
    auto s0 = first_successor_strategy<Player::Max>(g);
    auto bland = solve_bland(g, s0, sample_node_order(g, seed));
    auto oracle = solve_bruteforce(g).values;
    EXPECT_EQ(best_response_min(g, bland.sigma).values, oracle) << seed;
    auto hk = solve_hoffman_karp(g, s0);
    EXPECT_EQ(best_response_min(g, hk.sigma).values, oracle) << seed;
    EXPECT_TRUE(switchable_nodes(g, bland.sigma).empty());
    ValueVector prev = bland.trace.initial_values;
    std::set<StrategyMax> seen{bland.trace.initial};
    for (const auto& st : bland.trace.steps) {
      EXPECT_TRUE(strictly_improves(prev, st.values));
      EXPECT_TRUE(seen.insert(st.sigma).second);
      prev = st.values;
    }
  }
}

TEST(HoffmanKarp, Fig2OneRound) {
  Ssg g = fig2_game();
  auto r = solve_hoffman_karp(g, fig2_sigma(g, "r1"));
  EXPECT_EQ(r.trace.switch_count(), 1u);
  EXPECT_EQ(r.sigma[g.id("M")], g.id("r2"));
  EXPECT_EQ(solve_hoffman_karp(g, r.sigma).trace.switch_count(), 0u);
}

TEST(NodeOrder, Sampling) {
  EXPECT_EQ(sample_node_order(1, 3), NodeOrder{0});
  Ssg g = testing::random_stopping_binary_game(1, 5);
  auto a = sample_node_order(g, 1);
  EXPECT_TRUE(is_node_order(g, a));
  EXPECT_EQ(a, sample_node_order(g, 1));
}

}  // namespace
}  // namespace ssg
