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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "support.hpp"

namespace {

using namespace ssg;
using ssg::testing::q;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::vector<int> one_based(const std::vector<int>& perm) {
  std::vector<int> out;
  for (int x : perm) out.push_back(x + 1);
  return out;
}

// ---------------------------------------------------------------------------

Verdict fig2_golden_run() {
  Verdict out;
  const auto start = Clock::now();
  Ssg g = fig2_game();
  const NodeId M = g.id("M"), m = g.id("m");
  const std::vector<std::vector<int>> orders = {{3, 1, 2}, {1, 3, 2}, {1, 2, 3}};
  const std::vector<ValueVector> ran = {{q(1, 10), q(1, 2), q(9, 50)},
                                        {q(23, 50), q(1, 2), q(27, 50)},
                                        {q(23, 50), q(1, 2), q(27, 50)}};
  const std::vector<ValueVector> control = {{q(1, 10), q(1, 2), q(1, 10)},
                                            {q(23, 50), q(1, 2), q(1, 2)},
                                            {q(23, 50), q(1, 2), q(27, 50)}};
  const std::vector<std::pair<const char*, const char*>> forcing = {{"r2", "r3"}, {"r2", "r3"}, {"r2", "M"}};
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto r = solve_iterative(g, TotalOrder({3, 1, 2}), sample_pair_order(3, seed), seed);
    if (r.trace.steps.size() != 3) {
      out.fail("seed " + std::to_string(seed) + ": " + std::to_string(r.trace.steps.size()) + " steps");
      continue;
    }
    for (std::size_t s = 0; s < 3; ++s) {
      const auto& st = r.trace.steps[s];
      if (st.order != TotalOrder(orders[s])) out.fail("order at step " + std::to_string(s));
      if (st.ran != ran[s]) out.fail("ran values at step " + std::to_string(s));
      if (st.control != control[s]) out.fail("control values at step " + std::to_string(s));
      if (st.sigma[M] != g.id(forcing[s].first) || st.tau[m] != g.id(forcing[s].second))
        out.fail("forcing strategies at step " + std::to_string(s));
    }
  }
  const double t = seconds_since(start) / 6;
  if (t >= 1.0) out.fail("run took " + std::to_string(t) + " s");
  if (out.pass) out.detail = "3 steps, exact table, " + std::to_string(t * 1000) + " ms per run";
  return out;
}

Verdict pivot_goldens() {
  Verdict out;
  TotalOrder t({7, 2, 4, 1, 3, 6, 5});
  std::vector<Rational> v(7);
  v[6] = v[1] = q(0);
  v[3] = v[0] = v[2] = q(1, 2);
  v[5] = v[4] = q(1);
  auto part = value_intervals(t, v);
  if (pivot(t, 4, part) != TotalOrder({7, 2, 1, 3, 4, 6, 5})) out.fail("pivot on 4");
  PairOrder theta{{2, 5}, {7, 6}, {1, 4}, {2, 7}};
  std::set<std::pair<int, int>> used{{2, 5}, {6, 7}, {1, 4}, {2, 7}};
  for (int a = 1; a <= 7; ++a)
    for (int b = a + 1; b <= 7; ++b)
      if (!used.count({a, b})) theta.push_back({a, b});
  auto chosen = select_pivot(t, part, {7}, theta);
  if (chosen != 7) out.fail("select_pivot did not return 7");
  if (pivot(t, 7, part) != TotalOrder({2, 7, 4, 1, 3, 6, 5})) out.fail("pivot on 7");
  if (out.pass) out.detail = "[7,2,1,3,4,6,5]; pivot 7 -> [2,7,4,1,3,6,5]";
  return out;
}

// Shared by the oracle, monotonicity and control-order checks.
struct CfRun {
  Ssg game;
  PivotResult result;
};

std::vector<CfRun> cf_runs;

Verdict oracle_equivalence() {
  Verdict out;
  const auto start = Clock::now();
  std::size_t by_k[5] = {0, 0, 0, 0, 0};
  for (std::uint64_t seed = 0; seed < 240; ++seed) {
    Ssg g = testing::random_cf_game(seed, 3, 4, 16);
    const int k = static_cast<int>(g.ran_nodes().size());
    auto theta = sample_pair_order(k, seed);
    TotalOrder t0(one_based(sample_permutation(k, seed + 1)));
    auto r = solve_iterative(g, t0, theta, seed);
    auto brute = solve_bruteforce(g).values;
    auto orders = solve_order_enumeration(g).result.values;
    if (r.values != brute) out.fail("seed " + std::to_string(seed) + ": pivot solver differs from brute force");
    if (orders != brute) out.fail("seed " + std::to_string(seed) + ": order enumeration differs from brute force");
    ++by_k[k];
    cf_runs.push_back({g, std::move(r)});
  }
  const double t = seconds_since(start);
  if (t >= 300) out.fail("took " + std::to_string(t) + " s");
  if (out.pass) {
    std::ostringstream os;
    os << cf_runs.size() << " games (k=1..4: " << by_k[1] << "/" << by_k[2] << "/" << by_k[3] << "/" << by_k[4]
       << "), " << static_cast<int>(t) << " s";
    out.detail = os.str();
  }
  return out;
}

Verdict monotone_steps() {
  Verdict out;
  std::size_t steps = 0;
  for (std::size_t a = 0; a < cf_runs.size(); ++a) {
    const auto& tr = cf_runs[a].result.trace;
    std::set<TotalOrder> seen;
    for (std::size_t s = 0; s < tr.steps.size(); ++s) {
      ++steps;
      if (!seen.insert(tr.steps[s].order).second) out.fail("run " + std::to_string(a) + " repeats an order");
      if (s > 0 && !strictly_improves(tr.steps[s - 1].full, tr.steps[s].full))
        out.fail("run " + std::to_string(a) + " step " + std::to_string(s) + " does not improve");
    }
  }
  if (cf_runs.empty()) out.fail("no runs to inspect");
  if (out.pass) out.detail = std::to_string(steps) + " steps, 0 violations";
  return out;
}

Verdict order_properties() {
  Verdict out;
  std::size_t orders = 0, pairs = 0;
  for (const auto& run : cf_runs) {
    for (const auto& st : run.result.trace.steps) {
      ++orders;
      for (int pos = 1; pos < st.order.k(); ++pos)
        if (st.control[st.order.at(pos - 1) - 1] > st.control[st.order.at(pos) - 1])
          out.fail("control values decrease along " + to_string(st.order));
    }
  }
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Ssg g = testing::random_cf_game(seed + 10000, 2, 3, 16);
    const int k = static_cast<int>(g.ran_nodes().size());
    std::mt19937_64 rng(seed);
    PretotalOrder p(k);
    for (auto [i, j] : pairs_of(TotalOrder(one_based(sample_permutation(k, seed)))).pairs())
      if (rng() % 2) p = p.add(i, j);
    auto v = val_star_pretotal(g, p);
    for (auto [i, j] : p.pairs()) {
      ++pairs;
      if (v[g.size() + i - 1] > v[g.size() + j - 1])
        out.fail("seed " + std::to_string(seed) + ": Val_*[p] decreases on (" + std::to_string(i) + "," +
                 std::to_string(j) + ")");
    }
  }
  if (out.pass)
    out.detail = std::to_string(orders) + " orders, 50 pretotal orders with " + std::to_string(pairs) + " pairs";
  return out;
}

Verdict iterative_equals_recursive() {
  Verdict out;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Ssg g = testing::random_cf_game(seed + 20000, 3, 4, 16);
    const int k = static_cast<int>(g.ran_nodes().size());
    TotalOrder t0(one_based(sample_permutation(k, seed)));
    auto theta = sample_pair_order(k, seed + 1);
    auto it = solve_iterative(g, t0, theta, seed);
    auto rec = solve_recursive(g, PretotalOrder(k), t0, theta, seed);
    if (it.trace.pivots() == rec.trace.pivots() && it.order == rec.order) continue;
    std::ostringstream os;
    os << "seed " << seed << ": iterative " << to_string(it.order) << " vs recursive " << to_string(rec.order);
    for (std::size_t s = 0; s < it.trace.steps.size(); ++s) {
      const auto& st = it.trace.steps[s];
      os << "; step " << s << " " << to_string(st.order) << " "
         << to_string(peel_until_pivot(st.order, st.partition, st.constrained, theta));
    }
    out.fail(os.str());
  }
  if (out.pass) out.detail = "50 triples, 0 divergences";
  return out;
}

Verdict ludwig_suite() {
  Verdict out;
  const auto start = Clock::now();
  std::size_t games = 0, switches = 0;
  for (std::uint64_t seed = 0; seed < 216; ++seed) {
    const int n = 1 + static_cast<int>(seed % 8);
    Ssg g = testing::random_stopping_binary_game(seed + 30000, n);
    ++games;
    std::mt19937_64 rng(seed);
    auto s0 = testing::random_strategy<Player::Max>(g, rng);
    auto theta = sample_node_order(g, seed);
    BlandOptions opt;
    opt.seed = seed;
    auto bland = solve_bland(g, s0, theta, opt);
    if (best_response_min(g, bland.sigma).values != solve_bruteforce(g).values)
      out.fail("seed " + std::to_string(seed) + ": Bland values differ from the oracle");
    ValueVector prev = bland.trace.initial_values;
    for (const auto& st : bland.trace.steps) {
      ++switches;
      if (!strictly_improves(prev, st.values)) out.fail("seed " + std::to_string(seed) + ": non-improving switch");
      prev = st.values;
    }
    std::set<NodeId> frozen;
    for (NodeId x : g.max_nodes())
      if (rng() % 3 == 0) frozen.insert(x);
    auto it = opt_partial(g, s0, frozen, theta, opt);
    auto rec = opt_partial_recursive(g, s0, frozen, theta, opt);
    if (it.trace.switch_sequence() != rec.trace.switch_sequence() || it.sigma != rec.sigma)
      out.fail("seed " + std::to_string(seed) + ": opt_partial and its recursive form disagree");
    for (const auto* tr : {&it.trace, &rec.trace}) {
      ValueVector before = tr->initial_values;
      for (const auto& st : tr->steps) {
        if (!strictly_improves(before, st.values))
          out.fail("seed " + std::to_string(seed) + ": non-improving partial switch");
        before = st.values;
      }
    }
  }
  const double t = seconds_since(start);
  if (t >= 300) out.fail("took " + std::to_string(t) + " s");
  if (out.pass)
    out.detail = std::to_string(games) + " games, " + std::to_string(switches) + " switches, " +
                 std::to_string(static_cast<int>(t)) + " s";
  return out;
}

Verdict bound_sanity() {
  Verdict out;
  const auto start = Clock::now();
  std::ostringstream os;
  os << "pivots";
  for (int k = 2; k <= 6; ++k) {
    double factorial = 1;
    for (int i = 2; i <= k; ++i) factorial *= i;
    const double ceiling = std::min(std::exp(std::sqrt(2.0) * k), factorial);
    double worst = 0;
    for (std::uint64_t game = 0; game < 3; ++game) {
      GenParams p;
      p.n_max = 3;
      p.n_min = 3;
      p.k = k;
      p.max_outdegree = 3;
      p.seed = 40000 + 10 * k + game;
      Ssg g = generate(p);
      double total = 0;
      const int runs = 100;
      for (std::uint64_t s = 0; s < runs; ++s)
        total += static_cast<double>(solve_iterative(g, TotalOrder::identity(k), sample_pair_order(k, s), s)
                                         .trace.pivot_count());
      worst = std::max(worst, total / runs);
    }
    if (worst > ceiling) out.fail("k=" + std::to_string(k) + " mean pivots " + std::to_string(worst));
    os << " k" << k << "=" << worst;
  }
  os << "; switches";
  for (int n = 2; n <= 10; ++n) {
    const double ceiling = std::exp(2 * std::sqrt(static_cast<double>(n)));
    double worst = 0;
    for (std::uint64_t game = 0; game < 2; ++game) {
      Ssg g = testing::random_stopping_binary_game(50000 + 10 * n + game, n, 3, 4);
      auto s0 = first_successor_strategy<Player::Max>(g);
      double total = 0;
      const int runs = 100;
      for (std::uint64_t s = 0; s < runs; ++s)
        total += static_cast<double>(solve_bland(g, s0, sample_node_order(g, s)).trace.switch_count());
      worst = std::max(worst, total / runs);
    }
    if (worst > ceiling) out.fail("n=" + std::to_string(n) + " mean switches " + std::to_string(worst));
    os << " n" << n << "=" << worst;
  }
  const double t = seconds_since(start);
  if (t >= 600) out.fail("took " + std::to_string(t) + " s");
  if (out.pass) out.detail = os.str();
  return out;
}

Verdict exactness() {
  Verdict out;
  std::size_t systems = 0;
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Ssg g = testing::random_cf_game(seed + 60000, 3, 4, 16);
    auto sigma = testing::random_strategy<Player::Max>(g, rng);
    auto tau = testing::random_strategy<Player::Min>(g, rng);
    auto ps = pair_system(g, sigma, tau);
    auto x = solve(ps.system);
    ++systems;
    for (const auto& r : residual(ps.system, x))
      if (r != 0) out.fail("seed " + std::to_string(seed) + ": nonzero residual");
    auto exact = evaluate_pair(g, sigma, tau);
    auto approx = testing::power_iteration(g, sigma, tau, 10000);
    for (std::size_t v = 0; v < g.size(); ++v)
      if (std::fabs(to_double(exact[v]) - approx[v]) > 1e-6)
        out.fail("seed " + std::to_string(seed) + ": power iteration differs at node " + std::to_string(v));
  }
  // systems solved inside the solvers
  for (std::size_t a = 0; a < cf_runs.size() && a < 100; ++a) {
    const auto& run = cf_runs[a];
    auto ps = pair_system(run.game, run.result.sigma, run.result.tau);
    ++systems;
    for (const auto& r : residual(ps.system, solve(ps.system)))
      if (r != 0) out.fail("solver system with nonzero residual");
  }
  if (out.pass) out.detail = std::to_string(systems) + " exact solves, 50 power-iteration checks";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"AC1", fig2_golden_run},     {"AC2", pivot_goldens},
      {"AC3", oracle_equivalence},  {"AC4", monotone_steps},
      {"AC5", order_properties},    {"AC6", iterative_equals_recursive},
      {"AC7", ludwig_suite},        {"AC8", bound_sanity},
      {"AC9", exactness},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s %s %s\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
