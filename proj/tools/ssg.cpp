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

// ssg: command-line front end for the solvers.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ssg/io.hpp"
#include "ssg/ssg.hpp"

namespace {

using namespace ssg;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return 1;
    case ErrorKind::Precondition: return 2;
    case ErrorKind::Guard: return 3;
    case ErrorKind::Internal: return 4;
  }
  return 4;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("SSG_SEED");
  if (!env || !*env) return 0;
  std::string s(env);
  if (s.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorKind::Parse, "SSG_SEED must be a non-negative integer, got '" + s + "'");
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "SSG_SEED is out of range");
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Precondition, "cannot write " + path);
  out << text;
}

Json value_map(const Ssg& g, const ValueVector& v) {
  Json o = Json::object();
  for (NodeId x = 0; x < static_cast<NodeId>(g.size()); ++x) o[g.name(x)] = to_string(v[x]);
  return o;
}

Json approx_map(const Ssg& g, const ValueVector& v) {
  Json o = Json::object();
  for (NodeId x = 0; x < static_cast<NodeId>(g.size()); ++x) o[g.name(x)] = to_double(v[x]);
  return o;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
  std::string game_path;
  std::string algorithm = "pivot";
  std::optional<std::uint64_t> seed;
  std::string t0;
  std::string sigma0;
  std::string epsilon;
  std::string trace_path;
  std::string replay_path;
};

struct Trace {
  Json header;
  std::vector<Json> records;

  std::string text() const {
    std::string out = header.dump() + '\n';
    for (const auto& r : records) out += r.dump() + '\n';
    return out;
  }
};

int cmd_solve(SolveOptions o) {
  Ssg original = load_game(o.game_path);
  std::optional<TraceFile> replay;
  if (!o.replay_path.empty()) {
    replay = parse_trace(read_file(o.replay_path));
    const Json& h = replay->header;
    if (h.value("command", "") != "solve") throw Error(ErrorKind::Parse, "replay trace was not written by solve");
    if (h.value("game_hash", "") != game_hash(original))
      throw Error(ErrorKind::Precondition, "replay trace belongs to a different game");
    o.algorithm = h.value("algorithm", "");
    o.seed = h.value("seed", std::uint64_t{0});
    o.epsilon = h.value("epsilon", "");
  }
  const std::uint64_t seed = o.seed ? *o.seed : default_seed();

  require_valid(original);
  Ssg game = original;
  if (!o.epsilon.empty()) game = to_canonical_form(original, parse_rational(o.epsilon)).game;

  Trace trace;
  trace.header["record"] = "header";
  trace.header["command"] = "solve";
  trace.header["algorithm"] = o.algorithm;
  trace.header["seed"] = seed;
  trace.header["game_hash"] = game_hash(original);
  if (!o.epsilon.empty()) trace.header["epsilon"] = to_string(parse_rational(o.epsilon));

  Json summary;
  summary["algorithm"] = o.algorithm;
  summary["seed"] = seed;
  summary["game_hash"] = game_hash(original);
  if (!o.epsilon.empty()) summary["note"] = "values are for the epsilon-perturbed canonical form";

  ValueVector values;
  StrategyMax sigma(game.size());
  StrategyMin tau(game.size());
  const int k = static_cast<int>(game.ran_nodes().size());

  if (o.algorithm == "pivot") {
    TotalOrder t0 = TotalOrder::identity(k);
    PairOrder theta;
    if (replay) {
      t0 = parse_total_order(replay->header.at("t0").get<std::string>());
      theta = parse_pair_order(replay->header.at("theta").get<std::string>());
    } else {
      if (!o.t0.empty()) t0 = parse_total_order(o.t0);
      theta = sample_pair_order(k, seed);
    }
    trace.header["t0"] = to_string(t0);
    trace.header["theta"] = to_string(theta);
    auto r = solve_iterative(game, t0, theta, seed);
    for (std::size_t s = 0; s < r.trace.steps.size(); ++s) trace.records.push_back(pivot_step_record(game, r.trace.steps[s], s));
    values = r.values;
    sigma = r.sigma;
    tau = r.tau;
    summary["order"] = to_string(r.order);
    summary["steps"] = r.trace.steps.size();
    summary["pivots"] = r.trace.pivot_count();
  } else if (o.algorithm == "ludwig" || o.algorithm == "hoffman-karp") {
    StrategyMax s0 = first_successor_strategy<Player::Max>(game);
    NodeOrder order = sample_node_order(game, seed);
    if (replay) {
      s0 = strategy_from_object<Player::Max>(game, replay->header.at("sigma0"));
      if (o.algorithm == "ludwig") order = node_order_from_json(game, replay->header.at("node_order"));
    } else if (!o.sigma0.empty()) {
      s0 = parse_sigma_assignments(game, o.sigma0);
    }
    trace.header["sigma0"] = strategy_object(game, s0);
    BlandOptions opt;
    opt.seed = seed;
    LudwigResult r;
    if (o.algorithm == "ludwig") {
      trace.header["node_order"] = node_order_json(game, order);
      r = solve_bland(game, s0, order, opt);
    } else {
      r = solve_hoffman_karp(game, s0, opt);
    }
    for (std::size_t s = 0; s < r.trace.steps.size(); ++s) trace.records.push_back(switch_step_record(game, r.trace.steps[s], s));
    auto br = best_response_min(game, r.sigma);
    values = br.values;
    sigma = r.sigma;
    tau = br.tau;
    summary["steps"] = r.trace.steps.size();
    summary["switches"] = r.trace.switch_sequence().size();
  } else if (o.algorithm == "oracle") {
    auto r = solve_bruteforce(game);
    values = r.values;
    sigma = r.witness_sigma;
    tau = r.witness_tau;
    summary["strategies_enumerated"] = r.strategies_enumerated;
  } else if (o.algorithm == "order-enum") {
    auto r = solve_order_enumeration(game);
    values = r.result.values;
    sigma = r.result.witness_sigma;
    tau = r.result.witness_tau;
    summary["order"] = to_string(r.order);
    summary["orders_tried"] = r.result.strategies_enumerated;
  } else {
    throw Error(ErrorKind::Parse, "unknown algorithm '" + o.algorithm + "'");
  }

  Json result;
  result["record"] = "result";
  result["values"] = rational_array(values);
  result["sigma"] = strategy_object(game, sigma);
  result["tau"] = strategy_object(game, tau);
  trace.records.push_back(result);

  summary["values"] = value_map(game, values);
  summary["approx"] = approx_map(game, values);
  summary["sigma"] = strategy_object(game, sigma);
  summary["tau"] = strategy_object(game, tau);
  if (!o.trace_path.empty()) write_text(o.trace_path, trace.text());
  std::cout << summary.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
  GenParams params;
  std::string min_sink_mass = "1/10";
  std::string sink_min = "0";
  std::string sink_max = "1";
  std::optional<std::uint64_t> seed;
  bool no_cf = false;
  std::string fixture;
  std::string output;
};

int cmd_gen(GenOptions o) {
  if (!o.fixture.empty()) {
    if (o.fixture != "fig2") throw Error(ErrorKind::Precondition, "unknown fixture '" + o.fixture + "'");
    write_text(o.output, game_to_text(fig2_game()));
    return 0;
  }
  GenParams p = o.params;
  p.seed = o.seed ? *o.seed : default_seed();
  p.min_sink_mass = parse_rational(o.min_sink_mass);
  p.sink_min = parse_rational(o.sink_min);
  p.sink_max = parse_rational(o.sink_max);
  p.canonical = !o.no_cf && p.k > 0;
  write_text(o.output, game_to_text(generate(p)));
  return 0;
}

// ---------------------------------------------------------------------------
// check

int cmd_check(const std::string& path) {
  Ssg g = load_game(path);
  Json report;
  report["game_hash"] = game_hash(g);
  report["nodes"] = g.size();
  report["random_nodes"] = g.ran_nodes().size();
  auto violations = validate(g);
  report["valid"] = violations.empty();
  Json vs = Json::array();
  for (const auto& v : violations) {
    Json j;
    j["rule"] = v.rule;
    j["node"] = v.node >= 0 && v.node < static_cast<NodeId>(g.size()) ? Json(g.name(v.node)) : Json(v.node);
    j["message"] = v.message;
    vs.push_back(j);
  }
  report["violations"] = vs;
  if (violations.empty()) {
    Json neg = Json::array();
    for (NodeId s : nonstandard_sinks(g)) neg.push_back(g.name(s));
    report["sinks_outside_0_1"] = neg;
    auto cf = check_canonical_form(g);
    report["canonical_form"] = cf.canonical;
    if (cf.sink_arc) report["sink_arc"] = Json::array({g.name(cf.sink_arc->first), g.name(cf.sink_arc->second)});
    if (!cf.avoid_set.empty()) {
      Json a = Json::array();
      for (NodeId x : cf.avoid_set) a.push_back(g.name(x));
      report["avoid_set"] = a;
    }
    report["max_binary"] = is_max_binary(g);
    report["stopping_game"] = is_stopping_game(g);
  }
  std::cout << report.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// transform

int cmd_transform(const std::string& path, const std::string& to, const std::string& epsilon,
                  const std::string& output) {
  Ssg g = load_game(path);
  require_valid(g);
  Ssg out = g;
  if (to == "cf" || to == "both") out = to_canonical_form(out, parse_rational(epsilon)).game;
  if (to == "binary" || to == "both") out = to_max_binary(out).game;
  if (to != "cf" && to != "binary" && to != "both") throw Error(ErrorKind::Parse, "unknown transform '" + to + "'");
  write_text(output, game_to_text(out));
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::string algorithm = "pivot";
  int from = 2;
  int to = 6;
  int games = 3;
  int runs = 100;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;
};

struct BenchTask {
  int size;
  std::uint64_t game_seed;
  std::uint64_t run_seed;
  std::size_t steps = 0;
};

int cmd_bench(BenchOptions o) {
  if (o.algorithm != "pivot" && o.algorithm != "ludwig")
    throw Error(ErrorKind::Parse, "bench supports --algorithm pivot or ludwig");
  if (o.from < 1 || o.to < o.from || o.games < 1 || o.runs < 1)
    throw Error(ErrorKind::Precondition, "bench needs 1 <= from <= to, games >= 1, runs >= 1");
  const std::uint64_t base = o.seed ? *o.seed : default_seed();
  const bool pivot = o.algorithm == "pivot";

  auto make_game = [&](int size, std::uint64_t seed) {
    GenParams p;
    p.seed = seed;
    p.max_outdegree = 3;
    if (pivot) {
      p.n_max = 3;
      p.n_min = 3;
      p.k = size;
    } else {
      p.n_max = size;
      p.n_min = 2;
      p.k = 3;
      p.n_sinks = 3;
      p.min_sink_mass = Rational(1, 8);
      p.max_binary = true;
      p.stopping = true;
    }
    return generate(p);
  };

  std::vector<BenchTask> tasks;
  for (int size = o.from; size <= o.to; ++size)
    for (int g = 0; g < o.games; ++g)
      for (int r = 0; r < o.runs; ++r)
        tasks.push_back({size, base + 1000003ULL * static_cast<std::uint64_t>(size) + static_cast<std::uint64_t>(g),
                         base + static_cast<std::uint64_t>(r)});

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::optional<Error> first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t a = next++; a < tasks.size() && !failed; a = next++) {
      BenchTask& t = tasks[a];
      try {
        Ssg g = make_game(t.size, t.game_seed);
        if (pivot) {
          const int k = static_cast<int>(g.ran_nodes().size());
          t.steps = solve_iterative(g, TotalOrder::identity(k), sample_pair_order(k, t.run_seed), t.run_seed)
                        .trace.pivot_count();
        } else {
          t.steps = solve_bland(g, first_successor_strategy<Player::Max>(g), sample_node_order(g, t.run_seed))
                        .trace.switch_count();
        }
      } catch (const Error& e) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = e;
        failed = true;
      }
    }
  };
  unsigned n_threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) throw *first_error;

  for (int size = o.from; size <= o.to; ++size) {
    double total = 0;
    std::size_t worst = 0, count = 0;
    for (const auto& t : tasks) {
      if (t.size != size) continue;
      total += static_cast<double>(t.steps);
      worst = std::max(worst, t.steps);
      ++count;
    }
    const double mean = total / static_cast<double>(count);
    const double bound = pivot ? std::exp(std::sqrt(2.0) * size) : std::exp(2 * std::sqrt(static_cast<double>(size)));
    Json row;
    row["algorithm"] = o.algorithm;
    row[pivot ? "k" : "n"] = size;
    row["games"] = o.games;
    row["runs_per_game"] = o.runs;
    row["mean_steps"] = mean;
    row["max_steps"] = worst;
    row["bound"] = bound;
    row["exceeds_bound"] = mean > bound;
    std::cout << row.dump() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simple stochastic game solvers"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  std::uint64_t solve_seed = 0;
  auto* solve = app.add_subcommand("solve", "solve a game file");
  solve->add_option("game", solve_opt.game_path, "game file")->required();
  solve->add_option("--algorithm", solve_opt.algorithm, "pivot | ludwig | hoffman-karp | oracle | order-enum");
  auto* solve_seed_opt = solve->add_option("--seed", solve_seed, "seed for the pair order or node order (default $SSG_SEED or 0)");
  solve->add_option("--t0", solve_opt.t0, "initial order for pivot, e.g. \"[3,1,2]\"");
  solve->add_option("--sigma0", solve_opt.sigma0, "initial MAX strategy for ludwig/hoffman-karp, e.g. \"M=r1\"");
  solve->add_option("--epsilon", solve_opt.epsilon, "solve the canonical form perturbed by this epsilon");
  solve->add_option("--trace", solve_opt.trace_path, "write the step trace to this file");
  solve->add_option("--replay", solve_opt.replay_path, "rerun the choices recorded in a trace file");

  GenOptions gen_opt;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "generate a random game");
  gen->add_option("--n-max", gen_opt.params.n_max, "MAX nodes");
  gen->add_option("--n-min", gen_opt.params.n_min, "MIN nodes");
  gen->add_option("--k", gen_opt.params.k, "random nodes");
  gen->add_option("--sinks", gen_opt.params.n_sinks, "sinks");
  gen->add_option("--outdeg", gen_opt.params.max_outdegree, "maximum outdegree");
  gen->add_option("--denominator", gen_opt.params.prob_denominator_bound, "probability denominator");
  gen->add_option("--min-sink-mass", gen_opt.min_sink_mass, "sink probability of every random node");
  gen->add_option("--sink-min", gen_opt.sink_min, "smallest sink value");
  gen->add_option("--sink-max", gen_opt.sink_max, "largest sink value");
  gen->add_flag("--max-binary", gen_opt.params.max_binary, "MAX nodes get outdegree 2");
  gen->add_flag("--stopping", gen_opt.params.stopping, "every strategy pair stops");
  gen->add_flag("--no-cf", gen_opt.no_cf, "do not wire the game in canonical form");
  auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "generator seed (default $SSG_SEED or 0)");
  gen->add_option("--fixture", gen_opt.fixture, "write a built-in game instead (fig2)");
  gen->add_option("-o,--output", gen_opt.output, "output file (default stdout)");

  std::string check_path;
  auto* check = app.add_subcommand("check", "report the properties of a game file");
  check->add_option("game", check_path, "game file")->required();

  std::string tr_path, tr_to = "cf", tr_eps = "1/1000", tr_out;
  auto* transform = app.add_subcommand("transform", "rewrite a game into canonical form or max-binary form");
  transform->add_option("game", tr_path, "game file")->required();
  transform->add_option("--to", tr_to, "cf | binary | both");
  transform->add_option("--epsilon", tr_eps, "stopping perturbation for cf (default 1/1000)");
  transform->add_option("-o,--output", tr_out, "output file (default stdout)");

  BenchOptions bench_opt;
  std::uint64_t bench_seed = 0;
  auto* bench = app.add_subcommand("bench", "mean step counts over seeded runs");
  bench->add_option("--algorithm", bench_opt.algorithm, "pivot | ludwig");
  bench->add_option("--from", bench_opt.from, "smallest k (pivot) or n (ludwig)");
  bench->add_option("--to", bench_opt.to, "largest k or n");
  bench->add_option("--games", bench_opt.games, "games per size");
  bench->add_option("--runs", bench_opt.runs, "seeded runs per game");
  bench->add_option("--threads", bench_opt.threads, "worker threads (default: hardware)");
  auto* bench_seed_opt = bench->add_option("--seed", bench_seed, "base seed (default $SSG_SEED or 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*solve) {
      if (*solve_seed_opt) solve_opt.seed = solve_seed;
      return cmd_solve(solve_opt);
    }
    if (*gen) {
      if (*gen_seed_opt) gen_opt.seed = gen_seed;
      return cmd_gen(gen_opt);
    }
    if (*check) return cmd_check(check_path);
    if (*transform) return cmd_transform(tr_path, tr_to, tr_eps, tr_out);
    if (*bench) {
      if (*bench_seed_opt) bench_opt.seed = bench_seed;
      return cmd_bench(bench_opt);
    }
  } catch (const Error& e) {
    ssg::Json err;
    err["error"] = to_string(e.kind());
    err["reason"] = e.what();
    std::cerr << err.dump() << '\n';
    return exit_code(e.kind());
  }
  return 0;
}
