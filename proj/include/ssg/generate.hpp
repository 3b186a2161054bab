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
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ssg/error.hpp"
#include "ssg/game.hpp"
#include "ssg/orders.hpp"
#include "ssg/rational.hpp"

namespace ssg {

struct GenParams {
  int n_max = 2;
  int n_min = 2;
  int k = 2;
  int n_sinks = 2;
  int max_outdegree = 2;
  int prob_denominator_bound = 16;
  Rational sink_min = 0;
  Rational sink_max = 1;
  Rational min_sink_mass = Rational(1, 10);
  std::uint64_t seed = 0;
  // Every MAX/MIN node can be forced onto a RAN node (no arcs into sinks).
  // Together with min_sink_mass > 0 this gives canonical form.
  bool canonical = true;
  // MAX nodes have outdegree exactly 2.
  bool max_binary = false;
  // Every strategy pair stops: MAX arcs are wired like MIN arcs.
  bool stopping = false;
};

inline void check_params(const GenParams& p) {
  auto bad = [](const std::string& why) { throw Error(ErrorKind::Precondition, "invalid generator parameters: " + why); };
  if (p.n_max < 0 || p.n_min < 0 || p.k < 0 || p.n_sinks < 0) bad("negative count");
  if (p.n_sinks < 1) bad("at least one sink is needed");
  if (p.max_outdegree < 1) bad("max_outdegree must be positive");
  if (p.prob_denominator_bound < 1) bad("prob_denominator_bound must be positive");
  if (p.sink_min > p.sink_max) bad("empty sink value range");
  if (sgn(p.min_sink_mass) < 0 || p.min_sink_mass > 1) bad("min_sink_mass must lie in [0, 1]");
  if (p.canonical && p.k == 0 && p.n_max + p.n_min > 0) bad("canonical wiring needs a random node");
  if (p.stopping && (!p.canonical || sgn(p.min_sink_mass) <= 0)) bad("stopping needs canonical wiring and sink mass");
}

namespace detail {

class GenRng {
 public:
  explicit GenRng(std::uint64_t seed) : rng_(seed) {}
  // uniform in [0, n)
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform_below(rng_, n)); }
  // uniform in [lo, hi]
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }

  // up to `count` distinct elements of pool, in draw order
  std::vector<NodeId> pick(std::vector<NodeId> pool, std::size_t count) {
    std::vector<NodeId> out;
    while (out.size() < count && !pool.empty()) {
      std::size_t a = below(pool.size());
      out.push_back(pool[a]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(a));
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace detail

/**
 * Random game, a pure function of params. Layout: MAX nodes, MIN nodes, RAN
 * nodes, sinks. Under canonical wiring the MAX/MIN nodes get a random rank;
 * MIN nodes (and MAX nodes when stopping is set) only point to RAN nodes or
 * lower-ranked nodes, other MAX nodes need one such arc.
 */
inline Ssg generate(const GenParams& p) {
  check_params(p);
  detail::GenRng rng(p.seed);
  Ssg g;
  const int nc = p.n_max + p.n_min;
  for (int i = 0; i < p.n_max; ++i) g.add_max("max" + std::to_string(i));
  for (int i = 0; i < p.n_min; ++i) g.add_min("min" + std::to_string(i));
  for (int i = 0; i < p.k; ++i) g.add_ran("r" + std::to_string(i + 1));
  const int D = p.prob_denominator_bound;
  for (int i = 0; i < p.n_sinks; ++i) {
    Rational v = p.sink_min + (p.sink_max - p.sink_min) * Rational(rng.between(0, D), D);
    v.canonicalize();
    g.add_sink(v, "s" + std::to_string(i));
  }
  const auto rans = g.ran_nodes();
  const auto sinks = g.sinks();

  std::vector<int> rank_of(nc);
  {
    std::vector<int> perm(nc);
    for (int i = 0; i < nc; ++i) perm[i] = i;
    for (int i = nc; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(static_cast<std::size_t>(i))]);
    for (int pos = 0; pos < nc; ++pos) rank_of[perm[pos]] = pos;
  }

  std::vector<NodeId> non_sink;
  for (NodeId x = 0; x < nc + p.k; ++x) non_sink.push_back(x);
  std::vector<NodeId> everything;
  for (NodeId x = 0; x < static_cast<NodeId>(g.size()); ++x) everything.push_back(x);

  for (NodeId x = 0; x < nc; ++x) {
    const bool is_max = x < p.n_max;
    const int d = is_max && p.max_binary ? 2 : rng.between(1, p.max_outdegree);
    std::vector<NodeId> succ;
    if (!p.canonical) {
      succ = rng.pick(everything, d);
    } else {
      std::vector<NodeId> safe(rans.begin(), rans.end());
      for (NodeId y = 0; y < nc; ++y)
        if (rank_of[y] < rank_of[x]) safe.push_back(y);
      if (!is_max || p.stopping) {
        succ = rng.pick(safe, d);
      } else {
        succ = rng.pick(safe, 1);
        std::vector<NodeId> rest;
        for (NodeId y : non_sink)
          if (y != succ.front()) rest.push_back(y);
        auto more = rng.pick(rest, d - 1);
        succ.insert(succ.end(), more.begin(), more.end());
      }
    }
    while (is_max && p.max_binary && succ.size() < 2) succ.push_back(succ.front());
    g.set_successors(x, succ);
  }

  Rational mass = p.min_sink_mass * D;
  mpz_class mass_ceil;
  mpz_cdiv_q(mass_ceil.get_mpz_t(), mass.get_num_mpz_t(), mass.get_den_mpz_t());
  const int sink_floor = std::max(1, static_cast<int>(mass_ceil.get_si()));
  for (NodeId r : rans) {
    int d = rng.between(1, std::max(1, p.max_outdegree));
    d = std::min(d, D - sink_floor + 1);
    std::vector<NodeId> succ;
    if (sgn(p.min_sink_mass) > 0 || p.canonical) {
      succ.push_back(sinks[rng.below(sinks.size())]);
      std::vector<NodeId> rest;
      for (NodeId y : everything)
        if (y != succ.front()) rest.push_back(y);
      auto more = rng.pick(rest, static_cast<std::size_t>(d - 1));
      succ.insert(succ.end(), more.begin(), more.end());
    } else {
      succ = rng.pick(everything, static_cast<std::size_t>(d));
    }
    std::vector<int> w(succ.size(), 1);
    if (sgn(p.min_sink_mass) > 0 || p.canonical) w[0] = sink_floor;
    int left = D;
    for (int a : w) left -= a;
    while (left-- > 0) ++w[rng.below(w.size())];
    std::vector<std::pair<NodeId, Rational>> dist;
    for (std::size_t a = 0; a < succ.size(); ++a) {
      Rational q(w[a], D);
      q.canonicalize();
      dist.emplace_back(succ[a], q);
    }
    g.set_distribution(r, dist);
  }
  return g;
}

}  // namespace ssg
