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

#include <cstdint>
#include <random>
#include <vector>

#include "ssg/ssg.hpp"

namespace ssg::testing {

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

inline ValueVector qs(std::initializer_list<std::pair<long, long>> v) {
  ValueVector out;
  for (auto [n, d] : v) out.push_back(make_rational(n, d));
  return out;
}

// Small canonical-form game, sizes drawn from the seed.
inline Ssg random_cf_game(std::uint64_t seed, int max_ctrl = 3, int max_k = 3, int denominator = 16) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  GenParams p;
  p.n_max = static_cast<int>(rng() % (max_ctrl + 1));
  p.n_min = static_cast<int>(rng() % (max_ctrl + 1));
  p.k = 1 + static_cast<int>(rng() % max_k);
  p.n_sinks = 1 + static_cast<int>(rng() % 3);
  p.max_outdegree = 2 + static_cast<int>(rng() % 2);
  p.prob_denominator_bound = denominator;
  p.min_sink_mass = Rational(1, 10);
  p.seed = seed;
  return generate(p);
}

// Globally stopping, max-binary game with n_max MAX nodes.
inline Ssg random_stopping_binary_game(std::uint64_t seed, int n_max, int n_min = 2, int k = 3) {
  GenParams p;
  p.n_max = n_max;
  p.n_min = n_min;
  p.k = k;
  p.n_sinks = 3;
  p.max_outdegree = 3;
  p.prob_denominator_bound = 16;
  p.min_sink_mass = Rational(1, 8);
  p.max_binary = true;
  p.stopping = true;
  p.seed = seed;
  return generate(p);
}

// Plain double-precision value iteration for a fixed strategy pair.
inline std::vector<double> power_iteration(const Ssg& g, const StrategyMax& sigma, const StrategyMin& tau,
                                           int iterations) {
  std::vector<double> v(g.size(), 0.0), next(g.size(), 0.0);
  for (NodeId s : g.sinks()) v[s] = to_double(g.value(s));
  for (int it = 0; it < iterations; ++it) {
    for (NodeId x = 0; x < static_cast<NodeId>(g.size()); ++x) {
      switch (g.kind(x)) {
        case NodeKind::Sink: next[x] = v[x]; break;
        case NodeKind::Max: next[x] = v[sigma[x]]; break;
        case NodeKind::Min: next[x] = v[tau[x]]; break;
        case NodeKind::Ran: {
          double acc = 0;
          for (std::size_t a = 0; a < g.succ(x).size(); ++a) acc += to_double(g.prob(x)[a]) * v[g.succ(x)[a]];
          next[x] = acc;
          break;
        }
      }
    }
    std::swap(v, next);
  }
  return v;
}

// A random stationary strategy for player P.
template <Player P>
Strategy<P> random_strategy(const Ssg& g, std::mt19937_64& rng) {
  Strategy<P> s(g.size());
  for (NodeId x : g.nodes_of(owned_kind(P))) s.set(x, g.succ(x)[rng() % g.succ(x).size()]);
  return s;
}

}  // namespace ssg::testing
