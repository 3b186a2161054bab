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

#include "ssg/game.hpp"
#include "ssg/rational.hpp"

namespace ssg {

/// Small example with three random nodes:
///   M (MAX) -> r1, r2        m (MIN) -> M, r3
///   r1: 9/100 -> s0, 1/100 -> s1, 9/10 -> m
///   r2: 1 -> s1/2
///   r3: 1/100 -> s0, 9/100 -> s1, 9/10 -> m
/// Ids: M 0, m 1, r1 2, r2 3, r3 4, s0 5, s1/2 6, s1 7.
inline Ssg fig2_game() {
  Ssg g;
  NodeId M = g.add_max("M");
  NodeId m = g.add_min("m");
  NodeId r1 = g.add_ran("r1");
  NodeId r2 = g.add_ran("r2");
  NodeId r3 = g.add_ran("r3");
  NodeId s0 = g.add_sink(Rational(0), "s0");
  NodeId sh = g.add_sink(Rational(1, 2), "s1/2");
  NodeId s1 = g.add_sink(Rational(1), "s1");
  g.set_successors(M, {r1, r2});
  g.set_successors(m, {M, r3});
  g.set_distribution(r1, {{s0, Rational(9, 100)}, {s1, Rational(1, 100)}, {m, Rational(9, 10)}});
  g.set_distribution(r2, {{sh, Rational(1)}});
  g.set_distribution(r3, {{s0, Rational(1, 100)}, {s1, Rational(9, 100)}, {m, Rational(9, 10)}});
  return g;
}

}  // namespace ssg
