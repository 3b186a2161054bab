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

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ssg/error.hpp"

namespace ssg {

// Arbitrary-precision rational. GMP keeps every result of an arithmetic
// expression in lowest terms; values built from raw num/den pairs go through
// make_rational so the same holds for them.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "a", "-a" and "a/b".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty rational");
  auto slash = s.find('/');
  auto digits_ok = [](std::string_view d, bool allow_sign) {
    if (d.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && d[0] == '-') i = 1;
    if (i == d.size()) return false;
    for (; i < d.size(); ++i)
      if (d[i] < '0' || d[i] > '9') return false;
    return true;
  };
  std::string_view sv(s);
  bool ok = slash == std::string::npos
                ? digits_ok(sv, true)
                : digits_ok(sv.substr(0, slash), true) && digits_ok(sv.substr(slash + 1), false);
  if (!ok) throw Error(ErrorKind::Parse, "malformed rational '" + s + "'");
  Rational q;
  q.set_str(s, 10);
  if (q.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// Canonical "num/den" text; integers print without a denominator.
inline std::string to_string(const Rational& q) { return q.get_str(10); }

// GMP's own conversion truncates; dividing two exact doubles rounds to nearest.
inline double to_double(const Rational& q) {
  const auto bits = [](const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); };
  if (bits(q.get_num()) <= 53 && bits(q.get_den()) <= 53) return q.get_num().get_d() / q.get_den().get_d();
  return q.get_d();
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

using ValueVector = std::vector<Rational>;

// w1 <= w2 componentwise.
inline bool dominated_by(const ValueVector& w1, const ValueVector& w2) {
  if (w1.size() != w2.size()) return false;
  for (std::size_t i = 0; i < w1.size(); ++i)
    if (w1[i] > w2[i]) return false;
  return true;
}

// w1 < w2: componentwise <= with at least one strict inequality.
inline bool strictly_improves(const ValueVector& before, const ValueVector& after) {
  if (!dominated_by(before, after)) return false;
  for (std::size_t i = 0; i < before.size(); ++i)
    if (before[i] < after[i]) return true;
  return false;
}

}  // namespace ssg
