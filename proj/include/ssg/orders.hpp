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
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ssg/error.hpp"
#include "ssg/rational.hpp"

namespace ssg {

// Control indices are 1-based, [1, k].

/// A total order on [1,k], listed in ascending order.
class TotalOrder {
 public:
  TotalOrder() = default;
  explicit TotalOrder(std::vector<int> ascending) : asc_(std::move(ascending)) {
    const int k = static_cast<int>(asc_.size());
    rank_.assign(k + 1, 0);
    for (int pos = 0; pos < k; ++pos) {
      int x = asc_[pos];
      if (x < 1 || x > k || rank_[x] != 0)
        throw Error(ErrorKind::Precondition, "not a permutation of [1," + std::to_string(k) + "]");
      rank_[x] = pos + 1;
    }
  }

  static TotalOrder identity(int k) {
    std::vector<int> v(k);
    for (int i = 0; i < k; ++i) v[i] = i + 1;
    return TotalOrder(std::move(v));
  }

  int k() const { return static_cast<int>(asc_.size()); }
  const std::vector<int>& ascending() const { return asc_; }
  int at(int pos) const { return asc_[pos]; }
  // 1-based position of x in ascending order.
  int rank(int x) const { return rank_.at(x); }
  bool before(int i, int j) const { return rank_[i] < rank_[j]; }

  bool operator==(const TotalOrder& o) const { return asc_ == o.asc_; }
  bool operator<(const TotalOrder& o) const { return asc_ < o.asc_; }

 private:
  std::vector<int> asc_;
  std::vector<int> rank_;
};

/// Antisymmetric relation on [1,k], stored as its non-reflexive pairs.
/// No transitive closure is ever taken.
class PretotalOrder {
 public:
  PretotalOrder() = default;
  explicit PretotalOrder(int k) : k_(k) {}

  int k() const { return k_; }
  const std::set<std::pair<int, int>>& pairs() const& { return pairs_; }
  std::set<std::pair<int, int>> pairs() && { return std::move(pairs_); }
  std::size_t size() const { return pairs_.size(); }
  bool contains(int i, int j) const { return pairs_.count({i, j}) > 0; }
  bool is_total() const { return pairs_.size() == static_cast<std::size_t>(k_ * (k_ - 1) / 2); }

  /// p + (i, j).
  PretotalOrder add(int i, int j) const {
    if (i == j || i < 1 || j < 1 || i > k_ || j > k_)
      throw Error(ErrorKind::Precondition, "invalid pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
    if (contains(i, j) || contains(j, i))
      throw Error(ErrorKind::Precondition, "pair {" + std::to_string(i) + "," + std::to_string(j) +
                                               "} already ordered");
    PretotalOrder out = *this;
    out.pairs_.insert({i, j});
    return out;
  }

  PretotalOrder remove(int i, int j) const {
    PretotalOrder out = *this;
    out.pairs_.erase({i, j});
    return out;
  }

  bool operator==(const PretotalOrder&) const = default;

 private:
  int k_ = 0;
  std::set<std::pair<int, int>> pairs_;
};

inline PretotalOrder add_pair(const PretotalOrder& p, int i, int j) { return p.add(i, j); }

/// All pairs (i, j) with i before j in t.
inline PretotalOrder pairs_of(const TotalOrder& t) {
  PretotalOrder p(t.k());
  for (int a = 0; a < t.k(); ++a)
    for (int b = a + 1; b < t.k(); ++b) p = p.add(t.at(a), t.at(b));
  return p;
}

inline bool extends(const TotalOrder& t, const PretotalOrder& p) {
  if (t.k() != p.k()) return false;
  for (const auto& [i, j] : p.pairs())
    if (!t.before(i, j)) return false;
  return true;
}

/// A sequence of unordered pairs {i, j}; pairs are kept as written.
using PairOrder = std::vector<std::pair<int, int>>;

inline bool is_pair_order(const PairOrder& theta, int k) {
  if (theta.size() != static_cast<std::size_t>(k * (k - 1) / 2)) return false;
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : theta) {
    if (i == j || i < 1 || j < 1 || i > k || j > k) return false;
    if (!seen.insert({std::min(i, j), std::max(i, j)}).second) return false;
  }
  return true;
}

struct Interval {
  std::vector<int> members;  // consecutive in the order
  Rational value;
};

/// Maximal runs of equal control value along t, ascending.
struct IntervalPartition {
  std::vector<Interval> intervals;

  // index of the interval holding control node i
  std::size_t interval_of(int i) const {
    for (std::size_t a = 0; a < intervals.size(); ++a) {
      const auto& m = intervals[a].members;
      if (std::find(m.begin(), m.end(), i) != m.end()) return a;
    }
    throw Error(ErrorKind::Precondition, "control node " + std::to_string(i) + " not in partition");
  }

  // Members of i's interval strictly after i.
  std::vector<int> after_in_interval(int i) const {
    const auto& m = intervals[interval_of(i)].members;
    auto it = std::find(m.begin(), m.end(), i);
    return {it + 1, m.end()};
  }

  bool operator==(const IntervalPartition& o) const {
    if (intervals.size() != o.intervals.size()) return false;
    for (std::size_t a = 0; a < intervals.size(); ++a)
      if (intervals[a].members != o.intervals[a].members || intervals[a].value != o.intervals[a].value)
        return false;
    return true;
  }
};

/// control_values[i-1] is the value of control node i. Fails when the values
/// decrease somewhere along t.
inline IntervalPartition value_intervals(const TotalOrder& t, const std::vector<Rational>& control_values) {
  if (control_values.size() != static_cast<std::size_t>(t.k()))
    throw Error(ErrorKind::Precondition, "value vector does not match the order size");
  IntervalPartition part;
  for (int pos = 0; pos < t.k(); ++pos) {
    int x = t.at(pos);
    const Rational& v = control_values[x - 1];
    if (!part.intervals.empty()) {
      Interval& last = part.intervals.back();
      if (v < last.value)
        throw Error(ErrorKind::Internal, "values decrease along the order between " +
                                             std::to_string(last.members.back()) + " and " + std::to_string(x));
      if (v == last.value) {
        last.members.push_back(x);
        continue;
      }
    }
    part.intervals.push_back(Interval{{x}, v});
  }
  return part;
}

/// Moves i just after the last element of its value interval.
inline TotalOrder pivot(const TotalOrder& t, int i, const IntervalPartition& partition) {
  const auto& members = partition.intervals[partition.interval_of(i)].members;
  int last = members.back();
  if (last == i) return t;
  std::vector<int> asc;
  asc.reserve(t.k());
  for (int x : t.ascending()) {
    if (x == i) continue;
    asc.push_back(x);
    if (x == last) asc.push_back(i);
  }
  return TotalOrder(std::move(asc));
}

// ---------------------------------------------------------------------------
// Seeded sampling. The uniform draw is written out so that a seed maps to the
// same permutation with any standard library; traces still persist the
// sampled orders verbatim.

namespace detail {

// Uniform integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

template <class T>
void fisher_yates(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = uniform_below(rng, i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace detail

/// Uniform permutation of [0, n).
inline std::vector<int> sample_permutation(int n, std::uint64_t seed) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  std::mt19937_64 rng(seed);
  detail::fisher_yates(v, rng);
  return v;
}

/// Uniform order on the k(k-1)/2 unordered pairs, shuffled from the
/// lexicographic enumeration {1,2},{1,3},...,{k-1,k}.
inline PairOrder sample_pair_order(int k, std::uint64_t seed) {
  if (k < 1) throw Error(ErrorKind::Precondition, "pair order needs k >= 1");
  PairOrder theta;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) theta.emplace_back(i, j);
  std::mt19937_64 rng(seed);
  detail::fisher_yates(theta, rng);
  return theta;
}

// ---------------------------------------------------------------------------
// Text forms: "[3,1,2]" and "{2,5},{7,6},{1,4}".

inline std::string to_string(const TotalOrder& t) {
  std::string s = "[";
  for (int pos = 0; pos < t.k(); ++pos) {
    if (pos) s += ',';
    s += std::to_string(t.at(pos));
  }
  return s + "]";
}

inline std::string to_string(const PairOrder& theta) {
  std::string s;
  for (std::size_t a = 0; a < theta.size(); ++a) {
    if (a) s += ',';
    s += '{' + std::to_string(theta[a].first) + ',' + std::to_string(theta[a].second) + '}';
  }
  return s;
}

inline std::string to_string(const PretotalOrder& p) {
  std::string s = "{";
  bool first = true;
  for (auto [i, j] : p.pairs()) {
    if (!first) s += ',';
    first = false;
    s += '(' + std::to_string(i) + ',' + std::to_string(j) + ')';
  }
  return s + "}";
}

namespace detail {

inline std::vector<int> parse_int_list(std::string_view body, std::string_view what) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw Error(ErrorKind::Parse, "malformed " + std::string(what));
    out.push_back(std::stoi(cur));
    cur.clear();
  };
  for (char c : body) {
    if (c == ' ') continue;
    if (c == ',') {
      flush();
    } else if (c >= '0' && c <= '9') {
      cur += c;
    } else {
      throw Error(ErrorKind::Parse, "malformed " + std::string(what));
    }
  }
  if (!cur.empty() || !out.empty()) flush();
  return out;
}

}  // namespace detail

inline TotalOrder parse_total_order(std::string_view text) {
  auto l = text.find('[');
  auto r = text.rfind(']');
  if (l == std::string_view::npos || r == std::string_view::npos || r < l)
    throw Error(ErrorKind::Parse, "total order must look like [3,1,2]");
  return TotalOrder(detail::parse_int_list(text.substr(l + 1, r - l - 1), "total order"));
}

inline PairOrder parse_pair_order(std::string_view text) {
  PairOrder theta;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ',' || text[pos] == ' ') {
      ++pos;
      continue;
    }
    if (text[pos] != '{') throw Error(ErrorKind::Parse, "pair order must look like {1,2},{2,3}");
    auto close = text.find('}', pos);
    if (close == std::string_view::npos) throw Error(ErrorKind::Parse, "unterminated pair");
    auto v = detail::parse_int_list(text.substr(pos + 1, close - pos - 1), "pair");
    if (v.size() != 2) throw Error(ErrorKind::Parse, "a pair has two elements");
    theta.emplace_back(v[0], v[1]);
    pos = close + 1;
  }
  return theta;
}

}  // namespace ssg
