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

// Line-delimited JSON forms of games and solver traces. See docs/formats.md.

#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ssg/error.hpp"
#include "ssg/game.hpp"
#include "ssg/ludwig.hpp"
#include "ssg/orders.hpp"
#include "ssg/pivot_solver.hpp"
#include "ssg/rational.hpp"

namespace ssg {

using Json = nlohmann::ordered_json;

inline constexpr const char* kGameFormat = "ssg-game";
inline constexpr int kFormatVersion = 1;

/// Canonical text: a header line, then one line per node in id order.
inline std::string game_to_text(const Ssg& game) {
  std::string out;
  Json head;
  head["format"] = kGameFormat;
  head["version"] = kFormatVersion;
  head["nodes"] = game.size();
  out += head.dump() + '\n';
  for (NodeId x = 0; x < static_cast<NodeId>(game.size()); ++x) {
    const Node& nd = game.node(x);
    Json j;
    j["id"] = x;
    j["kind"] = to_string(nd.kind);
    j["name"] = nd.name;
    if (nd.kind == NodeKind::Sink) {
      j["value"] = to_string(nd.value);
    } else {
      j["succ"] = nd.succ;
      if (nd.kind == NodeKind::Ran) {
        Json probs = Json::array();
        for (const auto& q : nd.prob) probs.push_back(to_string(q));
        j["prob"] = probs;
      }
    }
    out += j.dump() + '\n';
  }
  return out;
}

namespace detail {

inline Json parse_json_line(const std::string& line, std::size_t lineno) {
  try {
    return Json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": " + e.what());
  }
}

inline NodeKind parse_kind(const std::string& s, std::size_t lineno) {
  if (s == "max") return NodeKind::Max;
  if (s == "min") return NodeKind::Min;
  if (s == "ran") return NodeKind::Ran;
  if (s == "sink") return NodeKind::Sink;
  throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": unknown node kind '" + s + "'");
}

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(pos, nl - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    pos = nl + 1;
  }
  return lines;
}

}  // namespace detail

/// Parses a game file. Structural problems (dangling arcs, bad
/// distributions) are left to validate(); only malformed text is rejected.
inline Ssg parse_game(std::string_view text) {
  auto lines = detail::split_lines(text);
  std::size_t at = 0;
  auto next = [&]() -> std::pair<Json, std::size_t> {
    while (at < lines.size() && lines[at].find_first_not_of(" \t") == std::string::npos) ++at;
    if (at == lines.size()) throw Error(ErrorKind::Parse, "unexpected end of game file");
    ++at;
    return {detail::parse_json_line(lines[at - 1], at), at};
  };
  try {
    auto [head, hl] = next();
    if (!head.is_object() || head.value("format", "") != kGameFormat)
      throw Error(ErrorKind::Parse, "line 1: not an ssg-game header");
    if (head.value("version", 0) != kFormatVersion) throw Error(ErrorKind::Parse, "line 1: unsupported version");
    const auto n = head.at("nodes").get<std::int64_t>();
    if (n < 0) throw Error(ErrorKind::Parse, "line 1: negative node count");
    Ssg g;
    std::set<std::string> names;
    for (std::int64_t x = 0; x < n; ++x) {
      auto [j, ln] = next();
      const std::string where = "line " + std::to_string(ln) + ": ";
      if (!j.is_object()) throw Error(ErrorKind::Parse, where + "node record must be an object");
      if (j.at("id").get<std::int64_t>() != x) throw Error(ErrorKind::Parse, where + "node ids must be 0,1,2,... in order");
      NodeKind kind = detail::parse_kind(j.at("kind").get<std::string>(), ln);
      std::string name = j.value("name", std::string{});
      if (name.empty()) name = "v" + std::to_string(x);
      if (!names.insert(name).second) throw Error(ErrorKind::Parse, where + "duplicate node name '" + name + "'");
      NodeId id;
      switch (kind) {
        case NodeKind::Max: id = g.add_max(name); break;
        case NodeKind::Min: id = g.add_min(name); break;
        case NodeKind::Ran: id = g.add_ran(name); break;
        case NodeKind::Sink: id = g.add_sink(parse_rational(j.at("value").get<std::string>()), name); break;
      }
      if (kind == NodeKind::Sink) continue;
      g.set_successors(id, j.at("succ").get<std::vector<NodeId>>());
      if (kind == NodeKind::Ran) {
        auto& nd = g.mutable_node(id);
        for (const auto& q : j.at("prob")) nd.prob.push_back(parse_rational(q.get<std::string>()));
      }
    }
    while (at < lines.size()) {
      if (lines[at].find_first_not_of(" \t") != std::string::npos)
        throw Error(ErrorKind::Parse, "line " + std::to_string(at + 1) + ": trailing content after the last node");
      ++at;
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed game file: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Ssg load_game(const std::string& path) { return parse_game(read_file(path)); }

/// FNV-1a 64-bit over the canonical text, as 16 hex digits.
inline std::string game_hash(const Ssg& game) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : game_to_text(game)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Trace records

inline Json rational_array(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

template <Player P>
Json strategy_object(const Ssg& game, const Strategy<P>& s) {
  Json o = Json::object();
  for (NodeId x : game.nodes_of(owned_kind(P)))
    if (s.size() == game.size() && s[x] != kNoNode) o[game.name(x)] = game.name(s[x]);
  return o;
}

template <Player P>
Strategy<P> strategy_from_object(const Ssg& game, const Json& o) {
  Strategy<P> s = first_successor_strategy<P>(game);
  if (!o.is_object()) throw Error(ErrorKind::Parse, "strategy must be an object");
  for (const auto& [from, to] : o.items()) {
    auto x = game.find(from);
    auto y = game.find(to.template get<std::string>());
    if (!x || !y || game.kind(*x) != owned_kind(P))
      throw Error(ErrorKind::Parse, "strategy entry " + from + " -> " + to.template get<std::string>() + " does not fit the game");
    s.set(*x, *y);
  }
  if (!is_valid_strategy(game, s)) throw Error(ErrorKind::Precondition, "strategy picks a non-successor");
  return s;
}

/// "M=r1,X=y" form used on the command line.
inline StrategyMax parse_sigma_assignments(const Ssg& game, std::string_view text) {
  Json o = Json::object();
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto item = text.substr(pos, comma - pos);
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size())
      throw Error(ErrorKind::Parse, "sigma0 entries look like NODE=SUCCESSOR");
    o[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    pos = comma + 1;
  }
  return strategy_from_object<Player::Max>(game, o);
}

inline Json pivot_step_record(const Ssg& game, const PivotStep& s, std::size_t index) {
  Json j;
  j["record"] = "step";
  j["index"] = index;
  j["order"] = to_string(s.order);
  j["control"] = rational_array(s.control);
  j["ran"] = rational_array(s.ran);
  j["constrained"] = s.constrained;
  Json parts = Json::array();
  for (const auto& iv : s.partition.intervals) parts.push_back(iv.members);
  j["intervals"] = parts;
  j["pivot"] = s.pivot ? Json(*s.pivot) : Json(nullptr);
  j["sigma"] = strategy_object(game, s.sigma);
  j["tau"] = strategy_object(game, s.tau);
  return j;
}

inline Json switch_step_record(const Ssg& game, const SwitchStep& s, std::size_t index) {
  Json j;
  j["record"] = "step";
  j["index"] = index;
  Json sw = Json::array();
  for (NodeId x : s.switched) sw.push_back(game.name(x));
  j["switched"] = sw;
  j["sigma"] = strategy_object(game, s.sigma);
  j["values"] = rational_array(s.values);
  return j;
}

inline Json node_order_json(const Ssg& game, const NodeOrder& order) {
  Json a = Json::array();
  for (NodeId x : order) a.push_back(game.name(x));
  return a;
}

inline NodeOrder node_order_from_json(const Ssg& game, const Json& a) {
  NodeOrder out;
  for (const auto& v : a) out.push_back(game.id(v.get<std::string>()));
  if (!is_node_order(game, out)) throw Error(ErrorKind::Parse, "node order is not a permutation of the MAX nodes");
  return out;
}

/// A trace file split into its header and the remaining record lines.
struct TraceFile {
  Json header;
  std::vector<std::string> records;  // verbatim, header excluded
};

inline TraceFile parse_trace(std::string_view text) {
  TraceFile t;
  auto lines = detail::split_lines(text);
  bool have_header = false;
  for (std::size_t a = 0; a < lines.size(); ++a) {
    if (lines[a].empty()) continue;
    if (!have_header) {
      t.header = detail::parse_json_line(lines[a], a + 1);
      if (!t.header.is_object() || t.header.value("record", "") != "header")
        throw Error(ErrorKind::Parse, "trace must start with a header record");
      have_header = true;
    } else {
      t.records.push_back(lines[a]);
    }
  }
  if (!have_header) throw Error(ErrorKind::Parse, "empty trace file");
  return t;
}

}  // namespace ssg
