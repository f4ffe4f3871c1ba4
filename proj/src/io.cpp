// Copyright 2026 The polycoord Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "polycoord/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "polycoord/errors.hpp"

namespace polycoord {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing key '") + key + "'");
  return *it;
}

Rational read_rational(const Json& value, const std::string& where) {
  if (value.is_number_float()) fail(where, "floating-point numbers are not accepted; use \"p/q\"");
  if (value.is_number_integer()) {
    return Rational::parse(value.dump());
  }
  if (!value.is_string()) fail(where, "expected a rational string");
  try {
    return Rational::parse(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

std::string read_string(const Json& value, const std::string& where) {
  if (!value.is_string()) fail(where, "expected a string");
  return value.get<std::string>();
}

std::vector<std::string> read_names(const Json& value, const std::string& where) {
  if (!value.is_array()) fail(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(read_string(value[i], where + "/" + std::to_string(i)));
  }
  return out;
}

std::vector<Rational> read_rationals(const Json& value, const std::string& where) {
  if (!value.is_array()) fail(where, "expected an array of rationals");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(read_rational(value[i], where + "/" + std::to_string(i)));
  }
  return out;
}

PlayerId read_endpoint(const Json& value, const std::map<std::string, PlayerId>& by_name,
                       std::size_t n, const std::string& where) {
  if (value.is_number_integer()) {
    const auto id = value.get<long long>();
    if (id < 0 || static_cast<std::size_t>(id) >= n) fail(where, "player index out of range");
    return static_cast<PlayerId>(id);
  }
  if (value.is_string()) {
    const auto it = by_name.find(value.get<std::string>());
    if (it == by_name.end()) fail(where, "unknown player '" + value.get<std::string>() + "'");
    return it->second;
  }
  fail(where, "expected a player name or index");
}

// "node 3: duplicate colour" -> "/players/3: duplicate colour".
std::string locate_issue(const std::string& issue) {
  for (const auto& [prefix, path] : {std::pair<std::string, std::string>{"node ", "/players/"},
                                     {"player ", "/players/"},
                                     {"edge ", "/edges/"}}) {
    if (issue.rfind(prefix, 0) != 0) continue;
    std::size_t end = prefix.size();
    while (end < issue.size() && std::isdigit(static_cast<unsigned char>(issue[end]))) ++end;
    if (end == prefix.size()) break;
    const std::string index = issue.substr(prefix.size(), end - prefix.size());
    const auto colon = issue.find(": ", end);
    return path + index + (colon == std::string::npos ? ": " + issue : issue.substr(colon));
  }
  return "/: " + issue;
}

void require_document_valid(const std::vector<std::string>& issues) {
  if (issues.empty()) return;
  std::string message = locate_issue(issues.front());
  if (issues.size() > 1) message += " (and " + std::to_string(issues.size() - 1) + " more)";
  throw InputError(message);
}

Json rational_array(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& q : values) out.push_back(q.str());
  return out;
}

bool all_zero(const std::vector<Rational>& values) {
  for (const auto& q : values) {
    if (q.sign() != 0) return false;
  }
  return true;
}

Json header(const char* kind) {
  Json doc;
  doc["format"] = "polycoord-game";
  doc["version"] = kGameDocumentVersion;
  doc["kind"] = kind;
  return doc;
}

}  // namespace

PolymatrixGame GameDocument::polymatrix() const {
  if (is_graph()) return from_graph_coordination(graph());
  return std::get<PolymatrixGame>(game);
}

GameDocument parse_game(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw InputError("byte " + std::to_string(e.byte) + ": JSON syntax error");
  }
  if (!doc.is_object()) fail("/", "expected a JSON object");
  if (read_string(member(doc, "format", "/"), "/format") != "polycoord-game") {
    fail("/format", "expected \"polycoord-game\"");
  }
  const Json& version = member(doc, "version", "/");
  if (!version.is_number_integer() || version.get<long long>() != kGameDocumentVersion) {
    fail("/version", "unsupported version (expected " + std::to_string(kGameDocumentVersion) + ")");
  }
  const std::string kind = read_string(member(doc, "kind", "/"), "/kind");
  if (kind != "graph-coordination" && kind != "polymatrix") {
    fail("/kind", "expected \"graph-coordination\" or \"polymatrix\"");
  }
  const bool graph = kind == "graph-coordination";

  const Json& players = member(doc, "players", "/");
  if (!players.is_array()) fail("/players", "expected an array");
  std::vector<PolymatrixGame::Player> parsed;
  std::map<std::string, PlayerId> by_name;
  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string where = "/players/" + std::to_string(i);
    const Json& p = players[i];
    if (!p.is_object()) fail(where, "expected an object");
    PolymatrixGame::Player player;
    player.name = read_string(member(p, "name", where), where + "/name");
    const char* list_key = graph && p.contains("colors") ? "colors" : "strategies";
    player.strategies = read_names(member(p, list_key, where), where + "/" + list_key);
    if (p.contains("preferences")) {
      player.preferences = read_rationals(p["preferences"], where + "/preferences");
    }
    if (!by_name.emplace(player.name, static_cast<PlayerId>(i)).second) {
      fail(where + "/name", "duplicate player name '" + player.name + "'");
    }
    parsed.push_back(std::move(player));
  }

  const Json& edges = member(doc, "edges", "/");
  if (!edges.is_array()) fail("/edges", "expected an array");
  const std::size_t n = parsed.size();

  if (graph) {
    GraphCoordinationSpec spec;
    for (auto& p : parsed) spec.nodes.push_back({p.name, p.strategies, p.preferences});
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::string where = "/edges/" + std::to_string(e);
      const Json& edge = edges[e];
      if (!edge.is_object()) fail(where, "expected an object");
      GraphCoordinationSpec::Edge parsed_edge;
      parsed_edge.u = read_endpoint(member(edge, "u", where), by_name, n, where + "/u");
      parsed_edge.v = read_endpoint(member(edge, "v", where), by_name, n, where + "/v");
      parsed_edge.weight = edge.contains("weight") ? read_rational(edge["weight"], where + "/weight")
                                                   : Rational(1);
      spec.edges.push_back(parsed_edge);
    }
    require_document_valid(validate(spec));
    return GameDocument{std::move(spec)};
  }

  std::vector<EdgePayoff> tables;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::string where = "/edges/" + std::to_string(e);
    const Json& edge = edges[e];
    if (!edge.is_object()) fail(where, "expected an object");
    const PlayerId u = read_endpoint(member(edge, "u", where), by_name, n, where + "/u");
    const PlayerId v = read_endpoint(member(edge, "v", where), by_name, n, where + "/v");
    const Json& table = member(edge, "table", where);
    const std::size_t rows = parsed[static_cast<std::size_t>(u)].strategies.size();
    const std::size_t cols = parsed[static_cast<std::size_t>(v)].strategies.size();
    if (!table.is_array() || table.size() != rows) {
      fail(where + "/table", "expected " + std::to_string(rows) + " rows");
    }
    EdgePayoff payoff(u, v, rows, cols);
    for (std::size_t x = 0; x < rows; ++x) {
      const std::string row_where = where + "/table/" + std::to_string(x);
      if (!table[x].is_array() || table[x].size() != cols) {
        fail(row_where, "expected " + std::to_string(cols) + " columns");
      }
      for (std::size_t y = 0; y < cols; ++y) {
        payoff.at(static_cast<StrategyIndex>(x), static_cast<StrategyIndex>(y)) =
            read_rational(table[x][y], row_where + "/" + std::to_string(y));
      }
    }
    tables.push_back(std::move(payoff));
  }
  PolymatrixGame game(std::move(parsed), std::move(tables));
  require_document_valid(validate(game));
  return GameDocument{std::move(game)};
}

std::string serialize_game(const GraphCoordinationSpec& spec) {
  Json doc = header("graph-coordination");
  Json players = Json::array();
  for (const auto& node : spec.nodes) {
    Json p;
    p["name"] = node.name;
    p["strategies"] = node.colors;
    if (!node.preferences.empty() && !all_zero(node.preferences)) {
      p["preferences"] = rational_array(node.preferences);
    }
    players.push_back(std::move(p));
  }
  Json edges = Json::array();
  for (const auto& e : spec.edges) {
    Json edge;
    edge["u"] = spec.nodes[static_cast<std::size_t>(e.u)].name;
    edge["v"] = spec.nodes[static_cast<std::size_t>(e.v)].name;
    edge["weight"] = e.weight.str();
    edges.push_back(std::move(edge));
  }
  doc["players"] = std::move(players);
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

std::string serialize_game(const PolymatrixGame& game) {
  Json doc = header("polymatrix");
  Json players = Json::array();
  for (const auto& player : game.players()) {
    Json p;
    p["name"] = player.name;
    p["strategies"] = player.strategies;
    if (!player.preferences.empty() && !all_zero(player.preferences)) {
      p["preferences"] = rational_array(player.preferences);
    }
    players.push_back(std::move(p));
  }
  Json edges = Json::array();
  for (const auto& e : game.edges()) {
    Json edge;
    edge["u"] = game.player(e.u).name;
    edge["v"] = game.player(e.v).name;
    Json table = Json::array();
    for (std::size_t x = 0; x < e.rows; ++x) {
      Json row = Json::array();
      for (std::size_t y = 0; y < e.cols; ++y) {
        row.push_back(e.at(static_cast<StrategyIndex>(x), static_cast<StrategyIndex>(y)).str());
      }
      table.push_back(std::move(row));
    }
    edge["table"] = std::move(table);
    edges.push_back(std::move(edge));
  }
  doc["players"] = std::move(players);
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

std::string serialize_game(const GameDocument& doc) {
  return std::visit([](const auto& g) { return serialize_game(g); }, doc.game);
}

SimpleGraph parse_graph_text(std::string_view text) {
  SimpleGraph graph;
  std::optional<std::size_t> declared;
  std::size_t max_id_plus_one = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const std::string where = "line " + std::to_string(line_no);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto read_id = [&](const std::string& t) {
      std::size_t value = 0;
      const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
      if (ec != std::errc() || ptr != t.data() + t.size()) fail(where, "expected a node id, got '" + t + "'");
      return value;
    };
    if (tok[0] == "nodes") {
      if (tok.size() != 2) fail(where, "expected 'nodes N'");
      if (declared) fail(where, "'nodes' given twice");
      declared = read_id(tok[1]);
      continue;
    }
    if (tok.size() != 2 && tok.size() != 3) fail(where, "expected 'u v [weight]'");
    const std::size_t u = read_id(tok[0]);
    const std::size_t v = read_id(tok[1]);
    graph.edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    Rational w(1);
    if (tok.size() == 3) {
      try {
        w = Rational::parse(tok[2]);
      } catch (const std::invalid_argument& e) {
        fail(where, e.what());
      }
    }
    graph.weights.push_back(w);
    max_id_plus_one = std::max({max_id_plus_one, u + 1, v + 1});
  }
  if (declared && *declared < max_id_plus_one) {
    fail("nodes", "declared " + std::to_string(*declared) + " nodes but edges use id " +
                      std::to_string(max_id_plus_one - 1));
  }
  graph.n = declared.value_or(max_id_plus_one);
  bool unit = true;
  for (const auto& w : graph.weights) unit = unit && w == Rational(1);
  if (unit) graph.weights.clear();
  graph.validate();
  return graph;
}

std::string serialize_graph_text(const SimpleGraph& graph) {
  std::ostringstream out;
  out << "nodes " << graph.n << "\n";
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    out << graph.edges[e].first << " " << graph.edges[e].second;
    if (!graph.weights.empty()) out << " " << graph.weight(e).str();
    out << "\n";
  }
  return out.str();
}

JointStrategy parse_profile(const PolymatrixGame& game, std::string_view text) {
  std::string body(text);
  const auto first = body.find_first_not_of(" \t");
  const auto last = body.find_last_not_of(" \t\n");
  body = first == std::string::npos ? "" : body.substr(first, last - first + 1);
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);

  std::vector<std::string> items;
  if (!body.empty()) {
    std::istringstream in(body);
    for (std::string item; std::getline(in, item, ',');) {
      const auto a = item.find_first_not_of(" \t");
      const auto b = item.find_last_not_of(" \t");
      items.push_back(a == std::string::npos ? "" : item.substr(a, b - a + 1));
    }
  }
  if (items.size() != game.num_players()) {
    throw InputError("profile has " + std::to_string(items.size()) + " entries, game has " +
                     std::to_string(game.num_players()) + " players");
  }
  JointStrategy s(std::vector<StrategyIndex>(items.size(), 0));
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto id = static_cast<PlayerId>(i);
    if (const auto x = game.strategy_index(id, items[i])) {
      s[id] = *x;
      continue;
    }
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(items[i].data(), items[i].data() + items[i].size(), value);
    if (ec != std::errc() || ptr != items[i].data() + items[i].size() ||
        value >= game.num_strategies(id)) {
      throw InputError("profile entry " + std::to_string(i) + ": '" + items[i] +
                       "' is not a strategy of " + game.player(id).name);
    }
    s[id] = static_cast<StrategyIndex>(value);
  }
  return s;
}

}  // namespace polycoord
