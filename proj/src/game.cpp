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

#include "polycoord/game.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "polycoord/errors.hpp"

namespace polycoord {
namespace {

const Rational& zero() {
  static const Rational z;
  return z;
}

bool all_zero(const std::vector<Rational>& values) {
  return std::all_of(values.begin(), values.end(), [](const Rational& r) { return r.sign() == 0; });
}

void join(std::ostringstream& os, const std::vector<std::string>& items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) os << "; ";
    os << items[i];
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Coalition

Coalition::Coalition(std::vector<PlayerId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw InputError("coalition lists a player twice");
  }
  if (!members_.empty() && members_.front() < 0) throw InputError("negative player id");
}

Coalition Coalition::all(std::size_t n) {
  std::vector<PlayerId> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<PlayerId>(i);
  return Coalition(std::move(m));
}

bool Coalition::contains(PlayerId i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

// ---------------------------------------------------------------------------
// EdgePayoff

EdgePayoff::EdgePayoff(PlayerId u_, PlayerId v_, std::size_t rows_, std::size_t cols_)
    : u(u_), v(v_), rows(rows_), cols(cols_), table(rows_ * cols_) {}

EdgePayoff::EdgePayoff(PlayerId u_, PlayerId v_, std::vector<std::vector<Rational>> entries)
    : u(u_), v(v_), rows(entries.size()), cols(entries.empty() ? 0 : entries.front().size()) {
  table.reserve(rows * cols);
  for (auto& row : entries) {
    if (row.size() != cols) throw InputError("ragged edge payoff table");
    for (auto& x : row) table.push_back(std::move(x));
  }
}

const Rational& EdgePayoff::at(StrategyIndex su, StrategyIndex sv) const {
  const auto r = static_cast<std::size_t>(su);
  const auto c = static_cast<std::size_t>(sv);
  if (su < 0 || sv < 0 || r >= rows || c >= cols) throw InputError("edge table index out of range");
  return table[r * cols + c];
}

Rational& EdgePayoff::at(StrategyIndex su, StrategyIndex sv) {
  const auto r = static_cast<std::size_t>(su);
  const auto c = static_cast<std::size_t>(sv);
  if (su < 0 || sv < 0 || r >= rows || c >= cols) throw InputError("edge table index out of range");
  return table[r * cols + c];
}

// ---------------------------------------------------------------------------
// PolymatrixGame

PolymatrixGame::PolymatrixGame(std::vector<Player> players, std::vector<EdgePayoff> edges)
    : players_(std::move(players)), edges_(std::move(edges)), incidence_(players_.size()) {
  for (auto& p : players_) {
    if (p.preferences.empty()) p.preferences.assign(p.strategies.size(), Rational());
  }
  const auto n = static_cast<PlayerId>(players_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    if (edge.u < 0 || edge.v < 0 || edge.u >= n || edge.v >= n || edge.u == edge.v) continue;
    incidence_[static_cast<std::size_t>(edge.u)].push_back({edge.v, e, true});
    incidence_[static_cast<std::size_t>(edge.v)].push_back({edge.u, e, false});
  }
}

const Rational& PolymatrixGame::preference(PlayerId i, StrategyIndex x) const {
  const auto& prefs = player(i).preferences;
  const auto idx = static_cast<std::size_t>(x);
  return idx < prefs.size() ? prefs[idx] : zero();
}

const Rational& PolymatrixGame::edge_payoff(const Incidence& inc, StrategyIndex own,
                                            StrategyIndex other) const {
  const auto& edge = edges_[inc.edge];
  return inc.owner_is_u ? edge.at(own, other) : edge.at(other, own);
}

const Rational& PolymatrixGame::edge_value(std::size_t e, const JointStrategy& s) const {
  const auto& edge = edges_[e];
  return edge.at(s[edge.u], s[edge.v]);
}

std::uint64_t PolymatrixGame::profile_count() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  for (const auto& p : players_) {
    const std::uint64_t m = p.strategies.size();
    if (m == 0) return 0;
    if (count > kMax / m) return kMax;
    count *= m;
  }
  return count;
}

std::optional<StrategyIndex> PolymatrixGame::strategy_index(PlayerId i,
                                                           const std::string& name) const {
  const auto& names = player(i).strategies;
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<StrategyIndex>(it - names.begin());
}

bool operator==(const PolymatrixGame& a, const PolymatrixGame& b) {
  if (a.players_.size() != b.players_.size() || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.players_.size(); ++i) {
    const auto& pa = a.players_[i];
    const auto& pb = b.players_[i];
    if (pa.name != pb.name || pa.strategies != pb.strategies || pa.preferences != pb.preferences) {
      return false;
    }
  }
  for (std::size_t e = 0; e < a.edges_.size(); ++e) {
    const auto& ea = a.edges_[e];
    const auto& eb = b.edges_[e];
    if (ea.u != eb.u || ea.v != eb.v || ea.rows != eb.rows || ea.cols != eb.cols ||
        ea.table != eb.table) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// GraphCoordinationSpec

bool GraphCoordinationSpec::has_preferences() const {
  return std::any_of(nodes.begin(), nodes.end(),
                     [](const Node& n) { return !all_zero(n.preferences); });
}

Rational GraphCoordinationSpec::preference(PlayerId v, StrategyIndex x) const {
  const auto& prefs = nodes[static_cast<std::size_t>(v)].preferences;
  const auto idx = static_cast<std::size_t>(x);
  return idx < prefs.size() ? prefs[idx] : Rational();
}

bool operator==(const GraphCoordinationSpec::Edge& a, const GraphCoordinationSpec::Edge& b) {
  return a.u == b.u && a.v == b.v && a.weight == b.weight;
}

bool operator==(const GraphCoordinationSpec& a, const GraphCoordinationSpec& b) {
  if (a.nodes.size() != b.nodes.size() || a.edges != b.edges) return false;
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    const auto& na = a.nodes[i];
    const auto& nb = b.nodes[i];
    if (na.name != nb.name || na.colors != nb.colors) return false;
    const bool za = all_zero(na.preferences);
    const bool zb = all_zero(nb.preferences);
    if (za != zb) return false;
    if (!za && na.preferences != nb.preferences) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Evaluation

void check_profile(const PolymatrixGame& game, const JointStrategy& s) {
  if (s.size() != game.num_players()) {
    throw InputError("profile has " + std::to_string(s.size()) + " entries for " +
                     std::to_string(game.num_players()) + " players");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto x = s.choice[i];
    if (x < 0 || static_cast<std::size_t>(x) >= game.num_strategies(static_cast<PlayerId>(i))) {
      throw InputError("strategy index " + std::to_string(x) + " invalid for player " +
                       std::to_string(i));
    }
  }
}

Rational payoff(const PolymatrixGame& game, const JointStrategy& s, PlayerId i) {
  if (i < 0 || static_cast<std::size_t>(i) >= game.num_players()) {
    throw InputError("invalid player id " + std::to_string(i));
  }
  check_profile(game, s);
  Rational total = game.preference(i, s[i]);
  for (const auto& inc : game.incident(i)) total += game.edge_payoff(inc, s[i], s[inc.neighbor]);
  return total;
}

std::vector<Rational> payoffs(const PolymatrixGame& game, const JointStrategy& s) {
  check_profile(game, s);
  std::vector<Rational> out(game.num_players());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = game.preference(static_cast<PlayerId>(i), s.choice[i]);
  for (std::size_t e = 0; e < game.edges().size(); ++e) {
    const auto& edge = game.edges()[e];
    const auto n = static_cast<PlayerId>(game.num_players());
    if (edge.u < 0 || edge.v < 0 || edge.u >= n || edge.v >= n || edge.u == edge.v) continue;
    const Rational& value = game.edge_value(e, s);
    out[static_cast<std::size_t>(edge.u)] += value;
    out[static_cast<std::size_t>(edge.v)] += value;
  }
  return out;
}

Rational social_welfare(const PolymatrixGame& game, const JointStrategy& s) {
  Rational total;
  for (const auto& p : payoffs(game, s)) total += p;
  return total;
}

Rational social_welfare_coalition(const PolymatrixGame& game, const JointStrategy& s,
                                  const Coalition& coalition) {
  Rational total;
  for (const auto i : coalition) total += payoff(game, s, i);
  return total;
}

Rational exact_potential(const PolymatrixGame& game, const JointStrategy& s) {
  check_profile(game, s);
  Rational total;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    total += game.preference(static_cast<PlayerId>(i), s.choice[i]);
  }
  const auto n = static_cast<PlayerId>(game.num_players());
  for (std::size_t e = 0; e < game.edges().size(); ++e) {
    const auto& edge = game.edges()[e];
    if (edge.u < 0 || edge.v < 0 || edge.u >= n || edge.v >= n || edge.u == edge.v) continue;
    total += game.edge_value(e, s);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<std::string> validate(const PolymatrixGame& game) {
  std::vector<std::string> issues;
  const auto n = static_cast<PlayerId>(game.num_players());
  for (PlayerId i = 0; i < n; ++i) {
    const auto& p = game.player(i);
    const std::string who = "player " + std::to_string(i);
    if (p.strategies.empty()) issues.push_back(who + ": empty strategy set");
    if (p.preferences.size() != p.strategies.size()) {
      issues.push_back(who + ": preference vector has " + std::to_string(p.preferences.size()) +
                       " entries for " + std::to_string(p.strategies.size()) + " strategies");
    }
    for (const auto& q : p.preferences) {
      if (q.sign() < 0) {
        issues.push_back(who + ": negative payoff in preferences");
        break;
      }
    }
  }
  std::set<std::pair<PlayerId, PlayerId>> seen;
  for (std::size_t e = 0; e < game.edges().size(); ++e) {
    const auto& edge = game.edges()[e];
    const std::string what = "edge " + std::to_string(e) + " {" + std::to_string(edge.u) + "," +
                             std::to_string(edge.v) + "}";
    if (edge.u < 0 || edge.v < 0 || edge.u >= n || edge.v >= n) {
      issues.push_back(what + ": endpoint out of range");
      continue;
    }
    if (edge.u == edge.v) {
      issues.push_back(what + ": self-loop");
      continue;
    }
    if (!seen.insert(std::minmax(edge.u, edge.v)).second) issues.push_back(what + ": duplicate edge");
    if (edge.rows != game.num_strategies(edge.u) || edge.cols != game.num_strategies(edge.v) ||
        edge.table.size() != edge.rows * edge.cols) {
      issues.push_back(what + ": table dimensions do not match strategy sets");
    }
    for (const auto& q : edge.table) {
      if (q.sign() < 0) {
        issues.push_back(what + ": negative payoff");
        break;
      }
    }
  }
  return issues;
}

std::vector<std::string> validate(const GraphCoordinationSpec& spec) {
  std::vector<std::string> issues;
  const auto n = static_cast<PlayerId>(spec.nodes.size());
  for (PlayerId v = 0; v < n; ++v) {
    const auto& node = spec.nodes[static_cast<std::size_t>(v)];
    const std::string who = "node " + std::to_string(v);
    if (node.colors.empty()) issues.push_back(who + ": empty colour set");
    std::set<std::string> names(node.colors.begin(), node.colors.end());
    if (names.size() != node.colors.size()) issues.push_back(who + ": duplicate colour");
    if (!node.preferences.empty() && node.preferences.size() != node.colors.size()) {
      issues.push_back(who + ": preference vector does not match colour set");
    }
    for (const auto& q : node.preferences) {
      if (q.sign() < 0) {
        issues.push_back(who + ": negative payoff in preferences");
        break;
      }
    }
  }
  std::set<std::pair<PlayerId, PlayerId>> seen;
  for (std::size_t e = 0; e < spec.edges.size(); ++e) {
    const auto& edge = spec.edges[e];
    const std::string what = "edge " + std::to_string(e) + " {" + std::to_string(edge.u) + "," +
                             std::to_string(edge.v) + "}";
    if (edge.u < 0 || edge.v < 0 || edge.u >= n || edge.v >= n) {
      issues.push_back(what + ": endpoint out of range");
      continue;
    }
    if (edge.u == edge.v) {
      issues.push_back(what + ": self-loop");
      continue;
    }
    if (!seen.insert(std::minmax(edge.u, edge.v)).second) issues.push_back(what + ": duplicate edge");
    if (edge.weight.sign() < 0) issues.push_back(what + ": negative payoff");
  }
  return issues;
}

void require_valid(const PolymatrixGame& game) {
  const auto issues = validate(game);
  if (issues.empty()) return;
  std::ostringstream os;
  os << "invalid game: ";
  join(os, issues);
  throw InputError(os.str());
}

void require_valid(const GraphCoordinationSpec& spec) {
  const auto issues = validate(spec);
  if (issues.empty()) return;
  std::ostringstream os;
  os << "invalid graph coordination game: ";
  join(os, issues);
  throw InputError(os.str());
}

// ---------------------------------------------------------------------------
// Graph coordination

PolymatrixGame from_graph_coordination(const GraphCoordinationSpec& spec) {
  require_valid(spec);
  std::vector<PolymatrixGame::Player> players;
  players.reserve(spec.nodes.size());
  for (const auto& node : spec.nodes) {
    PolymatrixGame::Player p{node.name, node.colors, node.preferences};
    if (p.preferences.empty()) p.preferences.assign(node.colors.size(), Rational());
    players.push_back(std::move(p));
  }
  std::vector<EdgePayoff> edges;
  edges.reserve(spec.edges.size());
  for (const auto& e : spec.edges) {
    const auto& cu = spec.nodes[static_cast<std::size_t>(e.u)].colors;
    const auto& cv = spec.nodes[static_cast<std::size_t>(e.v)].colors;
    EdgePayoff table(e.u, e.v, cu.size(), cv.size());
    for (std::size_t a = 0; a < cu.size(); ++a) {
      for (std::size_t b = 0; b < cv.size(); ++b) {
        if (cu[a] == cv[b]) table.at(static_cast<StrategyIndex>(a), static_cast<StrategyIndex>(b)) = e.weight;
      }
    }
    edges.push_back(std::move(table));
  }
  return PolymatrixGame(std::move(players), std::move(edges));
}

std::optional<GraphCoordinationSpec> as_graph_coordination(const PolymatrixGame& game) {
  if (!validate(game).empty()) return std::nullopt;
  GraphCoordinationSpec spec;
  for (const auto& p : game.players()) {
    std::set<std::string> names(p.strategies.begin(), p.strategies.end());
    if (names.size() != p.strategies.size()) return std::nullopt;
    GraphCoordinationSpec::Node node{p.name, p.strategies, {}};
    if (!all_zero(p.preferences)) node.preferences = p.preferences;
    spec.nodes.push_back(std::move(node));
  }
  for (const auto& edge : game.edges()) {
    const auto& su = game.player(edge.u).strategies;
    const auto& sv = game.player(edge.v).strategies;
    std::optional<Rational> weight;
    for (std::size_t a = 0; a < su.size(); ++a) {
      for (std::size_t b = 0; b < sv.size(); ++b) {
        const auto& q = edge.at(static_cast<StrategyIndex>(a), static_cast<StrategyIndex>(b));
        if (su[a] == sv[b]) {
          if (weight && *weight != q) return std::nullopt;
          weight = q;
        } else if (q.sign() != 0) {
          return std::nullopt;
        }
      }
    }
    spec.edges.push_back({edge.u, edge.v, weight.value_or(Rational())});
  }
  return spec;
}

ColorStructure color_structure(const PolymatrixGame& game) {
  const auto spec = as_graph_coordination(game);
  if (!spec) throw UnsupportedGame("not a graph coordination game");
  ColorStructure cs;
  std::set<std::string> all;
  for (const auto& node : spec->nodes) all.insert(node.colors.begin(), node.colors.end());
  cs.colors.assign(all.begin(), all.end());
  std::map<std::string, int> id;
  for (std::size_t c = 0; c < cs.colors.size(); ++c) id[cs.colors[c]] = static_cast<int>(c);
  for (const auto& node : spec->nodes) {
    std::vector<int> of;
    std::vector<StrategyIndex> idx(cs.colors.size(), -1);
    for (std::size_t x = 0; x < node.colors.size(); ++x) {
      const int c = id[node.colors[x]];
      of.push_back(c);
      idx[static_cast<std::size_t>(c)] = static_cast<StrategyIndex>(x);
    }
    cs.color_of.push_back(std::move(of));
    cs.index_of.push_back(std::move(idx));
  }
  for (const auto& e : spec->edges) cs.weight.push_back(e.weight);
  return cs;
}

std::string format_profile(const PolymatrixGame& game, const JointStrategy& s) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) os << ",";
    const auto& names = game.player(static_cast<PlayerId>(i)).strategies;
    const auto x = static_cast<std::size_t>(s.choice[i]);
    if (x < names.size()) {
      os << names[x];
    } else {
      os << "#" << s.choice[i];
    }
  }
  os << ")";
  return os.str();
}

}  // namespace polycoord
