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

// Polymatrix coordination games with individual preferences.
//
// Player i picks a strategy s_i from S_i and earns
//
//   p_i(s) = q^i(s_i) + sum_{j in N_i} q^ij(s_i, s_j)
//
// where every edge table q^ij is non-negative and paid in full to both
// endpoints. Graph coordination games are the special case where the table
// of edge {i, j} is w_ij on equal colours and 0 elsewhere.

#ifndef POLYCOORD_GAME_HPP
#define POLYCOORD_GAME_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polycoord/rational.hpp"

namespace polycoord {

using PlayerId = int;
using StrategyIndex = int;

/// One strategy index per player.
struct JointStrategy {
  std::vector<StrategyIndex> choice;

  JointStrategy() = default;
  explicit JointStrategy(std::vector<StrategyIndex> c) : choice(std::move(c)) {}

  std::size_t size() const { return choice.size(); }
  StrategyIndex operator[](PlayerId i) const { return choice[static_cast<std::size_t>(i)]; }
  StrategyIndex& operator[](PlayerId i) { return choice[static_cast<std::size_t>(i)]; }

  friend bool operator==(const JointStrategy&, const JointStrategy&) = default;
  friend auto operator<=>(const JointStrategy&, const JointStrategy&) = default;
};

/// Sorted, duplicate-free set of players.
class Coalition {
 public:
  Coalition() = default;
  /// Sorts the members. Throws InputError on duplicates or negative ids.
  explicit Coalition(std::vector<PlayerId> members);

  static Coalition all(std::size_t n);

  const std::vector<PlayerId>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(PlayerId i) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const Coalition&, const Coalition&) = default;
  friend auto operator<=>(const Coalition&, const Coalition&) = default;

 private:
  std::vector<PlayerId> members_;
};

/// Payoff table of one undirected edge, stored once, read by both endpoints.
struct EdgePayoff {
  PlayerId u = 0;
  PlayerId v = 0;
  std::size_t rows = 0;  // |S_u|
  std::size_t cols = 0;  // |S_v|
  std::vector<Rational> table;  // row-major, rows x cols

  EdgePayoff() = default;
  EdgePayoff(PlayerId u, PlayerId v, std::size_t rows, std::size_t cols);
  EdgePayoff(PlayerId u, PlayerId v, std::vector<std::vector<Rational>> entries);

  const Rational& at(StrategyIndex su, StrategyIndex sv) const;
  Rational& at(StrategyIndex su, StrategyIndex sv);
};

class PolymatrixGame {
 public:
  struct Player {
    std::string name;
    std::vector<std::string> strategies;
    /// Aligned with `strategies`; an empty vector means all zero.
    std::vector<Rational> preferences;
  };

  /// Edge seen from one endpoint.
  struct Incidence {
    PlayerId neighbor;
    std::size_t edge;
    bool owner_is_u;
  };

  PolymatrixGame() = default;
  /// Never throws on invariant violations; use validate() to inspect them.
  PolymatrixGame(std::vector<Player> players, std::vector<EdgePayoff> edges);

  std::size_t num_players() const { return players_.size(); }
  const Player& player(PlayerId i) const { return players_[static_cast<std::size_t>(i)]; }
  const std::vector<Player>& players() const { return players_; }
  std::size_t num_strategies(PlayerId i) const { return player(i).strategies.size(); }
  const std::vector<EdgePayoff>& edges() const { return edges_; }
  const std::vector<Incidence>& incident(PlayerId i) const {
    return incidence_[static_cast<std::size_t>(i)];
  }

  const Rational& preference(PlayerId i, StrategyIndex x) const;
  /// q^ij(own, other) for the edge described by `inc` seen from its owner.
  const Rational& edge_payoff(const Incidence& inc, StrategyIndex own, StrategyIndex other) const;
  /// q^ij(s_i, s_j) for edge index e under profile s.
  const Rational& edge_value(std::size_t e, const JointStrategy& s) const;

  /// |S_1| * ... * |S_n|, saturating at UINT64_MAX.
  std::uint64_t profile_count() const;

  /// Looks up a strategy by name; nullopt if absent.
  std::optional<StrategyIndex> strategy_index(PlayerId i, const std::string& name) const;

  friend bool operator==(const PolymatrixGame& a, const PolymatrixGame& b);

 private:
  std::vector<Player> players_;
  std::vector<EdgePayoff> edges_;
  std::vector<std::vector<Incidence>> incidence_;
};

/// Graph coordination game: colours per node, weighted edges, optional
/// per-colour preferences.
struct GraphCoordinationSpec {
  struct Node {
    std::string name;
    std::vector<std::string> colors;
    /// Aligned with `colors`; empty means no preferences.
    std::vector<Rational> preferences;
  };
  struct Edge {
    PlayerId u = 0;
    PlayerId v = 0;
    Rational weight;
  };

  std::vector<Node> nodes;
  std::vector<Edge> edges;

  std::size_t num_nodes() const { return nodes.size(); }
  bool has_preferences() const;
  /// q^v(colour index x); zero when the node carries no preferences.
  Rational preference(PlayerId v, StrategyIndex x) const;

  friend bool operator==(const GraphCoordinationSpec& a, const GraphCoordinationSpec& b);
};

bool operator==(const GraphCoordinationSpec::Edge& a, const GraphCoordinationSpec::Edge& b);

/// Throws InputError when `s` does not fit the game.
void check_profile(const PolymatrixGame& game, const JointStrategy& s);

/// p_i(s). Throws InputError for a bad player id or malformed profile.
Rational payoff(const PolymatrixGame& game, const JointStrategy& s, PlayerId i);
std::vector<Rational> payoffs(const PolymatrixGame& game, const JointStrategy& s);

Rational social_welfare(const PolymatrixGame& game, const JointStrategy& s);
Rational social_welfare_coalition(const PolymatrixGame& game, const JointStrategy& s,
                                  const Coalition& coalition);

/// Sum of preferences plus each edge once; changes by exactly the deviator's
/// payoff change under any unilateral deviation.
Rational exact_potential(const PolymatrixGame& game, const JointStrategy& s);

/// All violated invariants; empty when the game is well formed.
std::vector<std::string> validate(const PolymatrixGame& game);
std::vector<std::string> validate(const GraphCoordinationSpec& spec);
/// Throws InputError listing every violation.
void require_valid(const PolymatrixGame& game);
void require_valid(const GraphCoordinationSpec& spec);

PolymatrixGame from_graph_coordination(const GraphCoordinationSpec& spec);

/// Recovers the colour/weight description when every edge table is w on
/// equal strategy names and 0 elsewhere. Preferences are dropped from the
/// result when they are all zero.
std::optional<GraphCoordinationSpec> as_graph_coordination(const PolymatrixGame& game);

/// Colour-level view of a recognised graph coordination game, shared by the
/// graph-specific algorithms.
struct ColorStructure {
  std::vector<std::string> colors;  // sorted global colour names
  std::vector<std::vector<int>> color_of;         // [player][strategy] -> colour id
  std::vector<std::vector<StrategyIndex>> index_of;  // [player][colour id] -> strategy or -1
  std::vector<Rational> weight;                   // per edge index of the game

  int color(PlayerId i, StrategyIndex x) const {
    return color_of[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
  }
  StrategyIndex index(PlayerId i, int color) const {
    return index_of[static_cast<std::size_t>(i)][static_cast<std::size_t>(color)];
  }
};

/// Throws UnsupportedGame when the game is not a graph coordination game.
ColorStructure color_structure(const PolymatrixGame& game);

std::string format_profile(const PolymatrixGame& game, const JointStrategy& s);

}  // namespace polycoord

template <>
struct std::hash<polycoord::JointStrategy> {
  std::size_t operator()(const polycoord::JointStrategy& s) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (const auto c : s.choice) {
      h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

#endif  // POLYCOORD_GAME_HPP
