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

#include "polycoord/tree_solver.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "polycoord/errors.hpp"
#include "polycoord/verification.hpp"

namespace polycoord {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

bool acyclic(std::size_t n, const std::vector<std::pair<PlayerId, PlayerId>>& edges) {
  DisjointSets sets(n);
  for (const auto& [u, v] : edges) {
    if (!sets.unite(static_cast<std::size_t>(u), static_cast<std::size_t>(v))) return false;
  }
  return true;
}

// Backwards induction on the component of `root`; assumes the game graph is
// a forest.
SpeTable solve_component(const PolymatrixGame& game, PlayerId root) {
  const std::size_t n = game.num_players();
  SpeTable table;
  table.root = root;
  table.parent.assign(n, -1);
  table.children.assign(n, {});
  table.best_response.assign(n, {});
  table.value.assign(n, {});
  std::vector<std::size_t> parent_edge(n, 0);
  std::vector<char> seen(n, 0);
  std::deque<PlayerId> queue{root};
  seen[static_cast<std::size_t>(root)] = 1;
  while (!queue.empty()) {
    const PlayerId v = queue.front();
    queue.pop_front();
    table.order.push_back(v);
    for (const auto& inc : game.incident(v)) {
      const auto j = static_cast<std::size_t>(inc.neighbor);
      if (seen[j]) continue;
      seen[j] = 1;
      table.parent[j] = v;
      parent_edge[j] = inc.edge;
      table.children[static_cast<std::size_t>(v)].push_back(inc.neighbor);
      queue.push_back(inc.neighbor);
    }
  }

  // Edge payoff between v and its neighbour `other` seen from v.
  auto from_v = [&](PlayerId v, std::size_t edge, StrategyIndex own, StrategyIndex other) {
    const auto& e = game.edges()[edge];
    return e.u == v ? e.at(own, other) : e.at(other, own);
  };

  for (auto it = table.order.rbegin(); it != table.order.rend(); ++it) {
    const PlayerId v = *it;
    const auto vi = static_cast<std::size_t>(v);
    const PlayerId p = table.parent[vi];
    const std::size_t rows = p < 0 ? 1 : game.num_strategies(p);
    const auto m = static_cast<StrategyIndex>(game.num_strategies(v));
    // Contribution of the subtree below v for each own strategy y.
    std::vector<Rational> below(static_cast<std::size_t>(m));
    for (StrategyIndex y = 0; y < m; ++y) {
      Rational total = game.preference(v, y);
      for (const auto c : table.children[vi]) {
        const auto cy = table.response(c, y);
        total += from_v(v, parent_edge[static_cast<std::size_t>(c)], y, cy);
      }
      below[static_cast<std::size_t>(y)] = std::move(total);
    }
    table.best_response[vi].assign(rows, 0);
    table.value[vi].assign(rows, Rational());
    for (std::size_t x = 0; x < rows; ++x) {
      StrategyIndex best = 0;
      Rational best_value;
      for (StrategyIndex y = 0; y < m; ++y) {
        Rational value = below[static_cast<std::size_t>(y)];
        if (p >= 0) value += from_v(v, parent_edge[vi], y, static_cast<StrategyIndex>(x));
        if (y == 0 || value > best_value) {
          best = y;
          best_value = std::move(value);
        }
      }
      table.best_response[vi][x] = best;
      table.value[vi][x] = std::move(best_value);
    }
  }
  return table;
}

std::vector<std::pair<PlayerId, PlayerId>> edge_list(const PolymatrixGame& game) {
  std::vector<std::pair<PlayerId, PlayerId>> out;
  for (const auto& e : game.edges()) out.emplace_back(e.u, e.v);
  return out;
}

}  // namespace

StrategyIndex SpeTable::response(PlayerId v, StrategyIndex parent_strategy) const {
  const auto& row = best_response[static_cast<std::size_t>(v)];
  if (parent[static_cast<std::size_t>(v)] < 0) return row.at(0);
  return row.at(static_cast<std::size_t>(parent_strategy));
}

JointStrategy SpeTable::implemented() const {
  JointStrategy s(std::vector<StrategyIndex>(parent.size(), 0));
  for (const auto v : order) {
    const PlayerId p = parent[static_cast<std::size_t>(v)];
    s[v] = response(v, p < 0 ? 0 : s[p]);
  }
  return s;
}

PreferenceElimination eliminate_preferences(const GraphCoordinationSpec& spec) {
  require_valid(spec);
  PreferenceElimination out;
  out.original_nodes = spec.nodes.size();
  out.spec.edges = spec.edges;
  for (const auto& node : spec.nodes) out.spec.nodes.push_back({node.name, node.colors, {}});
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    const auto& node = spec.nodes[i];
    for (std::size_t x = 0; x < node.preferences.size(); ++x) {
      const Rational& q = node.preferences[x];
      if (q.sign() <= 0) continue;
      const auto id = static_cast<PlayerId>(out.spec.nodes.size());
      out.spec.nodes.push_back({node.name + "~" + node.colors[x], {node.colors[x]}, {}});
      out.spec.edges.push_back({static_cast<PlayerId>(i), id, q});
      out.dummies.push_back({id, static_cast<PlayerId>(i), static_cast<StrategyIndex>(x)});
    }
  }
  return out;
}

bool is_forest(const GraphCoordinationSpec& spec) {
  std::vector<std::pair<PlayerId, PlayerId>> edges;
  for (const auto& e : spec.edges) edges.emplace_back(e.u, e.v);
  return acyclic(spec.nodes.size(), edges);
}

SpeTable subgame_perfect_strategy(const PolymatrixGame& tree, PlayerId root) {
  require_valid(tree);
  const std::size_t n = tree.num_players();
  if (root < 0 || static_cast<std::size_t>(root) >= n) throw InputError("root out of range");
  if (!acyclic(n, edge_list(tree))) throw StructureError("game graph has a cycle");
  SpeTable table = solve_component(tree, root);
  if (table.order.size() != n) throw StructureError("game graph is not connected");
  return table;
}

SpeTable subgame_perfect_strategy(const GraphCoordinationSpec& tree, PlayerId root) {
  return subgame_perfect_strategy(from_graph_coordination(tree), root);
}

JointStrategy strong_equilibrium_tree(const GraphCoordinationSpec& forest,
                                      const std::vector<PlayerId>& roots) {
  require_valid(forest);
  if (!is_forest(forest)) throw StructureError("graph coordination game is not on a forest");
  const std::size_t n = forest.nodes.size();
  for (const auto r : roots) {
    if (r < 0 || static_cast<std::size_t>(r) >= n) throw InputError("root out of range");
  }
  const PreferenceElimination elim = eliminate_preferences(forest);
  const PolymatrixGame game = from_graph_coordination(elim.spec);

  JointStrategy full(std::vector<StrategyIndex>(game.num_players(), 0));
  std::vector<char> done(game.num_players(), 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (done[start]) continue;
    // Component of `start`; first pass only to discover it.
    SpeTable probe = solve_component(game, static_cast<PlayerId>(start));
    PlayerId root = static_cast<PlayerId>(start);
    for (const auto r : roots) {
      if (std::find(probe.order.begin(), probe.order.end(), r) != probe.order.end()) {
        root = r;
        break;
      }
    }
    const SpeTable table = root == static_cast<PlayerId>(start) ? std::move(probe)
                                                                 : solve_component(game, root);
    const JointStrategy part = table.implemented();
    for (const auto v : table.order) {
      full[v] = part[v];
      done[static_cast<std::size_t>(v)] = 1;
    }
  }
  JointStrategy result(std::vector<StrategyIndex>(full.choice.begin(),
                                                  full.choice.begin() + static_cast<std::ptrdiff_t>(n)));
  const PolymatrixGame original = from_graph_coordination(forest);
  if (!is_alpha_strong_equilibrium_graph(original, result, Rational(1)).verdict) {
    throw InvariantViolation("tree solver output is not a strong equilibrium");
  }
  return result;
}

SequentialCounterexample gen_seq_counterexample() {
  // Strategy 0 = coordinate, 1 = play selfishly.
  std::vector<PolymatrixGame::Player> players{
      {"u", {"c_u", "s_u"}, {Rational(0), Rational(3)}},
      {"v", {"c_v", "s_v"}, {Rational(0), Rational(3)}},
  };
  std::vector<EdgePayoff> edges{EdgePayoff(0, 1, {{Rational(4), Rational(0)},
                                                  {Rational(2), Rational(0)}})};
  SequentialCounterexample out{PolymatrixGame(std::move(players), std::move(edges)), {}};
  out.implemented = subgame_perfect_strategy(out.game, 0).implemented();
  if (is_equilibrium(out.game, out.implemented, Rational(1), 1).verdict) {
    throw InvariantViolation("sequential outcome unexpectedly a Nash equilibrium");
  }
  return out;
}

}  // namespace polycoord
