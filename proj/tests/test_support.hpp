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

// Random instances and a deliberately naive oracle shared by the tests.
// The oracle reads the raw tables only; it never calls library payoff or
// search code.

#ifndef POLYCOORD_TESTS_TEST_SUPPORT_HPP
#define POLYCOORD_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "polycoord/game.hpp"
#include "polycoord/instances.hpp"
#include "polycoord/rational.hpp"

namespace polycoord::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// Small non-negative rational: numerator in [0, max_num], denominator in
/// {1, 2, 3}.
inline Rational small_rational(Rng& rng, int max_num) {
  return Rational(uniform(rng, 0, max_num), uniform(rng, 1, 3));
}

struct PolymatrixShape {
  int max_players = 6;
  int max_strategies = 3;
  int max_value = 6;
  double edge_probability = 0.6;
  bool preferences = true;
};

inline PolymatrixGame random_polymatrix(Rng& rng, const PolymatrixShape& shape = {}) {
  const int n = uniform(rng, 1, shape.max_players);
  std::vector<PolymatrixGame::Player> players;
  for (int i = 0; i < n; ++i) {
    PolymatrixGame::Player p{"p" + std::to_string(i), {}, {}};
    const int m = uniform(rng, 1, shape.max_strategies);
    for (int x = 0; x < m; ++x) {
      p.strategies.push_back("s" + std::to_string(x));
      if (shape.preferences) p.preferences.push_back(coin(rng, 0.5) ? small_rational(rng, shape.max_value) : Rational(0));
    }
    players.push_back(std::move(p));
  }
  std::vector<EdgePayoff> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!coin(rng, shape.edge_probability)) continue;
      EdgePayoff e(u, v, players[static_cast<std::size_t>(u)].strategies.size(),
                   players[static_cast<std::size_t>(v)].strategies.size());
      for (auto& cell : e.table) cell = coin(rng, 0.6) ? small_rational(rng, shape.max_value) : Rational(0);
      edges.push_back(std::move(e));
    }
  }
  return PolymatrixGame(std::move(players), std::move(edges));
}

struct GraphShape {
  int min_nodes = 1;
  int max_nodes = 7;
  int palette = 3;             // colours drawn from {k0..k(palette-1)}
  int max_colors = 3;
  int max_weight = 4;
  double edge_probability = 0.5;
  bool preferences = false;
  bool forest = false;
};

inline GraphCoordinationSpec random_graph_spec(Rng& rng, const GraphShape& shape = {}) {
  const int n = uniform(rng, shape.min_nodes, shape.max_nodes);
  GraphCoordinationSpec spec;
  for (int v = 0; v < n; ++v) {
    GraphCoordinationSpec::Node node{"n" + std::to_string(v), {}, {}};
    std::vector<int> palette(static_cast<std::size_t>(shape.palette));
    for (int c = 0; c < shape.palette; ++c) palette[static_cast<std::size_t>(c)] = c;
    std::shuffle(palette.begin(), palette.end(), rng);
    const int m = uniform(rng, 1, std::min(shape.max_colors, shape.palette));
    for (int c = 0; c < m; ++c) {
      node.colors.push_back("k" + std::to_string(palette[static_cast<std::size_t>(c)]));
      if (shape.preferences) node.preferences.push_back(coin(rng, 0.5) ? small_rational(rng, shape.max_weight) : Rational(0));
    }
    spec.nodes.push_back(std::move(node));
  }
  auto weight = [&] { return Rational(uniform(rng, 1, shape.max_weight * 2), uniform(rng, 1, 2)); };
  if (shape.forest) {
    for (int v = 1; v < n; ++v) {
      if (coin(rng, 0.85)) spec.edges.push_back({uniform(rng, 0, v - 1), v, weight()});
    }
  } else {
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (coin(rng, shape.edge_probability)) spec.edges.push_back({u, v, weight()});
      }
    }
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Oracle

inline Rational oracle_payoff(const PolymatrixGame& game, const std::vector<int>& s, int i) {
  const auto& player = game.players()[static_cast<std::size_t>(i)];
  Rational total = player.preferences.empty() ? Rational(0)
                                              : player.preferences[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])];
  for (const auto& e : game.edges()) {
    if (e.u != i && e.v != i) continue;
    const auto su = static_cast<std::size_t>(s[static_cast<std::size_t>(e.u)]);
    const auto sv = static_cast<std::size_t>(s[static_cast<std::size_t>(e.v)]);
    total += e.table[su * e.cols + sv];
  }
  return total;
}

inline Rational oracle_welfare(const PolymatrixGame& game, const std::vector<int>& s) {
  Rational total;
  for (int i = 0; i < static_cast<int>(game.players().size()); ++i) total += oracle_payoff(game, s, i);
  return total;
}

/// Calls visit on every profile (odometer over strategy counts).
inline void oracle_profiles(const std::vector<int>& counts,
                            const std::function<void(const std::vector<int>&)>& visit) {
  for (const int c : counts) {
    if (c == 0) return;
  }
  std::vector<int> s(counts.size(), 0);
  while (true) {
    visit(s);
    std::size_t i = 0;
    while (i < s.size() && ++s[i] == counts[i]) s[i++] = 0;
    if (i == s.size()) return;
  }
}

inline std::vector<int> strategy_counts(const PolymatrixGame& game) {
  std::vector<int> counts;
  for (const auto& p : game.players()) counts.push_back(static_cast<int>(p.strategies.size()));
  return counts;
}

/// Some (alpha, k)-improving deviation from s as the resulting profile, by
/// trying every subset of at most k players and every joint change.
inline std::optional<std::vector<int>> oracle_deviation(const PolymatrixGame& game,
                                                        const std::vector<int>& s,
                                                        const Rational& alpha, std::size_t k) {
  const int n = static_cast<int>(game.players().size());
  const auto counts = strategy_counts(game);
  std::vector<Rational> before;
  for (int i = 0; i < n; ++i) before.push_back(oracle_payoff(game, s, i));
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > k) continue;
    std::vector<int> members;
    std::vector<int> sub;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        members.push_back(i);
        sub.push_back(counts[static_cast<std::size_t>(i)]);
      }
    }
    std::optional<std::vector<int>> found;
    oracle_profiles(sub, [&](const std::vector<int>& choice) {
      if (found) return;
      std::vector<int> t = s;
      for (std::size_t m = 0; m < members.size(); ++m) {
        if (choice[m] == s[static_cast<std::size_t>(members[m])]) return;
        t[static_cast<std::size_t>(members[m])] = choice[m];
      }
      for (const int i : members) {
        if (!(oracle_payoff(game, t, i) > alpha * before[static_cast<std::size_t>(i)])) return;
      }
      found = t;
    });
    if (found) return found;
  }
  return std::nullopt;
}

inline bool oracle_is_equilibrium(const PolymatrixGame& game, const std::vector<int>& s,
                                  const Rational& alpha, std::size_t k) {
  return !oracle_deviation(game, s, alpha, k).has_value();
}

inline std::vector<std::vector<int>> oracle_equilibria(const PolymatrixGame& game,
                                                       const Rational& alpha, std::size_t k) {
  std::vector<std::vector<int>> out;
  oracle_profiles(strategy_counts(game), [&](const std::vector<int>& s) {
    if (oracle_is_equilibrium(game, s, alpha, k)) out.push_back(s);
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline Rational oracle_optimum(const PolymatrixGame& game) {
  Rational best;
  bool first = true;
  oracle_profiles(strategy_counts(game), [&](const std::vector<int>& s) {
    Rational sw = oracle_welfare(game, s);
    if (first || sw > best) best = sw;
    first = false;
  });
  return best;
}

/// All graphs on n labelled nodes, one per edge subset.
inline std::vector<SimpleGraph> all_graphs(std::size_t n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < static_cast<int>(n); ++u) {
    for (int v = u + 1; v < static_cast<int>(n); ++v) pairs.emplace_back(u, v);
  }
  std::vector<SimpleGraph> out;
  for (std::uint64_t mask = 0; mask < (1ull << pairs.size()); ++mask) {
    SimpleGraph g;
    g.n = n;
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      if (mask & (1ull << e)) g.edges.push_back(pairs[e]);
    }
    out.push_back(std::move(g));
  }
  return out;
}

/// One representative per isomorphism class of graphs on n nodes.
inline std::vector<SimpleGraph> graphs_up_to_isomorphism(std::size_t n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < static_cast<int>(n); ++u) {
    for (int v = u + 1; v < static_cast<int>(n); ++v) pairs.emplace_back(u, v);
  }
  auto pair_index = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      if (pairs[e] == std::make_pair(u, v)) return e;
    }
    return pairs.size();
  };
  std::vector<int> perm(n);
  std::vector<std::uint64_t> seen;
  std::vector<SimpleGraph> out;
  for (const auto& g : all_graphs(n)) {
    std::uint64_t canonical = ~0ull;
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    do {
      std::uint64_t code = 0;
      for (const auto& [u, v] : g.edges) {
        code |= 1ull << pair_index(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
      }
      canonical = std::min(canonical, code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (std::find(seen.begin(), seen.end(), canonical) != seen.end()) continue;
    seen.push_back(canonical);
    out.push_back(g);
  }
  return out;
}

inline bool has_clique(const SimpleGraph& g, std::size_t k) {
  for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    bool ok = true;
    for (int u = 0; u < static_cast<int>(g.n) && ok; ++u) {
      for (int v = u + 1; v < static_cast<int>(g.n) && ok; ++v) {
        if ((mask & (1u << u)) && (mask & (1u << v)) && !g.adjacent(u, v)) ok = false;
      }
    }
    if (ok) return true;
  }
  return false;
}

/// Size of a smallest inclusion-maximal matching (edge subsets).
inline std::size_t minimum_maximal_matching(const SimpleGraph& g) {
  std::size_t best = g.edges.size() + 1;
  const std::size_t m = g.edges.size();
  for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
    std::vector<int> used(g.n, 0);
    bool matching = true;
    for (std::size_t e = 0; e < m && matching; ++e) {
      if (!(mask & (1ull << e))) continue;
      const auto [u, v] = g.edges[e];
      if (used[static_cast<std::size_t>(u)]++ || used[static_cast<std::size_t>(v)]++) matching = false;
    }
    if (!matching) continue;
    bool maximal = true;
    for (const auto& [u, v] : g.edges) {
      if (!used[static_cast<std::size_t>(u)] && !used[static_cast<std::size_t>(v)]) maximal = false;
    }
    if (maximal) best = std::min(best, static_cast<std::size_t>(__builtin_popcountll(mask)));
  }
  return best;
}

inline std::size_t minimum_vertex_cover(const SimpleGraph& g) {
  std::size_t best = g.n;
  for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
    bool cover = true;
    for (const auto& [u, v] : g.edges) {
      if (!(mask & (1u << u)) && !(mask & (1u << v))) cover = false;
    }
    if (cover) best = std::min(best, static_cast<std::size_t>(__builtin_popcount(mask)));
  }
  return best;
}

}  // namespace polycoord::testing

#endif  // POLYCOORD_TESTS_TEST_SUPPORT_HPP
