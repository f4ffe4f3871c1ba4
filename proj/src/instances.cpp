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

#include "polycoord/instances.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "polycoord/errors.hpp"

namespace polycoord {
namespace {

using Node = GraphCoordinationSpec::Node;
using Edge = GraphCoordinationSpec::Edge;

std::string idx(std::size_t i) { return std::to_string(i); }

}  // namespace

void SimpleGraph::validate() const {
  if (!weights.empty() && weights.size() != edges.size()) {
    throw InputError("graph weights do not match the edge list");
  }
  std::set<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw InputError("edge " + idx(e) + " has an endpoint out of range");
    }
    if (u == v) throw InputError("edge " + idx(e) + " is a self-loop");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      throw InputError("edge " + idx(e) + " is a duplicate");
    }
    if (!weights.empty() && weights[e].sign() < 0) {
      throw InputError("edge " + idx(e) + " has a negative weight");
    }
  }
}

bool SimpleGraph::adjacent(int u, int v) const {
  return std::any_of(edges.begin(), edges.end(), [&](const auto& e) {
    return (e.first == u && e.second == v) || (e.first == v && e.second == u);
  });
}

SimpleGraph SimpleGraph::complete(std::size_t n) {
  SimpleGraph g;
  g.n = n;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
  }
  return g;
}

SimpleGraph SimpleGraph::path(std::size_t n) {
  SimpleGraph g;
  g.n = n;
  for (std::size_t v = 1; v < n; ++v) g.edges.emplace_back(v - 1, v);
  return g;
}

GraphCoordinationSpec gen_private_common(const SimpleGraph& graph) {
  graph.validate();
  GraphCoordinationSpec spec;
  for (std::size_t v = 0; v < graph.n; ++v) {
    spec.nodes.push_back({"v" + idx(v), {"c" + idx(v), "c"}, {}});
  }
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    spec.edges.push_back({graph.edges[e].first, graph.edges[e].second, graph.weight(e)});
  }
  return spec;
}

CycleInstance gen_cycle_counterexample(std::size_t m) {
  if (m < 4) throw InputError("the cycle construction needs at least 4 players");
  const auto mi = static_cast<int>(m);
  auto mod = [mi](int x) { return ((x % mi) + mi) % mi; };
  std::vector<PolymatrixGame::Player> players;
  for (int i = 0; i < mi; ++i) {
    PolymatrixGame::Player p{"p" + std::to_string(i), {}, {}};
    for (int j = 0; j < mi; ++j) p.strategies.push_back("support" + std::to_string(j));
    players.push_back(std::move(p));
  }
  std::vector<EdgePayoff> edges;
  for (int i = 0; i < mi; ++i) {
    for (int j = i + 1; j < mi; ++j) {
      EdgePayoff e(i, j, m, m);
      e.at(j, j) = Rational::pow2(static_cast<unsigned>(mod(i - j - 1)));  // both support j
      e.at(i, i) = Rational::pow2(static_cast<unsigned>(mod(j - i - 1)));  // both support i
      edges.push_back(std::move(e));
    }
  }
  CycleInstance out{PolymatrixGame(std::move(players), std::move(edges)), {}, {},
                    Rational(2) - Rational(1) / Rational::pow2(static_cast<unsigned>(m - 3))};
  // s^j: j+1 supports itself, everyone else supports j.
  auto state = [&](int j) {
    JointStrategy s(std::vector<StrategyIndex>(m, j));
    s[mod(j + 1)] = mod(j + 1);
    return s;
  };
  for (int t = 0; t < mi; ++t) {
    const int j = mod(mi - 1 - t);
    out.schedule.push_back(state(j));
    // Moving s^j -> s^{j-1}: everyone except j changes.
    std::vector<PlayerId> members;
    for (int i = 0; i < mi; ++i) {
      if (i != j) members.push_back(i);
    }
    out.coalitions.emplace_back(std::move(members));
  }
  return out;
}

GraphCoordinationSpec gen_golden_ratio(const Rational& w) {
  if (w <= Rational(1)) throw InputError("triangle weight must exceed 1");
  GraphCoordinationSpec spec;
  spec.nodes = {
      {"v0", {"x", "z"}, {}}, {"v1", {"x", "y"}, {}}, {"v2", {"y", "z"}, {}},
      {"u1", {"y"}, {}},      {"u2", {"z"}, {}},      {"u3", {"x"}, {}},
  };
  spec.edges = {{0, 1, w}, {1, 2, w}, {0, 2, w},
                {1, 3, Rational(1)}, {2, 4, Rational(1)}, {0, 5, Rational(1)}};
  return spec;
}

Rational golden_ratio_threshold(const Rational& w) {
  if (w <= Rational(1)) throw InputError("triangle weight must exceed 1");
  return std::min(w, (Rational(1) + w) / w);
}

GraphCoordinationSpec gen_spoa_path(const Rational& a) {
  if (a < Rational(1)) throw InputError("path weight must be at least 1");
  GraphCoordinationSpec spec;
  spec.nodes = {{"v1", {"a"}, {}}, {"v2", {"a", "b"}, {}}, {"v3", {"c", "b"}, {}}, {"v4", {"c"}, {}}};
  spec.edges = {{0, 1, a}, {1, 2, Rational(1)}, {2, 3, a}};
  return spec;
}

GraphCoordinationSpec gen_poa_lower(std::size_t n, std::size_t k, const Rational& a) {
  if (k < 2 || k >= n) throw InputError("gen_poa_lower needs 2 <= k < n");
  if (a < Rational(1)) throw InputError("bipartite weight must be at least 1");
  GraphCoordinationSpec spec;
  for (std::size_t v = 0; v < n; ++v) {
    if (v < k) {
      spec.nodes.push_back({"s" + idx(v), {"a", "c"}, {}});
    } else {
      spec.nodes.push_back({"t" + idx(v - k), {"b", "c"}, {}});
    }
  }
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      spec.edges.push_back({static_cast<PlayerId>(u), static_cast<PlayerId>(v),
                            v < k ? Rational(1) : a});
    }
  }
  return spec;
}

GraphCoordinationSpec gen_imposition_tight(std::size_t k) {
  if (k == 0) throw InputError("gen_imposition_tight needs k >= 1");
  const std::size_t n = 2 * k + 1;
  GraphCoordinationSpec spec;
  for (std::size_t v = 0; v < n; ++v) spec.nodes.push_back({"v" + idx(v), {"a", "b"}, {}});
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      spec.edges.push_back({static_cast<PlayerId>(u), static_cast<PlayerId>(v), Rational(1)});
    }
  }
  return spec;
}

CliqueReduction reduce_clique(const SimpleGraph& graph, std::size_t k, const Rational& alpha) {
  graph.validate();
  if (k < 2) throw InputError("reduce_clique needs k >= 2");
  if (alpha < Rational(1)) throw InputError("alpha must be at least 1");
  CliqueReduction out;
  for (std::size_t v = 0; v < graph.n; ++v) {
    out.spec.nodes.push_back({"v" + idx(v), {"x" + idx(v), "y"}, {}});
  }
  for (const auto& [u, v] : graph.edges) out.spec.edges.push_back({u, v, alpha});
  if (k > 2) {
    for (std::size_t v = 0; v < graph.n; ++v) {
      const auto id = static_cast<PlayerId>(out.spec.nodes.size());
      out.spec.nodes.push_back({"u" + idx(v), {"x" + idx(v)}, {}});
      out.spec.edges.push_back({static_cast<PlayerId>(v), id, Rational(static_cast<long>(k - 2))});
    }
  }
  out.profile = JointStrategy(std::vector<StrategyIndex>(out.spec.nodes.size(), 0));
  return out;
}

GraphCoordinationSpec reduce_mmm(const SimpleGraph& graph, std::size_t l) {
  graph.validate();
  const std::size_t n = graph.n;
  const std::size_t gadgets = 2 * l >= n ? 0 : n - 2 * l;
  GraphCoordinationSpec spec;
  for (std::size_t v = 0; v < n; ++v) {
    Node node{"v" + idx(v), {}, {}};
    for (std::size_t i = 0; i < gadgets; ++i) node.colors.push_back("x" + idx(v) + "_" + idx(i));
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
      const auto& [a, b] = graph.edges[e];
      if (a == static_cast<int>(v) || b == static_cast<int>(v)) node.colors.push_back("y" + idx(e));
    }
    if (node.colors.empty()) node.colors.push_back("o" + idx(v));  // isolated, no gadgets
    spec.nodes.push_back(std::move(node));
  }
  for (const auto& [u, v] : graph.edges) spec.edges.push_back({u, v, Rational(4)});
  for (std::size_t i = 0; i < gadgets; ++i) {
    const auto base = static_cast<PlayerId>(spec.nodes.size());
    const std::string g = idx(i);
    Node v0{"g" + g + "_v0", {"a" + g, "c" + g}, {}};
    for (std::size_t v = 0; v < n; ++v) v0.colors.push_back("x" + idx(v) + "_" + g);
    spec.nodes.push_back(std::move(v0));
    spec.nodes.push_back({"g" + g + "_v1", {"a" + g, "b" + g}, {}});
    spec.nodes.push_back({"g" + g + "_v2", {"b" + g, "c" + g}, {}});
    spec.nodes.push_back({"g" + g + "_u", {"b" + g}, {}});
    spec.edges.push_back({base + 1, base, Rational(4)});
    spec.edges.push_back({base, base + 2, Rational(3)});
    spec.edges.push_back({base + 1, base + 2, Rational(2)});
    spec.edges.push_back({base + 3, base + 1, Rational(3)});
    for (std::size_t v = 0; v < n; ++v) {
      spec.edges.push_back({base, static_cast<PlayerId>(v), Rational(3)});
    }
  }
  return spec;
}

VertexCoverReduction reduce_vertex_cover(const SimpleGraph& graph) {
  graph.validate();
  VertexCoverReduction out;
  for (std::size_t v = 0; v < graph.n; ++v) {
    out.spec.nodes.push_back({"v" + idx(v), {"p" + idx(v), "c" + idx(v)}, {}});
  }
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const auto [u, v] = graph.edges[e];
    const auto id = static_cast<PlayerId>(out.spec.nodes.size());
    out.spec.nodes.push_back({"e" + idx(e), {"c" + idx(static_cast<std::size_t>(u)),
                                             "c" + idx(static_cast<std::size_t>(v)), "p"}, {}});
    out.spec.edges.push_back({u, id, Rational(1)});
    out.spec.edges.push_back({id, v, Rational(1)});
  }
  out.target = Rational(2 * static_cast<long>(graph.edges.size()));
  return out;
}

}  // namespace polycoord
