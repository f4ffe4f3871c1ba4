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

// Deterministic constructions: counterexamples, tight families and
// hardness reductions.

#ifndef POLYCOORD_INSTANCES_HPP
#define POLYCOORD_INSTANCES_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "polycoord/game.hpp"
#include "polycoord/rational.hpp"

namespace polycoord {

/// Simple undirected graph. `weights` is aligned with `edges`; empty means
/// unit weights.
struct SimpleGraph {
  std::size_t n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<Rational> weights;

  /// Throws InputError on self-loops, duplicate edges, bad endpoints or
  /// misaligned weights.
  void validate() const;
  Rational weight(std::size_t e) const { return weights.empty() ? Rational(1) : weights[e]; }
  bool adjacent(int u, int v) const;

  static SimpleGraph complete(std::size_t n);
  static SimpleGraph path(std::size_t n);
};

/// Colours {c_i, c} per node, graph weights on the edges.
GraphCoordinationSpec gen_private_common(const SimpleGraph& graph);

struct CycleInstance {
  PolymatrixGame game;
  /// schedule[t] is the state after t steps, starting at s^{m-1}; the move
  /// schedule[t] -> schedule[t+1 mod m] is made by N minus one player.
  std::vector<JointStrategy> schedule;
  std::vector<Coalition> coalitions;  // aligned with schedule
  /// 2 - 1/2^(m-3): exact factor of the critical player in every step. The
  /// schedule is a cycle of alpha-improving deviations for all alpha below it.
  Rational critical_factor;
};

/// m players, each supporting one player. Supporter i of j earns
/// 2^((i - j - 1) mod m) from the edge {i, j} when j supports itself.
/// Throws InputError for m < 4.
CycleInstance gen_cycle_counterexample(std::size_t m);

/// Triangle v0 {x,z}, v1 {x,y}, v2 {y,z} with weight w, pendants u1 {y} at
/// v1, u2 {z} at v2, u3 {x} at v0 with weight 1. No (alpha, 2)-equilibrium
/// for alpha < min(w, (1+w)/w). Throws InputError unless w > 1.
GraphCoordinationSpec gen_golden_ratio(const Rational& w);
Rational golden_ratio_threshold(const Rational& w);

/// Path v1 {a} - v2 {a,b} - v3 {b,c} - v4 {c} with weights (a, 1, a).
/// Throws InputError unless a >= 1.
GraphCoordinationSpec gen_spoa_path(const Rational& a);

/// V1 of size k (weight-1 clique, colours {a,c}) joined completely to V2 of
/// size n-k (colours {b,c}) with weight a. Throws InputError unless
/// 2 <= k < n and a >= 1.
GraphCoordinationSpec gen_poa_lower(std::size_t n, std::size_t k, const Rational& a);

/// Complete graph on 2k+1 nodes, unit weights, colours {a,b}. Throws
/// InputError for k = 0.
GraphCoordinationSpec gen_imposition_tight(std::size_t k);

struct CliqueReduction {
  GraphCoordinationSpec spec;
  JointStrategy profile;  // every original node on its private colour
};

/// Original nodes v get {x_v, y} and keep their edges with weight alpha; each
/// gets a pendant u_v {x_v} with weight k-2 (omitted when k = 2). The
/// profile is an (alpha, k)-equilibrium iff the graph has no k-clique.
/// Throws InputError for k < 2 or alpha < 1.
CliqueReduction reduce_clique(const SimpleGraph& graph, std::size_t k, const Rational& alpha);

/// Adds max(0, n - 2l) gadgets; a 2-equilibrium exists iff the graph has a
/// maximal matching of size at most l. Original nodes come first, then
/// gadget i as v0, v1, v2, u.
GraphCoordinationSpec reduce_mmm(const SimpleGraph& graph, std::size_t l);

struct VertexCoverReduction {
  GraphCoordinationSpec spec;  // original nodes first, then one node per edge
  Rational target;             // 2|E|
};

/// Subdivides every edge; an imposition of size k guaranteeing 2|E| exists
/// iff the graph has a vertex cover of size k.
VertexCoverReduction reduce_vertex_cover(const SimpleGraph& graph);

}  // namespace polycoord

#endif  // POLYCOORD_INSTANCES_HPP
