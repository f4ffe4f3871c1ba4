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

// Strong equilibria of graph coordination games on forests.
//
// Rooting a tree and letting players move top-down gives a sequential game
// whose subgame perfect equilibria are found by backwards induction. The
// profile implemented by such an equilibrium is a strong equilibrium of the
// simultaneous graph coordination game (this fails for general polymatrix
// tables, see gen_seq_counterexample).

#ifndef POLYCOORD_TREE_SOLVER_HPP
#define POLYCOORD_TREE_SOLVER_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "polycoord/game.hpp"
#include "polycoord/rational.hpp"

namespace polycoord {

struct PreferenceElimination {
  struct Dummy {
    PlayerId node;         // index in the transformed game
    PlayerId owner;        // original player
    StrategyIndex color;   // owner's colour index it simulates
  };
  GraphCoordinationSpec spec;  // no preferences; original nodes keep their ids
  std::size_t original_nodes = 0;
  std::vector<Dummy> dummies;
};

/// Replaces every positive preference q^i(x) by a leaf with the single colour
/// x, attached to i by an edge of weight q^i(x). Zero preferences add nothing.
PreferenceElimination eliminate_preferences(const GraphCoordinationSpec& spec);

/// Backwards-induction table on the tree component containing `root`.
struct SpeTable {
  PlayerId root = 0;
  std::vector<PlayerId> parent;               // -1 for the root and other components
  std::vector<std::vector<PlayerId>> children;
  std::vector<PlayerId> order;                // top-down order of the component
  /// [v][parent strategy index]; the root has a single "no parent" row 0.
  std::vector<std::vector<StrategyIndex>> best_response;
  /// v's own payoff in the subgame given the parent strategy.
  std::vector<std::vector<Rational>> value;

  StrategyIndex response(PlayerId v, StrategyIndex parent_strategy) const;
  /// Unrolls the table from the root; players outside the component get 0.
  JointStrategy implemented() const;
};

/// For every v and parent strategy x:
///   best_response(v, x) = argmax_y q^v(y) + q^{P_v v}(x, y)
///                                 + sum_{c child} q^{vc}(y, best_response(c, y))
/// with ties to the smallest index. Works on any polymatrix game whose graph
/// is a tree. Throws StructureError when the graph is not a connected tree.
SpeTable subgame_perfect_strategy(const PolymatrixGame& tree, PlayerId root);
SpeTable subgame_perfect_strategy(const GraphCoordinationSpec& tree, PlayerId root);

/// Strong equilibrium of a graph coordination game on a forest.
///
/// Per component: eliminate preferences, root at the smallest id (or the
/// entry of `roots` lying in the component), backwards induction, unroll,
/// drop the dummy leaves. The result is checked with the min-degree verifier
/// at alpha = 1 before it is returned; a failure raises InvariantViolation.
/// Throws StructureError when the graph has a cycle.
JointStrategy strong_equilibrium_tree(const GraphCoordinationSpec& forest,
                                      const std::vector<PlayerId>& roots = {});

/// True iff the coordination graph has no cycle.
bool is_forest(const GraphCoordinationSpec& spec);

/// Two-player polymatrix game whose sequential equilibrium outcome is not
/// even a Nash equilibrium.
struct SequentialCounterexample {
  PolymatrixGame game;          // u = 0, v = 1; strategies {c, s} each
  JointStrategy implemented;    // (c_u, c_v)
};

SequentialCounterexample gen_seq_counterexample();

}  // namespace polycoord

#endif  // POLYCOORD_TREE_SOLVER_HPP
