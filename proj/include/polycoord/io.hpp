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

// Game documents and plain-text graphs.
//
// A game document is JSON:
//
//   {"format": "polycoord-game", "version": 1,
//    "kind": "graph-coordination" | "polymatrix",
//    "players": [{"name": "v1", "strategies": ["a", "b"],
//                 "preferences": ["0", "1/2"]}, ...],
//    "edges": [{"u": "v1", "v": "v2", "weight": "2"}, ...]}
//
// Polymatrix edges carry "table": rows by |S_u|, columns by |S_v|. Numbers
// are strings "p" or "p/q"; JSON integers are accepted, floats are not.
// Endpoints may be player names or indices.

#ifndef POLYCOORD_IO_HPP
#define POLYCOORD_IO_HPP

#include <string>
#include <string_view>
#include <variant>

#include "polycoord/game.hpp"
#include "polycoord/instances.hpp"

namespace polycoord {

inline constexpr int kGameDocumentVersion = 1;

struct GameDocument {
  std::variant<GraphCoordinationSpec, PolymatrixGame> game;

  bool is_graph() const { return std::holds_alternative<GraphCoordinationSpec>(game); }
  const GraphCoordinationSpec& graph() const { return std::get<GraphCoordinationSpec>(game); }
  /// The document as a polymatrix game (graph documents are expanded).
  PolymatrixGame polymatrix() const;
};

/// Throws InputError; the message starts with the JSON location of the
/// problem (e.g. "/edges/2/weight: ...") or the byte offset of a syntax error.
GameDocument parse_game(std::string_view text);

/// Canonical form: two-space indented JSON, names for endpoints, reduced
/// rationals, no preferences key when all are zero. Ends with a newline.
std::string serialize_game(const GraphCoordinationSpec& spec);
std::string serialize_game(const PolymatrixGame& game);
std::string serialize_game(const GameDocument& doc);

/// Edge list: one "u v [w]" per line with 0-based node ids, '#' comments,
/// and an optional "nodes N" line to declare isolated nodes.
SimpleGraph parse_graph_text(std::string_view text);
std::string serialize_graph_text(const SimpleGraph& graph);

/// Comma separated, one entry per player: a strategy name or an index.
/// Parentheses around the list are allowed.
JointStrategy parse_profile(const PolymatrixGame& game, std::string_view text);

}  // namespace polycoord

#endif  // POLYCOORD_IO_HPP
