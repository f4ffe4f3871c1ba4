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

#ifndef POLYCOORD_VERIFICATION_HPP
#define POLYCOORD_VERIFICATION_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "polycoord/dynamics.hpp"
#include "polycoord/game.hpp"
#include "polycoord/rational.hpp"

namespace polycoord {

enum class VerifyMethod {
  kAuto,        // min-degree for graph games with k = n, brute force otherwise
  kBruteForce,  // find_improving_deviation
  kSimple,      // find_simple_improving_deviation (graph games only)
  kMinDegree,   // is_alpha_strong_equilibrium_graph (graph games, k = n)
};

std::string to_string(VerifyMethod m);

struct EquilibriumReport {
  bool verdict = true;
  /// Present iff verdict is false; re-verified before the report is returned.
  std::optional<Deviation> witness;
  VerifyMethod method = VerifyMethod::kBruteForce;
};

/// Decides whether s is an (alpha, k)-equilibrium.
///
/// The brute-force path inspects O(n^k) coalitions, each with up to
/// prod |S_i| - 1 joint re-strategizations; the min-degree path is
/// polynomial. kAuto picks min-degree for graph coordination games at k = n.
EquilibriumReport is_equilibrium(const PolymatrixGame& game, const JointStrategy& s,
                                 const Rational& alpha, std::size_t k,
                                 VerifyMethod method = VerifyMethod::kAuto,
                                 const SearchLimits& limits = {});

/// Weighted graph with per-node thresholds; thresholds may be negative.
struct DegreeInstance {
  struct Edge {
    int u = 0;
    int v = 0;
    Rational weight;
  };
  std::size_t num_nodes = 0;
  std::vector<Edge> edges;
  std::vector<Rational> thresholds;
};

/// The unique inclusion-maximal K such that every v in K has weighted degree
/// inside G[K] strictly greater than its threshold. Greedy peeling: start
/// with all nodes and remove violators until none is left. Sorted output.
std::vector<int> min_degree_maximal_set(const DegreeInstance& instance);

/// alpha-approximate strong equilibrium test for graph coordination games.
/// For each colour x (by name) builds the MinDegree instance on the players
/// that can play x but do not; s is stable iff every instance peels to the
/// empty set. The witness is K_x -> x for the first colour with K_x non-empty.
EquilibriumReport is_alpha_strong_equilibrium_graph(const PolymatrixGame& game,
                                                    const JointStrategy& s,
                                                    const Rational& alpha);

enum class EnumerationMethod {
  kAuto,        // pruned for graph coordination games, exhaustive otherwise
  kExhaustive,  // test every profile in lexicographic order
  kPruned,      // backtracking with sound coalition bounds (graph games only)
};

struct EnumerationOptions {
  /// Exhaustive: refuse when prod |S_i| exceeds this. Pruned: cap on search
  /// nodes visited.
  std::uint64_t max_profiles = 5'000'000;
  /// Stop after this many equilibria.
  std::size_t max_results = std::numeric_limits<std::size_t>::max();
  EnumerationMethod method = EnumerationMethod::kAuto;
  SearchLimits limits;
};

/// All (alpha, k)-equilibria in lexicographic order (joint strategies as
/// index vectors). When max_results stops a pruned search early the
/// returned equilibria are not necessarily the lexicographically first ones.
/// Throws BudgetExceeded with the required count.
std::vector<JointStrategy> enumerate_equilibria(const PolymatrixGame& game, const Rational& alpha,
                                                std::size_t k,
                                                const EnumerationOptions& options = {});

/// Calls `visit` on every profile in lexicographic order; stops early when
/// it returns false. Throws BudgetExceeded when prod |S_i| > max_profiles.
template <typename Visit>
void for_each_profile(const PolymatrixGame& game, std::uint64_t max_profiles, Visit&& visit);

}  // namespace polycoord

#include "polycoord/errors.hpp"

namespace polycoord {

template <typename Visit>
void for_each_profile(const PolymatrixGame& game, std::uint64_t max_profiles, Visit&& visit) {
  const std::uint64_t count = game.profile_count();
  if (count > max_profiles) throw BudgetExceeded("profile enumeration", count, max_profiles);
  if (count == 0) return;
  const std::size_t n = game.num_players();
  JointStrategy s(std::vector<StrategyIndex>(n, 0));
  while (true) {
    if (!visit(static_cast<const JointStrategy&>(s))) return;
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (static_cast<std::size_t>(++s.choice[i]) < game.num_strategies(static_cast<PlayerId>(i))) break;
      s.choice[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace polycoord

#endif  // POLYCOORD_VERIFICATION_HPP
