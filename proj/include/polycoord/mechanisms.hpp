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

// Strategy imposition: fix a coalition's strategies, let the rest settle in
// a Nash equilibrium of the restricted game, then release the coalition.

#ifndef POLYCOORD_MECHANISMS_HPP
#define POLYCOORD_MECHANISMS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "polycoord/dynamics.hpp"
#include "polycoord/game.hpp"
#include "polycoord/rational.hpp"
#include "polycoord/verification.hpp"

namespace polycoord {

struct Imposition {
  enum class Source { kUser, kTopK };

  Coalition coalition;
  std::vector<StrategyIndex> fixed;  // aligned with coalition.members()
  Source source = Source::kUser;

  /// Fixes every member of `coalition` at its strategy in `s`.
  static Imposition from_profile(const Coalition& coalition, const JointStrategy& s,
                                 Source source = Source::kUser);
};

/// Throws InputError when the imposition does not fit the game.
void check_imposition(const PolymatrixGame& game, const Imposition& imp);

/// The game on N \ K obtained by fixing f_K.
///
/// Free players keep their relative order. Edges to fixed players are folded
/// into preferences; those folded terms and everything earned inside K are
/// tracked so that for every free profile t
///   SW_full(f_K, t) = SW(game, t) + folded(t) + constant.
struct Restriction {
  PolymatrixGame game;
  std::vector<PlayerId> original;       // restricted id -> original id
  std::vector<PlayerId> restricted_id;  // original id -> restricted id or -1
  JointStrategy base;                   // full-size profile carrying f_K
  /// [restricted player][strategy] -> sum of q^ij(x, f_j) over fixed j.
  std::vector<std::vector<Rational>> folded_rows;
  /// K's preferences plus twice the edges inside K, at f_K.
  Rational constant;

  Rational folded(const JointStrategy& restricted_profile) const;
  JointStrategy lift(const JointStrategy& restricted_profile) const;
  JointStrategy project(const JointStrategy& full_profile) const;
};

Restriction restrict(const PolymatrixGame& game, const Imposition& imp);

/// The k players with the highest payoff under s, ties to the smallest id.
/// Throws InputError when k > n.
Coalition choose_topk(const PolymatrixGame& game, const JointStrategy& s, std::size_t k);

struct Guarantee {
  Rational welfare;          // min SW_full over Nash equilibria of the restriction
  JointStrategy worst;       // full profile attaining it, lexicographically first
  std::size_t equilibria = 0;
};

/// Exhaustive over all Nash equilibria of restrict(game, imp).
Guarantee guaranteed_welfare(const PolymatrixGame& game, const Imposition& imp,
                             const EnumerationOptions& options = {});

struct ReleaseResult {
  Imposition imposition;
  DynamicsTrace restricted_trace;  // over the restricted game
  JointStrategy restricted_equilibrium;  // lifted to the full game
  DynamicsTrace release_trace;     // full game, k = 1
  JointStrategy final_profile;
  Rational bound;                  // (k/n) SW(s)
  Rational restricted_welfare;     // SW of restricted_equilibrium, always >= bound
  Rational final_welfare;
  // Whether final_welfare >= bound. Release steps raise the potential but a
  // player may trade shared edge payoff for its own preference, so with
  // non-zero preferences this can be false.
  bool final_meets_bound = true;
};

/// Imposes the top-k players at s, runs Nash dynamics in the restriction,
/// re-attaches K and runs Nash dynamics in the full game. Throws
/// InvariantViolation when the restricted equilibrium is below (k/n) SW(s) or
/// a dynamics phase fails to converge within max_steps.
ReleaseResult impose_and_release(const PolymatrixGame& game, const JointStrategy& s,
                                 std::size_t k, std::size_t max_steps = 1'000'000);

struct SmoothnessReport {
  bool holds = true;
  std::optional<JointStrategy> violation;  // first profile breaking the inequality
  Rational worst_slack;                    // min of lhs - rhs over checked profiles
};

/// sum_v p_v(s_ref_v, s_-v) >= lambda SW(s_ref) + mu SW(s) for every s.
SmoothnessReport check_smoothness(const PolymatrixGame& game, const JointStrategy& s_ref,
                                  const Rational& lambda, const Rational& mu,
                                  std::uint64_t max_profiles = EnumerationOptions{}.max_profiles);

/// Same inequality on the full game with K fixed: s ranges over (s_ref_K, s_-K)
/// and the sum runs over all players.
SmoothnessReport check_smoothness(const PolymatrixGame& game, const Coalition& imposed,
                                  const JointStrategy& s_ref, const Rational& lambda,
                                  const Rational& mu,
                                  std::uint64_t max_profiles = EnumerationOptions{}.max_profiles);

/// Smallest imposition (by size, then coalition and strategies in
/// lexicographic order) whose guaranteed welfare reaches `target`.
std::optional<Imposition> minimum_imposition(const PolymatrixGame& game, const Rational& target,
                                             std::size_t max_size,
                                             const EnumerationOptions& options = {});

}  // namespace polycoord

#endif  // POLYCOORD_MECHANISMS_HPP
