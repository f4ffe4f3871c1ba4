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

#ifndef POLYCOORD_DYNAMICS_HPP
#define POLYCOORD_DYNAMICS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polycoord/game.hpp"
#include "polycoord/rational.hpp"

namespace polycoord {

/// A coalition switching every member to a new strategy.
///
/// `new_choice`, `before` and `after` are aligned with coalition.members().
struct Deviation {
  Coalition coalition;
  std::vector<StrategyIndex> new_choice;
  std::vector<Rational> before;
  std::vector<Rational> after;

  JointStrategy apply(const JointStrategy& s) const;

  friend bool operator==(const Deviation&, const Deviation&) = default;
};

/// Builds the deviation that turns `from` into `to`; the coalition is the set
/// of players whose strategy differs.
Deviation deviation_between(const PolymatrixGame& game, const JointStrategy& from,
                            const JointStrategy& to);

/// Recomputes payoffs from scratch: true iff the coalition is non-empty, has
/// at most k members, every member changes strategy and every member's new
/// payoff is strictly above alpha times the old one.
bool is_improving(const PolymatrixGame& game, const JointStrategy& s, const Deviation& d,
                  const Rational& alpha, std::size_t k);

enum class SelectionPolicy {
  kFirstFound,       // canonical enumeration order, first hit
  kBestWelfareGain,  // largest SW(s') - SW(s); ties go to the canonical first
};

struct SearchLimits {
  /// Upper bound on the number of coalitions inspected per search.
  std::uint64_t max_coalitions = 50'000'000;
};

/// Exhaustive (alpha, k)-improving deviation search.
///
/// Coalitions are enumerated by size, then lexicographically; joint
/// re-strategizations of a coalition lexicographically by strategy index.
/// Candidate strategies are pruned with an optimistic payoff bound, which
/// never discards an improving deviation.
///
/// Throws InputError unless alpha >= 1 and 1 <= k <= n, BudgetExceeded when
/// the number of coalitions exceeds `limits`.
std::optional<Deviation> find_improving_deviation(const PolymatrixGame& game,
                                                  const JointStrategy& s, const Rational& alpha,
                                                  std::size_t k,
                                                  SelectionPolicy policy = SelectionPolicy::kFirstFound,
                                                  const SearchLimits& limits = {});

/// Search restricted to simple deviations of a graph coordination game: a
/// coalition inducing a connected subgraph, every member switching to one
/// common colour it does not currently play. Any improving deviation can be
/// shrunk to a simple one, so this search is complete for every k.
///
/// Enumeration order: coalition size descending, then lexicographic, then
/// colour name. Throws UnsupportedGame for general polymatrix games.
std::optional<Deviation> find_simple_improving_deviation(const PolymatrixGame& game,
                                                         const JointStrategy& s,
                                                         const Rational& alpha, std::size_t k,
                                                         const SearchLimits& limits = {});

enum class Termination { kConverged, kCycled, kBudgetExhausted };

std::string to_string(Termination t);

struct DynamicsTrace {
  std::vector<JointStrategy> states;
  std::vector<Deviation> steps;
  std::vector<Rational> potentials;
  std::vector<Rational> welfares;
  Termination verdict = Termination::kConverged;
  /// Index of the earlier occurrence of the final state; set iff cycled.
  std::optional<std::size_t> first_repeat;

  std::size_t period() const { return first_repeat ? states.size() - 1 - *first_repeat : 0; }
};

/// Picks the next deviation from the current state, or nullopt to stop.
using DeviationSelector = std::function<std::optional<Deviation>(const JointStrategy&)>;

/// Runs improvement dynamics until no deviation is proposed (converged), a
/// state repeats (cycled) or max_steps deviations were applied. Every
/// proposed deviation is re-verified to be (alpha, k)-improving.
DynamicsTrace run_dynamics(const PolymatrixGame& game, const JointStrategy& s0,
                           const Rational& alpha, std::size_t k, std::size_t max_steps,
                           const DeviationSelector& select);

DynamicsTrace run_dynamics(const PolymatrixGame& game, const JointStrategy& s0,
                           const Rational& alpha, std::size_t k, std::size_t max_steps,
                           SelectionPolicy policy = SelectionPolicy::kFirstFound,
                           const SearchLimits& limits = {});

/// Selector that follows a cyclic schedule of profiles: whenever the current
/// state is schedule[t] and the move to schedule[t+1 mod size] is
/// (alpha, k)-improving it is taken, otherwise `fallback` searches.
DeviationSelector replay_selector(const PolymatrixGame& game, std::vector<JointStrategy> schedule,
                                  const Rational& alpha, std::size_t k,
                                  SelectionPolicy fallback = SelectionPolicy::kFirstFound,
                                  const SearchLimits& limits = {});

}  // namespace polycoord

#endif  // POLYCOORD_DYNAMICS_HPP
