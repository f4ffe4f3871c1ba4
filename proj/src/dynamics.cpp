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

#include "polycoord/dynamics.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

#include "polycoord/errors.hpp"

namespace polycoord {
namespace {

Rational unchecked_payoff(const PolymatrixGame& game, const JointStrategy& s, PlayerId i) {
  Rational total = game.preference(i, s[i]);
  for (const auto& inc : game.incident(i)) total += game.edge_payoff(inc, s[i], s[inc.neighbor]);
  return total;
}

void check_search_params(const PolymatrixGame& game, const JointStrategy& s,
                         const Rational& alpha, std::size_t k) {
  check_profile(game, s);
  if (alpha < Rational(1)) throw InputError("alpha must be at least 1, got " + alpha.str());
  if (k < 1) throw InputError("coalition size bound k must be at least 1");
  if (game.num_players() > 0 && k > game.num_players()) {
    throw InputError("coalition size bound k=" + std::to_string(k) + " exceeds n=" +
                     std::to_string(game.num_players()));
  }
}

/// Advances `combo` (strictly increasing indices below n) to the next
/// lexicographic combination of the same size. Returns false when exhausted.
bool next_combination(std::vector<PlayerId>& combo, PlayerId n) {
  const auto size = static_cast<PlayerId>(combo.size());
  for (PlayerId t = size - 1; t >= 0; --t) {
    if (combo[static_cast<std::size_t>(t)] < n - size + t) {
      ++combo[static_cast<std::size_t>(t)];
      for (PlayerId u = t + 1; u < size; ++u) {
        combo[static_cast<std::size_t>(u)] = combo[static_cast<std::size_t>(u - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

std::vector<PlayerId> first_combination(std::size_t size) {
  std::vector<PlayerId> combo(size);
  for (std::size_t t = 0; t < size; ++t) combo[t] = static_cast<PlayerId>(t);
  return combo;
}

class CoalitionSearch {
 public:
  CoalitionSearch(const PolymatrixGame& game, const JointStrategy& s, const Rational& alpha,
                  SelectionPolicy policy)
      : game_(game),
        s_(s),
        policy_(policy),
        working_(s),
        position_(game.num_players(), -1) {
    base_.reserve(game.num_players());
    threshold_.reserve(game.num_players());
    for (std::size_t i = 0; i < game.num_players(); ++i) {
      base_.push_back(unchecked_payoff(game, s, static_cast<PlayerId>(i)));
      threshold_.push_back(alpha * base_.back());
    }
  }

  /// Searches one coalition; returns true to stop the whole enumeration.
  bool search(const std::vector<PlayerId>& members) {
    members_ = members;
    const std::size_t size = members.size();
    for (std::size_t t = 0; t < size; ++t) position_[static_cast<std::size_t>(members[t])] = static_cast<int>(t);
    const bool stop = prepare() && descend(0);
    for (const auto i : members) position_[static_cast<std::size_t>(i)] = -1;
    return stop;
  }

  std::optional<Deviation> take() { return std::move(best_); }

 private:
  bool in_coalition(PlayerId j) const { return position_[static_cast<std::size_t>(j)] >= 0; }

  // Per-member candidate strategies and the positions at which members can be
  // checked exactly. False if some member has no candidate.
  bool prepare() {
    const std::size_t size = members_.size();
    candidates_.assign(size, {});
    ready_.assign(size, {});
    for (std::size_t t = 0; t < size; ++t) {
      const PlayerId i = members_[t];
      std::size_t last = t;
      for (const auto& inc : game_.incident(i)) {
        if (in_coalition(inc.neighbor)) {
          last = std::max(last, static_cast<std::size_t>(position_[static_cast<std::size_t>(inc.neighbor)]));
        }
      }
      ready_[last].push_back(i);
      const auto m = static_cast<StrategyIndex>(game_.num_strategies(i));
      for (StrategyIndex x = 0; x < m; ++x) {
        if (x == s_[i]) continue;
        Rational bound = game_.preference(i, x);
        for (const auto& inc : game_.incident(i)) {
          const PlayerId j = inc.neighbor;
          if (!in_coalition(j)) {
            bound += game_.edge_payoff(inc, x, s_[j]);
            continue;
          }
          Rational best;
          const auto mj = static_cast<StrategyIndex>(game_.num_strategies(j));
          for (StrategyIndex y = 0; y < mj; ++y) {
            if (y == s_[j]) continue;
            const auto& q = game_.edge_payoff(inc, x, y);
            if (q > best) best = q;
          }
          bound += best;
        }
        if (bound > threshold_[static_cast<std::size_t>(i)]) candidates_[t].push_back(x);
      }
      if (candidates_[t].empty()) return false;
    }
    return true;
  }

  bool descend(std::size_t t) {
    if (t == members_.size()) return record();
    const PlayerId i = members_[t];
    for (const auto x : candidates_[t]) {
      working_[i] = x;
      bool ok = true;
      for (const auto j : ready_[t]) {
        if (!(unchecked_payoff(game_, working_, j) > threshold_[static_cast<std::size_t>(j)])) {
          ok = false;
          break;
        }
      }
      if (ok && descend(t + 1)) {
        working_[i] = s_[i];
        return true;
      }
    }
    working_[i] = s_[i];
    return false;
  }

  bool record() {
    Deviation d;
    d.coalition = Coalition(members_);
    for (const auto i : members_) {
      d.new_choice.push_back(working_[i]);
      d.before.push_back(base_[static_cast<std::size_t>(i)]);
      d.after.push_back(unchecked_payoff(game_, working_, i));
    }
    if (policy_ == SelectionPolicy::kFirstFound) {
      best_ = std::move(d);
      return true;
    }
    const Rational gain = welfare_gain();
    if (!best_ || gain > best_gain_) {
      best_ = std::move(d);
      best_gain_ = gain;
    }
    return false;
  }

  Rational welfare_gain() const {
    Rational gain;
    for (const auto i : members_) {
      gain += game_.preference(i, working_[i]) - game_.preference(i, s_[i]);
      for (const auto& inc : game_.incident(i)) {
        const PlayerId j = inc.neighbor;
        Rational delta = game_.edge_payoff(inc, working_[i], working_[j]) -
                         game_.edge_payoff(inc, s_[i], s_[j]);
        if (!in_coalition(j)) delta *= Rational(2);
        gain += delta;
      }
    }
    return gain;
  }

  const PolymatrixGame& game_;
  const JointStrategy& s_;
  SelectionPolicy policy_;
  JointStrategy working_;
  std::vector<int> position_;
  std::vector<Rational> base_;
  std::vector<Rational> threshold_;
  std::vector<PlayerId> members_;
  std::vector<std::vector<StrategyIndex>> candidates_;
  std::vector<std::vector<PlayerId>> ready_;
  std::optional<Deviation> best_;
  Rational best_gain_;
};

bool induces_connected(const PolymatrixGame& game, const std::vector<PlayerId>& members,
                       const std::vector<char>& in_k) {
  if (members.size() <= 1) return true;
  std::vector<PlayerId> stack{members.front()};
  std::vector<char> seen(game.num_players(), 0);
  seen[static_cast<std::size_t>(members.front())] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const PlayerId v = stack.back();
    stack.pop_back();
    for (const auto& inc : game.incident(v)) {
      const auto j = static_cast<std::size_t>(inc.neighbor);
      if (in_k[j] && !seen[j]) {
        seen[j] = 1;
        ++reached;
        stack.push_back(inc.neighbor);
      }
    }
  }
  return reached == members.size();
}

}  // namespace

JointStrategy Deviation::apply(const JointStrategy& s) const {
  JointStrategy out = s;
  const auto& m = coalition.members();
  for (std::size_t t = 0; t < m.size(); ++t) out[m[t]] = new_choice[t];
  return out;
}

Deviation deviation_between(const PolymatrixGame& game, const JointStrategy& from,
                            const JointStrategy& to) {
  check_profile(game, from);
  check_profile(game, to);
  std::vector<PlayerId> members;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (from.choice[i] != to.choice[i]) members.push_back(static_cast<PlayerId>(i));
  }
  Deviation d;
  d.coalition = Coalition(members);
  for (const auto i : members) {
    d.new_choice.push_back(to[i]);
    d.before.push_back(unchecked_payoff(game, from, i));
    d.after.push_back(unchecked_payoff(game, to, i));
  }
  return d;
}

bool is_improving(const PolymatrixGame& game, const JointStrategy& s, const Deviation& d,
                  const Rational& alpha, std::size_t k) {
  check_profile(game, s);
  const auto& m = d.coalition.members();
  if (m.empty() || m.size() > k || d.new_choice.size() != m.size()) return false;
  for (const auto i : m) {
    if (i < 0 || static_cast<std::size_t>(i) >= game.num_players()) return false;
  }
  for (std::size_t t = 0; t < m.size(); ++t) {
    const auto x = d.new_choice[t];
    if (x < 0 || static_cast<std::size_t>(x) >= game.num_strategies(m[t])) return false;
    if (x == s[m[t]]) return false;
  }
  const JointStrategy next = d.apply(s);
  for (const auto i : m) {
    if (!(unchecked_payoff(game, next, i) > alpha * unchecked_payoff(game, s, i))) return false;
  }
  return true;
}

std::optional<Deviation> find_improving_deviation(const PolymatrixGame& game,
                                                  const JointStrategy& s, const Rational& alpha,
                                                  std::size_t k, SelectionPolicy policy,
                                                  const SearchLimits& limits) {
  check_search_params(game, s, alpha, k);
  const auto n = static_cast<PlayerId>(game.num_players());
  CoalitionSearch search(game, s, alpha, policy);
  std::uint64_t inspected = 0;
  for (std::size_t size = 1; size <= std::min<std::size_t>(k, game.num_players()); ++size) {
    auto combo = first_combination(size);
    do {
      if (++inspected > limits.max_coalitions) {
        throw BudgetExceeded("coalition enumeration", inspected, limits.max_coalitions);
      }
      if (search.search(combo)) return search.take();
    } while (next_combination(combo, n));
  }
  return search.take();
}

std::optional<Deviation> find_simple_improving_deviation(const PolymatrixGame& game,
                                                         const JointStrategy& s,
                                                         const Rational& alpha, std::size_t k,
                                                         const SearchLimits& limits) {
  check_search_params(game, s, alpha, k);
  const ColorStructure cs = color_structure(game);
  const auto n = static_cast<PlayerId>(game.num_players());
  std::vector<Rational> threshold;
  for (PlayerId i = 0; i < n; ++i) threshold.push_back(alpha * unchecked_payoff(game, s, i));

  std::vector<char> in_k(game.num_players(), 0);
  std::uint64_t inspected = 0;
  const std::size_t top = std::min<std::size_t>(k, game.num_players());
  for (std::size_t size = top; size >= 1; --size) {
    auto combo = first_combination(size);
    do {
      if (++inspected > limits.max_coalitions) {
        throw BudgetExceeded("simple coalition enumeration", inspected, limits.max_coalitions);
      }
      for (const auto i : combo) in_k[static_cast<std::size_t>(i)] = 1;
      std::optional<Deviation> found;
      if (induces_connected(game, combo, in_k)) {
        for (int c = 0; c < static_cast<int>(cs.colors.size()) && !found; ++c) {
          bool eligible = true;
          for (const auto i : combo) {
            const auto x = cs.index(i, c);
            if (x < 0 || x == s[i]) {
              eligible = false;
              break;
            }
          }
          if (!eligible) continue;
          Deviation d;
          d.coalition = Coalition(combo);
          bool improving = true;
          for (const auto i : combo) {
            const auto x = cs.index(i, c);
            Rational after = game.preference(i, x);
            for (const auto& inc : game.incident(i)) {
              const PlayerId j = inc.neighbor;
              if (in_k[static_cast<std::size_t>(j)] || cs.color(j, s[j]) == c) after += cs.weight[inc.edge];
            }
            if (!(after > threshold[static_cast<std::size_t>(i)])) {
              improving = false;
              break;
            }
            d.new_choice.push_back(x);
            d.before.push_back(unchecked_payoff(game, s, i));
            d.after.push_back(std::move(after));
          }
          if (improving) found = std::move(d);
        }
      }
      for (const auto i : combo) in_k[static_cast<std::size_t>(i)] = 0;
      if (found) return found;
    } while (next_combination(combo, n));
  }
  return std::nullopt;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kConverged:
      return "converged";
    case Termination::kCycled:
      return "cycled";
    case Termination::kBudgetExhausted:
      return "budget-exhausted";
  }
  return "unknown";
}

DynamicsTrace run_dynamics(const PolymatrixGame& game, const JointStrategy& s0,
                           const Rational& alpha, std::size_t k, std::size_t max_steps,
                           const DeviationSelector& select) {
  check_profile(game, s0);
  DynamicsTrace trace;
  std::unordered_map<JointStrategy, std::size_t> seen;
  auto visit = [&](const JointStrategy& s) {
    trace.states.push_back(s);
    trace.potentials.push_back(exact_potential(game, s));
    trace.welfares.push_back(social_welfare(game, s));
  };
  visit(s0);
  seen.emplace(s0, 0);
  while (true) {
    if (trace.steps.size() >= max_steps) {
      trace.verdict = Termination::kBudgetExhausted;
      return trace;
    }
    const JointStrategy& current = trace.states.back();
    auto d = select(current);
    if (!d) {
      trace.verdict = Termination::kConverged;
      return trace;
    }
    if (!is_improving(game, current, *d, alpha, k)) {
      throw InvariantViolation("selector proposed a deviation that is not (" + alpha.str() + "," +
                               std::to_string(k) + ")-improving");
    }
    JointStrategy next = d->apply(current);
    trace.steps.push_back(std::move(*d));
    visit(next);
    const auto [it, inserted] = seen.emplace(std::move(next), trace.states.size() - 1);
    if (!inserted) {
      trace.verdict = Termination::kCycled;
      trace.first_repeat = it->second;
      return trace;
    }
  }
}

DynamicsTrace run_dynamics(const PolymatrixGame& game, const JointStrategy& s0,
                           const Rational& alpha, std::size_t k, std::size_t max_steps,
                           SelectionPolicy policy, const SearchLimits& limits) {
  if (game.num_players() == 0) {
    return run_dynamics(game, s0, alpha, k, max_steps,
                        [](const JointStrategy&) { return std::optional<Deviation>(); });
  }
  return run_dynamics(game, s0, alpha, k, max_steps, [&](const JointStrategy& s) {
    return find_improving_deviation(game, s, alpha, k, policy, limits);
  });
}

DeviationSelector replay_selector(const PolymatrixGame& game, std::vector<JointStrategy> schedule,
                                  const Rational& alpha, std::size_t k, SelectionPolicy fallback,
                                  const SearchLimits& limits) {
  return [&game, schedule = std::move(schedule), alpha, k, fallback,
          limits](const JointStrategy& s) -> std::optional<Deviation> {
    for (std::size_t t = 0; t < schedule.size(); ++t) {
      if (schedule[t] != s) continue;
      const JointStrategy& target = schedule[(t + 1) % schedule.size()];
      Deviation d = deviation_between(game, s, target);
      if (is_improving(game, s, d, alpha, k)) return d;
      break;
    }
    return find_improving_deviation(game, s, alpha, k, fallback, limits);
  };
}

}  // namespace polycoord
