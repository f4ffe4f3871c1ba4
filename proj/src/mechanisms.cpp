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

#include "polycoord/mechanisms.hpp"

#include <algorithm>
#include <numeric>

#include "polycoord/errors.hpp"

namespace polycoord {

Imposition Imposition::from_profile(const Coalition& coalition, const JointStrategy& s,
                                    Source source) {
  Imposition imp{coalition, {}, source};
  for (const auto i : coalition) {
    if (static_cast<std::size_t>(i) >= s.size()) throw InputError("coalition member outside profile");
    imp.fixed.push_back(s[i]);
  }
  return imp;
}

void check_imposition(const PolymatrixGame& game, const Imposition& imp) {
  if (imp.fixed.size() != imp.coalition.size()) {
    throw InputError("imposition needs one strategy per coalition member");
  }
  std::size_t idx = 0;
  for (const auto i : imp.coalition) {
    if (static_cast<std::size_t>(i) >= game.num_players()) {
      throw InputError("imposed player " + std::to_string(i) + " does not exist");
    }
    const StrategyIndex x = imp.fixed[idx++];
    if (x < 0 || static_cast<std::size_t>(x) >= game.num_strategies(i)) {
      throw InputError("imposed strategy out of range for player " + std::to_string(i));
    }
  }
}

Rational Restriction::folded(const JointStrategy& t) const {
  Rational total;
  for (std::size_t i = 0; i < folded_rows.size(); ++i) {
    total += folded_rows[i].at(static_cast<std::size_t>(t.choice.at(i)));
  }
  return total;
}

JointStrategy Restriction::lift(const JointStrategy& t) const {
  if (t.size() != original.size()) throw InputError("restricted profile has the wrong size");
  JointStrategy s = base;
  for (std::size_t i = 0; i < original.size(); ++i) s[original[i]] = t.choice[i];
  return s;
}

JointStrategy Restriction::project(const JointStrategy& s) const {
  if (s.size() != restricted_id.size()) throw InputError("profile has the wrong size");
  JointStrategy t(std::vector<StrategyIndex>(original.size(), 0));
  for (std::size_t i = 0; i < original.size(); ++i) t.choice[i] = s[original[i]];
  return t;
}

Restriction restrict(const PolymatrixGame& game, const Imposition& imp) {
  require_valid(game);
  check_imposition(game, imp);
  const std::size_t n = game.num_players();
  Restriction r;
  r.restricted_id.assign(n, -1);
  r.base = JointStrategy(std::vector<StrategyIndex>(n, 0));
  std::vector<char> fixed(n, 0);
  for (std::size_t idx = 0; idx < imp.coalition.size(); ++idx) {
    const PlayerId i = imp.coalition.members()[idx];
    fixed[static_cast<std::size_t>(i)] = 1;
    r.base[i] = imp.fixed[idx];
  }
  std::vector<PolymatrixGame::Player> players;
  for (PlayerId i = 0; i < static_cast<PlayerId>(n); ++i) {
    if (fixed[static_cast<std::size_t>(i)]) {
      r.constant += game.preference(i, r.base[i]);
      continue;
    }
    r.restricted_id[static_cast<std::size_t>(i)] = static_cast<PlayerId>(r.original.size());
    r.original.push_back(i);
    std::vector<Rational> rows(game.num_strategies(i));
    for (const auto& inc : game.incident(i)) {
      if (!fixed[static_cast<std::size_t>(inc.neighbor)]) continue;
      for (std::size_t x = 0; x < rows.size(); ++x) {
        rows[x] += game.edge_payoff(inc, static_cast<StrategyIndex>(x), r.base[inc.neighbor]);
      }
    }
    auto player = game.player(i);
    player.preferences.resize(rows.size());
    for (std::size_t x = 0; x < rows.size(); ++x) player.preferences[x] += rows[x];
    players.push_back(std::move(player));
    r.folded_rows.push_back(std::move(rows));
  }
  std::vector<EdgePayoff> edges;
  for (std::size_t e = 0; e < game.edges().size(); ++e) {
    const auto& edge = game.edges()[e];
    const bool fu = fixed[static_cast<std::size_t>(edge.u)];
    const bool fv = fixed[static_cast<std::size_t>(edge.v)];
    if (fu && fv) {
      r.constant += Rational(2) * edge.at(r.base[edge.u], r.base[edge.v]);
    } else if (!fu && !fv) {
      EdgePayoff copy = edge;
      copy.u = r.restricted_id[static_cast<std::size_t>(edge.u)];
      copy.v = r.restricted_id[static_cast<std::size_t>(edge.v)];
      edges.push_back(std::move(copy));
    }
  }
  r.game = PolymatrixGame(std::move(players), std::move(edges));
  return r;
}

Coalition choose_topk(const PolymatrixGame& game, const JointStrategy& s, std::size_t k) {
  const std::size_t n = game.num_players();
  if (k > n) throw InputError("k exceeds the number of players");
  const auto p = payoffs(game, s);
  std::vector<PlayerId> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(), [&](PlayerId a, PlayerId b) {
    return p[static_cast<std::size_t>(a)] > p[static_cast<std::size_t>(b)];
  });
  ids.resize(k);
  return Coalition(std::move(ids));
}

Guarantee guaranteed_welfare(const PolymatrixGame& game, const Imposition& imp,
                             const EnumerationOptions& options) {
  const Restriction r = restrict(game, imp);
  const auto equilibria = enumerate_equilibria(r.game, Rational(1), 1, options);
  Guarantee g;
  g.equilibria = equilibria.size();
  bool first = true;
  for (const auto& t : equilibria) {
    JointStrategy full = r.lift(t);
    Rational sw = social_welfare(game, full);
    if (first || sw < g.welfare || (sw == g.welfare && full < g.worst)) {
      g.welfare = std::move(sw);
      g.worst = std::move(full);
      first = false;
    }
  }
  if (first) throw InvariantViolation("restricted game has no Nash equilibrium");
  return g;
}

ReleaseResult impose_and_release(const PolymatrixGame& game, const JointStrategy& s,
                                 std::size_t k, std::size_t max_steps) {
  require_valid(game);
  check_profile(game, s);
  const std::size_t n = game.num_players();
  ReleaseResult out;
  out.imposition = Imposition::from_profile(choose_topk(game, s, k), s, Imposition::Source::kTopK);
  out.bound = n == 0 ? Rational(0)
                     : Rational(static_cast<long>(k), static_cast<long>(n)) * social_welfare(game, s);

  const Restriction r = restrict(game, out.imposition);
  JointStrategy restricted = r.project(s);
  if (r.game.num_players() > 0) {
    out.restricted_trace = run_dynamics(r.game, restricted, Rational(1), 1, max_steps);
    if (out.restricted_trace.verdict != Termination::kConverged) {
      throw InvariantViolation("restricted Nash dynamics did not converge");
    }
    restricted = out.restricted_trace.states.back();
  }
  out.restricted_equilibrium = r.lift(restricted);
  out.restricted_welfare = social_welfare(game, out.restricted_equilibrium);
  if (out.restricted_welfare < out.bound) {
    throw InvariantViolation("restricted equilibrium fell below (k/n) SW(s)");
  }

  if (n > 0) {
    out.release_trace = run_dynamics(game, out.restricted_equilibrium, Rational(1), 1, max_steps);
    if (out.release_trace.verdict != Termination::kConverged) {
      throw InvariantViolation("post-release Nash dynamics did not converge");
    }
    out.final_profile = out.release_trace.states.back();
  } else {
    out.final_profile = out.restricted_equilibrium;
  }
  out.final_welfare = social_welfare(game, out.final_profile);
  out.final_meets_bound = out.final_welfare >= out.bound;
  return out;
}

namespace {

// sum_v p_v(s_ref_v, s_-v) for the players in `players`.
Rational unilateral_sum(const PolymatrixGame& game, const JointStrategy& s_ref,
                        const JointStrategy& s, const std::vector<PlayerId>& players) {
  Rational total;
  for (const auto v : players) {
    total += game.preference(v, s_ref[v]);
    for (const auto& inc : game.incident(v)) {
      total += game.edge_payoff(inc, s_ref[v], s[inc.neighbor]);
    }
  }
  return total;
}

void record(SmoothnessReport& report, bool& first, const Rational& slack, const JointStrategy& s) {
  if (first || slack < report.worst_slack) report.worst_slack = slack;
  first = false;
  if (slack.sign() < 0 && report.holds) {
    report.holds = false;
    report.violation = s;
  }
}

}  // namespace

SmoothnessReport check_smoothness(const PolymatrixGame& game, const JointStrategy& s_ref,
                                  const Rational& lambda, const Rational& mu,
                                  std::uint64_t max_profiles) {
  require_valid(game);
  check_profile(game, s_ref);
  std::vector<PlayerId> everyone(game.num_players());
  std::iota(everyone.begin(), everyone.end(), 0);
  const Rational base = lambda * social_welfare(game, s_ref);
  SmoothnessReport report;
  bool first = true;
  for_each_profile(game, max_profiles, [&](const JointStrategy& s) {
    const Rational slack =
        unilateral_sum(game, s_ref, s, everyone) - base - mu * social_welfare(game, s);
    record(report, first, slack, s);
    return true;
  });
  return report;
}

SmoothnessReport check_smoothness(const PolymatrixGame& game, const Coalition& imposed,
                                  const JointStrategy& s_ref, const Rational& lambda,
                                  const Rational& mu, std::uint64_t max_profiles) {
  require_valid(game);
  check_profile(game, s_ref);
  const Restriction r = restrict(game, Imposition::from_profile(imposed, s_ref));
  std::vector<PlayerId> everyone(game.num_players());
  std::iota(everyone.begin(), everyone.end(), 0);
  const Rational base = lambda * social_welfare(game, s_ref);
  SmoothnessReport report;
  bool first = true;
  for_each_profile(r.game, max_profiles, [&](const JointStrategy& t) {
    const JointStrategy s = r.lift(t);
    const Rational slack =
        unilateral_sum(game, s_ref, s, everyone) - base - mu * social_welfare(game, s);
    record(report, first, slack, s);
    return true;
  });
  return report;
}

std::optional<Imposition> minimum_imposition(const PolymatrixGame& game, const Rational& target,
                                             std::size_t max_size,
                                             const EnumerationOptions& options) {
  require_valid(game);
  const std::size_t n = game.num_players();
  max_size = std::min(max_size, n);
  for (std::size_t size = 0; size <= max_size; ++size) {
    // Lexicographic combinations of `size` players.
    std::vector<PlayerId> members(size);
    std::iota(members.begin(), members.end(), 0);
    while (true) {
      const Coalition coalition(members);
      Imposition imp{coalition, std::vector<StrategyIndex>(size, 0), Imposition::Source::kUser};
      while (true) {
        if (guaranteed_welfare(game, imp, options).welfare >= target) return imp;
        std::size_t j = size;
        while (j > 0) {
          --j;
          if (static_cast<std::size_t>(++imp.fixed[j]) < game.num_strategies(members[j])) break;
          imp.fixed[j] = 0;
          if (j == 0) {
            j = size + 1;  // wrapped around
            break;
          }
        }
        if (j == size + 1 || size == 0) break;
      }
      std::size_t i = size;
      while (i > 0 && members[i - 1] == static_cast<PlayerId>(n - size + i - 1)) --i;
      if (i == 0) break;
      ++members[i - 1];
      for (std::size_t t = i; t < size; ++t) members[t] = members[t - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace polycoord
