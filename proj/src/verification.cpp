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

#include "polycoord/verification.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <utility>

#include "polycoord/errors.hpp"

namespace polycoord {
namespace {

EquilibriumReport checked(const PolymatrixGame& game, const JointStrategy& s,
                          const Rational& alpha, std::size_t k, std::optional<Deviation> witness,
                          VerifyMethod method) {
  EquilibriumReport report;
  report.method = method;
  if (witness) {
    if (!is_improving(game, s, *witness, alpha, k)) {
      throw InvariantViolation("equilibrium witness failed re-verification");
    }
    report.verdict = false;
    report.witness = std::move(witness);
  }
  return report;
}

/// Backtracking enumeration of equilibria of a graph coordination game.
///
/// Partial profiles are discarded as soon as some singleton or edge
/// coalition has a simple deviation that is improving under every completion:
/// the deviators' payoff lower bound (only already-matching neighbours) beats
/// alpha times their current payoff upper bound (every unassigned neighbour
/// assumed to match). Complete profiles are verified exactly.
class PrunedSearch {
 public:
  PrunedSearch(const PolymatrixGame& game, const Rational& alpha, std::size_t k,
               const EnumerationOptions& options)
      : game_(game),
        cs_(color_structure(game)),
        alpha_(alpha),
        k_(k),
        options_(options),
        n_(game.num_players()),
        assigned_(n_, 0),
        s_(std::vector<StrategyIndex>(n_, 0)) {
    build_order();
    build_coalitions();
    build_scaled();
  }

  std::vector<JointStrategy> run() {
    descend(0);
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  void build_order() {
    std::vector<std::size_t> degree(n_);
    for (std::size_t i = 0; i < n_; ++i) degree[i] = game_.incident(static_cast<PlayerId>(i)).size();
    std::vector<char> placed(n_, 0);
    while (order_.size() < n_) {
      std::size_t root = n_;
      for (std::size_t i = 0; i < n_; ++i) {
        if (!placed[i] && (root == n_ || degree[i] > degree[root])) root = i;
      }
      std::deque<PlayerId> queue{static_cast<PlayerId>(root)};
      placed[root] = 1;
      while (!queue.empty()) {
        const PlayerId v = queue.front();
        queue.pop_front();
        order_.push_back(v);
        std::vector<PlayerId> next;
        for (const auto& inc : game_.incident(v)) {
          if (!placed[static_cast<std::size_t>(inc.neighbor)]) {
            placed[static_cast<std::size_t>(inc.neighbor)] = 1;
            next.push_back(inc.neighbor);
          }
        }
        std::stable_sort(next.begin(), next.end(), [&](PlayerId a, PlayerId b) {
          return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)];
        });
        queue.insert(queue.end(), next.begin(), next.end());
      }
    }
  }

  void build_coalitions() {
    for (std::size_t i = 0; i < n_; ++i) coalitions_.push_back({static_cast<PlayerId>(i)});
    if (k_ >= 2) {
      for (const auto& e : game_.edges()) coalitions_.push_back({e.u, e.v});
    }
    touching_.assign(n_, {});
    for (std::size_t c = 0; c < coalitions_.size(); ++c) {
      std::vector<PlayerId> closed;
      for (const auto i : coalitions_[c]) {
        closed.push_back(i);
        for (const auto& inc : game_.incident(i)) closed.push_back(inc.neighbor);
      }
      std::sort(closed.begin(), closed.end());
      closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
      for (const auto v : closed) touching_[static_cast<std::size_t>(v)].push_back(c);
    }
  }

  bool is_assigned(PlayerId j) const { return assigned_[static_cast<std::size_t>(j)] != 0; }

  // Scales weights and preferences by a common denominator so the pruning
  // bound runs on integers. Leaves scaled_ empty when anything overflows.
  void build_scaled() {
    long num = 0, den = 0;
    if (!alpha_.to_longs(num, den)) return;
    std::vector<Rational> values(cs_.weight.begin(), cs_.weight.end());
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t x = 0; x < game_.num_strategies(static_cast<PlayerId>(i)); ++x) {
        values.push_back(game_.preference(static_cast<PlayerId>(i), static_cast<StrategyIndex>(x)));
      }
    }
    __int128 lcm = 1;
    for (const auto& v : values) {
      long p = 0, q = 0;
      if (!v.to_longs(p, q)) return;
      lcm = lcm / std::gcd(static_cast<long>(lcm % q), q) * q;
      if (lcm > (__int128{1} << 40)) return;
    }
    auto scale = [&](const Rational& v, std::int64_t& out) {
      long p = 0, q = 0;
      v.to_longs(p, q);
      const __int128 r = static_cast<__int128>(p) * (lcm / q);
      if (r > (__int128{1} << 50) || r < -(__int128{1} << 50)) return false;
      out = static_cast<std::int64_t>(r);
      return true;
    };
    std::vector<std::int64_t> w(cs_.weight.size());
    for (std::size_t e = 0; e < w.size(); ++e) {
      if (!scale(cs_.weight[e], w[e])) return;
    }
    std::vector<std::vector<std::int64_t>> pref(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      pref[i].resize(game_.num_strategies(static_cast<PlayerId>(i)));
      for (std::size_t x = 0; x < pref[i].size(); ++x) {
        if (!scale(game_.preference(static_cast<PlayerId>(i), static_cast<StrategyIndex>(x)), pref[i][x])) {
          return;
        }
      }
      // Sums of at most deg + 1 terms below 2^50 each stay well inside int64.
      if (game_.incident(static_cast<PlayerId>(i)).size() > 1000) return;
    }
    alpha_num_ = num;
    alpha_den_ = den;
    scaled_weight_ = std::move(w);
    scaled_pref_ = std::move(pref);
    scaled_ = true;
  }

  // True if coalition `members` (all assigned) certainly has an improving
  // simple deviation whatever the unassigned players do.
  bool certainly_unstable(const std::vector<PlayerId>& members) const {
    const PlayerId first = members.front();
    const auto m = static_cast<StrategyIndex>(game_.num_strategies(first));
    for (StrategyIndex y = 0; y < m; ++y) {
      const int c = cs_.color(first, y);
      bool eligible = true;
      for (const auto i : members) {
        const auto x = cs_.index(i, c);
        if (x < 0 || x == s_[i]) {
          eligible = false;
          break;
        }
      }
      if (!eligible) continue;
      bool all_improve = true;
      for (const auto i : members) {
        if (!(scaled_ ? improves_scaled(members, i, c) : improves_exact(members, i, c))) {
          all_improve = false;
          break;
        }
      }
      if (all_improve) return true;
    }
    return false;
  }

  // Lower bound after moving to colour c beats alpha times the upper bound
  // on the current payoff.
  bool improves_exact(const std::vector<PlayerId>& members, PlayerId i, int c) const {
    const int own = cs_.color(i, s_[i]);
    Rational upper = game_.preference(i, s_[i]);
    Rational lower = game_.preference(i, cs_.index(i, c));
    for (const auto& inc : game_.incident(i)) {
      const PlayerId j = inc.neighbor;
      const Rational& w = cs_.weight[inc.edge];
      if (is_assigned(j)) {
        const int cj = cs_.color(j, s_[j]);
        if (cj == own) upper += w;
        if (cj == c || is_member(members, j)) lower += w;
      } else if (cs_.index(j, own) >= 0) {
        upper += w;
      }
    }
    return lower > alpha_ * upper;
  }

  bool improves_scaled(const std::vector<PlayerId>& members, PlayerId i, int c) const {
    const int own = cs_.color(i, s_[i]);
    const auto& pref = scaled_pref_[static_cast<std::size_t>(i)];
    std::int64_t upper = pref[static_cast<std::size_t>(s_[i])];
    std::int64_t lower = pref[static_cast<std::size_t>(cs_.index(i, c))];
    for (const auto& inc : game_.incident(i)) {
      const PlayerId j = inc.neighbor;
      const std::int64_t w = scaled_weight_[inc.edge];
      if (is_assigned(j)) {
        const int cj = cs_.color(j, s_[j]);
        if (cj == own) upper += w;
        if (cj == c || is_member(members, j)) lower += w;
      } else if (cs_.index(j, own) >= 0) {
        upper += w;
      }
    }
    return static_cast<__int128>(lower) * alpha_den_ > static_cast<__int128>(upper) * alpha_num_;
  }

  static bool is_member(const std::vector<PlayerId>& members, PlayerId j) {
    return std::find(members.begin(), members.end(), j) != members.end();
  }

  bool consistent(PlayerId just_assigned) const {
    for (const auto c : touching_[static_cast<std::size_t>(just_assigned)]) {
      const auto& members = coalitions_[c];
      if (!std::all_of(members.begin(), members.end(), [&](PlayerId i) { return is_assigned(i); })) {
        continue;
      }
      if (certainly_unstable(members)) return false;
    }
    return true;
  }

  bool descend(std::size_t depth) {
    if (++visited_ > options_.max_profiles) {
      throw BudgetExceeded("pruned equilibrium search", visited_, options_.max_profiles);
    }
    if (depth == n_) {
      if (is_equilibrium(game_, s_, alpha_, k_, VerifyMethod::kAuto, options_.limits).verdict) {
        found_.push_back(s_);
        if (found_.size() >= options_.max_results) return true;
      }
      return false;
    }
    const PlayerId v = order_[depth];
    assigned_[static_cast<std::size_t>(v)] = 1;
    const auto m = static_cast<StrategyIndex>(game_.num_strategies(v));
    for (StrategyIndex x = 0; x < m; ++x) {
      s_[v] = x;
      if (consistent(v) && descend(depth + 1)) return true;
    }
    assigned_[static_cast<std::size_t>(v)] = 0;
    s_[v] = 0;
    return false;
  }

  const PolymatrixGame& game_;
  ColorStructure cs_;
  Rational alpha_;
  std::size_t k_;
  EnumerationOptions options_;
  std::size_t n_;
  std::vector<PlayerId> order_;
  std::vector<std::vector<PlayerId>> coalitions_;
  std::vector<std::vector<std::size_t>> touching_;
  std::vector<char> assigned_;
  JointStrategy s_;
  std::vector<JointStrategy> found_;
  std::uint64_t visited_ = 0;
  bool scaled_ = false;
  long alpha_num_ = 0;
  long alpha_den_ = 1;
  std::vector<std::int64_t> scaled_weight_;
  std::vector<std::vector<std::int64_t>> scaled_pref_;
};

}  // namespace

std::string to_string(VerifyMethod m) {
  switch (m) {
    case VerifyMethod::kAuto:
      return "auto";
    case VerifyMethod::kBruteForce:
      return "brute-force";
    case VerifyMethod::kSimple:
      return "simple";
    case VerifyMethod::kMinDegree:
      return "min-degree";
  }
  return "unknown";
}

EquilibriumReport is_equilibrium(const PolymatrixGame& game, const JointStrategy& s,
                                 const Rational& alpha, std::size_t k, VerifyMethod method,
                                 const SearchLimits& limits) {
  check_profile(game, s);
  if (alpha < Rational(1)) throw InputError("alpha must be at least 1, got " + alpha.str());
  if (k < 1) throw InputError("coalition size bound k must be at least 1");
  const std::size_t n = game.num_players();
  if (n > 0 && k > n) throw InputError("coalition size bound k exceeds the number of players");
  if (n == 0) return EquilibriumReport{true, std::nullopt, VerifyMethod::kBruteForce};

  if (method == VerifyMethod::kAuto) {
    method = (k == n && as_graph_coordination(game)) ? VerifyMethod::kMinDegree
                                                     : VerifyMethod::kBruteForce;
  }
  switch (method) {
    case VerifyMethod::kMinDegree:
      if (k != n) throw InputError("the min-degree verifier decides k = n only");
      return is_alpha_strong_equilibrium_graph(game, s, alpha);
    case VerifyMethod::kSimple:
      return checked(game, s, alpha, k, find_simple_improving_deviation(game, s, alpha, k, limits),
                     VerifyMethod::kSimple);
    default:
      return checked(game, s, alpha, k,
                     find_improving_deviation(game, s, alpha, k, SelectionPolicy::kFirstFound, limits),
                     VerifyMethod::kBruteForce);
  }
}

std::vector<int> min_degree_maximal_set(const DegreeInstance& instance) {
  const std::size_t n = instance.num_nodes;
  if (instance.thresholds.size() != n) throw InputError("one threshold per node required");
  struct Arc {
    int to;
    Rational weight;
  };
  std::vector<std::vector<Arc>> adj(n);
  std::vector<Rational> degree(n);
  for (const auto& e : instance.edges) {
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n ||
        static_cast<std::size_t>(e.v) >= n || e.u == e.v) {
      throw InputError("degree instance edge out of range");
    }
    if (e.weight.sign() < 0) throw InputError("degree instance edge with negative weight");
    adj[static_cast<std::size_t>(e.u)].push_back({e.v, e.weight});
    adj[static_cast<std::size_t>(e.v)].push_back({e.u, e.weight});
    degree[static_cast<std::size_t>(e.u)] += e.weight;
    degree[static_cast<std::size_t>(e.v)] += e.weight;
  }
  std::vector<char> alive(n, 1);
  std::vector<int> violators;
  for (std::size_t v = 0; v < n; ++v) {
    if (!(degree[v] > instance.thresholds[v])) violators.push_back(static_cast<int>(v));
  }
  while (!violators.empty()) {
    const auto v = static_cast<std::size_t>(violators.back());
    violators.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (const auto& arc : adj[v]) {
      const auto u = static_cast<std::size_t>(arc.to);
      if (!alive[u]) continue;
      const bool was_ok = degree[u] > instance.thresholds[u];
      degree[u] -= arc.weight;
      if (was_ok && !(degree[u] > instance.thresholds[u])) violators.push_back(arc.to);
    }
  }
  std::vector<int> result;
  for (std::size_t v = 0; v < n; ++v) {
    if (alive[v]) result.push_back(static_cast<int>(v));
  }
  return result;
}

EquilibriumReport is_alpha_strong_equilibrium_graph(const PolymatrixGame& game,
                                                    const JointStrategy& s,
                                                    const Rational& alpha) {
  check_profile(game, s);
  if (alpha < Rational(1)) throw InputError("alpha must be at least 1, got " + alpha.str());
  const ColorStructure cs = color_structure(game);
  const std::size_t n = game.num_players();
  const std::vector<Rational> current = payoffs(game, s);

  for (int c = 0; c < static_cast<int>(cs.colors.size()); ++c) {
    std::vector<int> local(n, -1);
    std::vector<PlayerId> nodes;
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = static_cast<PlayerId>(i);
      const auto x = cs.index(v, c);
      if (x >= 0 && x != s[v]) {
        local[i] = static_cast<int>(nodes.size());
        nodes.push_back(v);
      }
    }
    if (nodes.empty()) continue;
    DegreeInstance inst;
    inst.num_nodes = nodes.size();
    for (const auto v : nodes) {
      // Neighbours already on colour c keep paying after the move.
      Rational matched;
      for (const auto& inc : game.incident(v)) {
        if (cs.color(inc.neighbor, s[inc.neighbor]) == c) matched += cs.weight[inc.edge];
      }
      inst.thresholds.push_back(alpha * current[static_cast<std::size_t>(v)] - matched -
                                game.preference(v, cs.index(v, c)));
    }
    for (std::size_t e = 0; e < game.edges().size(); ++e) {
      const auto& edge = game.edges()[e];
      const int lu = local[static_cast<std::size_t>(edge.u)];
      const int lv = local[static_cast<std::size_t>(edge.v)];
      if (lu >= 0 && lv >= 0) inst.edges.push_back({lu, lv, cs.weight[e]});
    }
    const auto kept = min_degree_maximal_set(inst);
    if (kept.empty()) continue;
    std::vector<PlayerId> members;
    for (const auto l : kept) members.push_back(nodes[static_cast<std::size_t>(l)]);
    Deviation d;
    d.coalition = Coalition(members);
    for (const auto v : d.coalition) d.new_choice.push_back(cs.index(v, c));
    const JointStrategy next = d.apply(s);
    for (const auto v : d.coalition) {
      d.before.push_back(current[static_cast<std::size_t>(v)]);
      d.after.push_back(payoff(game, next, v));
    }
    return checked(game, s, alpha, n, std::move(d), VerifyMethod::kMinDegree);
  }
  return EquilibriumReport{true, std::nullopt, VerifyMethod::kMinDegree};
}

std::vector<JointStrategy> enumerate_equilibria(const PolymatrixGame& game, const Rational& alpha,
                                                std::size_t k, const EnumerationOptions& options) {
  EnumerationMethod method = options.method;
  const bool graph = as_graph_coordination(game).has_value();
  if (method == EnumerationMethod::kAuto) {
    method = graph && game.num_players() > 0 ? EnumerationMethod::kPruned
                                             : EnumerationMethod::kExhaustive;
  }
  if (method == EnumerationMethod::kPruned) {
    if (!graph) throw UnsupportedGame("pruned enumeration needs a graph coordination game");
    if (alpha < Rational(1)) throw InputError("alpha must be at least 1, got " + alpha.str());
    if (k < 1 || (game.num_players() > 0 && k > game.num_players())) {
      throw InputError("coalition size bound k out of range");
    }
    if (game.num_players() == 0) return {JointStrategy()};
    return PrunedSearch(game, alpha, k, options).run();
  }
  std::vector<JointStrategy> out;
  for_each_profile(game, options.max_profiles, [&](const JointStrategy& s) {
    if (is_equilibrium(game, s, alpha, game.num_players() == 0 ? 1 : k,
                       VerifyMethod::kAuto, options.limits)
            .verdict) {
      out.push_back(s);
    }
    return out.size() < options.max_results;
  });
  return out;
}

}  // namespace polycoord
