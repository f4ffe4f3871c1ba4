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

// Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic.
//
// Two criteria cannot hold as stated (see README, "Known deviations"). They
// print FAIL with the measured values; each also runs a corrected variant
// and the binary exits 0 only if every other criterion passes and every
// corrected variant passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "polycoord/dynamics.hpp"
#include "polycoord/errors.hpp"
#include "polycoord/inefficiency.hpp"
#include "polycoord/instances.hpp"
#include "polycoord/mechanisms.hpp"
#include "polycoord/tree_solver.hpp"
#include "polycoord/verification.hpp"
#include "test_support.hpp"

namespace polycoord {
namespace {

using testing::Rng;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
  // Set for the criteria that are unattainable as stated.
  std::function<Outcome()> corrected;
};

// Collects the first failure message; later checks still run.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && first_failure_.empty()) first_failure_ = what;
    if (!ok) ++failures_;
  }
  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, summary + "; " + std::to_string(failures_) + "/" + std::to_string(checks_) +
                       " checks failed, first: " + first_failure_};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_failure_;
};

std::string join(const std::vector<Rational>& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + values[i].str();
  return out + ")";
}

// ---------------------------------------------------------------------------

Outcome check_exact_potential() {
  Rng rng(1001);
  Checker c;
  std::size_t deviations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto game = testing::random_polymatrix(rng);
    const auto counts = testing::strategy_counts(game);
    testing::oracle_profiles(counts, [&](const std::vector<int>& s) {
      const Rational phi = exact_potential(game, JointStrategy(s));
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (int x = 0; x < counts[i]; ++x) {
          if (x == s[i]) continue;
          auto t = s;
          t[i] = x;
          const int id = static_cast<int>(i);
          const Rational dphi = exact_potential(game, JointStrategy(t)) - phi;
          const Rational dp = testing::oracle_payoff(game, t, id) - testing::oracle_payoff(game, s, id);
          c.expect(dphi == dp, "trial " + std::to_string(trial) + ": delta Phi " + dphi.str() +
                                   " != delta p " + dp.str());
          ++deviations;
        }
      }
    });
  }
  return c.outcome("200 games, " + std::to_string(deviations) + " unilateral deviations");
}

Outcome check_two_k_fip() {
  Rng rng(1002);
  Checker c;
  std::size_t steps = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto game = testing::random_polymatrix(rng);
    const std::size_t n = game.num_players();
    const auto counts = testing::strategy_counts(game);
    std::vector<int> s0(n);
    for (std::size_t i = 0; i < n; ++i) s0[i] = testing::uniform(rng, 0, counts[i] - 1);
    const std::size_t bound = static_cast<std::size_t>(game.profile_count());
    const auto trace = run_dynamics(game, JointStrategy(s0), Rational(2), n, bound);
    c.expect(trace.verdict == Termination::kConverged,
             "trial " + std::to_string(trial) + ": " + to_string(trace.verdict));
    c.expect(trace.steps.size() < bound, "trial " + std::to_string(trial) + ": too many steps");
    for (std::size_t t = 1; t < trace.welfares.size(); ++t) {
      c.expect(trace.welfares[t] > trace.welfares[t - 1],
               "trial " + std::to_string(trial) + ": SW not increasing at step " + std::to_string(t));
    }
    steps += trace.steps.size();
  }
  return c.outcome("100 games, " + std::to_string(steps) + " (2,n)-improving steps");
}

// Literal statement: m = 4, alpha = 7/4, period 4, factor 7/4, payoffs (0,2,4,14).
Outcome check_improvement_cycle_literal() {
  const auto inst = gen_cycle_counterexample(4);
  const Rational alpha(7, 4);
  const auto trace = run_dynamics(inst.game, inst.schedule[0], alpha, 3, 100,
                                  replay_selector(inst.game, inst.schedule, alpha, 3));
  const auto pay = payoffs(inst.game, inst.schedule[0]);
  const bool ok = trace.verdict == Termination::kCycled && trace.period() == 4 &&
                  inst.critical_factor == alpha &&
                  pay == std::vector<Rational>{Rational(0), Rational(2), Rational(4), Rational(14)};
  std::ostringstream d;
  d << "m=4, alpha=7/4: verdict " << to_string(trace.verdict) << ", period " << trace.period()
    << ", critical factor " << inst.critical_factor.str() << ", payoffs " << join(pay);
  return {ok, d.str()};
}

// The construction's critical player improves by exactly 7/4 with five
// players, and improving deviations are strict, so the cycle lives at any
// alpha below 7/4.
Outcome check_improvement_cycle_corrected() {
  Checker c;
  const auto inst = gen_cycle_counterexample(5);
  const Rational alpha = Rational(7, 4) - Rational(1, 1000);
  c.expect(inst.critical_factor == Rational(7, 4), "factor " + inst.critical_factor.str());
  const auto pay = payoffs(inst.game, inst.schedule[0]);
  c.expect(pay == std::vector<Rational>{Rational(0), Rational(2), Rational(4), Rational(8), Rational(14)},
           "payoffs " + join(pay));
  for (std::size_t t = 0; t < inst.schedule.size(); ++t) {
    const auto d = deviation_between(inst.game, inst.schedule[t], inst.schedule[(t + 1) % 5]);
    Rational min_ratio(100);
    for (std::size_t i = 0; i < d.before.size(); ++i) {
      if (d.before[i].sign() > 0) min_ratio = std::min(min_ratio, d.after[i] / d.before[i]);
    }
    c.expect(min_ratio == Rational(7, 4), "step factor " + min_ratio.str());
    c.expect(is_improving(inst.game, inst.schedule[t], d, alpha, 4), "step not improving");
    c.expect(!is_improving(inst.game, inst.schedule[t], d, Rational(7, 4), 4), "strictness");
  }
  const auto trace = run_dynamics(inst.game, inst.schedule[0], alpha, 4, 100,
                                  replay_selector(inst.game, inst.schedule, alpha, 4));
  c.expect(trace.verdict == Termination::kCycled && trace.period() == 5,
           to_string(trace.verdict) + " period " + std::to_string(trace.period()));
  return c.outcome("m=5, alpha=7/4-1/1000: cycled with period " + std::to_string(trace.period()) +
                   ", every step factor exactly 7/4, payoffs " + join(pay));
}

Outcome check_non_existence() {
  const auto game = from_graph_coordination(gen_golden_ratio(Rational(8, 5)));
  const auto strong = enumerate_equilibria(game, Rational(3, 2), 2);
  const auto nash = enumerate_equilibria(game, Rational(1), 1);
  return {strong.empty() && !nash.empty(),
          std::to_string(strong.size()) + " (3/2,2)-equilibria, " + std::to_string(nash.size()) +
              " Nash equilibria"};
}

Outcome check_poa_tightness() {
  Checker c;
  const auto spoa = empirical_poa(from_graph_coordination(gen_spoa_path(Rational(2))), Rational(2), 4);
  c.expect(spoa.kind == PoaResult::Kind::kFinite && spoa.ratio == ExtendedRational(Rational(4)),
           "spoa " + spoa.str());
  const auto lower = empirical_poa(from_graph_coordination(gen_poa_lower(5, 3, Rational(1))), Rational(1), 3);
  const auto formula = poa_lower_bound_formula(5, 3, Rational(1));
  const auto upper = poa_upper_bound(5, 3, Rational(1));
  c.expect(lower.ratio == ExtendedRational(Rational(3)), "lower " + lower.str());
  c.expect(lower.ratio == formula, "formula " + formula.str());
  c.expect(lower.ratio <= upper && upper == ExtendedRational(Rational(4)), "upper " + upper.str());
  return c.outcome("spoa(2) PoA " + spoa.str() + "; poa_lower(5,3,1) PoA " + lower.str() + ", formula " +
                   formula.str() + ", upper " + upper.str());
}

std::vector<int> maximal_set_oracle(const DegreeInstance& inst) {
  std::uint32_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << inst.num_nodes); ++mask) {
    std::vector<Rational> degree(inst.num_nodes);
    for (const auto& e : inst.edges) {
      if ((mask >> e.u & 1u) && (mask >> e.v & 1u)) {
        degree[static_cast<std::size_t>(e.u)] += e.weight;
        degree[static_cast<std::size_t>(e.v)] += e.weight;
      }
    }
    bool feasible = true;
    for (std::size_t v = 0; v < inst.num_nodes; ++v) {
      if ((mask >> v & 1u) && !(degree[v] > inst.thresholds[v])) feasible = false;
    }
    if (feasible) best |= mask;
  }
  std::vector<int> out;
  for (std::size_t v = 0; v < inst.num_nodes; ++v) {
    if (best >> v & 1u) out.push_back(static_cast<int>(v));
  }
  return out;
}

Outcome check_min_degree() {
  Rng rng(1006);
  Checker c;
  for (int trial = 0; trial < 500; ++trial) {
    DegreeInstance inst;
    inst.num_nodes = static_cast<std::size_t>(testing::uniform(rng, 0, 12));
    for (int u = 0; u < static_cast<int>(inst.num_nodes); ++u) {
      for (int v = u + 1; v < static_cast<int>(inst.num_nodes); ++v) {
        if (testing::coin(rng, 0.4)) inst.edges.push_back({u, v, testing::small_rational(rng, 5)});
      }
      inst.thresholds.push_back(Rational(testing::uniform(rng, -2, 10), testing::uniform(rng, 1, 3)));
    }
    c.expect(min_degree_maximal_set(inst) == maximal_set_oracle(inst), "instance " + std::to_string(trial));
  }
  std::size_t profiles = 0;
  std::size_t equilibria = 0;
  testing::GraphShape shape;
  shape.max_nodes = 7;
  shape.preferences = true;
  for (int trial = 0; trial < 100; ++trial) {
    const auto game = from_graph_coordination(testing::random_graph_spec(rng, shape));
    const std::size_t n = game.num_players();
    testing::oracle_profiles(testing::strategy_counts(game), [&](const std::vector<int>& s) {
      const auto report = is_equilibrium(game, JointStrategy(s), Rational(1), n, VerifyMethod::kMinDegree);
      const bool oracle = testing::oracle_is_equilibrium(game, s, Rational(1), n);
      c.expect(report.verdict == oracle, "game " + std::to_string(trial) + " profile verdict mismatch");
      if (report.witness) {
        c.expect(is_improving(game, JointStrategy(s), *report.witness, Rational(1), n), "bad witness");
      }
      ++profiles;
      equilibria += oracle;
    });
  }
  return c.outcome("500 degree instances; 100 games, " + std::to_string(profiles) + " profiles (" +
                   std::to_string(equilibria) + " strong equilibria)");
}

Outcome check_clique_reduction() {
  Checker c;
  std::size_t graphs = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& g : testing::graphs_up_to_isomorphism(n)) {
      ++graphs;
      for (const std::size_t k : {3u, 4u}) {
        for (const Rational& alpha : {Rational(1), Rational(2)}) {
          const auto red = reduce_clique(g, k, alpha);
          const auto game = from_graph_coordination(red.spec);
          const std::size_t kk = std::min(k, game.num_players());
          const bool eq = is_equilibrium(game, red.profile, alpha, kk).verdict;
          c.expect(eq == !testing::has_clique(g, k), "n=" + std::to_string(n) + " m=" +
                                                         std::to_string(g.edges.size()) + " k=" +
                                                         std::to_string(k) + " alpha=" + alpha.str());
        }
      }
    }
  }
  return c.outcome(std::to_string(graphs) + " graphs (one per isomorphism class, n<=6), k in {3,4}, alpha in {1,2}");
}

Outcome check_mmm_reduction() {
  Checker c;
  std::size_t graphs = 0;
  std::size_t found = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& g : testing::graphs_up_to_isomorphism(n)) {
      ++graphs;
      const std::size_t mmm = testing::minimum_maximal_matching(g);
      for (std::size_t l = 0; l <= 2; ++l) {
        const auto game = from_graph_coordination(reduce_mmm(g, l));
        const std::size_t k = std::min<std::size_t>(2, game.num_players());
        EnumerationOptions options;
        options.max_results = 4;
        const auto eq = enumerate_equilibria(game, Rational(1), k, options);
        c.expect(!eq.empty() == (mmm <= l), "n=" + std::to_string(n) + " m=" + std::to_string(g.edges.size()) +
                                                " l=" + std::to_string(l));
        for (const auto& s : eq) {
          ++found;
          c.expect(is_alpha_strong_equilibrium_graph(game, s, Rational(1)).verdict,
                   "2-equilibrium that is not strong");
        }
      }
    }
  }
  return c.outcome(std::to_string(graphs) + " graphs (one per isomorphism class, n<=5), l in {0,1,2}; " +
                   std::to_string(found) + " 2-equilibria checked strong");
}

Outcome check_tree_solver() {
  Rng rng(1009);
  Checker c;
  testing::GraphShape shape;
  shape.forest = true;
  shape.max_nodes = 10;
  shape.preferences = true;
  Rational worst_ratio(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto spec = testing::random_graph_spec(rng, shape);
    const auto game = from_graph_coordination(spec);
    const auto s = strong_equilibrium_tree(spec);
    c.expect(testing::oracle_is_equilibrium(game, s.choice, Rational(1), game.num_players()),
             "forest " + std::to_string(trial) + " not strong");
    const Rational sw = social_welfare(game, s);
    const Rational opt = testing::oracle_optimum(game);
    if (sw.sign() == 0) {
      c.expect(opt.sign() == 0, "forest " + std::to_string(trial) + ": zero welfare below positive optimum");
    } else {
      worst_ratio = std::max(worst_ratio, opt / sw);
      c.expect(opt <= Rational(2) * sw, "forest " + std::to_string(trial) + ": ratio " + (opt / sw).str());
    }
  }
  const auto spoa = gen_spoa_path(Rational(2));
  const Rational sw = social_welfare(from_graph_coordination(spoa), strong_equilibrium_tree(spoa));
  c.expect(sw == Rational(8), "spoa(2) SW " + sw.str());
  return c.outcome("200 forests strong; max OPT/SW " + worst_ratio.str() + "; spoa(2) SW " + sw.str());
}

Outcome check_example_ten() {
  const auto ex = gen_seq_counterexample();
  const bool implemented_fails = !is_equilibrium(ex.game, ex.implemented, Rational(1), 1).verdict;
  const bool selfish_holds = is_equilibrium(ex.game, JointStrategy({1, 1}), Rational(1), 1).verdict;
  return {implemented_fails && selfish_holds && ex.implemented == JointStrategy({0, 0}),
          std::string("(c_u,c_v) Nash: ") + (implemented_fails ? "no" : "yes") +
              ", (s_u,s_v) Nash: " + (selfish_holds ? "yes" : "no")};
}

struct ReleaseStats {
  std::size_t runs = 0;
  std::size_t final_below = 0;
  std::size_t restricted_below = 0;
  std::string first_counterexample;
};

ReleaseStats release_on_random_games(bool preferences) {
  Rng rng(preferences ? 1011 : 1012);
  ReleaseStats stats;
  testing::PolymatrixShape shape;
  shape.preferences = preferences;
  for (int trial = 0; trial < 100; ++trial) {
    const auto game = testing::random_polymatrix(rng, shape);
    const std::size_t n = game.num_players();
    const auto counts = testing::strategy_counts(game);
    std::vector<JointStrategy> starts{social_optimum(game).profile};
    std::vector<int> random(n);
    for (std::size_t i = 0; i < n; ++i) random[i] = testing::uniform(rng, 0, counts[i] - 1);
    starts.emplace_back(random);
    for (const auto& s : starts) {
      for (std::size_t k = 0; k <= n; ++k) {
        const auto r = impose_and_release(game, s, k);
        ++stats.runs;
        if (r.restricted_welfare < r.bound) ++stats.restricted_below;
        if (!r.final_meets_bound) {
          if (stats.final_below++ == 0) {
            stats.first_counterexample = "game " + std::to_string(trial) + ", k=" + std::to_string(k) +
                                         ": final SW " + r.final_welfare.str() + " < bound " + r.bound.str();
          }
        }
      }
    }
  }
  return stats;
}

Outcome imposition_fixed_checks(Checker& c) {
  const auto game = from_graph_coordination(gen_imposition_tight(2));
  const JointStrategy opt(std::vector<StrategyIndex>(5, 0));
  const auto K = choose_topk(game, opt, 2);
  const auto g = guaranteed_welfare(game, Imposition::from_profile(K, opt));
  c.expect(g.welfare == Rational(8), "guaranteed " + g.welfare.str());
  c.expect(g.welfare == Rational(2, 5) * social_optimum(game).welfare, "not (k/n) OPT");
  const auto restricted = restrict(game, Imposition::from_profile(K, opt));
  c.expect(check_smoothness(restricted.game, restricted.project(opt), Rational(2, 5), Rational(0)).holds,
           "smoothness of the restriction");
  c.expect(check_smoothness(game, K, opt, Rational(2, 5), Rational(0)).holds, "smoothness with K imposed");
  const auto vc = reduce_vertex_cover(SimpleGraph::complete(3));
  const auto vc_game = from_graph_coordination(vc.spec);
  const auto imp = minimum_imposition(vc_game, vc.target, vc_game.num_players());
  c.expect(imp && imp->coalition.size() == 2, "vertex cover imposition size");
  return {};
}

Outcome check_imposition_literal() {
  Checker c;
  imposition_fixed_checks(c);
  const auto stats = release_on_random_games(true);
  c.expect(stats.final_below == 0, stats.first_counterexample);
  std::string summary = "tight(2) guarantee 8 = (2/5)*20, (2/5,0)-smooth, VC(K3) imposition 2; release on 100 random "
                        "games with preferences: " +
                        std::to_string(stats.final_below) + "/" + std::to_string(stats.runs) +
                        " runs end below (k/n)SW(s)";
  if (stats.final_below > 0) summary += " (" + stats.first_counterexample + ")";
  return c.outcome(summary);
}

// The smoothness argument bounds the equilibrium of the restricted game.
// Releasing only raises the potential, so the bound carries to the final
// profile when there are no preferences (SW = 2 Phi).
Outcome check_imposition_corrected() {
  Checker c;
  imposition_fixed_checks(c);
  const auto with = release_on_random_games(true);
  c.expect(with.restricted_below == 0, "restricted equilibrium below bound");
  const auto without = release_on_random_games(false);
  c.expect(without.final_below == 0 && without.restricted_below == 0, without.first_counterexample);
  return c.outcome("restricted equilibria >= (k/n)SW(s) in all " + std::to_string(with.runs) +
                   " runs with preferences; final >= bound in " +
                   std::to_string(without.runs - without.final_below) + "/" + std::to_string(without.runs) +
                   " runs without preferences");
}

}  // namespace
}  // namespace polycoord

int main() {
  using namespace polycoord;
  const std::vector<Criterion> criteria = {
      {1, "exact potential", 10, check_exact_potential, nullptr},
      {2, "(2,k)-FIP", 60, check_two_k_fip, nullptr},
      {3, "improvement cycle", 1, check_improvement_cycle_literal, check_improvement_cycle_corrected},
      {4, "non-existence", 5, check_non_existence, nullptr},
      {5, "PoA tightness", 10, check_poa_tightness, nullptr},
      {6, "MinDegree verifier", 120, check_min_degree, nullptr},
      {7, "clique reduction", 60, check_clique_reduction, nullptr},
      {8, "MMM reduction", 300, check_mmm_reduction, nullptr},
      {9, "tree solver", 120, check_tree_solver, nullptr},
      {10, "sequential counterexample", 1, check_example_ten, nullptr},
      {11, "imposition", 120, check_imposition_literal, check_imposition_corrected},
  };

  auto timed = [](const std::function<Outcome()>& f, double& seconds) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return o;
  };

  int passed = 0;
  int documented = 0;
  int unexpected = 0;
  for (const auto& c : criteria) {
    double seconds = 0;
    Outcome o = timed(c.run, seconds);
    const bool in_time = seconds < c.limit_seconds;
    const bool ok = o.pass && in_time;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs < %.0fs", seconds, c.limit_seconds);
    std::cout << (ok ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << " (" << timing
              << (in_time ? "" : " EXCEEDED") << "): " << o.detail << std::endl;
    if (ok) {
      ++passed;
      continue;
    }
    if (!c.corrected) {
      ++unexpected;
      continue;
    }
    double fix_seconds = 0;
    const Outcome fix = timed(c.corrected, fix_seconds);
    const bool fix_ok = fix.pass && fix_seconds < c.limit_seconds;
    std::snprintf(timing, sizeof timing, "%.2fs", fix_seconds);
    std::cout << "      [" << c.id << "] corrected variant " << (fix_ok ? "PASS" : "FAIL") << " (" << timing
              << "): " << fix.detail << std::endl;
    if (fix_ok) {
      ++documented;
    } else {
      ++unexpected;
    }
  }
  std::cout << passed << "/" << criteria.size() << " criteria pass as stated; " << documented
            << " fail as stated with a documented cause and a passing corrected variant; " << unexpected
            << " unexpected failures\n";
  return unexpected == 0 ? 0 : 1;
}
