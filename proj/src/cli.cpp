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

#include "polycoord/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "polycoord/dynamics.hpp"
#include "polycoord/errors.hpp"
#include "polycoord/inefficiency.hpp"
#include "polycoord/instances.hpp"
#include "polycoord/io.hpp"
#include "polycoord/mechanisms.hpp"
#include "polycoord/tree_solver.hpp"
#include "polycoord/verification.hpp"

namespace polycoord {

namespace {

using Json = nlohmann::ordered_json;

// One result. Text mode prints "key: value" lines, nested objects flattened
// with dots; JSON mode prints the object on one line.
void print_text(std::ostream& out, const Json& value, const std::string& prefix) {
  for (auto it = value.begin(); it != value.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      print_text(out, *it, key);
    } else if (it->is_string()) {
      out << key << ": " << it->get<std::string>() << "\n";
    } else if (it->is_array()) {
      out << key << ": [";
      for (std::size_t i = 0; i < it->size(); ++i) {
        if (i > 0) out << ", ";
        const Json& x = (*it)[i];
        out << (x.is_string() ? x.get<std::string>() : x.dump());
      }
      out << "]\n";
    } else {
      out << key << ": " << it->dump() << "\n";
    }
  }
}

void emit(std::ostream& out, bool json, const Json& record) {
  if (json) {
    out << record.dump() << "\n";
  } else {
    print_text(out, record, "");
  }
}

Json profile_json(const PolymatrixGame& game, const JointStrategy& s) {
  Json out = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.push_back(game.player(static_cast<PlayerId>(i)).strategies[static_cast<std::size_t>(s.choice[i])]);
  }
  return out;
}

Json rationals_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& q : values) out.push_back(q.str());
  return out;
}

Json coalition_json(const PolymatrixGame& game, const Coalition& c) {
  Json out = Json::array();
  for (const PlayerId i : c) out.push_back(game.player(i).name);
  return out;
}

Json deviation_json(const PolymatrixGame& game, const Deviation& d) {
  Json out;
  out["coalition"] = coalition_json(game, d.coalition);
  Json to = Json::array();
  for (std::size_t j = 0; j < d.coalition.size(); ++j) {
    const PlayerId i = d.coalition.members()[j];
    to.push_back(game.player(i).strategies[static_cast<std::size_t>(d.new_choice[j])]);
  }
  out["to"] = std::move(to);
  out["before"] = rationals_json(d.before);
  out["after"] = rationals_json(d.after);
  return out;
}

std::string read_source(const std::string& path, std::istream& in) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << in.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path);
  if (!file) throw InputError(path + ": cannot open file");
  buffer << file.rdbuf();
  return buffer.str();
}

GameDocument load_game(const std::string& path, std::istream& in) {
  try {
    return parse_game(read_source(path, in));
  } catch (const InputError& e) {
    throw InputError(path + ":" + e.what());
  }
}

SimpleGraph load_graph(const std::string& path, std::istream& in) {
  try {
    return parse_graph_text(read_source(path, in));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Rational parse_rational_arg(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(flag) + ": " + e.what());
  }
}

std::size_t parse_count(const std::string& text, const char* what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError(std::string(what) + ": expected a non-negative integer, got '" + text + "'");
  }
  return value;
}

VerifyMethod parse_method(const std::string& name) {
  for (const auto m : {VerifyMethod::kAuto, VerifyMethod::kBruteForce, VerifyMethod::kSimple,
                       VerifyMethod::kMinDegree}) {
    if (to_string(m) == name) return m;
  }
  throw InputError("--method: expected auto, brute-force, simple or min-degree");
}

std::uint64_t default_max_profiles() {
  const char* env = std::getenv("POLYCOORD_MAX_PROFILES");
  if (env == nullptr || *env == '\0') return EnumerationOptions{}.max_profiles;
  return parse_count(env, "POLYCOORD_MAX_PROFILES");
}

struct Options {
  bool json = false;
  std::uint64_t max_profiles = 0;
  std::uint64_t max_coalitions = SearchLimits{}.max_coalitions;
  std::string game_path;
  std::string profile;
  std::string alpha = "1";
  std::size_t k = 1;
  std::string method = "auto";
  std::size_t max_steps = 100'000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string policy = "first";
  std::vector<std::string> roots;
  std::string name;
  std::vector<std::string> args;
  std::size_t l = 0;

  EnumerationOptions enumeration() const {
    EnumerationOptions o;
    o.max_profiles = max_profiles;
    o.limits.max_coalitions = max_coalitions;
    return o;
  }
  SearchLimits limits() const { return SearchLimits{max_coalitions}; }
};

void require_k(const PolymatrixGame& game, std::size_t k) {
  if (k < 1 || k > std::max<std::size_t>(1, game.num_players())) {
    throw InputError("--k must lie in [1, " + std::to_string(game.num_players()) + "]");
  }
}

int cmd_verify(const Options& o, std::istream& in, std::ostream& out) {
  const auto doc = load_game(o.game_path, in);
  const auto game = doc.polymatrix();
  const auto s = parse_profile(game, o.profile);
  const Rational alpha = parse_rational_arg(o.alpha, "--alpha");
  require_k(game, o.k);
  const auto report = is_equilibrium(game, s, alpha, o.k, parse_method(o.method), o.limits());
  Json r;
  r["command"] = "verify";
  r["verdict"] = report.verdict ? "equilibrium" : "not-equilibrium";
  r["alpha"] = alpha.str();
  r["k"] = o.k;
  r["method"] = to_string(report.method);
  r["profile"] = profile_json(game, s);
  if (report.witness) {
    if (!is_improving(game, s, *report.witness, alpha, o.k)) {
      throw InvariantViolation("witness failed re-verification");
    }
    r["witness"] = deviation_json(game, *report.witness);
  }
  emit(out, o.json, r);
  return report.verdict ? kExitOk : kExitPropertyFalse;
}

int cmd_dynamics(const Options& o, std::istream& in, std::ostream& out) {
  const auto game = load_game(o.game_path, in).polymatrix();
  const Rational alpha = parse_rational_arg(o.alpha, "--alpha");
  require_k(game, o.k);
  JointStrategy start;
  if (!o.profile.empty()) {
    start = parse_profile(game, o.profile);
  } else {
    // mt19937_64 output is fixed by the standard; the modulo keeps the
    // start profile identical across standard libraries.
    std::mt19937_64 rng(o.seed);
    start.choice.resize(game.num_players(), 0);
    if (o.seed_given) {
      for (std::size_t i = 0; i < game.num_players(); ++i) {
        start.choice[i] = static_cast<StrategyIndex>(rng() % game.num_strategies(static_cast<PlayerId>(i)));
      }
    }
  }
  SelectionPolicy policy = SelectionPolicy::kFirstFound;
  if (o.policy == "best") {
    policy = SelectionPolicy::kBestWelfareGain;
  } else if (o.policy != "first") {
    throw InputError("--policy: expected first or best");
  }
  const auto trace = run_dynamics(game, start, alpha, o.k, o.max_steps, policy, o.limits());
  if (trace.verdict == Termination::kConverged &&
      !is_equilibrium(game, trace.states.back(), alpha, o.k, VerifyMethod::kAuto, o.limits()).verdict) {
    throw InvariantViolation("converged dynamics ended outside equilibrium");
  }
  Json r;
  r["command"] = "dynamics";
  r["verdict"] = to_string(trace.verdict);
  r["alpha"] = alpha.str();
  r["k"] = o.k;
  r["steps"] = trace.steps.size();
  if (trace.first_repeat) r["period"] = trace.period();
  r["start"] = profile_json(game, trace.states.front());
  r["final"] = profile_json(game, trace.states.back());
  r["welfare"] = trace.welfares.back().str();
  r["potential"] = trace.potentials.back().str();
  emit(out, o.json, r);
  switch (trace.verdict) {
    case Termination::kConverged:
      return kExitOk;
    case Termination::kCycled:
      return kExitPropertyFalse;
    case Termination::kBudgetExhausted:
      return kExitBudgetExceeded;
  }
  return kExitInternalError;
}

int cmd_solve_tree(const Options& o, std::istream& in, std::ostream& out) {
  const auto doc = load_game(o.game_path, in);
  if (!doc.is_graph()) throw UnsupportedGame("solve-tree needs a graph-coordination document");
  const auto& spec = doc.graph();
  const auto game = doc.polymatrix();
  std::vector<PlayerId> roots;
  for (const auto& name : o.roots) {
    const auto it = std::find_if(spec.nodes.begin(), spec.nodes.end(),
                                 [&](const auto& node) { return node.name == name; });
    if (it == spec.nodes.end()) throw InputError("--root: unknown node '" + name + "'");
    roots.push_back(static_cast<PlayerId>(it - spec.nodes.begin()));
  }
  const auto s = strong_equilibrium_tree(spec, roots);  // verified inside
  Json r;
  r["command"] = "solve-tree";
  r["verdict"] = "strong-equilibrium";
  r["profile"] = profile_json(game, s);
  r["welfare"] = social_welfare(game, s).str();
  emit(out, o.json, r);
  return kExitOk;
}

int cmd_optimum(const Options& o, std::istream& in, std::ostream& out) {
  const auto game = load_game(o.game_path, in).polymatrix();
  const auto opt = social_optimum(game, o.max_profiles);
  Json r;
  r["command"] = "optimum";
  r["profile"] = profile_json(game, opt.profile);
  r["welfare"] = opt.welfare.str();
  emit(out, o.json, r);
  return kExitOk;
}

int cmd_poa(const Options& o, std::istream& in, std::ostream& out) {
  const auto game = load_game(o.game_path, in).polymatrix();
  const Rational alpha = parse_rational_arg(o.alpha, "--alpha");
  require_k(game, o.k);
  const auto result = empirical_poa(game, alpha, o.k, o.enumeration());
  Json r;
  r["command"] = "poa";
  r["alpha"] = alpha.str();
  r["k"] = o.k;
  r["poa"] = result.str();
  r["equilibria"] = result.equilibria;
  r["optimum"] = result.optimum.welfare.str();
  if (result.worst) {
    if (!is_equilibrium(game, *result.worst, alpha, o.k, VerifyMethod::kAuto, o.limits()).verdict) {
      throw InvariantViolation("worst equilibrium failed re-verification");
    }
    r["worst_welfare"] = social_welfare(game, *result.worst).str();
    r["worst_profile"] = profile_json(game, *result.worst);
  }
  emit(out, o.json, r);
  return kExitOk;
}

int cmd_impose(const Options& o, std::istream& in, std::ostream& out) {
  const auto game = load_game(o.game_path, in).polymatrix();
  const auto s = o.profile.empty() ? social_optimum(game, o.max_profiles).profile
                                   : parse_profile(game, o.profile);
  if (o.k > game.num_players()) {
    throw InputError("--k must lie in [0, " + std::to_string(game.num_players()) + "]");
  }
  const auto result = impose_and_release(game, s, o.k, o.max_steps);
  Json r;
  r["command"] = "impose";
  r["k"] = o.k;
  r["coalition"] = coalition_json(game, result.imposition.coalition);
  r["reference"] = profile_json(game, s);
  r["restricted_equilibrium"] = profile_json(game, result.restricted_equilibrium);
  r["final"] = profile_json(game, result.final_profile);
  r["bound"] = result.bound.str();
  r["restricted_welfare"] = result.restricted_welfare.str();
  r["final_welfare"] = result.final_welfare.str();
  r["final_meets_bound"] = result.final_meets_bound;
  emit(out, o.json, r);
  return result.final_meets_bound ? kExitOk : kExitPropertyFalse;
}

void emit_document(std::ostream& out, bool json, const std::string& command, const std::string& name,
                   const GameDocument& doc, Json extra = Json::object()) {
  if (!json) {
    out << serialize_game(doc);
    return;
  }
  Json r;
  r["command"] = command;
  r["name"] = name;
  for (auto it = extra.begin(); it != extra.end(); ++it) r[it.key()] = it.value();
  r["game"] = Json::parse(serialize_game(doc));
  out << r.dump() << "\n";
}

void want_args(const Options& o, std::size_t count, const char* usage) {
  if (o.args.size() != count) throw InputError(std::string("usage: ") + usage);
}

int cmd_gen(const Options& o, std::istream& in, std::ostream& out) {
  const std::string& name = o.name;
  GameDocument doc;
  Json extra = Json::object();
  if (name == "private-common") {
    want_args(o, 1, "gen private-common GRAPH_FILE");
    doc.game = gen_private_common(load_graph(o.args[0], in));
  } else if (name == "cycle") {
    want_args(o, 1, "gen cycle M");
    const auto inst = gen_cycle_counterexample(parse_count(o.args[0], "M"));
    doc.game = inst.game;
    extra["critical_factor"] = inst.critical_factor.str();
  } else if (name == "golden-ratio") {
    want_args(o, 1, "gen golden-ratio W");
    doc.game = gen_golden_ratio(parse_rational_arg(o.args[0], "W"));
  } else if (name == "spoa-path") {
    want_args(o, 1, "gen spoa-path A");
    doc.game = gen_spoa_path(parse_rational_arg(o.args[0], "A"));
  } else if (name == "poa-lower") {
    want_args(o, 3, "gen poa-lower N K A");
    doc.game = gen_poa_lower(parse_count(o.args[0], "N"), parse_count(o.args[1], "K"),
                             parse_rational_arg(o.args[2], "A"));
  } else if (name == "imposition-tight") {
    want_args(o, 1, "gen imposition-tight K");
    doc.game = gen_imposition_tight(parse_count(o.args[0], "K"));
  } else if (name == "seq-counterexample") {
    want_args(o, 0, "gen seq-counterexample");
    doc.game = gen_seq_counterexample().game;
  } else {
    throw InputError("gen: unknown generator '" + name +
                     "' (private-common, cycle, golden-ratio, spoa-path, poa-lower, "
                     "imposition-tight, seq-counterexample)");
  }
  emit_document(out, o.json, "gen", name, doc, extra);
  return kExitOk;
}

int cmd_reduce(const Options& o, std::istream& in, std::ostream& out) {
  const std::string& name = o.name;
  want_args(o, 1, "reduce NAME GRAPH_FILE");
  const SimpleGraph graph = load_graph(o.args[0], in);
  GameDocument doc;
  Json extra = Json::object();
  if (name == "clique") {
    const auto red = reduce_clique(graph, o.k, parse_rational_arg(o.alpha, "--alpha"));
    doc.game = red.spec;
  } else if (name == "mmm") {
    doc.game = reduce_mmm(graph, o.l);
  } else if (name == "vertex-cover") {
    const auto red = reduce_vertex_cover(graph);
    doc.game = red.spec;
    extra["target"] = red.target.str();
  } else {
    throw InputError("reduce: unknown reduction '" + name + "' (clique, mmm, vertex-cover)");
  }
  emit_document(out, o.json, "reduce", name, doc, extra);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Options o;
  CLI::App app{"Polymatrix coordination games: equilibria, dynamics, inefficiency, imposition.",
               "polycoord"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "One JSON record per result");
  app.add_option("--max-profiles", o.max_profiles,
                 "Budget for exhaustive profile enumeration (env POLYCOORD_MAX_PROFILES)");
  app.add_option("--max-coalitions", o.max_coalitions, "Budget for coalition searches per query");

  auto game_arg = [&](CLI::App* sub) {
    sub->add_option("game", o.game_path, "Game document, '-' for stdin")->required();
  };
  auto* verify = app.add_subcommand("verify", "Decide whether a profile is an (alpha,k)-equilibrium");
  game_arg(verify);
  verify->add_option("--profile", o.profile, "Strategy per player, comma separated")->required();
  verify->add_option("--alpha", o.alpha, "Approximation factor >= 1");
  verify->add_option("--k", o.k, "Coalition size bound");
  verify->add_option("--method", o.method, "auto, brute-force, simple or min-degree");

  auto* dynamics = app.add_subcommand("dynamics", "Run (alpha,k)-improvement dynamics");
  game_arg(dynamics);
  dynamics->add_option("--profile", o.profile, "Start profile (default: all first strategies)");
  dynamics->add_option("--alpha", o.alpha);
  dynamics->add_option("--k", o.k);
  dynamics->add_option("--max-steps", o.max_steps);
  auto* seed = dynamics->add_option("--seed", o.seed, "Draw the start profile from this seed");
  dynamics->add_option("--policy", o.policy, "first or best");

  auto* tree = app.add_subcommand("solve-tree", "Strong equilibrium of a forest");
  game_arg(tree);
  tree->add_option("--root", o.roots, "Root node name, one per component");

  auto* optimum = app.add_subcommand("optimum", "Social optimum by exhaustive search");
  game_arg(optimum);

  auto* poa = app.add_subcommand("poa", "Exact price of anarchy of (alpha,k)-equilibria");
  game_arg(poa);
  poa->add_option("--alpha", o.alpha);
  poa->add_option("--k", o.k);

  auto* impose = app.add_subcommand("impose", "Impose the top-k players of a profile, then release");
  game_arg(impose);
  impose->add_option("--k", o.k)->required();
  impose->add_option("--profile", o.profile, "Reference profile (default: a social optimum)");
  impose->add_option("--max-steps", o.max_steps);

  auto* gen = app.add_subcommand("gen", "Emit a named instance");
  gen->add_option("name", o.name)->required();
  gen->add_option("args", o.args);

  auto* reduce = app.add_subcommand("reduce", "Emit a hardness reduction of a graph file");
  reduce->add_option("name", o.name)->required();
  reduce->add_option("graph", o.args)->required();
  reduce->add_option("--k", o.k, "Clique size");
  reduce->add_option("--alpha", o.alpha, "Clique reduction edge weight");
  reduce->add_option("--l", o.l, "Matching size bound");

  try {
    o.max_profiles = default_max_profiles();
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "polycoord: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InputError& e) {
    err << "polycoord: " << e.what() << "\n";
    return kExitInputError;
  }
  o.seed_given = seed->count() > 0;

  auto fail = [&](const std::string& message, int code) {
    err << "polycoord: " << message << "\n";
    if (o.json) {
      Json r;
      r["error"] = message;
      r["exit_code"] = code;
      out << r.dump() << "\n";
    }
    return code;
  };
  try {
    if (verify->parsed()) return cmd_verify(o, in, out);
    if (dynamics->parsed()) return cmd_dynamics(o, in, out);
    if (tree->parsed()) return cmd_solve_tree(o, in, out);
    if (optimum->parsed()) return cmd_optimum(o, in, out);
    if (poa->parsed()) return cmd_poa(o, in, out);
    if (impose->parsed()) return cmd_impose(o, in, out);
    if (gen->parsed()) return cmd_gen(o, in, out);
    if (reduce->parsed()) return cmd_reduce(o, in, out);
  } catch (const BudgetExceeded& e) {
    return fail(e.what(), kExitBudgetExceeded);
  } catch (const InvariantViolation& e) {
    return fail(std::string("internal error: ") + e.what(), kExitInternalError);
  } catch (const std::invalid_argument& e) {  // InputError, UnsupportedGame, StructureError
    return fail(e.what(), kExitInputError);
  }
  return fail("no subcommand", kExitInputError);
}

}  // namespace polycoord
