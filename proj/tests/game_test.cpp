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

#include <gtest/gtest.h>

#include "polycoord/errors.hpp"
#include "polycoord/game.hpp"
#include "polycoord/instances.hpp"
#include "test_support.hpp"

namespace polycoord {
namespace {

using testing::Rng;

JointStrategy P(std::vector<int> c) { return JointStrategy(std::move(c)); }

TEST(RationalTest, CanonicalForm) {
  const Rational r(6, -4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(r.numerator_str(), "-3");
  EXPECT_EQ(r.denominator_str(), "2");
  EXPECT_EQ(Rational(4, 2), Rational(2));
  EXPECT_TRUE(Rational(4, 2).is_integer());
  EXPECT_EQ(Rational::pow2(10), Rational(1024));
}

TEST(RationalTest, Parse) {
  EXPECT_EQ(Rational::parse("8/5"), Rational(8, 5));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_EQ(Rational::parse("10/4").str(), "5/2");
  EXPECT_THROW(Rational::parse("0.5"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1e3"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
  EXPECT_THROW(Rational::parse("3/"), std::invalid_argument);
}

TEST(RationalTest, Ordering) {
  EXPECT_LT(Rational(3, 2), Rational(8, 5));
  EXPECT_GT(Rational(13, 8), Rational(8, 5));
  EXPECT_EQ(Rational(7, 4) * Rational(8), Rational(14));
}

TEST(CoalitionTest, SortsAndRejectsDuplicates) {
  const Coalition c({3, 1, 2});
  EXPECT_EQ(c.members(), (std::vector<PlayerId>{1, 2, 3}));
  EXPECT_TRUE(c.contains(2));
  EXPECT_FALSE(c.contains(0));
  EXPECT_THROW(Coalition({1, 1}), InputError);
  EXPECT_THROW(Coalition({-1}), InputError);
  EXPECT_EQ(Coalition::all(3).size(), 3u);
}

TEST(PayoffTest, ZeroGame) {
  std::vector<PolymatrixGame::Player> players{{"a", {"x", "y"}, {}}, {"b", {"x"}, {}}};
  const PolymatrixGame game(players, {EdgePayoff(0, 1, 2, 1)});
  for (int x = 0; x < 2; ++x) {
    EXPECT_EQ(payoff(game, P({x, 0}), 0), Rational(0));
    EXPECT_EQ(social_welfare(game, P({x, 0})), Rational(0));
    EXPECT_EQ(exact_potential(game, P({x, 0})), Rational(0));
  }
}

TEST(PayoffTest, SpoaPath) {
  const auto game = from_graph_coordination(gen_spoa_path(Rational(2)));
  const auto bad = P({0, 1, 1, 0});   // (a, b, b, c)
  const auto good = P({0, 0, 0, 0});  // (a, a, c, c)
  EXPECT_EQ(payoff(game, bad, 1), Rational(1));
  EXPECT_EQ(payoff(game, bad, 2), Rational(1));
  EXPECT_EQ(social_welfare(game, bad), Rational(2));
  EXPECT_EQ(social_welfare(game, good), Rational(8));
  EXPECT_EQ(exact_potential(game, bad), Rational(1));
}

TEST(PayoffTest, GoldenRatioPendantCounts) {
  // v0 matches v1 on x and its pendant u3 also plays x.
  const auto game = from_graph_coordination(gen_golden_ratio(Rational(8, 5)));
  const auto s = P({0, 0, 1, 0, 0, 0});  // v0:x v1:x v2:z
  EXPECT_EQ(payoff(game, s, 0), Rational(13, 5));
  EXPECT_EQ(payoff(game, s, 1), Rational(8, 5));
  EXPECT_EQ(payoff(game, s, 2), Rational(1));
}

TEST(PayoffTest, ImpositionTightSplit) {
  // k + 1 players on a, k on b.
  const auto game = from_graph_coordination(gen_imposition_tight(2));
  EXPECT_EQ(social_welfare(game, P({0, 0, 0, 1, 1})), Rational(8));
  EXPECT_EQ(social_welfare(game, P({0, 0, 0, 0, 0})), Rational(20));
}

TEST(PayoffTest, Errors) {
  const auto game = from_graph_coordination(gen_spoa_path(Rational(2)));
  EXPECT_THROW(payoff(game, P({0, 0, 0, 0}), 4), InputError);
  EXPECT_THROW(payoff(game, P({0, 0, 0, 0}), -1), InputError);
  EXPECT_THROW(payoff(game, P({0, 0, 0}), 0), InputError);
  EXPECT_THROW(payoff(game, P({1, 0, 0, 0}), 0), InputError);
  EXPECT_THROW(social_welfare(game, P({0, 0, 2, 0})), InputError);
}

TEST(GraphCoordinationTest, SingleEdgeTable) {
  GraphCoordinationSpec spec;
  spec.nodes = {{"u", {"a", "b"}, {}}, {"v", {"a", "b"}, {}}};
  spec.edges = {{0, 1, Rational(5)}};
  const auto game = from_graph_coordination(spec);
  const auto& e = game.edges()[0];
  EXPECT_EQ(e.at(0, 0), Rational(5));
  EXPECT_EQ(e.at(0, 1), Rational(0));
  EXPECT_EQ(e.at(1, 0), Rational(0));
  EXPECT_EQ(e.at(1, 1), Rational(5));
}

TEST(GraphCoordinationTest, GoldenTriangleTables) {
  const auto game = from_graph_coordination(gen_golden_ratio(Rational(8, 5)));
  // Edge v0 {x,z} - v1 {x,y}: shared colour x only.
  const auto& e01 = game.edges()[0];
  EXPECT_EQ(e01.at(0, 0), Rational(8, 5));
  EXPECT_EQ(e01.at(0, 1), Rational(0));
  EXPECT_EQ(e01.at(1, 0), Rational(0));
  EXPECT_EQ(e01.at(1, 1), Rational(0));
  // v1 {x,y} - v2 {y,z}: shared y.
  const auto& e12 = game.edges()[1];
  EXPECT_EQ(e12.at(1, 0), Rational(8, 5));
  EXPECT_EQ(e12.at(0, 0) + e12.at(0, 1) + e12.at(1, 1), Rational(0));
  // v0 {x,z} - v2 {y,z}: shared z.
  const auto& e02 = game.edges()[2];
  EXPECT_EQ(e02.at(1, 1), Rational(8, 5));
  EXPECT_EQ(e02.at(0, 0) + e02.at(0, 1) + e02.at(1, 0), Rational(0));
}

TEST(GraphCoordinationTest, DisjointColoursGiveZeroTable) {
  GraphCoordinationSpec spec;
  spec.nodes = {{"u", {"a"}, {}}, {"v", {"b", "c"}, {}}};
  spec.edges = {{0, 1, Rational(3)}};
  const auto game = from_graph_coordination(spec);
  for (const auto& cell : game.edges()[0].table) EXPECT_EQ(cell, Rational(0));
}

TEST(GraphCoordinationTest, RecogniserRejectsGeneralTables) {
  std::vector<PolymatrixGame::Player> players{{"u", {"a", "b"}, {}}, {"v", {"a", "b"}, {}}};
  const PolymatrixGame off_diagonal(players, {EdgePayoff(0, 1, {{Rational(1), Rational(1)},
                                                                {Rational(0), Rational(1)}})});
  EXPECT_FALSE(as_graph_coordination(off_diagonal).has_value());
  const PolymatrixGame uneven(players, {EdgePayoff(0, 1, {{Rational(1), Rational(0)},
                                                          {Rational(0), Rational(2)}})});
  EXPECT_FALSE(as_graph_coordination(uneven).has_value());
  EXPECT_THROW(color_structure(uneven), UnsupportedGame);
}

TEST(ValidateTest, Reports) {
  const auto good = from_graph_coordination(gen_spoa_path(Rational(2)));
  EXPECT_TRUE(validate(good).empty());

  std::vector<PolymatrixGame::Player> players{{"u", {"a"}, {}}, {"v", {"a"}, {}}};
  const PolymatrixGame negative(players, {EdgePayoff(0, 1, {{Rational(-1)}})});
  const auto neg = validate(negative);
  ASSERT_EQ(neg.size(), 1u);
  EXPECT_NE(neg[0].find("negative payoff"), std::string::npos);

  const PolymatrixGame duplicate(players, {EdgePayoff(0, 1, {{Rational(1)}}),
                                           EdgePayoff(1, 0, {{Rational(1)}})});
  const auto dup = validate(duplicate);
  ASSERT_EQ(dup.size(), 1u);
  EXPECT_NE(dup[0].find("duplicate edge"), std::string::npos);

  const PolymatrixGame self_loop(players, {EdgePayoff(0, 0, {{Rational(1)}})});
  EXPECT_FALSE(validate(self_loop).empty());
  EXPECT_THROW(require_valid(self_loop), InputError);

  const PolymatrixGame mismatch(players, {EdgePayoff(0, 1, 2, 1)});
  EXPECT_FALSE(validate(mismatch).empty());

  GraphCoordinationSpec spec;
  spec.nodes = {{"u", {}, {}}};
  EXPECT_FALSE(validate(spec).empty());
  spec.nodes = {{"u", {"a"}, {}}, {"v", {"a"}, {}}};
  spec.edges = {{0, 1, Rational(-2)}};
  EXPECT_FALSE(validate(spec).empty());
}

// Properties on random games.

TEST(GamePropertyTest, ExactPotentialIdentity) {
  Rng rng(11);
  testing::PolymatrixShape shape;
  shape.max_players = 8;
  for (int trial = 0; trial < 60; ++trial) {
    const auto game = testing::random_polymatrix(rng, shape);
    const auto counts = testing::strategy_counts(game);
    JointStrategy s(std::vector<int>(counts.size()));
    for (std::size_t i = 0; i < counts.size(); ++i) s.choice[i] = testing::uniform(rng, 0, counts[i] - 1);
    for (int i = 0; i < static_cast<int>(counts.size()); ++i) {
      for (int x = 0; x < counts[static_cast<std::size_t>(i)]; ++x) {
        JointStrategy t = s;
        t[i] = x;
        EXPECT_EQ(exact_potential(game, t) - exact_potential(game, s),
                  payoff(game, t, i) - payoff(game, s, i));
      }
    }
  }
}

TEST(GamePropertyTest, WelfareDecompositionAndOracle) {
  Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const auto game = testing::random_polymatrix(rng);
    testing::oracle_profiles(testing::strategy_counts(game), [&](const std::vector<int>& c) {
      const JointStrategy s(c);
      Rational edges;
      for (std::size_t e = 0; e < game.edges().size(); ++e) edges += game.edge_value(e, s);
      const Rational sw = social_welfare(game, s);
      EXPECT_EQ(sw, exact_potential(game, s) + edges);
      EXPECT_EQ(sw, testing::oracle_welfare(game, c));
      std::vector<PlayerId> half;
      for (int i = 0; i < static_cast<int>(c.size()); i += 2) half.push_back(i);
      std::vector<PlayerId> rest;
      for (int i = 1; i < static_cast<int>(c.size()); i += 2) rest.push_back(i);
      EXPECT_EQ(sw, social_welfare_coalition(game, s, Coalition(half)) +
                        social_welfare_coalition(game, s, Coalition(rest)));
      for (int i = 0; i < static_cast<int>(c.size()); ++i) EXPECT_GE(payoff(game, s, i), Rational(0));
    });
  }
}

TEST(GamePropertyTest, GraphRoundTrip) {
  Rng rng(13);
  testing::GraphShape shape;
  shape.preferences = true;
  for (int trial = 0; trial < 100; ++trial) {
    auto spec = testing::random_graph_spec(rng, shape);
    const auto back = as_graph_coordination(from_graph_coordination(spec));
    ASSERT_TRUE(back.has_value());
    // An edge between disjoint colour sets carries no recoverable weight.
    for (auto& e : spec.edges) {
      const auto& cu = spec.nodes[static_cast<std::size_t>(e.u)].colors;
      const auto& cv = spec.nodes[static_cast<std::size_t>(e.v)].colors;
      const bool shared = std::any_of(cu.begin(), cu.end(), [&](const std::string& c) {
        return std::find(cv.begin(), cv.end(), c) != cv.end();
      });
      if (!shared) e.weight = Rational(0);
    }
    EXPECT_EQ(*back, spec);
  }
}

}  // namespace
}  // namespace polycoord
