#include "cfsem/dsep.hpp"
#include "cfsem/error.hpp"
#include "cfsem/graph_io.hpp"

#include "support/corpus.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace cfsem {
namespace {

using testing::figure1;
using testing::figure2;

Path path(std::vector<std::string> nodes, std::vector<bool> forward) {
  return Path{std::move(nodes), std::move(forward)};
}

Dag collider() { return Dag({"A", "C", "Y"}, {{"A", "C"}, {"Y", "C"}}); }

Dag m_graph() {
  return Dag({"A", "U1", "W", "U2", "Y"}, {{"U1", "A"}, {"U1", "W"}, {"U2", "W"}, {"U2", "Y"}});
}

TEST(IsBlocked, Examples) {
  EXPECT_TRUE(is_blocked(figure1(), path({"A", "L", "Y"}, {false, true}), {"L"}));
  EXPECT_FALSE(is_blocked(figure1(), path({"A", "Y"}, {true}), {"L"}));
  EXPECT_TRUE(is_blocked(collider(), path({"A", "C", "Y"}, {true, false}), {}));
  EXPECT_FALSE(is_blocked(collider(), path({"A", "C", "Y"}, {true, false}), {"C"}));
}

TEST(IsBlocked, DescendantOfColliderOpensIt) {
  Dag g({"A", "C", "Y", "D"}, {{"A", "C"}, {"Y", "C"}, {"C", "D"}});
  EXPECT_FALSE(is_blocked(g, path({"A", "C", "Y"}, {true, false}), {"D"}));
}

TEST(IsBlocked, RejectsInconsistentPaths) {
  EXPECT_THROW(is_blocked(figure1(), path({"A", "L"}, {true}), {}), InputError);
  EXPECT_THROW(is_blocked(figure1(), path({"A", "L", "A"}, {false, true}), {}), InputError);
  EXPECT_THROW(is_blocked(figure2(), path({"A", "Y"}, {true}), {}), InputError);
}

TEST(EnumeratePaths, Examples) {
  auto fig1 = enumerate_paths(figure1(), "A", "Y");
  ASSERT_EQ(fig1.size(), 2u);
  EXPECT_EQ(fig1[0].to_string(), "A <- L -> Y");
  EXPECT_EQ(fig1[1].to_string(), "A -> Y");
  EXPECT_TRUE(enumerate_paths(Dag({"A", "Y"}, {}), "A", "Y").empty());
  auto fig2 = enumerate_paths(figure2(), "A", "Y");
  ASSERT_EQ(fig2.size(), 1u);
  EXPECT_EQ(fig2[0].to_string(), "A <- L -> Y");
  EXPECT_THROW(enumerate_paths(figure1(), "A", "A"), InputError);
}

TEST(EnumeratePaths, CapIsEnforced) {
  EXPECT_THROW(enumerate_paths(figure1(), "A", "Y", 1), CapacityError);
}

TEST(IsDSeparated, Examples) {
  EXPECT_TRUE(is_d_separated(figure2(), {{"A"}, {"Y"}, {"L"}}));
  EXPECT_FALSE(is_d_separated(figure1(), {{"A"}, {"Y"}, {"L"}}));
  EXPECT_TRUE(is_d_separated(collider(), {{"A"}, {"Y"}, {}}));
  EXPECT_FALSE(is_d_separated(collider(), {{"A"}, {"Y"}, {"C"}}));
  EXPECT_TRUE(is_d_separated_oracle(figure2(), {{"A"}, {"Y"}, {"L"}}));
  EXPECT_FALSE(is_d_separated_oracle(figure1(), {{"A"}, {"Y"}, {"L"}}));
}

TEST(IsDSeparated, RejectsInvalidQueries) {
  EXPECT_THROW(is_d_separated(figure1(), {{"A"}, {"A"}, {}}), InputError);
  EXPECT_THROW(is_d_separated(figure1(), {{"A"}, {"Y"}, {"A"}}), InputError);
  EXPECT_THROW(is_d_separated(figure1(), {{}, {"Y"}, {}}), InputError);
  EXPECT_THROW(is_d_separated_oracle(figure1(), {{"A"}, {"Y"}, {"Y"}}), InputError);
}

TEST(FindActivePath, WitnessForDirectEdge) {
  auto w = find_active_path(figure1(), {{"A"}, {"Y"}, {"L"}});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->to_string(), "A -> Y");
  EXPECT_FALSE(find_active_path(figure2(), {{"A"}, {"Y"}, {"L"}}).has_value());
}

TEST(BackdoorPaths, Examples) {
  auto fig1 = backdoor_paths(figure1(), {"A"}, "Y");
  ASSERT_EQ(fig1.size(), 1u);
  EXPECT_EQ(fig1[0].path.to_string(), "A <- L -> Y");
  EXPECT_FALSE(fig1[0].through_other_treatment);
  EXPECT_TRUE(backdoor_paths(Dag({"A", "Y"}, {{"A", "Y"}}), {"A"}, "Y").empty());
  EXPECT_THROW(backdoor_paths(figure1(), {"A"}, "A"), PreconditionError);
}

TEST(BackdoorPaths, FlagsPathsThroughOtherTreatments) {
  Dag g({"A1", "A2", "Y"}, {{"A1", "A2"}, {"A1", "Y"}, {"A2", "Y"}});
  auto paths = backdoor_paths(g, {"A1", "A2"}, "Y");
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].path.to_string(), "A2 <- A1 -> Y");
  EXPECT_TRUE(paths[0].through_other_treatment);
}

TEST(BackdoorCriterion, FigureOne) {
  auto holds = backdoor_criterion(figure1(), {"A"}, "Y", {"L"});
  EXPECT_TRUE(holds.holds());
  auto fails = backdoor_criterion(figure1(), {"A"}, "Y", {});
  EXPECT_TRUE(fails.no_descendants);
  EXPECT_FALSE(fails.blocks_backdoor);
  ASSERT_TRUE(fails.witness.has_value());
  EXPECT_EQ(fails.witness->to_string(), "A <- L -> Y");
}

TEST(BackdoorCriterion, MGraphColliderOpened) {
  const Dag g = m_graph();
  // Oracle: the back-door paths, filtered by hand from the full enumeration.
  bool some_open = false;
  for (const auto& p : enumerate_paths(g, "A", "Y")) {
    if (!p.forward.front() && !is_blocked(g, p, {"W"})) some_open = true;
  }
  ASSERT_TRUE(some_open);
  auto report = backdoor_criterion(g, {"A"}, "Y", {"W"});
  EXPECT_FALSE(report.holds());
  EXPECT_FALSE(report.blocks_backdoor);
  EXPECT_EQ(report.witness->to_string(), "A <- U1 -> W <- U2 -> Y");
  EXPECT_TRUE(backdoor_criterion(g, {"A"}, "Y", {}).holds());
  EXPECT_TRUE(backdoor_criterion(g, {"A"}, "Y", {"W", "U1"}).holds());
}

TEST(BackdoorCriterion, DescendantCondition) {
  Dag g({"L", "A", "M", "Y"}, {{"L", "A"}, {"L", "Y"}, {"A", "M"}, {"M", "Y"}});
  auto report = backdoor_criterion(g, {"A"}, "Y", {"L", "M"});
  EXPECT_FALSE(report.no_descendants);
  EXPECT_EQ(report.descendant_members, (NodeSet{"M"}));
  EXPECT_TRUE(report.blocks_backdoor);
}

TEST(BackdoorCriterion, OverlapIsAPreconditionViolation) {
  EXPECT_THROW(backdoor_criterion(figure1(), {"A"}, "Y", {"A"}), PreconditionError);
  EXPECT_THROW(backdoor_criterion(figure1(), {"A"}, "Y", {"Y"}), PreconditionError);
  EXPECT_THROW(backdoor_criterion(figure1(), {"A"}, "Q", {}), InputError);
}

TEST(AdmissibleSets, Examples) {
  auto fig1 = enumerate_admissible_sets(figure1(), {"A"}, "Y", {"L"});
  ASSERT_EQ(fig1.size(), 1u);
  EXPECT_EQ(fig1[0].nodes, (NodeSet{"L"}));
  EXPECT_TRUE(fig1[0].minimal);

  auto chain = enumerate_admissible_sets(Dag({"A", "Y"}, {{"A", "Y"}}), {"A"}, "Y", {});
  ASSERT_EQ(chain.size(), 1u);
  EXPECT_TRUE(chain[0].nodes.empty());

  EXPECT_TRUE(enumerate_admissible_sets(figure1(), {"A"}, "Y", {}).empty());
}

TEST(AdmissibleSets, MinimalityAndOrder) {
  auto sets = enumerate_admissible_sets(m_graph(), {"A"}, "Y", {"U1", "W", "U2"});
  // Admissible: {}, {U1}, {U2}, {U1,W}, {W,U2}, {U1,U2}, {U1,W,U2}.
  ASSERT_EQ(sets.size(), 7u);
  EXPECT_TRUE(sets[0].nodes.empty());
  EXPECT_TRUE(sets[0].minimal);
  for (std::size_t i = 1; i < sets.size(); ++i) {
    EXPECT_FALSE(sets[i].minimal);
    EXPECT_LE(sets[i - 1].nodes.size(), sets[i].nodes.size());
  }
  EXPECT_THROW(enumerate_admissible_sets(figure1(), {"A"}, "Y", {"A"}), PreconditionError);
}

std::vector<SeparationQuery> small_queries(const Dag& g) {
  std::vector<SeparationQuery> out;
  const auto sets = testing::subsets(g.labels(), 1, 2);
  for (const auto& x : sets) {
    for (const auto& y : sets) {
      if (x >= y) continue;
      auto rest = testing::minus(testing::minus(g.labels(), x), y);
      if (testing::minus(y, x).size() != y.size()) continue;
      for (const auto& z : testing::subsets(rest, 0, 2)) out.push_back({x, y, z});
    }
  }
  return out;
}

TEST(DSepProperties, OracleAgreementOnSmallCorpus) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Dag g = testing::random_dag(seed, 3 + seed % 4, 0.5);
    for (const auto& q : small_queries(g)) {
      ASSERT_EQ(is_d_separated(g, q), is_d_separated_oracle(g, q)) << "seed " << seed;
    }
  }
}

TEST(DSepProperties, BackdoorCriterionImpliesSeparationInSurgedGraph) {
  std::size_t holding = 0;
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    const Dag g = testing::random_dag(seed, 4 + seed % 3, 0.5);
    for (const auto& a_set : testing::subsets(g.labels(), 1, 2)) {
      for (const auto& y : testing::minus(g.labels(), a_set)) {
        auto pool = testing::minus(testing::minus(g.labels(), a_set), {y});
        const Dag surged = remove_outgoing(g, a_set);
        for (const auto& l : testing::subsets(pool, 0, 2)) {
          if (!backdoor_criterion(g, a_set, y, l).holds()) continue;
          ++holding;
          EXPECT_TRUE(is_d_separated(surged, {a_set, {y}, l}));
        }
      }
    }
  }
  EXPECT_GT(holding, 100u);
}

TEST(DSepProperties, AddingAnEdgeNeverSeparates) {
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    const Dag g = testing::random_dag(seed, 5, 0.35);
    const auto order = topological_sort(g);
    // Any edge from an earlier to a later node in topological order keeps acyclicity.
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        NodeId t = g.id(order[i]), h = g.id(order[j]);
        if (g.has_edge(t, h)) continue;
        auto edges = g.edges();
        edges.emplace_back(order[i], order[j]);
        const Dag bigger(g.labels(), edges);
        for (const auto& q : small_queries(g)) {
          if (!is_d_separated(g, q)) EXPECT_FALSE(is_d_separated(bigger, q));
        }
      }
    }
  }
}

TEST(DSepProperties, BackdoorPathsAreEnumeratedPathsStartingBackward) {
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    const Dag g = testing::random_dag(seed, 5, 0.5);
    for (const auto& a : g.labels()) {
      for (const auto& y : g.labels()) {
        if (a == y) continue;
        const auto all = enumerate_paths(g, a, y);
        for (const auto& bp : backdoor_paths(g, {a}, y)) {
          EXPECT_FALSE(bp.path.forward.front());
          EXPECT_NE(std::find(all.begin(), all.end(), bp.path), all.end());
        }
      }
    }
  }
}

}  // namespace
}  // namespace cfsem
