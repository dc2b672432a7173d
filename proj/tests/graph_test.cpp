#include "cfsem/error.hpp"
#include "cfsem/graph.hpp"
#include "cfsem/graph_io.hpp"

#include "support/corpus.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace cfsem {
namespace {

using testing::figure1;
using testing::figure2;

Dag chain(std::vector<std::string> labels) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < labels.size(); ++i) edges.emplace_back(labels[i], labels[i + 1]);
  return Dag(labels, edges);
}

TEST(TopologicalSort, Chain) {
  EXPECT_EQ(topological_sort(chain({"L", "A", "Y"})), (std::vector<std::string>{"L", "A", "Y"}));
}

TEST(TopologicalSort, FigureOne) {
  EXPECT_EQ(topological_sort(figure1()), (std::vector<std::string>{"L", "A", "Y"}));
}

TEST(TopologicalSort, EdgelessKeepsDeclarationOrder) {
  EXPECT_EQ(topological_sort(Dag({"X", "Y"}, {})), (std::vector<std::string>{"X", "Y"}));
}

TEST(TopologicalSort, TiesBrokenByDeclarationOrder) {
  Dag g({"Y", "B", "A"}, {{"A", "Y"}, {"B", "Y"}});
  EXPECT_EQ(topological_sort(g), (std::vector<std::string>{"B", "A", "Y"}));
}

TEST(Dag, RejectsCycleWithSequence) {
  try {
    Dag({"X", "Y", "Z"}, {{"X", "Y"}, {"Y", "Z"}, {"Z", "X"}});
    FAIL() << "cycle accepted";
  } catch (const CycleError& e) {
    EXPECT_EQ(e.cycle(), (std::vector<std::string>{"X", "Y", "Z"}));
  }
}

TEST(Dag, RejectsInvalidStructure) {
  EXPECT_THROW(Dag({"X", "X"}, {}), InputError);
  EXPECT_THROW(Dag({""}, {}), InputError);
  EXPECT_THROW(Dag({"X"}, {{"X", "X"}}), InputError);
  EXPECT_THROW(Dag({"X", "Y"}, {{"X", "Y"}, {"X", "Y"}}), InputError);
  EXPECT_THROW(Dag({"X"}, {{"X", "Q"}}), InputError);
}

TEST(Parents, FigureOneAndTwo) {
  EXPECT_EQ(parents(figure1(), "Y"), (NodeSet{"L", "A"}));
  EXPECT_TRUE(parents(figure1(), "L").empty());
  EXPECT_EQ(parents(figure2(), "Y"), (NodeSet{"L"}));
  EXPECT_THROW(parents(figure1(), "Q"), InputError);
}

TEST(Relatives, DescendantsAndAncestors) {
  EXPECT_EQ(descendants(figure1(), {"A"}), (NodeSet{"Y"}));
  EXPECT_TRUE(descendants(figure1(), {"Y"}).empty());
  EXPECT_EQ(ancestors(chain({"X", "Z", "W"}), {"W"}), (NodeSet{"X", "Z"}));
  EXPECT_THROW(ancestors(figure1(), {"nope"}), InputError);
}

TEST(Relatives, NodeIsNotItsOwnRelative) {
  const Dag g = figure1();
  for (const auto& v : g.labels()) {
    auto d = descendants(g, {v});
    auto a = ancestors(g, {v});
    EXPECT_EQ(std::count(d.begin(), d.end(), v), 0);
    EXPECT_EQ(std::count(a.begin(), a.end(), v), 0);
  }
}

TEST(RemoveOutgoing, FigureOneBecomesFigureTwo) {
  EXPECT_EQ(remove_outgoing(figure1(), {"A"}), figure2());
  EXPECT_EQ(remove_outgoing(figure1(), {"A"}).edges(), figure2().edges());
}

TEST(RemoveOutgoing, EmptySetIsIdentity) {
  EXPECT_EQ(remove_outgoing(figure1(), {}), figure1());
}

TEST(RemoveOutgoing, SingleEdge) {
  Dag g = remove_outgoing(chain({"A", "Y"}), {"A"});
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.labels(), (std::vector<std::string>{"A", "Y"}));
}

// Randomised invariants over a corpus of seeded DAGs.
TEST(GraphProperties, RandomCorpus) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Dag g = testing::random_dag(seed, 2 + seed % 6, 0.45);
    const auto order = topological_sort(g);
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    auto labels = g.labels();
    std::sort(labels.begin(), labels.end());
    ASSERT_EQ(sorted, labels);
    for (const auto& [t, h] : g.edges()) {
      auto pos = [&](const std::string& v) { return std::find(order.begin(), order.end(), v); };
      EXPECT_LT(pos(t), pos(h));
    }

    for (const auto& s : testing::subsets(g.labels(), 0, 2)) {
      const Dag once = remove_outgoing(g, s);
      EXPECT_EQ(remove_outgoing(once, s), once);
      EXPECT_TRUE(descendants(once, s).empty() || s.empty());
    }

    for (const auto& v : g.labels()) {
      for (const auto& w : g.labels()) {
        auto anc = ancestors(g, {w});
        auto desc = descendants(g, {v});
        bool v_anc_w = std::find(anc.begin(), anc.end(), v) != anc.end();
        bool w_desc_v = std::find(desc.begin(), desc.end(), w) != desc.end();
        EXPECT_EQ(v_anc_w, w_desc_v) << v << " " << w;
      }
    }
  }
}

TEST(GraphText, ParsesCommentsAndChains) {
  Dag g = parse_graph_text("# header\nX\nY  # trailing\nZ\n\nX -> Y -> Z\n");
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{"X", "Y"}, {"Y", "Z"}}));
  EXPECT_EQ(parse_graph_text(format_graph_text(g)), g);
}

TEST(GraphText, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_graph_text(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("X\nY\nX -> Q\n"), 3u);
  EXPECT_EQ(line_of("X\nX\n"), 2u);
  EXPECT_EQ(line_of("X\nY\nX -> Y\nX -> Y\n"), 4u);
  EXPECT_EQ(line_of("X Y\n"), 1u);
  EXPECT_EQ(line_of("X\n -> X\n"), 2u);
  EXPECT_THROW(parse_graph_text("X\nY\nX -> Y\nY -> X\n"), CycleError);
}

}  // namespace
}  // namespace cfsem
