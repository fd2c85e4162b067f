#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "builders.hpp"
#include "connmod/error.hpp"
#include "connmod/graph.hpp"
#include "oracles.hpp"

using namespace connmod;
using namespace connmod::testing;

namespace {

LoadResult load(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

}  // namespace

TEST(LabelOrder, NumericBeforeText) {
  EXPECT_TRUE(label_less("2", "10"));
  EXPECT_FALSE(label_less("10", "2"));
  EXPECT_TRUE(label_less("99", "a"));
  EXPECT_TRUE(label_less("a", "b"));
  EXPECT_FALSE(label_less("7", "7"));
}

TEST(LoadEdgeList, DropsLoopsAndDuplicates) {
  auto r = load("a b\nb a\na a\na b\n");
  EXPECT_EQ(r.graph.node_count(), 2u);
  EXPECT_EQ(r.graph.edge_count(), 1u);
  EXPECT_EQ(r.self_loops, 1u);
  EXPECT_EQ(r.duplicates, 2u);
}

TEST(LoadEdgeList, EmptyInputGivesEmptyGraph) {
  auto r = load("");
  EXPECT_EQ(r.graph.node_count(), 0u);
  EXPECT_EQ(r.graph.edge_count(), 0u);
}

TEST(LoadEdgeList, CommentsAndBlankLines) {
  auto r = load("# FromNodeId ToNodeId\n\n1\t2\n  \n2 3\n");
  EXPECT_EQ(r.graph.node_count(), 3u);
  EXPECT_EQ(r.graph.edge_count(), 2u);
}

TEST(LoadEdgeList, MalformedLineReportsLineNumber) {
  try {
    load("1 2\n# ok\n3 4 5\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(load("1\n"), ParseError);
}

TEST(LoadEdgeList, FirstSeenIdsAndLabelLookup) {
  auto g = load("x y\ny z\n").graph;
  ASSERT_TRUE(g.find("x"));
  EXPECT_EQ(*g.find("x"), 0u);
  EXPECT_EQ(*g.find("z"), 2u);
  EXPECT_EQ(g.label(1), "y");
  EXPECT_FALSE(g.find("w"));
}

TEST(LoadEdgeList, RoundTripThroughWriter) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const Graph g = gnp(15, 0.3, rng);
    std::ostringstream out;
    write_edge_list(out, g);
    std::istringstream in(out.str());
    const Graph back = load_edge_list(in).graph;
    // isolated nodes are not representable in an edge list
    EXPECT_EQ(back.edge_count(), g.edge_count());
    std::ostringstream again;
    write_edge_list(again, back);
    EXPECT_EQ(again.str(), out.str());
    std::istringstream in2(again.str());
    EXPECT_EQ(load_edge_list(in2).graph, back);
  }
}

TEST(Graph, WriterUsesLabelOrder) {
  auto g = load("10 2\n3 1\n").graph;
  std::ostringstream out;
  write_edge_list(out, g);
  EXPECT_EQ(out.str(), "1\t3\n2\t10\n");
}

TEST(Graph, DegreeSumIsTwiceEdges) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 30; ++t) {
    const Graph g = gnp(25, 0.2, rng);
    std::size_t sum = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) sum += g.degree(v);
    EXPECT_EQ(sum, 2 * g.edge_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
      for (NodeId w : g.neighbors(v)) EXPECT_TRUE(g.has_edge(w, v));
  }
}

TEST(InducedSubgraph, TriangleOfK5) {
  const Graph k5 = complete(5);
  const NodeSet pick{0, 2, 4};
  const Graph sub = induced_subgraph(k5, pick);
  EXPECT_EQ(sub.node_count(), 3u);
  EXPECT_EQ(sub.edge_count(), 3u);
  EXPECT_EQ(sub.label(1), "2");
}

TEST(InducedSubgraph, PathEnds) {
  const Graph p = path(4);
  const NodeSet pick{0, 2};
  const Graph sub = induced_subgraph(p, pick);
  EXPECT_EQ(sub.node_count(), 2u);
  EXPECT_EQ(sub.edge_count(), 0u);
}

TEST(InducedSubgraph, AllNodesIsIdentity) {
  std::mt19937_64 rng(2);
  const Graph g = gnp(12, 0.4, rng);
  EXPECT_EQ(induced_subgraph(g, range(0, 12)), g);
}

TEST(InducedSubgraph, NestedKeepsRootIdentity) {
  const Graph g = complete(8);
  const Graph a = induced_subgraph(g, NodeSet{1, 3, 5, 7});
  const Graph b = induced_subgraph(a, NodeSet{1, 3});
  EXPECT_EQ(b.label(0), "3");
  EXPECT_EQ(b.label(1), "7");
  EXPECT_EQ(b.origin(1), 7u);
  EXPECT_EQ(*a.local_id(5), 2u);
  EXPECT_FALSE(a.local_id(2));
}

TEST(InducedSubgraph, RejectsBadIds) {
  const Graph g = complete(4);
  EXPECT_THROW(induced_subgraph(g, NodeSet{0, 9}), std::invalid_argument);
  EXPECT_THROW(induced_subgraph(g, NodeSet{1, 1}), std::invalid_argument);
}

TEST(Components, Examples) {
  std::vector<Edge> e;
  add_clique(e, 0, 3);
  add_clique(e, 3, 3);
  EXPECT_EQ(connected_components(make_graph(6, e)).size(), 2u);
  EXPECT_EQ(connected_components(complete(4)).size(), 1u);
  auto iso = connected_components(make_graph(5, {}));
  ASSERT_EQ(iso.size(), 5u);
  for (const auto& c : iso) EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(iso.front(), NodeSet{0});
}

TEST(Components, OrderedBySizeThenLabel) {
  // components {0,5}, {1,2,3}, {4}
  const std::vector<Edge> e{{0, 5}, {1, 2}, {2, 3}};
  auto comps = connected_components(make_graph(6, e));
  ASSERT_EQ(comps.size(), 3u);
  EXPECT_EQ(comps[0], (NodeSet{1, 2, 3}));
  EXPECT_EQ(comps[1], (NodeSet{0, 5}));
  EXPECT_EQ(comps[2], (NodeSet{4}));
}

TEST(Components, PartitionIntoConnectedPieces) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const Graph g = gnp(30, 0.06, rng);
    std::vector<int> hits(g.node_count(), 0);
    for (const auto& c : connected_components(g)) {
      for (NodeId v : c) ++hits[v];
      EXPECT_TRUE(is_connected(induced_subgraph(g, c)));
    }
    for (int h : hits) EXPECT_EQ(h, 1);
  }
}

TEST(IsTree, Examples) {
  EXPECT_TRUE(is_tree(path(15)));
  EXPECT_FALSE(is_tree(cycle(4)));
  EXPECT_FALSE(is_tree(make_graph(4, std::vector<Edge>{{0, 1}, {2, 3}})));
  EXPECT_TRUE(is_tree(make_graph(1, {})));
  EXPECT_THROW(is_tree(Graph()), std::invalid_argument);
}

TEST(CoreDecomposition, Examples) {
  for (auto c : core_decomposition(complete(12))) EXPECT_EQ(c, 11u);
  for (auto c : core_decomposition(star(9))) EXPECT_LE(c, 1u);
  std::vector<Edge> e;
  add_clique(e, 0, 5);
  e.emplace_back(4, 5);
  const auto core = core_decomposition(make_graph(6, e));
  EXPECT_EQ(core[5], 1u);
  for (NodeId v = 0; v < 5; ++v) EXPECT_EQ(core[v], 4u);
}

TEST(CoreDecomposition, MatchesDefinitionOnSmallGraphs) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 300; ++t) {
    const NodeId n = 1 + rng() % 10;
    const double p = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    const Graph g = gnp(n, p, rng);
    EXPECT_EQ(core_decomposition(g), brute_core_numbers(g));
  }
}

TEST(Fingerprint, DependsOnNodeSetOnly) {
  const Graph g = complete(6);
  const Graph a = induced_subgraph(g, NodeSet{0, 1, 2});
  const Graph b = induced_subgraph(path(6), NodeSet{0, 1, 2});
  const Graph c = induced_subgraph(g, NodeSet{0, 1, 3});
  EXPECT_EQ(fingerprint(a), fingerprint(b));
  EXPECT_NE(fingerprint(a), fingerprint(c));
}
