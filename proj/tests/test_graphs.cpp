#include <gtest/gtest.h>

#include <random>

#include "circuitpoly/connectivity.hpp"
#include "circuitpoly/named_circuits.hpp"
#include "circuitpoly/sparsity.hpp"
#include "oracles.hpp"

using namespace circuitpoly;

namespace {

const Graph kTriangle{{1, 2}, {1, 3}, {2, 3}};
const Graph kK4{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
const Graph kDoubleBanana{{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {1, 5}, {1, 6}, {5, 6}, {4, 5}, {4, 6}};
const Graph kWheel4{{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}};
const Graph kWheel5{{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}, {1, 6}, {2, 6}, {3, 6}, {4, 6}, {5, 6}};
const Graph kDesarguesPlusOne{{1, 2}, {1, 4}, {1, 5}, {2, 3}, {2, 6}, {3, 4}, {3, 6}, {4, 5}, {5, 6}, {1, 6}};

}  // namespace

TEST(Edge, CanonicalOrder) {
  Edge e(5, 2);
  EXPECT_EQ(e.i, 2);
  EXPECT_EQ(e.j, 5);
  EXPECT_THROW(Edge(3, 3), std::invalid_argument);
}

TEST(Graph, RejectsDuplicatesAndBadLabels) {
  EXPECT_THROW(Graph({Edge(1, 2), Edge(2, 1)}), std::invalid_argument);
  EXPECT_THROW(Graph({Edge(0, 2)}), std::invalid_argument);
}

TEST(Graph, VertexSpanAndDegrees) {
  Graph g{{1, 4}, {4, 5}, {5, 6}, {1, 6}};
  EXPECT_EQ(g.vertices(), (std::vector<Vertex>{1, 4, 5, 6}));
  EXPECT_EQ(g.degree(4), 2);
  EXPECT_EQ(g.neighbors(1), (std::vector<Vertex>{4, 6}));
  EXPECT_EQ(g.without_vertex(1).edge_count(), 2u);
}

TEST(GraphText, RoundTrip) {
  auto gf = parse_graph_text("# double banana\nn 6\n1 2\n1 3\n2 3\n4 2\n3 4\n1 5\n1 6\n5 6\n4 5\n4 6\n");
  EXPECT_EQ(gf.n, 6);
  EXPECT_EQ(gf.graph, kDoubleBanana);
  EXPECT_EQ(parse_graph_text(format_graph_text(gf.graph, gf.n)).graph, kDoubleBanana);
}

TEST(GraphText, ErrorsNameTheLine) {
  auto message = [](const std::string& text) {
    try {
      parse_graph_text(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_EQ(message("n 3\n1 2\n2 3\n1 2\n"), "line 4: duplicate edge 1 2");
  EXPECT_EQ(message("n 3\n1 2\n2 1\n"), "line 3: duplicate edge 1 2");
  EXPECT_EQ(message("n 3\n1 4\n"), "line 2: vertex label out of range 1..3");
  EXPECT_EQ(message("n 3\n2 2\n"), "line 2: self-loop 2 2");
  EXPECT_EQ(message("n 3\n1 2 3\n"), "line 2: expected edge 'i j'");
  EXPECT_EQ(message("1 2\n"), "line 1: expected header 'n <count>'");
  EXPECT_EQ(message("# nothing\n"), "line 1: missing header 'n <count>'");
}

TEST(Sparsity, SmallExamples) {
  EXPECT_TRUE(is_sparse(kTriangle).independent);
  auto k4 = is_sparse(kK4);
  EXPECT_FALSE(k4.independent);
  ASSERT_TRUE(k4.witness);
  EXPECT_EQ(*k4.witness, (std::vector<Vertex>{1, 2, 3, 4}));
  EXPECT_FALSE(is_sparse(kDesarguesPlusOne).independent);
}

TEST(Sparsity, WitnessIsOverbraced) {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Graph g = oracle::random_graph(rng, 7, 0.6);
    auto v = is_sparse(g);
    if (v.independent) continue;
    ASSERT_TRUE(v.witness);
    auto k = static_cast<std::size_t>(v.witness->size());
    EXPECT_GT(spanned_edge_count(g, *v.witness), 2 * k - 3) << edge_list_string(g);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Sparsity, PebbleGameMatchesSubsetEnumeration) {
  std::mt19937_64 rng(2024);
  int dependent = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    double density = 0.2 + 0.6 * static_cast<double>(trial % 7) / 6.0;
    Graph g = oracle::random_graph(rng, 7, density);
    bool expected = oracle::sparse(g);
    ASSERT_EQ(is_sparse(g).independent, expected) << edge_list_string(g);
    EXPECT_EQ(is_laman(g), oracle::laman(g)) << edge_list_string(g);
    dependent += !expected;
  }
  EXPECT_GT(dependent, 200);
  EXPECT_LT(dependent, 1300);
}

TEST(Laman, Examples) {
  EXPECT_TRUE(is_laman(kTriangle));
  EXPECT_TRUE(is_laman(kK4.without_edge(Edge(1, 2))));
  EXPECT_FALSE(is_laman(kK4));
}

TEST(Circuit, NamedCircuitsAreCircuits) {
  for (const auto& c : named_circuits()) EXPECT_TRUE(is_circuit(c.graph)) << c.name;
  EXPECT_TRUE(is_circuit(kK4));
  EXPECT_TRUE(is_circuit(kWheel4));
}

TEST(Circuit, LamanPlusOneNonCircuit) {
  // W4 and the K4 on 1235 combined over 12: 2n-2 edges, not a circuit.
  Graph g{{1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 5}, {3, 4}, {3, 5}, {4, 5}};
  EXPECT_EQ(g.edge_count(), 2 * g.vertex_count() - 2);
  EXPECT_FALSE(is_sparse(g).independent);
  EXPECT_FALSE(is_circuit(g));
}

TEST(Circuit, MatchesOracleOnRandomGraphs) {
  std::mt19937_64 rng(11);
  int circuits = 0;
  for (int trial = 0; trial < 600; ++trial) {
    int n = 4 + trial % 3;
    Graph g = oracle::random_graph_with_edges(rng, n, 2 * n - 2);
    bool expected = oracle::circuit(g);
    ASSERT_EQ(is_circuit(g), expected) << edge_list_string(g);
    circuits += expected;
  }
  EXPECT_GT(circuits, 10);
}

TEST(Circuit, EveryEdgeDeletionIsLaman) {
  for (const auto& c : named_circuits())
    for (const Edge& e : c.graph.edges()) EXPECT_TRUE(is_laman(c.graph.without_edge(e))) << c.name << " - " << e;
}

TEST(UniqueCircuit, SpanningCircuitIsItself) {
  EXPECT_EQ(unique_circuit(kWheel5), kWheel5);
  EXPECT_EQ(unique_circuit(kK4), kK4);
}

TEST(UniqueCircuit, NonSpanningCircuit) {
  // K4 on 1234 plus a vertex hanging on two edges.
  Graph g = graph_union(kK4, Graph{{1, 5}, {2, 5}});
  EXPECT_EQ(unique_circuit(g), kK4);
}

TEST(UniqueCircuit, MatchesMinimalDependentSubset) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 3000 && checked < 60; ++trial) {
    int n = 4 + trial % 3;
    Graph g = oracle::random_graph_with_edges(rng, n, 2 * n - 2);
    if (g.vertex_count() != static_cast<std::size_t>(n) || oracle::sparse(g)) continue;
    bool laman_plus_one = std::any_of(g.edges().begin(), g.edges().end(),
                                      [&](const Edge& e) { return oracle::laman(g.without_edge(e)); });
    if (!laman_plus_one) continue;
    auto minimal = oracle::minimal_dependent_subsets(g);
    ASSERT_EQ(minimal.size(), 1u) << edge_list_string(g);
    Graph c = unique_circuit(g);
    EXPECT_EQ(c, minimal.front()) << edge_list_string(g);
    EXPECT_FALSE(oracle::sparse(c));
    for (const Edge& e : c.edges()) EXPECT_TRUE(oracle::sparse(c.without_edge(e)));
    ++checked;
  }
  EXPECT_GE(checked, 60);
}

TEST(UniqueCircuit, RejectsBadInput) {
  EXPECT_THROW(unique_circuit(kTriangle), std::invalid_argument);
  EXPECT_THROW(unique_circuit(kK4.without_edge(Edge(1, 2))), std::invalid_argument);
  EXPECT_THROW(unique_circuit(graph_union(kK4, Graph{{1, 5}})), std::invalid_argument);
}

TEST(Connectivity, Classes) {
  EXPECT_EQ(connectivity(kK4), Connectivity::ThreeConnected);
  EXPECT_EQ(connectivity(kWheel5), Connectivity::ThreeConnected);
  EXPECT_EQ(connectivity(kDoubleBanana), Connectivity::TwoConnected);
  EXPECT_EQ(connectivity(Graph{{1, 2}, {2, 3}}), Connectivity::OneConnected);
  EXPECT_EQ(connectivity(Graph{{1, 2}, {3, 4}}), Connectivity::Disconnected);
}

TEST(SeparationPairs, Examples) {
  EXPECT_TRUE(separation_pairs(kK4).empty());
  auto db = separation_pairs(kDoubleBanana);
  EXPECT_NE(std::find(db.begin(), db.end(), VertexPair{1, 4}), db.end());
  EXPECT_THROW(separation_pairs(Graph{{1, 2}, {2, 3}}), std::invalid_argument);
  EXPECT_THROW(separation_pairs(Graph{{1, 2}, {3, 4}}), std::invalid_argument);
}

TEST(SeparationPairs, MatchBruteForce) {
  for (const Graph& g : {kK4, kWheel4, kWheel5, kDoubleBanana, kDesarguesPlusOne}) {
    auto expected = oracle::separating_pairs(g);
    EXPECT_EQ(separation_pairs(g), expected) << edge_list_string(g);
  }
  EXPECT_TRUE(oracle::separating_pairs(kWheel5).empty());
}

TEST(TwoSplit, DoubleBanana) {
  auto [a, b] = two_split(kDoubleBanana, {1, 4});
  EXPECT_EQ(a, (Graph{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}));
  EXPECT_EQ(b, (Graph{{1, 4}, {1, 5}, {1, 6}, {4, 5}, {4, 6}, {5, 6}}));
  EXPECT_EQ(two_sum(a, b, Edge(1, 4)), kDoubleBanana);
}

TEST(TwoSplit, InverseOfTwoSum) {
  Graph a{{3, 5}, {3, 7}, {3, 8}, {5, 7}, {5, 8}, {7, 8}};
  Graph b{{3, 5}, {3, 1}, {3, 2}, {5, 1}, {5, 2}, {1, 2}};
  Graph g = two_sum(a, b, Edge(3, 5));
  EXPECT_TRUE(is_circuit(g));
  auto [c1, c2] = two_split(g, {3, 5});
  EXPECT_EQ(c1, b);
  EXPECT_EQ(c2, a);
}

TEST(TwoSplit, ChainOfThreeComponents) {
  // K4 1234 +14 K4 1456 +56 K4 5678: separation pairs {1,4} and {5,6}.
  Graph db = kDoubleBanana;
  Graph g = two_sum(db, Graph{{5, 6}, {5, 7}, {5, 8}, {6, 7}, {6, 8}, {7, 8}}, Edge(5, 6));
  ASSERT_TRUE(is_circuit(g));
  auto pairs = separation_pairs(g);
  EXPECT_EQ(pairs, oracle::separating_pairs(g));
  auto [c1, c2] = two_split(g, pairs.front());
  EXPECT_TRUE(is_circuit(c1));
  EXPECT_TRUE(is_circuit(c2));
  EXPECT_EQ(two_sum(c1, c2, Edge(pairs.front().first, pairs.front().second)), g);
}

TEST(TwoSplit, RejectsNonSeparatingPair) {
  EXPECT_THROW(two_split(kDoubleBanana, {1, 2}), std::invalid_argument);
  EXPECT_THROW(two_split(kWheel5, {1, 3}), std::invalid_argument);
}

TEST(TwoSplit, OutputsAreCircuitsOnRandomTwoSums) {
  std::mt19937_64 rng(99);
  const std::vector<Graph> parts{kK4, kWheel4, kWheel5};
  for (int trial = 0; trial < 30; ++trial) {
    const Graph& a = parts[trial % 3];
    const Graph& b = parts[(trial / 3) % 3];
    // Shift b's labels past a's and glue on a random edge of each.
    Edge ea = a.edges()[rng() % a.edge_count()];
    Edge eb = b.edges()[rng() % b.edge_count()];
    std::map<Vertex, Vertex> relabel;
    Vertex next = a.max_label() + 1;
    for (Vertex v : b.vertices()) relabel[v] = next++;
    relabel[eb.i] = ea.i;
    relabel[eb.j] = ea.j;
    std::vector<Edge> es;
    for (const Edge& e : b.edges()) es.emplace_back(relabel[e.i], relabel[e.j]);
    Graph bb(es);
    Graph g = two_sum(a, bb, ea);
    ASSERT_TRUE(is_circuit(g));
    auto [c1, c2] = two_split(g, {ea.i, ea.j});
    EXPECT_TRUE(is_circuit(c1));
    EXPECT_TRUE(is_circuit(c2));
    EXPECT_EQ(two_sum(c1, c2, ea), g);
  }
}
