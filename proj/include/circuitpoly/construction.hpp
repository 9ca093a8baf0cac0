#pragma once

// Combinatorial resultants and resultant trees over rigidity circuits.

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "circuitpoly/connectivity.hpp"
#include "circuitpoly/graph.hpp"
#include "circuitpoly/sparsity.hpp"

namespace circuitpoly {

/// Union of the two graphs minus the common edge e.
inline Graph combinatorial_resultant(const Graph& g1, const Graph& g2, const Edge& e) {
  if (!g1.has_edge(e) || !g2.has_edge(e))
    throw std::invalid_argument("combinatorial_resultant: " + to_string(e) +
                                " is not a common edge");
  if (g1 == g2) throw std::invalid_argument("combinatorial_resultant: graphs are identical");
  return graph_union(g1, g2).without_edge(e);
}

struct CircuitValidity {
  bool intersection_laman = false;  // common subgraph is Laman
  bool result_is_circuit = false;
  explicit operator bool() const { return result_is_circuit; }
};

/// Whether CRes(g1, g2, e) of two circuits is again a circuit. A Laman
/// common subgraph is necessary (it gives the 2n-2 edge count) but not
/// sufficient, so the result is checked directly.
inline CircuitValidity is_circuit_valid(const Graph& g1, const Graph& g2, const Edge& e) {
  CircuitValidity v;
  v.intersection_laman = is_laman(graph_intersection(g1, g2));
  v.result_is_circuit = is_circuit(combinatorial_resultant(g1, g2, e));
  return v;
}

inline bool is_k4(const Graph& g) {
  return g.edge_count() == 6 && g.vertex_count() == 4;
}

struct InverseResultant {
  Graph a;  // inverse Henneberg II at a degree-3 vertex
  Graph b;  // unique circuit of c - b + e
  Edge elim;
  Vertex removed_a = 0;
  Vertex removed_b = 0;
};

/// Splits a 3-connected circuit on at least five vertices as CRes(A, B, e).
///
/// Degree-3 vertices are tried in ascending order. For a vertex a with
/// neighbours N(a), the candidate non-edges inside N(a) are tried
/// lexicographically; A = c - a + e must be a circuit and some degree-3
/// vertex b outside N(a) must exist. B is the unique circuit of c - b + e.
inline InverseResultant inverse_combinatorial_resultant(const Graph& c) {
  std::vector<Vertex> vs = c.vertices();
  if (vs.size() < 5)
    throw std::invalid_argument("inverse_combinatorial_resultant: need at least 5 vertices");
  if (!is_circuit(c)) throw std::invalid_argument("inverse_combinatorial_resultant: not a circuit");
  if (connectivity(c) != Connectivity::ThreeConnected)
    throw std::invalid_argument("inverse_combinatorial_resultant: circuit is not 3-connected");

  std::vector<Vertex> degree3;
  for (Vertex v : vs)
    if (c.degree(v) == 3) degree3.push_back(v);

  for (Vertex a : degree3) {
    std::vector<Vertex> nbrs = c.neighbors(a);
    std::optional<Vertex> partner;
    for (Vertex b : degree3)
      if (b != a && std::find(nbrs.begin(), nbrs.end(), b) == nbrs.end()) {
        partner = b;
        break;
      }
    if (!partner) continue;
    for (std::size_t x = 0; x < nbrs.size(); ++x) {
      for (std::size_t y = x + 1; y < nbrs.size(); ++y) {
        Edge e(nbrs[x], nbrs[y]);
        if (c.has_edge(e)) continue;
        Graph a_graph = c.without_vertex(a).with_edge(e);
        if (!is_circuit(a_graph)) continue;
        Graph d = c.without_vertex(*partner).with_edge(e);
        Graph b_graph = unique_circuit(d);
        if (!is_circuit(b_graph) || !b_graph.has_edge(e) ||
            combinatorial_resultant(a_graph, b_graph, e) != c)
          throw std::logic_error("inverse_combinatorial_resultant: construction failed for " +
                                 edge_list_string(c));
        return {std::move(a_graph), std::move(b_graph), e, a, *partner};
      }
    }
  }
  throw std::logic_error("inverse_combinatorial_resultant: no admissible vertex pair in " +
                         edge_list_string(c));
}

enum class NodeKind { Leaf, TwoSum, Henneberg };

inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Leaf: return "leaf";
    case NodeKind::TwoSum: return "two-sum";
    case NodeKind::Henneberg: return "inverse-henneberg";
  }
  return "?";
}

/// Node of a combinatorial resultant tree. Leaves are K4 circuits; every
/// internal node is CRes(left, right, elim).
struct ResultantTree {
  Graph circuit;
  std::optional<Edge> elim;
  NodeKind kind = NodeKind::Leaf;
  std::unique_ptr<ResultantTree> left;
  std::unique_ptr<ResultantTree> right;

  bool is_leaf() const { return !left; }

  std::size_t depth() const {
    return is_leaf() ? 0 : 1 + std::max(left->depth(), right->depth());
  }
  std::size_t leaf_count() const {
    return is_leaf() ? 1 : left->leaf_count() + right->leaf_count();
  }
  std::size_t node_count() const {
    return is_leaf() ? 1 : 1 + left->node_count() + right->node_count();
  }
};

/// Builds a resultant tree for a circuit: K4 is a leaf, a 2-connected circuit
/// is 2-split at its lexicographically first separation pair, a 3-connected
/// one is split by inverse_combinatorial_resultant.
inline std::unique_ptr<ResultantTree> build_resultant_tree(const Graph& c) {
  if (!is_circuit(c))
    throw std::invalid_argument("build_resultant_tree: not a circuit: " + edge_list_string(c));
  auto node = std::make_unique<ResultantTree>();
  node->circuit = c;
  if (is_k4(c)) return node;
  auto pairs = detail::scan_separation_pairs(c);
  if (!pairs.empty()) {
    auto [c1, c2] = two_split(c, pairs.front());
    node->kind = NodeKind::TwoSum;
    node->elim = Edge(pairs.front().first, pairs.front().second);
    node->left = build_resultant_tree(c1);
    node->right = build_resultant_tree(c2);
  } else {
    InverseResultant split = inverse_combinatorial_resultant(c);
    node->kind = NodeKind::Henneberg;
    node->elim = split.elim;
    node->left = build_resultant_tree(split.a);
    node->right = build_resultant_tree(split.b);
  }
  return node;
}

/// Problems found by validate_tree; empty means valid.
inline std::vector<std::string> validate_tree(const ResultantTree& root) {
  std::vector<std::string> problems;
  std::size_t n = root.circuit.vertex_count();
  auto visit = [&](auto&& self, const ResultantTree& node, std::size_t level) -> void {
    std::string where = "node " + edge_list_string(node.circuit);
    if (!is_circuit(node.circuit)) problems.push_back(where + ": not a circuit");
    if (node.circuit.vertex_count() + level > n)
      problems.push_back(where + ": too many vertices for level " + std::to_string(level));
    if (node.is_leaf()) {
      if (!is_k4(node.circuit)) problems.push_back(where + ": leaf is not K4");
      return;
    }
    if (!node.elim || !node.right) {
      problems.push_back(where + ": internal node is incomplete");
      return;
    }
    const Graph& l = node.left->circuit;
    const Graph& r = node.right->circuit;
    if (!l.has_edge(*node.elim) || !r.has_edge(*node.elim) ||
        combinatorial_resultant(l, r, *node.elim) != node.circuit)
      problems.push_back(where + ": combinatorial resultant identity fails");
    if (!is_laman(graph_intersection(l, r)))
      problems.push_back(where + ": children's common subgraph is not Laman");
    self(self, *node.left, level + 1);
    self(self, *node.right, level + 1);
  };
  visit(visit, root, 0);
  return problems;
}

// ---------------------------------------------------------------------------
// JSON
//
//   {"vertices":[1,2,3,4,5,6],
//    "edges":[[1,2],[1,3],...],
//    "kind":"two-sum",
//    "elim":[1,4],                  // null at leaves
//    "children":[{...},{...}]}      // [] at leaves
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json graph_to_json(const Graph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = g.vertices();
  auto edges = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.i, e.j});
  j["edges"] = std::move(edges);
  return j;
}

inline Graph graph_from_json(const nlohmann::ordered_json& j) {
  std::vector<Edge> es;
  for (const auto& e : j.at("edges")) es.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return Graph(std::move(es));
}

inline nlohmann::ordered_json tree_to_json(const ResultantTree& t) {
  nlohmann::ordered_json j = graph_to_json(t.circuit);
  j["kind"] = to_string(t.kind);
  j["elim"] = t.elim ? nlohmann::ordered_json{t.elim->i, t.elim->j} : nlohmann::ordered_json();
  auto children = nlohmann::ordered_json::array();
  if (!t.is_leaf()) {
    children.push_back(tree_to_json(*t.left));
    children.push_back(tree_to_json(*t.right));
  }
  j["children"] = std::move(children);
  return j;
}

inline std::unique_ptr<ResultantTree> tree_from_json(const nlohmann::ordered_json& j) {
  auto t = std::make_unique<ResultantTree>();
  t->circuit = graph_from_json(j);
  const auto& children = j.at("children");
  if (!j.at("elim").is_null())
    t->elim = Edge(j["elim"].at(0).get<int>(), j["elim"].at(1).get<int>());
  std::string kind = j.value("kind", "leaf");
  t->kind = kind == "two-sum" ? NodeKind::TwoSum
            : kind == "inverse-henneberg" ? NodeKind::Henneberg
                                          : NodeKind::Leaf;
  if (children.size() == 2) {
    t->left = tree_from_json(children[0]);
    t->right = tree_from_json(children[1]);
  } else if (!children.empty()) {
    throw InputError("resultant tree node must have zero or two children");
  }
  return t;
}

}  // namespace circuitpoly
