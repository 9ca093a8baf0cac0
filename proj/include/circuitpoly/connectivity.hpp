#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "circuitpoly/graph.hpp"
#include "circuitpoly/sparsity.hpp"

namespace circuitpoly {

using VertexPair = std::pair<Vertex, Vertex>;

namespace detail {

// Connected components of the vertex span of g after deleting `removed`.
// Components are returned sorted by their smallest vertex.
inline std::vector<std::vector<Vertex>> components_without(const Graph& g,
                                                            const std::vector<Vertex>& removed) {
  std::vector<Vertex> vs = g.vertices();
  auto is_removed = [&](Vertex x) {
    return std::find(removed.begin(), removed.end(), x) != removed.end();
  };
  std::vector<Vertex> alive;
  for (Vertex v : vs)
    if (!is_removed(v)) alive.push_back(v);
  auto pos = [&](Vertex x) {
    return static_cast<int>(std::lower_bound(alive.begin(), alive.end(), x) - alive.begin());
  };
  std::vector<int> comp(alive.size(), -1);
  std::vector<std::vector<int>> adj(alive.size());
  for (const Edge& e : g.edges()) {
    if (is_removed(e.i) || is_removed(e.j)) continue;
    int a = pos(e.i), b = pos(e.j);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::vector<Vertex>> out;
  for (std::size_t s = 0; s < alive.size(); ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{static_cast<int>(s)};
    comp[s] = id;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      out[id].push_back(alive[x]);
      for (int y : adj[x])
        if (comp[y] < 0) {
          comp[y] = id;
          stack.push_back(y);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

}  // namespace detail

inline bool is_connected(const Graph& g) {
  return detail::components_without(g, {}).size() <= 1;
}

enum class Connectivity { Disconnected, OneConnected, TwoConnected, ThreeConnected };

inline const char* to_string(Connectivity c) {
  switch (c) {
    case Connectivity::Disconnected: return "disconnected";
    case Connectivity::OneConnected: return "1-connected";
    case Connectivity::TwoConnected: return "2-connected";
    case Connectivity::ThreeConnected: return "3-connected";
  }
  return "?";
}

namespace detail {

inline bool has_cut_vertex(const Graph& g) {
  for (Vertex v : g.vertices())
    if (components_without(g, {v}).size() > 1) return true;
  return false;
}

inline std::vector<VertexPair> scan_separation_pairs(const Graph& g) {
  std::vector<Vertex> vs = g.vertices();
  std::vector<VertexPair> out;
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (components_without(g, {vs[a], vs[b]}).size() > 1) out.emplace_back(vs[a], vs[b]);
  return out;
}

}  // namespace detail

/// Vertex connectivity class of the vertex span, capped at 3. Graphs on at
/// most three vertices are never reported as 3-connected.
inline Connectivity connectivity(const Graph& g) {
  if (!is_connected(g)) return Connectivity::Disconnected;
  if (detail::has_cut_vertex(g)) return Connectivity::OneConnected;
  if (g.vertex_count() < 4 || !detail::scan_separation_pairs(g).empty())
    return Connectivity::TwoConnected;
  return Connectivity::ThreeConnected;
}

/// All separating vertex pairs of a 2-connected graph, in lexicographic order.
/// Brute force: delete each pair and test the remainder for connectivity.
inline std::vector<VertexPair> separation_pairs(const Graph& g) {
  if (!is_connected(g)) throw std::invalid_argument("separation_pairs: graph is disconnected");
  if (detail::has_cut_vertex(g))
    throw std::invalid_argument("separation_pairs: graph has a cut vertex");
  return detail::scan_separation_pairs(g);
}

/// Inverse 2-sum of a circuit at a separating pair {u,v}.
///
/// The component containing the smallest remaining vertex goes to the first
/// side; everything else to the second. Each side gets the virtual edge uv.
inline std::pair<Graph, Graph> two_split(const Graph& g, VertexPair pair) {
  auto [u, v] = pair;
  if (u > v) std::swap(u, v);
  auto comps = detail::components_without(g, {u, v});
  if (comps.size() < 2)
    throw std::invalid_argument("two_split: {" + std::to_string(u) + "," + std::to_string(v) +
                                "} is not a separation pair");
  if (g.has_edge(Edge(u, v)))
    throw std::invalid_argument("two_split: separation pair is joined by an edge");
  std::vector<Vertex> side1 = comps[0];
  std::vector<Vertex> side2;
  for (std::size_t k = 1; k < comps.size(); ++k)
    side2.insert(side2.end(), comps[k].begin(), comps[k].end());
  side1.push_back(u);
  side1.push_back(v);
  side2.push_back(u);
  side2.push_back(v);
  Graph c1 = g.induced(side1).with_edge(Edge(u, v));
  Graph c2 = g.induced(side2).with_edge(Edge(u, v));
  if (!is_circuit(c1) || !is_circuit(c2))
    throw std::invalid_argument("two_split: input is not a circuit");
  return {std::move(c1), std::move(c2)};
}

/// 2-sum of two graphs sharing exactly the edge e: union minus e.
inline Graph two_sum(const Graph& a, const Graph& b, const Edge& e) {
  Graph common = graph_intersection(a, b);
  if (common.edge_count() != 1 || !common.has_edge(e))
    throw std::invalid_argument("two_sum: graphs must share exactly the edge " + to_string(e));
  return graph_union(a, b).without_edge(e);
}

}  // namespace circuitpoly
