#pragma once

// (2,3)-sparsity: pebble game, Laman graphs, rigidity circuits.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "circuitpoly/graph.hpp"

namespace circuitpoly {

struct SparsityVerdict {
  bool independent = true;
  /// Vertex set spanning more than 2|V'|-3 edges; set only when dependent.
  std::optional<std::vector<Vertex>> witness;
};

namespace detail {

/// Lee-Streinu (2,3)-pebble game on a fixed vertex set.
///
/// Every vertex starts with two pebbles. An edge uv is accepted when four
/// pebbles can be gathered on u and v; one of them then covers the edge,
/// which is oriented away from the vertex that paid for it.
class PebbleGame {
 public:
  explicit PebbleGame(const std::vector<Vertex>& vertices) {
    for (std::size_t k = 0; k < vertices.size(); ++k) index_[vertices[k]] = static_cast<int>(k);
    labels_ = vertices;
    pebbles_.assign(vertices.size(), 2);
    out_.assign(vertices.size(), {});
  }

  /// Tries to insert uv. On rejection, returns the vertices reachable from u
  /// and v: that set already spans 2|V'|-3 accepted edges.
  std::optional<std::vector<Vertex>> insert(const Edge& e) {
    int u = index_.at(e.i);
    int v = index_.at(e.j);
    while (pebbles_[u] + pebbles_[v] < 4) {
      if (pebbles_[u] < 2 && gather(u, v)) continue;
      if (pebbles_[v] < 2 && gather(v, u)) continue;
      return rejection_witness(u, v);
    }
    --pebbles_[u];
    out_[u].push_back(v);
    return std::nullopt;
  }

 private:
  // Finds a free pebble reachable from `from` (never taking it from `keep`
  // or `from` itself) and moves it to `from` by reversing the path.
  bool gather(int from, int keep) {
    std::vector<int> parent(labels_.size(), -1);
    std::vector<char> seen(labels_.size(), 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    seen[keep] = 1;
    int found = -1;
    while (!stack.empty() && found < 0) {
      int x = stack.back();
      stack.pop_back();
      for (int y : out_[x]) {
        if (seen[y]) continue;
        seen[y] = 1;
        parent[y] = x;
        if (pebbles_[y] > 0) {
          found = y;
          break;
        }
        stack.push_back(y);
      }
    }
    if (found < 0) return false;
    --pebbles_[found];
    for (int y = found; y != from; y = parent[y]) {
      int x = parent[y];
      auto& xs = out_[x];
      xs.erase(std::find(xs.begin(), xs.end(), y));
      out_[y].push_back(x);
    }
    ++pebbles_[from];
    return true;
  }

  std::vector<Vertex> rejection_witness(int u, int v) const {
    std::vector<char> seen(labels_.size(), 0);
    std::vector<int> stack{u, v};
    seen[u] = seen[v] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : out_[x])
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    std::vector<Vertex> out;
    for (std::size_t k = 0; k < labels_.size(); ++k)
      if (seen[k]) out.push_back(labels_[k]);
    return out;
  }

  std::unordered_map<Vertex, int> index_;
  std::vector<Vertex> labels_;
  std::vector<int> pebbles_;
  std::vector<std::vector<int>> out_;
};

}  // namespace detail

/// Decides (2,3)-sparsity of the edge set with the pebble game.
inline SparsityVerdict is_sparse(const Graph& g) {
  detail::PebbleGame game(g.vertices());
  for (const Edge& e : g.edges()) {
    if (auto witness = game.insert(e)) return {false, std::move(witness)};
  }
  return {true, std::nullopt};
}

/// Number of edges of g with both endpoints in vs.
inline std::size_t spanned_edge_count(const Graph& g, const std::vector<Vertex>& vs) {
  return g.induced(vs).edge_count();
}

inline bool is_laman(const Graph& g) {
  std::size_t n = g.vertex_count();
  return n >= 2 && g.edge_count() == 2 * n - 3 && is_sparse(g).independent;
}

/// Rigidity circuit: 2n-2 edges and every single-edge deletion is Laman.
inline bool is_circuit(const Graph& g) {
  std::size_t n = g.vertex_count();
  if (n < 4 || g.edge_count() != 2 * n - 2) return false;
  for (const Edge& e : g.edges()) {
    Graph h = g.without_edge(e);
    // Deleting an edge of a circuit never isolates a vertex (min degree 3).
    if (h.vertex_count() != n || !is_sparse(h).independent) return false;
  }
  return true;
}

/// Unique circuit of a Laman-plus-one graph (2|V|-2 edges, dependent).
///
/// Greedy deletion in lexicographic edge order: an edge is dropped whenever
/// the remainder stays dependent. The fixed point is minimally dependent.
inline Graph unique_circuit(const Graph& g) {
  std::size_t n = g.vertex_count();
  if (n < 4 || g.edge_count() != 2 * n - 2)
    throw std::invalid_argument("unique_circuit: expected 2|V|-2 edges, got " +
                                std::to_string(g.edge_count()) + " on " + std::to_string(n) +
                                " vertices");
  if (is_sparse(g).independent)
    throw std::invalid_argument("unique_circuit: graph is independent");
  Graph current = g;
  for (const Edge& e : g.edges()) {
    Graph trial = current.without_edge(e);
    if (!is_sparse(trial).independent) current = std::move(trial);
  }
  return current;
}

}  // namespace circuitpoly
