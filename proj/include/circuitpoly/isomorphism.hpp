#pragma once

// Graph isomorphism by brute-force permutation search (small graphs only).

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "circuitpoly/graph.hpp"

namespace circuitpoly {

using VertexMap = std::map<Vertex, Vertex>;

inline Graph apply_map(const Graph& g, const VertexMap& m) {
  std::vector<Edge> es;
  es.reserve(g.edges().size());
  for (const Edge& e : g.edges()) es.emplace_back(m.at(e.i), m.at(e.j));
  return Graph(std::move(es));
}

/// A bijection from V(g) to V(h) carrying E(g) onto E(h), if one exists.
/// Candidates are restricted to degree-preserving assignments and the
/// search backtracks on the first missing edge.
inline std::optional<VertexMap> find_isomorphism(const Graph& g, const Graph& h) {
  auto vg = g.vertices();
  auto vh = h.vertices();
  if (vg.size() != vh.size() || g.edge_count() != h.edge_count()) return std::nullopt;
  if (vg.size() > 10) throw std::invalid_argument("find_isomorphism: graph too large for brute force");
  std::vector<int> dg, dh;
  for (Vertex v : vg) dg.push_back(g.degree(v));
  for (Vertex v : vh) dh.push_back(h.degree(v));
  auto sg = dg, sh = dh;
  std::sort(sg.begin(), sg.end());
  std::sort(sh.begin(), sh.end());
  if (sg != sh) return std::nullopt;

  std::size_t n = vg.size();
  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  auto extend = [&](auto&& self, std::size_t k) -> bool {
    if (k == n) return true;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || dh[c] != dg[k]) continue;
      bool ok = true;
      for (std::size_t p = 0; p < k && ok; ++p)
        ok = g.has_edge(Edge(vg[p], vg[k])) ==
             h.has_edge(Edge(vh[static_cast<std::size_t>(image[p])], vh[c]));
      if (!ok) continue;
      image[k] = static_cast<int>(c);
      used[c] = 1;
      if (self(self, k + 1)) return true;
      used[c] = 0;
    }
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  VertexMap m;
  for (std::size_t k = 0; k < n; ++k) m[vg[k]] = vh[static_cast<std::size_t>(image[k])];
  return m;
}

inline bool isomorphic(const Graph& g, const Graph& h) { return find_isomorphism(g, h).has_value(); }

}  // namespace circuitpoly
