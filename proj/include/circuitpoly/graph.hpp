#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace circuitpoly {

using Vertex = int;

/// Raised for malformed user input (graph files, polynomial text, bad labels).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unordered pair of vertex labels, stored with i < j.
struct Edge {
  Vertex i = 0;
  Vertex j = 0;

  constexpr Edge() = default;
  constexpr Edge(Vertex a, Vertex b) : i(a < b ? a : b), j(a < b ? b : a) {
    if (a == b) throw std::invalid_argument("self-loop edge");
  }

  constexpr bool contains(Vertex v) const { return v == i || v == j; }
  constexpr Vertex other(Vertex v) const { return v == i ? j : i; }

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Edge& e) {
  return os << e.i << e.j;
}

inline std::string to_string(const Edge& e) {
  return std::to_string(e.i) + "-" + std::to_string(e.j);
}

/// Simple undirected graph over positive vertex labels.
///
/// The vertex set is the vertex span of the edge set: a K4 on {1,4,5,6} has
/// four vertices regardless of the label range. Edges are kept sorted and
/// unique, so two graphs with the same edge set compare equal.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::vector<Edge> edges) : edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
      throw std::invalid_argument("duplicate edge");
    for (const Edge& e : edges_)
      if (e.i < 1) throw std::invalid_argument("vertex labels must be positive");
  }

  Graph(std::initializer_list<std::pair<Vertex, Vertex>> pairs)
      : Graph(to_edges(pairs)) {}

  const std::vector<Edge>& edges() const& { return edges_; }
  std::vector<Edge> edges() && { return std::move(edges_); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  bool has_edge(const Edge& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
  }

  /// Sorted vertex span.
  std::vector<Vertex> vertices() const {
    std::vector<Vertex> vs;
    vs.reserve(2 * edges_.size());
    for (const Edge& e : edges_) {
      vs.push_back(e.i);
      vs.push_back(e.j);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  std::size_t vertex_count() const { return vertices().size(); }

  Vertex max_label() const {
    Vertex m = 0;
    for (const Edge& e : edges_) m = std::max(m, e.j);
    return m;
  }

  int degree(Vertex v) const {
    int d = 0;
    for (const Edge& e : edges_) d += e.contains(v) ? 1 : 0;
    return d;
  }

  std::vector<Vertex> neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for (const Edge& e : edges_)
      if (e.contains(v)) out.push_back(e.other(v));
    std::sort(out.begin(), out.end());
    return out;
  }

  Graph without_edge(const Edge& e) const {
    Graph g;
    g.edges_.reserve(edges_.size());
    for (const Edge& f : edges_)
      if (f != e) g.edges_.push_back(f);
    return g;
  }

  Graph with_edge(const Edge& e) const {
    if (has_edge(e)) throw std::invalid_argument("edge already present: " + to_string(e));
    Graph g = *this;
    g.edges_.insert(std::upper_bound(g.edges_.begin(), g.edges_.end(), e), e);
    return g;
  }

  /// Removes v together with its incident edges.
  Graph without_vertex(Vertex v) const {
    Graph g;
    for (const Edge& f : edges_)
      if (!f.contains(v)) g.edges_.push_back(f);
    return g;
  }

  /// Subgraph induced on the given vertex set.
  Graph induced(const std::vector<Vertex>& vs) const {
    auto in = [&](Vertex x) { return std::find(vs.begin(), vs.end(), x) != vs.end(); };
    Graph g;
    for (const Edge& f : edges_)
      if (in(f.i) && in(f.j)) g.edges_.push_back(f);
    return g;
  }

  friend bool operator==(const Graph&, const Graph&) = default;
  friend auto operator<=>(const Graph& a, const Graph& b) { return a.edges_ <=> b.edges_; }

 private:
  static std::vector<Edge> to_edges(std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
    std::vector<Edge> es;
    for (auto [a, b] : pairs) es.emplace_back(a, b);
    return es;
  }

  std::vector<Edge> edges_;
};

inline Graph graph_union(const Graph& a, const Graph& b) {
  std::vector<Edge> es;
  std::set_union(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(),
                 std::back_inserter(es));
  return Graph(std::move(es));
}

inline Graph graph_intersection(const Graph& a, const Graph& b) {
  std::vector<Edge> es;
  std::set_intersection(a.edges().begin(), a.edges().end(), b.edges().begin(),
                        b.edges().end(), std::back_inserter(es));
  return Graph(std::move(es));
}

/// Complete graph on the given labels.
inline Graph complete_graph(const std::vector<Vertex>& vs) {
  std::vector<Edge> es;
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b) es.emplace_back(vs[a], vs[b]);
  return Graph(std::move(es));
}

/// Edge list rendered as "12,13,23" for labels < 10, "1-12,..." otherwise.
inline std::string edge_list_string(const Graph& g) {
  std::string out;
  bool compact = g.max_label() < 10;
  for (const Edge& e : g.edges()) {
    if (!out.empty()) out += ',';
    out += compact ? std::to_string(e.i) + std::to_string(e.j) : to_string(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graph text format
//
//   # optional comments, anywhere after '#'
//   n 6
//   1 2
//   1 3
//   ...
//
// The header declares the label range; every edge must satisfy
// 1 <= i, j <= n and i != j. Reversed pairs are canonicalised.
// ---------------------------------------------------------------------------

struct GraphFile {
  int n = 0;
  Graph graph;
};

inline GraphFile parse_graph_text(std::istream& in) {
  GraphFile out;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  auto fail = [&](const std::string& msg) {
    throw InputError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!have_header) {
      long n = 0;
      if (first != "n" || !(ls >> n)) fail("expected header 'n <count>'");
      if (n < 1) fail("vertex count must be positive");
      std::string rest;
      if (ls >> rest) fail("trailing text after header");
      out.n = static_cast<int>(n);
      have_header = true;
      continue;
    }
    long a = 0, b = 0;
    std::string rest;
    std::istringstream es(line);
    if (!(es >> a >> b) || (es >> rest)) fail("expected edge 'i j'");
    if (a < 1 || b < 1 || a > out.n || b > out.n)
      fail("vertex label out of range 1.." + std::to_string(out.n));
    if (a == b) fail("self-loop " + std::to_string(a) + " " + std::to_string(b));
    Edge e(static_cast<Vertex>(a), static_cast<Vertex>(b));
    if (!seen.insert(e).second)
      fail("duplicate edge " + std::to_string(e.i) + " " + std::to_string(e.j));
    edges.push_back(e);
  }
  if (!have_header) throw InputError("line " + std::to_string(lineno) + ": missing header 'n <count>'");
  out.graph = Graph(std::move(edges));
  return out;
}

inline GraphFile parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return parse_graph_text(in);
}

inline std::string format_graph_text(const Graph& g, int n = 0) {
  std::ostringstream os;
  os << "n " << std::max(n, g.max_label()) << '\n';
  for (const Edge& e : g.edges()) os << e.i << ' ' << e.j << '\n';
  return os.str();
}

}  // namespace circuitpoly
