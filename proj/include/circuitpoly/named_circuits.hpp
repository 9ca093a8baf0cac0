#pragma once

// Benchmark circuits with their published polynomial statistics.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circuitpoly/graph.hpp"

namespace circuitpoly {

struct ExpectedStats {
  std::size_t terms = 0;
  int homogeneous_degree = 0;
  std::optional<int> default_var_degree;  // degree in every variable not listed below
  std::map<Edge, int> var_degree_overrides;
};

struct NamedCircuit {
  std::string name;
  std::string description;
  Graph graph;
  ExpectedStats expected;
  bool computable = true;  // false: no direct resultant tree reaches it
};

inline const std::vector<NamedCircuit>& named_circuits() {
  static const std::vector<NamedCircuit> table = [] {
    std::vector<NamedCircuit> t;
    t.push_back({"k4", "complete graph on 1234",
                 Graph{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}},
                 {22, 3, 2, {}}});
    t.push_back({"wheel4", "wheel on rim 1234 with centre 5",
                 Graph{{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}},
                 {843, 8, 4, {}}});
    t.push_back({"double-banana", "K4 on 1234 and K4 on 1456 glued along 14",
                 Graph{{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {1, 5}, {1, 6}, {5, 6}, {4, 5}, {4, 6}},
                 {1752, 8, 4, {}}});
    t.push_back({"wheel5", "wheel on rim 12345 with centre 6",
                 Graph{{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5},
                       {1, 6}, {2, 6}, {3, 6}, {4, 6}, {5, 6}},
                 {273123, 20, 8, {}}});
    t.push_back({"desargues-plus-one", "Desargues graph plus the edge 16",
                 Graph{{1, 2}, {1, 4}, {1, 5}, {2, 3}, {2, 6}, {3, 4}, {3, 6}, {4, 5}, {5, 6}, {1, 6}},
                 {658175, 20, 8, {{Edge(1, 6), 12}}}});
    t.push_back({"k33-plus-one", "K33 on 145|236 plus the edge 45",
                 Graph{{1, 2}, {1, 3}, {1, 6}, {2, 4}, {3, 4}, {4, 6},
                       {2, 5}, {3, 5}, {5, 6}, {4, 5}},
                 {1018050, 18, 8, {}}, false});
    t.push_back({"banana-k4-16", "double banana 2-summed with K4 on 1567 along 16",
                 Graph{{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {1, 5}, {5, 6}, {4, 5}, {4, 6},
                       {1, 7}, {5, 7}, {6, 7}},
                 {1053933, 20, std::nullopt, {}}});
    t.push_back({"banana-k4-56", "double banana 2-summed with K4 on 4567 along 56",
                 Graph{{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {1, 5}, {1, 6}, {4, 5}, {4, 6},
                       {4, 7}, {5, 7}, {6, 7}},
                 {2579050, 20, std::nullopt, {}}});
    return t;
  }();
  return table;
}

inline const NamedCircuit* find_named_circuit(std::string_view name) {
  for (const auto& c : named_circuits())
    if (c.name == name) return &c;
  return nullptr;
}

inline std::vector<std::string> named_circuit_names() {
  std::vector<std::string> out;
  for (const auto& c : named_circuits()) out.push_back(c.name);
  return out;
}

}  // namespace circuitpoly
