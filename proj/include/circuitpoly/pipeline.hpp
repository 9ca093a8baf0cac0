#pragma once

// Circuit polynomials along a resultant tree: a resultant per internal node,
// followed by identification of the circuit factor.

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "circuitpoly/cayley_menger.hpp"
#include "circuitpoly/construction.hpp"
#include "circuitpoly/isomorphism.hpp"
#include "circuitpoly/multipoly.hpp"
#include "circuitpoly/named_circuits.hpp"
#include "circuitpoly/poly_format.hpp"
#include "circuitpoly/sparsity.hpp"
#include "circuitpoly/sylvester.hpp"

namespace circuitpoly {

enum class IdentificationPath { IrreducibleByDegree, UniqueSupportFactor, TrialDivision, MembershipFiltered };

inline const char* to_string(IdentificationPath p) {
  switch (p) {
    case IdentificationPath::IrreducibleByDegree: return "irreducible-by-degree";
    case IdentificationPath::UniqueSupportFactor: return "unique-support-factor";
    case IdentificationPath::TrialDivision: return "trial-division";
    case IdentificationPath::MembershipFiltered: return "membership-filtered";
  }
  return "?";
}

class IdentificationError : public std::runtime_error {
 public:
  IdentificationError(const std::string& what, std::vector<std::string> diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

/// Circuit polynomials known so far, keyed by their supporting circuit.
using CircuitLibrary = std::map<Graph, MultiPoly>;

struct IdentifyOptions {
  int trials = 20;
  std::uint64_t seed = 0;
  std::optional<int> predicted_degree;        // of the resultant being identified
  std::optional<int> min_alternative_degree;  // over other known decompositions
};

struct Identification {
  MultiPoly poly;
  IdentificationPath path = IdentificationPath::IrreducibleByDegree;
  std::vector<std::string> notes;  // factors seen along the way
};

/// K4 polynomials on 4-subsets of the support of p whose edges all lie in
/// the support.
inline std::vector<std::pair<Graph, MultiPoly>> k4_divisor_candidates(VarSet support) {
  Graph g = support.graph();
  auto vs = g.vertices();
  std::vector<std::pair<Graph, MultiPoly>> out;
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      for (std::size_t c = b + 1; c < vs.size(); ++c)
        for (std::size_t d = c + 1; d < vs.size(); ++d) {
          Graph k = complete_graph({vs[a], vs[b], vs[c], vs[d]});
          if (VarSet::of_graph(k).subset_of(support))
            out.emplace_back(k, k4_polynomial(vs[a], vs[b], vs[c], vs[d]));
        }
  return out;
}

/// Finds the circuit polynomial of `target` inside p, a nonzero element of
/// the elimination ideal of target.
///
///  1. Divide out the integer content and any monomial factor.
///  2. If nothing but a scalar was removed, support(p) = target, deg p is the
///     predicted resultant degree and no known decomposition of target
///     predicts less, and p vanishes on the variety: accept p.
///  3. Otherwise trial-divide by library and K4 polynomials whose support is
///     inside support(p), collecting factors.
///  4. Keep the factors supported exactly on target that vanish on the
///     variety; exactly one must remain.
inline Identification identify_circuit_factor(const MultiPoly& p, const Graph& target,
                                              const CircuitLibrary& library = {},
                                              const IdentifyOptions& opt = {}) {
  if (p.is_zero()) throw IdentificationError("cannot identify a factor of the zero polynomial", {});
  const VarSet want = VarSet::of_graph(target);
  Identification out;

  MultiPoly q = normalize(p);
  Monomial m = monomial_content(q);
  bool stripped = !m.is_one();
  if (stripped) {
    std::vector<Term> terms = q.terms();
    for (Term& t : terms) t.mono = t.mono / m;
    q = MultiPoly::from_sorted_terms(std::move(terms));
    out.notes.push_back("removed monomial factor of degree " + std::to_string(m.degree()));
  }
  if (q.is_constant())
    throw IdentificationError("no factor supported on " + edge_list_string(target),
                              {"input is a monomial times a constant"});

  if (!stripped && q.support() == want && opt.predicted_degree &&
      q.homogeneous_degree() == opt.predicted_degree &&
      (!opt.min_alternative_degree || *opt.predicted_degree <= *opt.min_alternative_degree)) {
    if (vanishes_on_variety(q, opt.trials, opt.seed)) {
      out.poly = std::move(q);
      out.path = IdentificationPath::IrreducibleByDegree;
      return out;
    }
    out.notes.push_back("resultant with target support does not vanish on sampled realizations");
  }

  // Trial division. Divisors are taken in a fixed order: library entries,
  // then K4 polynomials not already in the library.
  std::vector<std::pair<Graph, const MultiPoly*>> divisors;
  for (const auto& [g, poly] : library)
    if (poly.support().subset_of(q.support()) && !poly.is_constant()) divisors.emplace_back(g, &poly);
  auto k4s = k4_divisor_candidates(q.support());
  for (const auto& [g, poly] : k4s)
    if (!library.count(g)) divisors.emplace_back(g, &poly);

  struct Factor {
    MultiPoly poly;
    bool from_library;
  };
  std::vector<Factor> factors;
  MultiPoly rest = q;
  for (const auto& [g, d] : divisors) {
    while (!rest.is_constant() && d->support().subset_of(rest.support())) {
      auto quotient = exact_divide(rest, *d);
      if (!quotient) break;
      factors.push_back({*d, true});
      out.notes.push_back("divisible by the polynomial of " + edge_list_string(g));
      rest = normalize(*quotient);
    }
  }
  if (!rest.is_constant()) factors.push_back({rest, false});

  std::vector<const Factor*> candidates;
  for (const Factor& f : factors) {
    if (f.poly.support() != want) {
      if (is_sparse(f.poly.support().graph()).independent)
        out.notes.push_back("factor with independent support " + edge_list_string(f.poly.support().graph()));
      continue;
    }
    bool dup = std::any_of(candidates.begin(), candidates.end(),
                           [&](const Factor* c) { return c->poly == f.poly; });
    if (!dup) candidates.push_back(&f);
  }

  std::vector<const Factor*> survivors;
  for (const Factor* c : candidates)
    if (vanishes_on_variety(c->poly, opt.trials, opt.seed)) survivors.push_back(c);

  if (survivors.size() != 1) {
    std::vector<std::string> diag = out.notes;
    diag.push_back("factors found: " + std::to_string(factors.size()));
    for (const Factor& f : factors)
      diag.push_back("  support " + edge_list_string(f.poly.support().graph()) + ", " +
                     std::to_string(f.poly.size()) + " terms" + (f.from_library ? " (known)" : ""));
    diag.push_back("candidates on target support: " + std::to_string(candidates.size()) +
                   ", vanishing: " + std::to_string(survivors.size()));
    throw IdentificationError(
        (survivors.empty() ? "no factor supported on " : "ambiguous factorization for ") +
            edge_list_string(target),
        std::move(diag));
  }
  out.poly = survivors.front()->poly;
  if (survivors.front()->from_library)
    out.path = IdentificationPath::TrialDivision;
  else if (candidates.size() == 1)
    out.path = IdentificationPath::UniqueSupportFactor;
  else
    out.path = IdentificationPath::MembershipFiltered;
  return out;
}

// ---------------------------------------------------------------------------
// Degree bookkeeping
// ---------------------------------------------------------------------------

/// (homogeneous degree, degree in the eliminated variable) of a circuit
/// polynomial.
struct DegreePair {
  int homogeneous = 0;
  int in_var = 0;
  friend auto operator<=>(const DegreePair&, const DegreePair&) = default;
};

/// Every degree ms + nr - rs reachable by a resultant of two polynomials with
/// degree pairs from the list (a pair may be used twice).
inline std::vector<int> achievable_resultant_degrees(const std::vector<DegreePair>& pairs) {
  std::vector<int> out;
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a; b < pairs.size(); ++b)
      out.push_back(predicted_resultant_degree(pairs[a].homogeneous, pairs[a].in_var,
                                               pairs[b].homogeneous, pairs[b].in_var));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// True when no two degree pairs combine to a resultant of degree `target`.
/// With the pairs of all circuit polynomials on at most six vertices and
/// target 18, this shows that K33-plus-one is not a direct resultant.
inline bool impossibility_check_k33(const std::vector<DegreePair>& pairs, int target = 18) {
  auto degrees = achievable_resultant_degrees(pairs);
  return !std::binary_search(degrees.begin(), degrees.end(), target);
}

inline const std::vector<DegreePair>& small_circuit_degree_pairs() {
  static const std::vector<DegreePair> pairs{{3, 2}, {8, 4}, {18, 8}, {20, 8}, {20, 12}};
  return pairs;
}

/// Smallest predicted degree of Res(p_A, p_B, x_e) over pairs of known
/// circuit polynomials (library entries and K4s on the target's vertices)
/// with CRes(A, B, e) = target.
inline std::optional<int> min_known_resultant_degree(const Graph& target, const CircuitLibrary& library) {
  std::vector<std::pair<Graph, const MultiPoly*>> known;
  for (const auto& [g, p] : library) known.emplace_back(g, &p);
  std::vector<MultiPoly> k4_store;
  auto vs = target.vertices();
  std::vector<Graph> k4_graphs;
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      for (std::size_t c = b + 1; c < vs.size(); ++c)
        for (std::size_t d = c + 1; d < vs.size(); ++d) {
          Graph k = complete_graph({vs[a], vs[b], vs[c], vs[d]});
          if (graph_intersection(k, target).edge_count() >= 5 && !library.count(k)) {
            k4_graphs.push_back(k);
            k4_store.push_back(k4_polynomial(k));
          }
        }
  for (std::size_t k = 0; k < k4_graphs.size(); ++k) known.emplace_back(k4_graphs[k], &k4_store[k]);

  std::optional<int> best;
  for (std::size_t a = 0; a < known.size(); ++a)
    for (std::size_t b = a + 1; b < known.size(); ++b) {
      const Graph& ga = known[a].first;
      const Graph& gb = known[b].first;
      Graph common = graph_intersection(ga, gb);
      for (const Edge& e : common.edges()) {
        if (target.has_edge(e) || combinatorial_resultant(ga, gb, e) != target) continue;
        const MultiPoly& pa = *known[a].second;
        const MultiPoly& pb = *known[b].second;
        auto ha = pa.homogeneous_degree(), hb = pb.homogeneous_degree();
        if (!ha || !hb) continue;
        int d = predicted_resultant_degree(*ha, pa.degree_in(VarId(e)), *hb, pb.degree_in(VarId(e)));
        if (!best || d < *best) best = d;
      }
    }
  return best;
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

struct PipelineOptions {
  int trials = 20;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct CircuitPolyRecord {
  Graph circuit;
  MultiPoly poly;  // canonical form
  PolyStats stats;
  IdentificationPath path = IdentificationPath::IrreducibleByDegree;
  NodeKind kind = NodeKind::Leaf;
  std::optional<Edge> elim;
  std::optional<int> predicted_degree;
  std::size_t resultant_terms = 0;
  std::vector<std::string> notes;
  double resultant_seconds = 0;
  double identify_seconds = 0;
};

struct PipelineReport {
  std::vector<CircuitPolyRecord> nodes;  // post-order; the root comes last
  double total_seconds = 0;

  const CircuitPolyRecord& root() const { return nodes.back(); }
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Walks the tree bottom-up. A leaf gets its K4 polynomial; an internal node
/// takes the resultant of its children's circuit polynomials in the
/// eliminated variable and identifies the circuit factor. A circuit that
/// appears more than once is computed once.
inline PipelineReport compute_circuit_polynomial(const ResultantTree& tree, const PipelineOptions& opt = {}) {
  auto start = std::chrono::steady_clock::now();
  PipelineReport report;
  CircuitLibrary library;
  IdentifyOptions idopt;
  idopt.trials = opt.trials;
  idopt.seed = opt.seed;

  auto visit = [&](auto&& self, const ResultantTree& node) -> void {
    if (library.count(node.circuit)) return;
    if (!node.is_leaf()) {
      self(self, *node.left);
      self(self, *node.right);
    }
    CircuitPolyRecord rec;
    rec.circuit = node.circuit;
    rec.kind = node.kind;
    rec.elim = node.elim;
    auto t0 = std::chrono::steady_clock::now();
    MultiPoly raw;
    if (node.is_leaf()) {
      raw = k4_polynomial(node.circuit);
      rec.predicted_degree = 3;
    } else {
      const MultiPoly& pl = library.at(node.left->circuit);
      const MultiPoly& pr = library.at(node.right->circuit);
      VarId x(*node.elim);
      raw = resultant(pl, pr, x, DeterminantOptions{opt.threads});
      rec.predicted_degree = predicted_resultant_degree(pl, pr, x);
    }
    rec.resultant_terms = raw.size();
    rec.resultant_seconds = detail::seconds_since(t0);
    if (raw.is_zero())
      throw IdentificationError("resultant vanished at " + edge_list_string(node.circuit), {});

    auto t1 = std::chrono::steady_clock::now();
    IdentifyOptions o = idopt;
    o.predicted_degree = rec.predicted_degree;
    o.min_alternative_degree = node.is_leaf() ? rec.predicted_degree
                                              : min_known_resultant_degree(node.circuit, library);
    Identification id = identify_circuit_factor(raw, node.circuit, library, o);
    rec.identify_seconds = detail::seconds_since(t1);
    if (id.poly.support() != VarSet::of_graph(node.circuit))
      throw IdentificationError("identified factor is not supported on " + edge_list_string(node.circuit), id.notes);
    rec.poly = std::move(id.poly);
    rec.path = id.path;
    rec.notes = std::move(id.notes);
    rec.stats = stats(rec.poly);
    library.emplace(node.circuit, rec.poly);
    report.nodes.push_back(std::move(rec));
  };
  visit(visit, tree);
  // The root is always last, even if it was reached earlier as a subtree.
  auto it = std::find_if(report.nodes.begin(), report.nodes.end(),
                         [&](const CircuitPolyRecord& r) { return r.circuit == tree.circuit; });
  if (it != report.nodes.end() - 1) std::rotate(it, it + 1, report.nodes.end());
  report.total_seconds = detail::seconds_since(start);
  return report;
}

// ---------------------------------------------------------------------------
// Comparison with published statistics
// ---------------------------------------------------------------------------

struct KnownComparison {
  std::string name;
  VertexMap mapping;  // benchmark labels -> record labels
  std::vector<std::string> mismatches;
  bool passed() const { return mismatches.empty(); }
};

inline std::optional<const NamedCircuit*> match_named_circuit(const Graph& g, VertexMap* mapping = nullptr) {
  for (const auto& c : named_circuits()) {
    if (auto m = find_isomorphism(c.graph, g)) {
      if (mapping) *mapping = std::move(*m);
      return &c;
    }
  }
  return std::nullopt;
}

/// Compares a record against the expectations of the benchmark circuit it
/// is isomorphic to; nullopt when it matches none.
inline std::optional<KnownComparison> verify_against_known(const CircuitPolyRecord& rec) {
  VertexMap map;
  auto named = match_named_circuit(rec.circuit, &map);
  if (!named) return std::nullopt;
  const ExpectedStats& want = (*named)->expected;
  KnownComparison cmp;
  cmp.name = (*named)->name;
  cmp.mapping = map;
  if (rec.stats.terms != want.terms)
    cmp.mismatches.push_back("terms: expected " + std::to_string(want.terms) + ", got " +
                             std::to_string(rec.stats.terms));
  if (rec.stats.homogeneous_degree != want.homogeneous_degree)
    cmp.mismatches.push_back("homogeneous degree: expected " + std::to_string(want.homogeneous_degree) +
                             ", got " +
                             (rec.stats.homogeneous_degree ? std::to_string(*rec.stats.homogeneous_degree)
                                                           : std::string("none")));
  for (const Edge& e : (*named)->graph.edges()) {
    std::optional<int> expected = want.default_var_degree;
    if (auto it = want.var_degree_overrides.find(e); it != want.var_degree_overrides.end()) expected = it->second;
    if (!expected) continue;
    VarId v(map.at(e.i), map.at(e.j));
    auto it = rec.stats.degrees.find(v);
    int got = it == rec.stats.degrees.end() ? 0 : it->second;
    if (got != *expected)
      cmp.mismatches.push_back("degree in " + v.name() + ": expected " + std::to_string(*expected) +
                               ", got " + std::to_string(got));
  }
  return cmp;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json stats_to_json(const PolyStats& s) {
  nlohmann::ordered_json j;
  j["terms"] = s.terms;
  j["homogeneous_degree"] = s.homogeneous_degree ? nlohmann::ordered_json(*s.homogeneous_degree)
                                                 : nlohmann::ordered_json();
  nlohmann::ordered_json degrees = nlohmann::ordered_json::object();
  for (const auto& [v, d] : s.degrees) degrees[v.name()] = d;
  j["degrees"] = std::move(degrees);
  return j;
}

/// Record metadata without the polynomial.
inline nlohmann::ordered_json record_summary_json(const CircuitPolyRecord& r, bool timings) {
  nlohmann::ordered_json j = graph_to_json(r.circuit);
  j["kind"] = to_string(r.kind);
  j["elim"] = r.elim ? nlohmann::ordered_json{r.elim->i, r.elim->j} : nlohmann::ordered_json();
  j["identification"] = to_string(r.path);
  j["predicted_degree"] = r.predicted_degree ? nlohmann::ordered_json(*r.predicted_degree)
                                             : nlohmann::ordered_json();
  j["resultant_terms"] = r.resultant_terms;
  j["stats"] = stats_to_json(r.stats);
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (timings) {
    j["resultant_seconds"] = r.resultant_seconds;
    j["identify_seconds"] = r.identify_seconds;
  }
  return j;
}

struct RecordJsonOptions {
  bool timings = false;
  std::uint64_t seed = 0;
  int trials = 20;
  const KnownComparison* comparison = nullptr;
};

/// Writes the full run as one JSON object. The polynomial is streamed, so
/// multi-million-term results never exist as a JSON DOM.
inline void write_report_json(std::ostream& os, const ResultantTree& tree, const PipelineReport& report,
                              const RecordJsonOptions& opt = {}) {
  const CircuitPolyRecord& root = report.root();
  nlohmann::ordered_json head;
  head["circuit"] = graph_to_json(root.circuit);
  head["seed"] = opt.seed;
  head["trials"] = opt.trials;
  head["identification"] = to_string(root.path);
  head["stats"] = stats_to_json(root.stats);
  head["tree"] = tree_to_json(tree);
  auto nodes = nlohmann::ordered_json::array();
  for (const auto& r : report.nodes) nodes.push_back(record_summary_json(r, opt.timings));
  head["nodes"] = std::move(nodes);
  if (opt.comparison) {
    nlohmann::ordered_json v;
    v["benchmark"] = opt.comparison->name;
    v["passed"] = opt.comparison->passed();
    v["mismatches"] = opt.comparison->mismatches;
    head["verification"] = std::move(v);
  }
  if (opt.timings) head["total_seconds"] = report.total_seconds;
  std::string text = head.dump();
  text.pop_back();  // reopen the object to append the polynomial
  os << text << ",\"polynomial\":";
  write_poly_json(os, root.poly);
  os << "}\n";
}

}  // namespace circuitpoly
