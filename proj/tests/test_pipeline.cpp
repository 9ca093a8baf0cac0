#include <gtest/gtest.h>

#include <sstream>

#include "circuitpoly/circuitpoly.hpp"

using namespace circuitpoly;

namespace {

const Graph kWheel4{{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}};
const Graph kDoubleBanana{{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {1, 5}, {1, 6}, {5, 6}, {4, 5}, {4, 6}};

MultiPoly var(Vertex i, Vertex j) { return MultiPoly::variable(VarId(i, j)); }

const MultiPoly& wheel4_poly() {
  static const MultiPoly p = normalize(resultant(k4_polynomial(1, 2, 4, 5), k4_polynomial(2, 3, 4, 5), VarId(2, 4)));
  return p;
}

PipelineReport run(const Graph& g, const PipelineOptions& opt = {}) {
  auto tree = build_resultant_tree(g);
  return compute_circuit_polynomial(*tree, opt);
}

}  // namespace

TEST(Identify, DoubleBananaIsIrreducibleByDegree) {
  MultiPoly res = resultant(k4_polynomial(1, 2, 3, 4), k4_polynomial(1, 4, 5, 6), VarId(1, 4));
  IdentifyOptions opt;
  opt.predicted_degree = predicted_resultant_degree(3, 2, 3, 2);
  opt.min_alternative_degree = min_known_resultant_degree(kDoubleBanana, {});
  EXPECT_EQ(opt.min_alternative_degree, 8);
  auto id = identify_circuit_factor(res, kDoubleBanana, {}, opt);
  EXPECT_EQ(id.path, IdentificationPath::IrreducibleByDegree);
  EXPECT_EQ(id.poly, normalize(res));
  EXPECT_EQ(id.poly.size(), 1752u);
  EXPECT_EQ(id.poly.homogeneous_degree(), 8);
}

TEST(Identify, LargerAlternativeDegreeDisablesShortcut) {
  // p has the predicted degree, but a decomposition of lower degree is known.
  IdentifyOptions opt;
  opt.predicted_degree = 9;
  opt.min_alternative_degree = 8;
  MultiPoly p = wheel4_poly() * (var(1, 2) + var(2, 3) + var(1, 5));
  auto id = identify_circuit_factor(p, kWheel4, {{kWheel4, wheel4_poly()}}, opt);
  EXPECT_EQ(id.path, IdentificationPath::TrialDivision);
  EXPECT_EQ(id.poly, wheel4_poly());
  opt.min_alternative_degree = 9;
  EXPECT_EQ(identify_circuit_factor(p, kWheel4, {}, opt).path, IdentificationPath::IrreducibleByDegree);
}

TEST(Identify, MonomialFactorIsStripped) {
  MultiPoly p = wheel4_poly() * var(1, 2) * var(1, 2) * var(3, 5);
  auto id = identify_circuit_factor(p, kWheel4);
  EXPECT_EQ(id.path, IdentificationPath::UniqueSupportFactor);
  EXPECT_EQ(id.poly, wheel4_poly());
  ASSERT_FALSE(id.notes.empty());
  EXPECT_NE(id.notes.front().find("monomial"), std::string::npos);
}

TEST(Identify, ProductOfTwoK4sHasNoCircuitFactor) {
  MultiPoly p = k4_polynomial(1, 2, 3, 4) * k4_polynomial(1, 4, 5, 6);
  try {
    identify_circuit_factor(p, kDoubleBanana);
    FAIL() << "expected IdentificationError";
  } catch (const IdentificationError& e) {
    EXPECT_NE(std::string(e.what()).find("no factor"), std::string::npos);
    EXPECT_FALSE(e.diagnostics().empty());
  }
}

TEST(Identify, TrialDivisionByLibraryEntry) {
  CircuitLibrary lib{{kWheel4, wheel4_poly()}};
  MultiPoly p = wheel4_poly() * (var(1, 2) + var(2, 3));
  auto id = identify_circuit_factor(p, kWheel4, lib);
  EXPECT_EQ(id.path, IdentificationPath::TrialDivision);
  EXPECT_EQ(id.poly, wheel4_poly());
}

TEST(Identify, MembershipFiltersOutNonVanishingFactor) {
  MultiPoly bad;
  for (const Edge& e : kWheel4.edges()) bad += var(e.i, e.j);
  CircuitLibrary lib{{kWheel4, bad}};
  auto id = identify_circuit_factor(wheel4_poly() * bad, kWheel4, lib);
  EXPECT_EQ(id.path, IdentificationPath::MembershipFiltered);
  EXPECT_EQ(id.poly, wheel4_poly());
}

TEST(Identify, AmbiguousFactorisationThrows) {
  MultiPoly extra = var(1, 2) + var(2, 3);
  CircuitLibrary lib{{kWheel4, wheel4_poly() * extra}};
  MultiPoly p = wheel4_poly() * wheel4_poly() * extra;
  try {
    identify_circuit_factor(p, kWheel4, lib);
    FAIL() << "expected IdentificationError";
  } catch (const IdentificationError& e) {
    EXPECT_NE(std::string(e.what()).find("ambiguous"), std::string::npos);
  }
}

TEST(Identify, RejectsZeroAndMonomials) {
  EXPECT_THROW(identify_circuit_factor(MultiPoly(), kWheel4), IdentificationError);
  EXPECT_THROW(identify_circuit_factor(var(1, 2) * var(3, 4), kWheel4), IdentificationError);
}

TEST(Identify, K4DivisorCandidates) {
  EXPECT_EQ(k4_divisor_candidates(VarSet::of_graph(kWheel4)).size(), 0u);
  auto db = k4_divisor_candidates(VarSet::of_graph(kDoubleBanana.with_edge(Edge(1, 4))));
  ASSERT_EQ(db.size(), 2u);
  EXPECT_EQ(db[0].first, complete_graph({1, 2, 3, 4}));
  EXPECT_EQ(db[1].first, complete_graph({1, 4, 5, 6}));
}

TEST(Degrees, ImpossibilityCheck) {
  const auto& pairs = small_circuit_degree_pairs();
  EXPECT_TRUE(impossibility_check_k33(pairs, 18));
  EXPECT_FALSE(impossibility_check_k33(pairs, 8));
  EXPECT_FALSE(impossibility_check_k33(pairs, 20));
  auto degrees = achievable_resultant_degrees(pairs);
  EXPECT_TRUE(std::binary_search(degrees.begin(), degrees.end(), 48));
  EXPECT_FALSE(std::binary_search(degrees.begin(), degrees.end(), 18));
}

TEST(Degrees, MinKnownResultantDegree) {
  EXPECT_EQ(min_known_resultant_degree(kWheel4, {}), 8);
  const Graph wheel5{{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}, {1, 6}, {2, 6}, {3, 6}, {4, 6}, {5, 6}};
  EXPECT_FALSE(min_known_resultant_degree(wheel5, {}));
  const Graph w4_on_2345{{2, 3}, {3, 4}, {4, 5}, {2, 5}, {2, 6}, {3, 6}, {4, 6}, {5, 6}};
  EXPECT_EQ(min_known_resultant_degree(wheel5, {{w4_on_2345, relabel(wheel4_poly(), {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}})}}),
            20);
}

TEST(Pipeline, SmallCircuitsMatchPublishedStatistics) {
  for (const char* name : {"k4", "wheel4", "double-banana"}) {
    const NamedCircuit* nc = find_named_circuit(name);
    ASSERT_NE(nc, nullptr);
    auto report = run(nc->graph);
    const auto& root = report.root();
    EXPECT_EQ(root.circuit, nc->graph);
    auto cmp = verify_against_known(root);
    ASSERT_TRUE(cmp) << name;
    EXPECT_EQ(cmp->name, name);
    EXPECT_TRUE(cmp->passed()) << name << ": " << (cmp->passed() ? "" : cmp->mismatches.front());
  }
}

TEST(Pipeline, WheelFiveRecordsSatisfyInvariants) {
  auto report = run(find_named_circuit("wheel5")->graph);
  ASSERT_GE(report.nodes.size(), 3u);
  for (const auto& rec : report.nodes) {
    EXPECT_EQ(rec.poly.support(), VarSet::of_graph(rec.circuit)) << edge_list_string(rec.circuit);
    EXPECT_TRUE(rec.poly.homogeneous_degree());
    EXPECT_EQ(rec.stats, stats(rec.poly));
    EXPECT_EQ(rec.poly, normalize(rec.poly));
    EXPECT_TRUE(vanishes_on_variety(rec.poly, 3, 99));
    if (rec.kind != NodeKind::Leaf) EXPECT_EQ(rec.stats.homogeneous_degree, rec.predicted_degree);
  }
  auto cmp = verify_against_known(report.root());
  ASSERT_TRUE(cmp);
  EXPECT_TRUE(cmp->passed());
  EXPECT_EQ(report.root().stats.terms, 273123u);
}

TEST(Pipeline, DeterministicAcrossRunsAndThreads) {
  const Graph& g = find_named_circuit("double-banana")->graph;
  auto a = run(g);
  auto b = run(g, PipelineOptions{20, 0, 4});
  EXPECT_EQ(a.root().poly, b.root().poly);
  EXPECT_EQ(a.root().poly, run(g, PipelineOptions{5, 123, 1}).root().poly);
}

TEST(Pipeline, RootComesLast) {
  auto report = run(find_named_circuit("wheel5")->graph);
  EXPECT_EQ(report.root().circuit, find_named_circuit("wheel5")->graph);
  for (std::size_t k = 0; k + 1 < report.nodes.size(); ++k)
    EXPECT_LT(report.nodes[k].circuit.vertex_count(), report.root().circuit.vertex_count());
}

TEST(Verification, UnknownCircuitHasNoComparison) {
  CircuitPolyRecord rec;
  rec.circuit = complete_graph({1, 2, 3, 4}).with_edge(Edge(1, 5)).with_edge(Edge(2, 5));
  EXPECT_FALSE(verify_against_known(rec));
}

TEST(Verification, MismatchesAreReported) {
  auto report = run(kWheel4);
  CircuitPolyRecord rec = report.root();
  rec.stats.terms += 1;
  auto cmp = verify_against_known(rec);
  ASSERT_TRUE(cmp);
  EXPECT_FALSE(cmp->passed());
}

TEST(ReportJson, KeysAndStreamedPolynomial) {
  auto tree = build_resultant_tree(kDoubleBanana);
  auto report = compute_circuit_polynomial(*tree);
  std::ostringstream os;
  write_report_json(os, *tree, report);
  auto j = nlohmann::ordered_json::parse(os.str());
  for (const char* key : {"circuit", "seed", "trials", "identification", "stats", "tree", "nodes", "polynomial"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_FALSE(j.contains("total_seconds"));
  EXPECT_EQ(j["stats"]["terms"], 1752);
  EXPECT_EQ(poly_from_json(j["polynomial"]), report.root().poly);
  EXPECT_EQ(j.begin().key(), "circuit");
  EXPECT_EQ((--j.end()).key(), "polynomial");
}
