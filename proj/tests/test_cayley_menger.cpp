#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "circuitpoly/cayley_menger.hpp"
#include "circuitpoly/poly_format.hpp"
#include "oracles.hpp"

using namespace circuitpoly;

namespace {

std::string read_file(const std::string& name) {
  std::ifstream in(std::string(CIRCUITPOLY_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<VarId, mpq_class> distances(const Realization& r) {
  std::map<VarId, mpq_class> at;
  for (int k = 0; k < kVarCount; ++k) {
    VarId v = VarId::from_index(k);
    at[v] = v.j <= r.size() ? r.squared_distance(v.i, v.j) : mpq_class(0);
  }
  return at;
}

// Bordered Cayley-Menger determinant of four points, from raw numbers.
mpq_class cayley_menger_det(const std::array<Vertex, 4>& vs, const std::map<VarId, mpz_class>& at) {
  std::vector<std::vector<mpq_class>> m(5, std::vector<mpq_class>(5, 1));
  m[0][0] = 0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      m[a + 1][b + 1] = a == b ? mpq_class(0) : mpq_class(at.at(VarId(vs[a], vs[b])));
  return oracle::det(m);
}

}  // namespace

TEST(K4Polynomial, MatchesPublishedDisplay) {
  MultiPoly published = parse_poly_text(read_file("k4_1234.txt"));
  ASSERT_EQ(published.size(), 22u);
  EXPECT_EQ(k4_polynomial(1, 2, 3, 4), published);
}

TEST(K4Polynomial, Shape) {
  MultiPoly p = k4_polynomial(1, 2, 3, 4);
  PolyStats s = stats(p);
  EXPECT_EQ(s.terms, 22u);
  EXPECT_EQ(s.homogeneous_degree, 3);
  ASSERT_EQ(s.degrees.size(), 6u);
  for (const auto& [v, d] : s.degrees) EXPECT_EQ(d, 2) << v.name();
  EXPECT_EQ(p.support(), VarSet::of_graph(complete_graph({1, 2, 3, 4})));
  EXPECT_GT(p.leading_term().coef.sign(), 0);
}

TEST(K4Polynomial, ProportionalToNumericCayleyMengerDeterminant) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> d(-30, 30);
  MultiPoly p = k4_polynomial(2, 3, 5, 7);
  std::optional<mpq_class> ratio;
  for (int trial = 0; trial < 30; ++trial) {
    std::map<VarId, mpz_class> at;
    for (int k = 0; k < kVarCount; ++k) at[VarId::from_index(k)] = d(rng);
    mpz_class value = oracle::eval(p, at);
    mpq_class det = cayley_menger_det({2, 3, 5, 7}, at);
    if (value == 0) {
      EXPECT_EQ(det, 0);
      continue;
    }
    mpq_class q = det / mpq_class(value);
    if (!ratio) ratio = q;
    EXPECT_EQ(q, *ratio);
  }
  ASSERT_TRUE(ratio);
  EXPECT_NE(*ratio, 0);
}

TEST(K4Polynomial, PermutationInvariance) {
  MultiPoly base = k4_polynomial(1, 2, 3, 4);
  std::array<Vertex, 4> vs{1, 2, 3, 4};
  do {
    std::map<Vertex, Vertex> perm{{1, vs[0]}, {2, vs[1]}, {3, vs[2]}, {4, vs[3]}};
    EXPECT_EQ(normalize(relabel(base, perm)), base);
  } while (std::next_permutation(vs.begin(), vs.end()));
  std::map<Vertex, Vertex> shift{{1, 5}, {2, 6}, {3, 7}, {4, 8}};
  EXPECT_EQ(normalize(relabel(base, shift)), k4_polynomial(8, 6, 7, 5));
}

TEST(K4Polynomial, RejectsBadLabels) {
  EXPECT_THROW(k4_polynomial(1, 2, 2, 4), std::invalid_argument);
  EXPECT_THROW(k4_polynomial(Graph{{1, 2}, {2, 3}, {1, 3}}), std::invalid_argument);
  EXPECT_EQ(k4_polynomial(complete_graph({1, 3, 4, 6})), k4_polynomial(6, 4, 3, 1));
}

TEST(StandardGenerators, FourPointsGiveK4) {
  auto gens = standard_generators(4);
  ASSERT_EQ(gens.size(), 1u);
  EXPECT_EQ(gens.front(), k4_polynomial(1, 2, 3, 4));
}

TEST(StandardGenerators, FivePointsContainAllK4s) {
  auto gens = standard_generators(5);
  for (auto vs : std::vector<std::array<Vertex, 4>>{{1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 5}, {1, 3, 4, 5}, {2, 3, 4, 5}})
    EXPECT_NE(std::find(gens.begin(), gens.end(), k4_polynomial(vs[0], vs[1], vs[2], vs[3])), gens.end());
  EXPECT_GT(gens.size(), 5u);
  for (const auto& g : gens) EXPECT_TRUE(vanishes_on_variety(g, 5, 3));
}

TEST(Realization, DeterministicAndBounded) {
  Realization a = sample_realization(6, 42);
  EXPECT_EQ(a, sample_realization(6, 42));
  EXPECT_FALSE(a == sample_realization(6, 43));
  ASSERT_EQ(a.size(), 6);
  for (int seed = 0; seed < 50; ++seed) {
    Realization r = sample_realization(5, static_cast<std::uint64_t>(seed), 10);
    for (const auto& p : r.points)
      for (const mpq_class& c : {p.x, p.y}) {
        EXPECT_LE(c.get_den(), 10);
        EXPECT_LE(abs(c), 10);
      }
  }
  EXPECT_THROW(sample_realization(0, 1), std::invalid_argument);
  EXPECT_THROW(sample_realization(3, 1, 0), std::invalid_argument);
}

TEST(Realization, JsonRoundTrip) {
  Realization r = sample_realization(7, 9);
  EXPECT_EQ(realization_from_json(realization_to_json(r)), r);
  auto j = realization_to_json(r);
  ASSERT_EQ(j.size(), 7u);
  EXPECT_TRUE(j[0][0].is_string());
  EXPECT_THROW(realization_from_json(nlohmann::ordered_json::parse(R"([["1","0","1","1"]])")), InputError);
  EXPECT_THROW(realization_from_json(nlohmann::ordered_json::parse(R"([["1","1"]])")), InputError);
}

TEST(Evaluate, MatchesTermByTermOracle) {
  std::mt19937_64 rng(2);
  const std::vector<VarId> vars{VarId(1, 2), VarId(1, 3), VarId(2, 4), VarId(3, 5), VarId(4, 5)};
  for (int trial = 0; trial < 200; ++trial) {
    MultiPoly p = oracle::random_poly(rng, vars, 8, 3, 20);
    Realization r = sample_realization(5, static_cast<std::uint64_t>(trial), 1 + trial % 50);
    ASSERT_EQ(evaluate(p, r), oracle::eval_q(p, distances(r))) << to_text(p);
  }
  EXPECT_EQ(evaluate(MultiPoly(), sample_realization(2, 1)), 0);
  EXPECT_THROW(evaluate(MultiPoly::variable(VarId(1, 5)), sample_realization(4, 1)), std::invalid_argument);
}

TEST(Evaluate, EvaluationPlanOnLargePolynomial) {
  MultiPoly p = pow(k4_polynomial(1, 2, 3, 4) + MultiPoly::variable(VarId(1, 2)), 4);
  Realization r = sample_realization(4, 5);
  EXPECT_EQ(evaluate(p, r), oracle::eval_q(p, distances(r)));
}

TEST(Vanishing, K4AndItsMultiplesVanish) {
  MultiPoly k4 = k4_polynomial(1, 2, 4, 6);
  EXPECT_TRUE(vanishes_on_variety(k4));
  EXPECT_TRUE(vanishes_on_variety(k4 * MultiPoly::variable(VarId(3, 5)), 10, 7));
  EXPECT_TRUE(vanishes_on_variety(MultiPoly()));
}

TEST(Vanishing, NonMembersComeWithAWitness) {
  for (const MultiPoly& p : {MultiPoly::variable(VarId(1, 2)), MultiPoly::constant(1),
                             k4_polynomial(1, 2, 3, 4) + MultiPoly::variable(VarId(1, 2))}) {
    auto v = vanishes_on_variety(p);
    EXPECT_FALSE(v);
    ASSERT_TRUE(v.witness);
    EXPECT_NE(evaluate(p, *v.witness), 0);
    EXPECT_EQ(v.trials_run, 1);
  }
}

TEST(Vanishing, LamanSupportedPolynomialsDoNotVanish) {
  // Edges of a Laman graph are independent, so nothing nonzero on them vanishes.
  const Graph laman{{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {1, 5}, {4, 5}};
  auto vars = VarSet::of_graph(laman).vars();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    MultiPoly p = oracle::random_poly(rng, vars, 1 + trial % 2, 3, 5);
    if (p.is_zero()) continue;
    EXPECT_FALSE(vanishes_on_variety(p, 20, static_cast<std::uint64_t>(trial))) << to_text(p);
  }
}

TEST(Vanishing, ResultantOfTwoK4sVanishes) {
  MultiPoly w4 = resultant(k4_polynomial(1, 2, 4, 5), k4_polynomial(2, 3, 4, 5), VarId(2, 4));
  EXPECT_EQ(w4.degree_in(VarId(2, 4)), 0);
  EXPECT_TRUE(vanishes_on_variety(w4));
  EXPECT_EQ(w4.support(), VarSet::of_graph(Graph{{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}}));
}
