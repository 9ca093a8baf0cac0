#pragma once

// Cayley-Menger generators, K4 circuit polynomials and exact evaluation on
// random rational realizations.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "circuitpoly/graph.hpp"
#include "circuitpoly/multipoly.hpp"
#include "circuitpoly/sylvester.hpp"

namespace circuitpoly {

/// The (n+1) x (n+1) Cayley matrix: a border of 1's, zero diagonal and
/// x_{i,j} at (i, j). Row and column 0 are the border.
inline PolyMatrix cayley_matrix(int n) {
  if (n < 1 || n > kMaxVertex) throw std::out_of_range("cayley_matrix: n outside 1.." + std::to_string(kMaxVertex));
  auto dim = static_cast<std::size_t>(n) + 1;
  PolyMatrix m(dim);
  for (std::size_t k = 1; k < dim; ++k) {
    m.at(0, k) = MultiPoly::constant(1);
    m.at(k, 0) = MultiPoly::constant(1);
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      auto x = MultiPoly::variable(VarId(i, j));
      m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = x;
      m.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = x;
    }
  return m;
}

inline PolyMatrix submatrix(const PolyMatrix& m, const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols) {
  PolyMatrix s(rows.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) s.at(a, b) = m.at(rows[a], cols[b]);
  return s;
}

/// Circuit polynomial of the K4 on {a, b, c, d}: the bordered Cayley minor on
/// those four points, in canonical form.
inline MultiPoly k4_polynomial(Vertex a, Vertex b, Vertex c, Vertex d) {
  std::vector<Vertex> vs{a, b, c, d};
  std::sort(vs.begin(), vs.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
    throw std::invalid_argument("k4_polynomial: labels must be distinct");
  PolyMatrix full = cayley_matrix(vs.back());
  std::vector<std::size_t> idx{0};
  for (Vertex v : vs) {
    if (v < 1) throw std::invalid_argument("k4_polynomial: labels must be positive");
    idx.push_back(static_cast<std::size_t>(v));
  }
  return normalize(determinant(submatrix(full, idx, idx)));
}

inline MultiPoly k4_polynomial(const Graph& k4) {
  auto vs = k4.vertices();
  if (vs.size() != 4 || k4.edge_count() != 6) throw std::invalid_argument("k4_polynomial: graph is not a K4");
  return k4_polynomial(vs[0], vs[1], vs[2], vs[3]);
}

/// All nonzero 5x5 minors of the Cayley matrix on n points, in canonical
/// form, deduplicated and sorted by (support, terms).
inline std::vector<MultiPoly> standard_generators(int n) {
  if (n < 4) throw std::invalid_argument("standard_generators: need n >= 4");
  PolyMatrix full = cayley_matrix(n);
  auto dim = static_cast<std::size_t>(n) + 1;
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> cur;
  auto choose = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == 5) {
      subsets.push_back(cur);
      return;
    }
    for (std::size_t k = start; k < dim; ++k) {
      cur.push_back(k);
      self(self, k + 1);
      cur.pop_back();
    }
  };
  choose(choose, 0);
  std::vector<MultiPoly> out;
  for (const auto& rows : subsets)
    for (const auto& cols : subsets) {
      if (rows > cols) continue;  // the matrix is symmetric
      MultiPoly d = determinant(submatrix(full, rows, cols));
      if (!d.is_zero()) out.push_back(normalize(d));
    }
  std::sort(out.begin(), out.end(), [](const MultiPoly& a, const MultiPoly& b) {
    if (a.support().bits() != b.support().bits()) return a.support().bits() < b.support().bits();
    return std::lexicographical_compare(
        a.terms().begin(), a.terms().end(), b.terms().begin(), b.terms().end(),
        [](const Term& s, const Term& t) {
          if (s.mono != t.mono) return s.mono > t.mono;
          return s.coef < t.coef;
        });
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Realizations
// ---------------------------------------------------------------------------

struct RationalPoint {
  mpq_class x;
  mpq_class y;
};

/// Points 1..n in the plane with exact rational coordinates.
struct Realization {
  std::vector<RationalPoint> points;  // points[k] is vertex k+1

  int size() const { return static_cast<int>(points.size()); }

  mpq_class squared_distance(Vertex i, Vertex j) const {
    const auto& p = points.at(static_cast<std::size_t>(i - 1));
    const auto& q = points.at(static_cast<std::size_t>(j - 1));
    mpq_class dx = p.x - q.x, dy = p.y - q.y;
    return dx * dx + dy * dy;
  }

  friend bool operator==(const Realization& a, const Realization& b) {
    if (a.points.size() != b.points.size()) return false;
    for (std::size_t k = 0; k < a.points.size(); ++k)
      if (a.points[k].x != b.points[k].x || a.points[k].y != b.points[k].y) return false;
    return true;
  }
};

/// [[num_x, den_x, num_y, den_y], ...] with decimal-string entries.
inline nlohmann::ordered_json realization_to_json(const Realization& r) {
  auto j = nlohmann::ordered_json::array();
  for (const auto& p : r.points)
    j.push_back({p.x.get_num().get_str(), p.x.get_den().get_str(), p.y.get_num().get_str(),
                 p.y.get_den().get_str()});
  return j;
}

inline Realization realization_from_json(const nlohmann::ordered_json& j) {
  auto num = [](const nlohmann::ordered_json& v) {
    return mpz_class(v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>()));
  };
  Realization r;
  try {
    for (const auto& p : j) {
      if (p.size() != 4) throw InputError("realization point must have four entries");
      mpz_class dx = num(p[1]), dy = num(p[3]);
      if (dx == 0 || dy == 0) throw InputError("realization denominator is zero");
      mpq_class x(num(p[0]), dx), y(num(p[2]), dy);
      x.canonicalize();
      y.canonicalize();
      r.points.push_back({x, y});
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("realization JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("realization JSON: ") + e.what());
  }
  return r;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Uniform draw in [lo, hi]; modulo reduction keeps the stream identical
// across standard libraries.
inline std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

}  // namespace detail

/// n distinct points (X_k / q, Y_k / q) with |X_k|, |Y_k| <= bound and a common
/// denominator 1 <= q <= bound. Deterministic per seed.
inline Realization sample_realization(int n, std::uint64_t seed, std::int64_t bound = 1000) {
  if (n < 1) throw std::invalid_argument("sample_realization: n must be positive");
  if (bound < 1) throw std::invalid_argument("sample_realization: bound must be positive");
  std::mt19937_64 rng(detail::splitmix64(seed));
  std::int64_t q = detail::draw(rng, 1, bound);
  std::set<std::pair<std::int64_t, std::int64_t>> used;
  Realization r;
  while (r.size() < n) {
    std::int64_t x = detail::draw(rng, -bound, bound);
    std::int64_t y = detail::draw(rng, -bound, bound);
    if (!used.insert({x, y}).second) continue;
    mpq_class px(static_cast<long>(x), static_cast<unsigned long>(q));
    mpq_class py(static_cast<long>(y), static_cast<unsigned long>(q));
    px.canonicalize();
    py.canonicalize();
    r.points.push_back({px, py});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Exact evaluation
// ---------------------------------------------------------------------------

/// Precomputed nested Horner scheme for evaluating one polynomial many
/// times at integer points.
///
/// Terms are sorted by exponent vector (support variables in index order,
/// then the homogenising exponent top_degree - deg). Consecutive terms that
/// share a prefix share the Horner steps for it, and evaluation walks the
/// sorted terms once with one accumulator per level.
class EvaluationPlan {
 public:
  explicit EvaluationPlan(const MultiPoly& p) : vars_(p.support().vars()) {
    levels_ = vars_.size() + 1;
    top_degree_ = p.total_degree();
    std::vector<std::uint32_t> order(p.size());
    std::vector<std::uint8_t> raw(p.size() * levels_);
    for (std::size_t t = 0; t < p.size(); ++t) {
      const Term& term = p.terms()[t];
      for (std::size_t k = 0; k < vars_.size(); ++k)
        raw[t * levels_ + k] = static_cast<std::uint8_t>(term.mono.exponent(vars_[k]));
      raw[t * levels_ + vars_.size()] = static_cast<std::uint8_t>(top_degree_ - term.mono.degree());
      order[t] = static_cast<std::uint32_t>(t);
    }
    auto row = [&](std::uint32_t t) { return raw.data() + t * levels_; };
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return std::lexicographical_compare(row(b), row(b) + levels_, row(a), row(a) + levels_);
    });
    exps_.resize(raw.size());
    first_diff_.resize(p.size());
    coefs_.reserve(p.size());
    max_exp_.assign(levels_, 0);
    for (std::size_t r = 0; r < order.size(); ++r) {
      const std::uint8_t* e = row(order[r]);
      std::copy(e, e + levels_, exps_.begin() + static_cast<std::ptrdiff_t>(r * levels_));
      std::size_t d = 0;
      if (r > 0) {
        const std::uint8_t* prev = row(order[r - 1]);
        while (d < levels_ && prev[d] == e[d]) ++d;
      }
      first_diff_[r] = static_cast<std::uint8_t>(d);
      coefs_.push_back(&p.terms()[order[r]].coef);
      for (std::size_t k = 0; k < levels_; ++k) max_exp_[k] = std::max<int>(max_exp_[k], e[k]);
    }
  }

  const std::vector<VarId>& vars() const { return vars_; }
  int top_degree() const { return top_degree_; }

  /// Value of the homogenised polynomial at values[k] for vars()[k] and h
  /// for the homogenising variable.
  mpz_class evaluate(const std::vector<mpz_class>& values, const mpz_class& h) const {
    if (coefs_.empty()) return 0;
    std::vector<std::vector<mpz_class>> powers(levels_);
    for (std::size_t k = 0; k < levels_; ++k) {
      const mpz_class& v = k < vars_.size() ? values[k] : h;
      powers[k].resize(static_cast<std::size_t>(max_exp_[k]) + 1);
      powers[k][0] = 1;
      for (int e = 1; e <= max_exp_[k]; ++e) powers[k][e] = powers[k][e - 1] * v;
    }
    // acc[k] is the Horner sum over the open group at level k; last[k] the
    // exponent of its most recent child; open[k] whether it has one yet.
    std::vector<mpz_class> acc(levels_ + 1);
    std::vector<int> last(levels_, 0);
    std::vector<char> open(levels_, 0);
    auto fold = [&](std::size_t k, int e) {  // adds acc[k+1] as the child with exponent e
      if (open[k]) {
        acc[k] *= powers[k][static_cast<std::size_t>(last[k] - e)];
        acc[k] += acc[k + 1];
      } else {
        acc[k] = acc[k + 1];
        open[k] = 1;
      }
      last[k] = e;
    };
    auto close = [&](std::size_t k) {  // finishes level k into acc[k]
      if (last[k]) acc[k] *= powers[k][static_cast<std::size_t>(last[k])];
      open[k] = 0;
    };
    const std::uint8_t* prev = nullptr;
    for (std::size_t r = 0; r < coefs_.size(); ++r) {
      const std::uint8_t* e = exps_.data() + r * levels_;
      if (prev) {
        // Levels deeper than the first difference end with the previous row.
        std::size_t d = first_diff_[r];
        for (std::size_t k = levels_; k-- > d + 1;) {
          close(k);
          fold(k - 1, prev[k - 1]);
        }
      }
      const Integer& c = *coefs_[r];
      if (c.is_small())
        acc[levels_] = static_cast<long>(c.small_value());
      else
        acc[levels_] = c.big_value();
      fold(levels_ - 1, e[levels_ - 1]);
      prev = e;
    }
    for (std::size_t k = levels_; k-- > 1;) {
      close(k);
      fold(k - 1, prev[k - 1]);
    }
    close(0);
    return acc[0];
  }

 private:
  std::vector<VarId> vars_;
  std::size_t levels_ = 0;
  int top_degree_ = 0;
  std::vector<std::uint8_t> exps_;
  std::vector<std::uint8_t> first_diff_;
  std::vector<const Integer*> coefs_;
  std::vector<int> max_exp_;
};

namespace detail {

// Integer coordinates L*x for the common denominator L of all coordinates.
inline mpz_class common_denominator(const Realization& r) {
  mpz_class L = 1;
  for (const auto& pt : r.points) {
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), pt.x.get_den_mpz_t());
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), pt.y.get_den_mpz_t());
  }
  return L;
}

// Scaling all coordinates by L makes the squared distances integers
// D = L^2 d, and p(d) = p^h(D, L^2) / L^(2 deg p).
inline mpz_class evaluate_scaled(const EvaluationPlan& plan, const Realization& r, const mpz_class& L) {
  std::vector<mpz_class> values;
  values.reserve(plan.vars().size());
  for (VarId v : plan.vars()) {
    mpq_class d = r.squared_distance(v.i, v.j) * L * L;
    values.push_back(d.get_num());
  }
  return plan.evaluate(values, L * L);
}

}  // namespace detail

/// Exact value of p at the squared distances of a realization.
inline mpq_class evaluate(const MultiPoly& p, const Realization& r) {
  if (p.is_zero()) return 0;
  if (p.max_vertex() > r.size()) throw std::invalid_argument("evaluate: realization has too few points");
  EvaluationPlan plan(p);
  mpz_class L = detail::common_denominator(r);
  mpz_class num = detail::evaluate_scaled(plan, r, L);
  mpz_class den;
  mpz_class L2 = L * L;
  mpz_pow_ui(den.get_mpz_t(), L2.get_mpz_t(), static_cast<unsigned long>(p.total_degree()));
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

struct VanishingResult {
  bool vanishes = false;
  int trials_run = 0;
  std::optional<Realization> witness;  // first realization with p != 0
  explicit operator bool() const { return vanishes; }
};

inline std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return detail::splitmix64(seed ^ (0x5851f42d4c957f2dull * static_cast<std::uint64_t>(trial + 1)));
}

/// Whether p is zero at `trials` random rational realizations. False comes
/// with a witness; true is evidence of membership in the Cayley-Menger ideal.
inline VanishingResult vanishes_on_variety(const MultiPoly& p, int trials = 20, std::uint64_t seed = 0,
                                           std::int64_t bound = 1000) {
  if (trials < 1) throw std::invalid_argument("vanishes_on_variety: trials must be positive");
  VanishingResult res;
  int n = std::max<int>(1, p.max_vertex());
  EvaluationPlan plan(p);
  for (int t = 0; t < trials; ++t) {
    Realization r = sample_realization(n, trial_seed(seed, t), bound);
    ++res.trials_run;
    if (!p.is_zero() && detail::evaluate_scaled(plan, r, detail::common_denominator(r)) != 0) {
      res.witness = std::move(r);
      return res;
    }
  }
  res.vanishes = true;
  return res;
}

}  // namespace circuitpoly
