#pragma once

// Sylvester matrices, determinants and resultants of MultiPoly.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

#include "circuitpoly/multipoly.hpp"

namespace circuitpoly {

/// Square matrix with MultiPoly entries, row-major.
struct PolyMatrix {
  std::size_t dim = 0;
  std::vector<MultiPoly> entries;

  PolyMatrix() = default;
  explicit PolyMatrix(std::size_t n) : dim(n), entries(n * n) {}

  MultiPoly& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
  const MultiPoly& at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
};

struct SylvesterMatrix {
  int r = 0;  // deg_x f
  int s = 0;  // deg_x g
  PolyMatrix matrix;
};

/// Sylvester matrix of f and g with respect to x: s shifted rows of f's
/// coefficients a_r..a_0 followed by r shifted rows of g's b_s..b_0.
inline SylvesterMatrix sylvester(const MultiPoly& f, const MultiPoly& g, VarId x) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("sylvester: zero polynomial");
  SylvesterMatrix sm;
  sm.r = f.degree_in(x);
  sm.s = g.degree_in(x);
  if (sm.r == 0 && sm.s == 0)
    throw std::invalid_argument("sylvester: neither polynomial involves " + x.name());
  auto a = coeffs_in(f, x);
  auto b = coeffs_in(g, x);
  std::size_t r = static_cast<std::size_t>(sm.r), s = static_cast<std::size_t>(sm.s);
  sm.matrix = PolyMatrix(r + s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k <= r; ++k) sm.matrix.at(i, i + k) = a[r - k];
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k <= s; ++k) sm.matrix.at(s + i, i + k) = b[s - k];
  return sm;
}

struct DeterminantOptions {
  unsigned threads = 1;
};

namespace detail {

inline int permutation_sign(const std::vector<std::size_t>& p) {
  std::vector<char> seen(p.size(), 0);
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  unsigned t = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < t; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += t) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// Determinant by Laplace expansion with memoised minors.
///
/// Rows are taken in ascending order of term count; level k holds the
/// k x k minors of the first k rows over every column subset that the full
/// expansion can reach, so the largest rows are multiplied in last and
/// each minor is built in one heap merge. Division-free.
inline MultiPoly determinant(const PolyMatrix& m, const DeterminantOptions& opt = {}) {
  std::size_t n = m.dim;
  if (n == 0) return MultiPoly::constant(1);
  if (n > 31) throw std::invalid_argument("determinant: dimension too large");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto weight = [&](std::size_t i) {
    std::size_t w = 0;
    for (std::size_t j = 0; j < n; ++j) w += m.at(i, j).size();
    return w;
  };
  std::vector<std::size_t> weights(n);
  for (std::size_t i = 0; i < n; ++i) weights[i] = weight(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return weights[a] < weights[b]; });
  int sign = detail::permutation_sign(order);

  // Column subsets reachable at each level, found top-down.
  std::vector<std::vector<std::uint32_t>> reach(n + 1);
  reach[n] = {(1u << n) - 1};
  for (std::size_t k = n; k >= 1; --k) {
    const std::size_t row = order[k - 1];
    std::vector<std::uint32_t> next;
    for (std::uint32_t set : reach[k])
      for (std::size_t c = 0; c < n; ++c)
        if ((set >> c & 1u) && !m.at(row, c).is_zero()) next.push_back(set & ~(1u << c));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    reach[k - 1] = std::move(next);
    if (reach[k - 1].empty()) return {};
  }

  std::unordered_map<std::uint32_t, MultiPoly> prev{{0u, MultiPoly::constant(1)}};
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t row = order[k - 1];
    const auto& sets = reach[k];
    std::vector<MultiPoly> values(sets.size());
    detail::parallel_for(sets.size(), opt.threads, [&](std::size_t idx) {
      std::uint32_t set = sets[idx];
      std::vector<ProductTerm> items;
      int pos = 0;  // position of column c within set
      for (std::size_t c = 0; c < n; ++c) {
        if (!(set >> c & 1u)) continue;
        const MultiPoly& entry = m.at(row, c);
        if (!entry.is_zero()) {
          auto it = prev.find(set & ~(1u << c));
          if (it != prev.end() && !it->second.is_zero()) {
            int s = ((static_cast<int>(k) - 1 + pos) % 2 == 0) ? 1 : -1;
            items.push_back({&entry, &it->second, s});
          }
        }
        ++pos;
      }
      values[idx] = sum_of_products(items);
    });
    std::unordered_map<std::uint32_t, MultiPoly> cur;
    cur.reserve(sets.size());
    for (std::size_t idx = 0; idx < sets.size(); ++idx)
      if (!values[idx].is_zero()) cur.emplace(sets[idx], std::move(values[idx]));
    prev = std::move(cur);
  }
  auto it = prev.find((1u << n) - 1);
  if (it == prev.end()) return {};
  return sign < 0 ? -it->second : it->second;
}

/// Determinant by fraction-free (Bareiss) elimination with exact division.
inline MultiPoly determinant_bareiss(PolyMatrix m) {
  std::size_t n = m.dim;
  if (n == 0) return MultiPoly::constant(1);
  int sign = 1;
  MultiPoly prev = MultiPoly::constant(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m.at(p, k).is_zero()) ++p;
      if (p == n) return {};
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        ProductTerm items[2] = {{&m.at(k, k), &m.at(i, j), 1}, {&m.at(i, k), &m.at(k, j), -1}};
        MultiPoly num = sum_of_products(items);
        auto q = exact_divide(num, prev);
        if (!q) throw std::logic_error("determinant_bareiss: inexact division");
        m.at(i, j) = std::move(*q);
      }
      m.at(i, k) = MultiPoly();
    }
    prev = m.at(k, k);
  }
  MultiPoly d = m.at(n - 1, n - 1);
  return sign < 0 ? -d : d;
}

/// Degree of Res_x(f, g) for homogeneous f (degree m, degree r in x) and
/// g (degree n, degree s in x), when the resultant is nonzero.
constexpr int predicted_resultant_degree(int m, int r, int n, int s) {
  return m * s + n * r - r * s;
}

inline int predicted_resultant_degree(const MultiPoly& f, const MultiPoly& g, VarId x) {
  auto df = f.homogeneous_degree();
  auto dg = g.homogeneous_degree();
  if (!df || !dg) throw std::invalid_argument("predicted_resultant_degree: inputs must be homogeneous");
  return predicted_resultant_degree(*df, f.degree_in(x), *dg, g.degree_in(x));
}

/// Sylvester resultant Res_x(f, g).
inline MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, VarId x,
                           const DeterminantOptions& opt = {}) {
  return determinant(sylvester(f, g, x).matrix, opt);
}

}  // namespace circuitpoly
