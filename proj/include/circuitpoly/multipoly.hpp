#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "circuitpoly/integer.hpp"
#include "circuitpoly/monomial.hpp"

namespace circuitpoly {

struct Term {
  Monomial mono;
  Integer coef;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial over Z in the distance variables.
///
/// Terms are kept in strictly decreasing grevlex order with nonzero
/// coefficients, so equal polynomials have identical term vectors.
class MultiPoly {
 public:
  MultiPoly() = default;

  static MultiPoly constant(const Integer& c) {
    MultiPoly p;
    if (!c.is_zero()) p.terms_.push_back({Monomial(), c});
    return p;
  }
  static MultiPoly variable(VarId v) { return monomial(Monomial::of(v), 1); }
  static MultiPoly monomial(const Monomial& m, const Integer& c) {
    MultiPoly p;
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
  }

  /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
  static MultiPoly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.mono > b.mono; });
    MultiPoly p;
    p.terms_.reserve(terms.size());
    for (Term& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coef += t.coef;
      } else {
        if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
    return p;
  }

  /// Adopts terms already in canonical order with nonzero coefficients.
  static MultiPoly from_sorted_terms(std::vector<Term> terms) {
    MultiPoly p;
    p.terms_ = std::move(terms);
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  const Term& leading_term() const { return terms_.front(); }

  /// Total degree (largest monomial degree); -1 for zero.
  int total_degree() const { return terms_.empty() ? -1 : terms_.front().mono.degree(); }

  /// Common degree of all terms, if there is one.
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = terms_.front().mono.degree();
    // Grevlex is graded: the smallest degree sits at the back.
    if (terms_.back().mono.degree() != d) return std::nullopt;
    return d;
  }

  int degree_in(VarId v) const {
    int d = 0;
    int k = v.index();
    for (const Term& t : terms_) d = std::max(d, t.mono.exponent(k));
    return d;
  }

  VarSet support() const {
    std::uint32_t bits = 0;
    for (const Term& t : terms_) bits |= t.mono.support().bits();
    return VarSet(bits);
  }

  /// Highest vertex label among support variables (0 for constants).
  Vertex max_vertex() const {
    Vertex m = 0;
    for (VarId v : support().vars()) m = std::max(m, v.j);
    return m;
  }

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (Term& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

  MultiPoly& operator+=(const MultiPoly& b) { return *this = *this + b; }
  MultiPoly& operator-=(const MultiPoly& b) { return *this = *this - b; }
  MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }

  /// Multiplies every coefficient by c.
  MultiPoly scaled(const Integer& c) const {
    if (c.is_zero()) return {};
    MultiPoly r = *this;
    for (Term& t : r.terms_) t.coef *= c;
    return r;
  }

  /// Multiplies by a monomial; order is preserved.
  MultiPoly shifted(const Monomial& m) const {
    if (total_degree() + m.degree() > kMaxDegree) throw std::overflow_error("degree limit exceeded");
    MultiPoly r = *this;
    for (Term& t : r.terms_) t.mono = t.mono * m;
    return r;
  }

 private:
  static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    MultiPoly r;
    r.terms_.reserve(a.size() + b.size());
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->mono > ib->mono)) {
        r.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->mono > ia->mono) {
        r.terms_.push_back({ib->mono, subtract ? -ib->coef : ib->coef});
        ++ib;
      } else {
        Integer c = subtract ? ia->coef - ib->coef : ia->coef + ib->coef;
        if (!c.is_zero()) r.terms_.push_back({ia->mono, std::move(c)});
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Products
// ---------------------------------------------------------------------------

/// One summand sign * lhs * rhs of a sum of products.
struct ProductTerm {
  const MultiPoly* lhs;
  const MultiPoly* rhs;
  int sign = 1;
};

namespace detail {

// A stream walks the longer factor of one product, multiplied by a single
// term of the shorter factor. Streams of one product are activated lazily:
// stream k+1 joins the heap once stream k has emitted its first term.
struct ProductStream {
  Monomial lead_mono;
  Integer lead_coef;  // sign of the product already applied
  const std::vector<Term>* walk;
  std::uint32_t pos;
  std::uint32_t next_sibling;  // UINT32_MAX when there is none
};

struct HeapEntry {
  Monomial mono;
  std::uint32_t stream;
};

class StreamHeap {
 public:
  void reserve(std::size_t n) { heap_.reserve(n); }
  bool empty() const { return heap_.empty(); }
  const HeapEntry& top() const { return heap_.front(); }

  void push(HeapEntry e) {
    heap_.push_back(e);
    std::size_t i = heap_.size() - 1;
    while (i > 0) {
      std::size_t p = (i - 1) / 2;
      if (!(heap_[p].mono < heap_[i].mono)) break;
      std::swap(heap_[p], heap_[i]);
      i = p;
    }
  }

  /// Replaces the top with e and restores the heap.
  void replace_top(HeapEntry e) {
    heap_[0] = e;
    sift_down(0);
  }

  void pop() {
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) sift_down(0);
  }

 private:
  void sift_down(std::size_t i) {
    std::size_t n = heap_.size();
    HeapEntry e = heap_[i];
    for (;;) {
      std::size_t c = 2 * i + 1;
      if (c >= n) break;
      if (c + 1 < n && heap_[c].mono < heap_[c + 1].mono) ++c;
      if (!(e.mono < heap_[c].mono)) break;
      heap_[i] = heap_[c];
      i = c;
    }
    heap_[i] = e;
  }

  std::vector<HeapEntry> heap_;
};

}  // namespace detail

/// Computes sum_k sign_k * lhs_k * rhs_k by a k-way heap merge. Each product
/// is expanded as a family of sorted streams, so the result comes out in
/// canonical order without a hash table or a final sort.
inline MultiPoly sum_of_products(std::span<const ProductTerm> items) {
  std::vector<detail::ProductStream> streams;
  std::vector<std::uint32_t> first_streams;
  std::size_t estimate = 0;
  for (const ProductTerm& item : items) {
    const MultiPoly* a = item.lhs;
    const MultiPoly* b = item.rhs;
    if (a->is_zero() || b->is_zero() || item.sign == 0) continue;
    if (a->total_degree() + b->total_degree() > kMaxDegree)
      throw std::overflow_error("product degree exceeds limit");
    if (a->size() > b->size()) std::swap(a, b);
    auto base = static_cast<std::uint32_t>(streams.size());
    first_streams.push_back(base);
    for (std::size_t k = 0; k < a->size(); ++k) {
      std::uint32_t next = k + 1 < a->size() ? base + static_cast<std::uint32_t>(k) + 1 : UINT32_MAX;
      const Term& lead = a->terms()[k];
      streams.push_back({lead.mono, item.sign < 0 ? -lead.coef : lead.coef, &b->terms(), 0, next});
    }
    estimate = std::max(estimate, b->size());
  }
  std::vector<Term> out;
  out.reserve(estimate * 2);
  if (streams.empty()) return {};

  detail::StreamHeap heap;
  heap.reserve(streams.size());
  for (std::uint32_t s : first_streams) {
    const auto& st = streams[s];
    heap.push({st.lead_mono * (*st.walk)[0].mono, s});
  }

  IntegerAccumulator acc;
  Monomial current = heap.top().mono;
  while (!heap.empty()) {
    detail::HeapEntry top = heap.top();
    if (top.mono != current) {
      if (!acc.is_zero()) out.push_back({current, acc.value()});
      acc.reset();
      current = top.mono;
    }
    auto& st = streams[top.stream];
    const Term& w = (*st.walk)[st.pos];
    acc.add_product(st.lead_coef, w.coef);
    if (st.pos == 0 && st.next_sibling != UINT32_MAX) {
      // The sibling's head is strictly below the current top, so the push
      // leaves this stream's entry at the root.
      const auto& sib = streams[st.next_sibling];
      heap.push({sib.lead_mono * (*sib.walk)[0].mono, st.next_sibling});
      st.next_sibling = UINT32_MAX;
    }
    ++st.pos;
    if (st.pos < st.walk->size()) {
      heap.replace_top({st.lead_mono * (*st.walk)[st.pos].mono, top.stream});
    } else {
      heap.pop();
    }
  }
  if (!acc.is_zero()) out.push_back({current, acc.value()});
  return MultiPoly::from_sorted_terms(std::move(out));
}

inline MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  ProductTerm item{&a, &b, 1};
  return sum_of_products(std::span<const ProductTerm>(&item, 1));
}

inline MultiPoly pow(const MultiPoly& p, unsigned e) {
  MultiPoly result = MultiPoly::constant(1);
  MultiPoly base = p;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Exact division
// ---------------------------------------------------------------------------

/// Quotient p / d when d divides p exactly, nullopt otherwise.
///
/// Heap division over the divisor's terms: the remainder p - q*d is never
/// materialised. The first remainder term whose monomial or coefficient is
/// not divisible by the leading term of d proves that d does not divide p.
inline std::optional<MultiPoly> exact_divide(const MultiPoly& p, const MultiPoly& d) {
  if (d.is_zero()) throw std::domain_error("exact_divide: division by zero");
  if (p.is_zero()) return MultiPoly();
  if (p.total_degree() < d.total_degree()) return std::nullopt;
  if (!d.support().subset_of(p.support())) return std::nullopt;

  const auto& dt = d.terms();
  const Term& lead = dt.front();
  if (dt.size() == 1) {
    std::vector<Term> q;
    q.reserve(p.size());
    for (const Term& t : p.terms()) {
      if (!divides(lead.mono, t.mono) || !divides(lead.coef, t.coef)) return std::nullopt;
      q.push_back({t.mono / lead.mono, divexact(t.coef, lead.coef)});
    }
    return MultiPoly::from_sorted_terms(std::move(q));
  }

  // Stream j (1 <= j < |d|) yields q[idx[j]] * d[j] for increasing idx.
  std::vector<Term> q;
  std::vector<std::uint32_t> idx(dt.size(), 0);
  std::vector<char> waiting(dt.size(), 1);  // stream has run past the end of q
  detail::StreamHeap heap;
  heap.reserve(dt.size());

  auto pt = p.terms().begin();
  IntegerAccumulator acc;
  for (;;) {
    // Next monomial: the larger of p's next term and the heap top.
    bool have_p = pt != p.terms().end();
    if (!have_p && heap.empty()) break;
    Monomial m;
    if (have_p && (heap.empty() || !(pt->mono < heap.top().mono))) {
      m = pt->mono;
    } else {
      m = heap.top().mono;
    }
    acc.reset();
    if (have_p && pt->mono == m) {
      acc.add(pt->coef);
      ++pt;
    }
    while (!heap.empty() && heap.top().mono == m) {
      std::uint32_t j = heap.top().stream;
      acc.add_product(-q[idx[j]].coef, dt[j].coef);
      ++idx[j];
      if (idx[j] < q.size()) {
        heap.replace_top({q[idx[j]].mono * dt[j].mono, j});
      } else {
        heap.pop();
        waiting[j] = 1;
      }
    }
    if (acc.is_zero()) continue;
    Integer c = acc.value();
    if (!divides(lead.mono, m) || !divides(lead.coef, c)) return std::nullopt;
    q.push_back({m / lead.mono, divexact(c, lead.coef)});
    // Every product with the new quotient term is smaller than m, so the
    // exhausted streams can resume from it.
    for (std::uint32_t j = 1; j < dt.size(); ++j) {
      if (waiting[j]) {
        waiting[j] = 0;
        heap.push({q[idx[j]].mono * dt[j].mono, j});
      }
    }
  }
  return MultiPoly::from_sorted_terms(std::move(q));
}

// ---------------------------------------------------------------------------
// Structure
// ---------------------------------------------------------------------------

/// Coefficients a_0..a_r of p viewed as a polynomial in v.
inline std::vector<MultiPoly> coeffs_in(const MultiPoly& p, VarId v) {
  int r = p.degree_in(v);
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(r) + 1);
  for (const Term& t : p.terms()) {
    int e = t.mono.exponent(v);
    Monomial m = t.mono;
    m.set_exponent(v, 0);
    buckets[static_cast<std::size_t>(e)].push_back({m, t.coef});
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(MultiPoly::from_terms(std::move(b)));
  return out;
}

/// Inverse of coeffs_in.
inline MultiPoly from_coeffs(std::span<const MultiPoly> coeffs, VarId v) {
  std::vector<Term> terms;
  for (std::size_t e = 0; e < coeffs.size(); ++e)
    for (const Term& t : coeffs[e].terms()) {
      Monomial m = t.mono;
      m.set_exponent(v, static_cast<int>(e));
      terms.push_back({m, t.coef});
    }
  return MultiPoly::from_terms(std::move(terms));
}

/// Nonnegative gcd of all coefficients (0 for the zero polynomial).
inline Integer content(const MultiPoly& p) {
  Integer g(0);
  for (const Term& t : p.terms()) {
    g = gcd(g, t.coef);
    if (g.is_one()) break;
  }
  return g;
}

/// Largest monomial dividing every term.
inline Monomial monomial_content(const MultiPoly& p) {
  if (p.is_zero()) return {};
  Monomial g = p.terms().front().mono;
  for (const Term& t : p.terms()) {
    if (g.is_one()) break;
    g = gcd(g, t.mono);
  }
  return g;
}

/// Canonical representative up to a rational scalar: content divided out and
/// leading coefficient positive.
inline MultiPoly normalize(const MultiPoly& p) {
  if (p.is_zero()) return p;
  Integer c = content(p);
  if (p.leading_term().coef.sign() < 0) c = -c;
  if (c.is_one()) return p;
  std::vector<Term> terms = p.terms();
  for (Term& t : terms) t.coef = divexact(t.coef, c);
  return MultiPoly::from_sorted_terms(std::move(terms));
}

struct PolyStats {
  std::size_t terms = 0;
  std::optional<int> homogeneous_degree;
  std::map<VarId, int> degrees;  // support variables only

  friend bool operator==(const PolyStats&, const PolyStats&) = default;
};

inline PolyStats stats(const MultiPoly& p) {
  PolyStats s;
  s.terms = p.size();
  s.homogeneous_degree = p.homogeneous_degree();
  std::array<int, kVarCount> deg{};
  for (const Term& t : p.terms())
    for (int k = 0; k < kVarCount; ++k) deg[k] = std::max(deg[k], t.mono.exponent(k));
  for (int k = 0; k < kVarCount; ++k)
    if (deg[k]) s.degrees[VarId::from_index(k)] = deg[k];
  return s;
}

/// Renames variables through a vertex relabeling (label -> new label).
inline MultiPoly relabel(const MultiPoly& p, const std::map<Vertex, Vertex>& perm) {
  auto image = [&](Vertex v) {
    auto it = perm.find(v);
    return it == perm.end() ? v : it->second;
  };
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const Term& t : p.terms()) {
    Monomial m;
    for (int k = 0; k < kVarCount; ++k) {
      int e = t.mono.exponent(k);
      if (!e) continue;
      VarId v = VarId::from_index(k);
      VarId w(image(v.i), image(v.j));
      m.set_exponent(w, m.exponent(w) + e);
    }
    terms.push_back({m, t.coef});
  }
  return MultiPoly::from_terms(std::move(terms));
}

}  // namespace circuitpoly
