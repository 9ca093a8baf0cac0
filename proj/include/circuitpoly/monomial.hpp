#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuitpoly/graph.hpp"

namespace circuitpoly {

/// Largest vertex label usable in a distance variable.
inline constexpr int kMaxVertex = 8;
/// Number of distance variables x_{i,j}, 1 <= i < j <= kMaxVertex.
inline constexpr int kVarCount = kMaxVertex * (kMaxVertex - 1) / 2;
/// Largest total degree a monomial may carry (exponents live in 7 bits).
inline constexpr int kMaxDegree = 127;

/// Squared-distance variable x_{i,j} with i < j. Ordered lexicographically by
/// (i, j); x_{1,2} is the largest variable in the monomial order.
struct VarId {
  Vertex i = 1;
  Vertex j = 2;

  constexpr VarId() = default;
  constexpr VarId(Vertex a, Vertex b) : i(a < b ? a : b), j(a < b ? b : a) {
    if (a == b || i < 1 || j > kMaxVertex)
      throw std::out_of_range("distance variable x_" + std::to_string(a) + "_" +
                              std::to_string(b) + " outside 1.." + std::to_string(kMaxVertex));
  }
  explicit constexpr VarId(const Edge& e) : VarId(e.i, e.j) {}

  constexpr int index() const {
    // Pairs (a, b) with a < i come first: sum_{a<i} (kMaxVertex - a).
    return (i - 1) * kMaxVertex - (i - 1) * i / 2 + (j - i - 1);
  }
  static constexpr VarId from_index(int k) {
    for (Vertex a = 1; a < kMaxVertex; ++a) {
      int row = kMaxVertex - a;
      if (k < row) return VarId(a, a + 1 + k);
      k -= row;
    }
    throw std::out_of_range("variable index");
  }

  constexpr Edge edge() const { return Edge(i, j); }
  std::string name() const { return "x_" + std::to_string(i) + "_" + std::to_string(j); }

  friend constexpr auto operator<=>(const VarId&, const VarId&) = default;
};

/// Set of variables as a bitmask over VarId::index().
class VarSet {
 public:
  constexpr VarSet() = default;
  explicit constexpr VarSet(std::uint32_t bits) : bits_(bits) {}

  static VarSet of_graph(const Graph& g) {
    VarSet s;
    for (const Edge& e : g.edges()) s.insert(VarId(e));
    return s;
  }

  constexpr void insert(VarId v) { bits_ |= 1u << v.index(); }
  constexpr bool contains(VarId v) const { return (bits_ >> v.index()) & 1u; }
  constexpr bool subset_of(VarSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }

  std::vector<VarId> vars() const {
    std::vector<VarId> out;
    for (int k = 0; k < kVarCount; ++k)
      if ((bits_ >> k) & 1u) out.push_back(VarId::from_index(k));
    return out;
  }

  Graph graph() const {
    std::vector<Edge> es;
    for (VarId v : vars()) es.push_back(v.edge());
    return Graph(std::move(es));
  }

  friend constexpr VarSet operator|(VarSet a, VarSet b) { return VarSet(a.bits_ | b.bits_); }
  friend constexpr VarSet operator&(VarSet a, VarSet b) { return VarSet(a.bits_ & b.bits_); }
  friend constexpr bool operator==(VarSet, VarSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Packed exponent vector: one byte per variable (byte k holds the exponent
/// of VarId::from_index(k)) and the total degree in the top byte. Products
/// and quotients are word-wise additions and subtractions.
class Monomial {
 public:
  constexpr Monomial() = default;

  static Monomial of(VarId v, int e = 1) {
    Monomial m;
    m.set_exponent(v, e);
    return m;
  }

  constexpr int exponent(int k) const {
    return static_cast<int>((w_[k >> 3] >> ((k & 7) * 8)) & 0xffu);
  }
  constexpr int exponent(VarId v) const { return exponent(v.index()); }
  constexpr int degree() const { return static_cast<int>(w_[3] >> 56); }
  constexpr bool is_one() const { return degree() == 0; }

  void set_exponent(VarId v, int e) {
    int k = v.index();
    int total = degree() - exponent(k) + e;
    if (e < 0 || total > kMaxDegree) throw std::overflow_error("monomial degree exceeds limit");
    std::uint64_t shift = (k & 7) * 8;
    w_[k >> 3] = (w_[k >> 3] & ~(0xffull << shift)) | (static_cast<std::uint64_t>(e) << shift);
    w_[3] = (w_[3] & ~(0xffull << 56)) | (static_cast<std::uint64_t>(total) << 56);
  }

  VarSet support() const {
    std::uint32_t bits = 0;
    for (int k = 0; k < kVarCount; ++k)
      if (exponent(k)) bits |= 1u << k;
    return VarSet(bits);
  }

  /// Product; the caller guarantees the total degree stays <= kMaxDegree.
  friend constexpr Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int k = 0; k < 4; ++k) r.w_[k] = a.w_[k] + b.w_[k];
    return r;
  }

  /// Quotient; requires divides(b, a).
  friend constexpr Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int k = 0; k < 4; ++k) r.w_[k] = a.w_[k] - b.w_[k];
    return r;
  }

  /// Whether every exponent of b is at most the matching exponent of a.
  friend constexpr bool divides(const Monomial& b, const Monomial& a) {
    constexpr std::uint64_t high = 0x8080808080808080ull;
    for (int k = 0; k < 4; ++k)
      if ((((a.w_[k] | high) - b.w_[k]) & high) != high) return false;
    return true;
  }

  /// Exponent-wise minimum.
  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int k = 0; k < kVarCount; ++k) {
      int e = std::min(a.exponent(k), b.exponent(k));
      if (e) r.set_exponent(VarId::from_index(k), e);
    }
    return r;
  }

  /// Graded reverse lexicographic order: higher total degree first; on ties
  /// the monomial with the smaller exponent in the last differing variable
  /// is the larger one.
  friend constexpr std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    for (int k = 3; k >= 0; --k) {
      std::uint64_t x = a.w_[k] ^ b.w_[k];
      if (!x) continue;
      int byte = (63 - std::countl_zero(x)) >> 3;
      auto ea = static_cast<std::uint8_t>(a.w_[k] >> (byte * 8));
      auto eb = static_cast<std::uint8_t>(b.w_[k] >> (byte * 8));
      if (k == 3 && byte == 7) return ea <=> eb;
      return eb <=> ea;
    }
    return std::strong_ordering::equal;
  }
  friend constexpr bool operator==(const Monomial&, const Monomial&) = default;

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t w : w_) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }

 private:
  std::array<std::uint64_t, 4> w_{};
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace circuitpoly
