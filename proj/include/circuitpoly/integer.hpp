#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace circuitpoly {

namespace detail {

inline void set_mpz_i128(mpz_class& out, __int128 v) {
  bool neg = v < 0;
  unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  auto hi = static_cast<std::uint64_t>(mag >> 64);
  auto lo = static_cast<std::uint64_t>(mag);
  out = static_cast<unsigned long>(hi);
  out <<= 64;
  out += static_cast<unsigned long>(lo);
  if (neg) out = -out;
}

}  // namespace detail

/// Arbitrary-precision integer with an inline int64 fast path.
///
/// Values that fit in int64 are always stored inline; the GMP
/// representation is used only beyond that range, so equality and zero
/// tests never touch GMP for small values.
class Integer {
 public:
  Integer() = default;
  Integer(std::int64_t v) : small_(v) {}  // NOLINT(google-explicit-constructor)
  Integer(int v) : small_(v) {}           // NOLINT(google-explicit-constructor)
  explicit Integer(const mpz_class& v) { assign(v); }

  Integer(const Integer& o) : small_(o.small_) {
    if (o.big_) big_ = std::make_unique<mpz_class>(*o.big_);
  }
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& o) {
    if (this != &o) {
      small_ = o.small_;
      big_ = o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Integer& operator=(Integer&&) noexcept = default;

  static Integer from_string(const std::string& s) {
    mpz_class v;
    if (s.empty() || v.set_str(s, 10) != 0) throw std::invalid_argument("bad integer: '" + s + "'");
    return Integer(v);
  }

  bool is_small() const { return !big_; }
  std::int64_t small_value() const { return small_; }
  const mpz_class& big_value() const { return *big_; }

  mpz_class to_mpz() const { return big_ ? *big_ : mpz_class(static_cast<long>(small_)); }

  bool is_zero() const { return !big_ && small_ == 0; }
  bool is_one() const { return !big_ && small_ == 1; }
  int sign() const {
    if (big_) return sgn(*big_);
    return (small_ > 0) - (small_ < 0);
  }

  std::string to_string() const { return big_ ? big_->get_str() : std::to_string(small_); }

  /// Number of bits in |value|.
  std::size_t bit_length() const {
    if (big_) return mpz_sizeinbase(big_->get_mpz_t(), 2);
    std::uint64_t m = small_ < 0 ? -static_cast<std::uint64_t>(small_) : static_cast<std::uint64_t>(small_);
    return m == 0 ? 0 : 64 - static_cast<std::size_t>(__builtin_clzll(m));
  }

  Integer operator-() const {
    if (!big_ && small_ != std::numeric_limits<std::int64_t>::min()) return Integer(-small_);
    return Integer(mpz_class(-to_mpz()));
  }

  friend Integer operator+(const Integer& a, const Integer& b) {
    std::int64_t r;
    if (!a.big_ && !b.big_ && !__builtin_add_overflow(a.small_, b.small_, &r)) return Integer(r);
    return Integer(mpz_class(a.to_mpz() + b.to_mpz()));
  }
  friend Integer operator-(const Integer& a, const Integer& b) {
    std::int64_t r;
    if (!a.big_ && !b.big_ && !__builtin_sub_overflow(a.small_, b.small_, &r)) return Integer(r);
    return Integer(mpz_class(a.to_mpz() - b.to_mpz()));
  }
  friend Integer operator*(const Integer& a, const Integer& b) {
    std::int64_t r;
    if (!a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &r)) return Integer(r);
    return Integer(mpz_class(a.to_mpz() * b.to_mpz()));
  }
  Integer& operator+=(const Integer& b) { return *this = *this + b; }
  Integer& operator-=(const Integer& b) { return *this = *this - b; }
  Integer& operator*=(const Integer& b) { return *this = *this * b; }

  /// True when b divides a.
  friend bool divides(const Integer& b, const Integer& a) {
    if (b.is_zero()) return a.is_zero();
    if (!a.big_ && !b.big_) {
      if (b.small_ == -1) return true;
      return a.small_ % b.small_ == 0;
    }
    return mpz_divisible_p(a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t()) != 0;
  }

  /// a / b where b is known to divide a.
  friend Integer divexact(const Integer& a, const Integer& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (!a.big_ && !b.big_ && !(b.small_ == -1 && a.small_ == std::numeric_limits<std::int64_t>::min()))
      return Integer(a.small_ / b.small_);
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Integer(q);
  }

  /// Nonnegative gcd.
  friend Integer gcd(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_ && a.small_ != std::numeric_limits<std::int64_t>::min() &&
        b.small_ != std::numeric_limits<std::int64_t>::min())
      return Integer(std::gcd(a.small_, b.small_));
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Integer(g);
  }

  Integer abs() const { return sign() < 0 ? -*this : *this; }

  /// Value modulo a prime below 2^62, in [0, p).
  std::uint64_t mod(std::uint64_t p) const {
    if (!big_) {
      std::int64_t r = small_ % static_cast<std::int64_t>(p);
      return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
    }
    return mpz_fdiv_ui(big_->get_mpz_t(), p);
  }

  friend bool operator==(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    if (!a.big_ || !b.big_) return false;
    return *a.big_ == *b.big_;
  }
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
    int c = cmp(a.to_mpz(), b.to_mpz());
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

 private:
  void assign(const mpz_class& v) {
    if (v.fits_slong_p()) {
      small_ = v.get_si();
      big_.reset();
    } else {
      big_ = std::make_unique<mpz_class>(v);
    }
  }

  std::int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

/// Running sum of products. Small products accumulate in a 128-bit register;
/// the register spills into GMP only on overflow or for big operands.
class IntegerAccumulator {
 public:
  void add_product(const Integer& a, const Integer& b) {
    if (a.is_small() && b.is_small()) {
      __int128 p = static_cast<__int128>(a.small_value()) * b.small_value();
      __int128 sum;
      if (!__builtin_add_overflow(acc_, p, &sum)) {
        acc_ = sum;
        return;
      }
      spill();
      acc_ = p;
      return;
    }
    spill();
    big_ += a.to_mpz() * b.to_mpz();
    used_big_ = true;
  }

  void add(const Integer& a) { add_product(a, Integer(1)); }

  Integer value() const {
    if (!used_big_ && acc_ >= std::numeric_limits<std::int64_t>::min() &&
        acc_ <= std::numeric_limits<std::int64_t>::max())
      return Integer(static_cast<std::int64_t>(acc_));
    mpz_class total = big_;
    if (acc_ != 0) {
      mpz_class t;
      detail::set_mpz_i128(t, acc_);
      total += t;
    }
    return Integer(total);
  }

  bool is_zero() const { return acc_ == 0 && (!used_big_ || big_ == 0); }

  void reset() {
    acc_ = 0;
    if (used_big_) {
      big_ = 0;
      used_big_ = false;
    }
  }

 private:
  void spill() {
    if (acc_ == 0) return;
    mpz_class t;
    detail::set_mpz_i128(t, acc_);
    big_ += t;
    acc_ = 0;
    used_big_ = true;
  }

  __int128 acc_ = 0;
  mpz_class big_;
  bool used_big_ = false;
};

}  // namespace circuitpoly
