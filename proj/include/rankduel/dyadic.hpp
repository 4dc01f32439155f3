#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rankduel {

/// Exact nonnegative rational of the form numerator / 2^exponent.
///
/// Values are kept in lowest terms (odd numerator, or zero with exponent 0),
/// so structural equality is value equality. Every operation is exact; an
/// operation whose result does not fit in 64 bits throws std::overflow_error
/// instead of rounding.
class Dyadic {
 public:
  constexpr Dyadic() = default;

  static constexpr Dyadic integer(std::uint64_t n) { return Dyadic(n, 0); }

  /// 2^k for any k in [-63, 63].
  static constexpr Dyadic pow2(int k) {
    if (k < -63 || k > 63) throw std::overflow_error("Dyadic::pow2 exponent out of range");
    if (k >= 0) return Dyadic(std::uint64_t{1} << k, 0);
    return Dyadic(1, static_cast<unsigned>(-k));
  }

  static constexpr Dyadic fraction(std::uint64_t numerator, unsigned exponent) {
    if (exponent > 63) throw std::overflow_error("Dyadic exponent out of range");
    return Dyadic(numerator, exponent);
  }

  constexpr std::uint64_t numerator() const { return num_; }
  constexpr unsigned exponent() const { return exp_; }
  constexpr bool is_zero() const { return num_ == 0; }

  friend constexpr Dyadic operator+(Dyadic a, Dyadic b) {
    const unsigned e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
    const std::uint64_t x = shifted(a.num_, e - a.exp_);
    const std::uint64_t y = shifted(b.num_, e - b.exp_);
    if (x > UINT64_MAX - y) throw std::overflow_error("Dyadic addition overflow");
    return Dyadic(x + y, e);
  }

  /// Exact difference; throws std::domain_error if b > a.
  friend constexpr Dyadic operator-(Dyadic a, Dyadic b) {
    const unsigned e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
    const std::uint64_t x = shifted(a.num_, e - a.exp_);
    const std::uint64_t y = shifted(b.num_, e - b.exp_);
    if (y > x) throw std::domain_error("Dyadic subtraction would be negative");
    return Dyadic(x - y, e);
  }

  constexpr Dyadic& operator+=(Dyadic o) { return *this = *this + o; }

  /// Multiplies by 2^k (k may be negative).
  constexpr Dyadic scaled(int k) const {
    if (num_ == 0) return *this;
    if (k <= 0) {
      const unsigned e = exp_ + static_cast<unsigned>(-k);
      if (e > 63) throw std::overflow_error("Dyadic exponent out of range");
      return Dyadic(num_, e);
    }
    const auto up = static_cast<unsigned>(k);
    if (up <= exp_) return Dyadic(num_, exp_ - up);
    return Dyadic(shifted(num_, up - exp_), 0);
  }

  friend constexpr std::strong_ordering operator<=>(Dyadic a, Dyadic b) {
    const unsigned e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
    // Compare a.num * 2^(e - a.exp) with b.num * 2^(e - b.exp) without overflow
    // by comparing integer parts first, then the remainders.
    const unsigned sa = e - a.exp_;
    const unsigned sb = e - b.exp_;
    if (fits(a.num_, sa) && fits(b.num_, sb)) return (a.num_ << sa) <=> (b.num_ << sb);
    const std::uint64_t ia = a.exp_ == 0 ? a.num_ : a.num_ >> a.exp_;
    const std::uint64_t ib = b.exp_ == 0 ? b.num_ : b.num_ >> b.exp_;
    if (ia != ib) return ia <=> ib;
    // Equal integer parts: the fractional parts are below 1 and fit after alignment.
    const std::uint64_t fa = a.exp_ == 0 ? 0 : a.num_ & ((std::uint64_t{1} << a.exp_) - 1);
    const std::uint64_t fb = b.exp_ == 0 ? 0 : b.num_ & ((std::uint64_t{1} << b.exp_) - 1);
    return (fa << sa) <=> (fb << sb);
  }
  friend constexpr bool operator==(Dyadic a, Dyadic b) = default;

  double to_double() const {
    double v = static_cast<double>(num_);
    for (unsigned i = 0; i < exp_; ++i) v /= 2.0;
    return v;
  }

  std::string to_string() const {
    if (exp_ == 0) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(std::uint64_t{1} << exp_);
  }

  friend std::ostream& operator<<(std::ostream& os, Dyadic d) { return os << d.to_string(); }

 private:
  constexpr Dyadic(std::uint64_t n, unsigned e) : num_(n), exp_(e) { normalize(); }

  constexpr void normalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    const auto tz = static_cast<unsigned>(std::countr_zero(num_));
    const unsigned drop = tz < exp_ ? tz : exp_;
    num_ >>= drop;
    exp_ -= drop;
  }

  static constexpr bool fits(std::uint64_t n, unsigned s) {
    return s == 0 || n == 0 || (s < 64 && static_cast<unsigned>(std::countl_zero(n)) >= s);
  }

  static constexpr std::uint64_t shifted(std::uint64_t n, unsigned s) {
    if (!fits(n, s)) throw std::overflow_error("Dyadic alignment overflow");
    return s == 0 ? n : n << s;
  }

  std::uint64_t num_ = 0;
  unsigned exp_ = 0;
};

}  // namespace rankduel
