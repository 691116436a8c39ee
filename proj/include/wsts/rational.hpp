#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "wsts/bound.hpp"

namespace wsts {

// Exact nonnegative rational, used for token ages.  Ages must never be
// floats: the forward oracles compare ages against integer interval
// bounds and zone entries exactly.
class Rational {
public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend Rational operator+(Rational a, Rational b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(Rational a, Rational b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }

  friend bool operator==(Rational a, Rational b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend auto operator<=>(Rational a, Rational b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

  // x satisfies "x <= bound" / "-x <= bound" (i.e. x >= -bound).
  bool le(Bound b) const {
    if (b.is_inf()) return true;
    auto cmp = num_ <=> b.value() * den_;
    return b.is_strict() ? cmp < 0 : cmp <= 0;
  }
  bool ge_neg(Bound b) const {
    if (b.is_inf()) return true;
    auto cmp = num_ <=> -b.value() * den_;
    return b.is_strict() ? cmp > 0 : cmp >= 0;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

private:
  std::int64_t num_;
  std::int64_t den_;
};

} // namespace wsts
