#pragma once

#include <cstdint>
#include <compare>
#include <string>

namespace wsts {

// A bound on a value or a difference of values: either finite (c, <=) /
// (c, <) or +infinity.  Finite bounds built through the public model
// surface are non-strict; strict bounds only appear internally when
// entailment negates a constraint.
class Bound {
public:
  constexpr Bound() : value_(0), strict_(false), inf_(false) {}

  static constexpr Bound inf() {
    Bound b;
    b.inf_ = true;
    return b;
  }
  static constexpr Bound nonstrict(std::int64_t v) {
    Bound b;
    b.value_ = v;
    return b;
  }
  static constexpr Bound strict(std::int64_t v) {
    Bound b;
    b.value_ = v;
    b.strict_ = true;
    return b;
  }
  static constexpr Bound zero() { return nonstrict(0); }

  constexpr bool is_inf() const { return inf_; }
  constexpr bool is_strict() const { return strict_; }
  constexpr std::int64_t value() const { return value_; }

  // (v1,s1) + (v2,s2) = (v1+v2, s1 or s2); inf absorbs.
  friend constexpr Bound operator+(Bound a, Bound b) {
    if (a.inf_ || b.inf_) return inf();
    return a.strict_ || b.strict_ ? strict(a.value_ + b.value_)
                                  : nonstrict(a.value_ + b.value_);
  }

  // Tightness order: smaller value first, then strict before non-strict.
  friend constexpr bool operator<(Bound a, Bound b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    if (a.value_ != b.value_) return a.value_ < b.value_;
    return a.strict_ && !b.strict_;
  }
  friend constexpr bool operator==(Bound a, Bound b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.value_ == b.value_ && a.strict_ == b.strict_;
  }
  friend constexpr bool operator<=(Bound a, Bound b) { return a < b || a == b; }

  friend constexpr Bound min(Bound a, Bound b) { return a < b ? a : b; }

  // Negation of the constraint "x - y <= this": "y - x <= negated()".
  constexpr Bound negated() const {
    return strict_ ? nonstrict(-value_) : strict(-value_);
  }

  std::string str() const {
    if (inf_) return "inf";
    std::string s = std::to_string(value_);
    if (strict_) s += "<";
    return s;
  }

private:
  std::int64_t value_;
  bool strict_;
  bool inf_;
};

} // namespace wsts
