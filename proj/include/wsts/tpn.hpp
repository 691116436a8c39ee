#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wsts/rational.hpp"

namespace wsts {

using PlaceId = int;

// Closed interval [lo, hi] with hi possibly infinite.  Arc bounds are
// non-strict naturals.
struct Interval {
  std::int64_t lo = 0;
  std::optional<std::int64_t> hi; // nullopt = infinity

  bool contains(Rational x) const {
    if (x < Rational(lo)) return false;
    return !hi || x <= Rational(*hi);
  }
  bool valid() const { return lo >= 0 && (!hi || lo <= *hi); }
  std::string str() const;
};

struct Arc {
  PlaceId place = 0;
  Interval interval;
};

struct TpnTransition {
  std::string name;
  std::vector<Arc> in;
  std::vector<Arc> out;
};

struct Tpn {
  std::vector<std::string> places;
  std::vector<TpnTransition> transitions;

  PlaceId place_id(const std::string& name) const;
  // Largest finite constant in any arc interval.
  std::int64_t cmax() const;
};

// A token and a marking.  Markings are finite multisets of
// (place, age); kept sorted so multiset equality is vector equality.
struct Token {
  PlaceId place;
  Rational age;

  friend bool operator==(const Token&, const Token&) = default;
  friend auto operator<=>(const Token& a, const Token& b) {
    if (auto c = a.place <=> b.place; c != 0) return c;
    return a.age <=> b.age;
  }
};

using Marking = std::vector<Token>; // always sorted

Marking make_marking(std::vector<Token> tokens);

// Multiset inclusion, counting multiplicity with exact (place, age)
// equality.
bool marking_leq(const Marking& a, const Marking& b);

// Timed transition: every age advanced by delta >= 0.
Marking delay_successor(const Marking& m, Rational delta);

// All M2 with M ->_t M2: consumed tokens drawn from m with ages in the
// input intervals, produced token ages drawn from age_choices
// intersected with the output intervals.  A disabled transition yields
// the empty set.
std::set<Marking> discrete_successors(const Marking& m, const TpnTransition& t,
                                      const std::vector<Rational>& age_choices);

// One-step successors on the 1/denom grid: all delays k/denom <= age_cap
// plus all discrete steps with grid age choices.  Ages above cmax+1 are
// clamped to cmax+1, which preserves every interval test since finite
// bounds never exceed cmax.  Requires all ages in m to be on the grid.
std::set<Marking> grid_successors(const Marking& m, const Tpn& net,
                                  std::int64_t denom, std::int64_t age_cap);

} // namespace wsts
