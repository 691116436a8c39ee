#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wsts/bound.hpp"
#include "wsts/tpn.hpp"

namespace wsts {

// Injection from zone tokens into the tokens of a concrete marking.
struct Witness {
  std::vector<std::size_t> map; // zone token i (1-based -> map[i-1]) to marking index
};

// An existential zone <m, placing, D>: at least m tokens, token i in
// place placing(i), ages constrained by the (m+1)x(m+1) difference bound
// matrix with index 0 as the zero reference.  Semantics of an entry:
//   x_i <= D(i,0),  -D(0,i) <= x_i,  x_j - x_i <= D(j,i).
class Zone {
public:
  Zone() : placing_(), dbm_(1, Bound::zero()) {}
  Zone(std::vector<PlaceId> placing, std::vector<Bound> dbm);

  int token_count() const { return static_cast<int>(placing_.size()); }
  PlaceId place_of(int i) const { return placing_.at(i - 1); } // i in 1..m
  const std::vector<PlaceId>& placing() const { return placing_; }

  Bound d(int i, int j) const { return dbm_[idx(i, j)]; }
  void set_d(int i, int j, Bound b) { dbm_[idx(i, j)] = b; }

  friend bool operator==(const Zone&, const Zone&) = default;

private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * (placing_.size() + 1) +
           static_cast<std::size_t>(j);
  }
  std::vector<PlaceId> placing_;
  std::vector<Bound> dbm_; // row-major, (m+1)^2
};

// Family of initial markings: per place, between 0 and `count` tokens
// (nullopt = unbounded), all at the given age.
struct UniformInitSpec {
  struct Entry {
    std::optional<std::int64_t> count; // nullopt = omega
    std::int64_t age = 0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::map<PlaceId, Entry> places;
};

// Min-plus closure plus the age-nonnegativity clamp D(0,i) <= 0.
// Idempotent and denotation-preserving over markings.
Zone normalize(const Zone& z);

bool is_normal(const Zone& z);

// [[Z]] != empty: no negative cycle once ages are clamped nonnegative.
bool is_consistent(const Zone& z);

// First witness in token/marking index order, or nullopt.
std::optional<Witness> member(const Marking& m, const Zone& z);

// Z (x) <I, i>: constrain the age of token i to I.  Raw result, not
// re-normalized.
Zone conjunction(const Zone& z, const Interval& intrv, int i);

// Z (+) <p, I>: require one extra token in p with age in I.  Raw result.
Zone addition(const Zone& z, PlaceId p, const Interval& intrv);

// Z \ i: drop all constraints on token i.  Raw result.
Zone abstraction(const Zone& z, int i);

// Predecessors through a timed transition: lower bounds drop to 0,
// everything else is kept.  Requires a normal zone.
Zone pre_time(const Zone& z);

// Predecessors through firing t backwards: every partial injection of
// zone tokens onto output arcs whose conjunction stays consistent,
// matched tokens projected away, then one token per input arc added.
// Results are normalized and minimized under entailment.
std::vector<Zone> pre_discrete(const Zone& z, const TpnTransition& t);

// [[Z2]] subset of [[Z1]], decided exactly by subtracting every
// placing-compatible pullback of Z1 from Z2's zone (complements
// introduce strict bounds internally).  Requires normal consistent
// inputs.
bool zone_entails(const Zone& z1, const Zone& z2);

// Some marking of the uniform family satisfies Z.
bool uniform_init_satisfiable(const Zone& z, const UniformInitSpec& spec);

// Deterministic serialization, used for tie-breaking and ordering.
std::string canonical_key(const Zone& z);

} // namespace wsts
