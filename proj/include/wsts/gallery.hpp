#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsts {

// ---------------------------------------------------------------------------
// Broadcast protocols: configurations are vectors of process counts.

// A vector constraint <b1..bn> denotes the upward closed set of
// componentwise-larger configurations.
using VectorConstraint = std::vector<std::int64_t>;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// [[b2]] subset of [[b1]]: b1 <= b2 componentwise.
bool b_entails(const VectorConstraint& b1, const VectorConstraint& b2);

std::string vector_key(const VectorConstraint& v);

// Conjunction of atoms  x_{i1} + ... + x_{ik} >= bound  over distinct
// variables per atom.
struct AdAtom {
  std::vector<int> vars; // 1-based variable indices
  std::int64_t bound = 0;
};

enum class AdClass { AD, NA, DV };

struct AdConstraint {
  std::vector<AdAtom> atoms;

  // NA: every atom unary; DV: atoms variable-disjoint; AD otherwise.
  AdClass cls() const;
};

// Minimal set of vector constraints whose union denotes the conjunction:
// per atom, all weak compositions of the bound onto its variables;
// atoms combined by componentwise max; minimized.
std::vector<VectorConstraint> expand_ad_to_b(const AdConstraint& c, int n);

// ---------------------------------------------------------------------------
// Integral relational automata: configurations map variables to integers;
// C = {cmin..cmax} is the contiguous constant range.

struct IraContext {
  int num_vars = 0;
  std::int64_t cmin = 0;
  std::int64_t cmax = 0;
};

using IraConfig = std::vector<std::int64_t>;

// Sparser-than constraint: one integer per variable; constants map to
// themselves.
struct S1Constraint {
  std::vector<std::int64_t> values;

  friend bool operator==(const S1Constraint&, const S1Constraint&) = default;
};

// gamma satisfies phi iff (i) gamma and phi order X u C identically and
// (ii) gamma's gaps dominate phi's.
bool s1_satisfies(const IraConfig& gamma, const S1Constraint& phi,
                  const IraContext& ctx);

// [[phi2]] subset of [[phi1]]; decided by reading phi2 as a
// configuration, which is exact because membership composes through
// pattern equality and gap domination.
bool s1_entails(const S1Constraint& phi1, const S1Constraint& phi2,
                const IraContext& ctx);

std::string s1_key(const S1Constraint& phi);

// Conjunction of atoms c <= x, x <= c, c <= y - x.
struct S2Atom {
  enum class Kind { LowerBound, UpperBound, Gap };
  Kind kind = Kind::LowerBound;
  std::int64_t c = 0;
  int x = 0; // 1-based
  int y = 0; // Gap only: c <= y - x
};

struct S2Constraint {
  std::vector<S2Atom> atoms;
};

struct SizeLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool s2_satisfies(const IraConfig& gamma, const S2Constraint& psi);

// Minimal set of S1 constraints with the same denotation, found by
// enumerating candidate value vectors over a window wide enough to carry
// every pattern and gap the atoms can distinguish.  Requires atoms whose
// denotations are closed under the sparser order: lower bounds with
// c >= cmin, upper bounds with c <= cmax, gaps with c >= 0.
std::vector<S1Constraint> expand_s2_to_s1(const S2Constraint& psi,
                                          const IraContext& ctx,
                                          std::size_t candidate_limit = 4000000);

bool s2_entails(const S2Constraint& psi1, const S2Constraint& psi2,
                const IraContext& ctx, std::size_t candidate_limit = 4000000);

} // namespace wsts
