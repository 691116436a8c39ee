#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace wsts {

using Word = std::string;

// w1 is a (not necessarily contiguous) subword of w2.
bool subword(const Word& w1, const Word& w2);

// Word-constraint expressions over a finite alphabet: atoms, then
// closure under concatenation, conjunction and disjunction.  Each
// expression denotes an upward-closed language under the subword order.
class L2Expr {
public:
  enum class Kind { Atom, Concat, And, Or };

  static L2Expr atom(char a);
  static L2Expr concat(L2Expr l, L2Expr r);
  static L2Expr conj(L2Expr l, L2Expr r);
  static L2Expr disj(L2Expr l, L2Expr r);

  Kind kind() const { return node_->kind; }
  char atom_letter() const { return node_->atom; }
  L2Expr lhs() const { return L2Expr(node_->lhs); }
  L2Expr rhs() const { return L2Expr(node_->rhs); }

  std::string str() const; // parses back with the CLI grammar

private:
  struct Node {
    Kind kind;
    char atom = 0;
    std::shared_ptr<const Node> lhs, rhs; // engaged for non-atoms
    explicit Node(Kind k) : kind(k) {}
  };
  static L2Expr binary(Kind k, L2Expr l, L2Expr r);
  L2Expr() = default;
  explicit L2Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Structural membership w in [[e]].
bool expr_denotes(const L2Expr& e, const Word& w);

// All minimal common supersequences of u and v: the generators of
// [[u]] n [[v]].
std::vector<Word> minimal_common_supersequences(const Word& u, const Word& v);

// The unique minimal antichain of words whose upward closures union to
// [[e]], sorted.
std::vector<Word> normalize_expr(const L2Expr& e);

// [[e2]] subset of [[e1]].
bool expr_entails(const L2Expr& e1, const L2Expr& e2);

// ---------------------------------------------------------------------------
// Lossy channel systems: finite control plus unbounded lossy FIFO
// channels.  Constraints pair a control state with one subword
// requirement per channel.

struct LcsOp {
  enum class Type { Nop, Send, Recv };
  Type type = Type::Nop;
  int channel = -1;
  char letter = 0;
};

struct LcsTransition {
  int from = 0;
  int to = 0;
  LcsOp op;
  std::string label; // printable name used in traces
};

struct LcsModel {
  std::vector<std::string> states;
  std::vector<std::string> channels;
  std::string alphabet;
  std::vector<LcsTransition> transitions;

  int state_id(const std::string& name) const;
  int channel_id(const std::string& name) const;
};

struct LcsConstraint {
  int state = 0;
  std::vector<Word> words; // one per channel

  friend bool operator==(const LcsConstraint&, const LcsConstraint&) = default;
};

// [[c2]] subset of [[c1]]: equal control state and per-channel subword.
bool lcs_entails(const LcsConstraint& c1, const LcsConstraint& c2);

// One-step predecessors: recv prepends the received letter, send drops a
// matching trailing letter when present.  Minimized under entailment.
std::vector<std::pair<LcsConstraint, std::string>> lcs_pre(
    const LcsConstraint& c, const LcsModel& model);

std::string lcs_canonical_key(const LcsConstraint& c);

} // namespace wsts
