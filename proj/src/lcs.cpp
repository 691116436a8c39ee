#include "wsts/lcs.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "wsts/qo.hpp"

namespace wsts {

bool subword(const Word& w1, const Word& w2) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < w2.size() && j < w1.size(); ++i)
    if (w1[j] == w2[i]) ++j;
  return j == w1.size();
}

L2Expr L2Expr::atom(char a) {
  auto n = std::make_shared<Node>(Kind::Atom);
  n->atom = a;
  L2Expr e;
  e.node_ = std::move(n);
  return e;
}

L2Expr L2Expr::binary(Kind k, L2Expr l, L2Expr r) {
  auto n = std::make_shared<Node>(k);
  n->lhs = std::move(l.node_);
  n->rhs = std::move(r.node_);
  L2Expr e;
  e.node_ = std::move(n);
  return e;
}

L2Expr L2Expr::concat(L2Expr l, L2Expr r) { return binary(Kind::Concat, std::move(l), std::move(r)); }
L2Expr L2Expr::conj(L2Expr l, L2Expr r) { return binary(Kind::And, std::move(l), std::move(r)); }
L2Expr L2Expr::disj(L2Expr l, L2Expr r) { return binary(Kind::Or, std::move(l), std::move(r)); }

std::string L2Expr::str() const {
  switch (kind()) {
    case Kind::Atom:
      return std::string(1, atom_letter());
    case Kind::Concat:
      return "(" + lhs().str() + "." + rhs().str() + ")";
    case Kind::And:
      return "(" + lhs().str() + "&" + rhs().str() + ")";
    case Kind::Or:
      return "(" + lhs().str() + "+" + rhs().str() + ")";
  }
  return "";
}

bool expr_denotes(const L2Expr& e, const Word& w) {
  switch (e.kind()) {
    case L2Expr::Kind::Atom:
      return w.find(e.atom_letter()) != std::string::npos;
    case L2Expr::Kind::Concat:
      for (std::size_t split = 0; split <= w.size(); ++split)
        if (expr_denotes(e.lhs(), w.substr(0, split)) &&
            expr_denotes(e.rhs(), w.substr(split)))
          return true;
      return false;
    case L2Expr::Kind::And:
      return expr_denotes(e.lhs(), w) && expr_denotes(e.rhs(), w);
    case L2Expr::Kind::Or:
      return expr_denotes(e.lhs(), w) || expr_denotes(e.rhs(), w);
  }
  return false;
}

namespace {

std::vector<Word> min_words(std::set<Word> words) {
  std::vector<Word> out;
  for (const Word& w : words) {
    bool dominated = false;
    for (const Word& v : words) {
      if (v != w && subword(v, w)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(w);
  }
  return out; // set iteration keeps the result sorted
}

void merges(const Word& u, const Word& v, std::size_t i, std::size_t j,
            Word& acc, std::set<Word>& out) {
  if (i == u.size()) {
    out.insert(acc + v.substr(j));
    return;
  }
  if (j == v.size()) {
    out.insert(acc + u.substr(i));
    return;
  }
  if (u[i] == v[j]) {
    acc.push_back(u[i]);
    merges(u, v, i + 1, j + 1, acc, out);
    acc.pop_back();
  }
  acc.push_back(u[i]);
  merges(u, v, i + 1, j, acc, out);
  acc.pop_back();
  acc.push_back(v[j]);
  merges(u, v, i, j + 1, acc, out);
  acc.pop_back();
}

} // namespace

std::vector<Word> minimal_common_supersequences(const Word& u, const Word& v) {
  std::set<Word> all;
  Word acc;
  merges(u, v, 0, 0, acc, all);
  return min_words(std::move(all));
}

std::vector<Word> normalize_expr(const L2Expr& e) {
  switch (e.kind()) {
    case L2Expr::Kind::Atom:
      return {Word(1, e.atom_letter())};
    case L2Expr::Kind::Or: {
      std::set<Word> acc;
      for (const Word& w : normalize_expr(e.lhs())) acc.insert(w);
      for (const Word& w : normalize_expr(e.rhs())) acc.insert(w);
      return min_words(std::move(acc));
    }
    case L2Expr::Kind::Concat: {
      std::set<Word> acc;
      for (const Word& a : normalize_expr(e.lhs()))
        for (const Word& b : normalize_expr(e.rhs())) acc.insert(a + b);
      return min_words(std::move(acc));
    }
    case L2Expr::Kind::And: {
      std::set<Word> acc;
      for (const Word& a : normalize_expr(e.lhs()))
        for (const Word& b : normalize_expr(e.rhs()))
          for (Word& w : minimal_common_supersequences(a, b))
            acc.insert(std::move(w));
      return min_words(std::move(acc));
    }
  }
  return {};
}

bool expr_entails(const L2Expr& e1, const L2Expr& e2) {
  auto phi1 = normalize_expr(e1);
  auto phi2 = normalize_expr(e2);
  return set_dominates(phi1, phi2,
                       [](const Word& a, const Word& b) { return subword(a, b); });
}

int LcsModel::state_id(const std::string& name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown state: " + name);
}

int LcsModel::channel_id(const std::string& name) const {
  for (std::size_t i = 0; i < channels.size(); ++i)
    if (channels[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown channel: " + name);
}

bool lcs_entails(const LcsConstraint& c1, const LcsConstraint& c2) {
  if (c1.state != c2.state || c1.words.size() != c2.words.size()) return false;
  for (std::size_t i = 0; i < c1.words.size(); ++i)
    if (!subword(c1.words[i], c2.words[i])) return false;
  return true;
}

std::vector<std::pair<LcsConstraint, std::string>> lcs_pre(
    const LcsConstraint& c, const LcsModel& model) {
  std::vector<std::pair<LcsConstraint, std::string>> raw;
  for (const LcsTransition& t : model.transitions) {
    if (t.to != c.state) continue;
    LcsConstraint p = c;
    p.state = t.from;
    switch (t.op.type) {
      case LcsOp::Type::Nop:
        break;
      case LcsOp::Type::Send: {
        Word& w = p.words[static_cast<std::size_t>(t.op.channel)];
        if (!w.empty() && w.back() == t.op.letter) w.pop_back();
        break;
      }
      case LcsOp::Type::Recv: {
        Word& w = p.words[static_cast<std::size_t>(t.op.channel)];
        w.insert(w.begin(), t.op.letter);
        break;
      }
    }
    raw.emplace_back(std::move(p), t.label);
  }
  // Minimize; keep the lexicographically first label among equals.
  std::vector<LcsConstraint> constraints;
  constraints.reserve(raw.size());
  for (auto& [p, label] : raw) constraints.push_back(p);
  auto kept = minimize(
      constraints, [](const LcsConstraint& a, const LcsConstraint& b) { return lcs_entails(a, b); },
      [](const LcsConstraint& a) { return lcs_canonical_key(a); });
  std::vector<std::pair<LcsConstraint, std::string>> out;
  for (const LcsConstraint& k : kept) {
    std::string best;
    for (const auto& [p, label] : raw)
      if (p == k && (best.empty() || label < best)) best = label;
    out.emplace_back(k, best);
  }
  return out;
}

std::string lcs_canonical_key(const LcsConstraint& c) {
  std::string s = std::to_string(c.state);
  for (const Word& w : c.words) {
    s += "|";
    s += w;
  }
  return s;
}

} // namespace wsts
