#include "wsts/tpn.hpp"

#include <algorithm>
#include <stdexcept>

namespace wsts {

std::string Interval::str() const {
  std::string s = "[" + std::to_string(lo) + ",";
  s += hi ? std::to_string(*hi) : "inf";
  return s + "]";
}

PlaceId Tpn::place_id(const std::string& name) const {
  for (std::size_t i = 0; i < places.size(); ++i)
    if (places[i] == name) return static_cast<PlaceId>(i);
  throw std::invalid_argument("unknown place: " + name);
}

std::int64_t Tpn::cmax() const {
  std::int64_t c = 0;
  for (const auto& t : transitions) {
    for (const auto* arcs : {&t.in, &t.out})
      for (const auto& a : *arcs) {
        c = std::max(c, a.interval.lo);
        if (a.interval.hi) c = std::max(c, *a.interval.hi);
      }
  }
  return c;
}

Marking make_marking(std::vector<Token> tokens) {
  std::sort(tokens.begin(), tokens.end());
  return tokens;
}

bool marking_leq(const Marking& a, const Marking& b) {
  // Both sorted: sweep b consuming matching tokens of a.
  std::size_t j = 0;
  for (const Token& t : a) {
    while (j < b.size() && b[j] < t) ++j;
    if (j == b.size() || !(b[j] == t)) return false;
    ++j;
  }
  return true;
}

Marking delay_successor(const Marking& m, Rational delta) {
  if (delta < Rational(0))
    throw std::invalid_argument("delay_successor: negative delay");
  Marking out;
  out.reserve(m.size());
  for (const Token& t : m) out.push_back({t.place, t.age + delta});
  return out; // ages shift uniformly, order preserved
}

namespace {

// Choose, per input arc, a distinct token index of m whose place and age
// match; then produce output tokens over the age choices.
void choose_inputs(const Marking& m, const TpnTransition& t,
                   const std::vector<Rational>& age_choices, std::size_t arc,
                   std::vector<char>& used, std::set<Marking>& out_set) {
  if (arc == t.in.size()) {
    Marking rest;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (!used[i]) rest.push_back(m[i]);

    // Cross product of grid ages for the output arcs.
    std::vector<std::vector<Rational>> options;
    for (const Arc& a : t.out) {
      std::vector<Rational> ages;
      for (Rational x : age_choices)
        if (a.interval.contains(x)) ages.push_back(x);
      if (ages.empty()) return; // no producible age on the grid
      options.push_back(std::move(ages));
    }
    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
      Marking m2 = rest;
      for (std::size_t k = 0; k < options.size(); ++k)
        m2.push_back({t.out[k].place, options[k][pick[k]]});
      out_set.insert(make_marking(std::move(m2)));
      std::size_t k = 0;
      while (k < options.size() && ++pick[k] == options[k].size()) {
        pick[k] = 0;
        ++k;
      }
      if (k == options.size()) break;
    }
    return;
  }
  const Arc& a = t.in[arc];
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (used[i] || m[i].place != a.place || !a.interval.contains(m[i].age))
      continue;
    used[i] = 1;
    choose_inputs(m, t, age_choices, arc + 1, used, out_set);
    used[i] = 0;
  }
}

} // namespace

std::set<Marking> discrete_successors(const Marking& m, const TpnTransition& t,
                                      const std::vector<Rational>& age_choices) {
  std::set<Marking> out;
  std::vector<char> used(m.size(), 0);
  choose_inputs(m, t, age_choices, 0, used, out);
  return out;
}

std::set<Marking> grid_successors(const Marking& m, const Tpn& net,
                                  std::int64_t denom, std::int64_t age_cap) {
  if (denom <= 0) throw std::invalid_argument("grid_successors: denom <= 0");
  for (const Token& t : m)
    if (denom % t.age.den() != 0)
      throw std::invalid_argument("grid_successors: age off the grid");

  Rational clamp_at(net.cmax() + 1);
  auto clamp = [&](Marking mk) {
    for (Token& t : mk)
      if (t.age > clamp_at) t.age = clamp_at;
    return make_marking(std::move(mk));
  };

  std::vector<Rational> grid;
  for (std::int64_t k = 0; k <= age_cap * denom; ++k)
    grid.push_back(Rational(k, denom));

  std::set<Marking> out;
  for (Rational delta : grid) out.insert(clamp(delay_successor(m, delta)));
  for (const auto& t : net.transitions)
    for (const Marking& m2 : discrete_successors(m, t, grid))
      out.insert(clamp(m2));
  return out;
}

} // namespace wsts
