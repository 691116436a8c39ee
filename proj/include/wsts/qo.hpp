#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace wsts {

// Word embedding u <=* v: a strictly monotone injection h with
// leq(u[j], v[h(j)]).  The greedy left-to-right scan is exact for
// subsequence embedding.
template <class T, class Leq>
bool word_embeds(std::span<const T> u, std::span<const T> v, Leq&& leq) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < v.size() && j < u.size(); ++i) {
    if (leq(u[j], v[i])) ++j;
  }
  return j == u.size();
}

template <class T, class Leq>
bool word_embeds(const std::vector<T>& u, const std::vector<T>& v, Leq&& leq) {
  return word_embeds(std::span<const T>(u), std::span<const T>(v),
                     std::forward<Leq>(leq));
}

// Multiset embedding u <=° v: an injection (not necessarily monotone)
// with leq(u[j], v[h(j)]).  Reduced to maximum bipartite matching;
// the embedding exists iff every element of u is matched.
template <class T, class Leq>
bool multiset_embeds(std::span<const T> u, std::span<const T> v, Leq&& leq) {
  if (u.size() > v.size()) return false;
  std::vector<int> match_of_v(v.size(), -1);
  std::vector<char> visited;

  std::function<bool(std::size_t)> augment = [&](std::size_t i) -> bool {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (visited[k] || !leq(u[i], v[k])) continue;
      visited[k] = 1;
      if (match_of_v[k] < 0 || augment(static_cast<std::size_t>(match_of_v[k]))) {
        match_of_v[k] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };

  for (std::size_t i = 0; i < u.size(); ++i) {
    visited.assign(v.size(), 0);
    if (!augment(i)) return false;
  }
  return true;
}

template <class T, class Leq>
bool multiset_embeds(const std::vector<T>& u, const std::vector<T>& v,
                     Leq&& leq) {
  return multiset_embeds(std::span<const T>(u), std::span<const T>(v),
                         std::forward<Leq>(leq));
}

// Set domination Phi1 ⊑ Phi2: every phi2 is entailed by some phi1.
// entail(a, b) means [[b]] ⊆ [[a]].
template <class C, class Entail>
bool set_dominates(const std::vector<C>& phi1, const std::vector<C>& phi2,
                   Entail&& entail) {
  for (const C& c2 : phi2) {
    bool covered = false;
    for (const C& c1 : phi1) {
      if (entail(c1, c2)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

// Minimal generator set: keep exactly the constraints not strictly
// dominated by another; mutual entailment keeps the smaller canonical
// key so fixpoints stay deterministic.
template <class C, class Entail, class Key>
std::vector<C> minimize(const std::vector<C>& phi, Entail&& entail, Key&& key) {
  std::vector<C> kept;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    bool drop = false;
    auto ki = key(phi[i]);
    for (std::size_t j = 0; j < phi.size() && !drop; ++j) {
      if (i == j) continue;
      if (!entail(phi[j], phi[i])) continue;
      if (!entail(phi[i], phi[j])) {
        drop = true; // strictly dominated
      } else {
        auto kj = key(phi[j]);
        if (kj < ki || (kj == ki && j < i)) drop = true;
      }
    }
    if (!drop) kept.push_back(phi[i]);
  }
  return kept;
}

// ---------------------------------------------------------------------------
// Rado's structure: wqo whose disjunctive closure is not wqo.  Used as a
// test fixture for the ordering combinators.
//
// Over X = {<a,b> : a < b}, the base constraint phi_{a,b} denotes
// {<c,d> : c > b, or c = a and d >= b}; psi_j = phi_{0,j} | ... | phi_{j-1,j}.

struct RadoConstraint {
  bool disjunctive = false;
  std::int64_t a = 0; // phi_{a,b}
  std::int64_t b = 0;
  std::int64_t j = 0; // psi_j

  static RadoConstraint phi(std::int64_t a, std::int64_t b);
  static RadoConstraint psi(std::int64_t j);

  std::int64_t max_constant() const { return disjunctive ? j : b; }
  bool contains(std::int64_t c, std::int64_t d) const;
  std::string str() const;
};

// [[c2]] ⊆ [[c1]], decided over the finite grid c < d <= max+2; beyond
// their largest constant both membership conditions are constant in each
// coordinate, so the grid is a complete witness set.
bool rado_entails(const RadoConstraint& c1, const RadoConstraint& c2,
                  std::int64_t index_limit = 64);

} // namespace wsts
