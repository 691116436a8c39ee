#include "wsts/gallery.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "wsts/bound.hpp"
#include "wsts/qo.hpp"

namespace wsts {

bool b_entails(const VectorConstraint& b1, const VectorConstraint& b2) {
  if (b1.size() != b2.size())
    throw DimensionMismatch("b_entails: dimension mismatch");
  for (std::size_t i = 0; i < b1.size(); ++i)
    if (b1[i] > b2[i]) return false;
  return true;
}

std::string vector_key(const VectorConstraint& v) {
  std::string s;
  for (auto x : v) {
    s += std::to_string(x);
    s += ",";
  }
  return s;
}

AdClass AdConstraint::cls() const {
  bool unary = true;
  for (const AdAtom& a : atoms)
    if (a.vars.size() != 1) unary = false;
  if (unary) return AdClass::NA;
  std::set<int> seen;
  for (const AdAtom& a : atoms)
    for (int v : a.vars)
      if (!seen.insert(v).second) return AdClass::AD;
  return AdClass::DV;
}

namespace {

void compositions(std::int64_t total, std::size_t parts,
                  std::vector<std::int64_t>& acc,
                  std::vector<std::vector<std::int64_t>>& out) {
  if (parts == 1) {
    acc.push_back(total);
    out.push_back(acc);
    acc.pop_back();
    return;
  }
  for (std::int64_t v = 0; v <= total; ++v) {
    acc.push_back(v);
    compositions(total - v, parts - 1, acc, out);
    acc.pop_back();
  }
}

} // namespace

std::vector<VectorConstraint> expand_ad_to_b(const AdConstraint& c, int n) {
  for (const AdAtom& a : c.atoms) {
    std::set<int> distinct(a.vars.begin(), a.vars.end());
    if (distinct.size() != a.vars.size())
      throw std::invalid_argument("ad atom repeats a variable");
    for (int v : a.vars)
      if (v < 1 || v > n)
        throw std::invalid_argument("ad atom variable out of range");
    if (a.bound < 0) throw std::invalid_argument("ad atom bound negative");
  }

  std::vector<VectorConstraint> acc{VectorConstraint(static_cast<std::size_t>(n), 0)};
  for (const AdAtom& a : c.atoms) {
    std::vector<std::vector<std::int64_t>> parts;
    std::vector<std::int64_t> tmp;
    compositions(a.bound, a.vars.size(), tmp, parts);
    std::vector<VectorConstraint> next;
    for (const VectorConstraint& base : acc)
      for (const auto& comp : parts) {
        VectorConstraint v = base;
        for (std::size_t k = 0; k < a.vars.size(); ++k) {
          auto& slot = v[static_cast<std::size_t>(a.vars[k] - 1)];
          slot = std::max(slot, comp[k]);
        }
        next.push_back(std::move(v));
      }
    acc = std::move(next);
  }
  auto kept = minimize(
      acc, [](const VectorConstraint& a, const VectorConstraint& b) { return b_entails(a, b); },
      [](const VectorConstraint& a) { return vector_key(a); });
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return kept;
}

namespace {

// gamma(u)/phi(u) for u ranging over X (ids 0..n-1) then C.
struct Universe {
  const IraContext& ctx;
  std::size_t size() const {
    return static_cast<std::size_t>(ctx.num_vars) +
           static_cast<std::size_t>(ctx.cmax - ctx.cmin + 1);
  }
  std::int64_t value(const std::vector<std::int64_t>& vals, std::size_t u) const {
    if (u < static_cast<std::size_t>(ctx.num_vars)) return vals[u];
    return ctx.cmin + static_cast<std::int64_t>(u) - ctx.num_vars;
  }
};

} // namespace

bool s1_satisfies(const IraConfig& gamma, const S1Constraint& phi,
                  const IraContext& ctx) {
  if (static_cast<int>(gamma.size()) != ctx.num_vars ||
      static_cast<int>(phi.values.size()) != ctx.num_vars)
    throw std::invalid_argument("s1_satisfies: arity mismatch");
  Universe uni{ctx};
  std::size_t n = uni.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::int64_t gx = uni.value(gamma, x), gy = uni.value(gamma, y);
      std::int64_t px = uni.value(phi.values, x), py = uni.value(phi.values, y);
      if ((gx <= gy) != (px <= py)) return false;
      if (px <= py && !(py - px <= gy - gx)) return false;
    }
  return true;
}

bool s1_entails(const S1Constraint& phi1, const S1Constraint& phi2,
                const IraContext& ctx) {
  return s1_satisfies(phi2.values, phi1, ctx);
}

std::string s1_key(const S1Constraint& phi) {
  std::string s;
  for (auto v : phi.values) {
    s += std::to_string(v);
    s += ",";
  }
  return s;
}

bool s2_satisfies(const IraConfig& gamma, const S2Constraint& psi) {
  for (const S2Atom& a : psi.atoms) {
    std::int64_t x = gamma.at(static_cast<std::size_t>(a.x - 1));
    switch (a.kind) {
      case S2Atom::Kind::LowerBound:
        if (!(a.c <= x)) return false;
        break;
      case S2Atom::Kind::UpperBound:
        if (!(x <= a.c)) return false;
        break;
      case S2Atom::Kind::Gap: {
        std::int64_t y = gamma.at(static_cast<std::size_t>(a.y - 1));
        if (!(a.c <= y - x)) return false;
        break;
      }
    }
  }
  return true;
}

namespace {

// [[phi]] as a difference-bound system over X plus a zero reference;
// constants are offsets of the reference.  Returns the closed matrix, or
// nullopt when phi itself is degenerate (never happens for integer phi).
std::vector<Bound> s1_denotation_dbm(const S1Constraint& phi,
                                     const IraContext& ctx) {
  Universe uni{ctx};
  std::size_t nvars = static_cast<std::size_t>(ctx.num_vars);
  std::size_t n = nvars + 1; // index 0 = reference
  std::vector<Bound> d(n * n, Bound::inf());
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = Bound::zero();

  auto tighten = [&](std::size_t i, std::size_t j, std::int64_t c) {
    Bound nb = Bound::nonstrict(c);
    if (nb < d[i * n + j]) d[i * n + j] = nb;
  };

  std::size_t total = uni.size();
  for (std::size_t u = 0; u < total; ++u)
    for (std::size_t v = 0; v < total; ++v) {
      std::int64_t pu = uni.value(phi.values, u), pv = uni.value(phi.values, v);
      if (pu > pv) continue;
      std::int64_t gap = pv - pu; // gamma(v) - gamma(u) >= gap
      bool uvar = u < nvars, vvar = v < nvars;
      if (uvar && vvar) {
        tighten(u + 1, v + 1, -gap); // x_u - x_v <= -gap
      } else if (!uvar && vvar) {
        std::int64_t cu = uni.value(phi.values, u);
        tighten(0, v + 1, -gap - cu); // -x_v <= -(gap + c_u)
      } else if (uvar && !vvar) {
        std::int64_t cv = uni.value(phi.values, v);
        tighten(u + 1, 0, cv - gap); // x_u <= c_v - gap
      }
    }

  // Close (integer weights, non-strict only).
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      Bound dik = d[i * n + k];
      if (dik.is_inf()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        Bound cand = dik + d[k * n + j];
        if (cand < d[i * n + j]) d[i * n + j] = cand;
      }
    }
  return d;
}

// Every configuration sparser than phi satisfies psi.
bool s1_sound_for(const S1Constraint& phi, const S2Constraint& psi,
                  const IraContext& ctx) {
  std::size_t n = static_cast<std::size_t>(ctx.num_vars) + 1;
  std::vector<Bound> d = s1_denotation_dbm(phi, ctx);
  auto implied = [&](std::size_t i, std::size_t j, std::int64_t c) {
    Bound b = d[i * n + j];
    return !b.is_inf() && b.value() <= c;
  };
  for (const S2Atom& a : psi.atoms) {
    std::size_t x = static_cast<std::size_t>(a.x);
    switch (a.kind) {
      case S2Atom::Kind::LowerBound: // gamma(x) >= c  <=>  -x <= -c
        if (!implied(0, x, -a.c)) return false;
        break;
      case S2Atom::Kind::UpperBound: // x <= c
        if (!implied(x, 0, a.c)) return false;
        break;
      case S2Atom::Kind::Gap: // y - x >= c  <=>  x - y <= -c
        if (!implied(x, static_cast<std::size_t>(a.y), -a.c)) return false;
        break;
    }
  }
  return true;
}

} // namespace

std::vector<S1Constraint> expand_s2_to_s1(const S2Constraint& psi,
                                          const IraContext& ctx,
                                          std::size_t candidate_limit) {
  for (const S2Atom& a : psi.atoms) {
    if (a.x < 1 || a.x > ctx.num_vars ||
        (a.kind == S2Atom::Kind::Gap && (a.y < 1 || a.y > ctx.num_vars)))
      throw std::invalid_argument("s2 atom variable out of range");
    // The union of sparser-than constraints can only express sets closed
    // under the sparser order; these are the atom shapes that stay
    // closed.
    if (a.kind == S2Atom::Kind::LowerBound && a.c < ctx.cmin)
      throw std::invalid_argument("s2 lower bound below cmin is not expressible");
    if (a.kind == S2Atom::Kind::UpperBound && a.c > ctx.cmax)
      throw std::invalid_argument("s2 upper bound above cmax is not expressible");
    if (a.kind == S2Atom::Kind::Gap && a.c < 0)
      throw std::invalid_argument("s2 gap bound must be nonnegative");
  }

  // Window wide enough that every minimal sound constraint has a
  // representative inside: beyond it only orders matter, and gaps are
  // compressed to the largest distance any atom can distinguish.
  std::int64_t lo = ctx.cmin, hi = ctx.cmax, gap_need = 1;
  for (const S2Atom& a : psi.atoms) {
    lo = std::min(lo, a.c);
    hi = std::max(hi, a.c);
    if (a.kind == S2Atom::Kind::Gap) gap_need = std::max(gap_need, a.c);
    gap_need = std::max({gap_need, a.c - ctx.cmax, ctx.cmin - a.c});
  }
  std::int64_t margin = static_cast<std::int64_t>(ctx.num_vars) * (gap_need + 1) + 1;
  lo -= margin;
  hi += margin;

  std::size_t window = static_cast<std::size_t>(hi - lo + 1);
  std::size_t count = 1;
  for (int i = 0; i < ctx.num_vars; ++i) {
    count *= window;
    if (count > candidate_limit)
      throw SizeLimit("expand_s2_to_s1: candidate space exceeds limit");
  }

  // Group sound candidates by order pattern over X u C; constraints with
  // different patterns are never comparable, so minimization runs per
  // group.
  Universe uni{ctx};
  auto pattern_key = [&](const S1Constraint& phi) {
    std::string k;
    std::size_t total = uni.size();
    for (std::size_t u = 0; u < total; ++u)
      for (std::size_t v = u + 1; v < total; ++v) {
        std::int64_t pu = uni.value(phi.values, u), pv = uni.value(phi.values, v);
        k += pu < pv ? '<' : (pu == pv ? '=' : '>');
      }
    return k;
  };

  std::map<std::string, std::vector<S1Constraint>> groups;
  std::vector<std::int64_t> vals(static_cast<std::size_t>(ctx.num_vars), lo);
  while (true) {
    S1Constraint phi{vals};
    if (s1_sound_for(phi, psi, ctx)) groups[pattern_key(phi)].push_back(phi);
    int k = 0;
    while (k < ctx.num_vars && ++vals[static_cast<std::size_t>(k)] > hi) {
      vals[static_cast<std::size_t>(k)] = lo;
      ++k;
    }
    if (k == ctx.num_vars) break;
  }

  std::vector<S1Constraint> kept;
  for (auto& [pat, group] : groups) {
    auto mins = minimize(
        group,
        [&](const S1Constraint& a, const S1Constraint& b) { return s1_entails(a, b, ctx); },
        [](const S1Constraint& a) { return s1_key(a); });
    kept.insert(kept.end(), mins.begin(), mins.end());
  }
  std::sort(kept.begin(), kept.end(),
            [](const S1Constraint& a, const S1Constraint& b) { return a.values < b.values; });
  return kept;
}

bool s2_entails(const S2Constraint& psi1, const S2Constraint& psi2,
                const IraContext& ctx, std::size_t candidate_limit) {
  auto e1 = expand_s2_to_s1(psi1, ctx, candidate_limit);
  auto e2 = expand_s2_to_s1(psi2, ctx, candidate_limit);
  return set_dominates(e1, e2, [&](const S1Constraint& a, const S1Constraint& b) {
    return s1_entails(a, b, ctx);
  });
}

} // namespace wsts
