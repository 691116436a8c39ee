#include "wsts/ezone.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "wsts/qo.hpp"

namespace wsts {

namespace {

// Square Bound matrix helpers shared by normalization and entailment.
using Mat = std::vector<Bound>;

std::size_t at(std::size_t n, std::size_t i, std::size_t j) { return i * n + j; }

void close(Mat& d, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) d[at(n, i, i)] = Bound::zero();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      Bound dik = d[at(n, i, k)];
      if (dik.is_inf()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        Bound cand = dik + d[at(n, k, j)];
        if (cand < d[at(n, i, j)]) d[at(n, i, j)] = cand;
      }
    }
}

void clamp_nonneg(Mat& d, std::size_t n) {
  for (std::size_t j = 1; j < n; ++j)
    d[at(n, 0, j)] = min(d[at(n, 0, j)], Bound::zero());
}

bool mat_consistent(const Mat& d, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (d[at(n, i, i)] < Bound::zero()) return false;
  return true;
}

Mat zone_mat(const Zone& z) {
  std::size_t n = static_cast<std::size_t>(z.token_count()) + 1;
  Mat d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[at(n, i, j)] = z.d(static_cast<int>(i), static_cast<int>(j));
  return d;
}

Zone from_mat(const Zone& z, const Mat& d) {
  std::size_t n = static_cast<std::size_t>(z.token_count()) + 1;
  std::vector<Bound> dbm(d.begin(), d.begin() + static_cast<long>(n * n));
  return Zone(z.placing(), dbm);
}

Bound upper_of(const Interval& intrv) {
  return intrv.hi ? Bound::nonstrict(*intrv.hi) : Bound::inf();
}
Bound lower_of(const Interval& intrv) { return Bound::nonstrict(-intrv.lo); }

void require_normal(const Zone& z, const char* who) {
  if (!is_normal(z))
    throw std::invalid_argument(std::string(who) + ": zone not normalized");
}

} // namespace

Zone::Zone(std::vector<PlaceId> placing, std::vector<Bound> dbm)
    : placing_(std::move(placing)), dbm_(std::move(dbm)) {
  std::size_t n = placing_.size() + 1;
  if (dbm_.size() != n * n)
    throw std::invalid_argument("Zone: dbm size does not match token count");
}

Zone normalize(const Zone& z) {
  std::size_t n = static_cast<std::size_t>(z.token_count()) + 1;
  Mat d = zone_mat(z);
  clamp_nonneg(d, n);
  close(d, n);
  if (!mat_consistent(d, n)) {
    // Canonical empty form: closure is not well defined across a
    // negative cycle, so pin one shape per placing.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[at(n, i, j)] = (j == 0 && i > 0) ? Bound::nonstrict(-1) : Bound::zero();
  }
  return from_mat(z, d);
}

bool is_normal(const Zone& z) {
  std::size_t n = static_cast<std::size_t>(z.token_count()) + 1;
  Mat d = zone_mat(z);
  for (std::size_t j = 1; j < n; ++j)
    if (Bound::zero() < d[at(n, 0, j)]) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (!(d[at(n, i, i)] == Bound::zero())) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        if (d[at(n, i, k)] + d[at(n, k, j)] < d[at(n, i, j)]) return false;
  return true;
}

bool is_consistent(const Zone& z) {
  std::size_t n = static_cast<std::size_t>(z.token_count()) + 1;
  Mat d = zone_mat(z);
  clamp_nonneg(d, n);
  close(d, n);
  return mat_consistent(d, n);
}

std::optional<Witness> member(const Marking& m, const Zone& z) {
  int mz = z.token_count();
  if (static_cast<std::size_t>(mz) > m.size()) return std::nullopt;

  std::vector<std::size_t> pick(static_cast<std::size_t>(mz));
  std::vector<char> used(m.size(), 0);

  std::function<bool(int)> search = [&](int i) -> bool {
    if (i > mz) return true;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (used[k] || m[k].place != z.place_of(i)) continue;
      Rational x = m[k].age;
      if (!x.le(z.d(i, 0)) || !x.ge_neg(z.d(0, i))) continue;
      bool ok = true;
      for (int j = 1; j < i && ok; ++j) {
        Rational y = m[pick[static_cast<std::size_t>(j - 1)]].age;
        // x_j - x_i <= D(j,i) and x_i - x_j <= D(i,j)
        ok = (y - x).le(z.d(j, i)) && (x - y).le(z.d(i, j));
      }
      if (!ok) continue;
      pick[static_cast<std::size_t>(i - 1)] = k;
      used[k] = 1;
      if (search(i + 1)) return true;
      used[k] = 0;
    }
    return false;
  };

  if (!search(1)) return std::nullopt;
  return Witness{pick};
}

Zone conjunction(const Zone& z, const Interval& intrv, int i) {
  if (i < 1 || i > z.token_count())
    throw std::invalid_argument("conjunction: token index out of range");
  Zone out = z;
  out.set_d(i, 0, min(upper_of(intrv), z.d(i, 0)));
  out.set_d(0, i, min(lower_of(intrv), z.d(0, i)));
  return out;
}

Zone addition(const Zone& z, PlaceId p, const Interval& intrv) {
  int m = z.token_count();
  std::vector<PlaceId> placing = z.placing();
  placing.push_back(p);
  std::size_t n = static_cast<std::size_t>(m) + 2;
  std::vector<Bound> dbm(n * n, Bound::inf());
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j)
      dbm[at(n, static_cast<std::size_t>(i), static_cast<std::size_t>(j))] =
          z.d(i, j);
  dbm[at(n, n - 1, 0)] = upper_of(intrv);
  dbm[at(n, 0, n - 1)] = lower_of(intrv);
  dbm[at(n, n - 1, n - 1)] = Bound::zero();
  return Zone(std::move(placing), std::move(dbm));
}

Zone abstraction(const Zone& z, int i) {
  int m = z.token_count();
  if (i < 1 || i > m)
    throw std::invalid_argument("abstraction: token index out of range");
  std::vector<PlaceId> placing;
  for (int j = 1; j <= m; ++j)
    if (j != i) placing.push_back(z.place_of(j));
  std::size_t n = static_cast<std::size_t>(m); // new side length m-1+1
  std::vector<Bound> dbm(n * n);
  auto old_index = [&](std::size_t k) {
    return static_cast<int>(k < static_cast<std::size_t>(i) ? k : k + 1);
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      dbm[at(n, a, b)] = z.d(old_index(a), old_index(b));
  return Zone(std::move(placing), std::move(dbm));
}

Zone pre_time(const Zone& z) {
  require_normal(z, "pre_time");
  Zone out = z;
  for (int i = 1; i <= z.token_count(); ++i) out.set_d(0, i, Bound::zero());
  return out;
}

std::vector<Zone> pre_discrete(const Zone& z, const TpnTransition& t) {
  require_normal(z, "pre_discrete");
  int m = z.token_count();
  std::size_t n_out = t.out.size();

  std::vector<Zone> results;
  std::vector<int> match(static_cast<std::size_t>(m) + 1, -1); // token -> out arc
  std::vector<char> arc_used(n_out, 0);

  auto emit = [&]() {
    Zone zc = z;
    for (int i = 1; i <= m; ++i)
      if (match[static_cast<std::size_t>(i)] >= 0)
        zc = conjunction(
            zc, t.out[static_cast<std::size_t>(match[static_cast<std::size_t>(i)])].interval,
            i);
    zc = normalize(zc);
    if (!is_consistent(zc)) return;
    // Project matched tokens out of the normalized conjunction so the
    // constraints they induce on the surviving tokens are kept.
    for (int i = m; i >= 1; --i)
      if (match[static_cast<std::size_t>(i)] >= 0) zc = abstraction(zc, i);
    for (const Arc& a : t.in) zc = addition(zc, a.place, a.interval);
    zc = normalize(zc);
    if (is_consistent(zc)) results.push_back(std::move(zc));
  };

  std::function<void(int)> rec = [&](int i) {
    if (i > m) {
      emit();
      return;
    }
    match[static_cast<std::size_t>(i)] = -1;
    rec(i + 1);
    for (std::size_t k = 0; k < n_out; ++k) {
      if (arc_used[k] || t.out[k].place != z.place_of(i)) continue;
      arc_used[k] = 1;
      match[static_cast<std::size_t>(i)] = static_cast<int>(k);
      rec(i + 1);
      arc_used[k] = 0;
    }
    match[static_cast<std::size_t>(i)] = -1;
  };
  rec(1);

  return minimize(
      results, [](const Zone& a, const Zone& b) { return zone_entails(a, b); },
      [](const Zone& a) { return canonical_key(a); });
}

namespace {

// Swapping tokens i and j leaves the zone unchanged.
bool tokens_interchangeable(const Zone& z, int i, int j) {
  if (z.place_of(i) != z.place_of(j)) return false;
  int m = z.token_count();
  auto sigma = [&](int k) { return k == i ? j : (k == j ? i : k); };
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= m; ++b)
      if (!(z.d(sigma(a), sigma(b)) == z.d(a, b))) return false;
  return true;
}

// Enumerates placing-compatible injections of z1's tokens into z2's, up
// to z1-side token symmetry: injections differing by a swap of
// interchangeable z1 tokens pull back to the same constraint matrix, so
// one representative suffices.  Stops early when fn returns true.
bool for_each_witness(const Zone& z1, const Zone& z2,
                      const std::function<bool(const std::vector<int>&)>& fn) {
  int m1 = z1.token_count(), m2 = z2.token_count();
  std::vector<std::vector<int>> classes;
  for (int i = 1; i <= m1; ++i) {
    bool joined = false;
    for (auto& cls : classes)
      if (tokens_interchangeable(z1, cls[0], i)) {
        cls.push_back(i);
        joined = true;
        break;
      }
    if (!joined) classes.push_back({i});
  }

  std::vector<int> h(static_cast<std::size_t>(m1) + 1, 0);
  std::vector<char> used(static_cast<std::size_t>(m2) + 1, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t ci) -> bool {
    if (ci == classes.size()) return fn(h);
    const std::vector<int>& cls = classes[ci];
    PlaceId place = z1.place_of(cls[0]);
    // Class members take an increasing sequence of z2 tokens.
    std::function<bool(std::size_t, int)> pick = [&](std::size_t k, int from) -> bool {
      if (k == cls.size()) return rec(ci + 1);
      for (int t = from; t <= m2; ++t) {
        if (used[static_cast<std::size_t>(t)] || z2.place_of(t) != place) continue;
        used[static_cast<std::size_t>(t)] = 1;
        h[static_cast<std::size_t>(cls[k])] = t;
        if (pick(k + 1, t + 1)) return true;
        used[static_cast<std::size_t>(t)] = 0;
      }
      return false;
    };
    return pick(0, 1);
  };
  return rec(0);
}

} // namespace

bool zone_entails(const Zone& z1, const Zone& z2) {
  require_normal(z1, "zone_entails");
  require_normal(z2, "zone_entails");
  int m1 = z1.token_count(), m2 = z2.token_count();
  if (m1 > m2) return false;

  // Fast path: one witness whose pulled-back bounds are all implied by
  // the normalized entries of z2.
  bool any_witness = false;
  bool fast = for_each_witness(z1, z2, [&](const std::vector<int>& h) {
    any_witness = true;
    auto img = [&](int i) { return i == 0 ? 0 : h[static_cast<std::size_t>(i)]; };
    for (int j = 0; j <= m1; ++j)
      for (int i = 0; i <= m1; ++i)
        if (i != j && !(z2.d(img(j), img(i)) <= z1.d(j, i))) return false;
    return true;
  });
  if (fast) return true;
  if (!any_witness) return false;

  std::vector<std::vector<int>> hs;
  for_each_witness(z1, z2, [&](const std::vector<int>& h) {
    hs.push_back(h);
    return false;
  });

  // Exact path: subtract each pulled-back constraint set from z2's zone;
  // entailment holds iff nothing remains.
  std::size_t n = static_cast<std::size_t>(m2) + 1;
  std::vector<Mat> pieces{zone_mat(z2)};

  for (const auto& h : hs) {
    auto img = [&](int i) { return i == 0 ? 0 : h[static_cast<std::size_t>(i)]; };
    // Finite atoms of the pulled-back constraint conjunction.
    struct Atom {
      std::size_t a, b;
      Bound bound;
    };
    std::vector<Atom> atoms;
    for (int j = 0; j <= m1; ++j)
      for (int i = 0; i <= m1; ++i) {
        if (i == j) continue;
        Bound b = z1.d(j, i);
        if (!b.is_inf())
          atoms.push_back({static_cast<std::size_t>(img(j)),
                           static_cast<std::size_t>(img(i)), b});
      }

    std::vector<Mat> next;
    for (Mat& piece : pieces) {
      Mat cur = piece;
      for (const Atom& atom : atoms) {
        // Split off the part violating this atom.
        Mat q = cur;
        Bound neg = atom.bound.negated(); // x_b - x_a <= neg
        q[at(n, atom.b, atom.a)] = min(q[at(n, atom.b, atom.a)], neg);
        close(q, n);
        if (mat_consistent(q, n)) next.push_back(std::move(q));
        // Keep going inside the part satisfying it.
        cur[at(n, atom.a, atom.b)] = min(cur[at(n, atom.a, atom.b)], atom.bound);
        close(cur, n);
        if (!mat_consistent(cur, n)) break;
      }
      // A piece surviving every atom lies inside this pullback: covered.
    }
    pieces = std::move(next);
    if (pieces.empty()) return true;
  }
  return pieces.empty();
}

bool uniform_init_satisfiable(const Zone& z, const UniformInitSpec& spec) {
  std::map<PlaceId, std::int64_t> need;
  for (int i = 1; i <= z.token_count(); ++i) ++need[z.place_of(i)];
  for (const auto& [place, cnt] : need) {
    auto it = spec.places.find(place);
    if (it == spec.places.end()) return false;
    if (it->second.count && *it->second.count < cnt) return false;
  }
  Zone zc = z;
  for (int i = 1; i <= z.token_count(); ++i) {
    std::int64_t age = spec.places.at(z.place_of(i)).age;
    zc = conjunction(zc, Interval{age, age}, i);
  }
  return is_consistent(zc);
}

std::string canonical_key(const Zone& z) {
  std::string s = std::to_string(z.token_count());
  s += "|";
  for (PlaceId p : z.placing()) {
    s += std::to_string(p);
    s += ",";
  }
  s += "|";
  for (int i = 0; i <= z.token_count(); ++i)
    for (int j = 0; j <= z.token_count(); ++j) {
      s += z.d(i, j).str();
      s += ";";
    }
  return s;
}

} // namespace wsts
