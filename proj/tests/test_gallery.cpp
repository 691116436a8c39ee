#include <doctest.h>

#include <functional>

#include "oracles.hpp"
#include "wsts/gallery.hpp"

using namespace wsts;

namespace {

// All configurations over a grid window, applied to fn.
void for_grid(int vars, std::int64_t lo, std::int64_t hi,
              const std::function<void(const IraConfig&)>& fn) {
  IraConfig g(static_cast<std::size_t>(vars), lo);
  for (;;) {
    fn(g);
    int k = 0;
    while (k < vars && ++g[static_cast<std::size_t>(k)] > hi) {
      g[static_cast<std::size_t>(k)] = lo;
      ++k;
    }
    if (k == vars) break;
  }
}

bool grid_s1_inclusion(const S1Constraint& phi1, const S1Constraint& phi2,
                       const IraContext& ctx, std::int64_t lo, std::int64_t hi) {
  bool incl = true;
  for_grid(ctx.num_vars, lo, hi, [&](const IraConfig& g) {
    if (incl && s1_satisfies(g, phi2, ctx) && !s1_satisfies(g, phi1, ctx))
      incl = false;
  });
  return incl;
}

// Union of S1 denotations equals [[psi]] over the grid window.
bool grid_expansion_exact(const std::vector<S1Constraint>& expansion,
                          const S2Constraint& psi, const IraContext& ctx,
                          std::int64_t lo, std::int64_t hi) {
  bool exact = true;
  for_grid(ctx.num_vars, lo, hi, [&](const IraConfig& g) {
    if (!exact) return;
    bool in_psi = s2_satisfies(g, psi);
    bool in_union = false;
    for (const S1Constraint& phi : expansion)
      if (s1_satisfies(g, phi, ctx)) {
        in_union = true;
        break;
      }
    if (in_psi != in_union) exact = false;
  });
  return exact;
}

} // namespace

TEST_CASE("vector constraint entailment") {
  CHECK(b_entails({1, 0, 2}, {1, 0, 2}));
  CHECK(b_entails({1, 0, 2}, {2, 0, 2}));
  CHECK_FALSE(b_entails({2, 0, 2}, {1, 0, 2}));
  CHECK_THROWS_AS(b_entails({1}, {1, 2}), DimensionMismatch);

  SUBCASE("matches denotation inclusion on a grid") {
    oracles::Rng rng(0x51);
    for (int it = 0; it < 200; ++it) {
      int n = static_cast<int>(rng.upto(3)) + 1;
      VectorConstraint b1, b2;
      for (int i = 0; i < n; ++i) {
        b1.push_back(rng.upto(3));
        b2.push_back(rng.upto(3));
      }
      bool incl = true;
      std::function<void(VectorConstraint&)> walk = [&](VectorConstraint& a) {
        if (static_cast<int>(a.size()) == n) {
          bool in2 = true, in1 = true;
          for (int i = 0; i < n; ++i) {
            in2 = in2 && b2[static_cast<std::size_t>(i)] <= a[static_cast<std::size_t>(i)];
            in1 = in1 && b1[static_cast<std::size_t>(i)] <= a[static_cast<std::size_t>(i)];
          }
          if (in2 && !in1) incl = false;
          return;
        }
        for (std::int64_t v = 0; v <= 6; ++v) {
          a.push_back(v);
          walk(a);
          a.pop_back();
        }
      };
      VectorConstraint acc;
      walk(acc);
      CHECK(b_entails(b1, b2) == incl);
    }
  }
}

TEST_CASE("linear atoms expand to minimal vector sets") {
  CHECK(expand_ad_to_b(AdConstraint{{{{1}, 2}}}, 2) ==
        std::vector<VectorConstraint>{{2, 0}});
  CHECK(expand_ad_to_b(AdConstraint{{{{1, 2}, 2}}}, 2) ==
        std::vector<VectorConstraint>{{0, 2}, {1, 1}, {2, 0}});
  CHECK(expand_ad_to_b(AdConstraint{{{{1}, 1}, {{2}, 1}}}, 2) ==
        std::vector<VectorConstraint>{{1, 1}});

  SUBCASE("class tags") {
    CHECK(AdConstraint{{{{1}, 2}}}.cls() == AdClass::NA);
    CHECK(AdConstraint{{{{1, 2}, 2}, {{3}, 1}}}.cls() == AdClass::DV);
    CHECK(AdConstraint{{{{1, 2}, 2}, {{2, 3}, 1}}}.cls() == AdClass::AD);
  }

  SUBCASE("expansion is an antichain preserving the denotation") {
    oracles::Rng rng(0x52);
    for (int it = 0; it < 80; ++it) {
      int n = static_cast<int>(rng.upto(2)) + 1;
      AdConstraint c;
      std::int64_t maxb = 1;
      for (int a = 0, atoms = static_cast<int>(rng.upto(2)) + 1; a < atoms; ++a) {
        AdAtom atom;
        for (int v = 1; v <= n; ++v)
          if (rng.flip()) atom.vars.push_back(v);
        if (atom.vars.empty()) atom.vars.push_back(1);
        atom.bound = rng.upto(3);
        maxb = std::max(maxb, atom.bound);
        c.atoms.push_back(atom);
      }
      auto expansion = expand_ad_to_b(c, n);
      for (const auto& u : expansion)
        for (const auto& v : expansion)
          if (u != v) CHECK_FALSE(b_entails(u, v));

      // Denotation on the grid {0..2*maxb}^n.
      bool exact = true;
      std::function<void(VectorConstraint&)> walk = [&](VectorConstraint& g) {
        if (static_cast<int>(g.size()) == n) {
          bool sat = true;
          for (const AdAtom& atom : c.atoms) {
            std::int64_t sum = 0;
            for (int v : atom.vars) sum += g[static_cast<std::size_t>(v - 1)];
            if (sum < atom.bound) sat = false;
          }
          bool covered = false;
          for (const auto& b : expansion) {
            bool le = true;
            for (int i = 0; i < n; ++i)
              if (b[static_cast<std::size_t>(i)] > g[static_cast<std::size_t>(i)]) le = false;
            if (le) covered = true;
          }
          if (sat != covered) exact = false;
          return;
        }
        for (std::int64_t v = 0; v <= 2 * maxb; ++v) {
          g.push_back(v);
          walk(g);
          g.pop_back();
        }
      };
      VectorConstraint acc;
      walk(acc);
      CHECK(exact);
    }
  }
}

TEST_CASE("sparser-than satisfaction on the worked example") {
  IraContext ctx{3, 5, 5};
  S1Constraint phi{{10, 5, 12}};
  CHECK(s1_satisfies({12, 5, 17}, phi, ctx));
  CHECK_FALSE(s1_satisfies({8, 5, 16}, phi, ctx));  // gap 5 vs 3
  CHECK_FALSE(s1_satisfies({12, 4, 17}, phi, ctx)); // pattern versus the constant
}

TEST_CASE("sparser-than entailment") {
  IraContext ctx{3, 5, 5};
  S1Constraint phi{{10, 5, 12}};
  CHECK(s1_entails(phi, phi, ctx));
  CHECK(s1_entails(phi, S1Constraint{{12, 5, 17}}, ctx));

  SUBCASE("characterization equals grid inclusion") {
    oracles::Rng rng(0x53);
    IraContext c2{2, 0, 1};
    for (int it = 0; it < 150; ++it) {
      S1Constraint p1{{rng.upto(8) - 2, rng.upto(8) - 2}};
      S1Constraint p2{{rng.upto(8) - 2, rng.upto(8) - 2}};
      CHECK(s1_entails(p1, p2, c2) == grid_s1_inclusion(p1, p2, c2, -4, 7));
    }
  }
}

TEST_CASE("s2 satisfaction is literal") {
  CHECK(s2_satisfies({0}, S2Constraint{{{S2Atom::Kind::LowerBound, 0, 1, 0}}}));
  CHECK(s2_satisfies({3, 7}, S2Constraint{{{S2Atom::Kind::Gap, 2, 1, 2}}}));
  CHECK_FALSE(s2_satisfies({6, 7}, S2Constraint{{{S2Atom::Kind::Gap, 2, 1, 2}}}));
}

TEST_CASE("s2 expansion") {
  SUBCASE("empty conjunction lists the patterns around the constant") {
    IraContext ctx{1, 5, 5};
    auto e = expand_s2_to_s1(S2Constraint{}, ctx);
    CHECK(e == std::vector<S1Constraint>{{{4}}, {{5}}, {{6}}});
  }
  SUBCASE("contradictory constraints expand to nothing") {
    IraContext ctx{1, 0, 1};
    S2Constraint psi{{{S2Atom::Kind::UpperBound, 0, 1, 0},
                      {S2Atom::Kind::LowerBound, 1, 1, 0}}};
    CHECK(expand_s2_to_s1(psi, ctx).empty());
  }
  SUBCASE("guard one unit above the constant, two variables") {
    // One piece per relative position of x1; values frozen from the
    // grid-validated run.
    IraContext ctx{2, 5, 5};
    S2Constraint psi{{{S2Atom::Kind::LowerBound, 6, 2, 0}}};
    auto e = expand_s2_to_s1(psi, ctx);
    CHECK(e == std::vector<S1Constraint>{
                   {{4, 6}}, {{5, 6}}, {{6, 6}}, {{6, 7}}, {{7, 6}}});
    CHECK(grid_expansion_exact(e, psi, ctx, -3, 12));
  }
  SUBCASE("expansion preserves the denotation and stays an antichain") {
    oracles::Rng rng(0x54);
    for (int it = 0; it < 40; ++it) {
      IraContext ctx{2, 0, 2};
      S2Constraint psi;
      for (int a = 0, n = static_cast<int>(rng.upto(2)); a < n; ++a) {
        S2Atom atom;
        switch (rng.upto(2)) {
          case 0:
            atom.kind = S2Atom::Kind::LowerBound;
            atom.c = ctx.cmin + rng.upto(4); // up to cmax + 2
            atom.x = static_cast<int>(rng.upto(1)) + 1;
            break;
          case 1:
            atom.kind = S2Atom::Kind::UpperBound;
            atom.c = ctx.cmax - rng.upto(4); // down to cmin - 2
            atom.x = static_cast<int>(rng.upto(1)) + 1;
            break;
          default:
            atom.kind = S2Atom::Kind::Gap;
            atom.c = rng.upto(2);
            atom.x = 1;
            atom.y = 2;
            break;
        }
        psi.atoms.push_back(atom);
      }
      auto e = expand_s2_to_s1(psi, ctx);
      for (const auto& u : e)
        for (const auto& v : e)
          if (!(u == v)) CHECK_FALSE(s1_entails(u, v, ctx));
      CHECK(grid_expansion_exact(e, psi, ctx, -8, 10));
    }
  }
  SUBCASE("candidate cap raises a size error") {
    IraContext ctx{3, -20, 20};
    CHECK_THROWS_AS(expand_s2_to_s1(S2Constraint{}, ctx, 1000), SizeLimit);
  }
}

TEST_CASE("s2 entailment") {
  IraContext ctx{2, 5, 5};
  S2Constraint six{{{S2Atom::Kind::LowerBound, 6, 2, 0}}};
  S2Constraint eight{{{S2Atom::Kind::LowerBound, 8, 2, 0}}};
  CHECK(s2_entails(six, six, ctx));
  CHECK(s2_entails(six, eight, ctx));
  CHECK_FALSE(s2_entails(eight, six, ctx));

  SUBCASE("matches bounded-grid inclusion") {
    oracles::Rng rng(0x55);
    IraContext c2{2, 0, 1};
    for (int it = 0; it < 30; ++it) {
      auto gen = [&]() {
        S2Constraint psi;
        for (int a = 0, n = static_cast<int>(rng.upto(2)); a < n; ++a) {
          S2Atom atom;
          if (rng.flip()) {
            if (rng.flip()) {
              atom.kind = S2Atom::Kind::LowerBound;
              atom.c = c2.cmin + rng.upto(3);
            } else {
              atom.kind = S2Atom::Kind::UpperBound;
              atom.c = c2.cmax - rng.upto(3);
            }
            atom.x = static_cast<int>(rng.upto(1)) + 1;
          } else {
            atom.kind = S2Atom::Kind::Gap;
            atom.c = rng.upto(2);
            atom.x = 1;
            atom.y = 2;
          }
          psi.atoms.push_back(atom);
        }
        return psi;
      };
      S2Constraint p1 = gen(), p2 = gen();
      bool incl = true;
      for_grid(2, -6, 8, [&](const IraConfig& g) {
        if (incl && s2_satisfies(g, p2) && !s2_satisfies(g, p1)) incl = false;
      });
      CHECK(s2_entails(p1, p2, c2) == incl);
    }
  }
}
