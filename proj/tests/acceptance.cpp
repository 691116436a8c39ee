// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any fail.  argv[11] is the path to the CLI binary; CLI-level criteria
// are skipped (and failed) without it.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wsts/backends.hpp"
#include "wsts/engine.hpp"
#include "wsts/fischer.hpp"
#include "wsts/gallery.hpp"
#include "wsts/lcs.hpp"
#include "wsts/model.hpp"
#include "wsts/qo.hpp"

using namespace wsts;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
              detail.empty() ? "" : " - ", detail.c_str());
  if (!ok) ++failures;
}

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_path;
std::filesystem::path work_dir;

CmdResult run_cli(const std::string& args) {
  static int counter = 0;
  std::filesystem::path out = work_dir / ("out" + std::to_string(counter++) + ".txt");
  std::string cmd = cli_path + " " + args + " > " + out.string() + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  CmdResult r;
  r.exit_code = rc < 0 ? -1 : WEXITSTATUS(rc);
  std::ifstream in(out);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

constexpr std::int64_t INF = std::numeric_limits<std::int64_t>::max();

Zone zone_of(std::vector<PlaceId> placing, std::vector<std::vector<std::int64_t>> rows) {
  std::size_t n = placing.size() + 1;
  std::vector<Bound> dbm(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      dbm[i * n + j] =
          i == j ? Bound::zero()
                 : (rows[i][j] == INF ? Bound::inf() : Bound::nonstrict(rows[i][j]));
  return Zone(std::move(placing), std::move(dbm));
}

// ---------------------------------------------------------------------------
// Criterion 1: protocol safety through the CLI, plus the guard mutation.

void criterion_fischer() {
  auto model = (work_dir / "fischer.json").string();
  auto broken = (work_dir / "fischer_broken.json").string();
  bool generated = run_cli("fischer " + model).exit_code == 0 &&
                   run_cli("fischer " + broken + " --broken").exit_code == 0;
  report("1. fischer: model generation", generated);
  if (!generated) return;

  auto started = std::chrono::steady_clock::now();
  CmdResult safe = run_cli("check " + model + " --expect unreachable "
                           "--max-constraints 10000 --max-seconds 60");
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              started)
                    .count();
  auto ls = lines_of(safe.out);
  bool three_unreachable =
      ls.size() == 3 && ls[0].rfind("Z1: UNREACHABLE", 0) == 0 &&
      ls[1].rfind("Z2: UNREACHABLE", 0) == 0 && ls[2].rfind("Z3: UNREACHABLE", 0) == 0;
  report("1. fischer: Z1 Z2 Z3 all unreachable (exit 0)",
         three_unreachable && safe.exit_code == 0);
  report("1. fischer: within 60 s and 10000 constraints", secs <= 60.0,
         "took " + std::to_string(secs) + " s");

  CmdResult bad = run_cli("check " + broken);
  bool flipped = bad.out.find("REACHABLE") != std::string::npos &&
                 bad.out.find("Z1: UNREACHABLE") == std::string::npos;
  report("1. fischer: enter-guard mutation flips a target to reachable", flipped);

  // Cross-check the mutation at two-process scale with an explicit grid
  // exploration: the sound net's bounded space avoids the targets, the
  // mutated net covers one.
  TpnProblem sound = fischer_problem();
  TpnProblem mutated = fischer_problem_broken();
  Marking two_procs = make_marking({{sound.net.place_id("A"), Rational(0)},
                                    {sound.net.place_id("A"), Rational(0)},
                                    {sound.net.place_id("udf"), Rational(0)}});
  std::vector<Zone> zones;
  for (const auto& t : sound.targets) zones.push_back(t.zone);
  bool sound_safe =
      !oracles::grid_bfs_covers(sound.net, two_procs, zones, 2, sound.net.cmax() + 1);
  bool mutated_unsafe =
      oracles::grid_bfs_covers(mutated.net, two_procs, zones, 2, mutated.net.cmax() + 1);
  report("1. fischer: two-process explicit grid exploration agrees",
         sound_safe && mutated_unsafe);
}

// ---------------------------------------------------------------------------
// Criterion 2: published worked examples, exact equality.

void criterion_goldens() {
  const PlaceId B = 0, C = 1, A = 2;
  Zone base = zone_of({B, C}, {{0, 0, 0}, {8, 0, 8}, {8, 4, 0}});

  report("2. golden: zone conjunction table",
         conjunction(base, {1, 6}, 1) ==
             zone_of({B, C}, {{0, -1, 0}, {6, 0, 8}, {8, 4, 0}}));
  report("2. golden: zone addition table",
         addition(base, A, {1, 2}) == zone_of({B, C, A}, {{0, 0, 0, -1},
                                                          {8, 0, 8, INF},
                                                          {8, 4, 0, INF},
                                                          {2, INF, INF, 0}}));
  Zone three = zone_of({B, C, A}, {{0, 0, 0, -1}, {8, 0, 6, 7}, {8, 4, 0, 7}, {2, 2, 2, 0}});
  report("2. golden: zone abstraction table",
         abstraction(three, 2) == zone_of({B, A}, {{0, 0, -1}, {8, 0, 7}, {2, 2, 0}}));

  L2Expr e = parse_l2("(a&b).(b+c)");
  report("2. golden: word-constraint normalization",
         normalize_expr(e) == std::vector<Word>{"abb", "abc", "bab", "bac"});

  IraContext ctx{3, 5, 5};
  S1Constraint phi{{10, 5, 12}};
  report("2. golden: sparser-than membership triple",
         s1_satisfies({12, 5, 17}, phi, ctx) && !s1_satisfies({8, 5, 16}, phi, ctx) &&
             !s1_satisfies({12, 4, 17}, phi, ctx));

  // Published expansion table for the guard one above the constant.
  // Under the membership conditions defined alongside it, that table's
  // union denotes x2 >= 7, not x2 >= 6 (every piece carries gap 2 to the
  // constant), so a denotation-exact expansion cannot reproduce it.  The
  // assertion is kept as published and is expected to stay red; the
  // grid-validated exact expansion is covered by the unit suite.
  IraContext c2{2, 5, 5};
  S2Constraint psi{{{S2Atom::Kind::LowerBound, 6, 2, 0}}};
  auto expansion = expand_s2_to_s1(psi, c2);
  report("2. golden: s2-to-s1 expansion table",
         expansion == std::vector<S1Constraint>{
                          {{4, 7}}, {{5, 7}}, {{6, 7}}, {{7, 7}}, {{8, 7}}},
         "published table is the exact expansion of 7<=x2; for 6<=x2 the "
         "grid-validated result is <4,6>,<5,6>,<6,6>,<6,7>,<7,6>");
}

// ---------------------------------------------------------------------------
// Criterion 3: oracle equivalences, zero mismatches.

void criterion_zone_entailment_oracle() {
  oracles::Rng rng(0xa1);
  int mismatches = 0;
  for (int it = 0; it < 1000; ++it) {
    Zone z1 = oracles::random_zone(rng, 3, 2, 3);
    Zone z2 = oracles::random_zone(rng, 3, 2, 3);
    if (zone_entails(z1, z2) != oracles::grid_inclusion(z1, z2, {0, 1})) ++mismatches;
  }
  report("3a. zone entailment vs half-integer grid inclusion (1000 pairs)",
         mismatches == 0, std::to_string(mismatches) + " mismatches");
}

void criterion_pre_oracle() {
  oracles::Rng rng(0xa2);
  int mismatches = 0, pairs = 0;
  while (pairs < 300) {
    Tpn net = oracles::random_tpn(rng, 3, static_cast<int>(rng.upto(2)) + 1, 2, 2);
    Zone z = oracles::random_zone(rng, 2, 3, 2);
    ++pairs;

    ZoneSystem sys;
    sys.net = &net;
    std::vector<Zone> pre_zones;
    for (auto& [p, label] : sys.pre(z)) pre_zones.push_back(p);

    std::size_t max_in = 0;
    for (const auto& t : net.transitions) max_in = std::max(max_in, t.in.size());
    std::size_t max_size = static_cast<std::size_t>(z.token_count()) + max_in;

    for (int s = 0; s < 30; ++s) {
      Marking m;
      std::size_t size = static_cast<std::size_t>(rng.upto(static_cast<std::int64_t>(max_size)));
      for (std::size_t i = 0; i < size; ++i)
        m.push_back({static_cast<PlaceId>(rng.upto(2)), Rational(rng.upto(8), 2)});
      m = make_marking(std::move(m));

      bool symbolic = false;
      for (const Zone& p : pre_zones)
        if (member(m, p)) {
          symbolic = true;
          break;
        }
      if (symbolic != oracles::one_step_reaches(m, net, z)) ++mismatches;
    }
  }
  report("3b. symbolic pre vs one-step forward grid oracle (300 pairs)",
         mismatches == 0, std::to_string(mismatches) + " mismatches");

  // The half-integer resolution is an oracle assumption; one pass at
  // denominator 3 guards it.
  oracles::Rng rng3(0xa8);
  int mm3 = 0;
  for (int pair = 0; pair < 60; ++pair) {
    Tpn net = oracles::random_tpn(rng3, 3, static_cast<int>(rng3.upto(2)) + 1, 2, 2);
    Zone z = oracles::random_zone(rng3, 2, 3, 2);
    ZoneSystem sys;
    sys.net = &net;
    std::vector<Zone> pre_zones;
    for (auto& [p, label] : sys.pre(z)) pre_zones.push_back(p);
    for (int s = 0; s < 20; ++s) {
      Marking m;
      for (std::size_t i = 0, size = static_cast<std::size_t>(rng3.upto(3)); i < size; ++i)
        m.push_back({static_cast<PlaceId>(rng3.upto(2)), Rational(rng3.upto(12), 3)});
      m = make_marking(std::move(m));
      bool symbolic = false;
      for (const Zone& p : pre_zones)
        if (member(m, p)) {
          symbolic = true;
          break;
        }
      if (symbolic != oracles::one_step_reaches(m, net, z, 3)) ++mm3;
    }
  }
  report("3b. symbolic pre vs forward oracle at denominator 3 (60 pairs)", mm3 == 0,
         std::to_string(mm3) + " mismatches");
}

void criterion_untimed_engine_oracle() {
  oracles::Rng rng(0xa3);
  int done = 0, mismatches = 0;
  while (done < 100) {
    Tpn net = oracles::random_untimed_tpn(rng, static_cast<int>(rng.upto(2)) + 2,
                                          static_cast<int>(rng.upto(3)) + 1, 2);
    int places = static_cast<int>(net.places.size());
    oracles::Counts init(static_cast<std::size_t>(places), 0);
    for (int i = 0, n = static_cast<int>(rng.upto(3)); i < n; ++i)
      ++init[static_cast<std::size_t>(rng.upto(places - 1))];
    oracles::Counts need(static_cast<std::size_t>(places), 0);
    ++need[static_cast<std::size_t>(rng.upto(places - 1))];
    if (rng.flip()) ++need[static_cast<std::size_t>(rng.upto(places - 1))];

    auto bfs = oracles::untimed_coverability(net, init, need, 6);
    if (!bfs.conclusive) continue;
    ++done;

    ZoneSystem sys;
    sys.net = &net;
    Zone target;
    for (int p = 0; p < places; ++p) {
      if (init[static_cast<std::size_t>(p)] > 0)
        sys.init.places[p] = {init[static_cast<std::size_t>(p)], 0};
      for (int k = 0; k < need[static_cast<std::size_t>(p)]; ++k)
        target = addition(target, p, {0, std::nullopt});
    }
    auto res = backward_reach(sys, std::vector<Zone>{normalize(target)});
    if ((res.verdict == Verdict::Reachable) != bfs.coverable) ++mismatches;
  }
  report("3c. engine verdict vs explicit BFS on untimed nets (100 nets)",
         mismatches == 0, std::to_string(mismatches) + " mismatches");
}

void criterion_lcs_engine_oracle() {
  oracles::Rng rng(0xa4);
  int done = 0, mismatches = 0;
  while (done < 100) {
    LcsModel model =
        oracles::random_lcs_model(rng, 3, static_cast<int>(rng.upto(4)) + 2);
    LcsConstraint target;
    target.state = static_cast<int>(rng.upto(2));
    Word w;
    for (int i = 0, n = static_cast<int>(rng.upto(2)); i < n; ++i)
      w += static_cast<char>('a' + rng.upto(1));
    target.words = {w};

    auto bfs = oracles::lcs_coverability(model, 0, {""}, {target}, 4);
    if (!bfs.conclusive) continue;
    ++done;

    LcsSystem sys;
    sys.model = &model;
    sys.init_state = 0;
    sys.init_channels = {""};
    auto res = backward_reach(sys, std::vector<LcsConstraint>{target});
    if ((res.verdict == Verdict::Reachable) != bfs.coverable) ++mismatches;
  }
  report("3d. lcs engine verdict vs bounded explicit BFS (100 instances)",
         mismatches == 0, std::to_string(mismatches) + " mismatches");
}

void criterion_s1_oracle() {
  oracles::Rng rng(0xa5);
  IraContext ctx{2, 0, 1};
  int mismatches = 0;
  for (int it = 0; it < 500; ++it) {
    S1Constraint p1{{rng.upto(8) - 2, rng.upto(8) - 2}};
    S1Constraint p2{{rng.upto(8) - 2, rng.upto(8) - 2}};
    bool grid = true;
    IraConfig g(2, -4);
    for (;;) {
      if (s1_satisfies(g, p2, ctx) && !s1_satisfies(g, p1, ctx)) {
        grid = false;
        break;
      }
      int k = 0;
      while (k < 2 && ++g[static_cast<std::size_t>(k)] > 7) {
        g[static_cast<std::size_t>(k)] = -4;
        ++k;
      }
      if (k == 2) break;
    }
    if (s1_entails(p1, p2, ctx) != grid) ++mismatches;
  }
  report("3e. sparser-than entailment vs bounded-grid inclusion (500 pairs)",
         mismatches == 0, std::to_string(mismatches) + " mismatches");
}

// ---------------------------------------------------------------------------
// Criterion 4: ordering suite.

void criterion_orderings() {
  auto chr_eq = [](char a, char b) { return a == b; };

  auto words = oracles::all_words("abc", 6);
  bool word_ok = true;
  for (const Word& u : words) {
    std::vector<char> uc(u.begin(), u.end());
    for (const Word& v : words) {
      std::vector<char> vc(v.begin(), v.end());
      if (word_embeds(uc, vc, chr_eq) != oracles::word_embeds_exhaustive(uc, vc, chr_eq)) {
        word_ok = false;
        break;
      }
    }
    if (!word_ok) break;
  }
  report("4. greedy word embedding == exhaustive (all pairs, length <= 6, 3 letters)",
         word_ok);

  oracles::Rng rng(0xa6);
  auto int_le = [](int a, int b) { return a <= b; };
  bool multiset_ok = true;
  for (int it = 0; it < 2000 && multiset_ok; ++it) {
    std::vector<int> u, v;
    for (int i = 0, n = static_cast<int>(rng.upto(6)); i < n; ++i)
      u.push_back(static_cast<int>(rng.upto(3)));
    for (int i = 0, n = static_cast<int>(rng.upto(6)); i < n; ++i)
      v.push_back(static_cast<int>(rng.upto(3)));
    if (multiset_embeds(u, v, int_le) != oracles::multiset_embeds_exhaustive(u, v, int_le))
      multiset_ok = false;
  }
  report("4. multiset embedding == exhaustive (sizes <= 6)", multiset_ok);

  bool antichain = true;
  for (int i = 1; i <= 30 && antichain; ++i)
    for (int j = i + 1; j <= 30 && antichain; ++j)
      if (rado_entails(RadoConstraint::psi(i), RadoConstraint::psi(j)))
        antichain = false;
  report("4. disjunctive rado constraints form an antichain (indices to 30)",
         antichain);

  bool factorial_ok = true;
  L2Expr e = L2Expr::conj(L2Expr::atom('a'), L2Expr::atom('b'));
  std::size_t expect = 2;
  factorial_ok = factorial_ok && normalize_expr(e).size() == expect;
  char letter = 'c';
  for (int n = 3; n <= 4; ++n, ++letter) {
    e = L2Expr::conj(e, L2Expr::atom(letter));
    expect *= static_cast<std::size_t>(n);
    factorial_ok = factorial_ok && normalize_expr(e).size() == expect;
  }
  report("4. conjunction of n letters normalizes to n! words (n = 2, 3, 4)",
         factorial_ok);
}

// ---------------------------------------------------------------------------
// Criterion 5: algebraic invariants.

void criterion_invariants() {
  oracles::Rng rng(0xa7);

  bool norm_ok = true;
  for (int it = 0; it < 500 && norm_ok; ++it) {
    // Raw random zone, not necessarily normal or consistent.
    int m = static_cast<int>(rng.upto(2)) + 1;
    std::vector<PlaceId> placing;
    for (int i = 0; i < m; ++i) placing.push_back(static_cast<PlaceId>(rng.upto(1)));
    std::size_t n = static_cast<std::size_t>(m) + 1;
    std::vector<Bound> dbm(n * n, Bound::inf());
    for (std::size_t i = 0; i < n; ++i) dbm[i * n + i] = Bound::zero();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && rng.flip()) dbm[i * n + j] = Bound::nonstrict(rng.upto(8) - 4);
    Zone raw(placing, dbm);
    Zone norm = normalize(raw);
    if (!(normalize(norm) == norm)) norm_ok = false;
    for (int s = 0; s < 40 && norm_ok; ++s) {
      Marking mark;
      for (int i = 0, k = static_cast<int>(rng.upto(3)); i < k; ++i)
        mark.push_back({static_cast<PlaceId>(rng.upto(1)), Rational(rng.upto(10), 2)});
      mark = make_marking(std::move(mark));
      if (member(mark, raw).has_value() != member(mark, norm).has_value())
        norm_ok = false;
    }
  }
  report("5. normalization is idempotent and denotation-preserving (500 zones)",
         norm_ok);

  bool pretime_ok = true;
  for (int it = 0; it < 200 && pretime_ok; ++it) {
    Zone z = oracles::random_zone(rng, 3, 2, 3);
    Zone once = pre_time(z);
    if (!(pre_time(normalize(once)) == once)) pretime_ok = false;
    if (!zone_entails(normalize(once), z)) pretime_ok = false;
  }
  report("5. time rewind is idempotent and only weakens (200 zones)", pretime_ok);

  auto entail = [](const VectorConstraint& a, const VectorConstraint& b) {
    return b_entails(a, b);
  };
  bool min_ok = true;
  for (int it = 0; it < 200 && min_ok; ++it) {
    std::vector<VectorConstraint> set;
    for (int i = 0, n = static_cast<int>(rng.upto(7)) + 1; i < n; ++i)
      set.push_back({rng.upto(3), rng.upto(3), rng.upto(3)});
    auto kept = minimize(set, entail, [](const VectorConstraint& v) { return vector_key(v); });
    for (std::size_t i = 0; i < kept.size() && min_ok; ++i)
      for (std::size_t j = 0; j < kept.size() && min_ok; ++j)
        if (i != j && entail(kept[i], kept[j])) min_ok = false;
    if (!set_dominates(kept, set, entail)) min_ok = false;
  }
  report("5. minimize yields antichains dominating their input (200 sets)", min_ok);

  auto model = (work_dir / "fischer.json").string();
  CmdResult r1 = run_cli("check " + model + " --stats --dump-fixpoint");
  CmdResult r2 = run_cli("check " + model + " --stats --dump-fixpoint");
  report("5. engine output is bitwise identical across runs",
         !r1.out.empty() && r1.out == r2.out && r1.exit_code == r2.exit_code);
}

} // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  work_dir = std::filesystem::temp_directory_path() /
             ("wsts_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(work_dir);

  if (cli_path.empty()) {
    report("1. fischer (CLI unavailable)", false, "pass the CLI path as argv[1]");
  } else {
    criterion_fischer();
  }
  criterion_goldens();
  criterion_zone_entailment_oracle();
  criterion_pre_oracle();
  criterion_untimed_engine_oracle();
  criterion_lcs_engine_oracle();
  criterion_s1_oracle();
  criterion_orderings();
  if (!cli_path.empty()) criterion_invariants();

  std::filesystem::remove_all(work_dir);
  if (failures) std::printf("%d criterion check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
