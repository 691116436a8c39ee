#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsts/backends.hpp"
#include "wsts/engine.hpp"
#include "wsts/fischer.hpp"
#include "wsts/gallery.hpp"
#include "wsts/model.hpp"

namespace {

using namespace wsts;

struct CheckOptions {
  std::string file;
  std::string target;
  std::string expect;
  std::string init_from_file;
  bool stats = false;
  bool dump_fixpoint = false;
  std::uint64_t max_constraints = 100000;
  double max_seconds = 300.0;
};

template <class C>
void print_result_line(const std::string& name, const FixpointResult<C>& r) {
  std::cout << name << ": " << verdict_str(r.verdict)
            << " iterations=" << r.iterations << " constraints=" << r.constraints
            << " pre_calls=" << r.pre_calls << "\n";
}

template <class C>
void print_stats(const FixpointResult<C>& r) {
  std::cout << "  fixpoint_size=" << r.fixpoint.size() << "\n";
  if (!r.witness_trace.empty()) {
    std::cout << "  trace:";
    for (const std::string& step : r.witness_trace) std::cout << " " << step;
    std::cout << "\n";
  }
}

int run_check(const CheckOptions& opt) {
  ModelFile mf = parse_model_file(opt.file);
  Limits limits{opt.max_constraints, opt.max_seconds};
  bool mismatch = false;
  auto note = [&](Verdict v) {
    if (opt.expect.empty()) return;
    if ((opt.expect == "reachable") != (v == Verdict::Reachable)) mismatch = true;
  };

  if (mf.kind == ModelFile::Kind::Tpn) {
    ZoneSystem sys;
    sys.net = &mf.tpn.net;
    sys.init = mf.tpn.init;
    if (!opt.init_from_file.empty())
      sys.literal_init = parse_marking_file(opt.init_from_file, mf.tpn.net);
    for (const NamedZoneTarget& t : mf.tpn.targets) {
      if (!opt.target.empty() && t.name != opt.target) continue;
      auto res = backward_reach(sys, std::vector<Zone>{t.zone}, limits);
      print_result_line(t.name, res);
      if (opt.stats) print_stats(res);
      if (opt.dump_fixpoint)
        for (const Zone& z : res.fixpoint)
          std::cout << zone_to_json(z, mf.tpn.net, "") << "\n";
      note(res.verdict);
    }
  } else {
    LcsSystem sys;
    sys.model = &mf.lcs.model;
    sys.init_state = mf.lcs.init_state;
    sys.init_channels = mf.lcs.init_channels;
    for (const NamedLcsTarget& t : mf.lcs.targets) {
      if (!opt.target.empty() && t.name != opt.target) continue;
      auto res = backward_reach(sys, t.constraints, limits);
      print_result_line(t.name, res);
      if (opt.stats) print_stats(res);
      if (opt.dump_fixpoint)
        for (const LcsConstraint& c : res.fixpoint)
          std::cout << lcs_constraint_to_json(c, mf.lcs.model) << "\n";
      note(res.verdict);
    }
  }
  return mismatch ? 1 : 0;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  std::int64_t v = std::stoll(s, &used);
  if (used != s.size()) throw ParseError("bad integer: " + s);
  return v;
}

// Atom syntax: "x1+x2>=2" with 1-based variable indices.
AdAtom parse_ad_atom(const std::string& text) {
  auto ge = text.find(">=");
  if (ge == std::string::npos) throw ParseError("ad atom needs '>=': " + text);
  AdAtom atom;
  atom.bound = parse_int(text.substr(ge + 2));
  std::string vars = text.substr(0, ge);
  std::size_t pos = 0;
  while (pos < vars.size()) {
    auto plus = vars.find('+', pos);
    std::string v = vars.substr(pos, plus == std::string::npos ? std::string::npos
                                                               : plus - pos);
    if (v.empty() || v[0] != 'x') throw ParseError("ad atom variable must be xK: " + text);
    atom.vars.push_back(static_cast<int>(parse_int(v.substr(1))));
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return atom;
}

// Atom syntax: "c<=xK", "xK<=c" or "c<=xJ-xK".
S2Atom parse_s2_atom(const std::string& text) {
  auto le = text.find("<=");
  if (le == std::string::npos) throw ParseError("s2 atom needs '<=': " + text);
  std::string lhs = text.substr(0, le), rhs = text.substr(le + 2);
  S2Atom atom;
  auto var = [](const std::string& s) -> std::optional<int> {
    if (s.size() >= 2 && s[0] == 'x') return static_cast<int>(parse_int(s.substr(1)));
    return std::nullopt;
  };
  if (auto x = var(lhs)) { // xK <= c
    atom.kind = S2Atom::Kind::UpperBound;
    atom.x = *x;
    atom.c = parse_int(rhs);
    return atom;
  }
  atom.c = parse_int(lhs);
  auto minus = rhs.find('-');
  if (minus == std::string::npos) { // c <= xK
    auto x = var(rhs);
    if (!x) throw ParseError("s2 atom needs a variable: " + text);
    atom.kind = S2Atom::Kind::LowerBound;
    atom.x = *x;
    return atom;
  }
  auto y = var(rhs.substr(0, minus)), x = var(rhs.substr(minus + 1));
  if (!x || !y) throw ParseError("s2 gap atom needs xJ-xK: " + text);
  atom.kind = S2Atom::Kind::Gap;
  atom.y = *y;
  atom.x = *x;
  return atom;
}

std::string vec_str(const std::vector<std::int64_t>& v) {
  std::string s = "<";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ">";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"coverability checker for well-structured transition systems"};
  app.require_subcommand(1);

  CheckOptions check_opt;
  auto* check = app.add_subcommand("check", "run backward coverability on a model file");
  check->add_option("file", check_opt.file, "model file (JSON)")->required();
  check->add_option("--target", check_opt.target, "check only the named target");
  check->add_flag("--stats", check_opt.stats, "print fixpoint size and witness trace");
  check->add_flag("--dump-fixpoint", check_opt.dump_fixpoint,
                  "append the minimized constraint set");
  check->add_option("--expect", check_opt.expect, "fail unless every verdict matches")
      ->check(CLI::IsMember({"reachable", "unreachable"}));
  check->add_option("--max-constraints", check_opt.max_constraints,
                    "constraint budget before giving up");
  check->add_option("--max-seconds", check_opt.max_seconds, "time budget");
  check->add_option("--init-from-file", check_opt.init_from_file,
                    "literal initial marking (JSON), replaces the model's init");

  std::string fischer_out;
  bool fischer_broken = false;
  auto* fischer = app.add_subcommand("fischer", "write the mutual-exclusion protocol net");
  fischer->add_option("out", fischer_out, "output path")->required();
  fischer->add_flag("--broken", fischer_broken, "drop the waiting guard on enter");

  auto* expand = app.add_subcommand("expand", "expand a constraint to its minimal disjunction");
  expand->require_subcommand(1);
  int ad_dim = 0;
  std::vector<std::string> ad_atoms;
  auto* expand_ad = expand->add_subcommand("ad", "linear atoms over process counts");
  expand_ad->add_option("-n,--dimension", ad_dim, "vector dimension")->required();
  expand_ad->add_option("atoms", ad_atoms, "atoms like x1+x2>=2");

  int s2_vars = 0;
  std::int64_t s2_cmin = 0, s2_cmax = 0;
  std::vector<std::string> s2_atoms;
  auto* expand_s2 = expand->add_subcommand("s2", "gap atoms over integer variables");
  expand_s2->add_option("--vars", s2_vars, "number of variables")->required();
  expand_s2->add_option("--cmin", s2_cmin, "smallest constant")->required();
  expand_s2->add_option("--cmax", s2_cmax, "largest constant")->required();
  expand_s2->add_option("atoms", s2_atoms, "atoms like 6<=x2, x1<=3, 2<=x2-x1");

  auto* normalize_cmd = app.add_subcommand("normalize", "normalize an expression");
  normalize_cmd->require_subcommand(1);
  std::string l2_text;
  auto* normalize_l2 = normalize_cmd->add_subcommand("l2", "word-constraint expression");
  normalize_l2->add_option("expr", l2_text, "expression over letters with . & +")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return run_check(check_opt);

    if (*fischer) {
      TpnProblem p = fischer_broken ? fischer_problem_broken() : fischer_problem();
      std::ofstream out(fischer_out);
      if (!out) throw ParseError(fischer_out + ": cannot write");
      out << tpn_to_json(p);
      return 0;
    }

    if (*expand_ad) {
      AdConstraint c;
      for (const std::string& a : ad_atoms) c.atoms.push_back(parse_ad_atom(a));
      for (const VectorConstraint& v : expand_ad_to_b(c, ad_dim))
        std::cout << vec_str(v) << "\n";
      return 0;
    }

    if (*expand_s2) {
      S2Constraint psi;
      for (const std::string& a : s2_atoms) psi.atoms.push_back(parse_s2_atom(a));
      IraContext ctx{s2_vars, s2_cmin, s2_cmax};
      for (const S1Constraint& phi : expand_s2_to_s1(psi, ctx))
        std::cout << vec_str(phi.values) << "\n";
      return 0;
    }

    if (*normalize_l2) {
      for (const Word& w : normalize_expr(parse_l2(l2_text))) std::cout << w << "\n";
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const LimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
