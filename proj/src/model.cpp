#include "wsts/model.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wsts {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
  throw ParseError(origin + ": " + msg);
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Interval parse_interval(const json& j, const std::string& origin,
                        const std::string& where) {
  Interval iv;
  iv.lo = j.value("lo", std::int64_t{0});
  if (j.contains("hi") && !(j["hi"].is_string() && j["hi"] == "inf"))
    iv.hi = j["hi"].get<std::int64_t>();
  if (!iv.valid()) fail(origin, where + ": interval with lo > hi or lo < 0");
  return iv;
}

Bound parse_bound(const json& j) {
  if (j.is_string() && j == "inf") return Bound::inf();
  return Bound::nonstrict(j.get<std::int64_t>());
}

TpnProblem parse_tpn(const json& j, const std::string& origin) {
  TpnProblem p;
  for (const auto& pl : j.at("places")) p.net.places.push_back(pl.get<std::string>());

  for (const auto& jt : j.at("transitions")) {
    TpnTransition t;
    t.name = jt.at("name").get<std::string>();
    auto arcs = [&](const char* key, std::vector<Arc>& out) {
      if (!jt.contains(key)) return;
      for (const auto& ja : jt[key]) {
        Arc a;
        a.place = p.net.place_id(ja.at("place").get<std::string>());
        a.interval = parse_interval(ja, origin, "transition " + t.name);
        out.push_back(a);
      }
    };
    arcs("in", t.in);
    arcs("out", t.out);
    p.net.transitions.push_back(std::move(t));
  }

  for (const auto& ji : j.at("init")) {
    UniformInitSpec::Entry e;
    const auto& cnt = ji.at("count");
    if (!(cnt.is_string() && cnt == "omega")) e.count = cnt.get<std::int64_t>();
    e.age = ji.value("age", std::int64_t{0});
    p.init.places[p.net.place_id(ji.at("place").get<std::string>())] = e;
  }

  for (const auto& jt : j.at("targets")) {
    NamedZoneTarget tgt;
    tgt.name = jt.at("name").get<std::string>();
    std::vector<PlaceId> placing;
    for (const auto& tok : jt.at("tokens"))
      placing.push_back(p.net.place_id(tok.at("place").get<std::string>()));
    std::size_t m = placing.size(), n = m + 1;
    std::vector<Bound> dbm(n * n, Bound::inf());
    for (std::size_t i = 0; i < n; ++i) dbm[i * n + i] = Bound::zero();
    for (std::size_t i = 1; i < n; ++i) dbm[0 * n + i] = Bound::zero(); // ages >= 0
    if (jt.contains("bounds")) {
      const auto& b = jt["bounds"];
      if (b.contains("upper"))
        for (std::size_t i = 0; i < m; ++i)
          dbm[(i + 1) * n + 0] = parse_bound(b["upper"].at(i));
      if (b.contains("lower"))
        for (std::size_t i = 0; i < m; ++i)
          dbm[0 * n + (i + 1)] =
              Bound::nonstrict(-b["lower"].at(i).get<std::int64_t>());
      if (b.contains("diff"))
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t c = 0; c < m; ++c)
            if (a != c) dbm[(a + 1) * n + (c + 1)] = parse_bound(b["diff"].at(a).at(c));
    }
    tgt.zone = normalize(Zone(std::move(placing), std::move(dbm)));
    if (!is_consistent(tgt.zone))
      fail(origin, "target " + tgt.name + ": inconsistent zone");
    p.targets.push_back(std::move(tgt));
  }
  if (p.targets.empty()) fail(origin, "no targets");
  return p;
}

LcsProblem parse_lcs(const json& j, const std::string& origin) {
  LcsProblem p;
  for (const auto& s : j.at("states")) p.model.states.push_back(s.get<std::string>());
  for (const auto& c : j.at("channels")) p.model.channels.push_back(c.get<std::string>());
  for (const auto& a : j.at("alphabet")) {
    std::string s = a.get<std::string>();
    if (s.size() != 1) fail(origin, "alphabet letters must be single characters");
    p.model.alphabet += s;
  }
  auto check_word = [&](const Word& w, const std::string& where) {
    for (char ch : w)
      if (p.model.alphabet.find(ch) == std::string::npos)
        fail(origin, where + ": letter '" + std::string(1, ch) + "' not in alphabet");
  };

  for (const auto& jt : j.at("transitions")) {
    LcsTransition t;
    t.from = p.model.state_id(jt.at("from").get<std::string>());
    t.to = p.model.state_id(jt.at("to").get<std::string>());
    std::string op = jt.at("op").get<std::string>();
    std::string detail;
    if (op == "nop") {
      t.op.type = LcsOp::Type::Nop;
      detail = "nop";
    } else if (op == "send" || op == "recv") {
      t.op.type = op == "send" ? LcsOp::Type::Send : LcsOp::Type::Recv;
      t.op.channel = p.model.channel_id(jt.at("channel").get<std::string>());
      std::string letter = jt.at("letter").get<std::string>();
      if (letter.size() != 1) fail(origin, "transition letter must be a single character");
      check_word(letter, "transition");
      t.op.letter = letter[0];
      detail = op + "(" + jt["channel"].get<std::string>() + "," + letter + ")";
    } else {
      fail(origin, "unknown op '" + op + "' (expect send, recv, nop)");
    }
    t.label = p.model.states[static_cast<std::size_t>(t.from)] + "-" + detail + "->" +
              p.model.states[static_cast<std::size_t>(t.to)];
    p.model.transitions.push_back(std::move(t));
  }

  const auto& ji = j.at("init");
  p.init_state = p.model.state_id(ji.at("state").get<std::string>());
  p.init_channels.assign(p.model.channels.size(), "");
  if (ji.contains("channels"))
    for (const auto& [name, w] : ji["channels"].items()) {
      Word word = w.get<std::string>();
      check_word(word, "init");
      p.init_channels[static_cast<std::size_t>(p.model.channel_id(name))] = word;
    }

  int auto_name = 0;
  for (const auto& jt : j.at("targets")) {
    NamedLcsTarget tgt;
    tgt.name = jt.contains("name") ? jt["name"].get<std::string>()
                                   : "target" + std::to_string(auto_name);
    ++auto_name;
    int state = p.model.state_id(jt.at("state").get<std::string>());
    if (jt.contains("expr")) {
      if (p.model.channels.size() != 1)
        fail(origin, "target " + tgt.name + ": expr targets need exactly one channel");
      L2Expr e = parse_l2(jt["expr"].get<std::string>());
      for (const Word& w : normalize_expr(e)) {
        check_word(w, "target " + tgt.name);
        tgt.constraints.push_back(LcsConstraint{state, {w}});
      }
    } else {
      LcsConstraint c;
      c.state = state;
      c.words.assign(p.model.channels.size(), "");
      if (jt.contains("words"))
        for (const auto& [name, w] : jt["words"].items()) {
          Word word = w.get<std::string>();
          check_word(word, "target " + tgt.name);
          c.words[static_cast<std::size_t>(p.model.channel_id(name))] = word;
        }
      tgt.constraints.push_back(std::move(c));
    }
    p.targets.push_back(std::move(tgt));
  }
  if (p.targets.empty()) fail(origin, "no targets");
  return p;
}

} // namespace

ModelFile parse_model_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": JSON error at " + line_col(text, e.byte) + ": " +
                     e.what());
  }
  try {
    ModelFile mf;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "tpn") {
      mf.kind = ModelFile::Kind::Tpn;
      mf.tpn = parse_tpn(j, origin);
    } else if (kind == "lcs") {
      mf.kind = ModelFile::Kind::Lcs;
      mf.lcs = parse_lcs(j, origin);
    } else {
      fail(origin, "unknown kind '" + kind + "' (expect tpn or lcs)");
    }
    return mf;
  } catch (const json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

ModelFile parse_model_file(const std::string& path) {
  return parse_model_text(read_file(path), path);
}

Marking parse_marking_file(const std::string& path, const Tpn& net) {
  std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": JSON error at " + line_col(text, e.byte) + ": " +
                     e.what());
  }
  try {
    std::vector<Token> tokens;
    for (const auto& jt : j) {
      PlaceId place = net.place_id(jt.at("place").get<std::string>());
      Rational age(0);
      const auto& ja = jt.at("age");
      if (ja.is_string()) {
        std::string s = ja.get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos)
          age = Rational(std::stoll(s));
        else
          age = Rational(std::stoll(s.substr(0, slash)),
                         std::stoll(s.substr(slash + 1)));
      } else {
        age = Rational(ja.get<std::int64_t>());
      }
      std::int64_t count = jt.value("count", std::int64_t{1});
      for (std::int64_t k = 0; k < count; ++k) tokens.push_back({place, age});
    }
    return make_marking(std::move(tokens));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string zone_to_json(const Zone& z, const Tpn& net, const std::string& name) {
  json j;
  if (!name.empty()) j["name"] = name;
  json tokens = json::array();
  for (int i = 1; i <= z.token_count(); ++i)
    tokens.push_back({{"place", net.places[static_cast<std::size_t>(z.place_of(i))]}});
  j["tokens"] = tokens;

  auto bound_json = [](Bound b) -> json {
    if (b.is_inf()) return "inf";
    return b.value();
  };
  json upper = json::array(), lower = json::array(), diff = json::array();
  for (int i = 1; i <= z.token_count(); ++i) {
    upper.push_back(bound_json(z.d(i, 0)));
    Bound lo = z.d(0, i);
    lower.push_back(lo.is_inf() ? json(0) : json(-lo.value()));
    json row = json::array();
    for (int k = 1; k <= z.token_count(); ++k)
      row.push_back(i == k ? json(0) : bound_json(z.d(i, k)));
    diff.push_back(row);
  }
  j["bounds"] = {{"upper", upper}, {"lower", lower}, {"diff", diff}};
  return j.dump();
}

std::string lcs_constraint_to_json(const LcsConstraint& c, const LcsModel& model) {
  json j;
  j["state"] = model.states[static_cast<std::size_t>(c.state)];
  json words;
  for (std::size_t i = 0; i < c.words.size(); ++i)
    words[model.channels[i]] = c.words[i];
  j["words"] = words;
  return j.dump();
}

std::string tpn_to_json(const TpnProblem& problem) {
  json j;
  j["kind"] = "tpn";
  j["places"] = problem.net.places;

  json transitions = json::array();
  for (const TpnTransition& t : problem.net.transitions) {
    json jt;
    jt["name"] = t.name;
    auto arcs = [&](const std::vector<Arc>& v) {
      json out = json::array();
      for (const Arc& a : v) {
        json ja;
        ja["place"] = problem.net.places[static_cast<std::size_t>(a.place)];
        ja["lo"] = a.interval.lo;
        ja["hi"] = a.interval.hi ? json(*a.interval.hi) : json("inf");
        out.push_back(ja);
      }
      return out;
    };
    jt["in"] = arcs(t.in);
    jt["out"] = arcs(t.out);
    transitions.push_back(jt);
  }
  j["transitions"] = transitions;

  json init = json::array();
  for (const auto& [place, e] : problem.init.places) {
    json ji;
    ji["place"] = problem.net.places[static_cast<std::size_t>(place)];
    ji["count"] = e.count ? json(*e.count) : json("omega");
    ji["age"] = e.age;
    init.push_back(ji);
  }
  j["init"] = init;

  json targets = json::array();
  for (const NamedZoneTarget& t : problem.targets)
    targets.push_back(json::parse(zone_to_json(t.zone, problem.net, t.name)));
  j["targets"] = targets;
  return j.dump(2) + "\n";
}

namespace {

struct L2Parser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void error(const std::string& msg) {
    throw ParseError("l2 expression: " + msg + " at offset " + std::to_string(pos));
  }

  L2Expr parse_or() {
    L2Expr e = parse_and();
    while (eat('+')) e = L2Expr::disj(std::move(e), parse_and());
    return e;
  }
  L2Expr parse_and() {
    L2Expr e = parse_cat();
    while (eat('&')) e = L2Expr::conj(std::move(e), parse_cat());
    return e;
  }
  L2Expr parse_cat() {
    L2Expr e = parse_atom();
    while (eat('.')) e = L2Expr::concat(std::move(e), parse_atom());
    return e;
  }
  L2Expr parse_atom() {
    skip_ws();
    if (eat('(')) {
      L2Expr e = parse_or();
      if (!eat(')')) error("expected ')'");
      return e;
    }
    if (pos < text.size() &&
        std::isalnum(static_cast<unsigned char>(text[pos])))
      return L2Expr::atom(text[pos++]);
    error("expected letter or '('");
  }
};

} // namespace

L2Expr parse_l2(const std::string& text) {
  L2Parser p{text};
  L2Expr e = p.parse_or();
  p.skip_ws();
  if (p.pos != text.size()) p.error("trailing input");
  return e;
}

} // namespace wsts
