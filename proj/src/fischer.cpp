#include "wsts/fischer.hpp"

namespace wsts {

namespace {

const Interval kAny{0, std::nullopt};   // [0, inf)
const Interval kZero{0, 0};             // [0, 0]
const Interval kTimeout{0, 1};          // [0, 1]
const Interval kWait{2, std::nullopt};  // [2, inf)

} // namespace

TpnProblem fischer_problem() {
  TpnProblem p;
  p.net.places = {"A", "B", "C", "CS", "Ad", "Bd", "Cd", "CSd", "udf"};
  auto id = [&](const char* name) { return p.net.place_id(name); };

  auto add = [&](std::string name, std::vector<Arc> in, std::vector<Arc> out) {
    p.net.transitions.push_back({std::move(name), std::move(in), std::move(out)});
  };

  // A -> B when the variable is undefined; the process clock resets.
  add("try", {{id("A"), kAny}, {id("udf"), kAny}}, {{id("B"), kZero}, {id("udf"), kAny}});
  // B -> C within one time unit, writing the process index: the variable
  // holder moves to the daggered C and whoever held it before is
  // released undaggered.
  add("setFromUdf", {{id("B"), kTimeout}, {id("udf"), kAny}}, {{id("Cd"), kZero}});
  for (const char* s : {"A", "B", "C", "CS"}) {
    std::string sd = std::string(s) + "d";
    add("setOverwrite(" + std::string(s) + ")",
        {{id("B"), kTimeout}, {p.net.place_id(sd), kAny}},
        {{id("Cd"), kZero}, {id(s), kAny}});
  }
  // C -> CS after waiting strictly longer than the write timeout.
  add("enter", {{id("Cd"), kWait}}, {{id("CSd"), kAny}});
  // C -> A when the variable no longer holds the process index.
  add("fail", {{id("C"), kAny}}, {{id("A"), kAny}});
  // Leaving the critical section releases the variable if still held.
  add("exitD", {{id("CSd"), kAny}}, {{id("A"), kAny}, {id("udf"), kAny}});
  add("exit", {{id("CS"), kAny}}, {{id("A"), kAny}});

  p.init.places[id("A")] = {std::nullopt, 0}; // arbitrarily many processes
  p.init.places[id("udf")] = {1, 0};

  auto two_token_zone = [&](const char* p1, const char* p2) {
    std::vector<Bound> dbm(9, Bound::inf());
    for (int i = 0; i < 3; ++i) dbm[static_cast<std::size_t>(i) * 3 + i] = Bound::zero();
    dbm[1] = Bound::zero(); // D(0,1) = 0
    dbm[2] = Bound::zero(); // D(0,2) = 0
    return normalize(Zone({id(p1), id(p2)}, dbm));
  };
  p.targets.push_back({"Z1", two_token_zone("CS", "CS")});
  p.targets.push_back({"Z2", two_token_zone("CS", "CSd")});
  p.targets.push_back({"Z3", two_token_zone("CSd", "CSd")});
  return p;
}

TpnProblem fischer_problem_broken() {
  TpnProblem p = fischer_problem();
  for (TpnTransition& t : p.net.transitions)
    if (t.name == "enter") t.in[0].interval = kAny;
  return p;
}

} // namespace wsts
