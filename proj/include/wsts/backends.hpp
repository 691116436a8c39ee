#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wsts/ezone.hpp"
#include "wsts/lcs.hpp"
#include "wsts/tpn.hpp"

namespace wsts {

// Existential-zone constraint system over a timed Petri net.
struct ZoneSystem {
  using Constraint = Zone;

  const Tpn* net = nullptr;
  UniformInitSpec init;
  std::optional<Marking> literal_init; // overrides the uniform family

  bool entails(const Zone& a, const Zone& b) const { return zone_entails(a, b); }

  std::vector<std::pair<Zone, std::string>> pre(const Zone& z) const {
    std::vector<std::pair<Zone, std::string>> out;
    Zone zt = normalize(pre_time(z));
    if (is_consistent(zt)) out.emplace_back(std::move(zt), "time");
    for (const TpnTransition& t : net->transitions)
      for (Zone& p : pre_discrete(z, t)) out.emplace_back(std::move(p), t.name);
    return out;
  }

  bool init_satisfiable(const Zone& z) const {
    if (literal_init) return member(*literal_init, z).has_value();
    return uniform_init_satisfiable(z, init);
  }

  std::string canonical_key(const Zone& z) const { return wsts::canonical_key(z); }
};

// Word-constraint system over a lossy channel system.
struct LcsSystem {
  using Constraint = LcsConstraint;

  const LcsModel* model = nullptr;
  int init_state = 0;
  std::vector<Word> init_channels; // literal initial channel contents

  bool entails(const LcsConstraint& a, const LcsConstraint& b) const {
    return lcs_entails(a, b);
  }

  std::vector<std::pair<LcsConstraint, std::string>> pre(
      const LcsConstraint& c) const {
    return lcs_pre(c, *model);
  }

  bool init_satisfiable(const LcsConstraint& c) const {
    if (c.state != init_state) return false;
    for (std::size_t i = 0; i < c.words.size(); ++i)
      if (!subword(c.words[i], init_channels[i])) return false;
    return true;
  }

  std::string canonical_key(const LcsConstraint& c) const {
    return lcs_canonical_key(c);
  }
};

} // namespace wsts
