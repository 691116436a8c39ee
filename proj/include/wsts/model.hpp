#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsts/backends.hpp"
#include "wsts/ezone.hpp"
#include "wsts/lcs.hpp"
#include "wsts/tpn.hpp"

namespace wsts {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NamedZoneTarget {
  std::string name;
  Zone zone; // normalized
};

struct NamedLcsTarget {
  std::string name;
  std::vector<LcsConstraint> constraints; // expr targets expand to several
};

struct TpnProblem {
  Tpn net;
  UniformInitSpec init;
  std::vector<NamedZoneTarget> targets;
};

struct LcsProblem {
  LcsModel model;
  int init_state = 0;
  std::vector<Word> init_channels;
  std::vector<NamedLcsTarget> targets;
};

struct ModelFile {
  enum class Kind { Tpn, Lcs };
  Kind kind = Kind::Tpn;
  TpnProblem tpn;
  LcsProblem lcs;
};

// Parses a model file; throws ParseError with a line/column diagnostic on
// malformed JSON and a descriptive message on semantic errors.
ModelFile parse_model_file(const std::string& path);
ModelFile parse_model_text(const std::string& text, const std::string& origin);

// A literal marking file: JSON array of {place, age, count?}.
Marking parse_marking_file(const std::string& path, const Tpn& net);

// Zone and constraint rendering in the model-file syntax.
std::string zone_to_json(const Zone& z, const Tpn& net, const std::string& name);
std::string lcs_constraint_to_json(const LcsConstraint& c, const LcsModel& model);

std::string tpn_to_json(const TpnProblem& problem);

// L2 grammar: expr := letter | "(" expr ")" | expr "." expr
//                   | expr "&" expr | expr "+" expr
// with precedence . > & > +, all left-associative.
L2Expr parse_l2(const std::string& text);

} // namespace wsts
