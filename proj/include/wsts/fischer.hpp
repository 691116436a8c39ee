#pragma once

#include "wsts/model.hpp"

namespace wsts {

// The timed Petri net encoding of the parameterized mutual-exclusion
// protocol: tokens in A/B/C/CS are processes, the daggered places mark
// the process whose index the shared variable holds, and a token in udf
// marks the variable as undefined.  Targets Z1..Z3 ask for two tokens in
// the critical-section places.
TpnProblem fischer_problem();

// Same net with the waiting guard on `enter` removed; the protocol is
// then broken and at least one target becomes coverable.
TpnProblem fischer_problem_broken();

} // namespace wsts
