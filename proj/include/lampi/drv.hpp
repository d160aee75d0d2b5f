#pragma once

#include <string>

#include "lampi/trace.hpp"

// The .drv derivation-trace file format: line-oriented declarations followed
// by derivation steps. `#` starts a comment running to end of line.
//
//   drv 1 cnf.                          header (version, logic)
//   sort list 1.                        sort constructor with arity
//   fun cons [A] (A (list A)) (list A). function: sort params, args, result
//   pred P (iota).                      predicate
//   step 3 superposition [1, 2] | P(d); != d c | lits=1:1 pos=0 side=l.
//
// Clause literals are `;`-separated, prefix syntax, equations written
// `= s t` / `!= s t`, negated predicate atoms `~P(...)`. Variables are
// upper-case and may carry a sort annotation `X:iota` at any occurrence.
// Conditions on a step are written `{1, -5}` before the first `|`.

namespace lampi::io {

trace::TraceDocument parse_trace(const std::string& text);
std::string print_trace(const trace::TraceDocument& doc);

}  // namespace lampi::io
