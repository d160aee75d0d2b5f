#pragma once

#include <map>
#include <string>
#include <vector>

#include "lampi/dk.hpp"
#include "lampi/embedding.hpp"
#include "lampi/kernel.hpp"
#include "lampi/trace.hpp"

// Builds, for each derivation step, a kernel term of the conclusion's clause
// type from the premise constants, recomputing unifiers from the trace's
// participating-literal data.

namespace lampi::translate {

struct SorryRecord {
  uint64_t step;
  std::string rule;
};

struct Translation {
  kernel::Document doc;
  // Section banners and sorry markers, positioned for the printer.
  std::vector<io::DocComment> comments;
  std::vector<SorryRecord> sorries;
  // Diagnostic notes that do not affect the exit status (e.g. a conclusion
  // carrying strictly more conditions than its premises).
  std::vector<std::string> notes;
  size_t steps = 0;
  // Step id -> name and declared type of the emitted entry.
  std::map<uint64_t, std::pair<std::string, kernel::PiPtr>> step_entries;
};

Translation translate(const trace::TraceDocument& doc);

// Adapts a proof of |actual| into a proof of |expected| where the two
// literals are equations differing only in orientation; identity when they
// already agree. Unwraps a previous flip instead of stacking a second one.
kernel::PiPtr repair_orientation(const fol::Literal& expected, const fol::Literal& actual,
                                 const kernel::PiPtr& proof);

}  // namespace lampi::translate
