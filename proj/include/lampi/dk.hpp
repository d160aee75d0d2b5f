#pragma once

#include <string>
#include <vector>

#include "lampi/kernel.hpp"

// Printing kernel documents in Dedukti v2 concrete syntax, and reading back
// the emitted subset. Output is UTF-8 with LF line endings and deterministic
// byte for byte.

namespace lampi::io {

// A comment line emitted immediately before the item at `index`
// (index == doc.size() appends at the end). Section banners and sorry
// warnings use this; the reader skips all comments.
struct DocComment {
  size_t index;
  std::string text;
  bool blank_before = false;
};

struct DkPrintOptions {
  std::vector<DocComment> comments;
  size_t width = 100;
};

std::string print_dk(const kernel::Document& doc, const DkPrintOptions& opts = {});
std::string print_term_dk(const kernel::PiPtr& t);

kernel::Document parse_dk(const std::string& text);

}  // namespace lampi::io
