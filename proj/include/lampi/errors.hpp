#pragma once

#include <stdexcept>
#include <string>

namespace lampi {

// Syntax or validation error in an input file; line/col are 1-based.
struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
};

// A structurally valid derivation whose content cannot be translated:
// out-of-range indices, failed unification of participating literals,
// inconsistent split sets. Signals a corrupted trace, not a user error.
struct TraceError : std::runtime_error {
  long step;
  TraceError(long step, const std::string& msg)
      : std::runtime_error("step " + std::to_string(step) + ": " + msg),
        step(step) {}
};

// Ill-sorted data fed to a substitution or term constructor.
struct SortError : std::runtime_error {
  explicit SortError(const std::string& msg)
      : std::runtime_error("sort error: " + msg) {}
};

}  // namespace lampi
