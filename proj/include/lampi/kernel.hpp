#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "lampi/pi_term.hpp"

// Global context and trusted checking core: typed constants, definitions,
// rewrite rules, reduction to weak head normal form, conversion, and
// bidirectional type checking.

namespace lampi::kernel {

struct SignatureEntry {
  std::string name;
  PiPtr type;
  std::optional<PiPtr> body;  // present for definitions
  bool definable = false;     // may receive rewrite rules (printed `def`)
};

// [x1, ..., xn] lhs --> rhs. Context variables appear as free variables.
// Annotations are optional; missing ones are elaborated from the left side.
struct RewriteRule {
  std::vector<std::pair<std::string, std::optional<PiPtr>>> ctx;
  PiPtr lhs;
  PiPtr rhs;
};

using DocItem = std::variant<SignatureEntry, RewriteRule>;
using Document = std::vector<DocItem>;

struct KernelError : std::runtime_error {
  std::string entry;  // filled in by check_document
  KernelError(std::string entry, const std::string& msg)
      : std::runtime_error(entry.empty() ? msg : entry + ": " + msg),
        entry(std::move(entry)) {}
};

struct TypeError : KernelError {
  using KernelError::KernelError;
};

struct BudgetExhausted : KernelError {
  using KernelError::KernelError;
};

// Immutable once loading completes; loading is strictly sequential.
class Signature {
 public:
  void add_entry(SignatureEntry e);
  // Validates the head (declared, definable, no body) and that the pattern is
  // first-order; asserts non-overlap against rules already installed.
  void add_rule(RewriteRule r);

  const SignatureEntry* find(const std::string& name) const;
  const std::vector<RewriteRule>* rules_for(const std::string& head) const;
  const std::vector<SignatureEntry>& entries() const { return entries_; }

  // Number of leading spine arguments consumed by a rule's left side.
  static size_t rule_arity(const RewriteRule& r);

 private:
  std::vector<SignatureEntry> entries_;
  std::unordered_map<std::string, size_t> index_;
  std::unordered_map<std::string, std::vector<RewriteRule>> rules_;
};

struct Budget {
  uint64_t limit = 10'000'000;
  uint64_t used = 0;

  void step() {
    if (++used > limit) throw BudgetExhausted("", "reduction budget exhausted");
  }
};

// Weak head normal form under beta, definition unfolding and rewrite rules.
PiPtr whnf(const Signature& sig, PiPtr t, Budget& budget);
// Convertibility modulo beta and the signature's rules.
bool conv(const Signature& sig, const PiPtr& a, const PiPtr& b, Budget& budget);

using Context = std::vector<std::pair<std::string, PiPtr>>;

class Checker {
 public:
  Checker(const Signature& sig, Budget& budget) : sig_(sig), budget_(budget) {}

  // Returns the type of t; binders are opened with fresh free variables, so
  // bound variables never reach the checker. `ctx` types any free variables
  // already present (rewrite-rule contexts).
  PiPtr infer(const PiPtr& t, Context ctx = {});
  void check(const PiPtr& t, const PiPtr& type, Context ctx = {});

 private:
  PiPtr infer_in(Context& ctx, const PiPtr& t, std::string path);
  void check_in(Context& ctx, const PiPtr& t, const PiPtr& type, std::string path);
  std::string fresh_name();

  const Signature& sig_;
  Budget& budget_;
  uint64_t fresh_ = 0;
};

struct EntryReport {
  std::string name;
  bool ok;
  std::string message;
};

struct CheckOptions {
  uint64_t budget = 10'000'000;
  bool permissive = false;  // record failures and continue
};

struct CheckReport {
  bool ok = true;
  std::vector<EntryReport> entries;
  size_t checked = 0;
  uint64_t reductions = 0;
  double wall_ms = 0.0;
  std::string first_error;
};

// Processes items in order: declarations must be well-sorted, definition
// bodies must check against their types, rule sides must share a type under
// the rule context. On success `out` (if given) receives the built signature.
CheckReport check_document(const Document& doc, const CheckOptions& opts,
                           Signature* out = nullptr);

// Elaborates missing context annotations of a rule from its left side and
// returns the common type of both sides. Throws TypeError on failure.
PiPtr check_rule(const Signature& sig, const RewriteRule& r, Budget& budget,
                 Context* elaborated = nullptr);

}  // namespace lampi::kernel
