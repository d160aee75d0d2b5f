#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lampi/embedding.hpp"
#include "lampi/fol.hpp"

// The derivation-trace input format: one step per inference, with the
// participating data needed to recompute substitutions during translation.

namespace lampi::trace {

enum class Rule {
  Input,
  Resolution,
  SubsumptionResolution,
  Factoring,
  Superposition,
  SimultaneousSuperposition,
  Demodulation,
  EqualityResolution,
  AvatarDefinition,
  AvatarSplit,
  AvatarComponent,
  AvatarContradiction,
  Unsupported,
};

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);

// Rule-specific participating data.
struct Extras {
  // resolution / subsumption_resolution / factoring / superposition:
  // literal index in the first premise : literal index in the second
  // (factoring: both indices in the single premise).
  std::optional<std::pair<int, int>> lits;
  // superposition / demodulation: path into the target literal's atom.
  // Equations start 0 = left side, 1 = right side; then argument positions.
  std::vector<int> pos;
  // superposition / demodulation: which stated side of the equation rewrites.
  char side = 'l';
  // equality_resolution: the removed literal.
  std::optional<int> lit;
  // avatar_definition / avatar_component: the split label id.
  std::optional<uint64_t> split;
  // avatar_split: for each split, the premise literal indices making up the
  // component, listed in the component definition's literal order.
  std::vector<std::pair<uint64_t, std::vector<int>>> partition;
};

struct DerivationStep {
  uint64_t id = 0;
  Rule rule = Rule::Input;
  std::string rule_text;  // as written; meaningful for Unsupported
  std::vector<uint64_t> premises;
  std::vector<embed::Condition> conditions;
  fol::Clause conclusion;  // closure-normalized
  Extras extras;
};

enum class Logic { Cnf, ManySorted, Polymorphic };

struct TraceDocument {
  int version = 1;
  Logic logic = Logic::Cnf;
  fol::SymbolTable symbols;
  std::vector<DerivationStep> steps;

  const DerivationStep* find_step(uint64_t id) const;
};

}  // namespace lampi::trace
