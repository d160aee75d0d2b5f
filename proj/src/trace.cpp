#include "lampi/trace.hpp"

namespace lampi::trace {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Input: return "input";
    case Rule::Resolution: return "resolution";
    case Rule::SubsumptionResolution: return "subsumption_resolution";
    case Rule::Factoring: return "factoring";
    case Rule::Superposition: return "superposition";
    case Rule::SimultaneousSuperposition: return "simultaneous_superposition";
    case Rule::Demodulation: return "demodulation";
    case Rule::EqualityResolution: return "equality_resolution";
    case Rule::AvatarDefinition: return "avatar_definition";
    case Rule::AvatarSplit: return "avatar_split";
    case Rule::AvatarComponent: return "avatar_component";
    case Rule::AvatarContradiction: return "avatar_contradiction";
    case Rule::Unsupported: return "unsupported";
  }
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
  static const std::pair<const char*, Rule> table[] = {
      {"input", Rule::Input},
      {"resolution", Rule::Resolution},
      {"subsumption_resolution", Rule::SubsumptionResolution},
      {"factoring", Rule::Factoring},
      {"superposition", Rule::Superposition},
      {"simultaneous_superposition", Rule::SimultaneousSuperposition},
      {"demodulation", Rule::Demodulation},
      {"equality_resolution", Rule::EqualityResolution},
      {"avatar_definition", Rule::AvatarDefinition},
      {"avatar_split", Rule::AvatarSplit},
      {"avatar_component", Rule::AvatarComponent},
      {"avatar_contradiction", Rule::AvatarContradiction},
  };
  for (const auto& [n, r] : table)
    if (name == n) return r;
  return std::nullopt;
}

const DerivationStep* TraceDocument::find_step(uint64_t id) const {
  for (const auto& s : steps)
    if (s.id == id) return &s;
  return nullptr;
}

}  // namespace lampi::trace
