#pragma once

#include <string>
#include <vector>

#include "lampi/fol.hpp"
#include "lampi/kernel.hpp"

// Shallow embedding of (polymorphic) first-order logic into the kernel:
// the fixed prelude, the deep and shallow literal translations, clause types,
// inhabitation, and the equation-commutativity lemma library.

namespace lampi::embed {

// Prelude constant names.
inline constexpr const char* k_set = "Set";
inline constexpr const char* k_el = "El";
inline constexpr const char* k_iota = "iota";
inline constexpr const char* k_prop = "Prop";
inline constexpr const char* k_prf = "prf";
inline constexpr const char* k_bot = "bot";
inline constexpr const char* k_imp = "imp";
inline constexpr const char* k_not = "not";
inline constexpr const char* k_forall = "forall";
inline constexpr const char* k_forall_pred = "forallP";
inline constexpr const char* k_forall_set = "forallSet";
inline constexpr const char* k_eq = "eq";
inline constexpr const char* k_star = "star";
inline constexpr const char* k_refl = "refl";
inline constexpr const char* k_comml = "comml";
inline constexpr const char* k_comml_not = "comml_not";

// User identifiers are prefixed and hex-escaped so they can never collide
// with prelude names, step names or split labels.
std::string mangle(const std::string& name);
std::string step_name(uint64_t id);
std::string sorry_name(uint64_t id);
std::string split_name(uint64_t id);

// The fixed embedding prelude, in two parts: the first-order encoding and the
// shorthand lemmas (star, refl, comml, comml_not). Deterministic.
kernel::Document prelude_encoding();
kernel::Document prelude_shorthands();
kernel::Document emit_prelude();  // both parts, in order

// Type declarations for user symbols.
kernel::SignatureEntry declare_sort_ctor(const std::string& name, int arity);
kernel::SignatureEntry declare_symbol(const fol::SymbolTable& tab, const std::string& name);

// Sort and term translations; variables become free variables named as in the
// clause, to be closed by the caller's binders.
kernel::PiPtr sort_term(const fol::SortPtr& s);
kernel::PiPtr deep_term(const fol::TermPtr& t);
// The atom without polarity (eq a s t / P s...).
kernel::PiPtr deep_atom(const fol::Literal& l);
// The literal with polarity: negatives are wrapped in `not`.
kernel::PiPtr deep_literal(const fol::Literal& l);
// prf <L> -> prf bot
kernel::PiPtr shallow_literal(const fol::Literal& l);
kernel::PiPtr shallow_of_prop(const kernel::PiPtr& prop);
kernel::PiPtr prf(const kernel::PiPtr& prop);

// Clause representation: sort binders, then value binders, then one argument
// per literal, ending in prf bot.
kernel::PiPtr clause_type(const fol::Clause& c);

struct Condition {
  uint64_t split_id;
  bool positive;

  bool operator==(const Condition&) const = default;
  bool operator<(const Condition& o) const {
    return split_id < o.split_id || (split_id == o.split_id && positive < o.positive);
  }
};

// |~sp_i| for a positive condition, |~~sp_j| for a negative one.
kernel::PiPtr condition_arg_type(const Condition& c);
// Condition arguments first, then the plain clause representation.
kernel::PiPtr avatar_clause_type(const fol::Clause& c, const std::vector<Condition>& conds);

// star applied to the translated sort; type El <s>.
kernel::PiPtr inhabit(const fol::SortPtr& s);

// The quantified implication form of a split component: sort and value
// variables quantified, then not-<L1> ==> ... ==> not-<Ln> ==> bot, at Prop.
kernel::PiPtr component_formula(const fol::Clause& c);

// Given proof : prf (eq <s> a b), a proof of prf (eq <s> b a).
kernel::PiPtr leibniz_sym(const kernel::PiPtr& sort, const kernel::PiPtr& a,
                          const kernel::PiPtr& b, const kernel::PiPtr& proof);

}  // namespace lampi::embed
