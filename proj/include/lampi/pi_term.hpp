#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

// Term syntax of the lambda-Pi calculus modulo. Bound variables are de Bruijn
// indices carrying a printing hint; free variables (rewrite-rule context
// variables and the checker's locally opened binders) are named.

namespace lampi::kernel {

struct PiTerm;
using PiPtr = std::shared_ptr<const PiTerm>;

enum class Tag { Kind, Type, Const, FVar, BVar, App, Lam, Pi };

struct PiTerm {
  Tag tag;
  std::string name;  // Const/FVar name; binder hint for Lam/Pi and BVar
  int index = 0;     // BVar only
  PiPtr a, b;        // App: fun/arg, Lam: annotation/body, Pi: domain/codomain
};

const PiPtr& t_kind();
const PiPtr& t_type();
PiPtr t_const(std::string name);
PiPtr t_fvar(std::string name);
PiPtr t_bvar(int index, std::string hint = "");
PiPtr t_app(PiPtr fun, PiPtr arg);
PiPtr t_app(PiPtr fun, const std::vector<PiPtr>& args);
PiPtr t_lam(std::string hint, PiPtr annot, PiPtr body);
PiPtr t_pi(std::string hint, PiPtr dom, PiPtr cod);
// Non-dependent product A -> B (codomain does not use the bound variable).
PiPtr t_arrow(PiPtr dom, PiPtr cod);

// Structural equality up to binder hints (alpha-equivalence).
bool alpha_equal(const PiPtr& a, const PiPtr& b);

// Substitutes `repl` (locally closed) for bound variable 0 of `body`.
PiPtr instantiate(const PiPtr& body, const PiPtr& repl);
// Shifts every bound-variable index up by one (used to push a term under a
// binder it does not reference).
PiPtr shift_up(const PiPtr& t);
// Abstracts the free variable `name`: occurrences become bound variable 0.
// The result is intended as the immediate body of a new binder.
PiPtr close_fvar(const PiPtr& t, const std::string& name);
// Builds a binder over the free variable `name`, hinted `hint`.
PiPtr lam_closing(const std::string& name, std::string hint, PiPtr annot, const PiPtr& body);
PiPtr pi_closing(const std::string& name, std::string hint, PiPtr dom, const PiPtr& body);

PiPtr subst_fvars(const PiPtr& t, const std::map<std::string, PiPtr>& map);

bool has_fvar(const PiPtr& t, const std::string& name);
bool has_any_fvar(const PiPtr& t);
// True if the immediate body of a binder references bound variable 0.
bool uses_bvar0(const PiPtr& body);
void collect_names(const PiPtr& t, std::set<std::string>& consts, std::set<std::string>& fvars);

// Spine view: f a b c  ==  head f, args [a, b, c].
struct Spine {
  PiPtr head;
  std::vector<PiPtr> args;
};
Spine decompose(PiPtr t);
PiPtr recompose(PiPtr head, const std::vector<PiPtr>& args, size_t from = 0);

// Compact single-line rendering for diagnostics.
std::string debug_string(const PiPtr& t);

}  // namespace lampi::kernel
