#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lampi/errors.hpp"

// First-order terms, literals and clauses, polymorphic over sorts.
// All values are immutable after construction and shared freely.

namespace lampi::fol {

struct SortExpr;
using SortPtr = std::shared_ptr<const SortExpr>;

// Either a sort variable or a sort-constructor application.
// The default sort of individuals is the nullary constructor "iota".
struct SortExpr {
  bool is_var;
  std::string name;           // variable name or constructor head
  std::vector<SortPtr> args;  // constructor arguments
};

SortPtr mk_sort_var(std::string name);
SortPtr mk_sort(std::string head, std::vector<SortPtr> args = {});
const SortPtr& sort_iota();

bool equal(const SortPtr& a, const SortPtr& b);
std::string to_string(const SortPtr& s);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// A variable (with its sort) or a function application. Applications of
// polymorphic symbols carry the sort arguments explicitly; `sort` is the
// instantiated result sort, fixed at construction.
struct Term {
  bool is_var;
  std::string name;  // variable name or function head
  SortPtr sort;
  std::vector<SortPtr> sort_args;
  std::vector<TermPtr> args;
};

// Declared sort constructors and function/predicate symbols.
class SymbolTable {
 public:
  struct Symbol {
    bool is_pred;
    std::vector<std::string> sort_params;
    std::vector<SortPtr> arg_sorts;  // over sort_params
    SortPtr result;                  // functions only
  };

  SymbolTable();

  void declare_sort(const std::string& name, int arity);
  void declare_fun(const std::string& name, std::vector<std::string> sort_params,
                   std::vector<SortPtr> arg_sorts, SortPtr result);
  void declare_pred(const std::string& name, std::vector<std::string> sort_params,
                    std::vector<SortPtr> arg_sorts);

  bool has_sort(const std::string& name) const;
  int sort_arity(const std::string& name) const;
  const Symbol* find(const std::string& name) const;
  const Symbol& get(const std::string& name) const;

  const std::map<std::string, int>& sorts() const { return sorts_; }
  const std::vector<std::string>& sort_order() const { return sort_order_; }
  const std::vector<std::string>& symbol_order() const { return symbol_order_; }

  // Checks that `s` only uses declared constructors at the right arities.
  void validate_sort(const SortPtr& s) const;

 private:
  std::map<std::string, int> sorts_;
  std::map<std::string, Symbol> symbols_;
  std::vector<std::string> sort_order_;
  std::vector<std::string> symbol_order_;
};

TermPtr mk_var(std::string name, SortPtr sort);
// Validates arity and argument sorts against the table and computes the
// instantiated result sort.
TermPtr mk_app(const SymbolTable& tab, const std::string& head,
               std::vector<SortPtr> sort_args, std::vector<TermPtr> args);
// Trusted constructor used by substitution internals.
TermPtr mk_app_raw(std::string head, std::vector<SortPtr> sort_args,
                   std::vector<TermPtr> args, SortPtr sort);

bool equal(const TermPtr& a, const TermPtr& b);
std::string to_string(const TermPtr& t);

// An atom with polarity. Equations keep the sort of both sides.
struct Literal {
  bool positive = true;
  bool is_eq = false;
  // predicate atom
  std::string pred;
  std::vector<SortPtr> sort_args;
  std::vector<TermPtr> args;
  // equation atom
  TermPtr lhs, rhs;
  SortPtr eq_sort;
};

Literal mk_pred_literal(const SymbolTable& tab, bool positive,
                        const std::string& pred, std::vector<SortPtr> sort_args,
                        std::vector<TermPtr> args);
Literal mk_eq_literal(bool positive, TermPtr lhs, TermPtr rhs);
Literal flip_equation(const Literal& l);

bool equal(const Literal& a, const Literal& b);
// Same atom up to swapping the sides of an equation.
bool equal_flipped(const Literal& a, const Literal& b);
std::string to_string(const Literal& l);

// Universally quantified disjunction of literals. The binder lists hold the
// free (sort) variables in first-occurrence order; see closure_normalize.
struct Clause {
  std::vector<std::string> sort_vars;
  std::vector<std::pair<std::string, SortPtr>> term_vars;
  std::vector<Literal> literals;
};

bool equal(const Clause& a, const Clause& b);
std::string to_string(const Clause& c);

// Finite map from sort/term variables to sorts/terms.
struct Substitution {
  std::map<std::string, SortPtr> sort_map;
  std::map<std::string, TermPtr> term_map;

  bool empty() const { return sort_map.empty() && term_map.empty(); }
};

SortPtr apply(const Substitution& sub, const SortPtr& s);
// Throws SortError if a variable is replaced by a term of a different sort.
TermPtr apply(const Substitution& sub, const TermPtr& t);
Literal apply(const Substitution& sub, const Literal& l);
// Applies to literals and rebuilds the binder lists via closure_normalize.
Clause apply(const Substitution& sub, const Clause& c);

// compose(second, first) applies like `second` after `first`.
Substitution compose(const Substitution& second, const Substitution& first);

// Free variables in first-occurrence order (depth-first, left to right).
void scan_free_vars(const TermPtr& t, std::vector<std::pair<std::string, SortPtr>>& term_vars,
                    std::vector<std::string>& sort_vars);
void scan_free_vars(const Literal& l, std::vector<std::pair<std::string, SortPtr>>& term_vars,
                    std::vector<std::string>& sort_vars);

// Rebuilds sort_vars/term_vars from the literals; idempotent.
Clause closure_normalize(const Clause& c);

// Robinson unification with occurs check; sorts are unified alongside terms.
// Returns an idempotent most general unifier.
std::optional<Substitution> unify(const TermPtr& a, const TermPtr& b);
std::optional<Substitution> unify_sorts(const SortPtr& a, const SortPtr& b);
// Unifies two atoms (predicate heads, sort arguments, term arguments, or both
// sides of equations in the given orientation). Polarity is ignored.
std::optional<Substitution> unify_atoms(const Literal& a, const Literal& b);

// One-sided unification: only pattern variables are bound. `seed` carries
// bindings accumulated so far (used to match several literals in one pass).
std::optional<Substitution> match_term(const TermPtr& pattern, const TermPtr& target,
                                       const Substitution& seed = {});
std::optional<Substitution> match_atoms(const Literal& pattern, const Literal& target,
                                        const Substitution& seed = {});

// Fresh-name supply; the only mutable state in this module.
class FreshNames {
 public:
  std::string fresh(const std::string& base, const std::set<std::string>& avoid);

 private:
  std::atomic<uint64_t> counter_{0};
};

// Renames the second clause apart from the first; returns both clauses and
// the renaming applied to the second.
std::tuple<Clause, Clause, Substitution> rename_apart(const Clause& c1, const Clause& c2,
                                                      FreshNames& names);

// Renames every variable of `c` to a fresh name not in `avoid`.
std::pair<Clause, Substitution> freshen_clause(const Clause& c, FreshNames& names,
                                               const std::set<std::string>& avoid);

std::set<std::string> var_names(const Clause& c);
std::set<std::string> all_var_names(const Clause& c);  // term and sort vars

}  // namespace lampi::fol
