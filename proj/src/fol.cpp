#include "lampi/fol.hpp"

#include <algorithm>
#include <sstream>

namespace lampi::fol {

SortPtr mk_sort_var(std::string name) {
  return std::make_shared<SortExpr>(SortExpr{true, std::move(name), {}});
}

SortPtr mk_sort(std::string head, std::vector<SortPtr> args) {
  return std::make_shared<SortExpr>(SortExpr{false, std::move(head), std::move(args)});
}

const SortPtr& sort_iota() {
  static const SortPtr iota = mk_sort("iota");
  return iota;
}

bool equal(const SortPtr& a, const SortPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->is_var != b->is_var || a->name != b->name) return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

std::string to_string(const SortPtr& s) {
  if (s->is_var || s->args.empty()) return s->name;
  std::string out = "(" + s->name;
  for (const auto& a : s->args) out += " " + to_string(a);
  return out + ")";
}

SymbolTable::SymbolTable() {
  sorts_["iota"] = 0;
  sort_order_.push_back("iota");
}

void SymbolTable::declare_sort(const std::string& name, int arity) {
  if (sorts_.count(name)) throw SortError("duplicate sort constructor '" + name + "'");
  if (symbols_.count(name)) throw SortError("'" + name + "' already declared as a symbol");
  sorts_[name] = arity;
  sort_order_.push_back(name);
}

void SymbolTable::declare_fun(const std::string& name, std::vector<std::string> sort_params,
                              std::vector<SortPtr> arg_sorts, SortPtr result) {
  if (symbols_.count(name)) throw SortError("duplicate symbol '" + name + "'");
  symbols_[name] = Symbol{false, std::move(sort_params), std::move(arg_sorts), std::move(result)};
  symbol_order_.push_back(name);
}

void SymbolTable::declare_pred(const std::string& name, std::vector<std::string> sort_params,
                               std::vector<SortPtr> arg_sorts) {
  if (symbols_.count(name)) throw SortError("duplicate symbol '" + name + "'");
  symbols_[name] = Symbol{true, std::move(sort_params), std::move(arg_sorts), nullptr};
  symbol_order_.push_back(name);
}

bool SymbolTable::has_sort(const std::string& name) const { return sorts_.count(name) > 0; }

int SymbolTable::sort_arity(const std::string& name) const {
  auto it = sorts_.find(name);
  if (it == sorts_.end()) throw SortError("unknown sort constructor '" + name + "'");
  return it->second;
}

const SymbolTable::Symbol* SymbolTable::find(const std::string& name) const {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second;
}

const SymbolTable::Symbol& SymbolTable::get(const std::string& name) const {
  const Symbol* s = find(name);
  if (!s) throw SortError("unknown symbol '" + name + "'");
  return *s;
}

void SymbolTable::validate_sort(const SortPtr& s) const {
  if (s->is_var) return;
  if (!has_sort(s->name)) throw SortError("unknown sort constructor '" + s->name + "'");
  if ((int)s->args.size() != sort_arity(s->name))
    throw SortError("sort constructor '" + s->name + "' expects " +
                    std::to_string(sort_arity(s->name)) + " arguments");
  for (const auto& a : s->args) validate_sort(a);
}

TermPtr mk_var(std::string name, SortPtr sort) {
  return std::make_shared<Term>(Term{true, std::move(name), std::move(sort), {}, {}});
}

TermPtr mk_app_raw(std::string head, std::vector<SortPtr> sort_args,
                   std::vector<TermPtr> args, SortPtr sort) {
  return std::make_shared<Term>(
      Term{false, std::move(head), std::move(sort), std::move(sort_args), std::move(args)});
}

namespace {

// Instantiates a declared sort template with the symbol's sort arguments.
SortPtr instantiate_sort(const SortPtr& tmpl, const std::vector<std::string>& params,
                         const std::vector<SortPtr>& actuals) {
  if (tmpl->is_var) {
    for (size_t i = 0; i < params.size(); ++i)
      if (params[i] == tmpl->name) return actuals[i];
    return tmpl;
  }
  if (tmpl->args.empty()) return tmpl;
  std::vector<SortPtr> args;
  args.reserve(tmpl->args.size());
  for (const auto& a : tmpl->args) args.push_back(instantiate_sort(a, params, actuals));
  return mk_sort(tmpl->name, std::move(args));
}

}  // namespace

TermPtr mk_app(const SymbolTable& tab, const std::string& head,
               std::vector<SortPtr> sort_args, std::vector<TermPtr> args) {
  const SymbolTable::Symbol& sym = tab.get(head);
  if (sym.is_pred) throw SortError("'" + head + "' is a predicate, not a function");
  if (sort_args.size() != sym.sort_params.size())
    throw SortError("'" + head + "' expects " + std::to_string(sym.sort_params.size()) +
                    " sort arguments, got " + std::to_string(sort_args.size()));
  if (args.size() != sym.arg_sorts.size())
    throw SortError("'" + head + "' expects " + std::to_string(sym.arg_sorts.size()) +
                    " arguments, got " + std::to_string(args.size()));
  for (size_t i = 0; i < args.size(); ++i) {
    SortPtr want = instantiate_sort(sym.arg_sorts[i], sym.sort_params, sort_args);
    if (!equal(args[i]->sort, want))
      throw SortError("argument " + std::to_string(i) + " of '" + head + "' has sort " +
                      to_string(args[i]->sort) + ", expected " + to_string(want));
  }
  SortPtr result = instantiate_sort(sym.result, sym.sort_params, sort_args);
  return mk_app_raw(head, std::move(sort_args), std::move(args), std::move(result));
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->is_var != b->is_var || a->name != b->name) return false;
  if (a->is_var) return equal(a->sort, b->sort);
  if (a->sort_args.size() != b->sort_args.size() || a->args.size() != b->args.size())
    return false;
  for (size_t i = 0; i < a->sort_args.size(); ++i)
    if (!equal(a->sort_args[i], b->sort_args[i])) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

std::string to_string(const TermPtr& t) {
  if (t->is_var) return t->name;
  std::string out = t->name;
  if (!t->sort_args.empty()) {
    out += "[";
    for (size_t i = 0; i < t->sort_args.size(); ++i)
      out += (i ? "," : "") + to_string(t->sort_args[i]);
    out += "]";
  }
  if (!t->args.empty()) {
    out += "(";
    for (size_t i = 0; i < t->args.size(); ++i) out += (i ? "," : "") + to_string(t->args[i]);
    out += ")";
  }
  return out;
}

Literal mk_pred_literal(const SymbolTable& tab, bool positive, const std::string& pred,
                        std::vector<SortPtr> sort_args, std::vector<TermPtr> args) {
  const SymbolTable::Symbol& sym = tab.get(pred);
  if (!sym.is_pred) throw SortError("'" + pred + "' is a function, not a predicate");
  if (sort_args.size() != sym.sort_params.size())
    throw SortError("'" + pred + "' expects " + std::to_string(sym.sort_params.size()) +
                    " sort arguments");
  if (args.size() != sym.arg_sorts.size())
    throw SortError("'" + pred + "' expects " + std::to_string(sym.arg_sorts.size()) +
                    " arguments, got " + std::to_string(args.size()));
  for (size_t i = 0; i < args.size(); ++i) {
    SortPtr want = instantiate_sort(sym.arg_sorts[i], sym.sort_params, sort_args);
    if (!equal(args[i]->sort, want))
      throw SortError("argument " + std::to_string(i) + " of '" + pred + "' has sort " +
                      to_string(args[i]->sort) + ", expected " + to_string(want));
  }
  Literal l;
  l.positive = positive;
  l.is_eq = false;
  l.pred = pred;
  l.sort_args = std::move(sort_args);
  l.args = std::move(args);
  return l;
}

Literal mk_eq_literal(bool positive, TermPtr lhs, TermPtr rhs) {
  if (!equal(lhs->sort, rhs->sort))
    throw SortError("equation sides have sorts " + to_string(lhs->sort) + " and " +
                    to_string(rhs->sort));
  Literal l;
  l.positive = positive;
  l.is_eq = true;
  l.eq_sort = lhs->sort;
  l.lhs = std::move(lhs);
  l.rhs = std::move(rhs);
  return l;
}

Literal flip_equation(const Literal& l) {
  Literal out = l;
  std::swap(out.lhs, out.rhs);
  return out;
}

bool equal(const Literal& a, const Literal& b) {
  if (a.positive != b.positive || a.is_eq != b.is_eq) return false;
  if (a.is_eq) return equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs);
  if (a.pred != b.pred || a.sort_args.size() != b.sort_args.size() ||
      a.args.size() != b.args.size())
    return false;
  for (size_t i = 0; i < a.sort_args.size(); ++i)
    if (!equal(a.sort_args[i], b.sort_args[i])) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!equal(a.args[i], b.args[i])) return false;
  return true;
}

bool equal_flipped(const Literal& a, const Literal& b) {
  return a.is_eq && b.is_eq && a.positive == b.positive && equal(a.lhs, b.rhs) &&
         equal(a.rhs, b.lhs);
}

std::string to_string(const Literal& l) {
  if (l.is_eq)
    return (l.positive ? "= " : "!= ") + to_string(l.lhs) + " " + to_string(l.rhs);
  std::string out = l.positive ? "" : "~";
  out += l.pred;
  if (!l.sort_args.empty()) {
    out += "[";
    for (size_t i = 0; i < l.sort_args.size(); ++i)
      out += (i ? "," : "") + to_string(l.sort_args[i]);
    out += "]";
  }
  if (!l.args.empty()) {
    out += "(";
    for (size_t i = 0; i < l.args.size(); ++i) out += (i ? "," : "") + to_string(l.args[i]);
    out += ")";
  }
  return out;
}

bool equal(const Clause& a, const Clause& b) {
  if (a.sort_vars != b.sort_vars || a.term_vars.size() != b.term_vars.size() ||
      a.literals.size() != b.literals.size())
    return false;
  for (size_t i = 0; i < a.term_vars.size(); ++i)
    if (a.term_vars[i].first != b.term_vars[i].first ||
        !equal(a.term_vars[i].second, b.term_vars[i].second))
      return false;
  for (size_t i = 0; i < a.literals.size(); ++i)
    if (!equal(a.literals[i], b.literals[i])) return false;
  return true;
}

std::string to_string(const Clause& c) {
  std::string out;
  for (size_t i = 0; i < c.literals.size(); ++i)
    out += (i ? "; " : "") + to_string(c.literals[i]);
  return out;
}

SortPtr apply(const Substitution& sub, const SortPtr& s) {
  if (s->is_var) {
    auto it = sub.sort_map.find(s->name);
    return it == sub.sort_map.end() ? s : it->second;
  }
  if (s->args.empty()) return s;
  bool changed = false;
  std::vector<SortPtr> args;
  args.reserve(s->args.size());
  for (const auto& a : s->args) {
    args.push_back(fol::apply(sub, a));
    changed |= args.back().get() != a.get();
  }
  return changed ? mk_sort(s->name, std::move(args)) : s;
}

TermPtr apply(const Substitution& sub, const TermPtr& t) {
  if (t->is_var) {
    auto it = sub.term_map.find(t->name);
    SortPtr want = fol::apply(sub, t->sort);
    if (it == sub.term_map.end()) {
      return want.get() == t->sort.get() ? t : mk_var(t->name, want);
    }
    if (!equal(it->second->sort, want))
      throw SortError("substitution maps '" + t->name + "' : " + to_string(want) +
                      " to a term of sort " + to_string(it->second->sort));
    return it->second;
  }
  bool changed = false;
  std::vector<SortPtr> sort_args;
  sort_args.reserve(t->sort_args.size());
  for (const auto& s : t->sort_args) {
    sort_args.push_back(fol::apply(sub, s));
    changed |= sort_args.back().get() != s.get();
  }
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) {
    args.push_back(fol::apply(sub, a));
    changed |= args.back().get() != a.get();
  }
  SortPtr sort = fol::apply(sub, t->sort);
  changed |= sort.get() != t->sort.get();
  return changed ? mk_app_raw(t->name, std::move(sort_args), std::move(args), std::move(sort))
                 : t;
}

Literal apply(const Substitution& sub, const Literal& l) {
  Literal out = l;
  if (l.is_eq) {
    out.lhs = fol::apply(sub, l.lhs);
    out.rhs = fol::apply(sub, l.rhs);
    out.eq_sort = fol::apply(sub, l.eq_sort);
  } else {
    for (auto& s : out.sort_args) s = fol::apply(sub, s);
    for (auto& a : out.args) a = fol::apply(sub, a);
  }
  return out;
}

Clause apply(const Substitution& sub, const Clause& c) {
  Clause out;
  out.literals.reserve(c.literals.size());
  for (const auto& l : c.literals) out.literals.push_back(fol::apply(sub, l));
  return closure_normalize(out);
}

Substitution compose(const Substitution& second, const Substitution& first) {
  Substitution out = second;
  for (const auto& [v, s] : first.sort_map) out.sort_map[v] = fol::apply(second, s);
  for (const auto& [v, t] : first.term_map) out.term_map[v] = fol::apply(second, t);
  return out;
}

namespace {

void scan_sort(const SortPtr& s, std::vector<std::string>& sort_vars,
               std::set<std::string>& seen) {
  if (s->is_var) {
    if (seen.insert(s->name).second) sort_vars.push_back(s->name);
    return;
  }
  for (const auto& a : s->args) scan_sort(a, sort_vars, seen);
}

void scan_term(const TermPtr& t, std::vector<std::pair<std::string, SortPtr>>& term_vars,
               std::vector<std::string>& sort_vars, std::set<std::string>& seen_t,
               std::set<std::string>& seen_s) {
  if (t->is_var) {
    scan_sort(t->sort, sort_vars, seen_s);
    if (seen_t.insert(t->name).second) term_vars.emplace_back(t->name, t->sort);
    return;
  }
  for (const auto& s : t->sort_args) scan_sort(s, sort_vars, seen_s);
  for (const auto& a : t->args) scan_term(a, term_vars, sort_vars, seen_t, seen_s);
}

}  // namespace

void scan_free_vars(const TermPtr& t, std::vector<std::pair<std::string, SortPtr>>& term_vars,
                    std::vector<std::string>& sort_vars) {
  std::set<std::string> seen_t, seen_s;
  for (const auto& [n, s] : term_vars) seen_t.insert(n);
  for (const auto& n : sort_vars) seen_s.insert(n);
  scan_term(t, term_vars, sort_vars, seen_t, seen_s);
}

void scan_free_vars(const Literal& l, std::vector<std::pair<std::string, SortPtr>>& term_vars,
                    std::vector<std::string>& sort_vars) {
  std::set<std::string> seen_t, seen_s;
  for (const auto& [n, s] : term_vars) seen_t.insert(n);
  for (const auto& n : sort_vars) seen_s.insert(n);
  if (l.is_eq) {
    scan_term(l.lhs, term_vars, sort_vars, seen_t, seen_s);
    scan_term(l.rhs, term_vars, sort_vars, seen_t, seen_s);
  } else {
    for (const auto& s : l.sort_args) scan_sort(s, sort_vars, seen_s);
    for (const auto& a : l.args) scan_term(a, term_vars, sort_vars, seen_t, seen_s);
  }
}

Clause closure_normalize(const Clause& c) {
  Clause out;
  out.literals = c.literals;
  for (const auto& l : out.literals) scan_free_vars(l, out.term_vars, out.sort_vars);
  return out;
}

// ---------------------------------------------------------------------------
// Unification. Bindings are kept triangular while solving and normalized to
// an idempotent substitution at the end; the occurs check is always on.

namespace {

struct Solver {
  Substitution sub;  // triangular during solving

  SortPtr walk(SortPtr s) {
    while (s->is_var) {
      auto it = sub.sort_map.find(s->name);
      if (it == sub.sort_map.end()) break;
      s = it->second;
    }
    return s;
  }

  TermPtr walk(TermPtr t) {
    while (t->is_var) {
      auto it = sub.term_map.find(t->name);
      if (it == sub.term_map.end()) break;
      t = it->second;
    }
    return t;
  }

  bool occurs_sort(const std::string& v, SortPtr s) {
    s = walk(s);
    if (s->is_var) return s->name == v;
    for (const auto& a : s->args)
      if (occurs_sort(v, a)) return true;
    return false;
  }

  bool occurs_term(const std::string& v, TermPtr t) {
    t = walk(t);
    if (t->is_var) return t->name == v;
    for (const auto& a : t->args)
      if (occurs_term(v, a)) return true;
    return false;
  }

  bool unify_sort(SortPtr a, SortPtr b) {
    a = walk(a);
    b = walk(b);
    if (a->is_var && b->is_var && a->name == b->name) return true;
    if (a->is_var) {
      if (occurs_sort(a->name, b)) return false;
      sub.sort_map[a->name] = b;
      return true;
    }
    if (b->is_var) {
      if (occurs_sort(b->name, a)) return false;
      sub.sort_map[b->name] = a;
      return true;
    }
    if (a->name != b->name || a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
      if (!unify_sort(a->args[i], b->args[i])) return false;
    return true;
  }

  bool unify_term(TermPtr a, TermPtr b) {
    a = walk(a);
    b = walk(b);
    if (a->is_var && b->is_var && a->name == b->name) return true;
    if (a->is_var) {
      if (occurs_term(a->name, b)) return false;
      if (!unify_sort(a->sort, b->sort)) return false;
      sub.term_map[a->name] = b;
      return true;
    }
    if (b->is_var) {
      if (occurs_term(b->name, a)) return false;
      if (!unify_sort(b->sort, a->sort)) return false;
      sub.term_map[b->name] = a;
      return true;
    }
    if (a->name != b->name || a->sort_args.size() != b->sort_args.size() ||
        a->args.size() != b->args.size())
      return false;
    for (size_t i = 0; i < a->sort_args.size(); ++i)
      if (!unify_sort(a->sort_args[i], b->sort_args[i])) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
      if (!unify_term(a->args[i], b->args[i])) return false;
    return true;
  }

  bool unify_atom(const Literal& a, const Literal& b) {
    if (a.is_eq != b.is_eq) return false;
    if (a.is_eq)
      return unify_sort(a.eq_sort, b.eq_sort) && unify_term(a.lhs, b.lhs) &&
             unify_term(a.rhs, b.rhs);
    if (a.pred != b.pred || a.sort_args.size() != b.sort_args.size() ||
        a.args.size() != b.args.size())
      return false;
    for (size_t i = 0; i < a.sort_args.size(); ++i)
      if (!unify_sort(a.sort_args[i], b.sort_args[i])) return false;
    for (size_t i = 0; i < a.args.size(); ++i)
      if (!unify_term(a.args[i], b.args[i])) return false;
    return true;
  }

  // One-sided: only variables on the pattern side are bound; the image of a
  // previously bound variable must coincide with the target exactly.
  bool match_sort(const SortPtr& a, const SortPtr& b) {
    if (a->is_var) {
      auto it = sub.sort_map.find(a->name);
      if (it != sub.sort_map.end()) return equal(it->second, b);
      sub.sort_map[a->name] = b;
      return true;
    }
    if (b->is_var || a->name != b->name || a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
      if (!match_sort(a->args[i], b->args[i])) return false;
    return true;
  }

  bool match_term_1(const TermPtr& a, const TermPtr& b) {
    if (a->is_var) {
      auto it = sub.term_map.find(a->name);
      if (it != sub.term_map.end()) return equal(it->second, b);
      if (!match_sort(a->sort, b->sort)) return false;
      sub.term_map[a->name] = b;
      return true;
    }
    if (b->is_var || a->name != b->name || a->sort_args.size() != b->sort_args.size() ||
        a->args.size() != b->args.size())
      return false;
    for (size_t i = 0; i < a->sort_args.size(); ++i)
      if (!match_sort(a->sort_args[i], b->sort_args[i])) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
      if (!match_term_1(a->args[i], b->args[i])) return false;
    return true;
  }

  bool match_atom_1(const Literal& a, const Literal& b) {
    if (a.is_eq != b.is_eq) return false;
    if (a.is_eq)
      return match_sort(a.eq_sort, b.eq_sort) && match_term_1(a.lhs, b.lhs) &&
             match_term_1(a.rhs, b.rhs);
    if (a.pred != b.pred || a.sort_args.size() != b.sort_args.size() ||
        a.args.size() != b.args.size())
      return false;
    for (size_t i = 0; i < a.sort_args.size(); ++i)
      if (!match_sort(a.sort_args[i], b.sort_args[i])) return false;
    for (size_t i = 0; i < a.args.size(); ++i)
      if (!match_term_1(a.args[i], b.args[i])) return false;
    return true;
  }

  // Resolves the triangular bindings into an idempotent substitution.
  Substitution normalize() {
    Substitution flat;
    for (const auto& [v, s] : sub.sort_map) flat.sort_map[v] = resolve_sort(s);
    for (const auto& [v, t] : sub.term_map) flat.term_map[v] = resolve_term(t);
    return flat;
  }

  SortPtr resolve_sort(SortPtr s) {
    s = walk(s);
    if (s->is_var) return s;
    if (s->args.empty()) return s;
    std::vector<SortPtr> args;
    args.reserve(s->args.size());
    for (const auto& a : s->args) args.push_back(resolve_sort(a));
    return mk_sort(s->name, std::move(args));
  }

  TermPtr resolve_term(TermPtr t) {
    t = walk(t);
    if (t->is_var) {
      SortPtr s = resolve_sort(t->sort);
      return s.get() == t->sort.get() ? t : mk_var(t->name, s);
    }
    std::vector<SortPtr> sort_args;
    sort_args.reserve(t->sort_args.size());
    for (const auto& s : t->sort_args) sort_args.push_back(resolve_sort(s));
    std::vector<TermPtr> args;
    args.reserve(t->args.size());
    for (const auto& a : t->args) args.push_back(resolve_term(a));
    return mk_app_raw(t->name, std::move(sort_args), std::move(args), resolve_sort(t->sort));
  }
};

}  // namespace

std::optional<Substitution> unify(const TermPtr& a, const TermPtr& b) {
  Solver s{{}};
  if (!s.unify_term(a, b)) return std::nullopt;
  return s.normalize();
}

std::optional<Substitution> unify_sorts(const SortPtr& a, const SortPtr& b) {
  Solver s{{}};
  if (!s.unify_sort(a, b)) return std::nullopt;
  return s.normalize();
}

std::optional<Substitution> unify_atoms(const Literal& a, const Literal& b) {
  Solver s{{}};
  if (!s.unify_atom(a, b)) return std::nullopt;
  return s.normalize();
}

std::optional<Substitution> match_term(const TermPtr& pattern, const TermPtr& target,
                                       const Substitution& seed) {
  Solver s{seed};
  if (!s.match_term_1(pattern, target)) return std::nullopt;
  return s.normalize();
}

std::optional<Substitution> match_atoms(const Literal& pattern, const Literal& target,
                                        const Substitution& seed) {
  Solver s{seed};
  if (!s.match_atom_1(pattern, target)) return std::nullopt;
  return s.normalize();
}

std::string FreshNames::fresh(const std::string& base, const std::set<std::string>& avoid) {
  for (;;) {
    std::string cand = base + std::to_string(counter_.fetch_add(1));
    if (!avoid.count(cand)) return cand;
  }
}

std::set<std::string> var_names(const Clause& c) {
  std::set<std::string> out;
  for (const auto& [n, s] : c.term_vars) out.insert(n);
  return out;
}

std::set<std::string> all_var_names(const Clause& c) {
  std::set<std::string> out = var_names(c);
  for (const auto& n : c.sort_vars) out.insert(n);
  return out;
}

std::pair<Clause, Substitution> freshen_clause(const Clause& c, FreshNames& names,
                                               const std::set<std::string>& avoid) {
  std::set<std::string> taken = avoid;
  for (const auto& n : all_var_names(c)) taken.insert(n);
  Substitution ren;
  for (const auto& sv : c.sort_vars) {
    std::string n = names.fresh(sv, taken);
    taken.insert(n);
    ren.sort_map[sv] = mk_sort_var(n);
  }
  for (const auto& [tv, sort] : c.term_vars) {
    std::string n = names.fresh(tv, taken);
    taken.insert(n);
    ren.term_map[tv] = mk_var(n, fol::apply(ren, sort));
  }
  return {fol::apply(ren, c), ren};
}

std::tuple<Clause, Clause, Substitution> rename_apart(const Clause& c1, const Clause& c2,
                                                      FreshNames& names) {
  std::set<std::string> used1 = all_var_names(c1);
  std::set<std::string> used2 = all_var_names(c2);
  Substitution ren;
  std::set<std::string> taken = used1;
  for (const auto& n : used2) taken.insert(n);
  for (const auto& sv : c2.sort_vars) {
    if (!used1.count(sv)) continue;
    std::string n = names.fresh(sv, taken);
    taken.insert(n);
    ren.sort_map[sv] = mk_sort_var(n);
  }
  for (const auto& [tv, sort] : c2.term_vars) {
    if (!used1.count(tv)) continue;
    std::string n = names.fresh(tv, taken);
    taken.insert(n);
    ren.term_map[tv] = mk_var(n, fol::apply(ren, sort));
  }
  return {c1, fol::apply(ren, c2), ren};
}

}  // namespace lampi::fol
