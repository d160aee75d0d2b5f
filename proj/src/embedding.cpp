#include "lampi/embedding.hpp"

#include <cctype>

namespace lampi::embed {

using namespace lampi::kernel;

std::string mangle(const std::string& name) {
  std::string out = "u_";
  for (unsigned char c : name) {
    if (std::isalnum(c)) {
      out.push_back((char)c);
    } else {
      static const char* hex = "0123456789abcdef";
      out.push_back('_');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 15]);
    }
  }
  return out;
}

std::string step_name(uint64_t id) { return "step_" + std::to_string(id); }
std::string sorry_name(uint64_t id) { return "sorry_" + std::to_string(id); }
std::string split_name(uint64_t id) { return "sp_" + std::to_string(id); }

namespace {

PiPtr C(const char* n) { return t_const(n); }
PiPtr V(const char* n) { return t_fvar(n); }

PiPtr el(PiPtr s) { return t_app(C(k_el), std::move(s)); }

SignatureEntry decl(std::string name, PiPtr type, bool definable = false) {
  return SignatureEntry{std::move(name), std::move(type), std::nullopt, definable};
}

SignatureEntry defn(std::string name, PiPtr type, PiPtr body) {
  return SignatureEntry{std::move(name), std::move(type), std::move(body), false};
}

RewriteRule rule(std::vector<std::string> vars, PiPtr lhs, PiPtr rhs) {
  RewriteRule r;
  for (auto& v : vars) r.ctx.emplace_back(std::move(v), std::nullopt);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

}  // namespace

PiPtr prf(const PiPtr& prop) { return t_app(C(k_prf), prop); }

kernel::Document prelude_encoding() {
  Document out;
  PiPtr Set = C(k_set);
  PiPtr Prop = C(k_prop);

  out.push_back(decl(k_set, t_type()));
  out.push_back(decl(k_el, t_arrow(Set, t_type())));
  out.push_back(decl(k_iota, Set));
  out.push_back(decl(k_prop, t_type()));
  out.push_back(decl(k_prf, t_arrow(Prop, t_type()), true));
  out.push_back(decl(k_bot, Prop));

  out.push_back(decl(k_imp, t_arrow(Prop, t_arrow(Prop, Prop))));
  out.push_back(rule({"a", "b"}, prf(t_app(C(k_imp), {V("a"), V("b")})),
                     t_arrow(prf(V("a")), prf(V("b")))));

  out.push_back(defn(k_not, t_arrow(Prop, Prop),
                     lam_closing("a", "a", Prop, t_app(C(k_imp), {V("a"), C(k_bot)}))));

  // forall : A : Set -> (El A -> Prop) -> Prop
  out.push_back(
      decl(k_forall, pi_closing("A", "A", Set, t_arrow(t_arrow(el(V("A")), Prop), Prop))));
  out.push_back(rule({"A", "p"}, prf(t_app(C(k_forall), {V("A"), V("p")})),
                     pi_closing("x", "x", el(V("A")), prf(t_app(V("p"), V("x"))))));

  // forallP : A : Set -> ((El A -> Prop) -> Prop) -> Prop
  out.push_back(decl(k_forall_pred,
                     pi_closing("A", "A", Set,
                                t_arrow(t_arrow(t_arrow(el(V("A")), Prop), Prop), Prop))));
  out.push_back(rule({"A", "q"}, prf(t_app(C(k_forall_pred), {V("A"), V("q")})),
                     pi_closing("p", "p", t_arrow(el(V("A")), Prop),
                                prf(t_app(V("q"), V("p"))))));

  // forallSet : (Set -> Prop) -> Prop
  out.push_back(decl(k_forall_set, t_arrow(t_arrow(Set, Prop), Prop)));
  out.push_back(rule({"p"}, prf(t_app(C(k_forall_set), V("p"))),
                     pi_closing("A", "A", Set, prf(t_app(V("p"), V("A"))))));

  // Leibniz equality over an impredicative predicate quantifier:
  // eq A x y := forallP A (p => imp (p x) (p y))
  {
    PiPtr type =
        pi_closing("A", "A", Set, t_arrow(el(V("A")), t_arrow(el(V("A")), Prop)));
    PiPtr pred_body = t_app(C(k_imp), {t_app(V("p"), V("x")), t_app(V("p"), V("y"))});
    PiPtr body = t_app(C(k_forall_pred),
                       {V("A"), lam_closing("p", "p", t_arrow(el(V("A")), Prop), pred_body)});
    body = lam_closing("y", "y", el(V("A")), body);
    body = lam_closing("x", "x", el(V("A")), body);
    body = lam_closing("A", "A", Set, body);
    out.push_back(defn(k_eq, type, body));
  }
  return out;
}

kernel::Document prelude_shorthands() {
  Document out;
  PiPtr Set = C(k_set);

  // Every sort is inhabited.
  out.push_back(decl(k_star, pi_closing("A", "A", Set, el(V("A")))));

  auto eq_at = [](PiPtr x, PiPtr y) {
    return t_app(C(k_eq), {V("A"), std::move(x), std::move(y)});
  };

  // refl : A : Set -> x : El A -> prf (eq A x x)
  {
    PiPtr type = pi_closing("A", "A", Set,
                            pi_closing("x", "x", el(V("A")), prf(eq_at(V("x"), V("x")))));
    PiPtr body = V("h");
    body = lam_closing("h", "h", prf(t_app(V("p"), V("x"))), body);
    body = lam_closing("p", "p", t_arrow(el(V("A")), C(k_prop)), body);
    body = lam_closing("x", "x", el(V("A")), body);
    body = lam_closing("A", "A", Set, body);
    out.push_back(defn(k_refl, type, body));
  }

  // comml A x y : (prf (eq A x y) -> prf bot) -> prf (eq A y x) -> prf bot
  {
    PiPtr type = t_arrow(t_arrow(prf(eq_at(V("x"), V("y"))), prf(C(k_bot))),
                         t_arrow(prf(eq_at(V("y"), V("x"))), prf(C(k_bot))));
    type = pi_closing("y", "y", el(V("A")), type);
    type = pi_closing("x", "x", el(V("A")), type);
    type = pi_closing("A", "A", Set, type);
    // h (e (z => eq A z y) (refl A y))
    PiPtr pred = lam_closing("z", "z", el(V("A")), eq_at(V("z"), V("y")));
    PiPtr sym = t_app(t_app(V("e"), pred), t_app(C(k_refl), {V("A"), V("y")}));
    PiPtr body = t_app(V("h"), sym);
    body = lam_closing("e", "e", prf(eq_at(V("y"), V("x"))), body);
    body = lam_closing("h", "h", t_arrow(prf(eq_at(V("x"), V("y"))), prf(C(k_bot))), body);
    body = lam_closing("y", "y", el(V("A")), body);
    body = lam_closing("x", "x", el(V("A")), body);
    body = lam_closing("A", "A", Set, body);
    out.push_back(defn(k_comml, type, body));
  }

  // comml_not A x y : (prf (not (eq A x y)) -> prf bot)
  //                 -> prf (not (eq A y x)) -> prf bot
  {
    auto neq = [&](PiPtr l, PiPtr r) {
      return t_app(C(k_not), eq_at(std::move(l), std::move(r)));
    };
    PiPtr type = t_arrow(t_arrow(prf(neq(V("x"), V("y"))), prf(C(k_bot))),
                         t_arrow(prf(neq(V("y"), V("x"))), prf(C(k_bot))));
    type = pi_closing("y", "y", el(V("A")), type);
    type = pi_closing("x", "x", el(V("A")), type);
    type = pi_closing("A", "A", Set, type);
    // h (e : prf (eq A x y) => n (e (z => eq A z x) (refl A x)))
    PiPtr pred = lam_closing("z", "z", el(V("A")), eq_at(V("z"), V("x")));
    PiPtr sym = t_app(t_app(V("e"), pred), t_app(C(k_refl), {V("A"), V("x")}));
    PiPtr inner = lam_closing("e", "e", prf(eq_at(V("x"), V("y"))), t_app(V("n"), sym));
    PiPtr body = t_app(V("h"), inner);
    body = lam_closing("n", "n", prf(neq(V("y"), V("x"))), body);
    body = lam_closing("h", "h", t_arrow(prf(neq(V("x"), V("y"))), prf(C(k_bot))), body);
    body = lam_closing("y", "y", el(V("A")), body);
    body = lam_closing("x", "x", el(V("A")), body);
    body = lam_closing("A", "A", Set, body);
    out.push_back(defn(k_comml_not, type, body));
  }
  return out;
}

kernel::Document emit_prelude() {
  Document out = prelude_encoding();
  Document sh = prelude_shorthands();
  out.insert(out.end(), sh.begin(), sh.end());
  return out;
}

kernel::SignatureEntry declare_sort_ctor(const std::string& name, int arity) {
  PiPtr ty = C(k_set);
  for (int i = 0; i < arity; ++i) ty = t_arrow(C(k_set), ty);
  return decl(mangle(name), ty);
}

kernel::SignatureEntry declare_symbol(const fol::SymbolTable& tab, const std::string& name) {
  const fol::SymbolTable::Symbol& sym = tab.get(name);
  PiPtr ty = sym.is_pred ? C(k_prop) : el(sort_term(sym.result));
  for (auto it = sym.arg_sorts.rbegin(); it != sym.arg_sorts.rend(); ++it)
    ty = t_arrow(el(sort_term(*it)), ty);
  for (auto it = sym.sort_params.rbegin(); it != sym.sort_params.rend(); ++it)
    ty = pi_closing(*it, *it, C(k_set), ty);
  return decl(mangle(name), ty);
}

kernel::PiPtr sort_term(const fol::SortPtr& s) {
  if (s->is_var) return t_fvar(s->name);
  PiPtr head = s->name == "iota" ? C(k_iota) : t_const(mangle(s->name));
  for (const auto& a : s->args) head = t_app(head, sort_term(a));
  return head;
}

kernel::PiPtr deep_term(const fol::TermPtr& t) {
  if (t->is_var) return t_fvar(t->name);
  PiPtr head = t_const(mangle(t->name));
  for (const auto& s : t->sort_args) head = t_app(head, sort_term(s));
  for (const auto& a : t->args) head = t_app(head, deep_term(a));
  return head;
}

kernel::PiPtr deep_atom(const fol::Literal& l) {
  if (l.is_eq)
    return t_app(C(k_eq), {sort_term(l.eq_sort), deep_term(l.lhs), deep_term(l.rhs)});
  PiPtr head = t_const(mangle(l.pred));
  for (const auto& s : l.sort_args) head = t_app(head, sort_term(s));
  for (const auto& a : l.args) head = t_app(head, deep_term(a));
  return head;
}

kernel::PiPtr deep_literal(const fol::Literal& l) {
  PiPtr atom = deep_atom(l);
  return l.positive ? atom : t_app(C(k_not), atom);
}

kernel::PiPtr shallow_of_prop(const kernel::PiPtr& prop) {
  return t_arrow(prf(prop), prf(C(k_bot)));
}

kernel::PiPtr shallow_literal(const fol::Literal& l) {
  return shallow_of_prop(deep_literal(l));
}

kernel::PiPtr clause_type(const fol::Clause& c) {
  PiPtr body = prf(C(k_bot));
  for (auto it = c.literals.rbegin(); it != c.literals.rend(); ++it)
    body = t_arrow(shallow_literal(*it), body);
  for (auto it = c.term_vars.rbegin(); it != c.term_vars.rend(); ++it)
    body = pi_closing(it->first, it->first, el(sort_term(it->second)), body);
  for (auto it = c.sort_vars.rbegin(); it != c.sort_vars.rend(); ++it)
    body = pi_closing(*it, *it, C(k_set), body);
  return body;
}

kernel::PiPtr condition_arg_type(const Condition& c) {
  PiPtr sp = t_const(split_name(c.split_id));
  PiPtr inner = t_app(C(k_not), sp);
  if (!c.positive) inner = t_app(C(k_not), inner);
  return shallow_of_prop(inner);
}

kernel::PiPtr avatar_clause_type(const fol::Clause& c, const std::vector<Condition>& conds) {
  PiPtr body = clause_type(c);
  for (auto it = conds.rbegin(); it != conds.rend(); ++it)
    body = t_arrow(condition_arg_type(*it), body);
  return body;
}

kernel::PiPtr inhabit(const fol::SortPtr& s) { return t_app(C(k_star), sort_term(s)); }

kernel::PiPtr component_formula(const fol::Clause& c) {
  PiPtr body = C(k_bot);
  for (auto it = c.literals.rbegin(); it != c.literals.rend(); ++it)
    body = t_app(C(k_imp), {t_app(C(k_not), deep_literal(*it)), body});
  for (auto it = c.term_vars.rbegin(); it != c.term_vars.rend(); ++it) {
    PiPtr s = sort_term(it->second);
    body = t_app(C(k_forall), {s, lam_closing(it->first, it->first, el(s), body)});
  }
  for (auto it = c.sort_vars.rbegin(); it != c.sort_vars.rend(); ++it)
    body = t_app(C(k_forall_set), lam_closing(*it, *it, C(k_set), body));
  return body;
}

kernel::PiPtr leibniz_sym(const kernel::PiPtr& sort, const kernel::PiPtr& a,
                          const kernel::PiPtr& b, const kernel::PiPtr& proof) {
  // proof : prf (eq sort a b); transporting refl along the predicate
  // z => eq sort z a yields prf (eq sort b a).
  (void)b;
  PiPtr pred =
      lam_closing("z", "z", t_app(C(k_el), sort), t_app(C(k_eq), {sort, V("z"), a}));
  return t_app(t_app(proof, pred), t_app(C(k_refl), {sort, a}));
}

}  // namespace lampi::embed
