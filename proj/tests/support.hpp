#pragma once

// Shared test utilities: random generators, independent oracles, and trace
// builders. Oracles here deliberately avoid the code paths they check.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lampi/dk.hpp"
#include "lampi/drv.hpp"
#include "lampi/embedding.hpp"
#include "lampi/fol.hpp"
#include "lampi/kernel.hpp"
#include "lampi/trace.hpp"
#include "lampi/translate.hpp"

namespace testsupport {

using lampi::fol::Clause;
using lampi::fol::Literal;
using lampi::fol::SortPtr;
using lampi::fol::Substitution;
using lampi::fol::TermPtr;
using lampi::kernel::PiPtr;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// A fixed first-order signature for randomized tests.

inline lampi::fol::SymbolTable test_symbols() {
  using lampi::fol::mk_sort_var;
  using lampi::fol::sort_iota;
  lampi::fol::SymbolTable tab;
  tab.declare_fun("c", {}, {}, sort_iota());
  tab.declare_fun("d", {}, {}, sort_iota());
  tab.declare_fun("e", {}, {}, sort_iota());
  tab.declare_fun("g", {}, {sort_iota()}, sort_iota());
  tab.declare_fun("f", {}, {sort_iota(), sort_iota(), sort_iota()}, sort_iota());
  tab.declare_pred("P", {}, {sort_iota()});
  tab.declare_pred("Q", {}, {sort_iota()});
  tab.declare_pred("R", {}, {sort_iota()});
  return tab;
}

struct Rng {
  std::mt19937 gen;
  explicit Rng(uint32_t seed) : gen(seed) {}
  int pick(int n) { return (int)(gen() % (uint32_t)n); }
  bool coin() { return pick(2) == 0; }
};

inline TermPtr random_term(const lampi::fol::SymbolTable& tab, Rng& rng, int depth,
                           const std::vector<std::string>& vars) {
  using namespace lampi::fol;
  if (depth == 0 || rng.pick(3) == 0) {
    if (!vars.empty() && rng.coin())
      return mk_var(vars[rng.pick((int)vars.size())], sort_iota());
    const char* consts[] = {"c", "d", "e"};
    return mk_app(tab, consts[rng.pick(3)], {}, {});
  }
  if (rng.coin()) return mk_app(tab, "g", {}, {random_term(tab, rng, depth - 1, vars)});
  return mk_app(tab, "f", {},
                {random_term(tab, rng, depth - 1, vars), random_term(tab, rng, depth - 1, vars),
                 random_term(tab, rng, depth - 1, vars)});
}

inline Literal random_literal(const lampi::fol::SymbolTable& tab, Rng& rng,
                              const std::vector<std::string>& vars) {
  using namespace lampi::fol;
  bool positive = rng.coin();
  if (rng.pick(3) == 0)
    return mk_eq_literal(positive, random_term(tab, rng, 2, vars),
                         random_term(tab, rng, 2, vars));
  const char* preds[] = {"P", "Q", "R"};
  return mk_pred_literal(tab, positive, preds[rng.pick(3)], {},
                         {random_term(tab, rng, 2, vars)});
}

inline Clause random_clause(const lampi::fol::SymbolTable& tab, Rng& rng) {
  Clause c;
  std::vector<std::string> vars = {"X", "Y", "Z"};
  int n = 1 + rng.pick(4);
  for (int i = 0; i < n; ++i) c.literals.push_back(random_literal(tab, rng, vars));
  return lampi::fol::closure_normalize(c);
}

// ---------------------------------------------------------------------------
// Herbrand-universe oracle for unification over a unary signature
// {k/0, g/1, h/1}: the whole depth-bounded universe stays tiny.

inline lampi::fol::SymbolTable unary_symbols() {
  using lampi::fol::sort_iota;
  lampi::fol::SymbolTable tab;
  tab.declare_fun("k", {}, {}, sort_iota());
  tab.declare_fun("g", {}, {sort_iota()}, sort_iota());
  tab.declare_fun("h", {}, {sort_iota()}, sort_iota());
  return tab;
}

inline std::vector<TermPtr> herbrand_universe(const lampi::fol::SymbolTable& tab, int depth) {
  using namespace lampi::fol;
  std::vector<TermPtr> cur = {mk_app(tab, "k", {}, {})};
  std::vector<TermPtr> all = cur;
  for (int i = 0; i < depth; ++i) {
    std::vector<TermPtr> next;
    for (const auto& t : cur) {
      next.push_back(mk_app(tab, "g", {}, {t}));
      next.push_back(mk_app(tab, "h", {}, {t}));
    }
    all.insert(all.end(), next.begin(), next.end());
    cur = std::move(next);
  }
  return all;
}

// Oracle-side substitution application and matching, independent of fol.cpp's
// unify/match code path.
inline TermPtr oracle_apply(const std::map<std::string, TermPtr>& sub, const TermPtr& t) {
  using namespace lampi::fol;
  if (t->is_var) {
    auto it = sub.find(t->name);
    return it == sub.end() ? t : it->second;
  }
  std::vector<TermPtr> args;
  for (const auto& a : t->args) args.push_back(oracle_apply(sub, a));
  return mk_app_raw(t->name, t->sort_args, std::move(args), t->sort);
}

inline bool oracle_equal(const TermPtr& a, const TermPtr& b) {
  if (a->is_var != b->is_var || a->name != b->name) return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!oracle_equal(a->args[i], b->args[i])) return false;
  return true;
}

// One-sided structural matcher used to verify that a returned unifier is most
// general: every equalizer must factor through it.
inline bool oracle_match(const TermPtr& pattern, const TermPtr& target,
                         std::map<std::string, TermPtr>& bind) {
  if (pattern->is_var) {
    auto it = bind.find(pattern->name);
    if (it != bind.end()) return oracle_equal(it->second, target);
    bind[pattern->name] = target;
    return true;
  }
  if (target->is_var || pattern->name != target->name ||
      pattern->args.size() != target->args.size())
    return false;
  for (size_t i = 0; i < pattern->args.size(); ++i)
    if (!oracle_match(pattern->args[i], target->args[i], bind)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Naive full normalizer and reference checker for the kernel (exponential
// strategies are fine at test scale).

struct NaiveEngine {
  const lampi::kernel::Signature& sig;
  int fuel = 2'000'000;
  uint64_t fresh = 0;

  void burn() {
    if (--fuel <= 0) throw std::runtime_error("naive engine out of fuel");
  }

  bool match(const PiPtr& pattern, const PiPtr& subject, std::map<std::string, PiPtr>& bind) {
    using namespace lampi::kernel;
    if (pattern->tag == Tag::FVar) {
      auto it = bind.find(pattern->name);
      if (it != bind.end()) return alpha_equal(it->second, subject);
      bind[pattern->name] = subject;
      return true;
    }
    Spine ps = decompose(pattern);
    Spine ss = decompose(subject);
    if (ps.head->tag != Tag::Const || ss.head->tag != Tag::Const ||
        ps.head->name != ss.head->name || ps.args.size() != ss.args.size())
      return false;
    for (size_t i = 0; i < ps.args.size(); ++i)
      if (!match(ps.args[i], ss.args[i], bind)) return false;
    return true;
  }

  PiPtr nf(const PiPtr& t) {
    using namespace lampi::kernel;
    burn();
    switch (t->tag) {
      case Tag::Const: {
        const SignatureEntry* e = sig.find(t->name);
        if (e && e->body) return nf(*e->body);
        return t;
      }
      case Tag::App: {
        PiPtr f = nf(t->a);
        PiPtr a = nf(t->b);
        if (f->tag == Tag::Lam) return nf(instantiate(f->b, a));
        PiPtr out = t_app(f, a);
        Spine s = decompose(out);
        if (s.head->tag == Tag::Const) {
          if (const auto* rules = sig.rules_for(s.head->name)) {
            for (const auto& r : *rules) {
              size_t arity = lampi::kernel::Signature::rule_arity(r);
              if (arity > s.args.size()) continue;
              Spine pat = decompose(r.lhs);
              std::map<std::string, PiPtr> bind;
              bool ok = true;
              for (size_t i = 0; i < arity && ok; ++i)
                ok = match(pat.args[i], s.args[i], bind);
              if (!ok) continue;
              PiPtr replaced = subst_fvars(r.rhs, bind);
              return nf(recompose(replaced, s.args, arity));
            }
          }
        }
        return out;
      }
      case Tag::Lam: {
        std::string v = "#n" + std::to_string(fresh++);
        PiPtr body = nf(instantiate(t->b, t_fvar(v)));
        return t_lam(t->name, nf(t->a), close_fvar(body, v));
      }
      case Tag::Pi: {
        std::string v = "#n" + std::to_string(fresh++);
        PiPtr body = nf(instantiate(t->b, t_fvar(v)));
        return t_pi(t->name, nf(t->a), close_fvar(body, v));
      }
      default:
        return t;
    }
  }

  bool conv(const PiPtr& a, const PiPtr& b) {
    return lampi::kernel::alpha_equal(nf(a), nf(b));
  }

  // Plain lambda-Pi typing with naive conversion.
  PiPtr infer(std::vector<std::pair<std::string, PiPtr>>& ctx, const PiPtr& t) {
    using namespace lampi::kernel;
    burn();
    switch (t->tag) {
      case Tag::Kind:
        throw std::runtime_error("naive: Kind has no type");
      case Tag::Type:
        return t_kind();
      case Tag::Const: {
        const SignatureEntry* e = sig.find(t->name);
        if (!e) throw std::runtime_error("naive: unbound " + t->name);
        return e->type;
      }
      case Tag::FVar:
        for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
          if (it->first == t->name) return it->second;
        throw std::runtime_error("naive: unbound var " + t->name);
      case Tag::BVar:
        throw std::runtime_error("naive: dangling index");
      case Tag::App: {
        PiPtr tf = nf(infer(ctx, t->a));
        if (tf->tag != Tag::Pi) throw std::runtime_error("naive: not a function");
        PiPtr ta = infer(ctx, t->b);
        if (!conv(ta, tf->a)) throw std::runtime_error("naive: argument type mismatch");
        return instantiate(tf->b, t->b);
      }
      case Tag::Lam: {
        PiPtr ds = nf(infer(ctx, t->a));
        if (ds->tag != Tag::Type) throw std::runtime_error("naive: bad domain");
        std::string v = "#n" + std::to_string(fresh++);
        ctx.emplace_back(v, t->a);
        PiPtr bt = infer(ctx, instantiate(t->b, t_fvar(v)));
        ctx.pop_back();
        if (bt->tag == Tag::Kind) throw std::runtime_error("naive: body is a kind");
        return t_pi(t->name, t->a, close_fvar(bt, v));
      }
      case Tag::Pi: {
        PiPtr ds = nf(infer(ctx, t->a));
        if (ds->tag != Tag::Type) throw std::runtime_error("naive: bad domain");
        std::string v = "#n" + std::to_string(fresh++);
        ctx.emplace_back(v, t->a);
        PiPtr cs = nf(infer(ctx, instantiate(t->b, t_fvar(v))));
        ctx.pop_back();
        if (cs->tag != Tag::Type && cs->tag != Tag::Kind)
          throw std::runtime_error("naive: bad codomain");
        return cs;
      }
    }
    throw std::runtime_error("naive: unreachable");
  }
};

// Checks a whole document with the naive engine; true when every item passes.
inline bool naive_check_document(const lampi::kernel::Document& doc) {
  using namespace lampi::kernel;
  Signature sig;
  try {
    for (const auto& item : doc) {
      if (std::holds_alternative<SignatureEntry>(item)) {
        const auto& e = std::get<SignatureEntry>(item);
        NaiveEngine eng{sig};
        std::vector<std::pair<std::string, PiPtr>> ctx;
        PiPtr s = eng.nf(eng.infer(ctx, e.type));
        if (s->tag != Tag::Type && s->tag != Tag::Kind) return false;
        if (e.body) {
          NaiveEngine eng2{sig};
          std::vector<std::pair<std::string, PiPtr>> ctx2;
          PiPtr bt = eng2.infer(ctx2, *e.body);
          if (!eng2.conv(bt, e.type)) return false;
        }
        sig.add_entry(e);
      } else {
        const auto& r = std::get<RewriteRule>(item);
        lampi::kernel::Budget budget{100'000'000, 0};
        lampi::kernel::check_rule(sig, r, budget);
        sig.add_rule(r);
      }
    }
  } catch (...) {
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Random well-typed kernel terms over the prelude plus the test signature.

struct TypedGen {
  Rng& rng;
  std::vector<std::pair<std::string, PiPtr>> scope;  // El-iota variables
  uint64_t next_var = 0;

  PiPtr el_iota() {
    using namespace lampi::kernel;
    return t_app(t_const(lampi::embed::k_el), t_const(lampi::embed::k_iota));
  }

  PiPtr gen_el(int depth) {
    using namespace lampi::kernel;
    std::vector<std::string> vars;
    for (const auto& [n, ty] : scope) vars.push_back(n);
    int w = rng.pick(10);
    if (depth <= 0 || w < 3) {
      if (!vars.empty() && rng.coin()) return t_fvar(vars[rng.pick((int)vars.size())]);
      const char* k[] = {"u_c", "u_d", "u_e"};
      return t_const(k[rng.pick(3)]);
    }
    if (w < 5) return t_app(t_const(lampi::embed::k_star), t_const(lampi::embed::k_iota));
    if (w < 7) return t_app(t_const("u_g"), gen_el(depth - 1));
    if (w < 9) {
      // a beta redex of type El iota
      std::string v = "v" + std::to_string(next_var++);
      scope.emplace_back(v, el_iota());
      PiPtr body = gen_el(depth - 1);
      scope.pop_back();
      return t_app(t_lam(v, el_iota(), close_fvar(body, v)), gen_el(depth - 1));
    }
    return t_app(t_const("u_f"),
                 {gen_el(depth - 1), gen_el(depth - 1), gen_el(depth - 1)});
  }

  PiPtr gen_prop(int depth) {
    using namespace lampi::kernel;
    int w = rng.pick(10);
    if (depth <= 0 || w < 2) {
      const char* preds[] = {"u_P", "u_Q", "u_R"};
      return t_app(t_const(preds[rng.pick(3)]), gen_el(depth));
    }
    if (w < 4)
      return t_app(t_const(lampi::embed::k_eq),
                   {t_const(lampi::embed::k_iota), gen_el(depth - 1), gen_el(depth - 1)});
    if (w < 6)
      return t_app(t_const(lampi::embed::k_imp), {gen_prop(depth - 1), gen_prop(depth - 1)});
    if (w < 7) return t_app(t_const(lampi::embed::k_not), gen_prop(depth - 1));
    if (w < 9) {
      std::string v = "v" + std::to_string(next_var++);
      scope.emplace_back(v, el_iota());
      PiPtr body = gen_prop(depth - 1);
      scope.pop_back();
      return t_app(t_const(lampi::embed::k_forall),
                   {t_const(lampi::embed::k_iota), t_lam(v, el_iota(), close_fvar(body, v))});
    }
    // beta redex of type Prop
    std::string v = "v" + std::to_string(next_var++);
    scope.emplace_back(v, el_iota());
    PiPtr body = gen_prop(depth - 1);
    scope.pop_back();
    return t_app(t_lam(v, el_iota(), close_fvar(body, v)), gen_el(depth - 1));
  }

  // Closed term of type El iota or Prop.
  PiPtr gen_closed(int depth) { return rng.coin() ? gen_el(depth) : gen_prop(depth); }
};

// A kernel document consisting of the prelude plus the test signature.
inline lampi::kernel::Document prelude_with_test_symbols() {
  lampi::kernel::Document doc = lampi::embed::emit_prelude();
  lampi::fol::SymbolTable tab = test_symbols();
  for (const auto& name : tab.symbol_order())
    doc.push_back(lampi::embed::declare_symbol(tab, name));
  return doc;
}

inline lampi::kernel::Signature checked_signature(const lampi::kernel::Document& doc) {
  lampi::kernel::Signature sig;
  lampi::kernel::CheckReport rep = lampi::kernel::check_document(doc, {}, &sig);
  if (!rep.ok) throw std::runtime_error("fixture document does not check: " + rep.first_error);
  return sig;
}

// ---------------------------------------------------------------------------
// Brute-force propositional refutation generator. Atoms are nullary
// predicates; clauses are (positive mask, negative mask) pairs.

struct GroundTrace {
  std::string drv;
  size_t steps;
};

struct MaskClause {
  uint8_t pos = 0, neg = 0;
  bool operator<(const MaskClause& o) const {
    return pos < o.pos || (pos == o.pos && neg < o.neg);
  }
  bool operator==(const MaskClause& o) const { return pos == o.pos && neg == o.neg; }
};

inline bool cnf_unsat(const std::vector<MaskClause>& cnf, int atoms) {
  for (int m = 0; m < (1 << atoms); ++m) {
    bool sat = true;
    for (const auto& c : cnf) {
      bool holds = (c.pos & m) != 0 || (c.neg & ~m) != 0;
      if (!holds) {
        sat = false;
        break;
      }
    }
    if (sat) return false;
  }
  return true;
}

// Saturates by binary resolution, recording parents, then reconstructs the
// derivation of the empty clause as a .drv text.
inline std::optional<GroundTrace> ground_refutation(Rng& rng, int atoms, int nclauses) {
  std::vector<MaskClause> cnf;
  for (int i = 0; i < nclauses; ++i) {
    MaskClause c;
    int lits = 1 + rng.pick(3);
    for (int j = 0; j < lits; ++j) {
      int a = rng.pick(atoms);
      if (rng.coin()) c.pos |= (uint8_t)(1 << a);
      else c.neg |= (uint8_t)(1 << a);
    }
    if (c.pos & c.neg) { --i; continue; }  // tautology, resample
    cnf.push_back(c);
  }
  std::sort(cnf.begin(), cnf.end());
  cnf.erase(std::unique(cnf.begin(), cnf.end()), cnf.end());
  if (!cnf_unsat(cnf, atoms)) return std::nullopt;

  struct Node {
    MaskClause c;
    int p1 = -1, p2 = -1;  // parents (p1 holds the positive literal)
    int atom = -1;
  };
  std::vector<Node> nodes;
  std::map<MaskClause, int> seen;
  for (const auto& c : cnf) {
    seen[c] = (int)nodes.size();
    nodes.push_back({c, -1, -1, -1});
  }
  int empty_idx = -1;
  for (size_t i = 0; i < nodes.size() && empty_idx < 0; ++i) {
    for (size_t j = 0; j < i && empty_idx < 0; ++j) {
      for (int a = 0; a < atoms && empty_idx < 0; ++a) {
        uint8_t bit = (uint8_t)(1 << a);
        for (int dir = 0; dir < 2; ++dir) {
          const Node& x = nodes[dir ? j : i];
          const Node& y = nodes[dir ? i : j];
          if (!(x.c.pos & bit) || !(y.c.neg & bit)) continue;
          MaskClause r{(uint8_t)((x.c.pos & ~bit) | y.c.pos),
                       (uint8_t)(x.c.neg | (y.c.neg & ~bit))};
          if (r.pos & r.neg) continue;
          if (seen.count(r)) continue;
          seen[r] = (int)nodes.size();
          nodes.push_back({r, dir ? (int)j : (int)i, dir ? (int)i : (int)j, a});
          if (r.pos == 0 && r.neg == 0) empty_idx = (int)nodes.size() - 1;
        }
      }
    }
  }
  if (empty_idx < 0) return std::nullopt;  // saturation order missed it; rare

  // Collect the sub-derivation reaching the empty clause.
  std::vector<int> order;
  std::set<int> needed;
  std::function<void(int)> visit = [&](int k) {
    if (needed.count(k)) return;
    needed.insert(k);
    if (nodes[k].p1 >= 0) {
      visit(nodes[k].p1);
      visit(nodes[k].p2);
    }
    order.push_back(k);
  };
  visit(empty_idx);

  auto literal_list = [&](const MaskClause& c) {
    std::vector<std::pair<int, bool>> lits;  // (atom, positive)
    for (int a = 0; a < atoms; ++a)
      if (c.pos & (1 << a)) lits.emplace_back(a, true);
    for (int a = 0; a < atoms; ++a)
      if (c.neg & (1 << a)) lits.emplace_back(a, false);
    return lits;
  };
  auto clause_text = [&](const MaskClause& c) {
    std::string s;
    auto lits = literal_list(c);
    for (size_t k = 0; k < lits.size(); ++k) {
      if (k) s += "; ";
      if (!lits[k].second) s += "~";
      s += "a" + std::to_string(lits[k].first);
    }
    return s;
  };
  auto index_of = [&](const MaskClause& c, int atom, bool positive) {
    auto lits = literal_list(c);
    for (size_t k = 0; k < lits.size(); ++k)
      if (lits[k].first == atom && lits[k].second == positive) return (int)k;
    return -1;
  };

  std::ostringstream os;
  os << "drv 1 cnf.\n";
  for (int a = 0; a < atoms; ++a) os << "pred a" << a << " ().\n";
  std::map<int, int> step_id;
  int next_id = 1;
  for (int k : order) {
    const Node& n = nodes[k];
    step_id[k] = next_id;
    if (n.p1 < 0) {
      os << "step " << next_id << " input [] | " << clause_text(n.c) << " |.\n";
    } else {
      os << "step " << next_id << " resolution [" << step_id[n.p1] << ", " << step_id[n.p2]
         << "] | " << clause_text(n.c) << " | lits=" << index_of(nodes[n.p1].c, n.atom, true)
         << ":" << index_of(nodes[n.p2].c, n.atom, false) << ".\n";
    }
    ++next_id;
  }
  return GroundTrace{os.str(), order.size()};
}

// Linear resolution chain of `n` resolution steps.
inline std::string chain_trace(int n) {
  std::ostringstream os;
  os << "drv 1 cnf.\n";
  for (int i = 0; i <= n; ++i) os << "pred p" << i << " ().\n";
  os << "step 1 input [] | p0 |.\n";
  for (int i = 1; i < n; ++i)
    os << "step " << (i + 1) << " input [] | ~p" << (i - 1) << "; p" << i << " |.\n";
  os << "step " << (n + 1) << " input [] | ~p" << (n - 1) << " |.\n";
  // Resolutions: D1 = resolve(step1, step2); Di = resolve(D(i-1), step(i+1)).
  int prev = 1;
  for (int i = 1; i < n; ++i) {
    int id = n + 1 + i;
    os << "step " << id << " resolution [" << prev << ", " << (i + 1) << "] | p" << i
       << " | lits=0:0.\n";
    prev = id;
  }
  os << "step " << (2 * n + 1) << " resolution [" << prev << ", " << (n + 1)
     << "] | | lits=0:0.\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// General split schema instances: k components, n literals each, m variables
// each, with distinct predicates per literal.

inline std::string schema_trace(int k, int n, int m) {
  std::ostringstream os;
  os << "drv 1 cnf.\n";
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= n; ++j) {
      os << "pred p" << i << j << " (";
      for (int v = 0; v < m; ++v) os << (v ? " iota" : "iota");
      os << ").\n";
    }
  auto lit = [&](int i, int j) {
    std::string s = "p" + std::to_string(i) + std::to_string(j);
    if (m > 0) {
      s += "(";
      for (int v = 0; v < m; ++v)
        s += (v ? ", Y" : "Y") + std::to_string(i) + std::to_string(v);
      s += ")";
    }
    return s;
  };
  os << "step 1 input [] | ";
  bool first = true;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= n; ++j) {
      if (!first) os << "; ";
      first = false;
      os << lit(i, j);
    }
  os << " |.\n";
  int id = 2;
  for (int i = 1; i <= k; ++i, ++id) {
    os << "step " << id << " avatar_definition [] | ";
    for (int j = 1; j <= n; ++j) os << (j > 1 ? "; " : "") << lit(i, j);
    os << " | split=" << i << ".\n";
  }
  os << "step " << id << " avatar_split [1] | | split=";
  for (int i = 1; i <= k; ++i) {
    if (i > 1) os << ";";
    os << i << ":";
    for (int j = 1; j <= n; ++j) os << (j > 1 ? "," : "") << ((i - 1) * n + j - 1);
  }
  os << ".\n";
  ++id;
  for (int i = 1; i <= k; ++i, ++id) {
    os << "step " << id << " avatar_component [" << (1 + i) << "] {" << i << "} | ";
    for (int j = 1; j <= n; ++j) os << (j > 1 ? "; " : "") << lit(i, j);
    os << " | split=" << i << ".\n";
  }
  return os.str();
}

// Expected types per the general schema, built directly from kernel syntax.
inline PiPtr schema_split_type(int k) {
  using namespace lampi::kernel;
  PiPtr body = t_app(t_const(lampi::embed::k_prf), t_const(lampi::embed::k_bot));
  for (int i = k; i >= 1; --i) {
    PiPtr sp = t_const(lampi::embed::split_name(i));
    body = t_arrow(t_arrow(t_app(t_const(lampi::embed::k_prf), sp),
                           t_app(t_const(lampi::embed::k_prf), t_const(lampi::embed::k_bot))),
                   body);
  }
  return body;
}

inline PiPtr schema_component_type(int i, int n, int m) {
  using namespace lampi::kernel;
  auto prf = [](PiPtr p) { return t_app(t_const(lampi::embed::k_prf), std::move(p)); };
  PiPtr bot = t_const(lampi::embed::k_bot);
  PiPtr body = prf(bot);
  for (int j = n; j >= 1; --j) {
    PiPtr atom = t_const(lampi::embed::mangle("p" + std::to_string(i) + std::to_string(j)));
    for (int v = 0; v < m; ++v)
      atom = t_app(atom, t_fvar("Y" + std::to_string(i) + std::to_string(v)));
    body = t_arrow(t_arrow(prf(atom), prf(bot)), body);
  }
  for (int v = m - 1; v >= 0; --v) {
    std::string y = "Y" + std::to_string(i) + std::to_string(v);
    body = pi_closing(y, y,
                      t_app(t_const(lampi::embed::k_el), t_const(lampi::embed::k_iota)), body);
  }
  PiPtr nsp = t_app(t_const(lampi::embed::k_not), t_const(lampi::embed::split_name(i)));
  return t_arrow(t_arrow(prf(nsp), prf(bot)), body);
}

// ---------------------------------------------------------------------------
// Orientation-flip harness: every equation in every step's conclusion gets
// flipped, one at a time.

struct FlipPoint {
  size_t step_index;
  size_t literal_index;
};

inline std::vector<FlipPoint> flip_points(const lampi::trace::TraceDocument& doc) {
  std::vector<FlipPoint> out;
  for (size_t s = 0; s < doc.steps.size(); ++s)
    for (size_t l = 0; l < doc.steps[s].conclusion.literals.size(); ++l)
      if (doc.steps[s].conclusion.literals[l].is_eq) out.push_back({s, l});
  return out;
}

inline lampi::trace::TraceDocument with_flip(const lampi::trace::TraceDocument& doc,
                                             const FlipPoint& fp) {
  lampi::trace::TraceDocument copy = doc;
  Literal& l = copy.steps[fp.step_index].conclusion.literals[fp.literal_index];
  l = lampi::fol::flip_equation(l);
  copy.steps[fp.step_index].conclusion =
      lampi::fol::closure_normalize(copy.steps[fp.step_index].conclusion);
  return copy;
}

// Translate and kernel-check a trace in memory; true when everything passes.
inline bool pipeline_ok(const lampi::trace::TraceDocument& doc, std::string* err = nullptr,
                        bool allow_sorry = false) {
  try {
    lampi::translate::Translation tr = lampi::translate::translate(doc);
    if (!allow_sorry && !tr.sorries.empty()) {
      if (err) *err = "unexpected sorry";
      return false;
    }
    lampi::kernel::CheckReport rep = lampi::kernel::check_document(tr.doc, {});
    if (!rep.ok && err) *err = rep.first_error;
    return rep.ok;
  } catch (const std::exception& e) {
    if (err) *err = e.what();
    return false;
  }
}

}  // namespace testsupport

namespace testsupport2 {

// Shuffles every step's conclusion literals and renames its variables,
// remapping the participating-literal indices of later steps. Exercises the
// translator's reconciliation by permutation search and renaming.
inline lampi::trace::TraceDocument shuffled(const lampi::trace::TraceDocument& doc,
                                            testsupport::Rng& rng) {
  using lampi::trace::Rule;
  lampi::trace::TraceDocument out = doc;
  std::map<uint64_t, std::vector<int>> perm_of;    // step -> new index of old literal
  std::map<uint64_t, std::vector<int>> split_perm; // split -> same, for its definition
  int rename_counter = 0;
  for (auto& step : out.steps) {
    auto remap = [&](uint64_t pid, int idx) {
      auto it = perm_of.find(pid);
      return it == perm_of.end() ? idx : it->second[idx];
    };
    if (step.extras.lits) {
      uint64_t p2 = step.rule == Rule::Factoring ? step.premises[0] : step.premises[1];
      step.extras.lits->first = remap(step.premises[0], step.extras.lits->first);
      step.extras.lits->second = remap(p2, step.extras.lits->second);
    }
    if (step.extras.lit) step.extras.lit = remap(step.premises[0], *step.extras.lit);
    for (auto& [sid, idxs] : step.extras.partition) {
      for (auto& i : idxs) i = remap(step.premises[0], i);
      auto it = split_perm.find(sid);
      if (it != split_perm.end()) {
        std::vector<int> renew(idxs.size());
        for (size_t j = 0; j < idxs.size(); ++j) renew[(size_t)it->second[j]] = idxs[j];
        idxs = renew;
      }
    }

    size_t n = step.conclusion.literals.size();
    std::vector<int> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = (int)i;
    for (size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.pick((int)i)]);
    std::vector<lampi::fol::Literal> lits(n);
    for (size_t i = 0; i < n; ++i) lits[(size_t)perm[i]] = step.conclusion.literals[i];
    step.conclusion.literals = std::move(lits);

    lampi::fol::Substitution ren;
    for (const auto& sv : step.conclusion.sort_vars)
      ren.sort_map[sv] = lampi::fol::mk_sort_var("SR" + std::to_string(rename_counter++));
    for (const auto& [v, sort] : step.conclusion.term_vars)
      ren.term_map[v] = lampi::fol::mk_var("VR" + std::to_string(rename_counter++),
                                           lampi::fol::apply(ren, sort));
    step.conclusion = lampi::fol::apply(ren, step.conclusion);

    perm_of[step.id] = perm;
    if (step.rule == Rule::AvatarDefinition && step.extras.split)
      split_perm[*step.extras.split] = perm;
  }
  return out;
}

}  // namespace testsupport2
