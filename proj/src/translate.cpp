#include "lampi/translate.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "lampi/errors.hpp"

namespace lampi::translate {

using namespace lampi::kernel;
using fol::Clause;
using fol::Literal;
using fol::SortPtr;
using fol::Substitution;
using fol::TermPtr;
using trace::DerivationStep;
using trace::Rule;

namespace {

PiPtr C(const char* n) { return t_const(n); }

// ---------------------------------------------------------------------------
// Variable-renaming matcher: literals equal up to a bijective renaming of
// term and sort variables, with optional equation flips.

struct VarBij {
  std::map<std::string, std::string> tf, tr;  // term vars, both directions
  std::map<std::string, std::string> sf, sr;  // sort vars

  bool bind_term(const std::string& a, const std::string& b) {
    auto f = tf.find(a);
    if (f != tf.end()) return f->second == b;
    if (tr.count(b)) return false;
    tf[a] = b;
    tr[b] = a;
    return true;
  }

  bool bind_sort(const std::string& a, const std::string& b) {
    auto f = sf.find(a);
    if (f != sf.end()) return f->second == b;
    if (sr.count(b)) return false;
    sf[a] = b;
    sr[b] = a;
    return true;
  }
};

bool match_sort_ren(const SortPtr& a, const SortPtr& b, VarBij& bij) {
  if (a->is_var != b->is_var) return false;
  if (a->is_var) return bij.bind_sort(a->name, b->name);
  if (a->name != b->name || a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!match_sort_ren(a->args[i], b->args[i], bij)) return false;
  return true;
}

bool match_term_ren(const TermPtr& a, const TermPtr& b, VarBij& bij) {
  if (a->is_var != b->is_var) return false;
  if (a->is_var)
    return bij.bind_term(a->name, b->name) && match_sort_ren(a->sort, b->sort, bij);
  if (a->name != b->name || a->sort_args.size() != b->sort_args.size() ||
      a->args.size() != b->args.size())
    return false;
  for (size_t i = 0; i < a->sort_args.size(); ++i)
    if (!match_sort_ren(a->sort_args[i], b->sort_args[i], bij)) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!match_term_ren(a->args[i], b->args[i], bij)) return false;
  return true;
}

bool match_lit_ren(const Literal& a, const Literal& b, VarBij& bij, bool flip) {
  if (a.positive != b.positive || a.is_eq != b.is_eq) return false;
  if (flip && !a.is_eq) return false;
  if (a.is_eq) {
    const TermPtr& bl = flip ? b.rhs : b.lhs;
    const TermPtr& br = flip ? b.lhs : b.rhs;
    return match_sort_ren(a.eq_sort, b.eq_sort, bij) && match_term_ren(a.lhs, bl, bij) &&
           match_term_ren(a.rhs, br, bij);
  }
  if (a.pred != b.pred || a.sort_args.size() != b.sort_args.size() ||
      a.args.size() != b.args.size())
    return false;
  for (size_t i = 0; i < a.sort_args.size(); ++i)
    if (!match_sort_ren(a.sort_args[i], b.sort_args[i], bij)) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!match_term_ren(a.args[i], b.args[i], bij)) return false;
  return true;
}

struct LitMatch {
  int stated;
  bool flipped;
};

struct Reconciliation {
  Substitution rho;  // renaming: derived-side variables -> stated variables
  std::vector<LitMatch> match;
};

void collect_var_sorts(const Literal& l, std::map<std::string, SortPtr>& out) {
  std::vector<std::pair<std::string, SortPtr>> tv;
  std::vector<std::string> sv;
  fol::scan_free_vars(l, tv, sv);
  for (auto& [n, s] : tv)
    if (!out.count(n)) out[n] = s;
}

// Maps each derived literal onto a stated literal (several derived literals
// may share one stated literal), modulo a bijective variable renaming and
// per-literal equation flips. Every stated literal must be covered.
std::optional<Reconciliation> reconcile(const std::vector<Literal>& derived,
                                        const Clause& stated) {
  std::vector<LitMatch> match(derived.size());
  std::vector<int> used(stated.literals.size(), 0);
  VarBij bij;
  std::function<bool(size_t)> go = [&](size_t k) -> bool {
    if (k == derived.size())
      return std::all_of(used.begin(), used.end(), [](int u) { return u > 0; });
    for (size_t j = 0; j < stated.literals.size(); ++j) {
      for (bool flip : {false, true}) {
        if (flip && !derived[k].is_eq) break;
        VarBij save = bij;
        if (match_lit_ren(derived[k], stated.literals[j], bij, flip)) {
          match[k] = {(int)j, flip};
          ++used[j];
          if (go(k + 1)) return true;
          --used[j];
        }
        bij = save;
      }
    }
    return false;
  };
  if (derived.size() < stated.literals.size()) return std::nullopt;
  if (!go(0)) return std::nullopt;

  Reconciliation out;
  out.match = std::move(match);
  for (const auto& [a, b] : bij.sf) out.rho.sort_map[a] = fol::mk_sort_var(b);
  std::map<std::string, SortPtr> sorts;
  for (const auto& l : derived) collect_var_sorts(l, sorts);
  for (const auto& [a, b] : bij.tf)
    out.rho.term_map[a] = fol::mk_var(b, fol::apply(out.rho, sorts.at(a)));
  return out;
}

// Bijective whole-clause matcher (definition reuse, component steps): a
// literal permutation, per-literal flips, and a variable bijection.
struct ComponentMatch {
  std::vector<LitMatch> match;  // per `from` literal
  VarBij bij;
};

std::optional<ComponentMatch> match_component(const Clause& from, const Clause& to) {
  if (from.literals.size() != to.literals.size()) return std::nullopt;
  ComponentMatch out;
  out.match.resize(from.literals.size());
  std::vector<bool> used(to.literals.size(), false);
  std::function<bool(size_t)> go = [&](size_t k) -> bool {
    if (k == from.literals.size()) return true;
    for (size_t j = 0; j < to.literals.size(); ++j) {
      if (used[j]) continue;
      for (bool flip : {false, true}) {
        if (flip && !from.literals[k].is_eq) break;
        VarBij save = out.bij;
        if (match_lit_ren(from.literals[k], to.literals[j], out.bij, flip)) {
          out.match[k] = {(int)j, flip};
          used[j] = true;
          if (go(k + 1)) return true;
          used[j] = false;
        }
        out.bij = save;
      }
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// Deep translation with grounding: variables outside the given scope are
// don't-cares and become star-inhabitants (iota for sorts).

struct Scope {
  const std::set<std::string>& vars;
  const std::set<std::string>& sorts;
};

PiPtr g_sort(const SortPtr& s, const Scope& sc) {
  if (s->is_var)
    return sc.sorts.count(s->name) ? t_fvar(s->name) : C(embed::k_iota);
  PiPtr head = s->name == "iota" ? C(embed::k_iota) : t_const(embed::mangle(s->name));
  for (const auto& a : s->args) head = t_app(head, g_sort(a, sc));
  return head;
}

PiPtr g_term(const TermPtr& t, const Scope& sc) {
  if (t->is_var) {
    if (sc.vars.count(t->name)) return t_fvar(t->name);
    return t_app(C(embed::k_star), g_sort(t->sort, sc));
  }
  PiPtr head = t_const(embed::mangle(t->name));
  for (const auto& s : t->sort_args) head = t_app(head, g_sort(s, sc));
  for (const auto& a : t->args) head = t_app(head, g_term(a, sc));
  return head;
}

PiPtr g_atom(const Literal& l, const Scope& sc) {
  if (l.is_eq)
    return t_app(C(embed::k_eq),
                 {g_sort(l.eq_sort, sc), g_term(l.lhs, sc), g_term(l.rhs, sc)});
  PiPtr head = t_const(embed::mangle(l.pred));
  for (const auto& s : l.sort_args) head = t_app(head, g_sort(s, sc));
  for (const auto& a : l.args) head = t_app(head, g_term(a, sc));
  return head;
}

PiPtr g_deep_literal(const Literal& l, const Scope& sc) {
  PiPtr atom = g_atom(l, sc);
  return l.positive ? atom : t_app(C(embed::k_not), atom);
}

// ---------------------------------------------------------------------------
// Positions inside literal atoms. The first component selects the equation
// side (0 left, 1 right) or the predicate argument; the rest index term
// arguments.

const TermPtr& subterm_in_term(const TermPtr& t, const std::vector<int>& path, size_t from,
                               uint64_t step) {
  const TermPtr* cur = &t;
  for (size_t i = from; i < path.size(); ++i) {
    if ((*cur)->is_var || path[i] < 0 || (size_t)path[i] >= (*cur)->args.size())
      throw TraceError((long)step, "position path leaves the term");
    cur = &(*cur)->args[path[i]];
  }
  return *cur;
}

const TermPtr& subterm_at(const Literal& l, const std::vector<int>& path, uint64_t step) {
  if (path.empty()) throw TraceError((long)step, "empty position path");
  if (l.is_eq) {
    if (path[0] == 0) return subterm_in_term(l.lhs, path, 1, step);
    if (path[0] == 1) return subterm_in_term(l.rhs, path, 1, step);
    throw TraceError((long)step, "equation position must start 0 or 1");
  }
  if (path[0] < 0 || (size_t)path[0] >= l.args.size())
    throw TraceError((long)step, "position path leaves the atom");
  return subterm_in_term(l.args[path[0]], path, 1, step);
}

TermPtr replace_in_term(const TermPtr& t, const std::vector<int>& path, size_t from,
                        const TermPtr& repl) {
  if (from == path.size()) return repl;
  std::vector<TermPtr> args = t->args;
  args[path[from]] = replace_in_term(args[path[from]], path, from + 1, repl);
  return fol::mk_app_raw(t->name, t->sort_args, std::move(args), t->sort);
}

Literal replace_at(const Literal& l, const std::vector<int>& path, const TermPtr& repl) {
  Literal out = l;
  if (l.is_eq) {
    if (path[0] == 0) out.lhs = replace_in_term(l.lhs, path, 1, repl);
    else out.rhs = replace_in_term(l.rhs, path, 1, repl);
    return out;
  }
  out.args[path[0]] = replace_in_term(l.args[path[0]], path, 1, repl);
  return out;
}

void occurrences_in_term(const TermPtr& t, const TermPtr& redex, std::vector<int>& prefix,
                         std::vector<std::vector<int>>& out) {
  if (fol::equal(t, redex)) {
    out.push_back(prefix);
    return;
  }
  for (size_t i = 0; i < t->args.size(); ++i) {
    prefix.push_back((int)i);
    occurrences_in_term(t->args[i], redex, prefix, out);
    prefix.pop_back();
  }
}

std::vector<std::vector<int>> occurrences(const Literal& l, const TermPtr& redex) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  if (l.is_eq) {
    prefix.push_back(0);
    occurrences_in_term(l.lhs, redex, prefix, out);
    prefix[0] = 1;
    occurrences_in_term(l.rhs, redex, prefix, out);
  } else {
    for (size_t i = 0; i < l.args.size(); ++i) {
      prefix.push_back((int)i);
      occurrences_in_term(l.args[i], redex, prefix, out);
      prefix.pop_back();
    }
  }
  return out;
}

bool atoms_equal(const Literal& a, const Literal& b) {
  Literal x = a, y = b;
  x.positive = y.positive = true;
  return fol::equal(x, y);
}

}  // namespace

kernel::PiPtr repair_orientation(const fol::Literal& expected, const fol::Literal& actual,
                                 const kernel::PiPtr& proof) {
  if (fol::equal(expected, actual)) return proof;
  if (!fol::equal_flipped(expected, actual))
    throw TraceError(0, "orientation repair on literals differing by more than orientation");
  const char* lemma = actual.positive ? embed::k_comml : embed::k_comml_not;
  PiPtr sort = embed::sort_term(actual.eq_sort);
  PiPtr x = embed::deep_term(actual.lhs);
  PiPtr y = embed::deep_term(actual.rhs);
  // Undo a previous flip instead of wrapping twice.
  Spine s = decompose(proof);
  if (s.head->tag == Tag::Const && s.head->name == lemma && s.args.size() == 4 &&
      alpha_equal(s.args[0], sort) && alpha_equal(s.args[1], y) &&
      alpha_equal(s.args[2], x))
    return s.args[3];
  return t_app(C(lemma), {sort, x, y, proof});
}

namespace {

// ---------------------------------------------------------------------------
// The translator proper.

class Translator {
 public:
  explicit Translator(const trace::TraceDocument& doc) : trace_(doc) {}

  Translation run() {
    Document enc = embed::prelude_encoding();
    Document sh = embed::prelude_shorthands();
    comment(0, "1. first-order logic encoding", false);
    for (auto& it : enc) out_.doc.push_back(std::move(it));
    comment(out_.doc.size(), "2. shorthands", true);
    for (auto& it : sh) out_.doc.push_back(std::move(it));
    comment(out_.doc.size(), "3. signature", true);
    for (const auto& name : trace_.symbols.sort_order()) {
      if (name == "iota") continue;
      out_.doc.push_back(embed::declare_sort_ctor(name, trace_.symbols.sorts().at(name)));
    }
    for (const auto& name : trace_.symbols.symbol_order())
      out_.doc.push_back(embed::declare_symbol(trace_.symbols, name));
    comment(out_.doc.size(), "4. inputs", true);
    for (const auto& step : trace_.steps)
      if (step.rule == Rule::Input) translate_input(step);
    comment(out_.doc.size(), "5. derivation", true);
    for (const auto& step : trace_.steps) {
      if (step.rule == Rule::Input) continue;
      translate_step(step);
    }
    out_.steps = trace_.steps.size();
    return std::move(out_);
  }

 private:
  struct StepInfo {
    Clause clause;
    std::vector<embed::Condition> conds;
    std::string cname;  // empty for avatar definitions
    PiPtr type;
    bool is_sat = false;
  };

  struct SplitInfo {
    Clause component;
    std::string prop;
  };

  const trace::TraceDocument& trace_;
  Translation out_;
  std::map<uint64_t, StepInfo> steps_;
  std::map<uint64_t, SplitInfo> splits_;
  fol::FreshNames fresh_;

  void comment(size_t index, std::string text, bool blank) {
    out_.comments.push_back({index, std::move(text), blank});
  }

  [[noreturn]] void corrupt(const DerivationStep& s, const std::string& msg) {
    throw TraceError((long)s.id, msg + " (corrupted trace)");
  }

  const StepInfo& premise_info(const DerivationStep& s, size_t i) {
    auto it = steps_.find(s.premises.at(i));
    if (it == steps_.end()) corrupt(s, "premise not translated");
    return it->second;
  }

  const StepInfo& fol_premise(const DerivationStep& s, size_t i) {
    const StepInfo& info = premise_info(s, i);
    if (info.cname.empty()) corrupt(s, "premise is an avatar definition");
    if (info.is_sat) corrupt(s, "premise is a propositional split clause");
    return info;
  }

  void record(const DerivationStep& step, const std::string& cname, PiPtr type,
              bool is_sat = false) {
    steps_[step.id] = StepInfo{step.conclusion, step.conditions, cname, type, is_sat};
    if (!cname.empty()) out_.step_entries[step.id] = {cname, type};
  }

  // ---- shared per-step context -----------------------------------------

  struct Ctx {
    const DerivationStep& step;
    const Clause& G;
    std::vector<embed::Condition> K;
    std::set<std::string> svars, ssorts;
    std::vector<std::string> lnames;
    std::vector<std::string> knames;
    std::map<std::pair<uint64_t, int>, std::string> kname_of;

    Scope scope() const { return Scope{svars, ssorts}; }
  };

  Ctx make_ctx(const DerivationStep& step) {
    Ctx c{step, step.conclusion, step.conditions, {}, {}, {}, {}, {}};
    for (const auto& [v, s] : c.G.term_vars) c.svars.insert(v);
    for (const auto& v : c.G.sort_vars) c.ssorts.insert(v);
    for (size_t j = 0; j < c.G.literals.size(); ++j)
      c.lnames.push_back("l" + std::to_string(j + 1));
    for (size_t i = 0; i < c.K.size(); ++i) {
      std::string n = "k" + std::to_string(i + 1);
      c.knames.push_back(n);
      c.kname_of[{c.K[i].split_id, c.K[i].positive ? 1 : 0}] = n;
    }
    return c;
  }

  // Wraps a prf-bot body in the conclusion's binders: conditions, sort
  // variables, value variables, literal continuations.
  PiPtr finish(const Ctx& c, PiPtr body) {
    for (size_t j = c.G.literals.size(); j-- > 0;)
      body = lam_closing(c.lnames[j], c.lnames[j],
                         embed::shallow_literal(c.G.literals[j]), body);
    for (size_t i = c.G.term_vars.size(); i-- > 0;)
      body = lam_closing(c.G.term_vars[i].first, c.G.term_vars[i].first,
                         t_app(C(embed::k_el), embed::sort_term(c.G.term_vars[i].second)),
                         body);
    for (size_t i = c.G.sort_vars.size(); i-- > 0;)
      body = lam_closing(c.G.sort_vars[i], c.G.sort_vars[i], C(embed::k_set), body);
    for (size_t i = c.K.size(); i-- > 0;)
      body = lam_closing(c.knames[i], c.knames[i], embed::condition_arg_type(c.K[i]), body);
    return body;
  }

  void emit_step_def(const Ctx& c, PiPtr body) {
    PiPtr type = embed::avatar_clause_type(c.G, c.K);
    std::string name = embed::step_name(c.step.id);
    out_.doc.push_back(SignatureEntry{name, type, finish(c, body), false});
    record(c.step, name, type);
  }

  // Checks premise conditions against the conclusion's and notes weakening.
  void check_conditions(const Ctx& c) {
    std::set<embed::Condition> prem;
    for (uint64_t pid : c.step.premises) {
      auto it = steps_.find(pid);
      if (it == steps_.end()) continue;
      for (const auto& k : it->second.conds) {
        prem.insert(k);
        if (!c.kname_of.count({k.split_id, k.positive ? 1 : 0}))
          corrupt(c.step, "conclusion conditions do not cover premise " +
                              std::to_string(pid));
      }
    }
    if (prem.size() < c.K.size())
      out_.notes.push_back("step " + std::to_string(c.step.id) +
                           ": conclusion conditions strictly exceed the premises");
  }

  // A premise ready for instantiation.
  struct Prem {
    const StepInfo* info;
    Clause fresh;
    Substitution renaming;
  };

  Prem prepare(const Ctx& c, size_t i, const std::set<std::string>& extra_avoid = {}) {
    const StepInfo& info = fol_premise(c.step, i);
    std::set<std::string> avoid = c.svars;
    avoid.insert(c.ssorts.begin(), c.ssorts.end());
    avoid.insert(extra_avoid.begin(), extra_avoid.end());
    auto [freshened, ren] = fol::freshen_clause(info.clause, fresh_, avoid);
    return Prem{&info, std::move(freshened), std::move(ren)};
  }

  // step_<id> applied to condition, sort and value arguments, then the given
  // literal continuations (in premise literal order).
  PiPtr apply_premise(const Ctx& c, const Prem& p, const Substitution& inst,
                      const std::vector<PiPtr>& lit_conts) {
    PiPtr app = t_const(p.info->cname);
    for (const auto& k : p.info->conds) {
      auto it = c.kname_of.find({k.split_id, k.positive ? 1 : 0});
      if (it == c.kname_of.end()) corrupt(c.step, "missing condition binder");
      app = t_app(app, t_fvar(it->second));
    }
    Scope sc = c.scope();
    for (const auto& sv : p.fresh.sort_vars)
      app = t_app(app, g_sort(fol::apply(inst, fol::mk_sort_var(sv)), sc));
    for (const auto& [v, sort] : p.fresh.term_vars)
      app = t_app(app, g_term(fol::apply(inst, fol::mk_var(v, sort)), sc));
    for (const auto& cont : lit_conts) app = t_app(app, cont);
    return app;
  }

  // Continuation for a literal that survives into the conclusion.
  PiPtr survivor(const Ctx& c, const LitMatch& m) {
    const Literal& stated = c.G.literals[m.stated];
    PiPtr proof = t_fvar(c.lnames[m.stated]);
    if (!m.flipped) return proof;
    return repair_orientation(fol::flip_equation(stated), stated, proof);
  }

  // ---- rule builders ----------------------------------------------------

  void translate_input(const DerivationStep& step) {
    if (!step.premises.empty() || !step.conditions.empty())
      corrupt(step, "input steps take no premises or conditions");
    PiPtr type = embed::clause_type(step.conclusion);
    std::string name = embed::step_name(step.id);
    out_.doc.push_back(SignatureEntry{name, type, std::nullopt, false});
    record(step, name, type);
  }

  void translate_step(const DerivationStep& step) {
    switch (step.rule) {
      case Rule::Input:
        translate_input(step);
        return;
      case Rule::Resolution:
      case Rule::SubsumptionResolution:
        build_resolution(step);
        return;
      case Rule::Factoring:
        build_factoring(step);
        return;
      case Rule::Superposition:
      case Rule::SimultaneousSuperposition:
      case Rule::Demodulation:
        build_superposition(step);
        return;
      case Rule::EqualityResolution:
        build_equality_resolution(step);
        return;
      case Rule::AvatarDefinition:
        build_avatar_definition(step);
        return;
      case Rule::AvatarSplit:
        build_avatar_split(step);
        return;
      case Rule::AvatarComponent:
        build_avatar_component(step);
        return;
      case Rule::AvatarContradiction:
        build_avatar_contradiction(step);
        return;
      case Rule::Unsupported:
        sorry_fallback(step);
        return;
    }
  }

  void build_resolution(const DerivationStep& step) {
    Ctx c = make_ctx(step);
    check_conditions(c);
    if (!step.extras.lits) corrupt(step, "missing participating literals");
    auto [mi, si] = *step.extras.lits;
    Prem main = prepare(c, 0);
    Prem side = prepare(c, 1, fol::all_var_names(main.fresh));
    const Literal& ml = main.fresh.literals.at(mi);
    const Literal& sl = side.fresh.literals.at(si);
    if (ml.positive == sl.positive) corrupt(step, "resolved literals share polarity");

    bool subsumption = step.rule == Rule::SubsumptionResolution;
    // Candidate unifiers: the stated orientation, then the flipped one when
    // the atoms are equations. The stated conclusion arbitrates.
    std::vector<std::pair<Substitution, bool>> cands;
    if (subsumption) {
      if (auto s = fol::match_atoms(sl, ml)) cands.emplace_back(std::move(*s), false);
      if (sl.is_eq)
        if (auto s = fol::match_atoms(fol::flip_equation(sl), ml))
          cands.emplace_back(std::move(*s), true);
    } else {
      if (auto s = fol::unify_atoms(ml, sl)) cands.emplace_back(std::move(*s), false);
      if (ml.is_eq)
        if (auto s = fol::unify_atoms(ml, fol::flip_equation(sl)))
          cands.emplace_back(std::move(*s), true);
    }
    if (cands.empty()) corrupt(step, "selected literals do not unify");

    Substitution sigma;
    bool eqflip = false;
    std::vector<Literal> derived;
    std::vector<size_t> main_slot, side_slot;
    std::optional<Reconciliation> rec;
    for (auto& [cand_sigma, cand_flip] : cands) {
      if (subsumption &&
          !extend_subsumption(cand_sigma, main.fresh, side.fresh, mi, si))
        continue;
      derived.clear();
      main_slot.assign(main.fresh.literals.size(), SIZE_MAX);
      side_slot.assign(side.fresh.literals.size(), SIZE_MAX);
      for (size_t j = 0; j < main.fresh.literals.size(); ++j) {
        if ((int)j == mi) continue;
        main_slot[j] = derived.size();
        derived.push_back(fol::apply(cand_sigma, main.fresh.literals[j]));
      }
      for (size_t j = 0; j < side.fresh.literals.size(); ++j) {
        if ((int)j == si) continue;
        side_slot[j] = derived.size();
        derived.push_back(fol::apply(cand_sigma, side.fresh.literals[j]));
      }
      rec = reconcile(derived, c.G);
      if (rec) {
        sigma = cand_sigma;
        eqflip = cand_flip;
        break;
      }
    }
    if (!rec) corrupt(step, "conclusion does not match the recomputed clause");
    Substitution inst = fol::compose(rec->rho, sigma);
    Scope sc = c.scope();

    Literal matom = fol::apply(inst, ml);
    Literal satom = fol::apply(inst, sl);

    // Inner: the side premise applied, its selected slot discharged with q.
    // When the resolved atoms are equations matched up to a flip, a Leibniz
    // symmetry step bridges the orientations.
    auto side_cont = [&](const PiPtr& q) {
      std::vector<PiPtr> conts;
      for (size_t j = 0; j < side.fresh.literals.size(); ++j) {
        if ((int)j == si) {
          PiPtr ann = embed::prf(g_deep_literal(satom, sc));
          PiPtr body;
          if (ml.positive) {
            // q : prf <matom>; tp : prf (not <satom>) expects prf <satom>.
            PiPtr qq = q;
            if (eqflip)
              qq = embed::leibniz_sym(g_sort(matom.eq_sort, sc), g_term(matom.lhs, sc),
                                      g_term(matom.rhs, sc), q);
            body = t_app(t_fvar("tp"), qq);
          } else {
            // q : prf (not <matom-atom>); tp : prf <satom>.
            PiPtr tq = t_fvar("tp");
            if (eqflip)
              tq = embed::leibniz_sym(g_sort(satom.eq_sort, sc), g_term(satom.lhs, sc),
                                      g_term(satom.rhs, sc), tq);
            body = t_app(q, tq);
          }
          conts.push_back(lam_closing("tp", "tp", ann, body));
        } else {
          conts.push_back(survivor(c, rec->match[side_slot[j]]));
        }
      }
      return apply_premise(c, side, inst, conts);
    };

    std::vector<PiPtr> main_conts;
    for (size_t j = 0; j < main.fresh.literals.size(); ++j) {
      if ((int)j == mi) {
        PiPtr ann = embed::prf(g_deep_literal(matom, sc));
        PiPtr body = side_cont(t_fvar("q"));
        main_conts.push_back(lam_closing("q", "q", ann, body));
      } else {
        main_conts.push_back(survivor(c, rec->match[main_slot[j]]));
      }
    }
    emit_step_def(c, apply_premise(c, main, inst, main_conts));
  }

  // Extends the one-sided matcher so every remaining side literal matches a
  // remaining main literal; flips allowed. Backtracking over candidates.
  bool extend_subsumption(Substitution& sigma, const Clause& main, const Clause& side,
                          int mi, int si) {
    std::vector<int> side_rest;
    for (size_t j = 0; j < side.literals.size(); ++j)
      if ((int)j != si) side_rest.push_back((int)j);
    std::function<bool(size_t, Substitution)> go = [&](size_t k,
                                                       Substitution acc) -> bool {
      if (k == side_rest.size()) {
        sigma = std::move(acc);
        return true;
      }
      const Literal& sl = side.literals[side_rest[k]];
      for (size_t j = 0; j < main.literals.size(); ++j) {
        if ((int)j == mi) continue;
        const Literal& mlj = main.literals[j];
        if (mlj.positive != sl.positive) continue;
        if (auto ext = fol::match_atoms(sl, mlj, acc))
          if (go(k + 1, *ext)) return true;
        if (sl.is_eq)
          if (auto ext = fol::match_atoms(fol::flip_equation(sl), mlj, acc))
            if (go(k + 1, *ext)) return true;
      }
      return false;
    };
    return go(0, sigma);
  }

  void build_factoring(const DerivationStep& step) {
    Ctx c = make_ctx(step);
    check_conditions(c);
    if (!step.extras.lits) corrupt(step, "missing participating literals");
    auto [i, j] = *step.extras.lits;
    Prem p = prepare(c, 0);
    const Literal& a = p.fresh.literals.at(i);
    const Literal& b = p.fresh.literals.at(j);
    if (a.positive != b.positive) corrupt(step, "factored literals differ in polarity");
    std::vector<Substitution> cands;
    if (auto s = fol::unify_atoms(a, b)) cands.push_back(std::move(*s));
    if (a.is_eq)
      if (auto s = fol::unify_atoms(a, fol::flip_equation(b))) cands.push_back(std::move(*s));
    if (cands.empty()) corrupt(step, "factored literals do not unify");

    std::vector<Literal> derived;
    std::optional<Reconciliation> rec;
    Substitution sigma;
    for (const Substitution& cand : cands) {
      derived.clear();
      for (const auto& l : p.fresh.literals) derived.push_back(fol::apply(cand, l));
      rec = reconcile(derived, c.G);
      if (rec) {
        sigma = cand;
        break;
      }
    }
    if (!rec) corrupt(step, "conclusion does not match the recomputed clause");
    Substitution inst = fol::compose(rec->rho, sigma);

    std::vector<PiPtr> conts;
    for (size_t k = 0; k < p.fresh.literals.size(); ++k)
      conts.push_back(survivor(c, rec->match[k]));
    emit_step_def(c, apply_premise(c, p, inst, conts));
  }

  void build_superposition(const DerivationStep& step) {
    Ctx c = make_ctx(step);
    check_conditions(c);
    if (!step.extras.lits) corrupt(step, "missing participating literals");
    auto [ei, ti] = *step.extras.lits;
    bool simultaneous = step.rule == Rule::SimultaneousSuperposition;
    bool demod = step.rule == Rule::Demodulation;
    Prem rw = prepare(c, 0);
    Prem tgt = prepare(c, 1, fol::all_var_names(rw.fresh));
    const Literal& eqlit = rw.fresh.literals.at(ei);
    if (!eqlit.is_eq || !eqlit.positive)
      corrupt(step, "rewriting literal is not a positive equation");
    const Literal& tlit = tgt.fresh.literals.at(ti);
    // Candidate orientations: the stated path plus its mirror image when the
    // target is an equation, crossed with both equation sides (a flipped
    // stated orientation falls back to the other side). A candidate counts
    // only if its recomputed conclusion reconciles with the stated one; sides
    // that are bare variables come last.
    std::vector<std::vector<int>> paths{step.extras.pos};
    if (tlit.is_eq && !step.extras.pos.empty() && step.extras.pos[0] <= 1) {
      std::vector<int> alt = step.extras.pos;
      alt[0] = 1 - alt[0];
      paths.push_back(alt);
    }
    struct Candidate {
      Substitution sigma;
      TermPtr from, to;
      bool flipped_rw;
      std::vector<int> pos;
    };
    std::vector<Candidate> candidates;
    for (const auto& cand : paths) {
      TermPtr sub;
      try {
        sub = subterm_at(tlit, cand, step.id);
      } catch (const TraceError&) {
        continue;
      }
      for (bool flip : {false, true}) {
        TermPtr f = (step.extras.side == 'l') != flip ? eqlit.lhs : eqlit.rhs;
        TermPtr t = (step.extras.side == 'l') != flip ? eqlit.rhs : eqlit.lhs;
        auto s = demod ? fol::match_term(f, sub) : fol::unify(f, sub);
        if (s) candidates.push_back({std::move(*s), f, t, f.get() == eqlit.rhs.get(), cand});
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                       return !a.from->is_var && b.from->is_var;
                     });
    if (candidates.empty())
      corrupt(step, "equation side does not unify with the target subterm");

    Substitution sigma;
    TermPtr from, to;
    bool flipped_rw = false;
    std::vector<Literal> derived;
    std::vector<size_t> rw_slot, tgt_slot;
    std::vector<Literal> tgt_inst;
    std::vector<std::vector<std::vector<int>>> rw_pos;
    std::optional<Reconciliation> rec;
    for (const Candidate& cand : candidates) {
      TermPtr redex = fol::apply(cand.sigma, cand.from);
      TermPtr repl = fol::apply(cand.sigma, cand.to);
      tgt_inst.clear();
      for (const auto& l : tgt.fresh.literals) tgt_inst.push_back(fol::apply(cand.sigma, l));
      rw_pos.assign(tgt_inst.size(), {});
      if (simultaneous) {
        for (size_t j = 0; j < tgt_inst.size(); ++j)
          rw_pos[j] = occurrences(tgt_inst[j], redex);
      } else {
        rw_pos[ti].push_back(cand.pos);
      }
      if (rw_pos[ti].empty()) continue;

      // Derived: rewriting premise leftovers, then the target's literals with
      // the replacement applied.
      derived.clear();
      rw_slot.assign(rw.fresh.literals.size(), SIZE_MAX);
      tgt_slot.assign(tgt_inst.size(), SIZE_MAX);
      for (size_t j = 0; j < rw.fresh.literals.size(); ++j) {
        if ((int)j == ei) continue;
        rw_slot[j] = derived.size();
        derived.push_back(fol::apply(cand.sigma, rw.fresh.literals[j]));
      }
      for (size_t j = 0; j < tgt_inst.size(); ++j) {
        Literal l = tgt_inst[j];
        for (const auto& path : rw_pos[j]) l = replace_at(l, path, repl);
        tgt_slot[j] = derived.size();
        derived.push_back(std::move(l));
      }
      rec = reconcile(derived, c.G);
      if (rec) {
        sigma = cand.sigma;
        from = cand.from;
        to = cand.to;
        flipped_rw = cand.flipped_rw;
        break;
      }
    }
    if (!rec) corrupt(step, "conclusion does not match the recomputed clause");
    Substitution inst = fol::compose(rec->rho, sigma);
    Scope sc = c.scope();

    Literal eq_inst = fol::apply(inst, eqlit);
    TermPtr redex_inst = fol::apply(inst, from);
    PiPtr sortT = g_sort(redex_inst->sort, sc);

    // Inner nesting for one rewritten literal: apply the rewriting premise,
    // bind r at its equation, transport q through the context, and hand the
    // result to the conclusion's continuation for the rewritten literal.
    auto inner_for = [&](size_t j, const PiPtr& q) {
      Literal pre = fol::apply(rec->rho, tgt_inst[j]);  // before rewriting
      // Context: the literal with the redex occurrences abstracted.
      std::set<std::string> hole_vars = c.svars;
      hole_vars.insert("#z");
      Literal holed = pre;
      TermPtr marker = fol::mk_var("#z", redex_inst->sort);
      for (const auto& path : rw_pos[j]) holed = replace_at(holed, path, marker);
      PiPtr ctx_body = g_deep_literal(holed, Scope{hole_vars, c.ssorts});
      PiPtr ctx = lam_closing("#z", "z", t_app(C(embed::k_el), sortT), ctx_body);
      if (ctx->b->tag == Tag::App && ctx->b->b->tag == Tag::BVar &&
          ctx->b->b->index == 0 && !uses_bvar0(ctx->b->a))
        ctx = ctx->b->a;  // bare predicate context

      PiPtr r = t_fvar("r");
      if (flipped_rw)
        r = embed::leibniz_sym(sortT, g_term(eq_inst.lhs, sc), g_term(eq_inst.rhs, sc), r);
      PiPtr transported = t_app(t_app(r, ctx), q);
      PiPtr out_cont = survivor(c, rec->match[tgt_slot[j]]);
      PiPtr body = t_app(out_cont, transported);

      std::vector<PiPtr> conts;
      for (size_t i2 = 0; i2 < rw.fresh.literals.size(); ++i2) {
        if ((int)i2 == ei) {
          conts.push_back(
              lam_closing("r", "r", embed::prf(g_deep_literal(eq_inst, sc)), body));
        } else {
          conts.push_back(survivor(c, rec->match[rw_slot[i2]]));
        }
      }
      return apply_premise(c, rw, inst, conts);
    };

    std::vector<PiPtr> tgt_conts;
    for (size_t j = 0; j < tgt_inst.size(); ++j) {
      if (rw_pos[j].empty()) {
        tgt_conts.push_back(survivor(c, rec->match[tgt_slot[j]]));
      } else {
        Literal pre = fol::apply(rec->rho, tgt_inst[j]);
        PiPtr ann = embed::prf(g_deep_literal(pre, sc));
        tgt_conts.push_back(lam_closing("q", "q", ann, inner_for(j, t_fvar("q"))));
      }
    }
    emit_step_def(c, apply_premise(c, tgt, inst, tgt_conts));
  }

  void build_equality_resolution(const DerivationStep& step) {
    Ctx c = make_ctx(step);
    check_conditions(c);
    if (!step.extras.lit) corrupt(step, "missing participating literal");
    int li = *step.extras.lit;
    Prem p = prepare(c, 0);
    const Literal& sel = p.fresh.literals.at(li);
    if (!sel.is_eq || sel.positive)
      corrupt(step, "selected literal is not a negative equation");
    std::optional<Substitution> sigma = fol::unify(sel.lhs, sel.rhs);
    if (!sigma) corrupt(step, "equation sides do not unify");

    std::vector<Literal> derived;
    std::vector<size_t> slot(p.fresh.literals.size(), SIZE_MAX);
    for (size_t j = 0; j < p.fresh.literals.size(); ++j) {
      if ((int)j == li) continue;
      slot[j] = derived.size();
      derived.push_back(fol::apply(*sigma, p.fresh.literals[j]));
    }
    auto rec = reconcile(derived, c.G);
    if (!rec) corrupt(step, "conclusion does not match the recomputed clause");
    Substitution inst = fol::compose(rec->rho, *sigma);
    Scope sc = c.scope();

    Literal sel_inst = fol::apply(inst, sel);
    PiPtr sortT = g_sort(sel_inst.eq_sort, sc);
    PiPtr side = g_term(sel_inst.lhs, sc);
    // tp : prf (not (eq s t t)); discharge with reflexivity.
    PiPtr body = t_app(t_fvar("tp"), t_app(C(embed::k_refl), {sortT, side}));
    std::vector<PiPtr> conts;
    for (size_t j = 0; j < p.fresh.literals.size(); ++j) {
      if ((int)j == li) {
        conts.push_back(
            lam_closing("tp", "tp", embed::prf(g_deep_literal(sel_inst, sc)), body));
      } else {
        conts.push_back(survivor(c, rec->match[slot[j]]));
      }
    }
    emit_step_def(c, apply_premise(c, p, inst, conts));
  }

  void build_avatar_definition(const DerivationStep& step) {
    if (!step.extras.split) corrupt(step, "missing split id");
    uint64_t sid = *step.extras.split;
    const Clause& comp = step.conclusion;
    auto it = splits_.find(sid);
    if (it != splits_.end()) {
      // Re-registration is fine when the component is the same clause up to
      // renaming and literal order.
      if (!match_component(it->second.component, comp))
        corrupt(step, "split " + std::to_string(sid) +
                          " redefined with a different component");
      record(step, "", nullptr);
      return;
    }
    std::string prop = embed::split_name(sid);
    out_.doc.push_back(SignatureEntry{prop, C(embed::k_prop), std::nullopt, true});
    RewriteRule r;
    r.lhs = t_const(prop);
    r.rhs = embed::component_formula(comp);
    out_.doc.push_back(std::move(r));
    splits_[sid] = SplitInfo{comp, prop};
    record(step, "", nullptr);
  }

  void build_avatar_component(const DerivationStep& step) {
    if (!step.extras.split) corrupt(step, "missing split id");
    uint64_t sid = *step.extras.split;
    auto it = splits_.find(sid);
    if (it == splits_.end()) corrupt(step, "unknown split id");
    Ctx c = make_ctx(step);
    if (c.K.size() != 1 || c.K[0].split_id != sid || !c.K[0].positive)
      corrupt(step, "component must be conditional on its own split");

    const Clause& def = it->second.component;
    auto cm = match_component(def, c.G);
    if (!cm) corrupt(step, "conclusion is not a renaming of the component");

    // nsp (psp : prf sp => psp <sorts> <vars> <continuations>)
    PiPtr app = t_fvar("psp");
    for (const auto& sv : def.sort_vars) app = t_app(app, t_fvar(cm->bij.sf.at(sv)));
    for (const auto& [v, sort] : def.term_vars) app = t_app(app, t_fvar(cm->bij.tf.at(v)));
    Substitution ren;
    for (const auto& [a, b] : cm->bij.sf) ren.sort_map[a] = fol::mk_sort_var(b);
    for (const auto& [v, sort] : def.term_vars)
      ren.term_map[v] = fol::mk_var(cm->bij.tf.at(v), fol::apply(ren, sort));
    for (size_t j = 0; j < def.literals.size(); ++j) {
      const LitMatch& m = cm->match[j];
      Literal expected = fol::apply(ren, def.literals[j]);
      PiPtr cont = repair_orientation(expected, c.G.literals[m.stated],
                                      t_fvar(c.lnames[m.stated]));
      app = t_app(app, cont);
    }
    PiPtr inner = lam_closing("psp", "psp", embed::prf(t_const(it->second.prop)), app);
    PiPtr body = t_app(t_fvar(c.knames[0]), inner);
    emit_step_def(c, body);
  }

  void build_avatar_split(const DerivationStep& step) {
    Ctx c = make_ctx(step);
    check_conditions(c);
    if (step.extras.partition.empty()) corrupt(step, "missing partition");
    const StepInfo& pinfo = fol_premise(step, 0);
    Prem p{&pinfo, pinfo.clause, {}};

    struct Unpack {
      const SplitInfo* split;
      std::vector<std::string> sort_binders;  // per def sort var
      std::vector<std::string> var_binders;   // per def term var
      std::vector<std::string> lit_binders;   // per def literal
      Substitution def_to_binder;             // def vars -> binder names
      VarBij bij;                             // premise vars <-> def vars
      std::vector<bool> flipped;              // per def literal
    };
    std::vector<Unpack> unpacks;
    std::set<std::string> used_names = fol::all_var_names(p.fresh);
    std::map<int, std::pair<size_t, size_t>> where;  // premise lit -> (split, def pos)
    std::set<std::string> premise_vars_seen;

    for (size_t si = 0; si < step.extras.partition.size(); ++si) {
      const auto& [sid, idxs] = step.extras.partition[si];
      auto sit = splits_.find(sid);
      if (sit == splits_.end()) corrupt(step, "unknown split id");
      const Clause& def = sit->second.component;
      if (idxs.size() != def.literals.size())
        corrupt(step, "partition entry does not cover the component of split " +
                          std::to_string(sid));
      Unpack u;
      u.split = &sit->second;
      // Match each listed premise literal against the definition's literal
      // at the same position.
      u.flipped.resize(idxs.size());
      std::set<std::string> group_vars;
      for (size_t j = 0; j < idxs.size(); ++j) {
        int pidx = idxs[j];
        if ((size_t)pidx >= p.fresh.literals.size())
          corrupt(step, "partition index out of range");
        const Literal& pl = p.fresh.literals[pidx];
        bool ok = match_lit_ren(pl, def.literals[j], u.bij, false);
        if (!ok && pl.is_eq && match_lit_ren(pl, def.literals[j], u.bij, true)) {
          ok = true;
          u.flipped[j] = true;
        }
        if (!ok)
          corrupt(step, "premise literal " + std::to_string(pidx) +
                            " does not match component " + std::to_string(sid));
        where[pidx] = {si, j};
        std::vector<std::pair<std::string, SortPtr>> tv;
        std::vector<std::string> sv;
        fol::scan_free_vars(pl, tv, sv);
        for (const auto& [n, s] : tv) group_vars.insert(n);
      }
      for (const auto& v : group_vars)
        if (!premise_vars_seen.insert(v).second)
          corrupt(step, "components share variable '" + v + "'");
      // Fresh binder names for the definition's variables and literals.
      for (const auto& sv : def.sort_vars) {
        std::string n = fresh_.fresh(sv, used_names);
        used_names.insert(n);
        u.sort_binders.push_back(n);
        u.def_to_binder.sort_map[sv] = fol::mk_sort_var(n);
      }
      for (const auto& [v, sort] : def.term_vars) {
        std::string n = fresh_.fresh(v, used_names);
        used_names.insert(n);
        u.var_binders.push_back(n);
        u.def_to_binder.term_map[v] = fol::mk_var(n, fol::apply(u.def_to_binder, sort));
      }
      for (size_t j = 0; j < def.literals.size(); ++j)
        u.lit_binders.push_back("m" + std::to_string(si + 1) + "_" + std::to_string(j + 1));
      unpacks.push_back(std::move(u));
    }
    if (where.size() != p.fresh.literals.size())
      corrupt(step, "partition does not cover the premise");

    // The premise instantiation: premise variable -> its component's binder.
    Substitution inst;
    for (const Unpack& u : unpacks) {
      for (const auto& [pv, dv] : u.bij.sf)
        inst.sort_map[pv] = fol::apply(u.def_to_binder, fol::mk_sort_var(dv));
      for (const auto& [pv, dv] : u.bij.tf) {
        SortPtr dsort;
        for (const auto& [n, s] : u.split->component.term_vars)
          if (n == dv) dsort = s;
        if (!dsort) corrupt(step, "component variable not in its binder list");
        inst.term_map[pv] = fol::mk_var(u.def_to_binder.term_map.at(dv)->name,
                                        fol::apply(u.def_to_binder, dsort));
      }
    }

    // Innermost body: the premise applied to binder variables and the
    // unpacked literal continuations.
    std::set<std::string> binder_vars, binder_sorts;
    for (const auto& u : unpacks) {
      binder_vars.insert(u.var_binders.begin(), u.var_binders.end());
      binder_sorts.insert(u.sort_binders.begin(), u.sort_binders.end());
    }
    std::vector<PiPtr> conts;
    for (size_t pidx = 0; pidx < p.fresh.literals.size(); ++pidx) {
      auto [si, j] = where.at((int)pidx);
      const Unpack& u = unpacks[si];
      Literal expected = fol::apply(inst, p.fresh.literals[pidx]);
      PiPtr cont = t_fvar(u.lit_binders[j]);
      Literal actual = fol::apply(u.def_to_binder, u.split->component.literals[j]);
      cont = repair_orientation(expected, actual, cont);
      conts.push_back(cont);
    }
    // apply_premise grounds through `inst`; scope covers the binder names.
    Ctx inner_ctx = c;
    inner_ctx.svars.insert(binder_vars.begin(), binder_vars.end());
    inner_ctx.ssorts.insert(binder_sorts.begin(), binder_sorts.end());
    PiPtr body = apply_premise(inner_ctx, p, inst, conts);

    // Wrap the unpacking lambdas inside out: s_k (... => s_1 (... => body)).
    for (size_t si = unpacks.size(); si-- > 0;) {
      const Unpack& u = unpacks[si];
      const Clause& def = u.split->component;
      PiPtr lam = body;
      for (size_t j = def.literals.size(); j-- > 0;) {
        Literal defl = fol::apply(u.def_to_binder, def.literals[j]);
        PiPtr ann = embed::prf(t_app(C(embed::k_not),
                                     g_deep_literal(defl, Scope{binder_vars, binder_sorts})));
        lam = lam_closing(u.lit_binders[j], u.lit_binders[j], ann, lam);
      }
      for (size_t j = def.term_vars.size(); j-- > 0;) {
        SortPtr s = fol::apply(u.def_to_binder, def.term_vars[j].second);
        lam = lam_closing(u.var_binders[j], u.var_binders[j],
                          t_app(C(embed::k_el), g_sort(s, Scope{binder_vars, binder_sorts})),
                          lam);
      }
      for (size_t j = def.sort_vars.size(); j-- > 0;)
        lam = lam_closing(u.sort_binders[j], u.sort_binders[j], C(embed::k_set), lam);
      body = t_app(t_fvar("s" + std::to_string(si + 1)), lam);
    }
    for (size_t si = unpacks.size(); si-- > 0;) {
      PiPtr sp = t_const(unpacks[si].split->prop);
      body = lam_closing("s" + std::to_string(si + 1), "s" + std::to_string(si + 1),
                         embed::shallow_of_prop(sp), body);
    }
    for (size_t i = c.K.size(); i-- > 0;)
      body = lam_closing(c.knames[i], c.knames[i], embed::condition_arg_type(c.K[i]), body);

    // Type: conditions, then one |sp_i| argument per partition entry.
    PiPtr type = embed::prf(C(embed::k_bot));
    for (size_t si = step.extras.partition.size(); si-- > 0;)
      type = t_arrow(embed::shallow_of_prop(t_const(unpacks[si].split->prop)), type);
    for (size_t i = c.K.size(); i-- > 0;)
      type = t_arrow(embed::condition_arg_type(c.K[i]), type);

    std::string name = embed::step_name(step.id);
    out_.doc.push_back(SignatureEntry{name, type, body, false});
    record(step, name, type, true);
  }

  void build_avatar_contradiction(const DerivationStep& step) {
    Ctx c = make_ctx(step);
    const StepInfo& pinfo = fol_premise(step, 0);
    if (!pinfo.clause.literals.empty())
      corrupt(step, "premise clause part is not empty");
    std::multiset<embed::Condition> a(pinfo.conds.begin(), pinfo.conds.end());
    std::multiset<embed::Condition> b(c.K.begin(), c.K.end());
    if (a != b) corrupt(step, "conditions differ from the premise's");

    PiPtr type = embed::avatar_clause_type(c.G, c.K);
    PiPtr body;
    if (pinfo.conds == c.K) {
      body = t_const(pinfo.cname);
    } else {
      body = t_const(pinfo.cname);
      for (const auto& k : pinfo.conds)
        body = t_app(body, t_fvar(c.kname_of.at({k.split_id, k.positive ? 1 : 0})));
      for (size_t i = c.K.size(); i-- > 0;)
        body = lam_closing(c.knames[i], c.knames[i], embed::condition_arg_type(c.K[i]),
                           body);
    }
    std::string name = embed::step_name(step.id);
    out_.doc.push_back(SignatureEntry{name, type, body, false});
    record(step, name, type, true);
  }

  void sorry_fallback(const DerivationStep& step) {
    Ctx c = make_ctx(step);
    PiPtr concl_type = embed::avatar_clause_type(c.G, c.K);
    std::vector<const StepInfo*> prems;
    for (uint64_t pid : step.premises) {
      auto it = steps_.find(pid);
      if (it == steps_.end()) corrupt(step, "premise not translated");
      if (it->second.cname.empty()) continue;  // avatar definitions carry no term
      prems.push_back(&it->second);
    }
    PiPtr axiom_type = concl_type;
    for (auto it = prems.rbegin(); it != prems.rend(); ++it)
      axiom_type = t_arrow((*it)->type, axiom_type);
    std::string ax = embed::sorry_name(step.id);
    comment(out_.doc.size(), "sorry: step " + std::to_string(step.id) + " rule " +
                                 step.rule_text, false);
    out_.doc.push_back(SignatureEntry{ax, axiom_type, std::nullopt, false});
    PiPtr body = t_const(ax);
    for (const auto* p : prems) body = t_app(body, t_const(p->cname));
    std::string name = embed::step_name(step.id);
    out_.doc.push_back(SignatureEntry{name, concl_type, body, false});
    record(step, name, concl_type);
    out_.sorries.push_back({step.id, step.rule_text});
  }
};

}  // namespace

Translation translate(const trace::TraceDocument& doc) { return Translator(doc).run(); }

}  // namespace lampi::translate
