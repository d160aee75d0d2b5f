#include <algorithm>

#include "lampi/kernel.hpp"

namespace lampi::kernel {

void Signature::add_entry(SignatureEntry e) {
  if (index_.count(e.name)) throw KernelError(e.name, "duplicate name");
  index_[e.name] = entries_.size();
  entries_.push_back(std::move(e));
}

const SignatureEntry* Signature::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

const std::vector<RewriteRule>* Signature::rules_for(const std::string& head) const {
  auto it = rules_.find(head);
  return it == rules_.end() ? nullptr : &it->second;
}

size_t Signature::rule_arity(const RewriteRule& r) {
  size_t n = 0;
  const PiTerm* t = r.lhs.get();
  while (t->tag == Tag::App) {
    ++n;
    t = t->a.get();
  }
  return n;
}

namespace {

// First-order patterns: free variables, constants, and applications of a
// constant head to patterns. This is all the emitted rule set ever uses.
bool is_first_order_pattern(const PiPtr& t) {
  Spine s = decompose(t);
  if (s.head->tag == Tag::FVar) return s.args.empty();
  if (s.head->tag != Tag::Const) return false;
  return std::all_of(s.args.begin(), s.args.end(), is_first_order_pattern);
}

// Syntactic unifiability of two first-order patterns, renamed apart by
// prefixing. Used only for the non-overlap assertion.
bool patterns_unify(const PiPtr& a, const PiPtr& b) {
  struct P {
    static PiPtr tag(const PiPtr& t, const char* pre) {
      switch (t->tag) {
        case Tag::FVar:
          return t_fvar(pre + t->name);
        case Tag::App:
          return t_app(tag(t->a, pre), tag(t->b, pre));
        default:
          return t;
      }
    }
  };
  std::map<std::string, PiPtr> bind;
  struct Solver {
    std::map<std::string, PiPtr>& bind;
    PiPtr walk(PiPtr t) {
      while (t->tag == Tag::FVar) {
        auto it = bind.find(t->name);
        if (it == bind.end()) break;
        t = it->second;
      }
      return t;
    }
    bool occurs(const std::string& v, PiPtr t) {
      t = walk(t);
      if (t->tag == Tag::FVar) return t->name == v;
      if (t->tag == Tag::App) return occurs(v, t->a) || occurs(v, t->b);
      return false;
    }
    bool go(PiPtr x, PiPtr y) {
      x = walk(x);
      y = walk(y);
      if (x->tag == Tag::FVar && y->tag == Tag::FVar && x->name == y->name) return true;
      if (x->tag == Tag::FVar) {
        if (occurs(x->name, y)) return false;
        bind[x->name] = y;
        return true;
      }
      if (y->tag == Tag::FVar) {
        if (occurs(y->name, x)) return false;
        bind[y->name] = x;
        return true;
      }
      if (x->tag == Tag::Const && y->tag == Tag::Const) return x->name == y->name;
      if (x->tag == Tag::App && y->tag == Tag::App) return go(x->a, y->a) && go(x->b, y->b);
      return false;
    }
  } solver{bind};
  return solver.go(P::tag(a, "l#"), P::tag(b, "r#"));
}

}  // namespace

void Signature::add_rule(RewriteRule r) {
  Spine lhs = decompose(r.lhs);
  if (lhs.head->tag != Tag::Const)
    throw KernelError("", "rewrite rule head must be a constant");
  const SignatureEntry* head = find(lhs.head->name);
  if (!head) throw KernelError(lhs.head->name, "rewrite rule head is not declared");
  if (head->body) throw KernelError(lhs.head->name, "rewrite rule head has a body");
  if (!head->definable)
    throw KernelError(lhs.head->name, "rewrite rule head was not declared definable");
  for (const auto& a : lhs.args)
    if (!is_first_order_pattern(a))
      throw KernelError(lhs.head->name, "rewrite pattern is not first-order");
  std::set<std::string> lhs_vars, rhs_vars, dummy;
  collect_names(r.lhs, dummy, lhs_vars);
  collect_names(r.rhs, dummy, rhs_vars);
  for (const auto& [v, ann] : r.ctx)
    if (!lhs_vars.count(v))
      throw KernelError(lhs.head->name, "context variable '" + v + "' missing from pattern");
  for (const auto& v : rhs_vars)
    if (!lhs_vars.count(v))
      throw KernelError(lhs.head->name, "right side uses unbound variable '" + v + "'");
  // Rules with a common head constant must have non-overlapping patterns, so
  // the rewrite relation stays deterministic without a confluence check.
  auto it = rules_.find(lhs.head->name);
  if (it != rules_.end()) {
    for (const auto& prev : it->second)
      if (patterns_unify(prev.lhs, r.lhs))
        throw KernelError(lhs.head->name, "overlapping rewrite rules");
  }
  rules_[lhs.head->name].push_back(std::move(r));
}

namespace {

// Matches one rule argument against a subject, reducing the subject as far as
// needed. On success fills `bind`; the subject slot is replaced by its
// reduced form so later rules do not repeat the work.
bool match_pattern(const Signature& sig, const PiPtr& pattern, PiPtr& subject,
                   std::map<std::string, PiPtr>& bind, Budget& budget) {
  if (pattern->tag == Tag::FVar) {
    auto it = bind.find(pattern->name);
    if (it != bind.end()) return conv(sig, it->second, subject, budget);
    bind[pattern->name] = subject;
    return true;
  }
  subject = whnf(sig, subject, budget);
  Spine ps = decompose(pattern);
  Spine ss = decompose(subject);
  if (ps.head->tag != Tag::Const || ss.head->tag != Tag::Const ||
      ps.head->name != ss.head->name || ps.args.size() != ss.args.size())
    return false;
  for (size_t i = 0; i < ps.args.size(); ++i)
    if (!match_pattern(sig, ps.args[i], ss.args[i], bind, budget)) return false;
  subject = recompose(ss.head, ss.args);
  return true;
}

}  // namespace

PiPtr whnf(const Signature& sig, PiPtr t, Budget& budget) {
  Spine s = decompose(std::move(t));
  size_t consumed = 0;  // prefix of s.args already folded into s.head
  for (;;) {
    if (s.head->tag == Tag::Lam && consumed < s.args.size()) {
      budget.step();
      s.head = instantiate(s.head->b, s.args[consumed]);
      ++consumed;
      continue;
    }
    if (s.head->tag == Tag::App) {
      // A substitution step may expose new applications; re-decompose.
      Spine inner = decompose(s.head);
      inner.args.insert(inner.args.end(), s.args.begin() + consumed, s.args.end());
      s = std::move(inner);
      consumed = 0;
      continue;
    }
    if (s.head->tag == Tag::Const) {
      const SignatureEntry* e = sig.find(s.head->name);
      if (e && e->body) {
        budget.step();
        s.head = *e->body;
        continue;
      }
      const std::vector<RewriteRule>* rules = sig.rules_for(s.head->name);
      if (rules) {
        bool fired = false;
        size_t avail = s.args.size() - consumed;
        for (const auto& r : *rules) {
          size_t arity = Signature::rule_arity(r);
          if (arity > avail) continue;
          Spine pat = decompose(r.lhs);
          std::map<std::string, PiPtr> bind;
          bool ok = true;
          for (size_t i = 0; i < arity && ok; ++i)
            ok = match_pattern(sig, pat.args[i], s.args[consumed + i], bind, budget);
          if (!ok) continue;
          budget.step();
          s.head = subst_fvars(r.rhs, bind);
          s.args.erase(s.args.begin() + consumed, s.args.begin() + consumed + arity);
          fired = true;
          break;
        }
        if (fired) continue;
      }
    }
    break;
  }
  return recompose(s.head, s.args, consumed);
}

namespace {

bool conv_whnf(const Signature& sig, const PiPtr& a, const PiPtr& b, Budget& budget,
               uint64_t& fresh);

bool conv_at(const Signature& sig, const PiPtr& a, const PiPtr& b, Budget& budget,
             uint64_t& fresh) {
  if (alpha_equal(a, b)) return true;
  return conv_whnf(sig, whnf(sig, a, budget), whnf(sig, b, budget), budget, fresh);
}

bool conv_whnf(const Signature& sig, const PiPtr& a, const PiPtr& b, Budget& budget,
               uint64_t& fresh) {
  if (alpha_equal(a, b)) return true;
  if (a->tag == Tag::Lam && b->tag == Tag::Lam) {
    if (!conv_at(sig, a->a, b->a, budget, fresh)) return false;
    PiPtr v = t_fvar("#c" + std::to_string(fresh++));
    return conv_at(sig, instantiate(a->b, v), instantiate(b->b, v), budget, fresh);
  }
  if (a->tag == Tag::Pi && b->tag == Tag::Pi) {
    if (!conv_at(sig, a->a, b->a, budget, fresh)) return false;
    PiPtr v = t_fvar("#c" + std::to_string(fresh++));
    return conv_at(sig, instantiate(a->b, v), instantiate(b->b, v), budget, fresh);
  }
  if (a->tag == Tag::App && b->tag == Tag::App) {
    Spine sa = decompose(a);
    Spine sb = decompose(b);
    // Heads are in weak head normal form: neutral constants or variables.
    if (sa.args.size() == sb.args.size() && alpha_equal(sa.head, sb.head)) {
      for (size_t i = 0; i < sa.args.size(); ++i)
        if (!conv_at(sig, sa.args[i], sb.args[i], budget, fresh)) return false;
      return true;
    }
    return false;
  }
  return false;
}

}  // namespace

bool conv(const Signature& sig, const PiPtr& a, const PiPtr& b, Budget& budget) {
  uint64_t fresh = 0;
  return conv_at(sig, a, b, budget, fresh);
}

}  // namespace lampi::kernel
