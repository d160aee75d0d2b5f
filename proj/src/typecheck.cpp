#include <chrono>

#include "lampi/kernel.hpp"

namespace lampi::kernel {

namespace {

const PiPtr* ctx_lookup(const Context& ctx, const std::string& name) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

}  // namespace

std::string Checker::fresh_name() { return "#x" + std::to_string(fresh_++); }

PiPtr Checker::infer(const PiPtr& t, Context ctx) { return infer_in(ctx, t, ""); }

void Checker::check(const PiPtr& t, const PiPtr& type, Context ctx) {
  check_in(ctx, t, type, "");
}

PiPtr Checker::infer_in(Context& ctx, const PiPtr& t, std::string path) {
  switch (t->tag) {
    case Tag::Kind:
      throw TypeError("", "Kind has no type" + (path.empty() ? "" : " at " + path));
    case Tag::Type:
      return t_kind();
    case Tag::Const: {
      const SignatureEntry* e = sig_.find(t->name);
      if (!e)
        throw TypeError("", "unbound name '" + t->name + "'" +
                                (path.empty() ? "" : " at " + path));
      return e->type;
    }
    case Tag::FVar: {
      const PiPtr* ty = ctx_lookup(ctx, t->name);
      if (!ty)
        throw TypeError("", "unbound variable '" + t->name + "'" +
                                (path.empty() ? "" : " at " + path));
      return *ty;
    }
    case Tag::BVar:
      throw TypeError("", "dangling bound variable at " + path);
    case Tag::App: {
      PiPtr tf = whnf(sig_, infer_in(ctx, t->a, path + ".fun"), budget_);
      if (tf->tag != Tag::Pi)
        throw TypeError("", "applied a non-function at " + (path.empty() ? "top" : path) +
                                ": " + debug_string(t->a) + " : " + debug_string(tf));
      check_in(ctx, t->b, tf->a, path + ".arg");
      return instantiate(tf->b, t->b);
    }
    case Tag::Lam: {
      PiPtr ds = whnf(sig_, infer_in(ctx, t->a, path + ".annot"), budget_);
      if (ds->tag != Tag::Type)
        throw TypeError("", "binder annotation is not a type at " + path + ": " +
                                debug_string(t->a));
      std::string v = fresh_name();
      ctx.emplace_back(v, t->a);
      PiPtr body_ty = infer_in(ctx, instantiate(t->b, t_fvar(v)), path + ".body");
      ctx.pop_back();
      if (body_ty->tag == Tag::Kind)
        throw TypeError("", "abstraction body is a kind at " + path);
      return t_pi(t->name, t->a, close_fvar(body_ty, v));
    }
    case Tag::Pi: {
      PiPtr ds = whnf(sig_, infer_in(ctx, t->a, path + ".dom"), budget_);
      if (ds->tag != Tag::Type)
        throw TypeError("", "product domain is not a type at " + path + ": " +
                                debug_string(t->a));
      std::string v = fresh_name();
      ctx.emplace_back(v, t->a);
      PiPtr cs = whnf(sig_, infer_in(ctx, instantiate(t->b, t_fvar(v)), path + ".cod"),
                      budget_);
      ctx.pop_back();
      if (cs->tag != Tag::Type && cs->tag != Tag::Kind)
        throw TypeError("", "product codomain is not a type or kind at " + path);
      return cs;
    }
  }
  throw TypeError("", "unreachable");
}

void Checker::check_in(Context& ctx, const PiPtr& t, const PiPtr& type, std::string path) {
  if (t->tag == Tag::Lam) {
    PiPtr tw = whnf(sig_, type, budget_);
    if (tw->tag != Tag::Pi)
      throw TypeError("", "abstraction where " + debug_string(tw) + " expected at " +
                              (path.empty() ? "top" : path));
    if (!conv(sig_, t->a, tw->a, budget_))
      throw TypeError("", "binder annotation mismatch at " + (path.empty() ? "top" : path) +
                              ": " + debug_string(t->a) + " vs " + debug_string(tw->a));
    std::string v = fresh_name();
    ctx.emplace_back(v, t->a);
    check_in(ctx, instantiate(t->b, t_fvar(v)), instantiate(tw->b, t_fvar(v)),
             path + ".body");
    ctx.pop_back();
    return;
  }
  PiPtr actual = infer_in(ctx, t, path);
  if (!conv(sig_, actual, type, budget_))
    throw TypeError("", "type mismatch at " + (path.empty() ? "top" : path) + ": has " +
                            debug_string(actual) + ", expected " + debug_string(type));
}

namespace {

// Assigns a type to every context variable of a rule by walking the pattern
// against the head constant's type. Patterns are first-order, so a variable's
// type is the Pi domain at its position.
void elaborate_pattern(const Signature& sig, const PiPtr& pattern, const PiPtr& expected,
                       Context& ctx, Budget& budget) {
  if (pattern->tag == Tag::FVar) {
    const PiPtr* known = ctx_lookup(ctx, pattern->name);
    if (!known) {
      ctx.emplace_back(pattern->name, expected);
    } else if (!conv(sig, *known, expected, budget)) {
      throw TypeError("", "pattern variable '" + pattern->name + "' used at two types");
    }
    return;
  }
  Spine s = decompose(pattern);
  const SignatureEntry* e = s.head->tag == Tag::Const ? sig.find(s.head->name) : nullptr;
  if (!e) throw TypeError("", "pattern head is not a declared constant");
  PiPtr ty = e->type;
  for (const auto& arg : s.args) {
    ty = whnf(sig, ty, budget);
    if (ty->tag != Tag::Pi) throw TypeError("", "over-applied pattern head");
    elaborate_pattern(sig, arg, ty->a, ctx, budget);
    ty = instantiate(ty->b, arg);
  }
  if (!conv(sig, ty, expected, budget))
    throw TypeError("", "pattern argument type mismatch: " + debug_string(ty) + " vs " +
                            debug_string(expected));
}

}  // namespace

PiPtr check_rule(const Signature& sig, const RewriteRule& r, Budget& budget,
                 Context* elaborated) {
  Spine lhs = decompose(r.lhs);
  if (lhs.head->tag != Tag::Const) throw TypeError("", "rule head must be a constant");
  const SignatureEntry* e = sig.find(lhs.head->name);
  if (!e) throw TypeError("", "unbound rule head '" + lhs.head->name + "'");

  Context ctx;
  for (const auto& [v, ann] : r.ctx)
    if (ann) ctx.emplace_back(v, *ann);

  PiPtr ty = e->type;
  for (const auto& arg : lhs.args) {
    ty = whnf(sig, ty, budget);
    if (ty->tag != Tag::Pi) throw TypeError("", "over-applied rule head");
    elaborate_pattern(sig, arg, ty->a, ctx, budget);
    ty = instantiate(ty->b, arg);
  }

  Checker checker(sig, budget);
  checker.check(r.rhs, ty, ctx);
  if (elaborated) *elaborated = ctx;
  return ty;
}

CheckReport check_document(const Document& doc, const CheckOptions& opts, Signature* out) {
  auto start = std::chrono::steady_clock::now();
  CheckReport report;
  Signature sig;
  Budget budget{opts.budget, 0};
  auto finish = [&] {
    report.reductions = budget.used;
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
  };
  for (const auto& item : doc) {
    std::string name;
    try {
      if (std::holds_alternative<SignatureEntry>(item)) {
        const SignatureEntry& e = std::get<SignatureEntry>(item);
        name = e.name;
        Checker checker(sig, budget);
        PiPtr s = whnf(sig, checker.infer(e.type), budget);
        if (s->tag != Tag::Type && s->tag != Tag::Kind)
          throw TypeError(e.name, "declared type is not a type or kind");
        if (e.body) checker.check(*e.body, e.type);
        sig.add_entry(e);
        report.entries.push_back({e.name, true, ""});
      } else {
        const RewriteRule& r = std::get<RewriteRule>(item);
        Spine lhs = decompose(r.lhs);
        name = "rule " + (lhs.head->tag == Tag::Const ? lhs.head->name : "<bad>");
        check_rule(sig, r, budget);
        sig.add_rule(r);
        report.entries.push_back({name, true, ""});
      }
      ++report.checked;
    } catch (const BudgetExhausted& e) {
      report.ok = false;
      report.entries.push_back({name, false, e.what()});
      report.first_error = name + ": " + e.what();
      finish();
      throw BudgetExhausted(name, e.what());
    } catch (const KernelError& e) {
      report.ok = false;
      report.entries.push_back({name, false, e.what()});
      if (report.first_error.empty()) report.first_error = name + ": " + e.what();
      if (!opts.permissive) break;
      // Keep the name resolvable for later entries, but drop the untrusted
      // body and skip the rule.
      if (std::holds_alternative<SignatureEntry>(item)) {
        SignatureEntry e2 = std::get<SignatureEntry>(item);
        e2.body.reset();
        if (!sig.find(e2.name)) sig.add_entry(e2);
      }
    }
  }
  finish();
  if (out && report.ok) *out = sig;
  return report;
}

}  // namespace lampi::kernel
