#include "lampi/pi_term.hpp"

namespace lampi::kernel {

const PiPtr& t_kind() {
  static const PiPtr k = std::make_shared<PiTerm>(PiTerm{Tag::Kind, "", 0, nullptr, nullptr});
  return k;
}

const PiPtr& t_type() {
  static const PiPtr t = std::make_shared<PiTerm>(PiTerm{Tag::Type, "", 0, nullptr, nullptr});
  return t;
}

PiPtr t_const(std::string name) {
  return std::make_shared<PiTerm>(PiTerm{Tag::Const, std::move(name), 0, nullptr, nullptr});
}

PiPtr t_fvar(std::string name) {
  return std::make_shared<PiTerm>(PiTerm{Tag::FVar, std::move(name), 0, nullptr, nullptr});
}

PiPtr t_bvar(int index, std::string hint) {
  return std::make_shared<PiTerm>(PiTerm{Tag::BVar, std::move(hint), index, nullptr, nullptr});
}

PiPtr t_app(PiPtr fun, PiPtr arg) {
  return std::make_shared<PiTerm>(
      PiTerm{Tag::App, "", 0, std::move(fun), std::move(arg)});
}

PiPtr t_app(PiPtr fun, const std::vector<PiPtr>& args) {
  PiPtr out = std::move(fun);
  for (const auto& a : args) out = t_app(out, a);
  return out;
}

PiPtr t_lam(std::string hint, PiPtr annot, PiPtr body) {
  return std::make_shared<PiTerm>(
      PiTerm{Tag::Lam, std::move(hint), 0, std::move(annot), std::move(body)});
}

PiPtr t_pi(std::string hint, PiPtr dom, PiPtr cod) {
  return std::make_shared<PiTerm>(
      PiTerm{Tag::Pi, std::move(hint), 0, std::move(dom), std::move(cod)});
}

PiPtr t_arrow(PiPtr dom, PiPtr cod) {
  return t_pi("", std::move(dom), shift_up(cod));
}

bool alpha_equal(const PiPtr& a, const PiPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case Tag::Kind:
    case Tag::Type:
      return true;
    case Tag::Const:
    case Tag::FVar:
      return a->name == b->name;
    case Tag::BVar:
      return a->index == b->index;
    case Tag::App:
    case Tag::Lam:
    case Tag::Pi:
      return alpha_equal(a->a, b->a) && alpha_equal(a->b, b->b);
  }
  return false;
}

namespace {

// Replaces BVar(depth) by repl (shifting indices above depth down by one).
// repl is locally closed, so it needs no shifting when moved under binders.
PiPtr inst_at(const PiPtr& t, int depth, const PiPtr& repl) {
  switch (t->tag) {
    case Tag::BVar:
      if (t->index == depth) return repl;
      if (t->index > depth) return t_bvar(t->index - 1, t->name);
      return t;
    case Tag::App: {
      PiPtr f = inst_at(t->a, depth, repl);
      PiPtr a = inst_at(t->b, depth, repl);
      return (f.get() == t->a.get() && a.get() == t->b.get()) ? t : t_app(f, a);
    }
    case Tag::Lam: {
      PiPtr an = inst_at(t->a, depth, repl);
      PiPtr bd = inst_at(t->b, depth + 1, repl);
      return (an.get() == t->a.get() && bd.get() == t->b.get()) ? t : t_lam(t->name, an, bd);
    }
    case Tag::Pi: {
      PiPtr dm = inst_at(t->a, depth, repl);
      PiPtr cd = inst_at(t->b, depth + 1, repl);
      return (dm.get() == t->a.get() && cd.get() == t->b.get()) ? t : t_pi(t->name, dm, cd);
    }
    default:
      return t;
  }
}

PiPtr close_at(const PiPtr& t, int depth, const std::string& name) {
  switch (t->tag) {
    case Tag::FVar:
      if (t->name == name) return t_bvar(depth, name);
      return t;
    case Tag::BVar:
      if (t->index >= depth) return t_bvar(t->index + 1, t->name);
      return t;
    case Tag::App: {
      PiPtr f = close_at(t->a, depth, name);
      PiPtr a = close_at(t->b, depth, name);
      return (f.get() == t->a.get() && a.get() == t->b.get()) ? t : t_app(f, a);
    }
    case Tag::Lam: {
      PiPtr an = close_at(t->a, depth, name);
      PiPtr bd = close_at(t->b, depth + 1, name);
      return (an.get() == t->a.get() && bd.get() == t->b.get()) ? t : t_lam(t->name, an, bd);
    }
    case Tag::Pi: {
      PiPtr dm = close_at(t->a, depth, name);
      PiPtr cd = close_at(t->b, depth + 1, name);
      return (dm.get() == t->a.get() && cd.get() == t->b.get()) ? t : t_pi(t->name, dm, cd);
    }
    default:
      return t;
  }
}

PiPtr shift_from(const PiPtr& t, int depth) {
  switch (t->tag) {
    case Tag::BVar:
      if (t->index >= depth) return t_bvar(t->index + 1, t->name);
      return t;
    case Tag::App: {
      PiPtr f = shift_from(t->a, depth);
      PiPtr a = shift_from(t->b, depth);
      return (f.get() == t->a.get() && a.get() == t->b.get()) ? t : t_app(f, a);
    }
    case Tag::Lam: {
      PiPtr an = shift_from(t->a, depth);
      PiPtr bd = shift_from(t->b, depth + 1);
      return (an.get() == t->a.get() && bd.get() == t->b.get()) ? t : t_lam(t->name, an, bd);
    }
    case Tag::Pi: {
      PiPtr dm = shift_from(t->a, depth);
      PiPtr cd = shift_from(t->b, depth + 1);
      return (dm.get() == t->a.get() && cd.get() == t->b.get()) ? t : t_pi(t->name, dm, cd);
    }
    default:
      return t;
  }
}

}  // namespace

PiPtr shift_up(const PiPtr& t) { return shift_from(t, 0); }

PiPtr instantiate(const PiPtr& body, const PiPtr& repl) { return inst_at(body, 0, repl); }

PiPtr close_fvar(const PiPtr& t, const std::string& name) { return close_at(t, 0, name); }

PiPtr lam_closing(const std::string& name, std::string hint, PiPtr annot, const PiPtr& body) {
  return t_lam(std::move(hint), std::move(annot), close_fvar(body, name));
}

PiPtr pi_closing(const std::string& name, std::string hint, PiPtr dom, const PiPtr& body) {
  return t_pi(std::move(hint), std::move(dom), close_fvar(body, name));
}

PiPtr subst_fvars(const PiPtr& t, const std::map<std::string, PiPtr>& map) {
  switch (t->tag) {
    case Tag::FVar: {
      auto it = map.find(t->name);
      return it == map.end() ? t : it->second;
    }
    case Tag::App: {
      PiPtr f = subst_fvars(t->a, map);
      PiPtr a = subst_fvars(t->b, map);
      return (f.get() == t->a.get() && a.get() == t->b.get()) ? t : t_app(f, a);
    }
    case Tag::Lam: {
      PiPtr an = subst_fvars(t->a, map);
      PiPtr bd = subst_fvars(t->b, map);
      return (an.get() == t->a.get() && bd.get() == t->b.get()) ? t : t_lam(t->name, an, bd);
    }
    case Tag::Pi: {
      PiPtr dm = subst_fvars(t->a, map);
      PiPtr cd = subst_fvars(t->b, map);
      return (dm.get() == t->a.get() && cd.get() == t->b.get()) ? t : t_pi(t->name, dm, cd);
    }
    default:
      return t;
  }
}

bool has_fvar(const PiPtr& t, const std::string& name) {
  switch (t->tag) {
    case Tag::FVar:
      return t->name == name;
    case Tag::App:
    case Tag::Lam:
    case Tag::Pi:
      return has_fvar(t->a, name) || has_fvar(t->b, name);
    default:
      return false;
  }
}

bool has_any_fvar(const PiPtr& t) {
  switch (t->tag) {
    case Tag::FVar:
      return true;
    case Tag::App:
    case Tag::Lam:
    case Tag::Pi:
      return has_any_fvar(t->a) || has_any_fvar(t->b);
    default:
      return false;
  }
}

namespace {
bool uses_bvar_at(const PiPtr& t, int depth) {
  switch (t->tag) {
    case Tag::BVar:
      return t->index == depth;
    case Tag::App:
      return uses_bvar_at(t->a, depth) || uses_bvar_at(t->b, depth);
    case Tag::Lam:
    case Tag::Pi:
      return uses_bvar_at(t->a, depth) || uses_bvar_at(t->b, depth + 1);
    default:
      return false;
  }
}
}  // namespace

bool uses_bvar0(const PiPtr& body) { return uses_bvar_at(body, 0); }

void collect_names(const PiPtr& t, std::set<std::string>& consts, std::set<std::string>& fvars) {
  switch (t->tag) {
    case Tag::Const:
      consts.insert(t->name);
      return;
    case Tag::FVar:
      fvars.insert(t->name);
      return;
    case Tag::App:
    case Tag::Lam:
    case Tag::Pi:
      collect_names(t->a, consts, fvars);
      collect_names(t->b, consts, fvars);
      return;
    default:
      return;
  }
}

Spine decompose(PiPtr t) {
  Spine s;
  std::vector<PiPtr> rev;
  while (t->tag == Tag::App) {
    rev.push_back(t->b);
    t = t->a;
  }
  s.head = std::move(t);
  s.args.assign(rev.rbegin(), rev.rend());
  return s;
}

PiPtr recompose(PiPtr head, const std::vector<PiPtr>& args, size_t from) {
  for (size_t i = from; i < args.size(); ++i) head = t_app(std::move(head), args[i]);
  return head;
}

std::string debug_string(const PiPtr& t) {
  switch (t->tag) {
    case Tag::Kind:
      return "Kind";
    case Tag::Type:
      return "Type";
    case Tag::Const:
    case Tag::FVar:
      return t->name;
    case Tag::BVar:
      return t->name.empty() ? "#" + std::to_string(t->index) : t->name;
    case Tag::App:
      return "(" + debug_string(t->a) + " " + debug_string(t->b) + ")";
    case Tag::Lam:
      return "(" + (t->name.empty() ? std::string("_") : t->name) + " : " +
             debug_string(t->a) + " => " + debug_string(t->b) + ")";
    case Tag::Pi:
      return "(" + (t->name.empty() ? std::string("_") : t->name) + " : " +
             debug_string(t->a) + " -> " + debug_string(t->b) + ")";
  }
  return "?";
}

}  // namespace lampi::kernel
