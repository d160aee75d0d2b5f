#include "lampi/dk.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "lampi/errors.hpp"

namespace lampi::io {

using namespace lampi::kernel;

// ---------------------------------------------------------------------------
// Printing

namespace {

const std::set<std::string>& dk_keywords() {
  static const std::set<std::string> kw = {"def", "thm", "Type"};
  return kw;
}

struct TermPrinter {
  std::set<std::string> taken;        // constants, free vars, keywords
  std::vector<std::string> binders;   // innermost last

  explicit TermPrinter(const PiPtr& t) {
    std::set<std::string> consts, fvars;
    collect_names(t, consts, fvars);
    taken = dk_keywords();
    taken.insert(consts.begin(), consts.end());
    taken.insert(fvars.begin(), fvars.end());
  }

  std::string pick_name(const std::string& hint) {
    std::string base = hint.empty() ? "x" : hint;
    auto clash = [&](const std::string& n) {
      if (taken.count(n)) return true;
      return std::find(binders.begin(), binders.end(), n) != binders.end();
    };
    if (!clash(base)) return base;
    for (int i = 0;; ++i) {
      std::string cand = base + std::to_string(i);
      if (!clash(cand)) return cand;
    }
  }

  // level 0: binders and arrows; 1: application; 2: atom
  std::string render(const PiPtr& t, int level) {
    switch (t->tag) {
      case Tag::Kind:
        return "Kind";  // never emitted by well-formed documents
      case Tag::Type:
        return "Type";
      case Tag::Const:
      case Tag::FVar:
        return t->name;
      case Tag::BVar: {
        size_t i = binders.size() - 1 - (size_t)t->index;
        return binders[i];
      }
      case Tag::App: {
        std::string s = render(t->a, 1) + " " + render(t->b, 2);
        return level >= 2 ? "(" + s + ")" : s;
      }
      case Tag::Lam: {
        std::string n = pick_name(t->name);
        std::string dom = render(t->a, 1);
        binders.push_back(n);
        std::string body = render(t->b, 0);
        binders.pop_back();
        std::string s = n + " : " + dom + " => " + body;
        return level >= 1 ? "(" + s + ")" : s;
      }
      case Tag::Pi: {
        std::string s;
        if (uses_bvar0(t->b)) {
          std::string n = pick_name(t->name);
          std::string dom = render(t->a, 1);
          binders.push_back(n);
          s = n + " : " + dom + " -> " + render(t->b, 0);
          binders.pop_back();
        } else {
          std::string dom = render(t->a, 1);
          binders.push_back("");
          s = dom + " -> " + render(t->b, 0);
          binders.pop_back();
        }
        return level >= 1 ? "(" + s + ")" : s;
      }
    }
    return "?";
  }

  // Multi-line rendering for oversized terms: binder chains get one line per
  // binder, applications one line per argument, two-space indentation.
  void render_block(const PiPtr& t, int level, size_t indent, size_t width,
                    std::vector<std::string>& lines, const std::string& suffix) {
    std::string pad(indent, ' ');
    std::string inline_form = render(t, level);
    if (pad.size() + inline_form.size() + suffix.size() <= width) {
      lines.push_back(pad + inline_form + suffix);
      return;
    }
    switch (t->tag) {
      case Tag::Lam: {
        // Binder chains stay at one indent level; only the opening paren of
        // a nested lambda pushes its body right.
        std::string n = pick_name(t->name);
        bool paren = level >= 1;
        lines.push_back(pad + (paren ? "(" : "") + n + " : " + render(t->a, 1) + " =>");
        binders.push_back(n);
        render_block(t->b, 0, indent + (paren ? 2 : 0), width, lines,
                     paren ? ")" + suffix : suffix);
        binders.pop_back();
        return;
      }
      case Tag::Pi: {
        bool dep = uses_bvar0(t->b);
        std::string n = dep ? pick_name(t->name) : "";
        std::string head = dep ? n + " : " + render(t->a, 1) + " ->" : render(t->a, 1) + " ->";
        bool paren = level >= 1;
        lines.push_back(pad + (paren ? "(" : "") + head);
        binders.push_back(n);
        render_block(t->b, 0, indent + (paren ? 2 : 0), width, lines,
                     paren ? ")" + suffix : suffix);
        binders.pop_back();
        return;
      }
      case Tag::App: {
        Spine s = decompose(t);
        std::string head = render(s.head, 2);
        lines.push_back(pad + (level >= 2 ? "(" : "") + head);
        for (size_t i = 0; i < s.args.size(); ++i) {
          bool last = i + 1 == s.args.size();
          render_block(s.args[i], 2, indent + 2, width, lines,
                       last ? (level >= 2 ? ")" + suffix : suffix) : "");
        }
        return;
      }
      default:
        lines.push_back(pad + inline_form + suffix);
        return;
    }
  }
};

std::string render_entry(const SignatureEntry& e, size_t width) {
  TermPrinter tp_type(e.type);
  std::string head = (e.definable || e.body ? "def " : "") + e.name + " : ";
  std::string type_inline = tp_type.render(e.type, 0);
  if (!e.body) {
    std::string one = head + type_inline + ".";
    if (one.size() <= width) return one + "\n";
    std::vector<std::string> lines;
    lines.push_back(head.substr(0, head.size() - 3) + " :");
    TermPrinter tp2(e.type);
    tp2.render_block(e.type, 0, 2, width, lines, ".");
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
  }
  TermPrinter tp_body(*e.body);
  std::string body_inline = tp_body.render(*e.body, 0);
  std::string one = head + type_inline + " := " + body_inline + ".";
  if (one.size() <= width) return one + "\n";
  std::vector<std::string> lines;
  if ((head + type_inline).size() <= width) {
    lines.push_back(head + type_inline);
  } else {
    lines.push_back(head.substr(0, head.size() - 3) + " :");
    TermPrinter tp2(e.type);
    tp2.render_block(e.type, 0, 2, width, lines, "");
  }
  lines.push_back(":=");
  TermPrinter tp3(*e.body);
  tp3.render_block(*e.body, 0, 2, width, lines, ".");
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::string render_rule(const RewriteRule& r, size_t width) {
  std::string ctx = "[";
  for (size_t i = 0; i < r.ctx.size(); ++i) {
    if (i) ctx += ", ";
    ctx += r.ctx[i].first;
  }
  ctx += "] ";
  TermPrinter tpl(r.lhs);
  TermPrinter tpr(r.rhs);
  std::string one = ctx + tpl.render(r.lhs, 0) + " --> " + tpr.render(r.rhs, 0) + ".";
  if (one.size() <= width) return one + "\n";
  std::vector<std::string> lines;
  lines.push_back(ctx + tpl.render(r.lhs, 0) + " -->");
  tpr.render_block(r.rhs, 0, 2, width, lines, ".");
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace

std::string print_term_dk(const PiPtr& t) {
  TermPrinter tp(t);
  return tp.render(t, 0);
}

std::string print_dk(const Document& doc, const DkPrintOptions& opts) {
  std::string out;
  size_t ci = 0;
  std::vector<DocComment> comments = opts.comments;
  std::stable_sort(comments.begin(), comments.end(),
                   [](const DocComment& a, const DocComment& b) { return a.index < b.index; });
  for (size_t i = 0; i <= doc.size(); ++i) {
    while (ci < comments.size() && comments[ci].index == i) {
      if (comments[ci].blank_before && !out.empty()) out += "\n";
      out += "(; " + comments[ci].text + " ;)\n";
      ++ci;
    }
    if (i == doc.size()) break;
    if (std::holds_alternative<SignatureEntry>(doc[i]))
      out += render_entry(std::get<SignatureEntry>(doc[i]), opts.width);
    else
      out += render_rule(std::get<RewriteRule>(doc[i]), opts.width);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing the emitted subset

namespace {

enum class DTok {
  Ident, LParen, RParen, LBrack, RBrack, Comma, Colon, Dot,
  ColonEq, Arrow, FatArrow, LongArrow, End,
};

struct DToken {
  DTok kind;
  std::string text;
  int line = 1, col = 1;
};

std::vector<DToken> dk_lex(const std::string& text) {
  std::vector<DToken> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto at = [&](size_t k) { return i + k < text.size() ? text[i + k] : '\0'; };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') { ++line; col = 1; ++i; continue; }
    if (c == ' ' || c == '\t' || c == '\r') { ++col; ++i; continue; }
    if (c == '(' && at(1) == ';') {
      // comment: skip to ';)'
      int l0 = line, c0 = col;
      i += 2; col += 2;
      for (;;) {
        if (i >= text.size()) throw ParseError(l0, c0, "unterminated comment");
        if (text[i] == ';' && at(1) == ')') { i += 2; col += 2; break; }
        if (text[i] == '\n') { ++line; col = 1; ++i; }
        else { ++col; ++i; }
      }
      continue;
    }
    int tcol = col;
    if (std::isalnum((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < text.size() && (std::isalnum((unsigned char)text[j]) || text[j] == '_' ||
                                 text[j] == '\''))
        ++j;
      out.push_back({DTok::Ident, text.substr(i, j - i), line, tcol});
      col += (int)(j - i);
      i = j;
      continue;
    }
    auto push2 = [&](DTok k, const char* s, int n) {
      out.push_back({k, s, line, tcol});
      i += n; col += n;
    };
    if (c == '-' && at(1) == '-' && at(2) == '>') { push2(DTok::LongArrow, "-->", 3); continue; }
    if (c == '-' && at(1) == '>') { push2(DTok::Arrow, "->", 2); continue; }
    if (c == '=' && at(1) == '>') { push2(DTok::FatArrow, "=>", 2); continue; }
    if (c == ':' && at(1) == '=') { push2(DTok::ColonEq, ":=", 2); continue; }
    switch (c) {
      case '(': push2(DTok::LParen, "(", 1); break;
      case ')': push2(DTok::RParen, ")", 1); break;
      case '[': push2(DTok::LBrack, "[", 1); break;
      case ']': push2(DTok::RBrack, "]", 1); break;
      case ',': push2(DTok::Comma, ",", 1); break;
      case ':': push2(DTok::Colon, ":", 1); break;
      case '.': push2(DTok::Dot, ".", 1); break;
      default:
        throw ParseError(line, tcol, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({DTok::End, "", line, col});
  return out;
}

struct DkParser {
  const std::vector<DToken>& toks;
  size_t pos = 0;
  Document doc;
  std::vector<std::string> binders;
  std::set<std::string> rule_vars;

  const DToken& peek(int k = 0) const { return toks[std::min(pos + k, toks.size() - 1)]; }
  const DToken& next() { return toks[std::min(pos++, toks.size() - 1)]; }

  [[noreturn]] void fail(const DToken& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
  }

  const DToken& expect(DTok k, const char* what) {
    const DToken& t = next();
    if (t.kind != k) fail(t, std::string("expected ") + what + ", got '" + t.text + "'");
    return t;
  }

  PiPtr resolve(const std::string& name) {
    if (name == "Type") return t_type();
    for (size_t i = binders.size(); i-- > 0;)
      if (binders[i] == name) return t_bvar((int)(binders.size() - 1 - i), name);
    if (rule_vars.count(name)) return t_fvar(name);
    return t_const(name);
  }

  PiPtr parse_atom() {
    const DToken& t = next();
    if (t.kind == DTok::Ident) return resolve(t.text);
    if (t.kind == DTok::LParen) {
      PiPtr inner = parse_term();
      expect(DTok::RParen, "')'");
      return inner;
    }
    fail(t, "expected a term");
  }

  bool atom_start() const {
    return peek().kind == DTok::Ident || peek().kind == DTok::LParen;
  }

  PiPtr parse_app() {
    PiPtr out = parse_atom();
    while (atom_start()) {
      // `x : ...` after an application means the application ended and a
      // binder follows; that only happens behind '(' handled by caller.
      if (peek().kind == DTok::Ident && peek(1).kind == DTok::Colon) break;
      out = t_app(out, parse_atom());
    }
    return out;
  }

  PiPtr parse_term() {
    if (peek().kind == DTok::Ident && peek(1).kind == DTok::Colon) {
      std::string name = next().text;
      next();  // :
      PiPtr dom = parse_app();
      const DToken& arrow = next();
      binders.push_back(name);
      PiPtr body = parse_term();
      binders.pop_back();
      if (arrow.kind == DTok::Arrow) return t_pi(name, dom, body);
      if (arrow.kind == DTok::FatArrow) return t_lam(name, dom, body);
      fail(arrow, "expected '->' or '=>' after binder");
    }
    PiPtr t = parse_app();
    if (peek().kind == DTok::Arrow) {
      next();
      binders.push_back("");
      PiPtr cod = parse_term();
      binders.pop_back();
      return t_pi("", t, cod);
    }
    return t;
  }

  void parse_rule() {
    expect(DTok::LBrack, "'['");
    RewriteRule r;
    if (peek().kind != DTok::RBrack) {
      for (;;) {
        r.ctx.emplace_back(expect(DTok::Ident, "rule variable").text, std::nullopt);
        if (peek().kind == DTok::Comma) { next(); continue; }
        break;
      }
    }
    expect(DTok::RBrack, "']'");
    rule_vars.clear();
    for (const auto& [v, ann] : r.ctx) rule_vars.insert(v);
    r.lhs = parse_term();
    expect(DTok::LongArrow, "'-->'");
    r.rhs = parse_term();
    expect(DTok::Dot, "'.'");
    rule_vars.clear();
    doc.push_back(std::move(r));
  }

  void parse_entry(bool definable) {
    SignatureEntry e;
    e.name = expect(DTok::Ident, "name").text;
    expect(DTok::Colon, "':'");
    e.type = parse_term();
    if (peek().kind == DTok::ColonEq) {
      next();
      e.body = parse_term();
      e.definable = false;
    } else {
      e.definable = definable;
    }
    if (definable && e.body)
      e.definable = false;  // `def x : T := b.` is a plain definition
    expect(DTok::Dot, "'.'");
    doc.push_back(std::move(e));
  }

  void run() {
    while (peek().kind != DTok::End) {
      const DToken& t = peek();
      if (t.kind == DTok::LBrack) {
        parse_rule();
      } else if (t.kind == DTok::Ident && t.text == "def") {
        next();
        parse_entry(true);
      } else if (t.kind == DTok::Ident) {
        parse_entry(false);
      } else {
        fail(t, "expected an entry or rule");
      }
    }
  }
};

}  // namespace

kernel::Document parse_dk(const std::string& text) {
  std::vector<DToken> toks = dk_lex(text);
  DkParser p{toks, 0, {}, {}, {}};
  p.run();
  return std::move(p.doc);
}

}  // namespace lampi::io
