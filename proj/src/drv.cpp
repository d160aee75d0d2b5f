#include "lampi/drv.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "lampi/errors.hpp"

namespace lampi::io {

using fol::Clause;
using fol::Literal;
using fol::SortPtr;
using fol::TermPtr;
using trace::DerivationStep;
using trace::Logic;
using trace::Rule;
using trace::TraceDocument;

namespace {

enum class Tok {
  Ident, Nat, LParen, RParen, LBrack, RBrack, LBrace, RBrace,
  Comma, Semi, Colon, Bar, Tilde, Eq, Neq, Minus, DotSep, DotEnd, End,
};

struct Token {
  Tok kind;
  std::string text;
  uint64_t nat = 0;
  int line = 1, col = 1;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') { ++line; col = 1; ++i; continue; }
    if (c == ' ' || c == '\t' || c == '\r') { ++col; ++i; continue; }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    int tcol = col;
    auto single = [&](Tok k, const char* s) {
      out.push_back({k, s, 0, line, tcol});
      ++i; ++col;
    };
    if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
      std::string s = text.substr(i, j - i);
      out.push_back({Tok::Nat, s, std::stoull(s), line, tcol});
      col += (int)(j - i);
      i = j;
      continue;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum((unsigned char)text[j]) || text[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, text.substr(i, j - i), 0, line, tcol});
      col += (int)(j - i);
      i = j;
      continue;
    }
    switch (c) {
      case '(': single(Tok::LParen, "("); break;
      case ')': single(Tok::RParen, ")"); break;
      case '[': single(Tok::LBrack, "["); break;
      case ']': single(Tok::RBrack, "]"); break;
      case '{': single(Tok::LBrace, "{"); break;
      case '}': single(Tok::RBrace, "}"); break;
      case ',': single(Tok::Comma, ","); break;
      case ';': single(Tok::Semi, ";"); break;
      case ':': single(Tok::Colon, ":"); break;
      case '|': single(Tok::Bar, "|"); break;
      case '~': single(Tok::Tilde, "~"); break;
      case '-': single(Tok::Minus, "-"); break;
      case '=': single(Tok::Eq, "="); break;
      case '!':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          out.push_back({Tok::Neq, "!=", 0, line, tcol});
          i += 2; col += 2;
        } else {
          throw ParseError(line, tcol, "stray '!'");
        }
        break;
      case '.':
        // A '.' directly followed by a digit separates position components;
        // otherwise it terminates a statement.
        if (i + 1 < text.size() && std::isdigit((unsigned char)text[i + 1])) {
          single(Tok::DotSep, ".");
        } else {
          single(Tok::DotEnd, ".");
        }
        break;
      default:
        throw ParseError(line, tcol, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", 0, line, col});
  return out;
}

bool upper_start(const std::string& s) { return !s.empty() && std::isupper((unsigned char)s[0]); }

// Raw term tree; sorts are resolved in a second pass once the expected sort
// at each position is known.
struct RawTerm {
  bool is_var;
  std::string name;
  SortPtr annot;  // optional variable annotation
  std::vector<SortPtr> sort_args;
  std::vector<RawTerm> args;
  int line, col;
};

struct RawLiteral {
  bool positive = true;
  bool is_eq = false;
  std::string pred;
  std::vector<SortPtr> sort_args;
  std::vector<RawTerm> args;  // predicate args, or [lhs, rhs] for equations
  int line, col;
};

struct Parser {
  const std::vector<Token>& toks;
  size_t pos = 0;
  TraceDocument doc;
  std::set<uint64_t> step_ids;
  std::set<uint64_t> defined_splits;

  const Token& peek(int k = 0) const { return toks[std::min(pos + k, toks.size() - 1)]; }
  const Token& next() { return toks[std::min(pos++, toks.size() - 1)]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
  }

  const Token& expect(Tok k, const char* what) {
    const Token& t = next();
    if (t.kind != k) fail(t, std::string("expected ") + what + ", got '" + t.text + "'");
    return t;
  }

  uint64_t expect_nat(const char* what) { return expect(Tok::Nat, what).nat; }

  std::string expect_ident(const char* what) { return expect(Tok::Ident, what).text; }

  void run() {
    parse_header();
    for (;;) {
      const Token& t = peek();
      if (t.kind == Tok::End) break;
      if (t.kind != Tok::Ident) fail(t, "expected a declaration or step");
      if (t.text == "sort") parse_sort_decl();
      else if (t.text == "fun") parse_symbol_decl(false);
      else if (t.text == "pred") parse_symbol_decl(true);
      else if (t.text == "step") parse_step();
      else fail(t, "unknown statement '" + t.text + "'");
    }
  }

  void parse_header() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || t.text != "drv") fail(t, "expected 'drv' header");
    next();
    doc.version = (int)expect_nat("format version");
    if (doc.version != 1) fail(peek(), "unsupported format version");
    std::string logic = expect_ident("logic");
    if (logic == "cnf") doc.logic = Logic::Cnf;
    else if (logic == "many_sorted") doc.logic = Logic::ManySorted;
    else if (logic == "polymorphic") doc.logic = Logic::Polymorphic;
    else fail(peek(), "unknown logic '" + logic + "'");
    expect(Tok::DotEnd, "'.'");
  }

  void parse_sort_decl() {
    next();  // sort
    const Token& name = expect(Tok::Ident, "sort name");
    uint64_t arity = expect_nat("arity");
    expect(Tok::DotEnd, "'.'");
    try {
      doc.symbols.declare_sort(name.text, (int)arity);
    } catch (const SortError& e) {
      fail(name, e.what());
    }
  }

  // Sort expression. Declared constructors win; an undeclared upper-case
  // name is a sort variable (checked against `params` inside declarations).
  SortPtr parse_sortexpr(const std::set<std::string>* params) {
    const Token& t = next();
    if (t.kind == Tok::Ident) {
      if (doc.symbols.has_sort(t.text)) {
        if (doc.symbols.sort_arity(t.text) != 0)
          fail(t, "sort constructor '" + t.text + "' expects arguments");
        return fol::mk_sort(t.text);
      }
      if (upper_start(t.text)) {
        if (params && !params->count(t.text))
          fail(t, "unknown sort variable '" + t.text + "'");
        return fol::mk_sort_var(t.text);
      }
      fail(t, "unknown sort constructor '" + t.text + "'");
    }
    if (t.kind == Tok::LParen) {
      const Token& head = expect(Tok::Ident, "sort constructor");
      if (!doc.symbols.has_sort(head.text))
        fail(head, "unknown sort constructor '" + head.text + "'");
      std::vector<SortPtr> args;
      while (peek().kind != Tok::RParen) args.push_back(parse_sortexpr(params));
      next();  // )
      if ((int)args.size() != doc.symbols.sort_arity(head.text))
        fail(head, "sort constructor '" + head.text + "' arity mismatch");
      return fol::mk_sort(head.text, std::move(args));
    }
    fail(t, "expected a sort expression");
  }

  void parse_symbol_decl(bool is_pred) {
    next();  // fun | pred
    const Token& name = expect(Tok::Ident, "symbol name");
    std::vector<std::string> params;
    std::set<std::string> param_set;
    if (peek().kind == Tok::LBrack) {
      next();
      for (;;) {
        const Token& p = expect(Tok::Ident, "sort parameter");
        if (!upper_start(p.text)) fail(p, "sort parameters start upper-case");
        if (!param_set.insert(p.text).second) fail(p, "duplicate sort parameter");
        params.push_back(p.text);
        if (peek().kind == Tok::Comma) { next(); continue; }
        break;
      }
      expect(Tok::RBrack, "']'");
    }
    expect(Tok::LParen, "'('");
    std::vector<SortPtr> arg_sorts;
    while (peek().kind != Tok::RParen) arg_sorts.push_back(parse_sortexpr(&param_set));
    next();  // )
    try {
      if (is_pred) {
        doc.symbols.declare_pred(name.text, params, arg_sorts);
      } else {
        SortPtr result = parse_sortexpr(&param_set);
        doc.symbols.declare_fun(name.text, params, arg_sorts, result);
      }
    } catch (const SortError& e) {
      fail(name, e.what());
    }
    expect(Tok::DotEnd, "'.'");
  }

  RawTerm parse_raw_term() {
    const Token& t = expect(Tok::Ident, "term");
    RawTerm out;
    out.name = t.text;
    out.line = t.line;
    out.col = t.col;
    // Declared symbols win; an undeclared upper-case name is a variable.
    if (!doc.symbols.find(t.text)) {
      if (!upper_start(t.text)) fail(t, "unknown symbol '" + t.text + "'");
      out.is_var = true;
      if (peek().kind == Tok::Colon) {
        next();
        out.annot = parse_sortexpr(nullptr);
      }
      return out;
    }
    out.is_var = false;
    if (peek().kind == Tok::LBrack) {
      next();
      for (;;) {
        out.sort_args.push_back(parse_sortexpr(nullptr));
        if (peek().kind == Tok::Comma) { next(); continue; }
        break;
      }
      expect(Tok::RBrack, "']'");
    }
    if (peek().kind == Tok::LParen) {
      next();
      for (;;) {
        out.args.push_back(parse_raw_term());
        if (peek().kind == Tok::Comma) { next(); continue; }
        break;
      }
      expect(Tok::RParen, "')'");
    }
    return out;
  }

  RawLiteral parse_raw_literal() {
    RawLiteral out;
    const Token& t = peek();
    out.line = t.line;
    out.col = t.col;
    if (t.kind == Tok::Eq || t.kind == Tok::Neq) {
      next();
      out.is_eq = true;
      out.positive = t.kind == Tok::Eq;
      out.args.push_back(parse_raw_term());
      out.args.push_back(parse_raw_term());
      return out;
    }
    if (t.kind == Tok::Tilde) {
      next();
      out.positive = false;
    }
    const Token& name = expect(Tok::Ident, "predicate");
    const fol::SymbolTable::Symbol* sym = doc.symbols.find(name.text);
    if (!sym || !sym->is_pred) fail(name, "unknown predicate '" + name.text + "'");
    out.pred = name.text;
    if (peek().kind == Tok::LBrack) {
      next();
      for (;;) {
        out.sort_args.push_back(parse_sortexpr(nullptr));
        if (peek().kind == Tok::Comma) { next(); continue; }
        break;
      }
      expect(Tok::RBrack, "']'");
    }
    if (peek().kind == Tok::LParen) {
      next();
      for (;;) {
        out.args.push_back(parse_raw_term());
        if (peek().kind == Tok::Comma) { next(); continue; }
        break;
      }
      expect(Tok::RParen, "')'");
    }
    return out;
  }

  // --- sort elaboration ------------------------------------------------

  SortPtr instantiate(const SortPtr& tmpl, const std::vector<std::string>& params,
                      const std::vector<SortPtr>& actuals) {
    if (tmpl->is_var) {
      for (size_t i = 0; i < params.size(); ++i)
        if (params[i] == tmpl->name) return actuals[i];
      return tmpl;
    }
    if (tmpl->args.empty()) return tmpl;
    std::vector<SortPtr> args;
    for (const auto& a : tmpl->args) args.push_back(instantiate(a, params, actuals));
    return fol::mk_sort(tmpl->name, std::move(args));
  }

  // Resolves a raw term against an optional expected sort, recording and
  // checking variable sorts in `var_sorts`.
  TermPtr elaborate(const RawTerm& raw, const SortPtr& expected,
                    std::map<std::string, SortPtr>& var_sorts) {
    if (raw.is_var) {
      SortPtr sort = raw.annot;
      auto it = var_sorts.find(raw.name);
      if (it != var_sorts.end()) {
        if (sort && !fol::equal(sort, it->second))
          throw ParseError(raw.line, raw.col,
                           "variable '" + raw.name + "' annotated at two sorts");
        sort = it->second;
      }
      if (!sort && expected) sort = expected;
      if (!sort && doc.logic == Logic::Cnf) sort = fol::sort_iota();
      if (!sort)
        throw ParseError(raw.line, raw.col,
                         "cannot infer the sort of variable '" + raw.name +
                             "'; annotate it as '" + raw.name + ":<sort>'");
      if (expected && !fol::equal(sort, expected))
        throw ParseError(raw.line, raw.col,
                         "variable '" + raw.name + "' has sort " + fol::to_string(sort) +
                             ", expected " + fol::to_string(expected));
      var_sorts[raw.name] = sort;
      return fol::mk_var(raw.name, sort);
    }
    const fol::SymbolTable::Symbol* sym = doc.symbols.find(raw.name);
    if (!sym) throw ParseError(raw.line, raw.col, "unknown symbol '" + raw.name + "'");
    if (sym->is_pred)
      throw ParseError(raw.line, raw.col, "'" + raw.name + "' is a predicate");
    if (raw.sort_args.size() != sym->sort_params.size())
      throw ParseError(raw.line, raw.col,
                       "'" + raw.name + "' expects " +
                           std::to_string(sym->sort_params.size()) + " sort arguments");
    if (raw.args.size() != sym->arg_sorts.size())
      throw ParseError(raw.line, raw.col,
                       "'" + raw.name + "' expects " + std::to_string(sym->arg_sorts.size()) +
                           " arguments, got " + std::to_string(raw.args.size()));
    std::vector<TermPtr> args;
    for (size_t i = 0; i < raw.args.size(); ++i) {
      SortPtr want = instantiate(sym->arg_sorts[i], sym->sort_params, raw.sort_args);
      args.push_back(elaborate(raw.args[i], want, var_sorts));
    }
    SortPtr result = instantiate(sym->result, sym->sort_params, raw.sort_args);
    if (expected && !fol::equal(result, expected))
      throw ParseError(raw.line, raw.col,
                       "'" + raw.name + "' has sort " + fol::to_string(result) +
                           ", expected " + fol::to_string(expected));
    return fol::mk_app_raw(raw.name, raw.sort_args, std::move(args), result);
  }

  Literal elaborate_literal(const RawLiteral& raw, std::map<std::string, SortPtr>& var_sorts) {
    if (raw.is_eq) {
      TermPtr lhs, rhs;
      // Try left-to-right; an unannotated bare variable on the left may need
      // the right side's sort first.
      try {
        lhs = elaborate(raw.args[0], nullptr, var_sorts);
        rhs = elaborate(raw.args[1], lhs->sort, var_sorts);
      } catch (const ParseError&) {
        rhs = elaborate(raw.args[1], nullptr, var_sorts);
        lhs = elaborate(raw.args[0], rhs->sort, var_sorts);
      }
      Literal l = fol::mk_eq_literal(raw.positive, lhs, rhs);
      return l;
    }
    const fol::SymbolTable::Symbol* sym = doc.symbols.find(raw.pred);
    if (!sym) throw ParseError(raw.line, raw.col, "unknown predicate '" + raw.pred + "'");
    if (!sym->is_pred)
      throw ParseError(raw.line, raw.col, "'" + raw.pred + "' is a function");
    if (raw.sort_args.size() != sym->sort_params.size())
      throw ParseError(raw.line, raw.col,
                       "'" + raw.pred + "' expects " +
                           std::to_string(sym->sort_params.size()) + " sort arguments");
    if (raw.args.size() != sym->arg_sorts.size())
      throw ParseError(raw.line, raw.col,
                       "'" + raw.pred + "' expects " + std::to_string(sym->arg_sorts.size()) +
                           " arguments, got " + std::to_string(raw.args.size()));
    std::vector<TermPtr> args;
    for (size_t i = 0; i < raw.args.size(); ++i) {
      SortPtr want = instantiate(sym->arg_sorts[i], sym->sort_params, raw.sort_args);
      args.push_back(elaborate(raw.args[i], want, var_sorts));
    }
    Literal l;
    l.positive = raw.positive;
    l.is_eq = false;
    l.pred = raw.pred;
    l.sort_args = raw.sort_args;
    l.args = std::move(args);
    return l;
  }

  void parse_step() {
    const Token& kw = next();  // step
    DerivationStep step;
    step.id = expect_nat("step id");
    if (!step_ids.insert(step.id).second) fail(kw, "duplicate step id");
    const Token& rname = expect(Tok::Ident, "rule name");
    step.rule_text = rname.text;
    if (auto r = trace::rule_from_name(rname.text)) step.rule = *r;
    else step.rule = Rule::Unsupported;
    expect(Tok::LBrack, "'['");
    while (peek().kind != Tok::RBrack) {
      uint64_t p = expect_nat("premise id");
      if (!step_ids.count(p)) fail(kw, "premise " + std::to_string(p) + " not defined yet");
      step.premises.push_back(p);
      if (peek().kind == Tok::Comma) next();
    }
    next();  // ]
    if (peek().kind == Tok::LBrace) {
      next();
      while (peek().kind != Tok::RBrace) {
        bool positive = true;
        if (peek().kind == Tok::Minus) { next(); positive = false; }
        uint64_t sid = expect_nat("split id");
        step.conditions.push_back({sid, positive});
        if (peek().kind == Tok::Comma) next();
      }
      next();  // }
    }
    expect(Tok::Bar, "'|'");
    std::vector<RawLiteral> raw_lits;
    if (peek().kind != Tok::Bar) {
      for (;;) {
        raw_lits.push_back(parse_raw_literal());
        if (peek().kind == Tok::Semi) { next(); continue; }
        break;
      }
    }
    expect(Tok::Bar, "'|'");
    parse_extras(step);
    expect(Tok::DotEnd, "'.'");

    std::map<std::string, SortPtr> var_sorts;
    Clause c;
    // A variable's sort may only become known at a later literal; retry once.
    std::vector<Literal> lits(raw_lits.size());
    std::vector<bool> done(raw_lits.size(), false);
    for (int round = 0; round < 2; ++round) {
      for (size_t i = 0; i < raw_lits.size(); ++i) {
        if (done[i]) continue;
        try {
          lits[i] = elaborate_literal(raw_lits[i], var_sorts);
          done[i] = true;
        } catch (const ParseError&) {
          if (round == 1) throw;
        }
      }
    }
    c.literals = std::move(lits);
    step.conclusion = fol::closure_normalize(c);
    validate_step(step, kw);
    doc.steps.push_back(std::move(step));
  }

  void parse_extras(DerivationStep& step) {
    while (peek().kind == Tok::Ident) {
      std::string key = next().text;
      expect(Tok::Eq, "'='");
      if (key == "lits") {
        int a = (int)expect_nat("literal index");
        expect(Tok::Colon, "':'");
        int b = (int)expect_nat("literal index");
        step.extras.lits = {a, b};
      } else if (key == "lit") {
        step.extras.lit = (int)expect_nat("literal index");
      } else if (key == "pos") {
        step.extras.pos.push_back((int)expect_nat("position"));
        while (peek().kind == Tok::DotSep) {
          next();
          step.extras.pos.push_back((int)expect_nat("position"));
        }
      } else if (key == "side") {
        std::string s = expect_ident("side");
        if (s != "l" && s != "r") fail(peek(), "side must be l or r");
        step.extras.side = s[0];
      } else if (key == "split") {
        if (step.rule == Rule::AvatarSplit) {
          for (;;) {
            uint64_t sid = expect_nat("split id");
            std::vector<int> idxs;
            expect(Tok::Colon, "':'");
            idxs.push_back((int)expect_nat("literal index"));
            while (peek().kind == Tok::Comma) {
              next();
              idxs.push_back((int)expect_nat("literal index"));
            }
            step.extras.partition.emplace_back(sid, std::move(idxs));
            if (peek().kind == Tok::Semi) { next(); continue; }
            break;
          }
        } else {
          step.extras.split = expect_nat("split id");
        }
      } else {
        fail(peek(), "unknown extras key '" + key + "'");
      }
    }
  }

  // Structural validation: index ranges, topology, split bookkeeping.
  void validate_step(DerivationStep& step, const Token& at) {
    auto premise_clause = [&](size_t i) -> const Clause& {
      return doc.find_step(step.premises[i])->conclusion;
    };
    auto check_lit_index = [&](int idx, size_t premise, const char* what) {
      if (idx < 0 || (size_t)idx >= premise_clause(premise).literals.size())
        fail(at, std::string(what) + " out of range for step " +
                     std::to_string(step.premises[premise]));
    };
    switch (step.rule) {
      case Rule::Input:
        if (!step.premises.empty()) fail(at, "input steps take no premises");
        if (!step.conditions.empty()) fail(at, "input steps take no conditions");
        break;
      case Rule::Resolution:
      case Rule::SubsumptionResolution:
        if (step.premises.size() != 2) fail(at, "rule needs two premises");
        if (!step.extras.lits) fail(at, "missing lits=");
        check_lit_index(step.extras.lits->first, 0, "lits first index");
        check_lit_index(step.extras.lits->second, 1, "lits second index");
        break;
      case Rule::Factoring:
        if (step.premises.size() != 1) fail(at, "factoring needs one premise");
        if (!step.extras.lits) fail(at, "missing lits=");
        check_lit_index(step.extras.lits->first, 0, "lits first index");
        check_lit_index(step.extras.lits->second, 0, "lits second index");
        break;
      case Rule::Superposition:
      case Rule::SimultaneousSuperposition:
      case Rule::Demodulation:
        if (step.premises.size() != 2) fail(at, "rule needs two premises");
        if (!step.extras.lits) fail(at, "missing lits=");
        check_lit_index(step.extras.lits->first, 0, "lits first index");
        check_lit_index(step.extras.lits->second, 1, "lits second index");
        if (step.extras.pos.empty()) fail(at, "missing pos=");
        break;
      case Rule::EqualityResolution:
        if (step.premises.size() != 1) fail(at, "rule needs one premise");
        if (!step.extras.lit) fail(at, "missing lit=");
        check_lit_index(*step.extras.lit, 0, "lit index");
        break;
      case Rule::AvatarDefinition:
        if (!step.extras.split) fail(at, "missing split=");
        if (step.conclusion.literals.empty()) fail(at, "empty component");
        defined_splits.insert(*step.extras.split);
        break;
      case Rule::AvatarSplit: {
        if (step.premises.size() != 1) fail(at, "avatar_split needs one premise");
        if (step.extras.partition.empty()) fail(at, "missing split=");
        std::set<int> seen;
        size_t n = premise_clause(0).literals.size();
        for (const auto& [sid, idxs] : step.extras.partition) {
          if (!defined_splits.count(sid))
            fail(at, "split " + std::to_string(sid) + " not defined");
          for (int idx : idxs) {
            if (idx < 0 || (size_t)idx >= n) fail(at, "partition index out of range");
            if (!seen.insert(idx).second) fail(at, "partition reuses a literal");
          }
        }
        if (seen.size() != n) fail(at, "partition does not cover the premise");
        break;
      }
      case Rule::AvatarComponent:
        if (!step.extras.split) fail(at, "missing split=");
        if (!defined_splits.count(*step.extras.split))
          fail(at, "split " + std::to_string(*step.extras.split) + " not defined");
        break;
      case Rule::AvatarContradiction:
        if (step.premises.size() != 1) fail(at, "avatar_contradiction needs one premise");
        if (!step.conclusion.literals.empty()) fail(at, "conclusion must be empty");
        break;
      case Rule::Unsupported:
        break;
    }
    for (const auto& c : step.conditions)
      if (!defined_splits.count(c.split_id))
        fail(at, "condition split " + std::to_string(c.split_id) + " not defined");
  }
};

void print_sort(std::ostream& os, const SortPtr& s) {
  if (s->is_var || s->args.empty()) {
    os << s->name;
    return;
  }
  os << "(" << s->name;
  for (const auto& a : s->args) {
    os << " ";
    print_sort(os, a);
  }
  os << ")";
}

struct TracePrinter {
  const TraceDocument& doc;
  std::ostream& os;
  std::set<std::string> annotated;

  void print_term(const TermPtr& t) {
    if (t->is_var) {
      os << t->name;
      if (doc.logic != Logic::Cnf && annotated.insert(t->name).second) {
        os << ":";
        print_sort(os, t->sort);
      }
      return;
    }
    os << t->name;
    if (!t->sort_args.empty()) {
      os << "[";
      for (size_t i = 0; i < t->sort_args.size(); ++i) {
        if (i) os << ",";
        print_sort(os, t->sort_args[i]);
      }
      os << "]";
    }
    if (!t->args.empty()) {
      os << "(";
      for (size_t i = 0; i < t->args.size(); ++i) {
        if (i) os << ",";
        print_term(t->args[i]);
      }
      os << ")";
    }
  }

  void print_literal(const Literal& l) {
    if (l.is_eq) {
      os << (l.positive ? "= " : "!= ");
      print_term(l.lhs);
      os << " ";
      print_term(l.rhs);
      return;
    }
    if (!l.positive) os << "~";
    os << l.pred;
    if (!l.sort_args.empty()) {
      os << "[";
      for (size_t i = 0; i < l.sort_args.size(); ++i) {
        if (i) os << ",";
        print_sort(os, l.sort_args[i]);
      }
      os << "]";
    }
    if (!l.args.empty()) {
      os << "(";
      for (size_t i = 0; i < l.args.size(); ++i) {
        if (i) os << ",";
        print_term(l.args[i]);
      }
      os << ")";
    }
  }

  void run() {
    os << "drv " << doc.version << " ";
    switch (doc.logic) {
      case Logic::Cnf: os << "cnf"; break;
      case Logic::ManySorted: os << "many_sorted"; break;
      case Logic::Polymorphic: os << "polymorphic"; break;
    }
    os << ".\n";
    for (const auto& name : doc.symbols.sort_order()) {
      if (name == "iota") continue;
      os << "sort " << name << " " << doc.symbols.sorts().at(name) << ".\n";
    }
    for (const auto& name : doc.symbols.symbol_order()) {
      const auto& sym = doc.symbols.get(name);
      os << (sym.is_pred ? "pred " : "fun ") << name;
      if (!sym.sort_params.empty()) {
        os << " [";
        for (size_t i = 0; i < sym.sort_params.size(); ++i) {
          if (i) os << ", ";
          os << sym.sort_params[i];
        }
        os << "]";
      }
      os << " (";
      for (size_t i = 0; i < sym.arg_sorts.size(); ++i) {
        if (i) os << " ";
        print_sort(os, sym.arg_sorts[i]);
      }
      os << ")";
      if (!sym.is_pred) {
        os << " ";
        print_sort(os, sym.result);
      }
      os << ".\n";
    }
    for (const auto& step : doc.steps) {
      annotated.clear();
      os << "step " << step.id << " "
         << (step.rule == Rule::Unsupported ? step.rule_text : trace::rule_name(step.rule))
         << " [";
      for (size_t i = 0; i < step.premises.size(); ++i) {
        if (i) os << ", ";
        os << step.premises[i];
      }
      os << "]";
      if (!step.conditions.empty()) {
        os << " {";
        for (size_t i = 0; i < step.conditions.size(); ++i) {
          if (i) os << ", ";
          if (!step.conditions[i].positive) os << "-";
          os << step.conditions[i].split_id;
        }
        os << "}";
      }
      os << " | ";
      for (size_t i = 0; i < step.conclusion.literals.size(); ++i) {
        if (i) os << "; ";
        print_literal(step.conclusion.literals[i]);
      }
      os << (step.conclusion.literals.empty() ? "|" : " |");
      const trace::Extras& ex = step.extras;
      if (ex.lits) os << " lits=" << ex.lits->first << ":" << ex.lits->second;
      if (ex.lit) os << " lit=" << *ex.lit;
      if (!ex.pos.empty()) {
        os << " pos=";
        for (size_t i = 0; i < ex.pos.size(); ++i) {
          if (i) os << ".";
          os << ex.pos[i];
        }
      }
      if (step.rule == Rule::Superposition || step.rule == Rule::SimultaneousSuperposition ||
          step.rule == Rule::Demodulation)
        os << " side=" << ex.side;
      if (ex.split) os << " split=" << *ex.split;
      if (!ex.partition.empty()) {
        os << " split=";
        for (size_t i = 0; i < ex.partition.size(); ++i) {
          if (i) os << ";";
          os << ex.partition[i].first << ":";
          for (size_t j = 0; j < ex.partition[i].second.size(); ++j) {
            if (j) os << ",";
            os << ex.partition[i].second[j];
          }
        }
      }
      os << ".\n";
    }
  }
};

}  // namespace

trace::TraceDocument parse_trace(const std::string& text) {
  std::vector<Token> toks = lex(text);
  Parser p{toks, 0, {}, {}, {}};
  p.run();
  return std::move(p.doc);
}

std::string print_trace(const trace::TraceDocument& doc) {
  std::ostringstream os;
  TracePrinter{doc, os, {}}.run();
  return os.str();
}

}  // namespace lampi::io
