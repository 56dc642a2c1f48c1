#include <ostream>

#include "lexer.hpp"
#include "mtlkit/fo.hpp"

namespace mtlkit {

namespace {

using detail::Token;
using detail::TokenStream;

bool reserved(const std::string& s) {
  return s == "exists" || s == "forall" || s == "true" || s == "false" || s == "in";
}

class FoParser {
 public:
  explicit FoParser(std::string_view text) : ts_(detail::tokenize(text)) {}

  Fo parse() {
    Fo f = formula();
    if (ts_.peek().kind != Token::Kind::End) ts_.fail({"connective", "end of input"});
    return alpha_normalize(f);
  }

 private:
  // Quantifiers have the lowest precedence and extend as far right as possible.
  Fo formula() {
    if (ts_.at_ident("exists") || ts_.at_ident("forall")) return quantified();
    return implication();
  }

  Fo quantified() {
    bool is_exists = ts_.next().text == "exists";
    std::string v = variable();
    if (ts_.at_ident("in")) {
      ts_.next();
      bool lo_closed = false;
      if (ts_.accept_sym("["))
        lo_closed = true;
      else if (!ts_.accept_sym("("))
        ts_.fail({"'['", "'('"});
      Term lo = term();
      ts_.expect_sym(",");
      Term hi = term();
      bool hi_closed = false;
      if (ts_.accept_sym("]"))
        hi_closed = true;
      else if (!ts_.accept_sym(")"))
        ts_.fail({"']'", "')'"});
      ts_.expect_sym(".");
      Fo body = formula();
      Term tv = fo::var(v);
      Fo range = fo::conj(lo_closed ? fo::leq(lo, tv) : fo::less(lo, tv), hi_closed ? fo::leq(tv, hi) : fo::less(tv, hi));
      return is_exists ? fo::exists(v, fo::conj(range, body)) : fo::forall(v, fo::implies(range, body));
    }
    ts_.expect_sym(".");
    Fo body = formula();
    return is_exists ? fo::exists(v, body) : fo::forall(v, body);
  }

  Fo implication() {
    Fo a = disjunction();
    if (ts_.accept_sym("->")) return fo::implies(a, rhs_operand(&FoParser::implication));
    if (ts_.accept_sym("<->")) {
      Fo b = rhs_operand(&FoParser::implication);
      return fo::conj(fo::implies(a, b), fo::implies(b, a));
    }
    return a;
  }

  // A quantifier may appear as the last operand of a binary connective.
  Fo rhs_operand(Fo (FoParser::*next)()) {
    if (ts_.at_ident("exists") || ts_.at_ident("forall")) return quantified();
    return (this->*next)();
  }

  Fo disjunction() {
    Fo a = conjunction();
    while (ts_.accept_sym("|")) a = fo::disj(a, rhs_operand(&FoParser::conjunction));
    return a;
  }

  Fo conjunction() {
    Fo a = unary();
    while (ts_.accept_sym("&")) a = fo::conj(a, rhs_operand(&FoParser::unary));
    return a;
  }

  Fo unary() {
    if (ts_.accept_sym("!")) {
      if (ts_.at_ident("exists") || ts_.at_ident("forall")) return fo::neg(quantified());
      return fo::neg(unary());
    }
    return atom();
  }

  Fo atom() {
    if (ts_.accept_sym("(")) {
      Fo f = formula();
      ts_.expect_sym(")");
      return f;
    }
    const Token& t = ts_.peek();
    if (t.kind != Token::Kind::Ident) ts_.fail({"'('", "'!'", "predicate", "term", "quantifier"});
    if (t.text == "true") {
      ts_.next();
      return fo::tt();
    }
    if (t.text == "false") {
      ts_.next();
      return fo::ff();
    }
    if (ts_.at_sym("(", 1)) {
      std::string name = ts_.next().text;
      if (reserved(name)) ts_.fail({"predicate name"});
      ts_.next();
      Term arg = term();
      ts_.expect_sym(")");
      return fo::pred(name, arg);
    }
    return comparison_chain();
  }

  Fo comparison_chain() {
    Term a = term();
    std::vector<Fo> parts;
    for (;;) {
      std::string op;
      for (const char* o : {"<", "<=", "=", ">", ">="})
        if (ts_.at_sym(o)) op = o;
      if (op.empty()) break;
      ts_.next();
      Term b = term();
      if (op == "<") parts.push_back(fo::less(a, b));
      else if (op == "<=") parts.push_back(fo::leq(a, b));
      else if (op == "=") parts.push_back(fo::eq(a, b));
      else if (op == ">") parts.push_back(fo::less(b, a));
      else parts.push_back(fo::leq(b, a));
      a = b;
    }
    if (parts.empty()) ts_.fail({"'<'", "'<='", "'='", "'>'", "'>='"});
    return fo::conj_all(parts);
  }

  std::string variable() {
    const Token& t = ts_.peek();
    if (t.kind != Token::Kind::Ident || reserved(t.text)) ts_.fail({"variable"});
    return ts_.next().text;
  }

  Term term() {
    Term t = fo::var(variable());
    for (;;) {
      int sign = 0;
      if (ts_.at_sym("+") && ts_.peek(1).kind == Token::Kind::Number) sign = 1;
      if (ts_.at_sym("-") && ts_.peek(1).kind == Token::Kind::Number) sign = -1;
      if (!sign) return t;
      ts_.next();
      Rational q = Rational::parse(ts_.next().text);
      t.offset += sign > 0 ? q : -q;
    }
  }

  TokenStream ts_;
};

// Binding strength: quantifiers 0, -> 1, | 2, & 3, ! 4, atoms 5.
int level(const Fo& f) {
  switch (f.kind()) {
    case FoKind::Exists:
    case FoKind::Forall: return 0;
    case FoKind::Implies: return 1;
    case FoKind::Or: return 2;
    case FoKind::And: return 3;
    case FoKind::Not:
      if (f.lhs().kind() == FoKind::Less || f.lhs().kind() == FoKind::True) return 5;
      return 4;
    default: return 5;
  }
}

void print(const Fo& f, std::string& out);

void print_at(const Fo& f, int min_level, std::string& out) {
  if (level(f) < min_level) {
    out += "(";
    print(f, out);
    out += ")";
  } else {
    print(f, out);
  }
}

void print(const Fo& f, std::string& out) {
  switch (f.kind()) {
    case FoKind::True: out += "true"; return;
    case FoKind::Pred: out += f.name() + "(" + f.t1().str() + ")"; return;
    case FoKind::Less: out += f.t1().str() + " < " + f.t2().str(); return;
    case FoKind::Eq: out += f.t1().str() + " = " + f.t2().str(); return;
    case FoKind::Not:
      if (f.lhs().kind() == FoKind::True) {
        out += "false";
        return;
      }
      if (f.lhs().kind() == FoKind::Less) {
        out += f.lhs().t2().str() + " <= " + f.lhs().t1().str();
        return;
      }
      out += "!";
      print_at(f.lhs(), 4, out);
      return;
    case FoKind::And:
    case FoKind::Or: {
      int l = level(f);
      print_at(f.lhs(), l, out);
      out += f.kind() == FoKind::And ? " & " : " | ";
      print_at(f.rhs(), l + 1, out);
      return;
    }
    case FoKind::Implies:
      print_at(f.lhs(), 2, out);
      out += " -> ";
      print_at(f.rhs(), 1, out);
      return;
    case FoKind::Exists:
    case FoKind::Forall:
      out += (f.kind() == FoKind::Exists ? "exists " : "forall ") + f.name() + ". ";
      print(f.body(), out);
      return;
  }
}

}  // namespace

Fo parse_fo(std::string_view text) { return FoParser(text).parse(); }

std::string print_fo(const Fo& f) {
  std::string out;
  print(f, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Fo& f) { return os << print_fo(f); }

}  // namespace mtlkit
