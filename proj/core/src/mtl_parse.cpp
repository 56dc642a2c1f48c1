#include <ostream>

#include <stdexcept>

#include "lexer.hpp"
#include "mtlkit/mtl.hpp"

namespace mtlkit {

namespace {

using detail::Token;
using detail::TokenStream;

bool is_unary_keyword(const std::string& s) { return s == "F" || s == "G" || s == "P" || s == "H"; }
bool is_binary_keyword(const std::string& s) { return s == "U" || s == "S"; }

class MtlParser {
 public:
  explicit MtlParser(std::string_view text) : ts_(detail::tokenize(text)) {}

  Mtl parse() {
    Mtl f = implication();
    if (ts_.peek().kind != Token::Kind::End) ts_.fail({"operator", "end of input"});
    return f;
  }

 private:
  Mtl implication() {
    Mtl a = disjunction();
    if (ts_.accept_sym("->")) return mtl::implies(a, implication());
    if (ts_.accept_sym("<->")) return mtl::iff(a, implication());
    return a;
  }

  Mtl disjunction() {
    Mtl a = conjunction();
    while (ts_.accept_sym("|")) a = mtl::disj(a, conjunction());
    return a;
  }

  Mtl conjunction() {
    Mtl a = unary();
    for (;;) {
      if (ts_.accept_sym("&")) {
        a = mtl::conj(a, unary());
      } else if (ts_.peek().kind == Token::Kind::Ident && is_binary_keyword(ts_.peek().text)) {
        bool is_until = ts_.next().text == "U";
        Interval i = optional_interval(false).value_or(Interval::positive());
        Mtl b = unary();
        a = is_until ? mtl::until(a, b, i) : mtl::since(a, b, i);
      } else {
        return a;
      }
    }
  }

  // F/G/P/H act as operators only when an operand follows; otherwise they are propositions.
  bool operand_follows(std::size_t k) const {
    const Token& t = ts_.peek(k);
    if (t.kind == Token::Kind::Ident) return !is_binary_keyword(t.text);
    if (t.kind == Token::Kind::Sym) return t.text == "(" || t.text == "!" || t.text == "[" || t.text == "K+" || t.text == "K-";
    return false;
  }

  Mtl unary() {
    if (ts_.accept_sym("!")) return mtl::neg(unary());
    if (ts_.accept_sym("K+")) return mtl::kplus(unary());
    if (ts_.accept_sym("K-")) return mtl::kminus(unary());
    const Token& t = ts_.peek();
    if (t.kind == Token::Kind::Ident && is_unary_keyword(t.text) && operand_follows(1)) {
      std::string op = ts_.next().text;
      bool allow_punctual = true;
      std::optional<Rational> punct;
      std::optional<Interval> iv;
      if (ts_.at_sym("[")) {
        if (ts_.at_sym("=", 1)) {
          ts_.next();
          ts_.next();
          punct = number();
          ts_.expect_sym("]");
        } else {
          iv = optional_interval(false);
        }
      }
      (void)allow_punctual;
      Mtl a = unary();
      if (punct) {
        if (op == "F") return mtl::ev_f(*punct, a);
        if (op == "P") return mtl::ev_p(*punct, a);
        iv = check(Interval::point(*punct));
      }
      Interval i = iv.value_or(Interval::positive());
      if (op == "F") return mtl::dia_f(i, a);
      if (op == "P") return mtl::dia_p(i, a);
      if (op == "G") return mtl::box_f(i, a);
      return mtl::box_p(i, a);
    }
    return atom();
  }

  Mtl atom() {
    const Token& t = ts_.peek();
    if (ts_.accept_sym("(")) {
      Mtl f = implication();
      ts_.expect_sym(")");
      return f;
    }
    if (t.kind == Token::Kind::Ident) {
      if (is_binary_keyword(t.text)) ts_.fail({"formula"});
      std::string name = ts_.next().text;
      if (name == "true") return mtl::tt();
      if (name == "false") return mtl::ff();
      return mtl::prop(name);
    }
    ts_.fail({"'('", "'!'", "proposition", "'true'", "temporal operator"});
  }

  Rational number() {
    const Token& t = ts_.peek();
    if (t.kind != Token::Kind::Number) ts_.fail({"rational constant"});
    return Rational::parse(ts_.next().text);
  }

  Bound bound() {
    if (ts_.at_ident("inf")) {
      ts_.next();
      return Bound::pos_inf();
    }
    return Bound(number());
  }

  Interval check(const Interval& i) {
    if (!i.is_operator_constraint())
      ts_.fail_here("operator interval " + i.str() + " must be a subset of (0,inf)");
    return i;
  }

  // '[' interval ']' where interval is (a,b), [a,b], mixed, =q, <q, <=q.
  std::optional<Interval> optional_interval(bool) {
    if (!ts_.accept_sym("[")) return std::nullopt;
    std::optional<Interval> out;
    try {
      if (ts_.accept_sym("=")) {
        out = Interval::point(number());
      } else if (ts_.accept_sym("<")) {
        out = mtl::below(number());
      } else if (ts_.accept_sym("<=")) {
        out = mtl::below_eq(number());
      } else {
        bool lo_closed;
        if (ts_.accept_sym("("))
          lo_closed = false;
        else if (ts_.accept_sym("["))
          lo_closed = true;
        else
          ts_.fail({"'('", "'['", "'='", "'<'"});
        Rational lo = number();
        ts_.expect_sym(",");
        Bound hi = bound();
        bool hi_closed;
        if (ts_.accept_sym(")"))
          hi_closed = false;
        else if (ts_.accept_sym("]"))
          hi_closed = true;
        else
          ts_.fail({"')'", "']'"});
        if (!hi.is_finite() && hi_closed) ts_.fail_here("infinite endpoint must be open");
        auto i = Interval::try_make(lo, lo_closed, hi, hi_closed);
        if (!i) ts_.fail_here("empty interval");
        out = *i;
      }
    } catch (const std::invalid_argument& e) {
      ts_.fail_here(e.what());
    }
    ts_.expect_sym("]");
    return check(*out);
  }

  TokenStream ts_;
};

// Binding strength: | = 1, & U S = 2, prefix operators = 3, atoms = 4.
int level(const Mtl& f) {
  switch (f.kind()) {
    case MtlKind::Or: return 1;
    case MtlKind::And:
    case MtlKind::Until:
    case MtlKind::Since: return 2;
    case MtlKind::True:
    case MtlKind::Prop: return 4;
    case MtlKind::Not:
      return f.arg().kind() == MtlKind::True ? 4 : 3;
    default: return 3;
  }
}

std::string interval_suffix(const Interval& i, bool punctual_sugar) {
  if (i == Interval::positive()) return "";
  if (i.is_singleton()) return punctual_sugar ? "[=" + i.lo.str() + "]" : "[[" + i.lo.str() + "," + i.lo.str() + "]]";
  return "[" + i.str() + "]";
}

void print(const Mtl& f, std::string& out);

void print_at(const Mtl& f, int min_level, std::string& out) {
  if (level(f) < min_level) {
    out += "(";
    print(f, out);
    out += ")";
  } else {
    print(f, out);
  }
}

void print(const Mtl& f, std::string& out) {
  switch (f.kind()) {
    case MtlKind::True: out += "true"; return;
    case MtlKind::Prop: out += f.name(); return;
    case MtlKind::Not:
      if (f.arg().kind() == MtlKind::True) {
        out += "false";
        return;
      }
      out += "!";
      print_at(f.arg(), 3, out);
      return;
    case MtlKind::And:
    case MtlKind::Or:
    case MtlKind::Until:
    case MtlKind::Since: {
      int l = level(f);
      print_at(f.lhs(), l, out);
      if (f.kind() == MtlKind::And) out += " & ";
      else if (f.kind() == MtlKind::Or) out += " | ";
      else out += std::string(f.kind() == MtlKind::Until ? " U" : " S") + interval_suffix(f.interval(), true) + " ";
      print_at(f.rhs(), l + 1, out);
      return;
    }
    case MtlKind::EvF: out += "F[=" + f.offset().str() + "] "; break;
    case MtlKind::EvP: out += "P[=" + f.offset().str() + "] "; break;
    case MtlKind::DiaF: out += "F" + interval_suffix(f.interval(), false) + " "; break;
    case MtlKind::DiaP: out += "P" + interval_suffix(f.interval(), false) + " "; break;
    case MtlKind::BoxF: out += "G" + interval_suffix(f.interval(), true) + " "; break;
    case MtlKind::BoxP: out += "H" + interval_suffix(f.interval(), true) + " "; break;
    case MtlKind::Kplus: out += "K+ "; break;
    case MtlKind::Kminus: out += "K- "; break;
  }
  print_at(f.arg(), 3, out);
}

}  // namespace

Mtl parse_mtl(std::string_view text) { return MtlParser(text).parse(); }

std::string print_mtl(const Mtl& f) {
  std::string out;
  print(f, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Mtl& f) { return os << print_mtl(f); }

}  // namespace mtlkit
