#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtlkit/interval.hpp"

namespace mtlkit {

/// Thrown by the MTL and FO parsers.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column, std::vector<std::string> expected);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

enum class MtlKind {
  True,
  Prop,
  Not,
  And,
  Or,
  Until,   // lhs U_I rhs: rhs at some t with t-r in I, lhs strictly between
  Since,   // lhs S_I rhs
  EvF,     // F[=q]
  EvP,     // P[=q]
  BoxF,    // G[I]
  BoxP,    // H[I]
  DiaF,    // F[I]
  DiaP,    // P[I]
  Kplus,
  Kminus,
};

/// Immutable MTL formula. Cheap to copy (shared structure); equality is structural.
class Mtl {
 public:
  struct Node;

  Mtl() = default;

  MtlKind kind() const;
  const std::string& name() const;     // Prop
  const Rational& offset() const;      // EvF / EvP
  const Interval& interval() const;    // Until, Since, BoxF/P, DiaF/P
  const Mtl& lhs() const;              // first operand (sole operand of unary nodes)
  const Mtl& rhs() const;              // second operand of binary nodes
  const Mtl& arg() const { return lhs(); }

  std::size_t hash() const;
  std::size_t size() const;            // number of AST nodes
  const Node* id() const { return node_.get(); }
  bool valid() const { return node_ != nullptr; }

  bool is_unary_temporal() const;
  bool is_binary() const;
  bool is_temporal() const;

  friend bool operator==(const Mtl& a, const Mtl& b);

  static Mtl make(Node&& n);

 private:
  explicit Mtl(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Mtl::Node {
  MtlKind kind;
  std::string name;
  Rational offset;
  Interval iv = Interval::positive();
  Mtl a, b;
  std::size_t hash = 0;
  std::size_t size = 1;
};

namespace mtl {

Mtl tt();
Mtl ff();  // !true
Mtl prop(std::string name);
Mtl neg(Mtl a);
Mtl conj(Mtl a, Mtl b);
Mtl disj(Mtl a, Mtl b);
Mtl implies(Mtl a, Mtl b);  // !a | b
Mtl iff(Mtl a, Mtl b);      // (a & b) | (!a & !b)
/// Throws std::invalid_argument unless `i` is a valid operator constraint.
Mtl until(Mtl lhs, Mtl rhs, Interval i = Interval::positive());
Mtl since(Mtl lhs, Mtl rhs, Interval i = Interval::positive());
Mtl ev_f(Rational q, Mtl a);
Mtl ev_p(Rational q, Mtl a);
Mtl box_f(Interval i, Mtl a);
Mtl box_p(Interval i, Mtl a);
Mtl dia_f(Interval i, Mtl a);
Mtl dia_p(Interval i, Mtl a);
Mtl box_f(Mtl a);
Mtl box_p(Mtl a);
Mtl dia_f(Mtl a);
Mtl dia_p(Mtl a);
Mtl kplus(Mtl a);
Mtl kminus(Mtl a);

/// Conjunction / disjunction of a list; empty lists give true / false.
Mtl conj_all(const std::vector<Mtl>& xs);
Mtl disj_all(const std::vector<Mtl>& xs);

/// Rebuilds a node of the same kind as `shape` with new operands.
Mtl rebuild(const Mtl& shape, Mtl a, Mtl b = {});

/// (0, q) and (0, q] helpers.
Interval below(const Rational& q);
Interval below_eq(const Rational& q);

}  // namespace mtl

Mtl parse_mtl(std::string_view text);
std::string print_mtl(const Mtl& f);
std::ostream& operator<<(std::ostream& os, const Mtl& f);

/// Rewrites derived operators into True/Prop/Not/And/Or/Until/Since.
Mtl desugar(const Mtl& f);

/// Proposition names occurring in f.
std::set<std::string> props_of(const Mtl& f);

/// Replaces propositions by formulas (simultaneously).
Mtl substitute_props(const Mtl& f, const std::function<std::optional<Mtl>(const std::string&)>& sub);

/// Boolean simplification with true/false constants; preserves semantics exactly.
Mtl simplify(const Mtl& f);

}  // namespace mtlkit

template <>
struct std::hash<mtlkit::Mtl> {
  std::size_t operator()(const mtlkit::Mtl& f) const noexcept { return f.hash(); }
};
