#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mtlkit/mtl.hpp"
#include "mtlkit/rational.hpp"

namespace mtlkit {

/// Term of the form `var + offset`, the canonical shape of t ::= x | t + q.
struct Term {
  std::string var;
  Rational offset;

  Term plus(const Rational& q) const { return {var, offset + q}; }
  friend bool operator==(const Term&, const Term&) = default;
  std::string str() const;
};

enum class FoKind { True, Pred, Less, Eq, And, Or, Not, Implies, Exists, Forall };

/// Immutable first-order formula over <, +q and monadic predicates.
class Fo {
 public:
  struct Node;

  Fo() = default;

  FoKind kind() const;
  const std::string& name() const;  // predicate name or bound variable
  const Term& t1() const;           // Pred argument, or left side of Less / Eq
  const Term& t2() const;           // right side of Less / Eq
  const Fo& lhs() const;            // body of quantifiers / Not
  const Fo& rhs() const;
  const Fo& body() const { return lhs(); }
  const Node* id() const { return node_.get(); }
  bool valid() const { return node_ != nullptr; }
  std::size_t hash() const;
  std::size_t size() const;

  friend bool operator==(const Fo& a, const Fo& b);

  static Fo make(Node&& n);

 private:
  explicit Fo(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Fo::Node {
  FoKind kind;
  std::string name;
  Term t1, t2;
  Fo a, b;
  std::size_t hash = 0;
  std::size_t size = 1;
};

namespace fo {

Term var(std::string v, Rational offset = Rational(0));

Fo tt();
Fo ff();  // !true
Fo pred(std::string name, Term t);
Fo less(Term a, Term b);
Fo eq(Term a, Term b);
Fo leq(Term a, Term b);  // !(b < a)
Fo conj(Fo a, Fo b);
Fo disj(Fo a, Fo b);
Fo neg(Fo a);
Fo implies(Fo a, Fo b);
Fo exists(std::string v, Fo body);
Fo forall(std::string v, Fo body);
/// exists v ((lo <= v < hi) & body) -- the relativized shape used by Bet(lo, hi).
Fo exists_in(std::string v, const Term& lo, const Term& hi, Fo body);
Fo conj_all(const std::vector<Fo>& xs);
Fo disj_all(const std::vector<Fo>& xs);

}  // namespace fo

/// Parses the FO grammar; bound variables are alpha-renamed apart from each other
/// and from the free variables.
Fo parse_fo(std::string_view text);
std::string print_fo(const Fo& f);
std::ostream& operator<<(std::ostream& os, const Fo& f);

std::set<std::string> free_vars(const Fo& f);
/// Capture-avoiding substitution of `t` for the free occurrences of `v`.
Fo subst_term(const Fo& f, const std::string& v, const Term& t);
/// Renames binders so that all bound names are distinct and differ from free names.
Fo alpha_normalize(const Fo& f);
/// Replaces predicate atoms; `sub(name, term)` returns nullopt to keep the atom.
Fo substitute_preds(const Fo& f, const std::function<std::optional<Fo>(const std::string&, const Term&)>& sub);

int quantifier_depth(const Fo& f);
std::set<std::string> preds_of(const Fo& f);
/// Every rational constant occurring in a term of f.
std::set<Rational> offsets_of(const Fo& f);

/// Boolean simplification (true/false propagation, trivially decided comparisons
/// between terms over the same variable).
Fo simplify(const Fo& f);

/// `base` if not taken, else base1, base2, ...
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

}  // namespace mtlkit
