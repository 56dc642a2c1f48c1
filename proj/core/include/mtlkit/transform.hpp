#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtlkit/fo.hpp"
#include "mtlkit/mtl.hpp"

namespace mtlkit {

/// A rewrite stage ran out of its node budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string stage, std::size_t budget);
  const std::string& stage() const { return stage_; }
  std::size_t budget() const { return budget_; }

 private:
  std::string stage_;
  std::size_t budget_;
};

/// A unit formula that the decomposition matcher could not bring into the
/// shape of a Boolean combination of decomposition formulas.
class RequiresGpssNormalization : public std::runtime_error {
 public:
  explicit RequiresGpssNormalization(Fo offending);
  const Fo& offending() const { return offending_; }

 private:
  Fo offending_;
};

/// Input outside the domain of a translation (wrong free variables, not N-bounded, ...).
class TransformError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kDefaultBudget = 1'000'000;

/// Tracks the size of intermediate results of one stage.
class Budget {
 public:
  explicit Budget(std::string stage, std::size_t limit = kDefaultBudget) : stage_(std::move(stage)), limit_(limit) {}
  /// Throws BudgetExceeded when `nodes` exceeds the limit.
  void check(std::size_t nodes) const;
  /// Counts one rewrite step (a step costs as much as a node).
  void step();
  std::size_t limit() const { return limit_; }
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
  std::size_t limit_;
  std::size_t steps_ = 0;
};

// ---------------------------------------------------------------------------
// Scaling and the MTL -> FO direction

/// Multiplies every constant by r > 0.
Mtl scale_mtl(const Mtl& phi, const Rational& r);
Fo scale_fo(const Fo& phi, const Rational& r);

/// Literal transcription of the semantic clauses; the only free variable is x.
Fo mtl_to_fo(const Mtl& phi);

// ---------------------------------------------------------------------------
// Separation of MTL

/// Normal form: only U/S/G/H over (0,g) or (0,g], F[=q] and P[=q] applied to
/// propositions, no conjunction as invariant and no disjunction as target of U/S,
/// negation only on propositions and bounded temporal operators.
Mtl to_normal_form(const Mtl& phi);
bool is_normal_form(const Mtl& phi);

/// No unbounded temporal operator in the scope of a bounded one.
Mtl extract_unbounded(const Mtl& phi, std::size_t budget = kDefaultBudget);
bool has_unbounded_under_bounded(const Mtl& phi);

/// Boolean combination of bounded formulas, formulas without unbounded Since
/// and formulas without unbounded Until.
Mtl separate_ltl_skeleton(const Mtl& phi, std::size_t budget = kDefaultBudget);
/// Shape check for the output of separate_ltl_skeleton.
bool is_skeleton_separated(const Mtl& phi);

/// Boolean combination tree with classified leaves.
struct SeparatedForm {
  enum class Kind { Bounded, DistantFuture, DistantPast, Not, And, Or };
  Kind kind = Kind::Bounded;
  Rational n;                          // DistantFuture / DistantPast
  Mtl body;                            // leaves
  std::vector<SeparatedForm> children; // Not (1), And / Or (2+)

  Mtl flatten() const;
  std::size_t leaf_count() const;
};

/// One stage of `separate`, recorded when tracing.
struct StageTrace {
  std::string stage;
  Mtl output;
};

/// Completes the separation of a Boolean combination of formulas without
/// unbounded Since / without unbounded Until.
SeparatedForm complete_separation(const Mtl& phi, std::size_t budget = kDefaultBudget);

/// to_normal_form -> extract_unbounded -> separate_ltl_skeleton -> complete_separation.
SeparatedForm separate(const Mtl& phi, std::size_t budget = kDefaultBudget, std::vector<StageTrace>* trace = nullptr);

// ---------------------------------------------------------------------------
// Bounded FO -> MTL

/// n >= 1 points phi_0..phi_{n-1} and gaps psi_1..psi_n, all pure LTL.
struct DecompositionFormula {
  std::vector<Mtl> points;
  std::vector<Mtl> gaps;
  std::size_t n() const { return gaps.size(); }
};

/// The FO(<) transcription delta(x, y) (y free; point and gap formulas inlined via mtl_to_fo).
Fo decomposition_to_fo(const DecompositionFormula& d);
/// MTL formula equivalent to delta[(x+1)/y].
Mtl decomposition_to_mtl(const DecompositionFormula& d);

/// First stage of the bounded translation: predicates P become P_at_j (-N <= j < N).
Fo relativize_to_unit(const Fo& phi, std::int64_t n);
/// Removes +1 from comparisons between unit-range bound variables; returns psi(x, y) with
/// phi equivalent to psi[(x+1)/y].
Fo unit_strip_plus_one(const Fo& phi);
/// Boolean combination of decomposition formulas over Bet(x, y), as MTL.
Mtl unit_to_mtl(const Fo& psi);
/// Replaces shifted propositions P_at_j by F[=j] P (j >= 0) or P[=-j] P (j < 0).
Mtl strip_shift_predicates(const Mtl& phi);
/// Translation of N-bounded FO(<,+1) formulas.
Mtl bounded_fo_to_mtl(const Fo& phi, std::int64_t n);

/// Full translation for FO(<,+1) with one free variable x.
Mtl fo_to_mtl(const Fo& phi, std::size_t budget = kDefaultBudget);
/// FO(<,+q): scale to integral constants, translate, scale back.
Mtl fo_to_mtl_q(const Fo& phi, std::size_t budget = kDefaultBudget);

}  // namespace mtlkit
