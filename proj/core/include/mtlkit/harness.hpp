#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mtlkit/fo.hpp"
#include "mtlkit/mtl.hpp"
#include "mtlkit/rules.hpp"
#include "mtlkit/signal.hpp"

namespace mtlkit {

enum class EquivStatus { Equivalent, Counterexample, BudgetExceeded };

const char* status_name(EquivStatus s);

struct Witness {
  Signal signal;
  Rational point;
  bool lhs_value = false;
  bool rhs_value = false;
};

struct EquivVerdict {
  EquivStatus status = EquivStatus::Equivalent;
  std::optional<Witness> witness;
  std::size_t trials_run = 0;
  std::uint64_t seed = 0;
  std::string detail;  // stage name for BudgetExceeded
};

/// At most 8 pieces on [-4, 4], grid 1/12.
RandomSignalConfig default_signal_config();

struct EquivConfig {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  RandomSignalConfig signals = default_signal_config();
  /// Checked after the random trials.
  std::vector<Signal> fixtures;
};

/// The i-th random signal of a run over `props`.
Signal trial_signal(const EquivConfig& cfg, const std::vector<std::string>& props, std::size_t i);

/// Exact SatSet comparison per signal; the first disagreement (in trial order,
/// independent of cfg.jobs) is replayed by the point evaluators before it is reported.
EquivVerdict check_equiv_mtl(const Mtl& lhs, const Mtl& rhs, const EquivConfig& cfg = {});
EquivVerdict check_equiv_fo_mtl(const Fo& lhs, const Mtl& rhs, const EquivConfig& cfg = {});

std::string verdict_to_json(const EquivVerdict& v, int indent = 2);

/// Writes signal.json, lhs.mtl or lhs.fo, rhs.mtl and verdict.json into dir.
void write_bundle(const std::filesystem::path& dir, const EquivVerdict& v, const std::string& lhs, bool lhs_is_fo,
                  const std::string& rhs);

/// Mutation hook: flips the closedness of one finite endpoint of the first
/// non-punctual constraint (preorder). Returns f unchanged if there is none.
Mtl flip_one_endpoint(const Mtl& f);

struct RuleSuiteConfig {
  std::uint64_t seed = 0;
  std::size_t signals = 200;
  std::size_t instances = 20;
  std::size_t instance_size = 6;
  std::size_t jobs = 1;
  /// Counterexample bundles go to bundle_dir/<rule>; empty for none.
  std::filesystem::path bundle_dir;
  /// Rule whose right-hand side is corrupted by flip_one_endpoint.
  std::string mutate;
  /// Restrict to these rule names (all when empty).
  std::vector<std::string> only;
};

struct RuleResult {
  std::string name;
  std::string family;
  bool displayed = false;
  std::size_t instances_run = 0;
  std::size_t trials_run = 0;
  std::uint64_t seed = 0;
  EquivVerdict verdict;
  std::string lhs, rhs;  // instance that produced the verdict
  double seconds = 0;
};

struct RuleReport {
  std::uint64_t seed = 0;
  double seconds = 0;
  std::vector<RuleResult> rules;

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
  std::string to_json(int indent = 2) const;
};

RuleReport rule_suite(const RuleSuiteConfig& cfg);

}  // namespace mtlkit
