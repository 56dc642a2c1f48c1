#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mtlkit/interval.hpp"

namespace mtlkit {

/// Set of propositions, as a bit mask over a signal's sorted alphabet.
using Valuation = std::uint64_t;

/// Finitely-variable piecewise-constant signal over the whole real line.
///
/// Stored in cell form: breakpoints b_0 < ... < b_{k-1}, one valuation per
/// breakpoint and one per open gap, including the two unbounded tails
/// (-inf, b_0) and (b_{k-1}, inf). The cell form is kept canonical: a
/// breakpoint whose value agrees with both neighbouring gaps is dropped.
class Signal {
 public:
  static constexpr std::size_t kMaxProps = 64;

  Signal() = default;
  /// Constant signal.
  Signal(std::vector<std::string> props, Valuation everywhere);

  /// Raw cell data; throws std::invalid_argument on unsorted breakpoints or size mismatch.
  static Signal from_cells(std::vector<std::string> props, std::vector<Rational> breaks,
                           std::vector<Valuation> point_vals, std::vector<Valuation> gap_vals);

  /// Builds the signal whose proposition `name` holds exactly on `sets[name]`.
  static Signal from_satsets(const std::map<std::string, SatSet>& sets);

  const std::vector<std::string>& props() const { return props_; }
  std::optional<std::size_t> prop_index(const std::string& name) const;
  bool has_prop(const std::string& name) const { return prop_index(name).has_value(); }

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Valuation>& point_values() const { return point_vals_; }
  const std::vector<Valuation>& gap_values() const { return gap_vals_; }

  Valuation value_at(const Rational& t) const;
  bool holds(const std::string& prop, const Rational& t) const;

  /// Exact truth region of one proposition. Throws std::out_of_range for unknown names.
  SatSet prop_satset(const std::string& prop) const;

  /// Set of names holding under a valuation.
  std::vector<std::string> names(Valuation v) const;
  Valuation mask(const std::vector<std::string>& names) const;

  /// Same signal over a larger alphabet (new propositions are false everywhere).
  Signal with_props(const std::vector<std::string>& extra) const;

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  void canonicalize();

  std::vector<std::string> props_;
  std::vector<Rational> breaks_;
  std::vector<Valuation> point_vals_;
  std::vector<Valuation> gap_vals_{0};
};

/// One piece of the external representation of a signal.
struct SignalPiece {
  bool is_point = false;
  Rational from;        // or the point
  Rational to;          // unused for points
  bool at_from = true;  // closed on the left
  std::vector<std::string> props;
};

/// External (file) representation: tails plus contiguous pieces.
struct SignalData {
  std::vector<std::string> props;
  std::vector<std::string> left_tail;
  std::vector<SignalPiece> segments;
  std::vector<std::string> right_tail;
  Rational origin;  // b_0 when `segments` is empty
};

/// Checks contiguity and alphabet membership and returns the canonical signal.
/// Throws std::invalid_argument naming the defect (overlap, gap, unordered, unknown prop).
Signal validate_signal(const SignalData& data);

/// Canonical external form: props sorted, consecutive pieces with equal valuation merged.
SignalData to_data(const Signal& s);

struct RandomSignalConfig {
  std::size_t num_props = 1;
  std::size_t max_pieces = 8;
  std::int64_t grid_denominator = 12;
  Rational window = Rational(4);
  /// Proposition names; defaults to p, q, r, ... when empty.
  std::vector<std::string> prop_names;
};

/// Pure function of (seed, cfg): breakpoints on the 1/grid_denominator grid in [-window, window].
Signal random_signal(std::uint64_t seed, const RandomSignalConfig& cfg);

/// (r.s)(t) = s(t / r); throws std::invalid_argument unless r > 0.
Signal scale_signal(const Signal& s, const Rational& r);

/// Name of the shifted copy P^j of a predicate: P^j(t) holds iff P(t + j).
std::string shifted_name(const std::string& base, std::int64_t j);

/// The signal interpreting P^j for every P of `s` and lo <= j < hi.
Signal shifted_signal(const Signal& s, std::int64_t lo, std::int64_t hi);

}  // namespace mtlkit
