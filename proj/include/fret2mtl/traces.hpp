// Finite and ultimately periodic traces, and the satisfaction relation of
// mixed past/future MTL over them.
//
// Trace file format (one position per line):
//
//   a,b          propositions true at this position
//   -            no proposition true
//   ---loop---   separates the prefix from the loop of a lasso trace
//   t=3          optional trailer naming a position
//
// A file without a ---loop--- line is a finite trace.

#ifndef FRET2MTL_TRACES_HPP
#define FRET2MTL_TRACES_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fret2mtl/errors.hpp"
#include "fret2mtl/mtl.hpp"

namespace fret2mtl {

using State = std::set<std::string>;

class Trace {
 public:
  /// Throws std::invalid_argument when `states` is empty.
  explicit Trace(std::vector<State> states);

  std::size_t size() const noexcept { return states_.size(); }
  const State& operator[](std::size_t t) const { return states_.at(t); }
  const std::vector<State>& states() const noexcept { return states_; }

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  std::vector<State> states_;
};

/// The infinite trace prefix . loop . loop . ...
class LassoTrace {
 public:
  /// Throws std::invalid_argument when `loop` is empty.
  LassoTrace(std::vector<State> prefix, std::vector<State> loop);

  const std::vector<State>& prefix() const noexcept { return prefix_; }
  const std::vector<State>& loop() const noexcept { return loop_; }
  /// Index into prefix ++ loop of the letter at time t.
  std::size_t position_class(std::uint64_t t) const noexcept;
  const State& letter(std::uint64_t t) const;

  friend bool operator==(const LassoTrace&, const LassoTrace&) = default;

 private:
  std::vector<State> prefix_;
  std::vector<State> loop_;
};

/// rho, t |= f on a finite trace.  Throws std::out_of_range when t >= |rho|.
bool eval(const Formula& f, const Trace& rho, std::size_t t);

/// rho, t |= f on prefix . loop^omega.  LAST is false everywhere.
bool eval_lasso(const Formula& f, const LassoTrace& rho, std::uint64_t t);

/// rho, t |= f for every position t of the finite trace.
bool holds_globally(const Formula& f, const Trace& rho);

/// A proposition valuation as a bit set over an ordered proposition list.
using StateBits = std::uint64_t;
inline constexpr std::size_t kMaxPropositions = 64;

std::vector<StateBits> encode_states(std::span<const State> states,
                                     std::span<const std::string> props);

/// Formula compiled to a shared-subterm program that evaluates every
/// subformula at every position of a trace at once.  One instance is not
/// safe for concurrent use; make one per thread.
class Evaluator {
 public:
  /// `props` fixes the bit order of StateBits; every atom of f must appear in
  /// it (std::invalid_argument otherwise).  When `last_prop` is given, LAST
  /// is read from that proposition instead of being derived from the trace
  /// shape.
  Evaluator(const Formula& f, std::vector<std::string> props,
            std::optional<std::string> last_prop = std::nullopt);

  /// Evaluates on a finite trace of states.size() >= 1 positions.
  void run_finite(std::span<const StateBits> states);
  /// Evaluates on prefix . loop^omega; loop must be non-empty.
  void run_lasso(std::span<const StateBits> prefix, std::span<const StateBits> loop);

  /// Truth value at time t after the last run.  For a finite run t must be
  /// below the trace length.
  bool value(std::uint64_t t) const;

  /// Positions computed by the last run.  For a lasso run, every time
  /// t >= positions() behaves like loop_start() + (t - loop_start()) % loop_length.
  std::size_t positions() const noexcept { return positions_; }
  std::size_t loop_start() const noexcept { return loop_start_; }

  /// First time from which every subformula's truth value is periodic with
  /// the loop length on a lasso with the given shape.  Equal to prefix_len
  /// for formulas without past operators.
  std::size_t periodicity_start(std::size_t prefix_len, std::size_t loop_len) const;

  std::size_t program_size() const noexcept { return program_.size(); }
  const std::vector<std::string>& props() const noexcept { return props_; }

 private:
  struct Instr {
    Op op;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    Interval interval;
    int bit = -1;
  };

  std::uint32_t compile(const Formula& f, std::vector<std::pair<std::string, std::uint32_t>>& memo);
  void run(std::span<const StateBits> states, bool lasso);
  void compute(std::size_t index, std::span<const StateBits> states, bool lasso);

  std::vector<std::string> props_;
  int last_bit_ = -1;
  std::vector<Instr> program_;
  std::vector<std::uint64_t> bits_;
  std::vector<StateBits> scratch_;
  std::size_t words_ = 0;
  std::size_t positions_ = 0;
  std::size_t loop_start_ = 0;
  bool lasso_ = false;
};

struct TraceDocument {
  std::variant<Trace, LassoTrace> trace;
  std::optional<std::uint64_t> t;
};

/// Throws ParseError; the position is the 0-based line index.
TraceDocument parse_trace_text(std::string_view text);

std::string format_trace(const Trace& rho);
std::string format_trace(const LassoTrace& rho);

}  // namespace fret2mtl

#endif  // FRET2MTL_TRACES_HPP
