// Bounded equivalence and implication checking by exhaustive trace enumeration.
//
// Finite-trace semantics (past, fin) enumerate every trace of length
// 1..max_len; fin formulas are evaluated directly, not through a LAST encoding.
// Infinite semantics enumerate every lasso prefix.loop^omega with
// |prefix| <= max_prefix and 1 <= |loop| <= max_loop.  All positions t are
// checked unless initial_only is set.
//
// Canonical order, which fixes the reported counterexample:
//   finite: length ascending, then the trace read as a number whose most
//           significant digit is position 0 (bit j of a digit is props[j]),
//           then t ascending;
//   lasso:  |prefix|+|loop| ascending, then |prefix| ascending, then the
//           prefix.loop word as above, then t ascending.

#ifndef FRET2MTL_EQUIV_HPP
#define FRET2MTL_EQUIV_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fret2mtl/mtl.hpp"
#include "fret2mtl/traces.hpp"
#include "fret2mtl/translator.hpp"

namespace fret2mtl {

inline constexpr std::size_t kDefaultMaxTraceBits = 24;

struct CheckConfig {
  Semantics semantics = Semantics::FutureInfinite;
  std::vector<std::string> props;
  std::size_t max_len = 6;
  std::size_t max_prefix = 4;
  std::size_t max_loop = 2;
  /// Refuse to run when props x (longest trace) exceeds this many bits.
  std::size_t max_trace_bits = kDefaultMaxTraceBits;
  /// Compare only at t = 0, for formulas anchored at the trace start.
  bool initial_only = false;
  /// 0 picks the hardware concurrency.  The verdict does not depend on it.
  unsigned workers = 1;
};

struct Counterexample {
  std::variant<Trace, LassoTrace> trace;
  std::uint64_t t = 0;
  bool lhs = false;
  bool rhs = false;
};

struct Verdict {
  std::optional<Counterexample> counterexample;
  std::uint64_t traces_checked = 0;

  bool holds() const noexcept { return !counterexample.has_value(); }
};

/// Bad configuration: empty or duplicated props, an atom outside props,
/// zero bounds, or a trace space over max_trace_bits.
class CheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Verdict check_equiv(const Formula& f, const Formula& g, const CheckConfig& cfg);
Verdict check_implication(const Formula& f, const Formula& g, const CheckConfig& cfg);

/// Rewrites a finite-trace formula for evaluation on infinite traces in which
/// LAST holds from the final position onward.
Formula encode_last(const Formula& f);

/// (G (LAST -> X LAST) & F LAST) -> encode_last(f)
Formula last_encoded_problem(const Formula& f);

}  // namespace fret2mtl

#endif  // FRET2MTL_EQUIV_HPP
