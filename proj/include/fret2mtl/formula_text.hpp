// Concrete syntax for MTL formulas, compatible with nuXmv LTLSPEC bodies.
//
//   atoms       [A-Za-z_][A-Za-z0-9_]*, plus TRUE, FALSE and LAST
//   unary       !  G F X H O Y Z        (bounds: G[a,b] F[a,b] H[a,b] O[a,b])
//   binary      U V R S                 (bounds: U[a,b] V[a,b] R[a,b] S[a,b])
//   boolean     &  |  ->  <->
//
// Precedence from loosest to tightest: <->, -> (right associative), |, &,
// binary temporal operators (left associative), unary operators.

#ifndef FRET2MTL_FORMULA_TEXT_HPP
#define FRET2MTL_FORMULA_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "fret2mtl/errors.hpp"
#include "fret2mtl/mtl.hpp"

namespace fret2mtl {

enum class Dialect {
  /// Bounds printed as OP[a,b]; binary nodes parenthesized, unary nodes bare.
  Canonical,
  /// Pure LTL: bounded operators unrolled, every compound node parenthesized.
  NuXmvLtl,
};

/// Throws ParseError on malformed input or an inverted bound.
Formula parse_formula(std::string_view text);

std::string print_formula(const Formula& f, Dialect dialect = Dialect::Canonical);

/// Rewrites every bounded operator into unbounded X/Y/Z unrollings that
/// agree with it on finite and infinite traces.  Unbounded operators are kept.
Formula expand_bounds(const Formula& f);

/// Reads formulas from a text file body.  Lines whose first non-blank
/// character is '#' and blank lines are skipped.  With `per_line` each
/// remaining line is a formula; otherwise the remaining lines are joined into
/// a single formula.
std::vector<Formula> parse_formula_file(std::string_view body, bool per_line);

}  // namespace fret2mtl

#endif  // FRET2MTL_FORMULA_TEXT_HPP
