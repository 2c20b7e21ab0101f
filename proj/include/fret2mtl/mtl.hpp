// Abstract syntax for mixed past/future metric temporal logic over discrete
// time, together with structural metrics.
//
// Formulas are immutable trees with shared subterms.  Every node is one of
//
//   Atom, LAST, TRUE, FALSE          leaves
//   !  &  |  ->  <->                 boolean connectives (all primitive)
//   Y  Z  O_I  H_I  S_I              past operators
//   X  F_I  G_I  U_I  R_I            future operators
//
// where I is either a closed interval [lo, hi] of naturals or [0, inf).

#ifndef FRET2MTL_MTL_HPP
#define FRET2MTL_MTL_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace fret2mtl {

class Interval {
 public:
  Interval() = default;

  static Interval unbounded() { return Interval{}; }
  /// Throws std::invalid_argument when lo > hi.
  static Interval bounded(std::uint32_t lo, std::uint32_t hi);

  bool is_unbounded() const noexcept { return unbounded_; }
  std::uint32_t lo() const noexcept { return lo_; }
  /// Only meaningful for bounded intervals.
  std::uint32_t hi() const noexcept { return hi_; }

  bool contains(std::uint64_t c) const noexcept {
    return unbounded_ || (lo_ <= c && c <= hi_);
  }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  bool unbounded_ = true;
  std::uint32_t lo_ = 0;
  std::uint32_t hi_ = 0;
};

enum class Op : std::uint8_t {
  Atom,
  Last,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Yesterday,      // Y
  WeakYesterday,  // Z
  Once,           // O_I
  Historically,   // H_I
  Since,          // S_I
  Next,           // X
  Eventually,     // F_I
  Globally,       // G_I
  Until,          // U_I
  Release,        // R_I
};

std::size_t arity(Op op) noexcept;
bool is_temporal(Op op) noexcept;
bool is_past(Op op) noexcept;
bool has_interval(Op op) noexcept;

struct FormulaNode;

class Formula {
 public:
  /// The constant TRUE.
  Formula();

  Op op() const noexcept;
  /// Atom name; empty for every other node kind.
  const std::string& name() const noexcept;
  const Interval& interval() const noexcept;
  /// Operand of a unary node, or left operand of a binary one.
  Formula lhs() const;
  Formula rhs() const;

  /// Identity of the shared node; equal ids imply structural equality.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  friend struct FormulaBuilder;

  std::shared_ptr<const FormulaNode> node_;
};

/// True for [A-Za-z_][A-Za-z0-9_]* that is not a reserved word of the
/// concrete syntax (TRUE, FALSE, LAST, or a temporal operator letter).
bool is_valid_identifier(std::string_view name) noexcept;
bool is_reserved_word(std::string_view name) noexcept;

// Constructors.  atom() throws std::invalid_argument on an invalid identifier.
Formula atom(std::string name);
Formula last();
Formula top();
Formula bottom();
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula yesterday(Formula f);
Formula weak_yesterday(Formula f);
Formula once(Formula f, Interval i = Interval::unbounded());
Formula historically(Formula f, Interval i = Interval::unbounded());
Formula since(Formula a, Formula b, Interval i = Interval::unbounded());
Formula next(Formula f);
Formula eventually(Formula f, Interval i = Interval::unbounded());
Formula always(Formula f, Interval i = Interval::unbounded());
Formula until(Formula a, Formula b, Interval i = Interval::unbounded());
Formula release(Formula a, Formula b, Interval i = Interval::unbounded());

/// `count` nested X operators around f (f itself when count is 0).
Formula next_power(Formula f, std::uint32_t count);

struct MetricsReport {
  std::size_t size = 0;            // AST node count
  std::size_t temp_ops = 0;        // Y Z O H S X F G U R occurrences
  std::size_t props = 0;           // Atom and LAST occurrences
  std::size_t temporal_depth = 0;  // max temporal nesting on a root-leaf path

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

MetricsReport metrics(const Formula& f);

/// Distinct atom names occurring in f.  LAST is not an atom.
std::set<std::string> atoms(const Formula& f);

bool contains_op(const Formula& f, Op op);
/// True when f has no X, F, G, U or R node.
bool is_past_only(const Formula& f);
/// True when f has no Y, Z, O, H or S node.
bool is_future_only(const Formula& f);

}  // namespace fret2mtl

#endif  // FRET2MTL_MTL_HPP
