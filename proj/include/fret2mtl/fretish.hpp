// Structured requirement sentences.
//
//   req      := [scope] [","] [condition] [","] [the] component SHALL [timing]
//               SATISFY boolexpr ["."]
//   scope    := (IN | NOT IN | ONLY IN | BEFORE | ONLY BEFORE | AFTER | ONLY AFTER) mode
//   condition:= UPON boolexpr | (WHEN | WHILE) boolexpr
//   timing   := IMMEDIATELY | EVENTUALLY | NEXT | AT THE NEXT TIMEPOINT | ALWAYS
//             | NEVER | (WITHIN | FOR | AFTER) n [unit] | (UNTIL | BEFORE) boolexpr
//
// Keywords are case-insensitive.  A comparison such as `x <= 250` inside a
// boolean expression becomes the single atom `x_le_250`.

#ifndef FRET2MTL_FRETISH_HPP
#define FRET2MTL_FRETISH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fret2mtl/errors.hpp"
#include "fret2mtl/mtl.hpp"

namespace fret2mtl {

enum class ScopeKind { Global, In, NotIn, OnlyIn, Before, OnlyBefore, After, OnlyAfter };
enum class ConditionKind { None, Trigger, Continual };
enum class TimingKind {
  Immediately,
  Eventually,
  Next,
  Always,
  Never,
  Within,
  For,
  After,
  Until,
  Before,
};

struct Scope {
  ScopeKind kind = ScopeKind::Global;
  std::string mode;  // empty for Global

  friend bool operator==(const Scope&, const Scope&) = default;
};

struct Condition {
  ConditionKind kind = ConditionKind::None;
  std::optional<Formula> expr;

  friend bool operator==(const Condition&, const Condition&) = default;
};

struct Timing {
  TimingKind kind = TimingKind::Eventually;
  std::uint32_t ticks = 0;     // Within, For, After
  std::optional<Formula> stop;  // Until, Before

  friend bool operator==(const Timing&, const Timing&) = default;
};

struct Requirement {
  Scope scope;
  Condition condition;
  std::string component;
  Timing timing;
  Formula response;

  friend bool operator==(const Requirement&, const Requirement&) = default;
};

inline constexpr ScopeKind kAllScopes[] = {
    ScopeKind::Global, ScopeKind::In,    ScopeKind::NotIn,    ScopeKind::OnlyIn,
    ScopeKind::Before, ScopeKind::OnlyBefore, ScopeKind::After, ScopeKind::OnlyAfter};
inline constexpr ConditionKind kAllConditions[] = {ConditionKind::None, ConditionKind::Trigger,
                                                   ConditionKind::Continual};
inline constexpr TimingKind kAllTimings[] = {
    TimingKind::Immediately, TimingKind::Eventually, TimingKind::Next,  TimingKind::Always,
    TimingKind::Never,       TimingKind::Within,     TimingKind::For,   TimingKind::After,
    TimingKind::Until,       TimingKind::Before};

/// Snake-case names ("only_in", "continual", "within") for file names and reports.
std::string_view name_of(ScopeKind kind) noexcept;
std::string_view name_of(ConditionKind kind) noexcept;
std::string_view name_of(TimingKind kind) noexcept;

bool is_only_scope(ScopeKind kind) noexcept;

/// Throws ParseError; the position is a character offset into `text`.
Requirement parse_requirement(std::string_view text);

std::string render_requirement(const Requirement& r);

/// All 8 x 3 x 10 combinations over the atoms Scope, Condition and Response,
/// component MyComponent; scope-major, then condition, then timing.
std::vector<Requirement> enumerate_templates(std::uint32_t k, const std::string& stop_name);

/// One sentence per line; blank lines and '#' comment lines are skipped.
/// Throws ParseError whose position is the 0-based line index.
std::vector<Requirement> parse_requirement_file(std::string_view body);

}  // namespace fret2mtl

#endif  // FRET2MTL_FRETISH_HPP
