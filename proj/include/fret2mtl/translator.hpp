// Requirement -> MTL under past, finite-future and infinite-future readings.
//
//   translate(r, past) = H (triggers -> timed_response)
//   translate(r, inf)  = G (triggers -> timed_response)
//   translate(r, fin)  = LAST V (triggers -> timed_response)

#ifndef FRET2MTL_TRANSLATOR_HPP
#define FRET2MTL_TRANSLATOR_HPP

#include <optional>
#include <string_view>

#include "fret2mtl/fretish.hpp"
#include "fret2mtl/mtl.hpp"

namespace fret2mtl {

enum class Semantics { Past, FutureFinite, FutureInfinite };

inline constexpr Semantics kAllSemantics[] = {Semantics::Past, Semantics::FutureFinite,
                                              Semantics::FutureInfinite};

/// "past", "fin", "inf".
std::string_view name_of(Semantics s) noexcept;
std::optional<Semantics> parse_semantics(std::string_view text) noexcept;

/// The region formula of a scope; T for Global.
Formula mtl_of_scope(const Scope& s);

Formula triggers(const Scope& s, const Condition& c);

/// Last instant of the scope region: (phi & X !phi), or'ed with LAST except
/// under FutureInfinite.
Formula scope_exit(const Scope& s, Semantics sem);

Formula timed_response(const Timing& t, const Scope& s, Semantics sem, const Formula& resp);

Formula translate(const Requirement& r, Semantics sem);

}  // namespace fret2mtl

#endif  // FRET2MTL_TRANSLATOR_HPP
