#include "fret2mtl/translator.hpp"

#include <stdexcept>

namespace fret2mtl {

namespace {

Interval upto(std::uint32_t k) { return Interval::bounded(0, k); }

// p U_phi q
Formula until_in(const Formula& p, const Formula& q, const Formula& phi) {
  return until(p, conj(q, phi));
}

struct Cell {
  const Formula& resp;
  const Formula& phi;
  const Formula& exit;
  const Timing& timing;
  bool only;
};

Formula stop_of(const Timing& t) { return t.stop.value_or(bottom()); }

// The first instant after the scope region ends.
Formula leaving(const Formula& phi) { return conj(neg(phi), yesterday(phi)); }

Formula infinite_cell(const Cell& c) {
  const Formula& resp = c.resp;
  const Formula& phi = c.phi;
  const Formula& exit = c.exit;
  const std::uint32_t k = c.timing.ticks;
  switch (c.timing.kind) {
    case TimingKind::Immediately:
      return c.only ? neg(resp) : resp;
    case TimingKind::Eventually: {
      Formula f = until_in(phi, resp, phi);
      return c.only ? neg(f) : f;
    }
    case TimingKind::Next:
      return implies(neg(exit), next(c.only ? neg(resp) : resp));
    case TimingKind::Always: {
      Formula f = release(exit, resp);
      return c.only ? neg(f) : f;
    }
    case TimingKind::Never: {
      Formula f = release(exit, neg(resp));
      return c.only ? neg(f) : f;
    }
    case TimingKind::Within:
      if (c.only) {
        return disj(always(neg(resp), upto(k)),
                    until(conj(neg(resp), phi), neg(phi), upto(k)));
      }
      return disj(eventually(resp, upto(k)), eventually(exit, upto(k - 1)));
    case TimingKind::For:
      if (c.only) {
        return disj(eventually(neg(resp), upto(k)), eventually(exit, upto(k - 1)));
      }
      return disj(always(resp, upto(k)), until(conj(resp, phi), neg(phi), upto(k)));
    case TimingKind::After:
      if (c.only) {
        return disj(disj(eventually(resp, upto(k)), always(neg(resp), upto(k + 1))),
                    until(phi, neg(phi), upto(k + 1)));
      }
      return disj(conj(always(neg(resp), upto(k)), next_power(resp, k + 1)),
                  until(conj(neg(resp), phi), neg(phi), upto(k + 1)));
    case TimingKind::Until: {
      const Formula stop = stop_of(c.timing);
      if (c.only) return disj(release(neg(resp), neg(stop)), release(exit, neg(stop)));
      return disj(always(resp), until(resp, disj(stop, leaving(phi))));
    }
    case TimingKind::Before: {
      const Formula stop = stop_of(c.timing);
      if (c.only) return disj(always(neg(resp)), until(neg(resp), disj(stop, leaving(phi))));
      return disj(release(resp, neg(stop)), release(exit, neg(stop)));
    }
  }
  return top();
}

Formula finite_cell(const Cell& c) {
  const Formula& resp = c.resp;
  const Formula& phi = c.phi;
  const Formula& exit = c.exit;
  const std::uint32_t k = c.timing.ticks;
  const Formula alive = conj(neg(last()), phi);
  switch (c.timing.kind) {
    case TimingKind::Eventually: {
      Formula f = until_in(alive, resp, phi);
      return c.only ? neg(f) : f;
    }
    case TimingKind::Within:
      if (c.only) return disj(always(neg(resp), upto(k)), release(exit, neg(resp)));
      return disj(eventually(resp, upto(k)), eventually(exit, upto(k - 1)));
    case TimingKind::For:
      if (c.only) {
        return disj(eventually(neg(resp), upto(k)), eventually(exit, upto(k - 1)));
      }
      return disj(always(resp, upto(k)), release(exit, resp));
    case TimingKind::After:
      if (c.only) {
        return disj(disj(eventually(resp, upto(k)), eventually(exit, upto(k - 1))),
                    disj(always(neg(resp), upto(k + 1)), release(exit, neg(resp))));
      }
      return conj(disj(always(neg(resp), upto(k)), release(exit, neg(resp))),
                  disj(eventually(resp, upto(k + 1)), eventually(exit, upto(k))));
    case TimingKind::Until: {
      const Formula stop = stop_of(c.timing);
      if (c.only) return release(disj(neg(resp), exit), neg(stop));
      return until(conj(resp, phi), disj(disj(conj(resp, last()), stop), neg(phi)));
    }
    case TimingKind::Before: {
      const Formula stop = stop_of(c.timing);
      if (c.only) {
        return disj(disj(release(disj(stop, exit), disj(neg(resp), stop)),
                         conj(conj(neg(resp), neg(phi)), next(neg(phi)))),
                    release(exit, neg(resp)));
      }
      return release(disj(resp, exit), neg(stop));
    }
    default:
      return infinite_cell(c);
  }
}

Formula past_cell(const Cell& c) {
  const Formula& resp = c.resp;
  const Formula& phi = c.phi;
  const Formula alive = conj(neg(last()), phi);
  const std::uint32_t k = c.timing.ticks;
  switch (c.timing.kind) {
    case TimingKind::Eventually:
      if (c.only) return release(c.exit, neg(resp));
      break;
    case TimingKind::Always:
      if (c.only) return until_in(alive, neg(resp), phi);
      break;
    case TimingKind::Never:
      if (c.only) return until_in(alive, resp, phi);
      break;
    case TimingKind::After:
      if (!c.only) {
        return disj(conj(always(neg(resp), upto(k)), until(neg(resp), resp, upto(k + 1))),
                    until(conj(neg(resp), phi), neg(phi), upto(k + 1)));
      }
      break;
    default:
      break;
  }
  return infinite_cell(c);
}

}  // namespace

std::string_view name_of(Semantics s) noexcept {
  switch (s) {
    case Semantics::Past: return "past";
    case Semantics::FutureFinite: return "fin";
    case Semantics::FutureInfinite: return "inf";
  }
  return {};
}

std::optional<Semantics> parse_semantics(std::string_view text) noexcept {
  for (Semantics s : kAllSemantics) {
    if (name_of(s) == text) return s;
  }
  return std::nullopt;
}

Formula mtl_of_scope(const Scope& s) {
  if (s.kind == ScopeKind::Global) return top();
  const Formula m = atom(s.mode);
  switch (s.kind) {
    case ScopeKind::In: return m;
    case ScopeKind::NotIn:
    case ScopeKind::OnlyIn: return neg(m);
    case ScopeKind::Before: return historically(neg(m));
    case ScopeKind::OnlyBefore: return once(m);
    case ScopeKind::After: return once(conj(neg(m), yesterday(m)));
    case ScopeKind::OnlyAfter: return historically(implies(yesterday(m), m));
    case ScopeKind::Global: break;
  }
  return top();
}

Formula triggers(const Scope& s, const Condition& c) {
  const Formula cond = c.kind == ConditionKind::None ? top() : c.expr.value_or(top());
  const Formula active = conj(mtl_of_scope(s), cond);
  if (c.kind == ConditionKind::Continual) return active;
  return conj(active, weak_yesterday(neg(active)));
}

Formula scope_exit(const Scope& s, Semantics sem) {
  const Formula phi = mtl_of_scope(s);
  const Formula edge = conj(phi, next(neg(phi)));
  return sem == Semantics::FutureInfinite ? edge : disj(edge, last());
}

Formula timed_response(const Timing& t, const Scope& s, Semantics sem, const Formula& resp) {
  const Formula phi = mtl_of_scope(s);
  const Formula exit = scope_exit(s, sem);
  if ((t.kind == TimingKind::Within || t.kind == TimingKind::For || t.kind == TimingKind::After) &&
      t.ticks == 0) {
    throw std::invalid_argument("bounded timings need at least one tick");
  }
  const Cell cell{resp, phi, exit, t, is_only_scope(s.kind)};
  switch (sem) {
    case Semantics::Past: return past_cell(cell);
    case Semantics::FutureFinite: return finite_cell(cell);
    case Semantics::FutureInfinite: return infinite_cell(cell);
  }
  return top();
}

Formula translate(const Requirement& r, Semantics sem) {
  const Formula core = implies(triggers(r.scope, r.condition),
                               timed_response(r.timing, r.scope, sem, r.response));
  switch (sem) {
    case Semantics::Past: return historically(core);
    case Semantics::FutureInfinite: return always(core);
    case Semantics::FutureFinite: return release(last(), core);
  }
  return core;
}

}  // namespace fret2mtl
