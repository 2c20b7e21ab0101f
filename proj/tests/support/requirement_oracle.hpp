// Direct reading of a requirement on a finite trace under the finite-future
// semantics: at every instant where the requirement is triggered, the timed
// response must hold.  Written with loops over trace positions; it shares no
// code with the translator or the formula evaluator.

#ifndef FRET2MTL_TESTS_REQUIREMENT_ORACLE_HPP
#define FRET2MTL_TESTS_REQUIREMENT_ORACLE_HPP

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "fret2mtl/fretish.hpp"

namespace oracle {

using fret2mtl::ConditionKind;
using fret2mtl::Requirement;
using fret2mtl::ScopeKind;
using fret2mtl::TimingKind;
using Letter = std::set<std::string>;
using Pred = std::function<bool(std::size_t)>;

class RequirementOracle {
 public:
  RequirementOracle(const Requirement& r, std::vector<Letter> word)
      : r_(r), w_(std::move(word)), n_(w_.size()) {}

  bool holds() const {
    for (std::size_t t = 0; t < n_; ++t) {
      if (triggered(t) && !response(t)) return false;
    }
    return true;
  }

 private:
  bool has(std::size_t t, const std::string& p) const { return w_[t].count(p) > 0; }

  // Boolean expressions in the templates are single atoms.
  bool expr(const std::optional<fret2mtl::Formula>& e, std::size_t t) const {
    return has(t, e->name());
  }

  bool mode(std::size_t t) const { return has(t, r_.scope.mode); }

  bool active(std::size_t t) const {
    switch (r_.scope.kind) {
      case ScopeKind::Global: return true;
      case ScopeKind::In: return mode(t);
      case ScopeKind::NotIn:
      case ScopeKind::OnlyIn: return !mode(t);
      case ScopeKind::Before:
        for (std::size_t u = 0; u <= t; ++u) {
          if (mode(u)) return false;
        }
        return true;
      case ScopeKind::OnlyBefore:
        for (std::size_t u = 0; u <= t; ++u) {
          if (mode(u)) return true;
        }
        return false;
      case ScopeKind::After:
        // some earlier instant where the mode had just been left
        for (std::size_t u = 1; u <= t; ++u) {
          if (!mode(u) && mode(u - 1)) return true;
        }
        return false;
      case ScopeKind::OnlyAfter:
        for (std::size_t u = 1; u <= t; ++u) {
          if (mode(u - 1) && !mode(u)) return false;
        }
        return true;
    }
    return false;
  }

  bool last(std::size_t t) const { return t + 1 == n_; }

  bool exit(std::size_t t) const {
    return last(t) || (active(t) && !active(t + 1));
  }

  bool enabled(std::size_t t) const {
    const bool cond = r_.condition.kind == ConditionKind::None || expr(r_.condition.expr, t);
    return active(t) && cond;
  }

  bool triggered(std::size_t t) const {
    if (r_.condition.kind == ConditionKind::Continual) return enabled(t);
    return enabled(t) && (t == 0 || !enabled(t - 1));
  }

  bool resp(std::size_t t) const { return has(t, r_.response.name()); }
  bool stop(std::size_t t) const { return has(t, r_.timing.stop->name()); }

  // Some instant in [from, to] satisfies p.
  bool some(std::size_t from, std::size_t to, const Pred& p) const {
    for (std::size_t u = from; u <= to && u < n_; ++u) {
      if (p(u)) return true;
    }
    return false;
  }
  bool every(std::size_t from, std::size_t to, const Pred& p) const {
    for (std::size_t u = from; u <= to && u < n_; ++u) {
      if (!p(u)) return false;
    }
    return true;
  }
  // `keep` holds from t on until (and including) the first instant where
  // `until` holds, or to the end of the trace.
  bool kept_until(std::size_t t, const Pred& until, const Pred& keep) const {
    for (std::size_t u = t; u < n_; ++u) {
      if (!keep(u)) return false;
      if (until(u)) return true;
    }
    return true;
  }
  // `goal` is reached at some instant, and `keep` holds at every instant before it.
  bool reached(std::size_t t, const Pred& keep, const Pred& goal) const {
    for (std::size_t u = t; u < n_; ++u) {
      if (goal(u)) return true;
      if (!keep(u)) return false;
    }
    return false;
  }

  bool response(std::size_t t) const {
    const bool only = fret2mtl::is_only_scope(r_.scope.kind);
    const std::size_t k = r_.timing.ticks;
    const Pred is_resp = [this](std::size_t u) { return resp(u); };
    const Pred no_resp = [this](std::size_t u) { return !resp(u); };
    const Pred is_exit = [this](std::size_t u) { return exit(u); };
    const Pred resp_till_exit = [&](std::size_t u) { return kept_until(u, is_exit, is_resp); };
    const Pred quiet_till_exit = [&](std::size_t u) { return kept_until(u, is_exit, no_resp); };
    switch (r_.timing.kind) {
      case TimingKind::Immediately:
        return only ? !resp(t) : resp(t);
      case TimingKind::Eventually: {
        const bool served = reached(
            t, [this](std::size_t u) { return active(u) && !last(u); },
            [this](std::size_t u) { return resp(u) && active(u); });
        return only ? !served : served;
      }
      case TimingKind::Next:
        if (exit(t)) return true;
        return only ? !resp(t + 1) : resp(t + 1);
      case TimingKind::Always:
        return only ? !resp_till_exit(t) : resp_till_exit(t);
      case TimingKind::Never:
        return only ? !quiet_till_exit(t) : quiet_till_exit(t);
      case TimingKind::Within:
        if (only) return every(t, t + k, no_resp) || quiet_till_exit(t);
        return some(t, t + k, is_resp) || some(t, t + k - 1, is_exit);
      case TimingKind::For:
        if (only) return some(t, t + k, no_resp) || some(t, t + k - 1, is_exit);
        return every(t, t + k, is_resp) || resp_till_exit(t);
      case TimingKind::After:
        if (only) {
          return some(t, t + k, is_resp) || some(t, t + k - 1, is_exit) ||
                 every(t, t + k + 1, no_resp) || quiet_till_exit(t);
        }
        return (every(t, t + k, no_resp) || quiet_till_exit(t)) &&
               (some(t, t + k + 1, is_resp) || some(t, t + k, is_exit));
      case TimingKind::Until:
        if (only) {
          return kept_until(
              t, [&](std::size_t u) { return !resp(u) || exit(u); },
              [this](std::size_t u) { return !stop(u); });
        }
        return reached(
            t, [this](std::size_t u) { return resp(u) && active(u); },
            [this](std::size_t u) { return (resp(u) && last(u)) || stop(u) || !active(u); });
      case TimingKind::Before:
        if (only) {
          const bool guarded = kept_until(
              t, [&](std::size_t u) { return stop(u) || exit(u); },
              [this](std::size_t u) { return !resp(u) || stop(u); });
          const bool outside = !resp(t) && !active(t) && t + 1 < n_ && !active(t + 1);
          return guarded || outside || quiet_till_exit(t);
        }
        return kept_until(
            t, [&](std::size_t u) { return resp(u) || exit(u); },
            [this](std::size_t u) { return !stop(u); });
    }
    return false;
  }

  const Requirement& r_;
  std::vector<Letter> w_;
  std::size_t n_;
};

/// Whether the requirement holds on the finite word under the finite-future reading.
inline bool requirement_holds(const Requirement& r, const std::vector<Letter>& word) {
  return RequirementOracle(r, word).holds();
}

}  // namespace oracle

#endif  // FRET2MTL_TESTS_REQUIREMENT_ORACLE_HPP
