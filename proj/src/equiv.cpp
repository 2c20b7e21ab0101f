#include "fret2mtl/equiv.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace fret2mtl {

namespace {

struct Shape {
  std::size_t prefix;  // the whole trace for finite shapes
  std::size_t loop;    // 0 for finite shapes
};

std::vector<Shape> shapes_of(const CheckConfig& cfg) {
  std::vector<Shape> out;
  if (cfg.semantics != Semantics::FutureInfinite) {
    for (std::size_t n = 1; n <= cfg.max_len; ++n) out.push_back({n, 0});
    return out;
  }
  for (std::size_t total = 1; total <= cfg.max_prefix + cfg.max_loop; ++total) {
    for (std::size_t p = 0; p <= std::min(total - 1, cfg.max_prefix); ++p) {
      if (total - p <= cfg.max_loop) out.push_back({p, total - p});
    }
  }
  return out;
}

void decode(std::uint64_t index, std::size_t len, std::size_t nprops, StateBits* out) {
  const StateBits mask = nprops >= 64 ? ~StateBits{0} : (StateBits{1} << nprops) - 1;
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = (index >> (nprops * (len - 1 - i))) & mask;
  }
}

std::vector<State> to_states(std::span<const StateBits> bits, const std::vector<std::string>& props) {
  std::vector<State> out;
  out.reserve(bits.size());
  for (StateBits b : bits) {
    State s;
    for (std::size_t j = 0; j < props.size(); ++j) {
      if ((b >> j) & 1u) s.insert(props[j]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

// First position where the combined formula fails on the trace with the
// given index, if any.
std::optional<std::uint64_t> first_failure(Evaluator& ev, const Shape& shape, std::uint64_t index,
                                           std::size_t nprops, bool initial_only,
                                           std::vector<StateBits>& buf) {
  const std::size_t len = shape.prefix + shape.loop;
  buf.resize(len);
  decode(index, len, nprops, buf.data());
  std::uint64_t horizon;
  if (shape.loop == 0) {
    ev.run_finite(buf);
    horizon = len;
  } else {
    std::span<const StateBits> all(buf);
    ev.run_lasso(all.first(shape.prefix), all.subspan(shape.prefix));
    horizon = std::max<std::uint64_t>(ev.positions(), shape.prefix + 2 * shape.loop);
  }
  if (initial_only) horizon = 1;
  for (std::uint64_t t = 0; t < horizon; ++t) {
    if (!ev.value(t)) return t;
  }
  return std::nullopt;
}

// Lowest failing index in [0, count), scanning contiguous blocks in parallel.
std::optional<std::uint64_t> scan_shape(const Formula& problem, const std::vector<std::string>& props,
                                        const Shape& shape, std::uint64_t count, unsigned workers,
                                        bool initial_only) {
  constexpr std::uint64_t kParallelThreshold = 1u << 12;
  if (workers <= 1 || count < kParallelThreshold) {
    Evaluator ev(problem, props);
    std::vector<StateBits> buf;
    for (std::uint64_t i = 0; i < count; ++i) {
      if (first_failure(ev, shape, i, props.size(), initial_only, buf)) return i;
    }
    return std::nullopt;
  }
  std::atomic<std::uint64_t> best{count};
  std::vector<std::thread> pool;
  const std::uint64_t block = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * block;
    const std::uint64_t hi = std::min(count, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      Evaluator ev(problem, props);
      std::vector<StateBits> buf;
      for (std::uint64_t i = lo; i < hi; ++i) {
        if ((i & 1023) == 0 && i >= best.load(std::memory_order_relaxed)) return;
        if (first_failure(ev, shape, i, props.size(), initial_only, buf)) {
          std::uint64_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  const std::uint64_t found = best.load();
  if (found == count) return std::nullopt;
  return found;
}

void validate(const Formula& f, const Formula& g, const CheckConfig& cfg) {
  if (cfg.props.empty()) throw CheckError("the proposition list is empty");
  if (cfg.props.size() > kMaxPropositions) throw CheckError("too many propositions");
  std::set<std::string> seen;
  for (const auto& p : cfg.props) {
    if (!seen.insert(p).second) throw CheckError("duplicate proposition '" + p + "'");
  }
  for (const Formula* h : {&f, &g}) {
    for (const auto& a : atoms(*h)) {
      if (!seen.count(a)) throw CheckError("atom '" + a + "' is not in the proposition list");
    }
  }
  std::size_t longest;
  if (cfg.semantics == Semantics::FutureInfinite) {
    if (cfg.max_loop == 0) throw CheckError("max_loop must be at least 1");
    longest = cfg.max_prefix + cfg.max_loop;
  } else {
    if (cfg.max_len == 0) throw CheckError("max_len must be at least 1");
    longest = cfg.max_len;
  }
  const std::size_t bits = cfg.props.size() * longest;
  if (bits > cfg.max_trace_bits || bits >= 64) {
    throw CheckError("trace space of " + std::to_string(bits) + " bits exceeds the limit of " +
                     std::to_string(cfg.max_trace_bits));
  }
}

Verdict check(const Formula& f, const Formula& g, const CheckConfig& cfg, bool implication) {
  validate(f, g, cfg);
  const Formula problem = implication ? implies(f, g) : iff(f, g);
  unsigned workers = cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                      : cfg.workers;
  Verdict verdict;
  const std::size_t nprops = cfg.props.size();
  for (const Shape& shape : shapes_of(cfg)) {
    const std::uint64_t count = std::uint64_t{1} << (nprops * (shape.prefix + shape.loop));
    const auto found = scan_shape(problem, cfg.props, shape, count, workers, cfg.initial_only);
    if (!found) {
      verdict.traces_checked += count;
      continue;
    }
    verdict.traces_checked += *found + 1;
    Evaluator ev(problem, cfg.props);
    std::vector<StateBits> buf;
    const std::uint64_t t = *first_failure(ev, shape, *found, nprops, cfg.initial_only, buf);
    std::span<const StateBits> all(buf);
    Counterexample cex{Trace({State{}}), t, false, false};
    if (shape.loop == 0) {
      Trace rho(to_states(all, cfg.props));
      cex.lhs = eval(f, rho, t);
      cex.rhs = eval(g, rho, t);
      cex.trace = std::move(rho);
    } else {
      LassoTrace rho(to_states(all.first(shape.prefix), cfg.props),
                     to_states(all.subspan(shape.prefix), cfg.props));
      cex.lhs = eval_lasso(f, rho, t);
      cex.rhs = eval_lasso(g, rho, t);
      cex.trace = std::move(rho);
    }
    verdict.counterexample = std::move(cex);
    return verdict;
  }
  return verdict;
}

}  // namespace

Verdict check_equiv(const Formula& f, const Formula& g, const CheckConfig& cfg) {
  return check(f, g, cfg, false);
}

Verdict check_implication(const Formula& f, const Formula& g, const CheckConfig& cfg) {
  return check(f, g, cfg, true);
}

Formula encode_last(const Formula& f) {
  const Formula alive = neg(yesterday(last()));
  auto a = [&] { return encode_last(f.lhs()); };
  auto b = [&] { return encode_last(f.rhs()); };
  const Interval iv = f.interval();
  switch (f.op()) {
    case Op::Atom:
    case Op::Last:
    case Op::True:
    case Op::False: return f;
    case Op::Not: return neg(a());
    case Op::And: return conj(a(), b());
    case Op::Or: return disj(a(), b());
    case Op::Implies: return implies(a(), b());
    case Op::Iff: return iff(a(), b());
    case Op::Yesterday: return yesterday(a());
    case Op::WeakYesterday: return weak_yesterday(a());
    case Op::Once: return once(a(), iv);
    case Op::Historically: return historically(a(), iv);
    case Op::Since: return since(a(), b(), iv);
    case Op::Next: return conj(neg(last()), next(a()));
    case Op::Eventually: return eventually(conj(alive, a()), iv);
    case Op::Globally: return always(implies(alive, a()), iv);
    case Op::Until: return until(a(), conj(alive, b()), iv);
    case Op::Release: return release(conj(alive, a()), implies(alive, b()), iv);
  }
  return f;
}

Formula last_encoded_problem(const Formula& f) {
  const Formula shape = conj(always(implies(last(), next(last()))), eventually(last()));
  return implies(shape, encode_last(f));
}

}  // namespace fret2mtl
