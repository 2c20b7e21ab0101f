#include "fret2mtl/traces.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <unordered_map>

namespace fret2mtl {

namespace {

constexpr std::string_view kLoopMarker = "---loop---";

bool get_bit(const std::uint64_t* row, std::size_t k) {
  return (row[k >> 6] >> (k & 63)) & 1u;
}

void set_bit(std::uint64_t* row, std::size_t k) { row[k >> 6] |= std::uint64_t{1} << (k & 63); }

std::uint64_t tail_mask(std::size_t positions) {
  const std::size_t rem = positions & 63;
  return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

}  // namespace

Trace::Trace(std::vector<State> states) : states_(std::move(states)) {
  if (states_.empty()) throw std::invalid_argument("a finite trace needs at least one position");
}

LassoTrace::LassoTrace(std::vector<State> prefix, std::vector<State> loop)
    : prefix_(std::move(prefix)), loop_(std::move(loop)) {
  if (loop_.empty()) throw std::invalid_argument("a lasso trace needs a non-empty loop");
}

std::size_t LassoTrace::position_class(std::uint64_t t) const noexcept {
  const std::size_t p = prefix_.size();
  if (t < p) return static_cast<std::size_t>(t);
  return p + static_cast<std::size_t>((t - p) % loop_.size());
}

const State& LassoTrace::letter(std::uint64_t t) const {
  const std::size_t c = position_class(t);
  return c < prefix_.size() ? prefix_[c] : loop_[c - prefix_.size()];
}

std::vector<StateBits> encode_states(std::span<const State> states,
                                     std::span<const std::string> props) {
  std::vector<StateBits> out;
  out.reserve(states.size());
  for (const State& s : states) {
    StateBits bits = 0;
    for (std::size_t i = 0; i < props.size(); ++i) {
      if (s.count(props[i])) bits |= StateBits{1} << i;
    }
    out.push_back(bits);
  }
  return out;
}

Evaluator::Evaluator(const Formula& f, std::vector<std::string> props,
                     std::optional<std::string> last_prop)
    : props_(std::move(props)) {
  if (props_.size() > kMaxPropositions) {
    throw std::invalid_argument("at most 64 propositions are supported");
  }
  if (last_prop) {
    auto it = std::find(props_.begin(), props_.end(), *last_prop);
    if (it == props_.end()) {
      last_bit_ = static_cast<int>(props_.size());
      props_.push_back(*last_prop);
      if (props_.size() > kMaxPropositions) {
        throw std::invalid_argument("at most 64 propositions are supported");
      }
    } else {
      last_bit_ = static_cast<int>(it - props_.begin());
    }
  }
  std::vector<std::pair<std::string, std::uint32_t>> memo;
  compile(f, memo);
}

std::uint32_t Evaluator::compile(const Formula& f,
                                 std::vector<std::pair<std::string, std::uint32_t>>& memo) {
  // Structural key over already-compiled children gives hash-consing.
  Instr ins;
  ins.op = f.op();
  ins.interval = f.interval();
  std::string key(1, static_cast<char>(f.op()));
  if (f.op() == Op::Atom) {
    auto it = std::find(props_.begin(), props_.end(), f.name());
    if (it == props_.end()) {
      throw std::invalid_argument("atom '" + f.name() + "' is not in the proposition list");
    }
    ins.bit = static_cast<int>(it - props_.begin());
    key += f.name();
  }
  if (arity(f.op()) >= 1) ins.a = compile(f.lhs(), memo);
  if (arity(f.op()) == 2) ins.b = compile(f.rhs(), memo);
  key += ':' + std::to_string(ins.a) + ':' + std::to_string(ins.b);
  if (has_interval(f.op()) && !f.interval().is_unbounded()) {
    key += '[' + std::to_string(f.interval().lo()) + ',' + std::to_string(f.interval().hi());
  }
  // Linear lookup is fine: programs stay small and compilation happens once.
  for (const auto& [k, idx] : memo) {
    if (k == key) return idx;
  }
  const auto idx = static_cast<std::uint32_t>(program_.size());
  program_.push_back(ins);
  memo.emplace_back(std::move(key), idx);
  return idx;
}

std::size_t Evaluator::periodicity_start(std::size_t prefix_len, std::size_t loop_len) const {
  std::vector<std::size_t> lag(program_.size(), 0);
  for (std::size_t i = 0; i < program_.size(); ++i) {
    const Instr& ins = program_[i];
    std::size_t base = 0;
    if (arity(ins.op) >= 1) base = lag[ins.a];
    if (arity(ins.op) == 2) base = std::max(base, lag[ins.b]);
    std::size_t own = 0;
    if (ins.op == Op::Yesterday || ins.op == Op::WeakYesterday) {
      own = 1;
    } else if (ins.op == Op::Once || ins.op == Op::Historically || ins.op == Op::Since) {
      own = ins.interval.is_unbounded() ? loop_len : ins.interval.hi();
    }
    lag[i] = base + own;
  }
  return prefix_len + (program_.empty() ? 0 : lag.back());
}

void Evaluator::run_finite(std::span<const StateBits> states) {
  if (states.empty()) throw std::invalid_argument("a finite trace needs at least one position");
  loop_start_ = states.size();
  run(states, false);
}

void Evaluator::run_lasso(std::span<const StateBits> prefix, std::span<const StateBits> loop) {
  if (loop.empty()) throw std::invalid_argument("a lasso trace needs a non-empty loop");
  const std::size_t start = periodicity_start(prefix.size(), loop.size());
  const std::size_t n = start + loop.size();
  scratch_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    scratch_[k] = k < prefix.size() ? prefix[k] : loop[(k - prefix.size()) % loop.size()];
  }
  loop_start_ = start;
  run(scratch_, true);
}

void Evaluator::run(std::span<const StateBits> states, bool lasso) {
  lasso_ = lasso;
  positions_ = states.size();
  words_ = (positions_ + 63) / 64;
  bits_.assign(program_.size() * words_, 0);
  for (std::size_t i = 0; i < program_.size(); ++i) compute(i, states, lasso);
}

bool Evaluator::value(std::uint64_t t) const {
  if (program_.empty()) return true;
  std::size_t k;
  if (t < positions_) {
    k = static_cast<std::size_t>(t);
  } else if (lasso_) {
    const std::size_t loop_len = positions_ - loop_start_;
    k = loop_start_ + static_cast<std::size_t>((t - loop_start_) % loop_len);
  } else {
    throw std::out_of_range("position " + std::to_string(t) + " is beyond the trace");
  }
  return get_bit(bits_.data() + (program_.size() - 1) * words_, k);
}

void Evaluator::compute(std::size_t index, std::span<const StateBits> states, bool lasso) {
  const Instr& ins = program_[index];
  const std::size_t n = positions_;
  const std::size_t w = words_;
  std::uint64_t* out = bits_.data() + index * w;
  const std::uint64_t* a = bits_.data() + ins.a * w;
  const std::uint64_t* b = bits_.data() + ins.b * w;
  const std::uint64_t last_word_mask = tail_mask(n);
  const std::size_t loop_start = loop_start_;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  auto succ = [&](std::size_t k) -> std::size_t {
    if (k + 1 < n) return k + 1;
    return lasso ? loop_start : kNone;
  };
  const Interval& iv = ins.interval;

  switch (ins.op) {
    case Op::Atom:
      for (std::size_t k = 0; k < n; ++k) {
        if ((states[k] >> ins.bit) & 1u) set_bit(out, k);
      }
      return;
    case Op::Last:
      if (last_bit_ >= 0) {
        for (std::size_t k = 0; k < n; ++k) {
          if ((states[k] >> last_bit_) & 1u) set_bit(out, k);
        }
      } else if (!lasso) {
        set_bit(out, n - 1);
      }
      return;
    case Op::True:
      for (std::size_t i = 0; i < w; ++i) out[i] = ~std::uint64_t{0};
      out[w - 1] &= last_word_mask;
      return;
    case Op::False:
      return;
    case Op::Not:
      for (std::size_t i = 0; i < w; ++i) out[i] = ~a[i];
      out[w - 1] &= last_word_mask;
      return;
    case Op::And:
      for (std::size_t i = 0; i < w; ++i) out[i] = a[i] & b[i];
      return;
    case Op::Or:
      for (std::size_t i = 0; i < w; ++i) out[i] = a[i] | b[i];
      return;
    case Op::Implies:
      for (std::size_t i = 0; i < w; ++i) out[i] = ~a[i] | b[i];
      out[w - 1] &= last_word_mask;
      return;
    case Op::Iff:
      for (std::size_t i = 0; i < w; ++i) out[i] = ~(a[i] ^ b[i]);
      out[w - 1] &= last_word_mask;
      return;

    case Op::Yesterday:
    case Op::WeakYesterday:
      if (ins.op == Op::WeakYesterday) set_bit(out, 0);
      for (std::size_t k = 1; k < n; ++k) {
        if (get_bit(a, k - 1)) set_bit(out, k);
      }
      return;
    case Op::Once:
    case Op::Historically: {
      const bool exists = ins.op == Op::Once;
      if (iv.is_unbounded()) {
        bool acc = !exists;
        for (std::size_t k = 0; k < n; ++k) {
          acc = exists ? (acc || get_bit(a, k)) : (acc && get_bit(a, k));
          if (acc) set_bit(out, k);
        }
        return;
      }
      for (std::size_t k = 0; k < n; ++k) {
        bool acc = !exists;
        for (std::size_t d = iv.lo(); d <= iv.hi() && d <= k; ++d) {
          if (get_bit(a, k - d) == exists) {
            acc = exists;
            break;
          }
        }
        if (acc) set_bit(out, k);
      }
      return;
    }
    case Op::Since:
      if (iv.is_unbounded()) {
        bool acc = false;
        for (std::size_t k = 0; k < n; ++k) {
          acc = get_bit(b, k) || (get_bit(a, k) && acc);
          if (acc) set_bit(out, k);
        }
        return;
      }
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t d = 0; d <= iv.hi() && d <= k; ++d) {
          const std::size_t j = k - d;
          if (d >= iv.lo() && get_bit(b, j)) {
            set_bit(out, k);
            break;
          }
          if (!get_bit(a, j)) break;
        }
      }
      return;

    case Op::Next:
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t s = succ(k);
        if (s != kNone && get_bit(a, s)) set_bit(out, k);
      }
      return;

    case Op::Eventually:
    case Op::Globally:
    case Op::Until:
    case Op::Release: {
      const Op op = ins.op;
      if (!iv.is_unbounded()) {
        for (std::size_t k = 0; k < n; ++k) {
          bool result;
          switch (op) {
            case Op::Eventually: result = false; break;
            default: result = true; break;
          }
          std::size_t pos = k;
          bool decided = false;
          for (std::size_t d = 0; d <= iv.hi() && pos != kNone && !decided; ++d, pos = succ(pos)) {
            if (op == Op::Until) {
              if (d >= iv.lo()) {
                if (get_bit(b, pos)) {
                  result = true;
                  decided = true;
                } else if (!get_bit(a, pos)) {
                  result = false;
                  decided = true;
                }
              }
              continue;
            }
            if (d < iv.lo()) continue;
            if (op == Op::Eventually && get_bit(a, pos)) {
              result = true;
              decided = true;
            } else if (op == Op::Globally && !get_bit(a, pos)) {
              result = false;
              decided = true;
            } else if (op == Op::Release) {
              if (!get_bit(b, pos)) {
                result = false;
                decided = true;
              } else if (get_bit(a, pos)) {
                result = true;
                decided = true;
              }
            }
          }
          // An until whose window closes without a witness fails.
          if (op == Op::Until && !decided) result = false;
          if (result) set_bit(out, k);
        }
        return;
      }
      // Unbounded: value(k) = step(k, value(succ k)); least fixpoint for F/U,
      // greatest for G/R.  Two passes settle the loop.
      auto step = [&](std::size_t k, bool next_value) {
        switch (op) {
          case Op::Eventually: return get_bit(a, k) || next_value;
          case Op::Globally: return get_bit(a, k) && next_value;
          case Op::Until: return get_bit(b, k) || (get_bit(a, k) && next_value);
          default: return get_bit(b, k) && (get_bit(a, k) || next_value);
        }
      };
      const bool beyond = op == Op::Globally || op == Op::Release;
      bool carry = beyond;
      if (lasso) {
        for (int pass = 0; pass < 2; ++pass) {
          for (std::size_t k = n; k-- > loop_start;) {
            carry = step(k, carry);
            if (pass == 1 || k == loop_start) {
              if (carry) {
                set_bit(out, k);
              } else {
                out[k >> 6] &= ~(std::uint64_t{1} << (k & 63));
              }
            }
          }
        }
        carry = get_bit(out, loop_start);
        for (std::size_t k = loop_start; k-- > 0;) {
          carry = step(k, carry);
          if (carry) set_bit(out, k);
        }
      } else {
        for (std::size_t k = n; k-- > 0;) {
          carry = step(k, carry);
          if (carry) set_bit(out, k);
        }
      }
      return;
    }
  }
}

bool eval(const Formula& f, const Trace& rho, std::size_t t) {
  if (t >= rho.size()) {
    throw std::out_of_range("position " + std::to_string(t) + " is beyond a trace of length " +
                            std::to_string(rho.size()));
  }
  auto names = atoms(f);
  std::vector<std::string> props(names.begin(), names.end());
  Evaluator ev(f, props);
  auto bits = encode_states(rho.states(), props);
  ev.run_finite(bits);
  return ev.value(t);
}

bool eval_lasso(const Formula& f, const LassoTrace& rho, std::uint64_t t) {
  auto names = atoms(f);
  std::vector<std::string> props(names.begin(), names.end());
  Evaluator ev(f, props);
  auto prefix = encode_states(rho.prefix(), props);
  auto loop = encode_states(rho.loop(), props);
  ev.run_lasso(prefix, loop);
  return ev.value(t);
}

bool holds_globally(const Formula& f, const Trace& rho) {
  auto names = atoms(f);
  std::vector<std::string> props(names.begin(), names.end());
  Evaluator ev(f, props);
  auto bits = encode_states(rho.states(), props);
  ev.run_finite(bits);
  for (std::size_t t = 0; t < rho.size(); ++t) {
    if (!ev.value(t)) return false;
  }
  return true;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

State parse_state(std::string_view line, std::size_t line_no) {
  State s;
  if (line == "-") return s;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t end = line.find(',', start);
    if (end == std::string_view::npos) end = line.size();
    std::string_view name = trim(line.substr(start, end - start));
    bool ok = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
    for (char c : name) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ok) {
      throw ParseError("invalid proposition name '" + std::string(name) + "'", line_no);
    }
    s.emplace(name);
    start = end + 1;
  }
  return s;
}

void append_states(std::string& out, const std::vector<State>& states) {
  for (const State& s : states) {
    if (s.empty()) {
      out += '-';
    } else {
      bool first = true;
      for (const auto& name : s) {
        if (!first) out += ',';
        out += name;
        first = false;
      }
    }
    out += '\n';
  }
}

}  // namespace

TraceDocument parse_trace_text(std::string_view text) {
  std::vector<State> prefix;
  std::vector<State> loop;
  bool in_loop = false;
  std::optional<std::uint64_t> t;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    const std::size_t this_line = line_no++;
    if (line.empty()) continue;
    if (t) throw ParseError("content after the t= trailer", this_line);
    if (line == kLoopMarker) {
      if (in_loop) throw ParseError("duplicate loop marker", this_line);
      in_loop = true;
      continue;
    }
    if (line.starts_with("t=")) {
      std::uint64_t value = 0;
      auto digits = line.substr(2);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw ParseError("invalid position trailer", this_line);
      }
      t = value;
      continue;
    }
    (in_loop ? loop : prefix).push_back(parse_state(line, this_line));
  }
  if (in_loop) {
    if (loop.empty()) throw ParseError("empty loop section", line_no);
    return TraceDocument{LassoTrace(std::move(prefix), std::move(loop)), t};
  }
  if (prefix.empty()) throw ParseError("empty trace", line_no);
  return TraceDocument{Trace(std::move(prefix)), t};
}

std::string format_trace(const Trace& rho) {
  std::string out;
  append_states(out, rho.states());
  return out;
}

std::string format_trace(const LassoTrace& rho) {
  std::string out;
  append_states(out, rho.prefix());
  out += kLoopMarker;
  out += '\n';
  append_states(out, rho.loop());
  return out;
}

}  // namespace fret2mtl
