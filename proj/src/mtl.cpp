#include "fret2mtl/mtl.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace fret2mtl {

struct FormulaNode {
  Op op;
  std::string name;
  Interval interval;
  std::shared_ptr<const FormulaNode> lhs;
  std::shared_ptr<const FormulaNode> rhs;
};

struct FormulaBuilder {
  static Formula make(Op op, std::string name, Interval interval,
                      const Formula* lhs, const Formula* rhs) {
    auto node = std::make_shared<FormulaNode>(FormulaNode{
        op, std::move(name), interval, lhs ? lhs->node_ : nullptr,
        rhs ? rhs->node_ : nullptr});
    return Formula(std::move(node));
  }
  static Formula wrap(const std::shared_ptr<const FormulaNode>& node) {
    return Formula(node);
  }
  static const std::shared_ptr<const FormulaNode>& node(const Formula& f) {
    return f.node_;
  }
};

namespace {

const std::shared_ptr<const FormulaNode>& true_node() {
  static const auto node = std::make_shared<const FormulaNode>(
      FormulaNode{Op::True, {}, Interval::unbounded(), nullptr, nullptr});
  return node;
}

Formula unary(Op op, const Formula& f, Interval i = Interval::unbounded()) {
  return FormulaBuilder::make(op, {}, i, &f, nullptr);
}

Formula binary(Op op, const Formula& a, const Formula& b,
               Interval i = Interval::unbounded()) {
  return FormulaBuilder::make(op, {}, i, &a, &b);
}

bool equal_nodes(const FormulaNode* a, const FormulaNode* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->name != b->name || !(a->interval == b->interval)) {
    return false;
  }
  return equal_nodes(a->lhs.get(), b->lhs.get()) &&
         equal_nodes(a->rhs.get(), b->rhs.get());
}

constexpr std::array<std::string_view, 14> kReserved = {
    "TRUE", "FALSE", "LAST", "G", "F", "X", "U", "V", "R", "S", "H", "O", "Y", "Z"};

}  // namespace

Interval Interval::bounded(std::uint32_t lo, std::uint32_t hi) {
  if (lo > hi) {
    throw std::invalid_argument("interval lower bound " + std::to_string(lo) +
                                " exceeds upper bound " + std::to_string(hi));
  }
  Interval i;
  i.unbounded_ = false;
  i.lo_ = lo;
  i.hi_ = hi;
  return i;
}

std::size_t arity(Op op) noexcept {
  switch (op) {
    case Op::Atom:
    case Op::Last:
    case Op::True:
    case Op::False:
      return 0;
    case Op::Not:
    case Op::Yesterday:
    case Op::WeakYesterday:
    case Op::Once:
    case Op::Historically:
    case Op::Next:
    case Op::Eventually:
    case Op::Globally:
      return 1;
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
    case Op::Since:
    case Op::Until:
    case Op::Release:
      return 2;
  }
  return 0;
}

bool is_past(Op op) noexcept {
  switch (op) {
    case Op::Yesterday:
    case Op::WeakYesterday:
    case Op::Once:
    case Op::Historically:
    case Op::Since:
      return true;
    default:
      return false;
  }
}

bool is_temporal(Op op) noexcept {
  switch (op) {
    case Op::Next:
    case Op::Eventually:
    case Op::Globally:
    case Op::Until:
    case Op::Release:
      return true;
    default:
      return is_past(op);
  }
}

bool has_interval(Op op) noexcept {
  switch (op) {
    case Op::Once:
    case Op::Historically:
    case Op::Since:
    case Op::Eventually:
    case Op::Globally:
    case Op::Until:
    case Op::Release:
      return true;
    default:
      return false;
  }
}

Formula::Formula() : node_(true_node()) {}

Op Formula::op() const noexcept { return node_->op; }
const std::string& Formula::name() const noexcept { return node_->name; }
const Interval& Formula::interval() const noexcept { return node_->interval; }

Formula Formula::lhs() const {
  if (!node_->lhs) throw std::logic_error("formula node has no operand");
  return FormulaBuilder::wrap(node_->lhs);
}

Formula Formula::rhs() const {
  if (!node_->rhs) throw std::logic_error("formula node has no right operand");
  return FormulaBuilder::wrap(node_->rhs);
}

bool operator==(const Formula& a, const Formula& b) {
  return equal_nodes(a.node_.get(), b.node_.get());
}

bool is_reserved_word(std::string_view name) noexcept {
  return std::find(kReserved.begin(), kReserved.end(), name) != kReserved.end();
}

bool is_valid_identifier(std::string_view name) noexcept {
  if (name.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name.front())) return false;
  for (char c : name) {
    if (!alpha(c) && !digit(c)) return false;
  }
  return !is_reserved_word(name);
}

Formula atom(std::string name) {
  if (!is_valid_identifier(name)) {
    throw std::invalid_argument("invalid atom name '" + name + "'");
  }
  return FormulaBuilder::make(Op::Atom, std::move(name), Interval::unbounded(),
                              nullptr, nullptr);
}

Formula last() {
  return FormulaBuilder::make(Op::Last, {}, Interval::unbounded(), nullptr, nullptr);
}
Formula top() { return Formula(); }
Formula bottom() {
  return FormulaBuilder::make(Op::False, {}, Interval::unbounded(), nullptr, nullptr);
}

Formula neg(Formula f) { return unary(Op::Not, f); }
Formula conj(Formula a, Formula b) { return binary(Op::And, a, b); }
Formula disj(Formula a, Formula b) { return binary(Op::Or, a, b); }
Formula implies(Formula a, Formula b) { return binary(Op::Implies, a, b); }
Formula iff(Formula a, Formula b) { return binary(Op::Iff, a, b); }
Formula yesterday(Formula f) { return unary(Op::Yesterday, f); }
Formula weak_yesterday(Formula f) { return unary(Op::WeakYesterday, f); }
Formula once(Formula f, Interval i) { return unary(Op::Once, f, i); }
Formula historically(Formula f, Interval i) { return unary(Op::Historically, f, i); }
Formula since(Formula a, Formula b, Interval i) { return binary(Op::Since, a, b, i); }
Formula next(Formula f) { return unary(Op::Next, f); }
Formula eventually(Formula f, Interval i) { return unary(Op::Eventually, f, i); }
Formula always(Formula f, Interval i) { return unary(Op::Globally, f, i); }
Formula until(Formula a, Formula b, Interval i) { return binary(Op::Until, a, b, i); }
Formula release(Formula a, Formula b, Interval i) {
  return binary(Op::Release, a, b, i);
}

Formula next_power(Formula f, std::uint32_t count) {
  for (std::uint32_t i = 0; i < count; ++i) f = next(f);
  return f;
}

namespace {

MetricsReport metrics_of(const FormulaNode& n) {
  MetricsReport r;
  r.size = 1;
  if (n.op == Op::Atom || n.op == Op::Last) r.props = 1;
  std::size_t child_depth = 0;
  for (const auto* child : {n.lhs.get(), n.rhs.get()}) {
    if (!child) continue;
    MetricsReport c = metrics_of(*child);
    r.size += c.size;
    r.temp_ops += c.temp_ops;
    r.props += c.props;
    child_depth = std::max(child_depth, c.temporal_depth);
  }
  if (is_temporal(n.op)) {
    r.temp_ops += 1;
    r.temporal_depth = child_depth + 1;
  } else {
    r.temporal_depth = child_depth;
  }
  return r;
}

template <typename Visit>
void visit_nodes(const FormulaNode& n, Visit&& visit) {
  visit(n);
  if (n.lhs) visit_nodes(*n.lhs, visit);
  if (n.rhs) visit_nodes(*n.rhs, visit);
}

}  // namespace

MetricsReport metrics(const Formula& f) {
  return metrics_of(*FormulaBuilder::node(f));
}

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  visit_nodes(*FormulaBuilder::node(f), [&](const FormulaNode& n) {
    if (n.op == Op::Atom) out.insert(n.name);
  });
  return out;
}

bool contains_op(const Formula& f, Op op) {
  bool found = false;
  visit_nodes(*FormulaBuilder::node(f), [&](const FormulaNode& n) {
    found = found || n.op == op;
  });
  return found;
}

bool is_past_only(const Formula& f) {
  bool future = false;
  visit_nodes(*FormulaBuilder::node(f), [&](const FormulaNode& n) {
    future = future || (is_temporal(n.op) && !is_past(n.op));
  });
  return !future;
}

bool is_future_only(const Formula& f) {
  bool past = false;
  visit_nodes(*FormulaBuilder::node(f), [&](const FormulaNode& n) {
    past = past || is_past(n.op);
  });
  return !past;
}

}  // namespace fret2mtl
