#include <gtest/gtest.h>

#include <random>

#include "fret2mtl/formula_text.hpp"
#include "fret2mtl/mtl.hpp"
#include "support/generators.hpp"

using namespace fret2mtl;

namespace {

const char* kFvGold =
    "G ( ( (Scope & Condition) & Z ! (Scope & Condition)) -> ((Response V ! StopCondition) | "
    "((Scope & X ! Scope) V ! StopCondition)))";

Formula rename_atoms(const Formula& f, const std::string& suffix) {
  switch (f.op()) {
    case Op::Atom: return atom(f.name() + suffix);
    case Op::Last:
    case Op::True:
    case Op::False: return f;
    case Op::Not: return neg(rename_atoms(f.lhs(), suffix));
    case Op::And: return conj(rename_atoms(f.lhs(), suffix), rename_atoms(f.rhs(), suffix));
    case Op::Or: return disj(rename_atoms(f.lhs(), suffix), rename_atoms(f.rhs(), suffix));
    case Op::Implies: return implies(rename_atoms(f.lhs(), suffix), rename_atoms(f.rhs(), suffix));
    case Op::Iff: return iff(rename_atoms(f.lhs(), suffix), rename_atoms(f.rhs(), suffix));
    case Op::Yesterday: return yesterday(rename_atoms(f.lhs(), suffix));
    case Op::WeakYesterday: return weak_yesterday(rename_atoms(f.lhs(), suffix));
    case Op::Once: return once(rename_atoms(f.lhs(), suffix), f.interval());
    case Op::Historically: return historically(rename_atoms(f.lhs(), suffix), f.interval());
    case Op::Since:
      return since(rename_atoms(f.lhs(), suffix), rename_atoms(f.rhs(), suffix), f.interval());
    case Op::Next: return next(rename_atoms(f.lhs(), suffix));
    case Op::Eventually: return eventually(rename_atoms(f.lhs(), suffix), f.interval());
    case Op::Globally: return always(rename_atoms(f.lhs(), suffix), f.interval());
    case Op::Until:
      return until(rename_atoms(f.lhs(), suffix), rename_atoms(f.rhs(), suffix), f.interval());
    case Op::Release:
      return release(rename_atoms(f.lhs(), suffix), rename_atoms(f.rhs(), suffix), f.interval());
  }
  return f;
}

}  // namespace

TEST(Interval, Membership) {
  EXPECT_TRUE(Interval::unbounded().contains(1000000));
  const Interval i = Interval::bounded(1, 3);
  EXPECT_FALSE(i.contains(0));
  EXPECT_TRUE(i.contains(1));
  EXPECT_TRUE(i.contains(3));
  EXPECT_FALSE(i.contains(4));
  EXPECT_THROW(Interval::bounded(3, 1), std::invalid_argument);
}

TEST(Formula, DefaultIsTrue) { EXPECT_EQ(Formula().op(), Op::True); }

TEST(Formula, StructuralEquality) {
  EXPECT_EQ(conj(atom("p"), atom("q")), conj(atom("p"), atom("q")));
  EXPECT_NE(conj(atom("p"), atom("q")), conj(atom("q"), atom("p")));
  EXPECT_NE(eventually(atom("p")), eventually(atom("p"), Interval::bounded(0, 3)));
}

TEST(Formula, RejectsBadAtomNames) {
  EXPECT_THROW(atom("LAST"), std::invalid_argument);
  EXPECT_THROW(atom("G"), std::invalid_argument);
  EXPECT_THROW(atom("1abc"), std::invalid_argument);
  EXPECT_THROW(atom(""), std::invalid_argument);
  EXPECT_NO_THROW(atom("_x1"));
}

TEST(Formula, NextPower) {
  EXPECT_EQ(next_power(atom("p"), 0), atom("p"));
  EXPECT_EQ(next_power(atom("p"), 3), next(next(next(atom("p")))));
}

TEST(Metrics, Leaf) {
  EXPECT_EQ(metrics(atom("p")), (MetricsReport{1, 0, 1, 0}));
}

TEST(Metrics, OneOperator) {
  EXPECT_EQ(metrics(always(atom("p"))), (MetricsReport{2, 1, 1, 1}));
}

TEST(Metrics, LastCountsAsProposition) {
  EXPECT_EQ(metrics(release(last(), atom("p"))), (MetricsReport{3, 1, 2, 1}));
}

TEST(Metrics, IntervalsAddNothing) {
  EXPECT_EQ(metrics(eventually(atom("p"), Interval::bounded(0, 7))).size, 2u);
}

TEST(Metrics, GoldFvSnapshot) {
  // Hand count over the printed formula: 24 nodes; G, Z, two V and one X;
  // nine atom occurrences; V above X under G gives depth 3.
  EXPECT_EQ(metrics(parse_formula(kFvGold)), (MetricsReport{24, 5, 9, 3}));
}

TEST(Metrics, Invariants) {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Formula f = gen::random_formula(rng, {.max_depth = 5});
    const MetricsReport m = metrics(f);
    EXPECT_LE(m.temp_ops, m.size);
    EXPECT_LE(m.props, m.size);
    EXPECT_LE(m.temporal_depth, m.temp_ops);
    EXPECT_EQ(metrics(neg(f)).size, m.size + 1);
    EXPECT_EQ(metrics(always(f, Interval::bounded(0, 2))).temporal_depth, m.temporal_depth + 1);
    EXPECT_EQ(metrics(rename_atoms(f, "_renamed")), m);
  }
}

TEST(Atoms, Examples) {
  EXPECT_EQ(atoms(conj(atom("p"), atom("p"))), (std::set<std::string>{"p"}));
  EXPECT_TRUE(atoms(top()).empty());
  EXPECT_TRUE(atoms(release(last(), top())).empty());
  EXPECT_EQ(atoms(parse_formula(kFvGold)),
            (std::set<std::string>{"Scope", "Condition", "Response", "StopCondition"}));
}

TEST(Classification, PastAndFuture) {
  EXPECT_TRUE(is_past_only(once(yesterday(atom("p")))));
  EXPECT_FALSE(is_past_only(next(atom("p"))));
  EXPECT_TRUE(is_future_only(until(atom("p"), atom("q"))));
  EXPECT_FALSE(is_future_only(since(atom("p"), atom("q"))));
  EXPECT_TRUE(contains_op(parse_formula(kFvGold), Op::WeakYesterday));
}
