#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "fret2mtl/formula_text.hpp"
#include "fret2mtl/traces.hpp"
#include "support/generators.hpp"

using namespace fret2mtl;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(TEST_DATA_DIR) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string squeeze(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

}  // namespace

TEST(Parse, Constants) {
  EXPECT_EQ(parse_formula("TRUE"), top());
  EXPECT_EQ(parse_formula("FALSE"), bottom());
  EXPECT_EQ(parse_formula("LAST"), last());
}

TEST(Parse, BoundedOperator) {
  EXPECT_EQ(parse_formula("F[0,3] p"), eventually(atom("p"), Interval::bounded(0, 3)));
  EXPECT_EQ(parse_formula("p U[1,2] q"), until(atom("p"), atom("q"), Interval::bounded(1, 2)));
}

TEST(Parse, GoldFv) {
  const Formula scope_cond = conj(atom("Scope"), atom("Condition"));
  const Formula stop = neg(atom("StopCondition"));
  const Formula expected = always(implies(
      conj(scope_cond, weak_yesterday(neg(scope_cond))),
      disj(release(atom("Response"), stop),
           release(conj(atom("Scope"), next(neg(atom("Scope")))), stop))));
  EXPECT_EQ(parse_formula_file(read_data("gold_fv.ltl"), false).at(0), expected);
}

TEST(Parse, GoldFretParses) {
  const auto fs = parse_formula_file(read_data("gold_fret.ltl"), false);
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_EQ(atoms(fs[0]),
            (std::set<std::string>{"Scope", "Condition", "Response", "StopCondition"}));
}

TEST(Parse, VAndRAreBothRelease) {
  EXPECT_EQ(parse_formula("p V q"), parse_formula("p R q"));
  EXPECT_EQ(parse_formula("p V q").op(), Op::Release);
}

TEST(Parse, Precedence) {
  EXPECT_EQ(parse_formula("a | b & c"), disj(atom("a"), conj(atom("b"), atom("c"))));
  EXPECT_EQ(parse_formula("a -> b -> c"), implies(atom("a"), implies(atom("b"), atom("c"))));
  EXPECT_EQ(parse_formula("a <-> b -> c"), iff(atom("a"), implies(atom("b"), atom("c"))));
  EXPECT_EQ(parse_formula("a U b U c"), until(until(atom("a"), atom("b")), atom("c")));
  EXPECT_EQ(parse_formula("a & b U c"), conj(atom("a"), until(atom("b"), atom("c"))));
  EXPECT_EQ(parse_formula("! a U b"), until(neg(atom("a")), atom("b")));
  EXPECT_EQ(parse_formula("G F p"), always(eventually(atom("p"))));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_formula("F[3,1] p"), ParseError);
  EXPECT_THROW(parse_formula("p &"), ParseError);
  EXPECT_THROW(parse_formula("(p"), ParseError);
  EXPECT_THROW(parse_formula("p q"), ParseError);
  EXPECT_THROW(parse_formula("X[0,1] p"), ParseError);
  EXPECT_THROW(parse_formula("p # q"), ParseError);
  EXPECT_THROW(parse_formula(""), ParseError);
  try {
    parse_formula("p & & q");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Print, Canonical) {
  EXPECT_EQ(squeeze(print_formula(always(atom("p")))), "Gp");
  EXPECT_EQ(squeeze(print_formula(until(atom("p"), atom("q"), Interval::bounded(0, 2)))),
            "(pU[0,2]q)");
}

TEST(Print, GoldFvMatchesFigureText) {
  const std::string text = read_data("gold_fv.ltl");
  EXPECT_EQ(squeeze(print_formula(parse_formula(text))), squeeze(text));
}

TEST(Print, NuXmvUnrollsBoundedEventually) {
  EXPECT_EQ(squeeze(print_formula(eventually(atom("p"), Interval::bounded(0, 1)), Dialect::NuXmvLtl)),
            "(p|(Xp))");
}

TEST(Print, NuXmvHasNoBounds) {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::string s = print_formula(gen::random_formula(rng), Dialect::NuXmvLtl);
    EXPECT_EQ(s.find('['), std::string::npos) << s;
  }
}

TEST(RoundTrip, RandomCanonical) {
  std::mt19937 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = gen::random_formula(rng, {.max_depth = 6});
    EXPECT_EQ(parse_formula(print_formula(f)), f) << print_formula(f);
  }
}

TEST(RoundTrip, GoldFv) {
  const Formula f = parse_formula(read_data("gold_fv.ltl"));
  EXPECT_EQ(parse_formula(print_formula(f)), f);
}

TEST(Expansion, PreservesFiniteSemantics) {
  std::mt19937 rng(2);
  const std::vector<std::string> props{"p", "q", "r"};
  for (int i = 0; i < 500; ++i) {
    const Formula f = gen::random_formula(rng);
    const Formula g = parse_formula(print_formula(f, Dialect::NuXmvLtl));
    const Trace rho = gen::random_trace(rng, props, 7);
    for (std::size_t t = 0; t < rho.size(); ++t) {
      ASSERT_EQ(eval(f, rho, t), eval(g, rho, t)) << print_formula(f) << " at " << t;
    }
  }
}

TEST(Expansion, PreservesInfiniteSemantics) {
  std::mt19937 rng(3);
  const std::vector<std::string> props{"p", "q", "r"};
  for (int i = 0; i < 500; ++i) {
    const Formula f = gen::random_formula(rng, {.last = false});
    const Formula g = expand_bounds(f);
    const LassoTrace rho = gen::random_lasso(rng, props, 3, 3);
    for (std::uint64_t t = 0; t < 10; ++t) {
      ASSERT_EQ(eval_lasso(f, rho, t), eval_lasso(g, rho, t)) << print_formula(f) << " at " << t;
    }
  }
}

TEST(FormulaFile, CommentsAndModes) {
  const std::string body = "# header\n\np & q\n  # indented comment\nG r\n";
  const auto per_line = parse_formula_file(body, true);
  ASSERT_EQ(per_line.size(), 2u);
  EXPECT_EQ(per_line[1], always(atom("r")));
  EXPECT_THROW(parse_formula_file(body, false), ParseError);
  const auto joined = parse_formula_file("# x\n(p &\n q)\n", false);
  ASSERT_EQ(joined.size(), 1u);
  EXPECT_EQ(joined[0], conj(atom("p"), atom("q")));
}
