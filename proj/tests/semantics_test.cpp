#include <gtest/gtest.h>

#include "signet/semantics.hpp"
#include "signet/syntax.hpp"
#include "support/oracle.hpp"

using namespace signet;

namespace {

Variable v(const std::string& name) { return make_variable(name); }

// Engine index of a set of elements.
Value mask(std::initializer_list<int> elems) {
  Value m = 0;
  for (int e : elems) m |= Value{1} << e;
  return m;
}

// Decodes an engine set-of-elements value into oracle form.
oracle::Val decode_elem_set(Value m, int d) {
  std::set<oracle::Val> out;
  for (int i = 0; i < d; ++i)
    if ((m >> i) & 1U) out.insert(oracle::elem(i));
  return oracle::set_of(out);
}

}  // namespace

TEST(RangeSize, PerSort) {
  EXPECT_EQ(range_size(Sort::elem(), 3), 3u);
  EXPECT_EQ(range_size(Sort::tuple(2), 3), 9u);
  EXPECT_EQ(range_size(Sort::set_of(Sort::elem()), 3), 8u);
  EXPECT_EQ(range_size(Sort::set_of(Sort::set_of(Sort::elem())), 3), 256u);
  EXPECT_THROW(range_size(Sort::set_of(Sort::set_of(Sort::elem())), 7), Error);
}

TEST(Eval, AtomUnderAssignment) {
  Assignment a;
  a.set(v("x0"), 0);
  a.set(v("A0"), mask({0}));
  EXPECT_TRUE(eval(*parse_formula("(x0 in A0)"), Interpretation{1}, a));
}

TEST(Eval, ExistsSetAgreesWithOracle) {
  auto f = parse_formula("exists(A0) [(x0 in A0)]");
  Assignment a;
  a.set(v("x0"), 1);
  const bool engine = eval(*f, Interpretation{2}, a);
  EXPECT_EQ(engine, oracle::holds(*f, 2, {{"x0", oracle::elem(1)}}));
  EXPECT_TRUE(engine);
}

TEST(Eval, ForallSetFalsifiedByEmptySet) {
  auto f = parse_formula("forall(A0) [(x0 in A0)]");
  Assignment a;
  a.set(v("x0"), 0);
  const bool engine = eval(*f, Interpretation{1}, a);
  EXPECT_EQ(engine, oracle::holds(*f, 1, {{"x0", oracle::elem(0)}}));
  EXPECT_FALSE(engine);
}

TEST(Eval, MissingVariableIsReported) {
  try {
    eval(*parse_formula("(x0 in A0)"), Interpretation{1}, Assignment{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IncompleteAssignment);
  }
}

TEST(EvalTerm, IntersectionAgainstOracle) {
  auto t = parse_term("{x0 | ((x0 in A0) & (x0 in A1))}");
  Assignment a;
  a.set(v("A0"), mask({0}));
  a.set(v("A1"), mask({0, 1}));
  const Value engine = eval_term(*t, Interpretation{2}, a);
  const auto expected =
      oracle::value(*t, 2, {{"A0", oracle::set_of_elems({0})}, {"A1", oracle::set_of_elems({0, 1})}});
  EXPECT_EQ(decode_elem_set(engine, 2), expected);
  EXPECT_EQ(format_value(engine, Sort::set_of(Sort::elem()), 2), "{0}");
}

TEST(EvalTerm, ProductAgainstOracle) {
  auto t = parse_term("{x0, x1 | ((x0 in A0) & (x1 in A1))}");
  Assignment a;
  a.set(v("A0"), mask({0}));
  a.set(v("A1"), mask({1}));
  const Value engine = eval_term(*t, Interpretation{2}, a);
  const auto expected =
      oracle::value(*t, 2, {{"A0", oracle::set_of_elems({0})}, {"A1", oracle::set_of_elems({1})}});
  ASSERT_EQ(expected.members.size(), 1u);
  EXPECT_EQ(expected.members.begin()->tuple, (std::vector<int>{0, 1}));
  EXPECT_EQ(format_value(engine, Sort::set_of(Sort::tuple(2)), 2), "{⟨0, 1⟩}");
}

TEST(EvalTerm, PowersetOfEmptySet) {
  auto t = parse_term("{A1 | forall(x0) [((x0 in A0) | ~(x0 in A1))]}");
  Assignment a;
  a.set(v("A0"), 0);
  const Value engine = eval_term(*t, Interpretation{1}, a);
  const auto expected = oracle::value(*t, 1, {{"A0", oracle::set_of({})}});
  ASSERT_EQ(expected.members.size(), 1u);
  EXPECT_TRUE(expected.members.begin()->members.empty());
  EXPECT_EQ(format_value(engine, Sort::set_of(Sort::set_of(Sort::elem())), 1), "{∅}");
}

TEST(Classify, ReferenceLabels) {
  EXPECT_EQ(classify(*parse_formula("forall(A0) [(x0 in A0)]"), 3).label(), "UnsatUpTo(3)");
  EXPECT_EQ(classify(*parse_formula("exists(A0) [(x0 in A0)]"), 3).label(), "ValidUpTo(3)");
  EXPECT_EQ(classify(*parse_formula("(x0 in A0)"), 3).label(), "Contingent");
}

TEST(Classify, WitnessesEvaluateAsClaimed) {
  auto f = parse_formula("((x0 in A0) & ~(x0 in A1))");
  auto c = classify(*f, 3);
  ASSERT_TRUE(c.witness_true && c.witness_false);
  EXPECT_TRUE(eval(*f, Interpretation{c.witness_true->domain_size}, c.witness_true->assignment));
  EXPECT_FALSE(eval(*f, Interpretation{c.witness_false->domain_size}, c.witness_false->assignment));
}

TEST(Classify, AgreesWithOracleOnSmallFormulae) {
  for (const char* text : {"forall(x0) [(x0 in A0)]", "exists(x0) [((x0 in A0) & ~(x0 in A0))]",
                           "forall(A0) [exists(x0) [((x0 in A0) | ~(x0 in A0))]]",
                           "((x0 in A0) | ~(x0 in A0))"}) {
    auto f = parse_formula(text);
    const auto vars = free_vars(*f);
    bool any_true = false;
    bool any_false = false;
    for (int d = 1; d <= 3; ++d)
      oracle::for_all_envs(vars, d, [&](const oracle::Env& env) {
        (oracle::holds(*f, d, env) ? any_true : any_false) = true;
        return true;
      });
    const auto c = classify(*f, 3);
    const auto expected = any_true && any_false ? Classification::Verdict::Contingent
                          : any_true            ? Classification::Verdict::ValidUpTo
                                                : Classification::Verdict::UnsatUpTo;
    EXPECT_EQ(c.verdict, expected) << text;
  }
}

TEST(Budget, ExhaustionIsResourceLimit) {
  // Valid, so every assignment at every size is visited.
  try {
    classify(*parse_formula("forall(A0) [forall(A1) [exists(x0) [((x0 in A0) | ~(x0 in A0))]]]"), 3, 50);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResourceLimit);
  }
}

TEST(Extensional, IntersectionCommutesUnderSwappedParameters) {
  auto a = parse("{x0 | ((x0 in A0) & (x0 in A1))}");
  auto b = parse("{x0 | ((x0 in A1) & (x0 in A0))}");
  EXPECT_TRUE(extensionally_equal(a, b, 3).equal);
  // Same comparison through an explicit swap of the parameters.
  auto c = parse("{x0 | ((x0 in A0) & (x0 in A1))}");
  EXPECT_TRUE(extensionally_equal(a, c, 3, {{"A0", "A1"}, {"A1", "A0"}}).equal);
}

TEST(Extensional, DifferenceVersusIntersectionFirstCounterexample) {
  auto diff = parse("{x0 | ((x0 in A0) & ~(x0 in A1))}");
  auto inter = parse("{x0 | ((x0 in A0) & (x0 in A1))}");
  auto r = extensionally_equal(diff, inter, 3);
  ASSERT_FALSE(r.equal);
  ASSERT_TRUE(r.counterexample);
  // Odometer order over (A0, A1) at d=1 visits (∅,∅), (∅,{0}), ({0},∅) and
  // stops at the first disagreement.
  EXPECT_EQ(r.counterexample->domain_size, 1);
  EXPECT_EQ(r.counterexample->str(), "d=1, A0={0}, A1=∅: {0} vs ∅");
  // The oracle confirms the reported assignment is a genuine disagreement,
  // as is the one with A1={0}.
  oracle::Env env{{"A0", oracle::set_of_elems({0})}, {"A1", oracle::set_of({})}};
  EXPECT_NE(oracle::value(*as_term(diff), 1, env), oracle::value(*as_term(inter), 1, env));
  oracle::Env other{{"A0", oracle::set_of_elems({0})}, {"A1", oracle::set_of_elems({0})}};
  EXPECT_NE(oracle::value(*as_term(diff), 1, other), oracle::value(*as_term(inter), 1, other));
}

TEST(Extensional, Reflexive) {
  auto f = parse("forall(x0) [((x0 in A0) | ~(x0 in A1))]");
  EXPECT_TRUE(extensionally_equal(f, f, 3).equal);
}

TEST(Extensional, ProfileMismatches) {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code([] { extensionally_equal(parse("(x0 in A0)"), parse("{x0 | (x0 in A0)}")); }),
            ErrorCode::ProfileMismatch);
  EXPECT_EQ(code([] { extensionally_equal(parse("{x0 | (x0 in A0)}"), parse("{A0 | (x0 in A0)}")); }),
            ErrorCode::ProfileMismatch);
  EXPECT_EQ(code([] {
              extensionally_equal(parse("((x0 in A0) & (x0 in A1))"), parse("((x0 in A0) & (x0 in A1))"), 3,
                                  {{"A0", "A1"}, {"A1", "A1"}});
            }),
            ErrorCode::ProfileMismatch);
}

TEST(Assignments, OdometerOrder) {
  std::vector<std::string> seen;
  for_each_assignment({v("x0"), v("A0")}, 2, [&](const Assignment& a) {
    seen.push_back(a.str(2));
    return true;
  });
  EXPECT_EQ(seen, (std::vector<std::string>{"x0=0, A0=∅", "x0=0, A0={0}", "x0=0, A0={1}", "x0=0, A0={0, 1}",
                                            "x0=1, A0=∅", "x0=1, A0={0}", "x0=1, A0={1}", "x0=1, A0={0, 1}"}));
}
