#include <gtest/gtest.h>

#include "signet/enumerator.hpp"
#include "signet/syntax.hpp"
#include "signet/theory.hpp"
#include "support/decode.hpp"

using namespace signet;

namespace {

Variable v(const std::string& name) { return make_variable(name); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

void expect_genuine(const IdentityCase& c) {
  ASSERT_FALSE(c.pass);
  ASSERT_TRUE(c.counterexample);
  const int d = c.counterexample->domain_size;
  EXPECT_TRUE(oracle::disagree_at(c.lhs, c.rhs, d, oracle::decode(c.counterexample->assignment, d)))
      << c.counterexample->str();
}

}  // namespace

TEST(InferBound, ElementThenSet) {
  EXPECT_EQ(infer_bound(*parse_formula("((x0 in A0) & (x0 in A1))")).name, "x0");
  EXPECT_EQ(infer_bound(*parse_formula("forall(x0) [(x0 in A0)]")).name, "A0");
  EXPECT_EQ(code_of([] { infer_bound(*parse_formula("((x0 in A0) & (x1 in A0))")); }), ErrorCode::ProfileMismatch);
  EXPECT_EQ(code_of([] { infer_bound(*parse_formula("forall(x0) [((x0 in A0) | (x0 in A1))]")); }),
            ErrorCode::ProfileMismatch);
}

TEST(Product, AtomsGiveTheProductSet) {
  auto c = check_product_identity(parse_formula("(x0 in A0)"), parse_formula("(x1 in A1)"), 3);
  EXPECT_TRUE(c.pass);
  EXPECT_FALSE(c.counterexample);
  EXPECT_EQ(c.identity, Identity::ProductOfTruthSets);
  EXPECT_EQ(render(c.rhs), "{x0, x1 | ((x0 ∈ A0) & (x1 ∈ A1))}");
  // Both sides denote the product set stored as row 26.
  auto s = replay_table1_construction();
  EXPECT_TRUE(oracle::agree(c.lhs, s.at(26).payload, 3));
  EXPECT_TRUE(oracle::agree(c.rhs, s.at(26).payload, 3));
}

TEST(Product, WithNegatedFactor) {
  auto c = check_product_identity(parse_formula("(x0 in A0)"), parse_formula("~(x1 in A0)"), 3);
  EXPECT_TRUE(c.pass);
  EXPECT_TRUE(oracle::agree(c.lhs, c.rhs, 3));
}

TEST(Product, DisjunctionControlFails) {
  auto c = check_product_identity(parse_formula("(x0 in A0)"), parse_formula("(x1 in A1)"), 3, Connective::Or);
  expect_genuine(c);
  EXPECT_EQ(c.counterexample->str(), "d=1, A0=∅, A1={0}: ∅ vs {⟨0, 0⟩}");
}

TEST(Product, BoundsMustBeDistinctElements) {
  EXPECT_EQ(code_of([] { check_product_identity(parse_formula("(x0 in A0)"), parse_formula("(x0 in A1)"), 2); }),
            ErrorCode::ProfileMismatch);
  EXPECT_EQ(code_of([] {
              check_product_identity(BoundPredicate{parse_formula("(x0 in A0)"), v("A0")},
                                     BoundPredicate{parse_formula("(x1 in A1)"), v("x1")}, 2);
            }),
            ErrorCode::ProfileMismatch);
}

TEST(Lattice, IntersectionOfAtoms) {
  auto c = check_lattice_identity(LatticeOp::Intersection, parse_formula("(x0 in A0)"), parse_formula("(x0 in A1)"), 3);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.identity, Identity::IntersectionIsConjunction);
  auto s = replay_table1_construction();
  EXPECT_EQ(canonical_form(c.rhs), s.at(20).key);
  EXPECT_TRUE(oracle::agree(c.lhs, s.at(20).payload, 3));
}

TEST(Lattice, UnionWithNegation) {
  auto c = check_lattice_identity(LatticeOp::Union, parse_formula("(x0 in A0)"), parse_formula("~(x0 in A1)"), 3);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.identity, Identity::UnionIsDisjunction);
  auto s = replay_table1_construction();
  EXPECT_EQ(canonical_form(c.rhs), s.at(24).key);
  EXPECT_TRUE(oracle::agree(c.lhs, s.at(24).payload, 3));
}

TEST(Lattice, SetLevelFamilies) {
  auto c = check_lattice_identity(LatticeOp::Union, parse_formula("forall(x0) [(x0 in A0)]"),
                                  parse_formula("exists(x0) [(x0 in A0)]"), 3);
  EXPECT_TRUE(c.pass);
  EXPECT_TRUE(oracle::agree(c.lhs, c.rhs, 2));
}

TEST(Lattice, MismatchedBounds) {
  EXPECT_EQ(code_of([] {
              check_lattice_identity(LatticeOp::Intersection, parse_formula("(x0 in A0)"),
                                     parse_formula("(x1 in A1)"), 3);
            }),
            ErrorCode::ProfileMismatch);
}

TEST(Lattice, SwappedConnectiveControls) {
  auto c = check_lattice_identity(LatticeOp::Intersection, parse_formula("(x0 in A0)"), parse_formula("(x0 in A1)"), 3,
                                  Connective::Or);
  expect_genuine(c);
  auto u = check_lattice_identity(LatticeOp::Union, parse_formula("(x0 in A0)"), parse_formula("(x0 in A1)"), 3,
                                  Connective::And);
  expect_genuine(u);
}

TEST(Biconditional, EveryTruthSetOfTheReferenceStore) {
  auto cases = check_biconditional(replay_table1_construction(), 3);
  ASSERT_EQ(cases.size(), 9u);
  std::vector<std::string> subjects;
  for (const auto& c : cases) {
    EXPECT_TRUE(c.pass) << c.subject;
    EXPECT_EQ(c.identity, Identity::TruthSetBiconditional);
    subjects.push_back(c.subject);
  }
  EXPECT_EQ(subjects, (std::vector<std::string>{"M0 (object 10)", "R0 (object 11)", "M1 (object 19)",
                                                "M2 (object 20)", "M3 (object 21)", "M4 (object 22)",
                                                "M5 (object 24)", "M6 (object 26)", "R1 (object 28)"}));
}

TEST(Biconditional, EmptyStore) { EXPECT_TRUE(check_biconditional(ObjectStore{}, 3).empty()); }

TEST(Biconditional, CorruptedBodyIsCaught) {
  auto s = ObjectStore::seed(2, 2);
  StoredObject bad;
  bad.id = 5;
  bad.name = "M0";
  bad.payload = parse("{x0 | ~(x0 in A0)}");
  bad.key = canonical_form(bad.payload);
  bad.provenance.tag = RuleTag::TruthSet;
  bad.provenance.bound = {v("x0")};
  bad.provenance.parents = {1};
  s.import_object(bad);
  auto cases = check_biconditional(s, 3);
  ASSERT_EQ(cases.size(), 1u);
  expect_genuine(cases[0]);
}

TEST(StoreIdentities, ReferenceStore) {
  auto report = check_store_identities(replay_table1_construction(), 3);
  EXPECT_EQ(report.failed(), 0u);
  EXPECT_GT(report.count(Identity::ProductOfTruthSets), 0u);
  EXPECT_GT(report.count(Identity::IntersectionIsConjunction), 0u);
  EXPECT_GT(report.count(Identity::UnionIsDisjunction), 0u);
  EXPECT_EQ(report.count(Identity::TruthSetBiconditional), 0u);
}

TEST(StoreIdentities, DefaultEnumerationSample) {
  // Re-check a spread of the passing cases against the oracle.
  auto report = check_store_identities(enumerate(), 3);
  EXPECT_EQ(report.failed(), 0u);
  EXPECT_GE(report.cases.size(), 20u);
  for (std::size_t i = 0; i < report.cases.size(); i += 97) {
    const auto& c = report.cases[i];
    EXPECT_TRUE(oracle::agree(c.lhs, c.rhs, 2)) << c.subject;
  }
}
