#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "signet/enumerator.hpp"
#include "signet/net.hpp"
#include "signet/syntax.hpp"

using namespace signet;

namespace {

Variable v(const std::string& name) { return make_variable(name); }

bool has_edge(const NetGraph& net, const std::string& label, ObjectId src, ObjectId dst) {
  return std::any_of(net.edges.begin(), net.edges.end(),
                     [&](const Edge& e) { return e.kind_label() == label && e.src == src && e.dst == dst; });
}

std::size_t count_edges(const NetGraph& net, const std::string& label, std::optional<ObjectId> src,
                        std::optional<ObjectId> dst) {
  return static_cast<std::size_t>(std::count_if(net.edges.begin(), net.edges.end(), [&](const Edge& e) {
    return e.kind_label() == label && (!src || e.src == *src) && (!dst || e.dst == *dst);
  }));
}

}  // namespace

TEST(Edges, TruthSetOfAtom) {
  auto s = replay_table1_construction();
  auto net = derive_edges(s);
  EXPECT_TRUE(has_edge(net, "set:truth-set-of", 10, 1));
  EXPECT_TRUE(has_edge(net, "derivation:truth-set", 1, 10));
}

TEST(Edges, ConjunctionHasTwoDerivationParents) {
  auto s = replay_table1_construction();
  auto net = derive_edges(s);
  EXPECT_TRUE(has_edge(net, "derivation:connect-and", 1, 12));
  EXPECT_TRUE(has_edge(net, "derivation:connect-and", 2, 12));
  EXPECT_EQ(count_edges(net, "derivation:connect-and", std::nullopt, 12), 2u);
  EXPECT_TRUE(has_edge(net, "logical:and", 12, 1));
  EXPECT_TRUE(has_edge(net, "syntactic:subformula", 12, 2));
}

TEST(Edges, QuantifierAndNegation) {
  auto s = replay_table1_construction();
  auto net = derive_edges(s);
  EXPECT_TRUE(has_edge(net, "quantificational:forall", 6, 1));
  EXPECT_TRUE(has_edge(net, "quantificational:exists", 8, 1));
  EXPECT_TRUE(has_edge(net, "logical:not", 5, 1));
  EXPECT_TRUE(has_edge(net, "quantificational:forall", 27, 23));
}

TEST(Edges, SeedsHaveNoIncomingDerivation) {
  auto s = replay_table1_construction();
  auto net = derive_edges(s);
  for (const auto& e : net.edges_of(EdgeKind::Derivation)) {
    EXPECT_GT(e.dst, 4u);
    EXPECT_LT(e.src, e.dst);
  }
}

TEST(Edges, MemberOfStoredComprehension) {
  auto s = ObjectStore::seed(2, 2);
  auto m = s.apply_truth_set({v("x0")}, 1);
  auto sub = s.apply_substitute(3, v("A0"), m.id);
  auto net = derive_edges(s);
  EXPECT_TRUE(has_edge(net, "set:member-of", sub.id, m.id));
}

TEST(Edges, ExtensionallyEqualPointsToFirstRecognized) {
  auto s = ObjectStore::seed(2, 2);
  auto p = s.apply_connect(Connective::And, 1, 2);
  auto q = s.apply_connect(Connective::And, 3, 4);
  auto m1 = s.apply_truth_set({v("x0")}, p.id);
  auto m2 = s.apply_truth_set({v("x1")}, q.id);
  RecognitionIndex idx;
  idx[m1.id] = recognize(s, m1.id, builtin_catalog(), 3);
  idx[m2.id] = recognize(s, m2.id, builtin_catalog(), 3);
  auto net = derive_edges(s, &idx);
  EXPECT_TRUE(has_edge(net, "set:extensionally-equal", m2.id, m1.id));
  EXPECT_EQ(net.edges_of(EdgeKind::SetTheoretic).size(), 3u);
  // Without recognition results the edge is absent.
  EXPECT_FALSE(has_edge(derive_edges(s), "set:extensionally-equal", m2.id, m1.id));
}

TEST(Edges, DeterministicAndIdempotent) {
  auto s = replay_table1_construction();
  EXPECT_EQ(derive_edges(s), derive_edges(s));
  std::set<std::tuple<std::string, ObjectId, ObjectId>> seen;
  for (const auto& e : derive_edges(s).edges) EXPECT_TRUE(seen.emplace(e.kind_label(), e.src, e.dst).second);
}

TEST(Export, EmptyStoreIsValidDocument) {
  ObjectStore empty;
  auto net = derive_edges(empty);
  EXPECT_TRUE(net.vertices.empty());
  const auto json = export_net(net, NetFormat::Json);
  EXPECT_EQ(import_net(json), net);
  const auto dot = export_net(net, NetFormat::Dot);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_EQ(dot.back(), '\n');
}

TEST(Export, DotListsEveryVertex) {
  auto s = replay_table1_construction();
  const auto dot = export_net(derive_edges(s), NetFormat::Dot);
  for (ObjectId id = 1; id <= 28; ++id) EXPECT_NE(dot.find("  n" + std::to_string(id) + " [label="), std::string::npos);
  EXPECT_NE(dot.find("M2: {x0 | ((x0 ∈ A0) & (x0 ∈ A1))}"), std::string::npos);
  EXPECT_NE(dot.find("n1 -> n12"), std::string::npos);
}

TEST(Export, JsonRoundTripIsByteStable) {
  auto s = replay_table1_construction();
  RecognitionIndex idx;
  for (ObjectId id : {19u, 20u, 22u, 26u}) idx[id] = recognize(s, id, builtin_catalog(), 3);
  auto net = derive_edges(s, &idx);
  const auto first = export_net(net, NetFormat::Json);
  const auto back = import_net(first);
  EXPECT_EQ(back, net);
  EXPECT_EQ(export_net(back, NetFormat::Json), first);
}

TEST(Export, StreamFailureIsIoFailure) {
  std::ostringstream out;
  out.setstate(std::ios::badbit);
  try {
    export_net(NetGraph{}, NetFormat::Json, out);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoFailure);
  }
}

TEST(Import, MalformedDocuments) {
  for (const char* doc : {"", "[]", R"({"vertices": []})", R"({"vertices": [], "edges": [{"kind": "x:y", "src": 1, "dst": 2}]})",
                          R"({"vertices": [{"id": 1}], "edges": []})"}) {
    try {
      import_net(doc);
      ADD_FAILURE() << doc;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << doc;
    }
  }
}

TEST(NaturalLanguage, RecognizedNotion) {
  auto s = replay_table1_construction();
  RecognitionIndex idx;
  idx[22] = recognize(s, 22, builtin_catalog(), 3);
  EXPECT_EQ(render_nl(s, 22, Glossary{}, idx), "union of A0 and A1");
}

TEST(NaturalLanguage, GlossaryOverrides) {
  auto s = replay_table1_construction();
  Glossary g;
  g.set(6, "en", "A0 is the universe");
  g.set(6, "ru", "A0 есть универсум");
  RecognitionIndex idx;
  idx[6] = recognize(s, 6, builtin_catalog(), 3);
  EXPECT_EQ(render_nl(s, 6, g, idx), "A0 is the universe");
  EXPECT_EQ(render_nl(s, 6, g, idx, "ru"), "A0 есть универсум");
  EXPECT_EQ(render_nl(s, 6, Glossary{}, idx), "A0-universe");
}

TEST(NaturalLanguage, DescriptionBeforeRecognition) {
  auto s = replay_table1_construction();
  RecognitionIndex idx;
  idx[20] = recognize(s, 20, builtin_catalog(), 3);
  ObjectStore copy;
  for (auto obj : s) {
    if (obj.id == 20) obj.description = "common part";
    copy.import_object(obj);
  }
  EXPECT_EQ(render_nl(copy, 20, Glossary{}, idx), "common part");
  EXPECT_EQ(render_nl(copy, 20, Glossary{}, idx, "ru"), "intersection of A0 and A1");
}

TEST(NaturalLanguage, Compositional) {
  auto s = replay_table1_construction();
  EXPECT_EQ(render_nl(s, 23, Glossary{}, {}), "((x0 is in A0) or (not (x0 is in A1)))");
  EXPECT_EQ(render_nl(s, 7, Glossary{}, {}), "for all A0, (x0 is in A0)");
  EXPECT_EQ(render_nl(s, 9, Glossary{}, {}), "for some A0, (x0 is in A0)");
  EXPECT_EQ(render_nl(s, 26, Glossary{}, {}), "the set of all ⟨x0, x1⟩ such that ((x0 is in A0) and (x1 is in A1))");
  EXPECT_EQ(compose_nl(parse("((x0 in A0) => (x0 in A1))")), "(if (x0 is in A0) then (x0 is in A1))");
}

TEST(NaturalLanguage, SubexpressionsReadThroughGlossary) {
  auto s = replay_table1_construction();
  Glossary g;
  g.set(1, "en", "x0 belongs to A0");
  EXPECT_EQ(render_nl(s, 5, g, {}), "(not (x0 belongs to A0))");
  EXPECT_THROW(render_nl(s, 99, g, {}), Error);
}

TEST(GlossaryStore, OneEntryPerObjectAndLanguage) {
  Glossary g;
  g.set(3, "en", "a");
  g.set(3, "en", "b");
  g.set(1, "ru", "c");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g.entries().front().object_id, 1u);
  EXPECT_EQ(g.lookup(3, "en"), "b");
  EXPECT_TRUE(g.erase(3, "en"));
  EXPECT_FALSE(g.lookup(3, "en"));
}
