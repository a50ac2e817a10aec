#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "signet/cli.hpp"
#include "signet/session.hpp"
#include "signet/syntax.hpp"
#include "support/tempdir.hpp"

using namespace signet;
using testing_support::TempDir;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

Session reference_session() {
  Session s;
  s.store = replay_table1_construction();
  s.store.at(6).description = "A0 is the whole domain";
  s.store.at(20).symbol = "A0 ∩ A1";
  s.glossary.set(6, "en", "A0 is the universe");
  s.glossary.set(8, "ru", "A0 не пусто");
  s.classification_label(7, 3);
  s.classification_label(10, 3);
  return s;
}

ErrorCode load_code(const std::string& text) {
  try {
    parse_session(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "loaded";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(SessionFile, RoundTripIsByteStable) {
  const auto s = reference_session();
  const auto text = dump_session(s);
  const auto back = parse_session(text);
  EXPECT_EQ(dump_session(back), text);
  ASSERT_EQ(back.store.size(), s.store.size());
  for (ObjectId id = 1; id <= s.store.size(); ++id) {
    EXPECT_EQ(back.store.at(id).key, s.store.at(id).key);
    EXPECT_EQ(back.store.at(id).name, s.store.at(id).name);
    EXPECT_EQ(back.store.at(id).provenance.label(), s.store.at(id).provenance.label());
    EXPECT_EQ(back.store.at(id).provenance.parents, s.store.at(id).provenance.parents);
  }
  EXPECT_EQ(back.glossary, s.glossary);
  EXPECT_EQ(back.labels, s.labels);
  EXPECT_EQ(back.config, s.config);
}

TEST(SessionFile, SubstitutionProvenanceSurvives) {
  Session s;
  s.store = ObjectStore::seed(2, 2);
  auto m = s.store.apply_truth_set({make_variable("x0")}, 2);
  s.store.apply_substitute(1, make_variable("A0"), m.id);
  s.store.apply_substitute(3, make_variable("A0"), parse_term("{x0 | ~(x0 in A1)}"));
  const auto text = dump_session(s);
  EXPECT_EQ(dump_session(parse_session(text)), text);
}

TEST(SessionFile, LabelsAreCached) {
  auto s = reference_session();
  EXPECT_EQ(s.labels.at(7).label, "UnsatUpTo(3)");
  EXPECT_EQ(s.labels.at(10).label, "truth-set");
  s.labels[7].label = "stale";
  EXPECT_EQ(s.classification_label(7, 3), "stale");
  EXPECT_EQ(s.classification_label(7, 2), "UnsatUpTo(2)");
}

TEST(SessionFile, FormatVersionGatesLoading) {
  auto doc = session_to_json(reference_session());
  doc["format_version"] = 2;
  EXPECT_EQ(load_code(doc.dump()), ErrorCode::MalformedSession);
  doc.erase("format_version");
  EXPECT_EQ(load_code(doc.dump()), ErrorCode::MalformedSession);
}

TEST(SessionFile, MalformedDocuments) {
  EXPECT_EQ(load_code("not json"), ErrorCode::MalformedSession);
  EXPECT_EQ(load_code("[]"), ErrorCode::MalformedSession);

  auto doc = session_to_json(reference_session());
  doc["objects"][11]["payload"] = "((x0 in A0) &";
  EXPECT_EQ(load_code(doc.dump()), ErrorCode::MalformedSession);

  doc = session_to_json(reference_session());
  doc["objects"][11]["rule"]["parents"] = {1, 40};
  EXPECT_EQ(load_code(doc.dump()), ErrorCode::MalformedSession);

  doc = session_to_json(reference_session());
  doc["objects"][11]["rule"]["tag"] = "teleport";
  EXPECT_EQ(load_code(doc.dump()), ErrorCode::MalformedSession);

  doc = session_to_json(reference_session());
  doc["objects"][3]["id"] = 9;
  EXPECT_EQ(load_code(doc.dump()), ErrorCode::MalformedSession);
}

TEST(SessionFile, MissingFileIsIoFailure) {
  TempDir dir;
  try {
    load_session(dir.file("absent.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoFailure);
  }
  try {
    save_session(Session{}, dir.file("no/such/dir/s.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoFailure);
  }
}

TEST(Cli, EnumerateThenVerify) {
  TempDir dir;
  const auto path = dir.file("s.json");
  auto e = cli({"enumerate", "--session", path});
  ASSERT_EQ(e.code, kExitOk) << e.err;
  EXPECT_EQ(e.out, "enumerated 1600 objects\n");
  auto v = cli({"verify-table1", "--session", path});
  EXPECT_EQ(v.code, kExitOk) << v.err;
  EXPECT_EQ(v.out, "28/28\n");
}

TEST(Cli, EnumerationIsDeterministic) {
  TempDir dir;
  ASSERT_EQ(cli({"enumerate", "--session", dir.file("a.json")}).code, kExitOk);
  ASSERT_EQ(cli({"enumerate", "--session", dir.file("b.json")}).code, kExitOk);
  EXPECT_EQ(slurp(dir.file("a.json")), slurp(dir.file("b.json")));
  // Loading and saving through a read-only command leaves the file intact.
  const auto before = slurp(dir.file("a.json"));
  ASSERT_EQ(cli({"list", "--session", dir.file("a.json")}).code, kExitOk);
  EXPECT_EQ(slurp(dir.file("a.json")), before);
}

TEST(Cli, SeedOnlyFailsVerification) {
  TempDir dir;
  const auto path = dir.file("s.json");
  ASSERT_EQ(cli({"seed", "--session", path}).code, kExitOk);
  auto v = cli({"verify-table1", "--session", path});
  EXPECT_EQ(v.code, kExitVerificationFailed);
  EXPECT_EQ(v.out, "4/28\n");
  auto sig = cli({"report-signature", "--session", path});
  EXPECT_EQ(sig.code, kExitOk);
  EXPECT_EQ(sig.out.substr(0, sig.out.find('\n')), "⟨Set; ∈⟩");
}

TEST(Cli, ClassifyFormulaWithoutSession) {
  EXPECT_EQ(cli({"classify", "forall(A0) [(x0 in A0)]"}).out, "UnsatUpTo(3)\n");
  EXPECT_EQ(cli({"classify", "exists(A0) [(x0 in A0)]"}).out, "ValidUpTo(3)\n");
  auto w = cli({"classify", "(x0 in A0)", "--witnesses", "--max-size", "2"});
  EXPECT_EQ(w.out, "Contingent\ntrue at d=1: x0=0, A0={0}\nfalse at d=1: x0=0, A0=∅\n");
  auto bad = cli({"classify", "(x0 in"});
  EXPECT_EQ(bad.code, kExitEngineError);
  EXPECT_EQ(bad.err.rfind("error: ParseError: ", 0), 0u) << bad.err;
}

TEST(Cli, ApplyRulesAgainstSession) {
  TempDir dir;
  const auto path = dir.file("s.json");
  ASSERT_EQ(cli({"seed", "--session", path}).code, kExitOk);
  EXPECT_EQ(cli({"apply", "connect", "--op", "and", "--left", "1", "--right", "2", "--session", path}).out, "P1\n");
  EXPECT_EQ(cli({"apply", "connect", "--op", "and", "--left", "2", "--right", "1", "--session", path}).out,
            "P1 (already present as object 5)\n");
  EXPECT_EQ(cli({"apply", "truth-set", "--bound", "x0", "--parent", "5", "--session", path}).out, "M0\n");
  auto q = cli({"apply", "quantify", "--q", "forall", "--var", "x1", "--parent", "1", "--session", path});
  EXPECT_EQ(q.code, kExitEngineError);
  EXPECT_EQ(q.err.rfind("error: NotFree: ", 0), 0u) << q.err;
  auto r = cli({"recognize", "6", "--session", path});
  EXPECT_EQ(r.out,
            "intersection\tA0 ∩ A1\tintersection of A0 and A1\n"
            "intersection\tA1 ∩ A0\tintersection of A1 and A0\n");
  EXPECT_EQ(cli({"render-nl", "6", "--session", path}).out, "intersection of A0 and A1\n");
  auto list = cli({"list", "--session", path});
  EXPECT_NE(list.out.find("6\tM0(A0, A1)\t{x0 | ((x0 ∈ A0) & (x0 ∈ A1))}\tA0 ∩ A1\n"), std::string::npos);
}

TEST(Cli, GlossaryAndDescription) {
  TempDir dir;
  const auto path = dir.file("s.json");
  ASSERT_EQ(cli({"seed", "--session", path}).code, kExitOk);
  ASSERT_EQ(cli({"glossary", "1", "x0 belongs to A0", "--lang", "en", "--session", path}).code, kExitOk);
  EXPECT_EQ(cli({"render-nl", "1", "--session", path}).out, "x0 belongs to A0\n");
  ASSERT_EQ(cli({"describe", "2", "first set membership", "--session", path}).code, kExitOk);
  EXPECT_EQ(cli({"render-nl", "2", "--session", path}).out, "first set membership\n");
  EXPECT_EQ(cli({"render-nl", "2", "--lang", "ru", "--session", path}).out, "(x0 is in A1)\n");
}

TEST(Cli, ExportFormats) {
  TempDir dir;
  const auto path = dir.file("s.json");
  ASSERT_EQ(cli({"seed", "--session", path}).code, kExitOk);
  auto dot = cli({"export", "--format", "dot", "--session", path});
  EXPECT_EQ(dot.out.rfind("digraph", 0), 0u);
  ASSERT_EQ(cli({"export", "--format", "json", "--output", dir.file("net.json"), "--session", path}).code, kExitOk);
  const auto net = import_net(slurp(dir.file("net.json")));
  EXPECT_EQ(net.vertices.size(), 4u);
  EXPECT_EQ(cli({"export", "--format", "svg", "--session", path}).code, kExitUsage);
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  write_file(dir.file("bad.json"), "{\"format_version\": 1}");
  EXPECT_EQ(cli({"list", "--session", dir.file("bad.json")}).code, kExitMalformedSession);
  EXPECT_EQ(cli({"list", "--session", dir.file("absent.json")}).code, kExitIoFailure);
  EXPECT_EQ(cli({"list"}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({}).code, kExitUsage);
  ASSERT_EQ(cli({"seed", "--session", dir.file("s.json")}).code, kExitOk);
  EXPECT_EQ(cli({"recognize", "99", "--session", dir.file("s.json")}).code, kExitEngineError);
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST(Cli, CheckIdentitiesOnReferenceStore) {
  TempDir dir;
  const auto path = dir.file("s.json");
  Session s;
  s.store = replay_table1_construction();
  save_session(s, path);
  auto r = cli({"check-identities", "--session", path});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "truth-set-biconditional: 9/9 passed at size 3");
  auto j = cli({"check-identities", "--json", "--session", path});
  const auto doc = nlohmann::json::parse(j.out);
  ASSERT_TRUE(doc.is_array());
  for (const auto& c : doc) EXPECT_TRUE(c.at("pass").get<bool>());
}
