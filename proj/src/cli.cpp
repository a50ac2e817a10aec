#include "signet/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "signet/enumerator.hpp"
#include "signet/net.hpp"
#include "signet/recognition.hpp"
#include "signet/semantics.hpp"
#include "signet/service.hpp"
#include "signet/session.hpp"
#include "signet/syntax.hpp"
#include "signet/theory.hpp"

namespace signet {

namespace {

struct UsageError {
  std::string message;
};

struct Options {
  std::string session_path;
  std::string catalog_path;
  std::optional<int> max_size;

  EnumConfig config;
  std::string target;
  bool witnesses = false;
  bool json_report = false;
  std::string format = "dot";
  std::string output;
  std::string lang = "en";
  std::string text;
  int port = 8080;
  std::string host = "127.0.0.1";

  ObjectId id = 0;
  ObjectId parent = 0;
  ObjectId left = 0;
  ObjectId right = 0;
  ObjectId replacement_object = 0;
  std::string op;
  std::string quantifier;
  std::string variable;
  std::vector<std::string> bound;
  std::string replacement;
};

Session require_session(const Options& o) {
  if (o.session_path.empty()) throw UsageError{"--session is required"};
  return load_session(o.session_path);
}

int model_size(const Options& o, const Session* s) {
  const int k = o.max_size.value_or(s ? s->config.model_check_size : kDefaultModelSize);
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "--max-size must be at least 1");
  return k;
}

std::vector<CatalogEntry> catalog(const Options& o) {
  std::vector<CatalogEntry> c = builtin_catalog();
  if (!o.catalog_path.empty())
    for (auto& e : load_catalog_file(o.catalog_path)) c.push_back(std::move(e));
  return c;
}

ObjectId parse_object_id(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorCode::InvalidArgument, "'" + s + "' is not an object id");
  return static_cast<ObjectId>(std::stoull(s));
}

void require_object(const Session& s, ObjectId id) {
  if (!s.store.contains(id)) throw Error(ErrorCode::UnknownId, "no object with id " + std::to_string(id));
}

Variable variable_arg(const std::string& name) {
  if (!is_valid_variable_name(name)) throw Error(ErrorCode::InvalidArgument, "invalid variable name '" + name + "'");
  return make_variable(name);
}

void print_outcome(const Session& s, RuleOutcome r, std::ostream& out) {
  out << s.store.at(r.id).name;
  if (r.already_present) out << " (already present as object " << r.id << ")";
  out << "\n";
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  if (o.session_path.empty()) throw UsageError{"--session is required"};
  Session s;
  s.config = o.config;
  if (o.max_size) s.config.model_check_size = *o.max_size;
  s.store = enumerate(s.config);
  save_session(s, o.session_path);
  out << "enumerated " << s.store.size() << " objects\n";
  return kExitOk;
}

int cmd_seed(const Options& o, std::ostream& out) {
  if (o.session_path.empty()) throw UsageError{"--session is required"};
  Session s;
  s.config = o.config;
  s.config.validate();
  s.store = ObjectStore::seed(s.config.elem_vars, s.config.set_vars);
  save_session(s, o.session_path);
  out << "seeded " << s.store.size() << " objects\n";
  return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const bool by_id = !o.target.empty() && o.target.find_first_not_of("0123456789") == std::string::npos;
  std::optional<Session> s;
  if (by_id || !o.session_path.empty()) s = require_session(o);
  const int k = model_size(o, s ? &*s : nullptr);
  const std::uint64_t budget = s ? s->config.budget : kDefaultBudget;

  FormulaPtr f;
  if (by_id) {
    const ObjectId id = parse_object_id(o.target);
    require_object(*s, id);
    const StoredObject& obj = s->store.at(id);
    if (!obj.is_formula())
      throw Error(ErrorCode::NotAFormula, obj.name + " is a truth set; only predicates are classified");
    f = obj.formula();
  } else {
    f = parse_formula(o.target);
  }
  const Classification c = classify(*f, k, budget);
  out << c.label() << "\n";
  if (o.witnesses) {
    if (c.witness_true)
      out << "true at d=" << c.witness_true->domain_size << ": " << c.witness_true->assignment.str(c.witness_true->domain_size)
          << "\n";
    if (c.witness_false)
      out << "false at d=" << c.witness_false->domain_size << ": "
          << c.witness_false->assignment.str(c.witness_false->domain_size) << "\n";
  }
  if (by_id) {
    s->labels[parse_object_id(o.target)] = CachedLabel{c.label(), k};
    save_session(*s, o.session_path);
  }
  return kExitOk;
}

int cmd_recognize(const Options& o, std::ostream& out) {
  Session s = require_session(o);
  const ObjectId id = parse_object_id(o.target);
  require_object(s, id);
  const auto r = recognize(s.store, id, catalog(o), model_size(o, &s), s.config.budget);
  if (r.matches.empty()) out << "no match at size " << r.checked_size << "\n";
  for (const auto& m : r.matches) out << m.key << "\t" << m.instantiated_symbol << "\t" << m.instantiated_nl << "\n";
  save_session(s, o.session_path);
  return kExitOk;
}

int cmd_report_signature(const Options& o, std::ostream& out) {
  Session s = require_session(o);
  const auto ext = signature_report(s.store, catalog(o), model_size(o, &s), s.config.budget);
  out << ext.str() << "\n";
  for (const auto& e : ext.entries) {
    if (e.object_id == 0) {
      out << e.symbol << "\t" << e.key << "\tbase\t" << e.instantiated << "\n";
      continue;
    }
    out << e.symbol << "\t" << e.key << "\t" << s.store.at(e.object_id).name << " (object " << e.object_id << ")\t"
        << e.instantiated << "\n";
  }
  save_session(s, o.session_path);
  return kExitOk;
}

int cmd_verify_table1(const Options& o, std::ostream& out, std::ostream& err) {
  Session s = require_session(o);
  const auto report = verify_table1(s.store, catalog(o), model_size(o, &s), s.config.budget);
  out << report.summary() << "\n";
  for (const auto& row : report.rows)
    if (!row.object || !row.notion_ok) err << "row " << row.number << ": " << row.detail << "\n";
  return report.ok() ? kExitOk : kExitVerificationFailed;
}

nlohmann::json case_json(const IdentityCase& c) {
  nlohmann::json j{{"identity", std::string(to_string(c.identity))},
                   {"subject", c.subject},
                   {"lhs", render(c.lhs, Style::Unicode)},
                   {"rhs", render(c.rhs, Style::Unicode)},
                   {"max_size", c.max_size},
                   {"pass", c.pass},
                   {"cases", c.cases}};
  if (c.counterexample) j["counterexample"] = c.counterexample->str();
  return j;
}

int cmd_check_identities(const Options& o, std::ostream& out) {
  Session s = require_session(o);
  const int k = model_size(o, &s);
  IdentityReport report;
  report.cases = check_biconditional(s.store, k, s.config.budget);
  for (auto& c : check_store_identities(s.store, k, s.config.budget).cases) report.cases.push_back(std::move(c));

  if (o.json_report) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : report.cases) j.push_back(case_json(c));
    out << j.dump(2) << "\n";
  } else {
    for (Identity id : {Identity::TruthSetBiconditional, Identity::ProductOfTruthSets,
                        Identity::IntersectionIsConjunction, Identity::UnionIsDisjunction}) {
      std::size_t total = 0;
      std::size_t passed = 0;
      for (const auto& c : report.cases)
        if (c.identity == id) {
          ++total;
          passed += c.pass ? 1 : 0;
        }
      out << to_string(id) << ": " << passed << "/" << total << " passed at size " << k << "\n";
    }
    for (const auto& c : report.cases)
      if (!c.pass) out << "FAIL " << to_string(c.identity) << " " << c.subject << ": " << c.counterexample->str() << "\n";
  }
  return report.failed() == 0 ? kExitOk : kExitVerificationFailed;
}

int cmd_export(const Options& o, std::ostream& out) {
  Session s = require_session(o);
  NetFormat format;
  if (o.format == "dot") format = NetFormat::Dot;
  else if (o.format == "json") format = NetFormat::Json;
  else throw UsageError{"--format must be dot or json"};
  RecognitionIndex index;
  for (const auto& obj : s.store) {
    if (!obj.symbol) continue;
    RecognitionResult r;
    r.object_id = obj.id;
    r.checked_size = s.config.model_check_size;
    r.matches = match_catalog(obj.payload, builtin_catalog(), s.config.model_check_size, s.config.budget);
    index.emplace(obj.id, std::move(r));
  }
  const NetGraph net = derive_edges(s.store, &index);
  if (o.output.empty()) {
    export_net(net, format, out);
  } else {
    std::ofstream f(o.output, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoFailure, "cannot write " + o.output);
    export_net(net, format, f);
  }
  return kExitOk;
}

int cmd_render_nl(const Options& o, std::ostream& out) {
  const Session s = require_session(o);
  const ObjectId id = parse_object_id(o.target);
  require_object(s, id);
  RecognitionIndex index;
  RecognitionResult r;
  r.object_id = id;
  r.checked_size = s.config.model_check_size;
  r.matches = match_catalog(s.store.at(id).payload, builtin_catalog(), s.config.model_check_size, s.config.budget);
  index.emplace(id, std::move(r));
  out << render_nl(s.store, id, s.glossary, index, o.lang) << "\n";
  return kExitOk;
}

int cmd_describe(const Options& o, std::ostream& out) {
  Session s = require_session(o);
  const ObjectId id = parse_object_id(o.target);
  require_object(s, id);
  if (o.text.empty()) s.store.at(id).description.reset();
  else s.store.at(id).description = o.text;
  save_session(s, o.session_path);
  out << s.store.at(id).name << "\n";
  return kExitOk;
}

int cmd_glossary(const Options& o, std::ostream& out) {
  Session s = require_session(o);
  const ObjectId id = parse_object_id(o.target);
  require_object(s, id);
  if (o.text.empty()) s.glossary.erase(id, o.lang);
  else s.glossary.set(id, o.lang, o.text);
  save_session(s, o.session_path);
  out << s.store.at(id).name << "\n";
  return kExitOk;
}

int cmd_list(const Options& o, std::ostream& out) {
  const Session s = require_session(o);
  for (const auto& obj : s.store) {
    out << obj.id << "\t" << obj.notation() << "\t" << render(obj.payload, Style::Unicode);
    if (obj.symbol) out << "\t" << *obj.symbol;
    out << "\n";
  }
  return kExitOk;
}

int cmd_apply(const std::string& rule, const Options& o, std::ostream& out) {
  Session s = require_session(o);
  ObjectStore& store = s.store;
  RuleOutcome r{};
  if (rule == "negate") {
    r = store.apply_negate(o.parent);
  } else if (rule == "connect") {
    Connective c;
    if (o.op == "and") c = Connective::And;
    else if (o.op == "or") c = Connective::Or;
    else if (o.op == "implies") c = Connective::Implies;
    else throw UsageError{"--op must be and, or or implies"};
    r = store.apply_connect(c, o.left, o.right);
  } else if (rule == "quantify") {
    if (o.quantifier != "forall" && o.quantifier != "exists") throw UsageError{"--q must be forall or exists"};
    r = store.apply_quantify(o.quantifier == "forall" ? Quantifier::Forall : Quantifier::Exists,
                             variable_arg(o.variable), o.parent);
  } else if (rule == "truth-set") {
    std::vector<Variable> bound;
    for (const auto& b : o.bound) bound.push_back(variable_arg(b));
    r = store.apply_truth_set(bound, o.parent);
  } else if (rule == "substitute") {
    if (o.replacement_object != 0)
      r = store.apply_substitute(o.parent, variable_arg(o.variable), o.replacement_object);
    else if (!o.replacement.empty())
      r = store.apply_substitute(o.parent, variable_arg(o.variable), parse_term(o.replacement));
    else
      throw UsageError{"substitute needs --replacement or --replacement-object"};
  }
  save_session(s, o.session_path);
  print_outcome(s, r, out);
  return kExitOk;
}

int cmd_serve(const Options& o, std::ostream& out) {
  Session s = require_session(o);
  Service service(std::move(s), o.session_path);
  out << "listening on " << o.host << ":" << o.port << std::endl;
  if (!service.serve(o.host, o.port))
    throw Error(ErrorCode::IoFailure, "cannot listen on " + o.host + ":" + std::to_string(o.port));
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedSession: return kExitMalformedSession;
    case ErrorCode::IoFailure: return kExitIoFailure;
    default: return kExitEngineError;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Builds the signature of set theory from the membership predicate."};
  app.name("signet");
  app.require_subcommand(1);

  auto add_session = [&](CLI::App* sub) { sub->add_option("--session", o.session_path, "Session file"); };
  auto add_size = [&](CLI::App* sub) {
    sub->add_option("--max-size", o.max_size, "Largest domain size swept");
  };
  auto add_catalog = [&](CLI::App* sub) {
    sub->add_option("--catalog", o.catalog_path, "Extra catalog entries (JSON)");
  };
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--elem-vars", o.config.elem_vars, "Element variables");
    sub->add_option("--set-vars", o.config.set_vars, "Set variables");
  };

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Run the bounded enumeration and write the session");
  add_session(enumerate_cmd);
  add_config(enumerate_cmd);
  add_size(enumerate_cmd);
  enumerate_cmd->add_option("--max-atoms", o.config.max_atoms, "Literals per connective combination");
  enumerate_cmd->add_option("--quantifier-depth", o.config.quantifier_depth, "Quantification rounds");
  enumerate_cmd->add_option("--max-objects", o.config.max_objects, "Object cap");
  enumerate_cmd->add_option("--budget", o.config.budget, "Evaluation steps per sweep");

  auto* seed_cmd = app.add_subcommand("seed", "Start a session holding only the membership atoms");
  add_session(seed_cmd);
  add_config(seed_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "Classify an object id or a formula");
  add_session(classify_cmd);
  add_size(classify_cmd);
  classify_cmd->add_option("target", o.target, "Object id or formula")->required();
  classify_cmd->add_flag("--witnesses", o.witnesses, "Print satisfying and falsifying assignments");

  auto* recognize_cmd = app.add_subcommand("recognize", "Match an object against the catalog");
  add_session(recognize_cmd);
  add_size(recognize_cmd);
  add_catalog(recognize_cmd);
  recognize_cmd->add_option("id", o.target, "Object id")->required();

  auto* signature_cmd = app.add_subcommand("report-signature", "List the recognized signature");
  add_session(signature_cmd);
  add_size(signature_cmd);
  add_catalog(signature_cmd);

  auto* verify_cmd = app.add_subcommand("verify-table1", "Check the store against the reference table");
  add_session(verify_cmd);
  add_size(verify_cmd);
  add_catalog(verify_cmd);

  auto* identities_cmd = app.add_subcommand("check-identities", "Sweep truth-set identities over the store");
  add_session(identities_cmd);
  add_size(identities_cmd);
  identities_cmd->add_flag("--json", o.json_report, "Machine-readable report");

  auto* export_cmd = app.add_subcommand("export", "Export the semantic net");
  add_session(export_cmd);
  export_cmd->add_option("--format", o.format, "dot or json");
  export_cmd->add_option("--output", o.output, "Output file (default stdout)");

  auto* nl_cmd = app.add_subcommand("render-nl", "Natural-language reading of an object");
  add_session(nl_cmd);
  nl_cmd->add_option("id", o.target, "Object id")->required();
  nl_cmd->add_option("--lang", o.lang, "Language tag");

  auto* describe_cmd = app.add_subcommand("describe", "Set or clear an object's description");
  add_session(describe_cmd);
  describe_cmd->add_option("id", o.target, "Object id")->required();
  describe_cmd->add_option("text", o.text, "Description (empty clears)");

  auto* glossary_cmd = app.add_subcommand("glossary", "Set or clear a glossary entry");
  add_session(glossary_cmd);
  glossary_cmd->add_option("id", o.target, "Object id")->required();
  glossary_cmd->add_option("text", o.text, "Text (empty clears)");
  glossary_cmd->add_option("--lang", o.lang, "Language tag");

  auto* list_cmd = app.add_subcommand("list", "Print the object table");
  add_session(list_cmd);

  auto* serve_cmd = app.add_subcommand("serve", "Serve the session over HTTP");
  add_session(serve_cmd);
  serve_cmd->add_option("--port", o.port, "Port");
  serve_cmd->add_option("--host", o.host, "Host");

  auto* apply_cmd = app.add_subcommand("apply", "Apply one rule to the session");
  apply_cmd->require_subcommand(1);
  auto* negate_rule = apply_cmd->add_subcommand("negate", "Negate a predicate");
  negate_rule->add_option("--parent", o.parent)->required();
  auto* connect_rule = apply_cmd->add_subcommand("connect", "Join two predicates");
  connect_rule->add_option("--op", o.op, "and, or or implies")->required();
  connect_rule->add_option("--left", o.left)->required();
  connect_rule->add_option("--right", o.right)->required();
  auto* quantify_rule = apply_cmd->add_subcommand("quantify", "Bind a free variable");
  quantify_rule->add_option("--q", o.quantifier, "forall or exists")->required();
  quantify_rule->add_option("--var", o.variable)->required();
  quantify_rule->add_option("--parent", o.parent)->required();
  auto* truth_rule = apply_cmd->add_subcommand("truth-set", "Form the truth set of a predicate");
  truth_rule->add_option("--bound", o.bound, "Bound variables")->required()->delimiter(',');
  truth_rule->add_option("--parent", o.parent)->required();
  auto* subst_rule = apply_cmd->add_subcommand("substitute", "Substitute a term for a free variable");
  subst_rule->add_option("--target", o.parent)->required();
  subst_rule->add_option("--var", o.variable)->required();
  subst_rule->add_option("--replacement", o.replacement, "Term in the grammar");
  subst_rule->add_option("--replacement-object", o.replacement_object, "Stored truth set id");
  add_session(apply_cmd);
  for (auto* sub : {negate_rule, connect_rule, quantify_rule, truth_rule, subst_rule}) add_session(sub);

  std::vector<std::string> argv_store{"signet"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*enumerate_cmd) return cmd_enumerate(o, out);
    if (*seed_cmd) return cmd_seed(o, out);
    if (*classify_cmd) return cmd_classify(o, out);
    if (*recognize_cmd) return cmd_recognize(o, out);
    if (*signature_cmd) return cmd_report_signature(o, out);
    if (*verify_cmd) return cmd_verify_table1(o, out, err);
    if (*identities_cmd) return cmd_check_identities(o, out);
    if (*export_cmd) return cmd_export(o, out);
    if (*nl_cmd) return cmd_render_nl(o, out);
    if (*describe_cmd) return cmd_describe(o, out);
    if (*glossary_cmd) return cmd_glossary(o, out);
    if (*list_cmd) return cmd_list(o, out);
    if (*serve_cmd) return cmd_serve(o, out);
    for (auto* sub : apply_cmd->get_subcommands()) return cmd_apply(sub->get_name(), o, out);
  } catch (const UsageError& e) {
    err << "error: usage: " << e.message << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitUsage;
}

}  // namespace signet
