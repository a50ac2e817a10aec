#include "signet/session.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "signet/semantics.hpp"
#include "signet/syntax.hpp"

namespace signet {

using nlohmann::json;

std::string Session::classification_label(ObjectId id, int max_size) {
  const StoredObject& obj = store.at(id);
  auto it = labels.find(id);
  if (it != labels.end() && it->second.max_size == max_size) return it->second.label;
  std::string label = obj.is_formula() ? classify(*obj.formula(), max_size, config.budget).label() : "truth-set";
  labels[id] = CachedLabel{label, max_size};
  return label;
}

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedSession, what); }

const char* connective_name(Connective c) {
  switch (c) {
    case Connective::And: return "and";
    case Connective::Or: return "or";
    case Connective::Implies: return "implies";
  }
  return "?";
}

Connective connective_from(const std::string& s) {
  if (s == "and") return Connective::And;
  if (s == "or") return Connective::Or;
  if (s == "implies") return Connective::Implies;
  malformed("unknown connective '" + s + "'");
}

RuleTag tag_from(const std::string& s) {
  for (RuleTag t : {RuleTag::Seed, RuleTag::Negate, RuleTag::Connect, RuleTag::Quantify, RuleTag::TupleForm,
                    RuleTag::TruthSet, RuleTag::Substitute})
    if (to_string(t) == s) return t;
  malformed("unknown rule tag '" + s + "'");
}

Variable variable_from(const json& j) {
  const auto name = j.get<std::string>();
  if (!is_valid_variable_name(name)) malformed("invalid variable name '" + name + "'");
  return make_variable(name);
}

json config_to_json(const EnumConfig& c) {
  return json{{"elem_vars", c.elem_vars},
              {"set_vars", c.set_vars},
              {"max_atoms", c.max_atoms},
              {"quantifier_depth", c.quantifier_depth},
              {"model_check_size", c.model_check_size},
              {"budget", c.budget},
              {"max_objects", c.max_objects}};
}

EnumConfig config_from_json(const json& j) {
  EnumConfig c;
  c.elem_vars = j.at("elem_vars").get<int>();
  c.set_vars = j.at("set_vars").get<int>();
  c.max_atoms = j.at("max_atoms").get<int>();
  c.quantifier_depth = j.at("quantifier_depth").get<int>();
  c.model_check_size = j.at("model_check_size").get<int>();
  c.budget = j.at("budget").get<std::uint64_t>();
  c.max_objects = j.at("max_objects").get<std::size_t>();
  try {
    c.validate();
  } catch (const Error& e) {
    malformed(std::string("invalid config: ") + e.what());
  }
  return c;
}

}  // namespace

json rule_to_json(const RuleApplication& rule) {
  json j{{"tag", std::string(to_string(rule.tag))}, {"parents", rule.parents}};
  switch (rule.tag) {
    case RuleTag::Connect:
      j["connective"] = connective_name(rule.connective);
      break;
    case RuleTag::Quantify:
      j["quantifier"] = rule.quantifier == Quantifier::Forall ? "forall" : "exists";
      if (rule.variable) j["variable"] = rule.variable->name;
      break;
    case RuleTag::TruthSet: {
      json bound = json::array();
      for (const auto& v : rule.bound) bound.push_back(v.name);
      j["bound"] = std::move(bound);
      break;
    }
    case RuleTag::Substitute:
      if (rule.variable) j["variable"] = rule.variable->name;
      if (rule.replacement) j["replacement"] = render(*rule.replacement, Style::Unicode);
      break;
    default:
      break;
  }
  return j;
}

RuleApplication rule_from_json(const json& j) {
  RuleApplication rule;
  rule.tag = tag_from(j.at("tag").get<std::string>());
  rule.parents = j.at("parents").get<std::vector<ObjectId>>();
  if (j.contains("connective")) rule.connective = connective_from(j["connective"].get<std::string>());
  if (j.contains("quantifier")) {
    const auto q = j["quantifier"].get<std::string>();
    if (q != "forall" && q != "exists") malformed("unknown quantifier '" + q + "'");
    rule.quantifier = q == "forall" ? Quantifier::Forall : Quantifier::Exists;
  }
  if (j.contains("variable")) rule.variable = variable_from(j["variable"]);
  if (j.contains("bound"))
    for (const auto& b : j["bound"]) rule.bound.push_back(variable_from(b));
  if (j.contains("replacement")) rule.replacement = parse_term(j["replacement"].get<std::string>());
  return rule;
}

json session_to_json(const Session& session) {
  json objects = json::array();
  for (const StoredObject& obj : session.store) {
    json o{{"id", obj.id},
           {"name", obj.name},
           {"payload", render(obj.payload, Style::Unicode)},
           {"rule", rule_to_json(obj.provenance)}};
    if (obj.description) o["description"] = *obj.description;
    if (obj.symbol) o["symbol"] = *obj.symbol;
    objects.push_back(std::move(o));
  }
  json glossary = json::array();
  for (const auto& e : session.glossary.entries())
    glossary.push_back(json{{"object", e.object_id}, {"lang", e.language}, {"text", e.text}});
  json labels = json::array();
  for (const auto& [id, l] : session.labels)
    labels.push_back(json{{"object", id}, {"label", l.label}, {"max_size", l.max_size}});
  return json{{"format_version", kSessionFormatVersion},
              {"config", config_to_json(session.config)},
              {"objects", std::move(objects)},
              {"glossary", std::move(glossary)},
              {"labels", std::move(labels)}};
}

Session session_from_json(const json& doc) {
  Session s;
  try {
    if (!doc.is_object()) malformed("session must be a JSON object");
    const int version = doc.at("format_version").get<int>();
    if (version != kSessionFormatVersion)
      malformed("unsupported session format_version " + std::to_string(version));
    s.config = config_from_json(doc.at("config"));
    for (const auto& o : doc.at("objects")) {
      StoredObject obj;
      obj.id = o.at("id").get<ObjectId>();
      obj.name = o.at("name").get<std::string>();
      try {
        obj.payload = parse(o.at("payload").get<std::string>());
      } catch (const Error& e) {
        malformed("object " + std::to_string(obj.id) + ": " + e.what());
      }
      obj.provenance = rule_from_json(o.at("rule"));
      if (o.contains("description")) obj.description = o["description"].get<std::string>();
      if (o.contains("symbol")) obj.symbol = o["symbol"].get<std::string>();
      s.store.import_object(std::move(obj));
    }
    for (const auto& g : doc.at("glossary")) {
      const auto id = g.at("object").get<ObjectId>();
      if (!s.store.contains(id)) malformed("glossary entry for unknown object " + std::to_string(id));
      const auto lang = g.at("lang").get<std::string>();
      if (s.glossary.lookup(id, lang)) malformed("duplicate glossary entry for object " + std::to_string(id));
      s.glossary.set(id, lang, g.at("text").get<std::string>());
    }
    for (const auto& l : doc.at("labels")) {
      const auto id = l.at("object").get<ObjectId>();
      if (!s.store.contains(id)) malformed("label for unknown object " + std::to_string(id));
      s.labels[id] = CachedLabel{l.at("label").get<std::string>(), l.at("max_size").get<int>()};
    }
  } catch (const json::exception& e) {
    malformed(std::string("session does not follow the schema: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedSession) throw;
    malformed(std::string("session is inconsistent: ") + e.what());
  }
  return s;
}

std::string dump_session(const Session& session) { return session_to_json(session).dump(2) + "\n"; }

Session parse_session(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    malformed(std::string("session is not valid JSON: ") + e.what());
  }
  return session_from_json(doc);
}

void save_session(const Session& session, const std::string& path) {
  const std::string text = dump_session(session);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path);
    out << text;
    out.flush();
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(ErrorCode::IoFailure, "cannot replace " + path);
}

Session load_session(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read session " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_session(buf.str());
}

}  // namespace signet
