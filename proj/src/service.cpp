#include "signet/service.hpp"

#include <httplib.h>

#include <charconv>
#include <sstream>

#include "signet/net.hpp"
#include "signet/recognition.hpp"
#include "signet/semantics.hpp"
#include "signet/syntax.hpp"

namespace signet {

using nlohmann::json;

json object_row(const StoredObject& obj, const std::string& label) {
  json vars = json::array();
  for (const auto& v : free_vars(obj.payload)) vars.push_back(v.name);
  json row{{"id", obj.id},
           {"name", obj.name},
           {"notation", obj.notation()},
           {"kind", std::string(1, family_letter(obj.family()))},
           {"formula", render(obj.payload, Style::Unicode)},
           {"ascii", render(obj.payload, Style::Ascii)},
           {"label", label},
           {"free_vars", std::move(vars)},
           {"rule", rule_to_json(obj.provenance)}};
  row["description"] = obj.description ? json(*obj.description) : json(nullptr);
  row["symbol"] = obj.symbol ? json(*obj.symbol) : json(nullptr);
  return row;
}

namespace {

struct HttpError {
  int status;
  std::string code;
  std::string message;
};

Response json_response(const json& j, int status = 200) { return Response{status, "application/json", j.dump(2)}; }

Response error_response(int status, const std::string& code, const std::string& message) {
  return json_response(json{{"error", code}, {"message", message}}, status);
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::stringstream in(path);
  std::string part;
  while (std::getline(in, part, '/'))
    if (!part.empty()) out.push_back(part);
  return out;
}

std::map<std::string, std::string> parse_query(const std::string& query) {
  std::map<std::string, std::string> out;
  std::stringstream in(query);
  std::string kv;
  while (std::getline(in, kv, '&')) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) out[kv] = "";
    else out[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return out;
}

ObjectId parse_id(const std::string& s) {
  ObjectId id = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), id);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw HttpError{404, "UnknownId", "no object '" + s + "'"};
  return id;
}

int parse_int(const std::string& s, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be an integer");
  return v;
}

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "request body must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("request body is not valid JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& body, const char* name) {
  if (!body.contains(name)) throw Error(ErrorCode::InvalidArgument, std::string("missing field '") + name + "'");
  try {
    return body.at(name).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::InvalidArgument, std::string("field '") + name + "' has the wrong type");
  }
}

Variable variable_field(const json& body, const char* name) {
  const auto text = field<std::string>(body, name);
  if (!is_valid_variable_name(text)) throw Error(ErrorCode::InvalidArgument, "invalid variable name '" + text + "'");
  return make_variable(text);
}

json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return json{{"domain_size", w->domain_size}, {"assignment", w->assignment.str(w->domain_size)}};
}

}  // namespace

class Service::Impl {
 public:
  Impl(Session s, std::string p) : session(std::move(s)), path(std::move(p)) {}

  Session session;
  std::string path;
  mutable std::shared_mutex mu;
  std::mutex label_mu;  // guards session.labels under a shared lock
  httplib::Server server;

  std::string label(ObjectId id, int k) {
    {
      std::lock_guard<std::mutex> g(label_mu);
      auto it = session.labels.find(id);
      if (it != session.labels.end() && it->second.max_size == k) return it->second.label;
    }
    const StoredObject& obj = session.store.at(id);
    std::string l = obj.is_formula() ? classify(*obj.formula(), k, session.config.budget).label() : "truth-set";
    std::lock_guard<std::mutex> g(label_mu);
    session.labels[id] = CachedLabel{l, k};
    return l;
  }

  void require_object(ObjectId id) const {
    if (!session.store.contains(id))
      throw HttpError{404, "UnknownId", "no object with id " + std::to_string(id)};
  }

  json row(ObjectId id) { return object_row(session.store.at(id), label(id, session.config.model_check_size)); }

  Response rule(const std::string& name, const json& body) {
    std::unique_lock<std::shared_mutex> lock(mu);
    ObjectStore& store = session.store;
    auto parent = [&](const char* key) {
      const auto id = field<ObjectId>(body, key);
      require_object(id);
      return id;
    };
    RuleOutcome out{};
    if (name == "negate") {
      out = store.apply_negate(parent("parent"));
    } else if (name == "connect") {
      const auto op = field<std::string>(body, "op");
      Connective c;
      if (op == "and") c = Connective::And;
      else if (op == "or") c = Connective::Or;
      else if (op == "implies") c = Connective::Implies;
      else throw Error(ErrorCode::InvalidArgument, "unknown connective '" + op + "'");
      const auto left = parent("left");
      out = store.apply_connect(c, left, parent("right"));
    } else if (name == "quantify") {
      const auto q = field<std::string>(body, "q");
      if (q != "forall" && q != "exists") throw Error(ErrorCode::InvalidArgument, "unknown quantifier '" + q + "'");
      const auto v = variable_field(body, "var");
      out = store.apply_quantify(q == "forall" ? Quantifier::Forall : Quantifier::Exists, v, parent("parent"));
    } else if (name == "truth-set") {
      std::vector<Variable> bound;
      for (const auto& b : field<std::vector<std::string>>(body, "bound")) {
        if (!is_valid_variable_name(b)) throw Error(ErrorCode::InvalidArgument, "invalid variable name '" + b + "'");
        bound.push_back(make_variable(b));
      }
      out = store.apply_truth_set(bound, parent("parent"));
    } else if (name == "substitute") {
      const auto target = parent("target");
      const auto v = variable_field(body, "var");
      if (body.contains("replacement_object"))
        out = store.apply_substitute(target, v, parent("replacement_object"));
      else
        out = store.apply_substitute(target, v, parse_term(field<std::string>(body, "replacement")));
    } else {
      throw HttpError{404, "NotFound", "no rule '" + name + "'"};
    }
    return json_response(json{{"row", row(out.id)}, {"already_present", out.already_present}});
  }

  Response route(const std::string& method, const std::string& path_text, const std::string& body_text,
                 const std::string& query_text) {
    const auto parts = split_path(path_text);
    const auto query = parse_query(query_text);
    auto size_param = [&]() {
      auto it = query.find("max_size");
      const int k = it == query.end() ? session.config.model_check_size : parse_int(it->second, "max_size");
      if (k < 1) throw Error(ErrorCode::InvalidArgument, "max_size must be at least 1");
      return k;
    };

    if (method == "GET" && parts == std::vector<std::string>{"health"}) {
      std::shared_lock<std::shared_mutex> lock(mu);
      return json_response(json{{"status", "ok"}, {"objects", session.store.size()}});
    }
    if (!parts.empty() && parts[0] == "objects") {
      if (parts.size() == 1 && method == "GET") {
        std::shared_lock<std::shared_mutex> lock(mu);
        json rows = json::array();
        for (const auto& obj : session.store) rows.push_back(row(obj.id));
        return json_response(rows);
      }
      if (parts.size() >= 2) {
        const ObjectId id = parse_id(parts[1]);
        if (parts.size() == 2 && method == "GET") {
          std::shared_lock<std::shared_mutex> lock(mu);
          require_object(id);
          return json_response(row(id));
        }
        if (parts.size() == 3 && parts[2] == "classify" && method == "GET") {
          std::shared_lock<std::shared_mutex> lock(mu);
          require_object(id);
          const int k = size_param();
          const StoredObject& obj = session.store.at(id);
          if (!obj.is_formula())
            throw Error(ErrorCode::NotAFormula, obj.name + " is a truth set; only predicates are classified");
          const auto c = classify(*obj.formula(), k, session.config.budget);
          {
            std::lock_guard<std::mutex> g(label_mu);
            session.labels[id] = CachedLabel{c.label(), k};
          }
          return json_response(json{{"id", id},
                                    {"label", c.label()},
                                    {"max_size", k},
                                    {"witness_true", witness_json(c.witness_true)},
                                    {"witness_false", witness_json(c.witness_false)}});
        }
        if (parts.size() == 3 && parts[2] == "recognize" && method == "GET") {
          std::unique_lock<std::shared_mutex> lock(mu);
          require_object(id);
          const auto r = recognize(session.store, id, builtin_catalog(), size_param(), session.config.budget);
          json matches = json::array();
          for (const auto& m : r.matches)
            matches.push_back(json{{"key", m.key},
                                   {"symbol", m.instantiated_symbol},
                                   {"nl", m.instantiated_nl},
                                   {"binding", m.binding}});
          return json_response(json{{"id", id}, {"max_size", r.checked_size}, {"matches", matches}, {"row", row(id)}});
        }
        if (parts.size() == 3 && parts[2] == "nl" && method == "GET") {
          std::unique_lock<std::shared_mutex> lock(mu);
          require_object(id);
          auto it = query.find("lang");
          const std::string lang = it == query.end() ? "en" : it->second;
          RecognitionIndex index;
          index.emplace(id, recognize(session.store, id, builtin_catalog(), session.config.model_check_size,
                                      session.config.budget));
          return json_response(
              json{{"id", id}, {"lang", lang}, {"text", render_nl(session.store, id, session.glossary, index, lang)}});
        }
        if (parts.size() == 3 && parts[2] == "description" && method == "POST") {
          const json body = parse_body(body_text);
          std::unique_lock<std::shared_mutex> lock(mu);
          require_object(id);
          const auto text = field<std::string>(body, "text");
          if (text.empty()) session.store.at(id).description.reset();
          else session.store.at(id).description = text;
          return json_response(row(id));
        }
        if (parts.size() == 3 && parts[2] == "glossary" && method == "POST") {
          const json body = parse_body(body_text);
          std::unique_lock<std::shared_mutex> lock(mu);
          require_object(id);
          session.glossary.set(id, field<std::string>(body, "lang"), field<std::string>(body, "text"));
          return json_response(row(id));
        }
      }
    }
    if (parts.size() == 2 && parts[0] == "rules" && method == "POST") return rule(parts[1], parse_body(body_text));
    if (method == "GET" && parts == std::vector<std::string>{"net"}) {
      std::shared_lock<std::shared_mutex> lock(mu);
      return Response{200, "application/json", export_net(derive_edges(session.store), NetFormat::Json)};
    }
    if (method == "GET" && parts == std::vector<std::string>{"export", "dot"}) {
      std::shared_lock<std::shared_mutex> lock(mu);
      return Response{200, "text/vnd.graphviz", export_net(derive_edges(session.store), NetFormat::Dot)};
    }
    if (method == "POST" && parts == std::vector<std::string>{"session", "save"}) {
      const json body = parse_body(body_text);
      std::shared_lock<std::shared_mutex> lock(mu);
      const std::string target = body.contains("path") ? field<std::string>(body, "path") : path;
      if (target.empty()) throw Error(ErrorCode::InvalidArgument, "no session path configured");
      std::lock_guard<std::mutex> g(label_mu);
      save_session(session, target);
      return json_response(json{{"saved", target}, {"objects", session.store.size()}});
    }
    if (method == "POST" && parts == std::vector<std::string>{"session", "reload"}) {
      std::unique_lock<std::shared_mutex> lock(mu, std::try_to_lock);
      if (!lock.owns_lock()) throw HttpError{409, "Conflict", "a mutation is in progress"};
      if (path.empty()) throw Error(ErrorCode::InvalidArgument, "no session path configured");
      session = load_session(path);
      return json_response(json{{"reloaded", path}, {"objects", session.store.size()}});
    }
    throw HttpError{404, "NotFound", "no route " + method + " " + path_text};
  }
};

Service::Service(Session session, std::string session_path)
    : impl_(std::make_unique<Impl>(std::move(session), std::move(session_path))) {
  auto bridge = [this](const httplib::Request& req, httplib::Response& res) {
    std::string query;
    for (const auto& [k, v] : req.params) {
      if (!query.empty()) query += "&";
      query += k + "=" + v;
    }
    Response r = handle(req.method, req.path, req.body, query);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  impl_->server.Get(".*", bridge);
  impl_->server.Post(".*", bridge);
}

Service::~Service() = default;

Response Service::handle(const std::string& method, const std::string& path, const std::string& body,
                         const std::string& query) {
  try {
    return impl_->route(method, path, body, query);
  } catch (const HttpError& e) {
    return error_response(e.status, e.code, e.message);
  } catch (const Error& e) {
    const int status = e.code() == ErrorCode::UnknownId ? 404 : e.code() == ErrorCode::IoFailure ? 500 : 400;
    return error_response(status, std::string(to_string(e.code())), e.what());
  }
}

bool Service::serve(const std::string& host, int port) { return impl_->server.listen(host, port); }

int Service::bind_any(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool Service::run() { return impl_->server.listen_after_bind(); }

void Service::stop() { impl_->server.stop(); }

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

std::unique_lock<std::shared_mutex> Service::writer() { return std::unique_lock<std::shared_mutex>(impl_->mu); }

Session Service::snapshot() const {
  std::shared_lock<std::shared_mutex> lock(impl_->mu);
  std::lock_guard<std::mutex> g(impl_->label_mu);
  return impl_->session;
}

}  // namespace signet
