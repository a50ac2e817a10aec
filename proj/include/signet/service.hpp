#pragma once

// JSON-over-HTTP access to a session. Mutations go through one writer lock;
// reads share it and see a consistent store.
//
//   GET  /health
//   GET  /objects                      table rows
//   GET  /objects/{id}
//   GET  /objects/{id}/classify        ?max_size=k
//   GET  /objects/{id}/recognize       ?max_size=k, records the symbol
//   GET  /objects/{id}/nl              ?lang=en
//   POST /objects/{id}/description     {"text": "..."}
//   POST /objects/{id}/glossary        {"lang": "en", "text": "..."}
//   POST /rules/negate                 {"parent": 1}
//   POST /rules/connect                {"op": "and", "left": 1, "right": 2}
//   POST /rules/quantify               {"q": "forall", "var": "x0", "parent": 1}
//   POST /rules/truth-set              {"bound": ["x0"], "parent": 18}
//   POST /rules/substitute             {"target": 20, "var": "A1", "replacement": "{x0 | ...}"}
//                                      or {"target": 20, "var": "A1", "replacement_object": 21}
//   GET  /net                          JSON graph
//   GET  /export/dot
//   POST /session/save                 {"path": "..."} optional
//   POST /session/reload               409 while a mutation holds the writer lock
//
// Rule responses: {"row": {...}, "already_present": bool}. Errors:
// {"error": "NotFree", "message": "..."} with 400, 404 for unknown ids and
// routes.

#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include <json.hpp>

#include "signet/session.hpp"

namespace signet {

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

class Service {
 public:
  Service(Session session, std::string session_path = {});

  // Dispatch without a socket; the HTTP server calls this too. query is the
  // raw query string without '?'.
  Response handle(const std::string& method, const std::string& path, const std::string& body,
                  const std::string& query = {});

  // Binds and blocks until stop(). Returns false when the port cannot be
  // bound.
  bool serve(const std::string& host, int port);
  // Binds to a free port and returns it; listen with run() afterwards.
  int bind_any(const std::string& host);
  bool run();
  void stop();
  void wait_until_ready() const;

  // Holds the writer lock for the guard's lifetime, as a long mutation
  // would.
  std::unique_lock<std::shared_mutex> writer();

  Session snapshot() const;

  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

// Row shown in the object table.
nlohmann::json object_row(const StoredObject& obj, const std::string& label);

}  // namespace signet
