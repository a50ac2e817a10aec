#pragma once

// Session files: one JSON document holding the enumeration config, every
// stored object (payload as grammar text, provenance as data), glossary
// entries and cached classification labels.
//
//   {
//     "format_version": 1,
//     "config":   {"elem_vars": 2, "set_vars": 2, "max_atoms": 2, "quantifier_depth": 1,
//                  "model_check_size": 3, "budget": 10000000, "max_objects": 100000},
//     "objects":  [{"id": 12, "name": "P6", "payload": "((x0 ∈ A0) & (x0 ∈ A1))",
//                   "rule": {"tag": "connect", "connective": "and", "parents": [1, 2]},
//                   "description": "...", "symbol": "..."}],
//     "glossary": [{"object": 6, "lang": "en", "text": "A0 is the universe"}],
//     "labels":   [{"object": 7, "label": "UnsatUpTo(3)", "max_size": 3}]
//   }
//
// Optional rule fields: "connective" (connect), "quantifier" and "variable"
// (quantify), "bound" (truth-set), "variable" and "replacement"
// (substitute). Saving is deterministic: load followed by save reproduces
// the file byte for byte.

#include <map>
#include <string>

#include <json.hpp>

#include "signet/enumerator.hpp"
#include "signet/net.hpp"
#include "signet/store.hpp"

namespace signet {

inline constexpr int kSessionFormatVersion = 1;

struct CachedLabel {
  std::string label;
  int max_size = 0;
  friend bool operator==(const CachedLabel&, const CachedLabel&) = default;
};

struct Session {
  EnumConfig config;
  ObjectStore store;
  Glossary glossary;
  std::map<ObjectId, CachedLabel> labels;

  // Cached label for the object at the given sweep size, computed on miss.
  std::string classification_label(ObjectId id, int max_size);
};

nlohmann::json session_to_json(const Session& session);
// MalformedSession for a document that does not follow the schema, carries
// another format_version, or describes an inconsistent store.
Session session_from_json(const nlohmann::json& doc);

std::string dump_session(const Session& session);
Session parse_session(const std::string& text);

// IoFailure when the file cannot be read or written.
void save_session(const Session& session, const std::string& path);
Session load_session(const std::string& path);

nlohmann::json rule_to_json(const RuleApplication& rule);
RuleApplication rule_from_json(const nlohmann::json& j);

}  // namespace signet
