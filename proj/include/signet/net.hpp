#pragma once

// Semantic net over a store: one vertex per stored object, typed directed
// edges for derivation, syntactic, logical, quantificational and
// set-theoretic relations, plus natural-language readings driven by a
// glossary.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "signet/recognition.hpp"
#include "signet/store.hpp"

namespace signet {

// --- glossary and natural language ------------------------------------------

struct GlossaryEntry {
  ObjectId object_id = 0;
  std::string language;  // "en", "ru", ...
  std::string text;

  friend bool operator==(const GlossaryEntry&, const GlossaryEntry&) = default;
};

// At most one entry per (object, language); set() replaces.
class Glossary {
 public:
  void set(ObjectId id, const std::string& language, const std::string& text);
  std::optional<std::string> lookup(ObjectId id, const std::string& language) const;
  bool erase(ObjectId id, const std::string& language);
  std::vector<GlossaryEntry> entries() const;  // sorted by (id, language)
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const Glossary&, const Glossary&) = default;

 private:
  std::map<std::pair<ObjectId, std::string>, std::string> entries_;
};

// Reading of one object. Precedence: glossary entry in the language, the
// object's own description (English only), its first recognized notion,
// then the compositional reading. UnknownId for a missing object.
std::string render_nl(const ObjectStore& store, ObjectId id, const Glossary& glossary,
                      const RecognitionIndex& recognized, const std::string& language = "en");

// Constructor-by-constructor reading. Stored subexpressions with a glossary
// entry or a recognized notion are read through those.
//   (x0 ∈ A0)           (x0 is in A0)
//   ¬φ                  (not φ)
//   (φ & ψ), (φ ∨ ψ)    (φ and ψ), (φ or ψ)
//   (φ ⇒ ψ)             (if φ then ψ)
//   ∀(x0) [φ]           for all x0, φ
//   ∃(x0) [φ]           for some x0, φ
//   {x0, x1 | φ}        the set of all ⟨x0, x1⟩ such that φ
std::string compose_nl(const Expr& e, const ObjectStore* store = nullptr, const Glossary* glossary = nullptr,
                       const RecognitionIndex* recognized = nullptr, const std::string& language = "en");

// --- graph ------------------------------------------------------------------

enum class EdgeKind { Derivation, Syntactic, Logical, Quantificational, SetTheoretic };

struct Edge {
  EdgeKind kind = EdgeKind::Derivation;
  // Derivation: rule label ("connect-and"); Syntactic: "subformula";
  // Logical: "and" | "or" | "not" | "implies"; Quantificational: "forall" |
  // "exists"; SetTheoretic: "truth-set-of" | "member-of" |
  // "extensionally-equal".
  std::string tag;
  ObjectId src = 0;
  ObjectId dst = 0;

  // "derivation:connect-and"
  std::string kind_label() const;
  friend bool operator==(const Edge&, const Edge&) = default;
};

std::string_view to_string(EdgeKind kind);

struct NetVertex {
  ObjectId id = 0;
  std::string name;
  std::string formula;  // unicode rendering
  std::optional<std::string> symbol;
  std::optional<std::string> description;

  friend bool operator==(const NetVertex&, const NetVertex&) = default;
};

struct NetGraph {
  std::vector<NetVertex> vertices;
  std::vector<Edge> edges;

  std::vector<Edge> edges_of(EdgeKind kind) const;
  friend bool operator==(const NetGraph&, const NetGraph&) = default;
};

// Pure function of the store (and optional recognition results, which add
// extensional-equality edges). Edges are ordered by the id of the object
// that introduces them.
NetGraph derive_edges(const ObjectStore& store, const RecognitionIndex* recognized = nullptr);

enum class NetFormat { Dot, Json };

std::string export_net(const NetGraph& net, NetFormat format);
// IoFailure when the stream cannot be written.
void export_net(const NetGraph& net, NetFormat format, std::ostream& out);
// ParseError on a document that does not follow the JSON graph schema.
NetGraph import_net(const std::string& json_text);

}  // namespace signet
