#pragma once

// Extensional recognition of set-theoretic notions. A stored object is
// identified with a catalog template when both denote the same predicate or
// set on every interpretation up to the sweep size, under some bijective
// pairing of their parameters.

#include <map>
#include <string>
#include <vector>

#include "signet/semantics.hpp"
#include "signet/store.hpp"

namespace signet {

struct CatalogEntry {
  std::string key;      // "intersection"
  std::string symbol;   // "∩"
  std::string pattern;  // "A ∩ B", instantiated with the binding
  std::string nl_name;  // "intersection of A and B"
  Expr templ;
  std::vector<Variable> parameters;  // free variables of templ

  static CatalogEntry make(std::string key, std::string symbol, std::string pattern,
                           std::string nl_name, std::string_view template_text);
};

// Universe, non-emptiness, difference, intersection, complement, union,
// product, subset, powerset, symmetric difference, in that order.
const std::vector<CatalogEntry>& builtin_catalog();

// JSON array of {"key", "symbol", "pattern", "nl", "template"} objects.
std::vector<CatalogEntry> parse_catalog(const std::string& json_text);
std::vector<CatalogEntry> load_catalog_file(const std::string& path);

// Replaces whole identifiers of text that are keys of binding.
std::string instantiate(const std::string& text, const std::map<std::string, std::string>& binding);

struct Match {
  std::string key;
  std::string symbol;
  // template parameter -> object variable
  std::map<std::string, std::string> binding;
  std::string instantiated_symbol;  // "A0 ∩ A1"
  std::string instantiated_nl;      // "intersection of A0 and A1"
};

struct RecognitionResult {
  ObjectId object_id = 0;
  std::vector<Match> matches;
  int checked_size = 0;
};

using RecognitionIndex = std::map<ObjectId, RecognitionResult>;

// Pure matcher over a payload.
std::vector<Match> match_catalog(const Expr& payload, const std::vector<CatalogEntry>& catalog,
                                 int max_size = kDefaultModelSize, std::uint64_t budget = kDefaultBudget);

// Matches a stored object and records the first match's instantiated symbol
// on it.
RecognitionResult recognize(ObjectStore& store, ObjectId id, const std::vector<CatalogEntry>& catalog,
                            int max_size = kDefaultModelSize, std::uint64_t budget = kDefaultBudget);

struct SignatureEntry {
  std::string symbol;
  std::string key;
  ObjectId object_id = 0;  // 0 for the base membership symbol
  std::string instantiated;
};

struct SignatureExtension {
  std::vector<SignatureEntry> entries;  // starts with ∈
  RecognitionIndex results;

  bool contains(const std::string& symbol) const;
  // "⟨Set; ∈, ∩, ∪⟩"
  std::string str() const;
};

SignatureExtension signature_report(ObjectStore& store, const std::vector<CatalogEntry>& catalog,
                                    int max_size = kDefaultModelSize, std::uint64_t budget = kDefaultBudget);

}  // namespace signet
