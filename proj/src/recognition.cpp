#include "signet/recognition.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "signet/syntax.hpp"

namespace signet {

CatalogEntry CatalogEntry::make(std::string key, std::string symbol, std::string pattern,
                                std::string nl_name, std::string_view template_text) {
  CatalogEntry e;
  e.key = std::move(key);
  e.symbol = std::move(symbol);
  e.pattern = std::move(pattern);
  e.nl_name = std::move(nl_name);
  e.templ = parse(template_text);
  e.parameters = free_vars(e.templ);
  return e;
}

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> catalog = {
      CatalogEntry::make("universe", "I", "A = I", "A-universe", "forall(x) [(x in A)]"),
      CatalogEntry::make("nonempty", "≠∅", "A ≠ ∅", "A not empty set", "exists(x) [(x in A)]"),
      CatalogEntry::make("difference", "\\", "A \\ B", "difference of A and B",
                         "{x | ((x in A) & ~(x in B))}"),
      CatalogEntry::make("intersection", "∩", "A ∩ B", "intersection of A and B",
                         "{x | ((x in A) & (x in B))}"),
      CatalogEntry::make("complement", "∁", "∁A", "the complement to A", "{x | ~(x in A)}"),
      CatalogEntry::make("union", "∪", "A ∪ B", "union of A and B", "{x | ((x in A) | (x in B))}"),
      CatalogEntry::make("product", "×", "A × B", "Cartesian product of A and B",
                         "{x, y | ((x in A) & (y in B))}"),
      CatalogEntry::make("subset", "⊂", "B ⊂ A", "B subset A", "forall(x) [((x in A) | ~(x in B))]"),
      CatalogEntry::make("powerset", "𝒫", "𝒫(A)", "the powerset of A",
                         "{B | forall(x) [((x in A) | ~(x in B))]}"),
      CatalogEntry::make("symmetric-difference", "△", "A △ B", "symmetric difference of A and B",
                         "{x | (((x in A) & ~(x in B)) | (~(x in A) & (x in B)))}"),
  };
  return catalog;
}

std::vector<CatalogEntry> parse_catalog(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("catalog is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::ParseError, "catalog must be a JSON array");
  std::vector<CatalogEntry> out;
  for (const auto& item : doc) {
    try {
      out.push_back(CatalogEntry::make(item.at("key").get<std::string>(), item.at("symbol").get<std::string>(),
                                       item.at("pattern").get<std::string>(), item.at("nl").get<std::string>(),
                                       item.at("template").get<std::string>()));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("catalog entry is incomplete: ") + e.what());
    }
  }
  return out;
}

std::vector<CatalogEntry> load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read catalog " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

std::string instantiate(const std::string& text, const std::map<std::string, std::string>& binding) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isalpha(c)) {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' ||
                                 text[j] == '\''))
        ++j;
      const std::string word = text.substr(i, j - i);
      auto it = binding.find(word);
      out += it == binding.end() ? word : it->second;
      i = j;
    } else {
      out += text[i++];
    }
  }
  return out;
}

namespace {

bool same_profile(const Expr& payload, const CatalogEntry& entry, const std::vector<Variable>& params) {
  if (is_formula(payload) != is_formula(entry.templ)) return false;
  if (params.size() != entry.parameters.size()) return false;
  if (!is_formula(payload)) {
    const auto& a = std::get<TermPtr>(payload);
    const auto& b = std::get<TermPtr>(entry.templ);
    if (require_well_sorted(*a) != require_well_sorted(*b)) return false;
  }
  std::vector<std::string> sa;
  std::vector<std::string> sb;
  for (const auto& v : params) sa.push_back(v.sort.str());
  for (const auto& v : entry.parameters) sb.push_back(v.sort.str());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

}  // namespace

std::vector<Match> match_catalog(const Expr& payload, const std::vector<CatalogEntry>& catalog, int max_size,
                                 std::uint64_t budget) {
  std::vector<Match> matches;
  const auto params = free_vars(payload);
  for (const auto& entry : catalog) {
    if (!same_profile(payload, entry, params)) continue;
    // Every bijection template parameter -> object parameter, sorts kept.
    std::vector<std::size_t> perm(params.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
      VariablePairing pairing;
      bool sorts_ok = true;
      for (std::size_t i = 0; i < perm.size(); ++i) {
        const Variable& tp = entry.parameters[i];
        const Variable& op = params[perm[i]];
        if (tp.sort != op.sort) {
          sorts_ok = false;
          break;
        }
        pairing[tp.name] = op.name;
      }
      if (!sorts_ok) continue;
      if (!extensionally_equal(payload, entry.templ, max_size, pairing, budget).equal) continue;
      Match m;
      m.key = entry.key;
      m.symbol = entry.symbol;
      m.binding = pairing;
      m.instantiated_symbol = instantiate(entry.pattern, pairing);
      m.instantiated_nl = instantiate(entry.nl_name, pairing);
      matches.push_back(std::move(m));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return matches;
}

RecognitionResult recognize(ObjectStore& store, ObjectId id, const std::vector<CatalogEntry>& catalog, int max_size,
                            std::uint64_t budget) {
  if (max_size < 1) throw Error(ErrorCode::InvalidArgument, "max size must be at least 1");
  StoredObject& obj = store.at(id);
  RecognitionResult result;
  result.object_id = id;
  result.checked_size = max_size;
  result.matches = match_catalog(obj.payload, catalog, max_size, budget);
  if (!result.matches.empty()) obj.symbol = result.matches.front().instantiated_symbol;
  return result;
}

bool SignatureExtension::contains(const std::string& symbol) const {
  return std::any_of(entries.begin(), entries.end(), [&](const SignatureEntry& e) { return e.symbol == symbol; });
}

std::string SignatureExtension::str() const {
  std::string out = "⟨Set; ";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ", ";
    out += entries[i].symbol;
  }
  return out + "⟩";
}

SignatureExtension signature_report(ObjectStore& store, const std::vector<CatalogEntry>& catalog, int max_size,
                                    std::uint64_t budget) {
  SignatureExtension ext;
  ext.entries.push_back(SignatureEntry{"∈", "membership", 0, "x ∈ A"});
  for (ObjectId id = 1; id <= store.size(); ++id) {
    RecognitionResult r = recognize(store, id, catalog, max_size, budget);
    for (const auto& m : r.matches) {
      const bool seen = std::any_of(ext.entries.begin(), ext.entries.end(),
                                    [&](const SignatureEntry& e) { return e.key == m.key; });
      if (!seen) ext.entries.push_back(SignatureEntry{m.symbol, m.key, id, m.instantiated_symbol});
    }
    if (!r.matches.empty()) ext.results.emplace(id, std::move(r));
  }
  return ext;
}

}  // namespace signet
