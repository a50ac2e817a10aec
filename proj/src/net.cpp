#include "signet/net.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "signet/syntax.hpp"

namespace signet {

// --- glossary ---------------------------------------------------------------

void Glossary::set(ObjectId id, const std::string& language, const std::string& text) {
  if (language.empty()) throw Error(ErrorCode::InvalidArgument, "glossary language tag is empty");
  entries_[{id, language}] = text;
}

std::optional<std::string> Glossary::lookup(ObjectId id, const std::string& language) const {
  auto it = entries_.find({id, language});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool Glossary::erase(ObjectId id, const std::string& language) { return entries_.erase({id, language}) > 0; }

std::vector<GlossaryEntry> Glossary::entries() const {
  std::vector<GlossaryEntry> out;
  for (const auto& [k, text] : entries_) out.push_back(GlossaryEntry{k.first, k.second, text});
  return out;
}

// --- natural language -------------------------------------------------------

namespace {

struct NlContext {
  const ObjectStore* store;
  const Glossary* glossary;
  const RecognitionIndex* recognized;
  const std::string& language;

  std::optional<std::string> named(const Expr& e) const {
    if (!store) return std::nullopt;
    auto id = store->find(e);
    if (!id) return std::nullopt;
    if (glossary)
      if (auto text = glossary->lookup(*id, language)) return text;
    if (recognized) {
      auto it = recognized->find(*id);
      if (it != recognized->end() && !it->second.matches.empty())
        return it->second.matches.front().instantiated_nl;
    }
    return std::nullopt;
  }
};

std::string nl_formula(const FormulaPtr& f, const NlContext& ctx, bool top);

std::string bound_list(const std::vector<Variable>& bound) {
  if (bound.size() == 1) return bound[0].name;
  std::string out = "⟨";
  for (std::size_t i = 0; i < bound.size(); ++i) {
    if (i) out += ", ";
    out += bound[i].name;
  }
  return out + "⟩";
}

std::string nl_term(const TermPtr& t, const NlContext& ctx, bool top) {
  if (!top)
    if (auto n = ctx.named(Expr{t})) return *n;
  return std::visit(
      [&](const auto& node) -> std::string {
        using N = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<N, VarTerm>) {
          return node.var.name;
        } else if constexpr (std::is_same_v<N, TupleTerm>) {
          std::string out = "⟨";
          for (std::size_t i = 0; i < node.components.size(); ++i) {
            if (i) out += ", ";
            out += nl_term(node.components[i], ctx, false);
          }
          return out + "⟩";
        } else {
          return "the set of all " + bound_list(node.bound) + " such that " + nl_formula(node.body, ctx, false);
        }
      },
      t->node);
}

std::string nl_formula(const FormulaPtr& f, const NlContext& ctx, bool top) {
  if (!top)
    if (auto n = ctx.named(Expr{f})) return "(" + *n + ")";
  return std::visit(
      [&](const auto& node) -> std::string {
        using N = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<N, Member>) {
          return "(" + nl_term(node.lhs, ctx, false) + " is in " + nl_term(node.rhs, ctx, false) + ")";
        } else if constexpr (std::is_same_v<N, Not>) {
          return "(not " + nl_formula(node.operand, ctx, false) + ")";
        } else if constexpr (std::is_same_v<N, Binary>) {
          const std::string l = nl_formula(node.left, ctx, false);
          const std::string r = nl_formula(node.right, ctx, false);
          switch (node.op) {
            case Connective::And: return "(" + l + " and " + r + ")";
            case Connective::Or: return "(" + l + " or " + r + ")";
            case Connective::Implies: return "(if " + l + " then " + r + ")";
          }
          return {};
        } else {
          const char* lead = node.quantifier == Quantifier::Forall ? "for all " : "for some ";
          return lead + node.var.name + ", " + nl_formula(node.body, ctx, false);
        }
      },
      f->node);
}

}  // namespace

std::string compose_nl(const Expr& e, const ObjectStore* store, const Glossary* glossary,
                       const RecognitionIndex* recognized, const std::string& language) {
  NlContext ctx{store, glossary, recognized, language};
  if (is_formula(e)) return nl_formula(as_formula(e), ctx, true);
  return nl_term(as_term(e), ctx, true);
}

std::string render_nl(const ObjectStore& store, ObjectId id, const Glossary& glossary,
                      const RecognitionIndex& recognized, const std::string& language) {
  if (!store.contains(id)) throw Error(ErrorCode::UnknownId, "no object with id " + std::to_string(id));
  if (auto text = glossary.lookup(id, language)) return *text;
  const StoredObject& obj = store.at(id);
  if (language == "en" && obj.description) return *obj.description;
  auto it = recognized.find(id);
  if (it != recognized.end() && !it->second.matches.empty()) return it->second.matches.front().instantiated_nl;
  return compose_nl(obj.payload, &store, &glossary, &recognized, language);
}

// --- edges ------------------------------------------------------------------

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Derivation: return "derivation";
    case EdgeKind::Syntactic: return "syntactic";
    case EdgeKind::Logical: return "logical";
    case EdgeKind::Quantificational: return "quantificational";
    case EdgeKind::SetTheoretic: return "set";
  }
  return "?";
}

std::string Edge::kind_label() const { return std::string(to_string(kind)) + ":" + tag; }

namespace {

std::optional<EdgeKind> edge_kind_from(std::string_view s) {
  for (EdgeKind k : {EdgeKind::Derivation, EdgeKind::Syntactic, EdgeKind::Logical, EdgeKind::Quantificational,
                     EdgeKind::SetTheoretic})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

const char* connective_tag(Connective c) {
  switch (c) {
    case Connective::And: return "and";
    case Connective::Or: return "or";
    case Connective::Implies: return "implies";
  }
  return "?";
}

class EdgeSink {
 public:
  void add(EdgeKind kind, std::string tag, ObjectId src, ObjectId dst) {
    Edge e{kind, std::move(tag), src, dst};
    if (seen_.insert(e.kind_label() + "|" + std::to_string(src) + "|" + std::to_string(dst)).second)
      edges_.push_back(std::move(e));
  }
  std::vector<Edge> take() { return std::move(edges_); }

 private:
  std::set<std::string> seen_;
  std::vector<Edge> edges_;
};

std::vector<FormulaPtr> immediate_subformulae(const Formula& f) {
  return std::visit(
      [](const auto& node) -> std::vector<FormulaPtr> {
        using N = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<N, Member>) {
          return {};
        } else if constexpr (std::is_same_v<N, Not>) {
          return {node.operand};
        } else if constexpr (std::is_same_v<N, Binary>) {
          return {node.left, node.right};
        } else {
          return {node.body};
        }
      },
      f.node);
}

// Logical or quantificational relation named by the top constructor; none
// for membership atoms.
std::optional<std::pair<EdgeKind, std::string>> top_relation(const Formula& f) {
  return std::visit(
      [](const auto& node) -> std::optional<std::pair<EdgeKind, std::string>> {
        using N = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<N, Member>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<N, Not>) {
          return std::make_pair(EdgeKind::Logical, std::string("not"));
        } else if constexpr (std::is_same_v<N, Binary>) {
          return std::make_pair(EdgeKind::Logical, std::string(connective_tag(node.op)));
        } else {
          return std::make_pair(EdgeKind::Quantificational,
                                std::string(node.quantifier == Quantifier::Forall ? "forall" : "exists"));
        }
      },
      f.node);
}

std::string match_signature(const Match& m) {
  std::string out = m.key;
  for (const auto& [k, v] : m.binding) out += "|" + k + "=" + v;
  return out;
}

}  // namespace

std::vector<Edge> NetGraph::edges_of(EdgeKind kind) const {
  std::vector<Edge> out;
  std::copy_if(edges.begin(), edges.end(), std::back_inserter(out), [&](const Edge& e) { return e.kind == kind; });
  return out;
}

NetGraph derive_edges(const ObjectStore& store, const RecognitionIndex* recognized) {
  NetGraph net;
  EdgeSink sink;
  std::map<std::string, ObjectId> first_with_match;

  for (const StoredObject& obj : store) {
    net.vertices.push_back(NetVertex{obj.id, obj.name, render(obj.payload, Style::Unicode), obj.symbol,
                                     obj.description});

    for (ObjectId p : obj.provenance.parents) sink.add(EdgeKind::Derivation, obj.provenance.label(), p, obj.id);

    if (obj.is_formula()) {
      const Formula& f = *obj.formula();
      auto relation = top_relation(f);
      for (const auto& sub : immediate_subformulae(f)) {
        auto sub_id = store.find(Expr{sub});
        if (!sub_id || *sub_id == obj.id) continue;
        sink.add(EdgeKind::Syntactic, "subformula", obj.id, *sub_id);
        if (relation) sink.add(relation->first, relation->second, obj.id, *sub_id);
      }
      if (const auto* m = std::get_if<Member>(&f.node)) {
        if (std::holds_alternative<ComprehensionTerm>(m->rhs->node))
          if (auto set_id = store.find(Expr{m->rhs})) sink.add(EdgeKind::SetTheoretic, "member-of", obj.id, *set_id);
      }
    } else {
      std::optional<ObjectId> def;
      if (obj.provenance.tag == RuleTag::TruthSet && obj.provenance.parents.size() == 1 &&
          store.at(obj.provenance.parents[0]).is_formula())
        def = obj.provenance.parents[0];
      else
        def = store.find(Expr{std::get<ComprehensionTerm>(obj.term()->node).body});
      if (def) sink.add(EdgeKind::SetTheoretic, "truth-set-of", obj.id, *def);
    }

    if (recognized) {
      auto it = recognized->find(obj.id);
      if (it != recognized->end()) {
        for (const Match& m : it->second.matches) {
          auto [pos, inserted] = first_with_match.emplace(match_signature(m), obj.id);
          if (!inserted && pos->second != obj.id)
            sink.add(EdgeKind::SetTheoretic, "extensionally-equal", obj.id, pos->second);
        }
      }
    }
  }
  net.edges = sink.take();
  return net;
}

// --- export / import --------------------------------------------------------

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

const char* edge_color(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Derivation: return "black";
    case EdgeKind::Syntactic: return "gray50";
    case EdgeKind::Logical: return "blue";
    case EdgeKind::Quantificational: return "darkgreen";
    case EdgeKind::SetTheoretic: return "red";
  }
  return "black";
}

std::string to_dot(const NetGraph& net) {
  std::set<ObjectId> has_parent;
  for (const auto& e : net.edges)
    if (e.kind == EdgeKind::Derivation) has_parent.insert(e.dst);

  std::ostringstream out;
  out << "digraph net {\n";
  out << "  node [fontname=\"Helvetica\"];\n";
  for (const auto& v : net.vertices) {
    out << "  n" << v.id << " [label=\"" << dot_escape(v.name + ": " + v.formula) << "\"";
    if (!has_parent.count(v.id)) out << ", shape=box";
    if (v.symbol) out << ", tooltip=\"" << dot_escape(*v.symbol) << "\"";
    out << "];\n";
  }
  for (const auto& e : net.edges)
    out << "  n" << e.src << " -> n" << e.dst << " [color=" << edge_color(e.kind) << ", label=\""
        << dot_escape(e.tag) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string to_json(const NetGraph& net) {
  nlohmann::json doc;
  doc["vertices"] = nlohmann::json::array();
  doc["edges"] = nlohmann::json::array();
  for (const auto& v : net.vertices) {
    nlohmann::json jv{{"id", v.id}, {"name", v.name}, {"formula", v.formula}};
    if (v.symbol) jv["symbol"] = *v.symbol;
    if (v.description) jv["description"] = *v.description;
    doc["vertices"].push_back(std::move(jv));
  }
  for (const auto& e : net.edges)
    doc["edges"].push_back(nlohmann::json{{"kind", e.kind_label()}, {"src", e.src}, {"dst", e.dst}});
  return doc.dump(2) + "\n";
}

}  // namespace

std::string export_net(const NetGraph& net, NetFormat format) {
  return format == NetFormat::Dot ? to_dot(net) : to_json(net);
}

void export_net(const NetGraph& net, NetFormat format, std::ostream& out) {
  out << export_net(net, format);
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "failed to write the net");
}

NetGraph import_net(const std::string& json_text) {
  NetGraph net;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    for (const auto& jv : doc.at("vertices")) {
      NetVertex v;
      v.id = jv.at("id").get<ObjectId>();
      v.name = jv.at("name").get<std::string>();
      v.formula = jv.at("formula").get<std::string>();
      if (jv.contains("symbol")) v.symbol = jv["symbol"].get<std::string>();
      if (jv.contains("description")) v.description = jv["description"].get<std::string>();
      net.vertices.push_back(std::move(v));
    }
    for (const auto& je : doc.at("edges")) {
      const auto label = je.at("kind").get<std::string>();
      const auto colon = label.find(':');
      std::optional<EdgeKind> kind;
      if (colon != std::string::npos) kind = edge_kind_from(std::string_view(label).substr(0, colon));
      if (!kind) throw Error(ErrorCode::ParseError, "unknown edge kind '" + label + "'");
      net.edges.push_back(Edge{*kind, label.substr(colon + 1), je.at("src").get<ObjectId>(),
                               je.at("dst").get<ObjectId>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("net document is malformed: ") + e.what());
  }
  return net;
}

}  // namespace signet
