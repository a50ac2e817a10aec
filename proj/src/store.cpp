#include "signet/store.hpp"

#include <algorithm>

#include "signet/syntax.hpp"

namespace signet {

char family_letter(Family f) {
  switch (f) {
    case Family::P: return 'P';
    case Family::M: return 'M';
    case Family::R: return 'R';
  }
  return '?';
}

std::string_view to_string(RuleTag tag) {
  switch (tag) {
    case RuleTag::Seed: return "seed";
    case RuleTag::Negate: return "negate";
    case RuleTag::Connect: return "connect";
    case RuleTag::Quantify: return "quantify";
    case RuleTag::TupleForm: return "tuple";
    case RuleTag::TruthSet: return "truth-set";
    case RuleTag::Substitute: return "substitute";
  }
  return "?";
}

std::string RuleApplication::label() const {
  std::string out(to_string(tag));
  if (tag == RuleTag::Connect) {
    out += connective == Connective::And ? "-and" : connective == Connective::Or ? "-or" : "-implies";
  } else if (tag == RuleTag::Quantify) {
    out += quantifier == Quantifier::Forall ? "-forall" : "-exists";
  }
  return out;
}

Family family_of(const Expr& payload) {
  if (is_formula(payload)) return Family::P;
  const TermPtr& t = std::get<TermPtr>(payload);
  if (!std::holds_alternative<ComprehensionTerm>(t->node))
    throw Error(ErrorCode::NotATruthSet, "stored terms must be comprehensions");
  const Sort s = require_well_sorted(*t);
  return s.inner().is_set() ? Family::R : Family::M;
}

Family StoredObject::family() const { return family_of(payload); }

std::string StoredObject::notation() const {
  std::string out = name + "(";
  const auto vars = free_vars(payload);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += ", ";
    out += vars[i].name;
  }
  return out + ")";
}

ObjectStore ObjectStore::seed(int elem_vars, int set_vars) {
  if (elem_vars < 1 || set_vars < 1)
    throw Error(ErrorCode::InvalidArgument, "seed needs at least one variable of each sort");
  ObjectStore store;
  for (int x = 0; x < elem_vars; ++x) {
    for (int a = 0; a < set_vars; ++a) {
      FormulaPtr atom = member("x" + std::to_string(x), "A" + std::to_string(a));
      StoredObject obj;
      obj.id = store.objects_.size() + 1;
      obj.name = "P0";
      obj.key = canonical_form(*atom);
      obj.payload = std::move(atom);
      store.index_.emplace(obj.key, obj.id);
      store.objects_.push_back(std::move(obj));
    }
  }
  store.counters_[Family::P] = 1;
  return store;
}

const StoredObject& ObjectStore::at(ObjectId id) const { return require(id); }

StoredObject& ObjectStore::at(ObjectId id) {
  require(id);
  return objects_[id - 1];
}

const StoredObject& ObjectStore::require(ObjectId id) const {
  if (!contains(id)) throw Error(ErrorCode::UnknownId, "no object with id " + std::to_string(id));
  return objects_[id - 1];
}

const FormulaPtr& ObjectStore::require_formula(ObjectId id) const {
  const StoredObject& obj = require(id);
  if (!obj.is_formula())
    throw Error(ErrorCode::NotAFormula, obj.name + " (id " + std::to_string(id) + ") is not a formula");
  return std::get<FormulaPtr>(obj.payload);
}

std::optional<ObjectId> ObjectStore::find(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ObjectId> ObjectStore::find(const Expr& payload) const {
  return find(canonical_form(payload));
}

std::string ObjectStore::next_name(Family family) {
  int& counter = counters_[family];
  return std::string(1, family_letter(family)) + std::to_string(counter++);
}

RuleOutcome ObjectStore::insert(Expr payload, RuleApplication provenance) {
  require_well_sorted(payload);
  std::string key = canonical_form(payload);
  if (auto existing = find(key)) return {*existing, true};
  StoredObject obj;
  obj.id = objects_.size() + 1;
  obj.name = next_name(family_of(payload));
  obj.payload = std::move(payload);
  obj.key = std::move(key);
  obj.provenance = std::move(provenance);
  index_.emplace(obj.key, obj.id);
  objects_.push_back(std::move(obj));
  return {objects_.back().id, false};
}

RuleOutcome ObjectStore::apply_negate(ObjectId parent) {
  FormulaPtr f = negation(require_formula(parent));
  RuleApplication rule;
  rule.tag = RuleTag::Negate;
  rule.parents = {parent};
  return insert(std::move(f), std::move(rule));
}

RuleOutcome ObjectStore::apply_connect(Connective op, ObjectId left, ObjectId right) {
  FormulaPtr f = binary(op, require_formula(left), require_formula(right));
  RuleApplication rule;
  rule.tag = RuleTag::Connect;
  rule.connective = op;
  rule.parents = {left, right};
  return insert(std::move(f), std::move(rule));
}

RuleOutcome ObjectStore::apply_quantify(Quantifier q, const Variable& v, ObjectId parent) {
  const FormulaPtr& body = require_formula(parent);
  if (!occurs_free(v, *body))
    throw Error(ErrorCode::NotFree, v.name + " is not free in " + at(parent).name);
  RuleApplication rule;
  rule.tag = RuleTag::Quantify;
  rule.quantifier = q;
  rule.variable = v;
  rule.parents = {parent};
  return insert(quantified(q, v, body), std::move(rule));
}

RuleOutcome ObjectStore::apply_truth_set(const std::vector<Variable>& bound, ObjectId parent) {
  const FormulaPtr& body = require_formula(parent);
  if (bound.empty()) throw Error(ErrorCode::InvalidArgument, "truth set needs a bound variable");
  const auto free = free_vars(*body);
  for (const auto& v : bound) {
    const bool present = std::any_of(free.begin(), free.end(), [&](const Variable& w) { return w == v; });
    if (!present) throw Error(ErrorCode::NotFree, v.name + " is not free in " + at(parent).name);
  }
  const bool any_elem = std::any_of(bound.begin(), bound.end(), [](const Variable& v) { return v.sort.is_elem(); });
  const bool any_other = std::any_of(bound.begin(), bound.end(), [](const Variable& v) { return !v.sort.is_elem(); });
  if (any_elem && any_other)
    throw Error(ErrorCode::MixedSorts, "cannot bind element and set variables together");
  if (any_other && bound.size() > 1)
    throw Error(ErrorCode::MixedSorts, "at most one set variable can be bound");
  RuleApplication rule;
  rule.tag = RuleTag::TruthSet;
  rule.bound = bound;
  rule.parents = {parent};
  return insert(comprehension(bound, body), std::move(rule));
}

TermPtr ObjectStore::apply_tuple(const std::vector<Variable>& vars) {
  if (vars.size() < 2) throw Error(ErrorCode::ArityTooSmall, "a tuple needs at least two variables");
  std::vector<TermPtr> parts;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!vars[i].sort.is_elem())
      throw Error(ErrorCode::MixedSorts, "tuple component " + vars[i].name + " is not an element variable");
    for (std::size_t j = 0; j < i; ++j)
      if (vars[j].name == vars[i].name)
        throw Error(ErrorCode::DuplicateBoundVar, "tuple repeats " + vars[i].name);
    parts.push_back(var_term(vars[i]));
  }
  return tuple_term(std::move(parts));
}

namespace {

RuleApplication substitution_rule(const Variable& v, const TermPtr& replacement,
                                  std::vector<ObjectId> parents) {
  RuleApplication rule;
  rule.tag = RuleTag::Substitute;
  rule.variable = v;
  rule.replacement = replacement;
  rule.parents = std::move(parents);
  return rule;
}

}  // namespace

RuleOutcome ObjectStore::apply_substitute(ObjectId target, const Variable& v, const TermPtr& replacement) {
  const StoredObject& t = require(target);
  Expr result = substitute(t.payload, v, replacement);
  std::vector<ObjectId> parents{target};
  if (!is_formula(result) && !structurally_equal(result, t.payload)) {
    // Keep the substituted body as a predicate of its own so the new truth
    // set has a stored defining predicate.
    const auto& comp = std::get<ComprehensionTerm>(std::get<TermPtr>(result)->node);
    ObjectId pred_parent = target;
    if (auto def = find(Expr{defining_predicate(target)})) pred_parent = *def;
    insert(comp.body, substitution_rule(v, replacement, {pred_parent}));
  }
  return insert(std::move(result), substitution_rule(v, replacement, std::move(parents)));
}

RuleOutcome ObjectStore::apply_substitute(ObjectId target, const Variable& v, ObjectId replacement_object) {
  const StoredObject& r = require(replacement_object);
  if (r.is_formula())
    throw Error(ErrorCode::SortMismatch, r.name + " is a predicate; only truth sets can be substituted");
  const StoredObject& t = require(target);
  TermPtr replacement = r.term();
  Expr result = substitute(t.payload, v, replacement);
  if (!is_formula(result) && !structurally_equal(result, t.payload)) {
    const auto& comp = std::get<ComprehensionTerm>(std::get<TermPtr>(result)->node);
    ObjectId pred_parent = target;
    if (auto def = find(Expr{defining_predicate(target)})) pred_parent = *def;
    insert(comp.body, substitution_rule(v, replacement, {pred_parent, replacement_object}));
  }
  return insert(std::move(result), substitution_rule(v, replacement, {target, replacement_object}));
}

FormulaPtr ObjectStore::defining_predicate(ObjectId truth_set) const {
  const StoredObject& obj = require(truth_set);
  if (obj.is_formula())
    throw Error(ErrorCode::NotATruthSet, obj.name + " is a predicate, not a truth set");
  if (obj.provenance.tag == RuleTag::TruthSet && obj.provenance.parents.size() == 1) {
    const StoredObject& parent = require(obj.provenance.parents[0]);
    if (parent.is_formula()) return parent.formula();
  }
  return std::get<ComprehensionTerm>(obj.term()->node).body;
}

std::pair<FormulaPtr, FormulaPtr> ObjectStore::expand_biconditional(ObjectId truth_set) const {
  const StoredObject& obj = require(truth_set);
  if (obj.is_formula())
    throw Error(ErrorCode::NotATruthSet, obj.name + " is a predicate, not a truth set");
  const auto& comp = std::get<ComprehensionTerm>(obj.term()->node);
  TermPtr subject;
  if (comp.bound.size() == 1) {
    subject = var_term(comp.bound[0]);
  } else {
    std::vector<TermPtr> parts;
    for (const auto& b : comp.bound) parts.push_back(var_term(b));
    subject = tuple_term(std::move(parts));
  }
  return {member(subject, obj.term()), defining_predicate(truth_set)};
}

void ObjectStore::import_object(StoredObject object) {
  if (object.id != objects_.size() + 1)
    throw Error(ErrorCode::MalformedSession, "object ids must be dense and start at 1");
  require_well_sorted(object.payload);
  for (ObjectId p : object.provenance.parents)
    if (p == 0 || p >= object.id)
      throw Error(ErrorCode::MalformedSession,
                  "object " + std::to_string(object.id) + " has a parent that does not precede it");
  if (object.provenance.tag == RuleTag::Seed && !object.provenance.parents.empty())
    throw Error(ErrorCode::MalformedSession, "seed objects have no parents");
  if (object.provenance.tag != RuleTag::Seed && object.provenance.parents.empty())
    throw Error(ErrorCode::MalformedSession,
                "object " + std::to_string(object.id) + " is missing its parents");
  object.key = canonical_form(object.payload);
  if (index_.count(object.key))
    throw Error(ErrorCode::MalformedSession, "duplicate object " + object.key);
  const Family fam = family_of(object.payload);
  if (object.name.size() < 2 || object.name[0] != family_letter(fam))
    throw Error(ErrorCode::MalformedSession, "object name " + object.name + " does not match its kind");
  int index = 0;
  try {
    index = std::stoi(object.name.substr(1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::MalformedSession, "object name " + object.name + " has no index");
  }
  counters_[fam] = std::max(counters_[fam], index + 1);
  index_.emplace(object.key, object.id);
  objects_.push_back(std::move(object));
}

}  // namespace signet
