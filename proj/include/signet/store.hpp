#pragma once

// The deductive system: an append-only store of named objects seeded with
// membership atoms, grown by rule applications. Objects are predicates (P),
// truth sets of element tuples (M) or truth sets of sets (R).

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "signet/formula.hpp"

namespace signet {

using ObjectId = std::size_t;  // 1-based, dense, creation-ordered

enum class Family { P, M, R };
char family_letter(Family f);

enum class RuleTag { Seed, Negate, Connect, Quantify, TupleForm, TruthSet, Substitute };
std::string_view to_string(RuleTag tag);

struct RuleApplication {
  RuleTag tag = RuleTag::Seed;
  Connective connective = Connective::And;       // Connect
  Quantifier quantifier = Quantifier::Forall;    // Quantify
  std::optional<Variable> variable;              // Quantify, Substitute
  std::vector<Variable> bound;                   // TruthSet
  TermPtr replacement;                           // Substitute
  std::vector<ObjectId> parents;

  // "connect-and", "quantify-forall", "truth-set", ...
  std::string label() const;
};

struct StoredObject {
  ObjectId id = 0;
  std::string name;  // P0, M3, R1
  Expr payload;
  std::string key;   // canonical_form(payload)
  RuleApplication provenance;
  std::optional<std::string> description;
  std::optional<std::string> symbol;

  Family family() const;
  bool is_formula() const { return signet::is_formula(payload); }
  const FormulaPtr& formula() const { return as_formula(payload); }
  const TermPtr& term() const { return as_term(payload); }
  // "P6(x0, A0, A1)"
  std::string notation() const;
};

struct RuleOutcome {
  ObjectId id;
  bool already_present;
};

class ObjectStore {
 public:
  ObjectStore() = default;

  // elem_vars × set_vars atoms, x index outer, all named P0.
  static ObjectStore seed(int elem_vars, int set_vars);

  RuleOutcome apply_negate(ObjectId parent);
  RuleOutcome apply_connect(Connective op, ObjectId left, ObjectId right);
  RuleOutcome apply_quantify(Quantifier q, const Variable& v, ObjectId parent);
  RuleOutcome apply_truth_set(const std::vector<Variable>& bound, ObjectId parent);
  RuleOutcome apply_substitute(ObjectId target, const Variable& v, const TermPtr& replacement);
  RuleOutcome apply_substitute(ObjectId target, const Variable& v, ObjectId replacement_object);

  // Not stored: tuples only live inside comprehensions and membership atoms.
  static TermPtr apply_tuple(const std::vector<Variable>& vars);

  // Membership formula for the bound tuple (or variable) against the truth
  // set, paired with the defining predicate.
  std::pair<FormulaPtr, FormulaPtr> expand_biconditional(ObjectId truth_set) const;

  // Predicate an M/R object was built from: the truth-set parent when the
  // provenance says so, otherwise the comprehension body.
  FormulaPtr defining_predicate(ObjectId truth_set) const;

  const StoredObject& at(ObjectId id) const;
  StoredObject& at(ObjectId id);
  bool contains(ObjectId id) const { return id >= 1 && id <= objects_.size(); }
  std::optional<ObjectId> find(const std::string& key) const;
  std::optional<ObjectId> find(const Expr& payload) const;

  std::size_t size() const { return objects_.size(); }
  bool empty() const { return objects_.empty(); }
  const std::vector<StoredObject>& objects() const { return objects_; }
  auto begin() const { return objects_.begin(); }
  auto end() const { return objects_.end(); }

  // Loader path: appends an object as recorded elsewhere (session files).
  // Validates sorts, dense ids and parent ordering; does not re-derive the
  // payload from the provenance.
  void import_object(StoredObject object);

 private:
  RuleOutcome insert(Expr payload, RuleApplication provenance);
  const StoredObject& require(ObjectId id) const;
  const FormulaPtr& require_formula(ObjectId id) const;
  std::string next_name(Family family);

  std::vector<StoredObject> objects_;
  std::map<std::string, ObjectId> index_;
  std::map<Family, int> counters_;
};

Family family_of(const Expr& payload);

}  // namespace signet
