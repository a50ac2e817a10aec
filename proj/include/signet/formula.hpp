#pragma once

// Two-sorted formula language over the membership predicate: element
// variables, set variables, tuples, truth-set comprehensions, connectives and
// quantifiers. All nodes are immutable and shared.

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "signet/error.hpp"

namespace signet {

class Sort {
 public:
  enum class Kind { Elem, ElemTuple, SetOf };

  static Sort elem() { return Sort(Kind::Elem, 0, nullptr); }
  // Arity 1 collapses to Elem.
  static Sort tuple(int arity);
  static Sort set_of(const Sort& inner) {
    return Sort(Kind::SetOf, 0, std::make_shared<const Sort>(inner));
  }

  Kind kind() const noexcept { return kind_; }
  int arity() const noexcept { return arity_; }
  const Sort& inner() const;

  bool is_elem() const noexcept { return kind_ == Kind::Elem; }
  bool is_set() const noexcept { return kind_ == Kind::SetOf; }

  // "Elem", "Elem^2", "Set(Elem)", "Set(Set(Elem))".
  std::string str() const;

  friend bool operator==(const Sort& a, const Sort& b);
  friend bool operator!=(const Sort& a, const Sort& b) { return !(a == b); }
  friend bool operator<(const Sort& a, const Sort& b) { return a.str() < b.str(); }

 private:
  Sort(Kind kind, int arity, std::shared_ptr<const Sort> inner)
      : kind_(kind), arity_(arity), inner_(std::move(inner)) {}

  Kind kind_;
  int arity_;
  std::shared_ptr<const Sort> inner_;
};

struct Variable {
  std::string name;
  Sort sort = Sort::elem();

  friend bool operator==(const Variable& a, const Variable& b) {
    return a.name == b.name && a.sort == b.sort;
  }
  friend bool operator!=(const Variable& a, const Variable& b) { return !(a == b); }
};

// Natural variable order: x0 < x1 < x10, then primes; element names before
// set names.
bool variable_less(const Variable& a, const Variable& b);

// Sort follows the name: a lowercase initial is an element variable, an
// uppercase initial a set-of-elements variable. Throws ParseError on names
// that are not identifiers.
Variable make_variable(const std::string& name);
bool is_valid_variable_name(const std::string& name);

struct Term;
struct Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

struct VarTerm {
  Variable var;
};
struct TupleTerm {
  std::vector<TermPtr> components;
};
struct ComprehensionTerm {
  std::vector<Variable> bound;
  FormulaPtr body;
};

struct Term {
  std::variant<VarTerm, TupleTerm, ComprehensionTerm> node;
};

enum class Connective { And, Or, Implies };
enum class Quantifier { Forall, Exists };

struct Member {
  TermPtr lhs;
  TermPtr rhs;
};
struct Not {
  FormulaPtr operand;
};
struct Binary {
  Connective op;
  FormulaPtr left;
  FormulaPtr right;
};
struct Quantified {
  Quantifier quantifier;
  Variable var;
  FormulaPtr body;
};

struct Formula {
  std::variant<Member, Not, Binary, Quantified> node;
};

// Either side of the language; most operations accept both.
using Expr = std::variant<FormulaPtr, TermPtr>;

// Builders. They do not sort-check; use sort_check / require_well_sorted.
TermPtr var_term(const Variable& v);
TermPtr var_term(const std::string& name);
TermPtr tuple_term(std::vector<TermPtr> components);
TermPtr comprehension(std::vector<Variable> bound, FormulaPtr body);
FormulaPtr member(TermPtr lhs, TermPtr rhs);
FormulaPtr member(const std::string& elem, const std::string& set);
FormulaPtr negation(FormulaPtr operand);
FormulaPtr binary(Connective op, FormulaPtr left, FormulaPtr right);
FormulaPtr conj(FormulaPtr left, FormulaPtr right);
FormulaPtr disj(FormulaPtr left, FormulaPtr right);
FormulaPtr implication(FormulaPtr left, FormulaPtr right);
FormulaPtr quantified(Quantifier q, const Variable& v, FormulaPtr body);
FormulaPtr forall(const Variable& v, FormulaPtr body);
FormulaPtr exists(const Variable& v, FormulaPtr body);

bool is_formula(const Expr& e);
const FormulaPtr& as_formula(const Expr& e);
const TermPtr& as_term(const Expr& e);

// Deep structural equality (names included, operand order significant).
bool structurally_equal(const Formula& a, const Formula& b);
bool structurally_equal(const Term& a, const Term& b);
bool structurally_equal(const Expr& a, const Expr& b);

struct SortReport {
  bool ok = false;
  // Sort of a term; for formulas, absent.
  std::optional<Sort> sort;
  std::optional<ErrorCode> error;
  std::string message;
};

SortReport sort_check(const Term& t);
SortReport sort_check(const Formula& f);
SortReport sort_check(const Expr& e);
// Throws the reported error on failure; returns the term sort.
Sort require_well_sorted(const Term& t);
void require_well_sorted(const Formula& f);
void require_well_sorted(const Expr& e);

// Free variables in first-occurrence order.
std::vector<Variable> free_vars(const Term& t);
std::vector<Variable> free_vars(const Formula& f);
std::vector<Variable> free_vars(const Expr& e);
bool occurs_free(const Variable& v, const Formula& f);
bool occurs_free(const Variable& v, const Term& t);

// Every variable name occurring anywhere, bound or free.
std::set<std::string> all_names(const Formula& f);
std::set<std::string> all_names(const Term& t);

// Appends primes to base until the name is outside avoid.
Variable fresh_variable(const Variable& base, const std::set<std::string>& avoid);

// Capture-avoiding substitution of replacement for the free occurrences of v.
// Binders inside the replacement whose names clash with variables of the
// target are renamed first, and binders of the target that would capture a
// free variable of the replacement are renamed with fresh primed names.
// Throws SortMismatch unless sort(replacement) == sort(v).
FormulaPtr substitute(const FormulaPtr& f, const Variable& v, const TermPtr& replacement);
TermPtr substitute(const TermPtr& t, const Variable& v, const TermPtr& replacement);
Expr substitute(const Expr& e, const Variable& v, const TermPtr& replacement);

// Number of Member nodes.
int atom_count(const Formula& f);
int atom_count(const Term& t);

}  // namespace signet
