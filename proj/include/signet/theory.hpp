#pragma once

// Extensional checks of the identities tying truth sets to their defining
// predicates: membership biconditionals, and product / intersection / union
// of truth sets against conjunction / disjunction of predicates.

#include <optional>
#include <string>
#include <vector>

#include "signet/semantics.hpp"
#include "signet/store.hpp"

namespace signet {

enum class Identity { ProductOfTruthSets, IntersectionIsConjunction, UnionIsDisjunction, TruthSetBiconditional };
std::string_view to_string(Identity identity);

enum class LatticeOp { Intersection, Union };

struct IdentityCase {
  Identity identity = Identity::TruthSetBiconditional;
  Expr lhs;
  Expr rhs;
  int max_size = 0;
  bool pass = false;
  std::optional<Counterexample> counterexample;
  std::uint64_t cases = 0;
  std::string subject;  // "P6 × P14", "M2"
};

// A predicate paired with the variable its truth set binds.
struct BoundPredicate {
  FormulaPtr body;
  Variable bound;
};

// The predicate's only free element variable, or, with none free, its only
// free set variable. ProfileMismatch otherwise.
Variable infer_bound(const Formula& p);

// lhs: the catalog product template applied to {b1 | p1} and {b2 | p2};
// rhs: {⟨b1, b2⟩ | p1 ∘ p2} with ∘ = rhs_connective (And for the identity,
// anything else is a negative control). Both bounds must be distinct
// element variables, each not free in the other predicate.
IdentityCase check_product_identity(const BoundPredicate& p1, const BoundPredicate& p2,
                                    int max_size = kDefaultModelSize, Connective rhs_connective = Connective::And,
                                    std::uint64_t budget = kDefaultBudget);
IdentityCase check_product_identity(const FormulaPtr& p1, const FormulaPtr& p2, int max_size = kDefaultModelSize,
                                    Connective rhs_connective = Connective::And,
                                    std::uint64_t budget = kDefaultBudget);

// lhs: the catalog ∩ / ∪ template applied to {b | p1} and {b | p2} (a
// membership conjunction / disjunction over a fresh set variable when b is a
// set variable); rhs: {b | p1 ∘ p2}, ∘ defaulting to And / Or.
IdentityCase check_lattice_identity(LatticeOp op, const BoundPredicate& p1, const BoundPredicate& p2,
                                    int max_size = kDefaultModelSize,
                                    std::optional<Connective> rhs_connective = std::nullopt,
                                    std::uint64_t budget = kDefaultBudget);
IdentityCase check_lattice_identity(LatticeOp op, const FormulaPtr& p1, const FormulaPtr& p2,
                                    int max_size = kDefaultModelSize,
                                    std::optional<Connective> rhs_connective = std::nullopt,
                                    std::uint64_t budget = kDefaultBudget);

// One case per M/R object: the bound tuple's membership in the set against
// the defining predicate.
std::vector<IdentityCase> check_biconditional(const ObjectStore& store, int max_size = kDefaultModelSize,
                                              std::uint64_t budget = kDefaultBudget);

struct IdentityReport {
  std::vector<IdentityCase> cases;
  std::size_t passed() const;
  std::size_t failed() const { return cases.size() - passed(); }
  std::size_t count(Identity identity) const;
};

// Every compatible pair of stored predicates. Element-level pairs are drawn
// from quantifier-free predicates with one free element variable; set-level
// lattice pairs from predicates whose only free variable is a set variable.
// Product pairs are ordered, lattice pairs unordered.
IdentityReport check_store_identities(const ObjectStore& store, int max_size = kDefaultModelSize,
                                      std::uint64_t budget = kDefaultBudget);

}  // namespace signet
