#include "signet/theory.hpp"

#include <algorithm>

#include "signet/recognition.hpp"
#include "signet/syntax.hpp"

namespace signet {

std::string_view to_string(Identity identity) {
  switch (identity) {
    case Identity::ProductOfTruthSets: return "product-of-truth-sets";
    case Identity::IntersectionIsConjunction: return "intersection-is-conjunction";
    case Identity::UnionIsDisjunction: return "union-is-disjunction";
    case Identity::TruthSetBiconditional: return "truth-set-biconditional";
  }
  return "?";
}

Variable infer_bound(const Formula& p) {
  std::vector<Variable> elems;
  std::vector<Variable> sets;
  for (const auto& v : free_vars(p)) (v.sort.is_elem() ? elems : sets).push_back(v);
  if (elems.size() == 1) return elems[0];
  if (elems.empty() && sets.size() == 1) return sets[0];
  throw Error(ErrorCode::ProfileMismatch,
              "cannot infer the bound variable of " + render(p, Style::Unicode) + "; give it explicitly");
}

namespace {

const CatalogEntry& catalog_entry(const std::string& key) {
  for (const auto& e : builtin_catalog())
    if (e.key == key) return e;
  throw Error(ErrorCode::InvalidArgument, "builtin catalog lacks " + key);
}

void require_bound_free(const BoundPredicate& p) {
  require_well_sorted(*p.body);
  if (!occurs_free(p.bound, *p.body))
    throw Error(ErrorCode::ProfileMismatch, p.bound.name + " is not free in " + render(*p.body, Style::Unicode));
}

// Binds the template's parameters, in order, to the given terms.
Expr apply_template(const CatalogEntry& entry, const std::vector<TermPtr>& args) {
  Expr out = entry.templ;
  for (std::size_t i = 0; i < args.size(); ++i) out = substitute(out, entry.parameters[i], args[i]);
  return out;
}

IdentityCase sweep(Identity identity, Expr lhs, Expr rhs, int max_size, std::uint64_t budget,
                   std::string subject) {
  IdentityCase c;
  c.identity = identity;
  c.max_size = max_size;
  c.subject = std::move(subject);
  ExtensionalResult r = extensionally_equal(lhs, rhs, max_size, {}, budget);
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  c.pass = r.equal;
  c.counterexample = std::move(r.counterexample);
  c.cases = r.cases;
  return c;
}

const char* connective_symbol(Connective c) {
  switch (c) {
    case Connective::And: return "&";
    case Connective::Or: return "∨";
    case Connective::Implies: return "⇒";
  }
  return "?";
}

}  // namespace

IdentityCase check_product_identity(const BoundPredicate& p1, const BoundPredicate& p2, int max_size,
                                    Connective rhs_connective, std::uint64_t budget) {
  require_bound_free(p1);
  require_bound_free(p2);
  if (!p1.bound.sort.is_elem() || !p2.bound.sort.is_elem())
    throw Error(ErrorCode::ProfileMismatch, "products are formed over element variables only");
  if (p1.bound.name == p2.bound.name)
    throw Error(ErrorCode::ProfileMismatch, "product factors must bind distinct variables");
  if (occurs_free(p1.bound, *p2.body) || occurs_free(p2.bound, *p1.body))
    throw Error(ErrorCode::ProfileMismatch, "a factor's bound variable is free in the other factor");

  const TermPtr m1 = comprehension({p1.bound}, p1.body);
  const TermPtr m2 = comprehension({p2.bound}, p2.body);
  Expr lhs = apply_template(catalog_entry("product"), {m1, m2});
  Expr rhs = Expr{comprehension({p1.bound, p2.bound}, binary(rhs_connective, p1.body, p2.body))};
  std::string subject = render(*m1, Style::Unicode) + " × " + render(*m2, Style::Unicode);
  if (rhs_connective != Connective::And) subject += " against " + std::string(connective_symbol(rhs_connective));
  return sweep(Identity::ProductOfTruthSets, std::move(lhs), std::move(rhs), max_size, budget, std::move(subject));
}

IdentityCase check_product_identity(const FormulaPtr& p1, const FormulaPtr& p2, int max_size,
                                    Connective rhs_connective, std::uint64_t budget) {
  return check_product_identity(BoundPredicate{p1, infer_bound(*p1)}, BoundPredicate{p2, infer_bound(*p2)},
                                max_size, rhs_connective, budget);
}

IdentityCase check_lattice_identity(LatticeOp op, const BoundPredicate& p1, const BoundPredicate& p2, int max_size,
                                    std::optional<Connective> rhs_connective, std::uint64_t budget) {
  require_bound_free(p1);
  require_bound_free(p2);
  if (p1.bound != p2.bound)
    throw Error(ErrorCode::ProfileMismatch,
                "both predicates must bind the same variable (" + p1.bound.name + " vs " + p2.bound.name + ")");
  const Variable& b = p1.bound;
  const TermPtr m1 = comprehension({b}, p1.body);
  const TermPtr m2 = comprehension({b}, p2.body);
  const Connective natural = op == LatticeOp::Intersection ? Connective::And : Connective::Or;

  Expr lhs;
  if (b.sort.is_elem()) {
    lhs = apply_template(catalog_entry(op == LatticeOp::Intersection ? "intersection" : "union"), {m1, m2});
  } else {
    // The catalog templates range over elements; families of sets get the
    // same shape over a fresh set variable.
    std::set<std::string> avoid = all_names(*m1);
    for (const auto& n : all_names(*m2)) avoid.insert(n);
    const Variable w = fresh_variable(b, avoid);
    lhs = Expr{comprehension({w}, binary(natural, member(var_term(w), m1), member(var_term(w), m2)))};
  }
  const Connective used = rhs_connective.value_or(natural);
  Expr rhs = Expr{comprehension({b}, binary(used, p1.body, p2.body))};
  std::string subject = render(*m1, Style::Unicode) + (op == LatticeOp::Intersection ? " ∩ " : " ∪ ") +
                        render(*m2, Style::Unicode);
  if (used != natural) subject += " against " + std::string(connective_symbol(used));
  return sweep(op == LatticeOp::Intersection ? Identity::IntersectionIsConjunction : Identity::UnionIsDisjunction,
               std::move(lhs), std::move(rhs), max_size, budget, std::move(subject));
}

IdentityCase check_lattice_identity(LatticeOp op, const FormulaPtr& p1, const FormulaPtr& p2, int max_size,
                                    std::optional<Connective> rhs_connective, std::uint64_t budget) {
  return check_lattice_identity(op, BoundPredicate{p1, infer_bound(*p1)}, BoundPredicate{p2, infer_bound(*p2)},
                                max_size, rhs_connective, budget);
}

std::vector<IdentityCase> check_biconditional(const ObjectStore& store, int max_size, std::uint64_t budget) {
  std::vector<IdentityCase> out;
  for (const StoredObject& obj : store) {
    if (obj.is_formula()) continue;
    auto [membership, predicate] = store.expand_biconditional(obj.id);
    out.push_back(sweep(Identity::TruthSetBiconditional, Expr{membership}, Expr{predicate}, max_size, budget,
                        obj.name + " (object " + std::to_string(obj.id) + ")"));
  }
  return out;
}

std::size_t IdentityReport::passed() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const IdentityCase& c) { return c.pass; }));
}

std::size_t IdentityReport::count(Identity identity) const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [&](const IdentityCase& c) { return c.identity == identity; }));
}

namespace {

bool quantifier_free(const Formula& f) {
  return std::visit(
      [](const auto& node) -> bool {
        using N = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<N, Member>) {
          return true;
        } else if constexpr (std::is_same_v<N, Not>) {
          return quantifier_free(*node.operand);
        } else if constexpr (std::is_same_v<N, Binary>) {
          return quantifier_free(*node.left) && quantifier_free(*node.right);
        } else {
          return false;
        }
      },
      f.node);
}

struct PoolItem {
  ObjectId id;
  BoundPredicate predicate;
};

std::string pair_subject(const PoolItem& a, const char* op, const PoolItem& b) {
  return "objects " + std::to_string(a.id) + op + std::to_string(b.id);
}

}  // namespace

IdentityReport check_store_identities(const ObjectStore& store, int max_size, std::uint64_t budget) {
  std::vector<PoolItem> elem_pool;
  std::vector<PoolItem> set_pool;
  for (const StoredObject& obj : store) {
    if (!obj.is_formula()) continue;
    const auto vars = free_vars(*obj.formula());
    const auto elems = std::count_if(vars.begin(), vars.end(), [](const Variable& v) { return v.sort.is_elem(); });
    if (elems == 1 && quantifier_free(*obj.formula()))
      elem_pool.push_back(PoolItem{obj.id, {obj.formula(), infer_bound(*obj.formula())}});
    else if (vars.size() == 1 && vars[0].sort.is_set())
      set_pool.push_back(PoolItem{obj.id, {obj.formula(), vars[0]}});
  }

  IdentityReport report;
  for (const auto& a : elem_pool)
    for (const auto& b : elem_pool) {
      if (a.predicate.bound == b.predicate.bound) continue;
      if (occurs_free(a.predicate.bound, *b.predicate.body) || occurs_free(b.predicate.bound, *a.predicate.body))
        continue;
      auto c = check_product_identity(a.predicate, b.predicate, max_size, Connective::And, budget);
      c.subject = pair_subject(a, " × ", b);
      report.cases.push_back(std::move(c));
    }

  for (const auto* pool : {&elem_pool, &set_pool})
    for (std::size_t i = 0; i < pool->size(); ++i)
      for (std::size_t j = i + 1; j < pool->size(); ++j) {
        const auto& a = (*pool)[i];
        const auto& b = (*pool)[j];
        if (a.predicate.bound != b.predicate.bound) continue;
        for (LatticeOp op : {LatticeOp::Intersection, LatticeOp::Union}) {
          auto c = check_lattice_identity(op, a.predicate, b.predicate, max_size, std::nullopt, budget);
          c.subject = pair_subject(a, op == LatticeOp::Intersection ? " ∩ " : " ∪ ", b);
          report.cases.push_back(std::move(c));
        }
      }
  return report;
}

}  // namespace signet
