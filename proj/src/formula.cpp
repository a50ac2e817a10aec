#include "signet/formula.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace signet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SortMismatch: return "SortMismatch";
    case ErrorCode::MalformedTuple: return "MalformedTuple";
    case ErrorCode::DuplicateBoundVar: return "DuplicateBoundVar";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotAFormula: return "NotAFormula";
    case ErrorCode::NotFree: return "NotFree";
    case ErrorCode::MixedSorts: return "MixedSorts";
    case ErrorCode::ArityTooSmall: return "ArityTooSmall";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::NotATruthSet: return "NotATruthSet";
    case ErrorCode::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::ProfileMismatch: return "ProfileMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::MalformedSession: return "MalformedSession";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// --- Sort -------------------------------------------------------------------

Sort Sort::tuple(int arity) {
  if (arity <= 1) return elem();
  return Sort(Kind::ElemTuple, arity, nullptr);
}

const Sort& Sort::inner() const {
  if (!inner_) throw Error(ErrorCode::SortMismatch, "sort " + str() + " has no inner sort");
  return *inner_;
}

std::string Sort::str() const {
  switch (kind_) {
    case Kind::Elem: return "Elem";
    case Kind::ElemTuple: return "Elem^" + std::to_string(arity_);
    case Kind::SetOf: return "Set(" + inner_->str() + ")";
  }
  return "?";
}

bool operator==(const Sort& a, const Sort& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Sort::Kind::Elem: return true;
    case Sort::Kind::ElemTuple: return a.arity_ == b.arity_;
    case Sort::Kind::SetOf: return *a.inner_ == *b.inner_;
  }
  return false;
}

// --- Variables --------------------------------------------------------------

bool is_valid_variable_name(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  std::size_t i = 1;
  while (i < name.size() &&
         (std::isalnum(static_cast<unsigned char>(name[i])) || name[i] == '_'))
    ++i;
  while (i < name.size() && name[i] == '\'') ++i;
  if (i != name.size()) return false;
  return name != "in" && name != "forall" && name != "exists";
}

Variable make_variable(const std::string& name) {
  if (!is_valid_variable_name(name))
    throw Error(ErrorCode::ParseError, "invalid variable name '" + name + "'");
  const bool upper = std::isupper(static_cast<unsigned char>(name[0])) != 0;
  return Variable{name, upper ? Sort::set_of(Sort::elem()) : Sort::elem()};
}

namespace {

struct NameParts {
  std::string stem;
  long index = -1;
  std::size_t primes = 0;
  std::string rest;
};

NameParts split_name(const std::string& name) {
  NameParts p;
  std::size_t i = 0;
  while (i < name.size() && std::isalpha(static_cast<unsigned char>(name[i]))) ++i;
  p.stem = name.substr(0, i);
  std::size_t j = i;
  while (j < name.size() && std::isdigit(static_cast<unsigned char>(name[j]))) ++j;
  if (j > i && j - i < 18) p.index = std::stol(name.substr(i, j - i));
  std::size_t k = j;
  while (k < name.size() && name[k] != '\'') ++k;
  p.rest = name.substr(j, k - j);
  p.primes = name.size() - k;
  return p;
}

}  // namespace

bool variable_less(const Variable& a, const Variable& b) {
  if (a.sort != b.sort) return a.sort.is_elem() && !b.sort.is_elem();
  const NameParts pa = split_name(a.name);
  const NameParts pb = split_name(b.name);
  return std::tie(pa.stem, pa.index, pa.rest, pa.primes) <
         std::tie(pb.stem, pb.index, pb.rest, pb.primes);
}

Variable fresh_variable(const Variable& base, const std::set<std::string>& avoid) {
  Variable v = base;
  do {
    v.name += '\'';
  } while (avoid.count(v.name) != 0);
  return v;
}

// --- Builders ---------------------------------------------------------------

TermPtr var_term(const Variable& v) { return std::make_shared<const Term>(Term{VarTerm{v}}); }
TermPtr var_term(const std::string& name) { return var_term(make_variable(name)); }

TermPtr tuple_term(std::vector<TermPtr> components) {
  return std::make_shared<const Term>(Term{TupleTerm{std::move(components)}});
}

TermPtr comprehension(std::vector<Variable> bound, FormulaPtr body) {
  return std::make_shared<const Term>(Term{ComprehensionTerm{std::move(bound), std::move(body)}});
}

FormulaPtr member(TermPtr lhs, TermPtr rhs) {
  return std::make_shared<const Formula>(Formula{Member{std::move(lhs), std::move(rhs)}});
}

FormulaPtr member(const std::string& elem, const std::string& set) {
  return member(var_term(elem), var_term(set));
}

FormulaPtr negation(FormulaPtr operand) {
  return std::make_shared<const Formula>(Formula{Not{std::move(operand)}});
}

FormulaPtr binary(Connective op, FormulaPtr left, FormulaPtr right) {
  return std::make_shared<const Formula>(Formula{Binary{op, std::move(left), std::move(right)}});
}
FormulaPtr conj(FormulaPtr l, FormulaPtr r) { return binary(Connective::And, std::move(l), std::move(r)); }
FormulaPtr disj(FormulaPtr l, FormulaPtr r) { return binary(Connective::Or, std::move(l), std::move(r)); }
FormulaPtr implication(FormulaPtr l, FormulaPtr r) {
  return binary(Connective::Implies, std::move(l), std::move(r));
}

FormulaPtr quantified(Quantifier q, const Variable& v, FormulaPtr body) {
  return std::make_shared<const Formula>(Formula{Quantified{q, v, std::move(body)}});
}
FormulaPtr forall(const Variable& v, FormulaPtr body) { return quantified(Quantifier::Forall, v, std::move(body)); }
FormulaPtr exists(const Variable& v, FormulaPtr body) { return quantified(Quantifier::Exists, v, std::move(body)); }

bool is_formula(const Expr& e) { return std::holds_alternative<FormulaPtr>(e); }

const FormulaPtr& as_formula(const Expr& e) {
  if (!is_formula(e)) throw Error(ErrorCode::NotAFormula, "expected a formula, got a term");
  return std::get<FormulaPtr>(e);
}

const TermPtr& as_term(const Expr& e) {
  if (is_formula(e)) throw Error(ErrorCode::SortMismatch, "expected a term, got a formula");
  return std::get<TermPtr>(e);
}

// --- Structural equality ----------------------------------------------------

bool structurally_equal(const Term& a, const Term& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* va = std::get_if<VarTerm>(&a.node)) return va->var == std::get<VarTerm>(b.node).var;
  if (const auto* ta = std::get_if<TupleTerm>(&a.node)) {
    const auto& tb = std::get<TupleTerm>(b.node);
    if (ta->components.size() != tb.components.size()) return false;
    for (std::size_t i = 0; i < ta->components.size(); ++i)
      if (!structurally_equal(*ta->components[i], *tb.components[i])) return false;
    return true;
  }
  const auto& ca = std::get<ComprehensionTerm>(a.node);
  const auto& cb = std::get<ComprehensionTerm>(b.node);
  return ca.bound == cb.bound && structurally_equal(*ca.body, *cb.body);
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const auto& nb = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Member>) {
          return structurally_equal(*na.lhs, *nb.lhs) && structurally_equal(*na.rhs, *nb.rhs);
        } else if constexpr (std::is_same_v<T, Not>) {
          return structurally_equal(*na.operand, *nb.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return na.op == nb.op && structurally_equal(*na.left, *nb.left) &&
                 structurally_equal(*na.right, *nb.right);
        } else {
          return na.quantifier == nb.quantifier && na.var == nb.var &&
                 structurally_equal(*na.body, *nb.body);
        }
      },
      a.node);
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.index() != b.index()) return false;
  if (is_formula(a)) return structurally_equal(*std::get<FormulaPtr>(a), *std::get<FormulaPtr>(b));
  return structurally_equal(*std::get<TermPtr>(a), *std::get<TermPtr>(b));
}

// --- Free variables ---------------------------------------------------------

namespace {

class FreeVarCollector {
 public:
  std::vector<Variable> out;

  void term(const Term& t) {
    if (const auto* v = std::get_if<VarTerm>(&t.node)) {
      add(v->var);
    } else if (const auto* tu = std::get_if<TupleTerm>(&t.node)) {
      for (const auto& c : tu->components) term(*c);
    } else {
      const auto& c = std::get<ComprehensionTerm>(t.node);
      for (const auto& b : c.bound) bound_.push_back(b.name);
      formula(*c.body);
      bound_.resize(bound_.size() - c.bound.size());
    }
  }

  void formula(const Formula& f) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Member>) {
            term(*n.lhs);
            term(*n.rhs);
          } else if constexpr (std::is_same_v<T, Not>) {
            formula(*n.operand);
          } else if constexpr (std::is_same_v<T, Binary>) {
            formula(*n.left);
            formula(*n.right);
          } else {
            bound_.push_back(n.var.name);
            formula(*n.body);
            bound_.pop_back();
          }
        },
        f.node);
  }

 private:
  void add(const Variable& v) {
    if (std::find(bound_.begin(), bound_.end(), v.name) != bound_.end()) return;
    for (const auto& seen : out)
      if (seen.name == v.name) return;
    out.push_back(v);
  }

  std::vector<std::string> bound_;
};

void collect_names(const Formula& f, std::set<std::string>& out);

void collect_names(const Term& t, std::set<std::string>& out) {
  if (const auto* v = std::get_if<VarTerm>(&t.node)) {
    out.insert(v->var.name);
  } else if (const auto* tu = std::get_if<TupleTerm>(&t.node)) {
    for (const auto& c : tu->components) collect_names(*c, out);
  } else {
    const auto& c = std::get<ComprehensionTerm>(t.node);
    for (const auto& b : c.bound) out.insert(b.name);
    collect_names(*c.body, out);
  }
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Member>) {
          collect_names(*n.lhs, out);
          collect_names(*n.rhs, out);
        } else if constexpr (std::is_same_v<T, Not>) {
          collect_names(*n.operand, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_names(*n.left, out);
          collect_names(*n.right, out);
        } else {
          out.insert(n.var.name);
          collect_names(*n.body, out);
        }
      },
      f.node);
}

}  // namespace

std::vector<Variable> free_vars(const Term& t) {
  FreeVarCollector c;
  c.term(t);
  return std::move(c.out);
}

std::vector<Variable> free_vars(const Formula& f) {
  FreeVarCollector c;
  c.formula(f);
  return std::move(c.out);
}

std::vector<Variable> free_vars(const Expr& e) {
  return is_formula(e) ? free_vars(*std::get<FormulaPtr>(e)) : free_vars(*std::get<TermPtr>(e));
}

bool occurs_free(const Variable& v, const Formula& f) {
  for (const auto& w : free_vars(f))
    if (w.name == v.name) return true;
  return false;
}

bool occurs_free(const Variable& v, const Term& t) {
  for (const auto& w : free_vars(t))
    if (w.name == v.name) return true;
  return false;
}

std::set<std::string> all_names(const Formula& f) {
  std::set<std::string> out;
  collect_names(f, out);
  return out;
}

std::set<std::string> all_names(const Term& t) {
  std::set<std::string> out;
  collect_names(t, out);
  return out;
}

// --- Sort checking ----------------------------------------------------------

namespace {

struct SortFailure {
  ErrorCode code;
  std::string message;
};

Sort check_term(const Term& t);
void check_formula(const Formula& f);

Sort check_term(const Term& t) {
  if (const auto* v = std::get_if<VarTerm>(&t.node)) return v->var.sort;
  if (const auto* tu = std::get_if<TupleTerm>(&t.node)) {
    if (tu->components.size() < 2)
      throw SortFailure{ErrorCode::MalformedTuple, "tuple needs at least two components"};
    for (const auto& c : tu->components) {
      if (!std::holds_alternative<VarTerm>(c->node) || !check_term(*c).is_elem())
        throw SortFailure{ErrorCode::MalformedTuple,
                          "tuple components must be element variables"};
    }
    return Sort::tuple(static_cast<int>(tu->components.size()));
  }
  const auto& c = std::get<ComprehensionTerm>(t.node);
  if (c.bound.empty()) throw SortFailure{ErrorCode::MalformedTuple, "comprehension binds no variable"};
  for (std::size_t i = 0; i < c.bound.size(); ++i)
    for (std::size_t j = i + 1; j < c.bound.size(); ++j)
      if (c.bound[i].name == c.bound[j].name)
        throw SortFailure{ErrorCode::DuplicateBoundVar,
                          "variable " + c.bound[i].name + " bound twice"};
  check_formula(*c.body);
  for (const auto& b : c.bound)
    if (!occurs_free(b, *c.body))
      throw SortFailure{ErrorCode::NotFree, "bound variable " + b.name + " is not free in the body"};
  if (c.bound.size() == 1) return Sort::set_of(c.bound[0].sort);
  for (const auto& b : c.bound)
    if (!b.sort.is_elem())
      throw SortFailure{ErrorCode::MixedSorts, "tuple comprehension binds non-element variable " + b.name};
  return Sort::set_of(Sort::tuple(static_cast<int>(c.bound.size())));
}

void check_formula(const Formula& f) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Member>) {
          const Sort l = check_term(*n.lhs);
          const Sort r = check_term(*n.rhs);
          if (r != Sort::set_of(l))
            throw SortFailure{ErrorCode::SortMismatch,
                              "membership of " + l.str() + " in " + r.str()};
        } else if constexpr (std::is_same_v<T, Not>) {
          check_formula(*n.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          check_formula(*n.left);
          check_formula(*n.right);
        } else {
          check_formula(*n.body);
        }
      },
      f.node);
}

template <typename Fn>
SortReport run_check(Fn&& fn) {
  SortReport report;
  try {
    report.sort = fn();
    report.ok = true;
  } catch (const SortFailure& failure) {
    report.error = failure.code;
    report.message = failure.message;
  }
  return report;
}

}  // namespace

SortReport sort_check(const Term& t) {
  return run_check([&]() -> std::optional<Sort> { return check_term(t); });
}

SortReport sort_check(const Formula& f) {
  return run_check([&]() -> std::optional<Sort> {
    check_formula(f);
    return std::nullopt;
  });
}

SortReport sort_check(const Expr& e) {
  return is_formula(e) ? sort_check(*std::get<FormulaPtr>(e)) : sort_check(*std::get<TermPtr>(e));
}

Sort require_well_sorted(const Term& t) {
  SortReport r = sort_check(t);
  if (!r.ok) throw Error(*r.error, r.message);
  return *r.sort;
}

void require_well_sorted(const Formula& f) {
  SortReport r = sort_check(f);
  if (!r.ok) throw Error(*r.error, r.message);
}

void require_well_sorted(const Expr& e) {
  SortReport r = sort_check(e);
  if (!r.ok) throw Error(*r.error, r.message);
}

// --- Substitution -----------------------------------------------------------

namespace {

class Substitution {
 public:
  Substitution(Variable v, TermPtr replacement)
      : v_(std::move(v)), replacement_(std::move(replacement)) {
    for (const auto& w : free_vars(*replacement_)) replacement_free_.insert(w.name);
  }

  FormulaPtr formula(const FormulaPtr& f) {
    return std::visit(
        [&](const auto& n) -> FormulaPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Member>) {
            TermPtr l = term(n.lhs);
            TermPtr r = term(n.rhs);
            if (l == n.lhs && r == n.rhs) return f;
            return member(std::move(l), std::move(r));
          } else if constexpr (std::is_same_v<T, Not>) {
            FormulaPtr o = formula(n.operand);
            return o == n.operand ? f : negation(std::move(o));
          } else if constexpr (std::is_same_v<T, Binary>) {
            FormulaPtr l = formula(n.left);
            FormulaPtr r = formula(n.right);
            if (l == n.left && r == n.right) return f;
            return binary(n.op, std::move(l), std::move(r));
          } else {
            if (n.var.name == v_.name || !occurs_free(v_, *n.body)) return f;
            Variable bound = n.var;
            FormulaPtr body = n.body;
            if (replacement_free_.count(bound.name)) {
              std::set<std::string> avoid = all_names(*body);
              avoid.insert(replacement_free_.begin(), replacement_free_.end());
              avoid.insert(v_.name);
              Variable renamed = fresh_variable(bound, avoid);
              body = Substitution(bound, var_term(renamed)).formula(body);
              bound = renamed;
            }
            return quantified(n.quantifier, bound, formula(body));
          }
        },
        f->node);
  }

  TermPtr term(const TermPtr& t) {
    if (const auto* v = std::get_if<VarTerm>(&t->node))
      return v->var.name == v_.name ? replacement_ : t;
    if (const auto* tu = std::get_if<TupleTerm>(&t->node)) {
      std::vector<TermPtr> parts;
      bool changed = false;
      for (const auto& c : tu->components) {
        parts.push_back(term(c));
        changed = changed || parts.back() != c;
      }
      return changed ? tuple_term(std::move(parts)) : t;
    }
    const auto& c = std::get<ComprehensionTerm>(t->node);
    for (const auto& b : c.bound)
      if (b.name == v_.name) return t;
    if (!occurs_free(v_, *c.body)) return t;
    std::vector<Variable> bound = c.bound;
    FormulaPtr body = c.body;
    for (auto& b : bound) {
      if (!replacement_free_.count(b.name)) continue;
      std::set<std::string> avoid = all_names(*body);
      avoid.insert(replacement_free_.begin(), replacement_free_.end());
      avoid.insert(v_.name);
      for (const auto& other : bound) avoid.insert(other.name);
      Variable renamed = fresh_variable(b, avoid);
      body = Substitution(b, var_term(renamed)).formula(body);
      b = renamed;
    }
    return comprehension(std::move(bound), formula(body));
  }

 private:
  Variable v_;
  TermPtr replacement_;
  std::set<std::string> replacement_free_;
};

// Renames every binder of t whose name is in avoid.
FormulaPtr hygienize(const FormulaPtr& f, std::set<std::string>& avoid);

TermPtr hygienize(const TermPtr& t, std::set<std::string>& avoid) {
  if (std::holds_alternative<VarTerm>(t->node)) return t;
  if (const auto* tu = std::get_if<TupleTerm>(&t->node)) {
    std::vector<TermPtr> parts;
    for (const auto& c : tu->components) parts.push_back(hygienize(c, avoid));
    return tuple_term(std::move(parts));
  }
  const auto& c = std::get<ComprehensionTerm>(t->node);
  std::vector<Variable> bound = c.bound;
  FormulaPtr body = c.body;
  for (auto& b : bound) {
    if (!avoid.count(b.name)) continue;
    std::set<std::string> taken = avoid;
    for (const auto& n : all_names(*body)) taken.insert(n);
    for (const auto& other : bound) taken.insert(other.name);
    Variable renamed = fresh_variable(b, taken);
    body = Substitution(b, var_term(renamed)).formula(body);
    b = renamed;
    avoid.insert(renamed.name);
  }
  return comprehension(std::move(bound), hygienize(body, avoid));
}

FormulaPtr hygienize(const FormulaPtr& f, std::set<std::string>& avoid) {
  return std::visit(
      [&](const auto& n) -> FormulaPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Member>) {
          return member(hygienize(n.lhs, avoid), hygienize(n.rhs, avoid));
        } else if constexpr (std::is_same_v<T, Not>) {
          return negation(hygienize(n.operand, avoid));
        } else if constexpr (std::is_same_v<T, Binary>) {
          return binary(n.op, hygienize(n.left, avoid), hygienize(n.right, avoid));
        } else {
          Variable bound = n.var;
          FormulaPtr body = n.body;
          if (avoid.count(bound.name)) {
            std::set<std::string> taken = avoid;
            for (const auto& name : all_names(*body)) taken.insert(name);
            Variable renamed = fresh_variable(bound, taken);
            body = Substitution(bound, var_term(renamed)).formula(body);
            bound = renamed;
            avoid.insert(renamed.name);
          }
          return quantified(n.quantifier, bound, hygienize(body, avoid));
        }
      },
      f->node);
}

TermPtr prepare_replacement(const Variable& v, const TermPtr& replacement,
                            std::set<std::string> target_names) {
  const Sort s = require_well_sorted(*replacement);
  if (s != v.sort)
    throw Error(ErrorCode::SortMismatch,
                "cannot substitute a " + s.str() + " term for " + v.name + " : " + v.sort.str());
  if (std::holds_alternative<VarTerm>(replacement->node)) return replacement;
  for (const auto& w : free_vars(*replacement)) target_names.insert(w.name);
  return hygienize(replacement, target_names);
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const Variable& v, const TermPtr& replacement) {
  TermPtr r = prepare_replacement(v, replacement, all_names(*f));
  if (!occurs_free(v, *f)) return f;
  return Substitution(v, std::move(r)).formula(f);
}

TermPtr substitute(const TermPtr& t, const Variable& v, const TermPtr& replacement) {
  TermPtr r = prepare_replacement(v, replacement, all_names(*t));
  if (!occurs_free(v, *t)) return t;
  return Substitution(v, std::move(r)).term(t);
}

Expr substitute(const Expr& e, const Variable& v, const TermPtr& replacement) {
  if (is_formula(e)) return substitute(std::get<FormulaPtr>(e), v, replacement);
  return substitute(std::get<TermPtr>(e), v, replacement);
}

// --- Misc -------------------------------------------------------------------

int atom_count(const Term& t) {
  if (std::holds_alternative<VarTerm>(t.node)) return 0;
  if (const auto* tu = std::get_if<TupleTerm>(&t.node)) {
    int n = 0;
    for (const auto& c : tu->components) n += atom_count(*c);
    return n;
  }
  return atom_count(*std::get<ComprehensionTerm>(t.node).body);
}

int atom_count(const Formula& f) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Member>) {
          return 1 + atom_count(*n.lhs) + atom_count(*n.rhs);
        } else if constexpr (std::is_same_v<T, Not>) {
          return atom_count(*n.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return atom_count(*n.left) + atom_count(*n.right);
        } else {
          return atom_count(*n.body);
        }
      },
      f.node);
}

}  // namespace signet
