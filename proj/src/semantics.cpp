#include "signet/semantics.hpp"

#include <algorithm>

namespace signet {

std::uint64_t range_size(const Sort& sort, int domain_size) {
  if (domain_size < 1) throw Error(ErrorCode::InvalidArgument, "domain size must be at least 1");
  switch (sort.kind()) {
    case Sort::Kind::Elem:
      return static_cast<std::uint64_t>(domain_size);
    case Sort::Kind::ElemTuple: {
      std::uint64_t n = 1;
      for (int i = 0; i < sort.arity(); ++i) {
        n *= static_cast<std::uint64_t>(domain_size);
        if (n > 64)
          throw Error(ErrorCode::ResourceLimit, sort.str() + " has too many tuples at domain size " +
                                                    std::to_string(domain_size));
      }
      return n;
    }
    case Sort::Kind::SetOf: {
      const std::uint64_t inner = range_size(sort.inner(), domain_size);
      if (inner > 63)
        throw Error(ErrorCode::ResourceLimit,
                    sort.str() + " is not enumerable at domain size " + std::to_string(domain_size));
      return std::uint64_t{1} << inner;
    }
  }
  return 0;
}

namespace {

std::string format_tuple(Value v, int arity, int d) {
  std::vector<Value> parts(static_cast<std::size_t>(arity));
  for (int i = arity - 1; i >= 0; --i) {
    parts[static_cast<std::size_t>(i)] = v % static_cast<Value>(d);
    v /= static_cast<Value>(d);
  }
  std::string out = "⟨";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(parts[i]);
  }
  return out + "⟩";
}

}  // namespace

std::string format_value(Value v, const Sort& sort, int domain_size) {
  switch (sort.kind()) {
    case Sort::Kind::Elem:
      return std::to_string(v);
    case Sort::Kind::ElemTuple:
      return format_tuple(v, sort.arity(), domain_size);
    case Sort::Kind::SetOf: {
      if (v == 0) return "∅";
      const std::uint64_t n = range_size(sort.inner(), domain_size);
      std::string out = "{";
      bool first = true;
      for (std::uint64_t i = 0; i < n; ++i) {
        if (!((v >> i) & 1U)) continue;
        if (!first) out += ", ";
        first = false;
        out += format_value(i, sort.inner(), domain_size);
      }
      return out + "}";
    }
  }
  return "?";
}

void Assignment::set(const Variable& v, Value value) {
  for (auto& [var, val] : bindings_) {
    if (var.name == v.name) {
      var = v;
      val = value;
      return;
    }
  }
  bindings_.emplace_back(v, value);
}

std::optional<Value> Assignment::get(const std::string& name) const {
  for (const auto& [var, val] : bindings_)
    if (var.name == name) return val;
  return std::nullopt;
}

std::string Assignment::str(int domain_size) const {
  std::string out;
  for (const auto& [var, val] : bindings_) {
    if (!out.empty()) out += ", ";
    out += var.name + "=" + format_value(val, var.sort, domain_size);
  }
  return out;
}

void EvalBudget::charge(std::uint64_t n) {
  used_ += n;
  if (used_ > limit_)
    throw Error(ErrorCode::ResourceLimit,
                "evaluation budget of " + std::to_string(limit_) + " steps exhausted");
}

// Variable environment: the assignment below, binder values pushed on top.
class Evaluator::Frame {
 public:
  explicit Frame(const Assignment& a) : base_(a) {}

  void push(const std::string& name, Value v) { stack_.emplace_back(&name, v); }
  void pop(std::size_t n = 1) { stack_.resize(stack_.size() - n); }
  void set_top(std::size_t offset_from_top, Value v) {
    stack_[stack_.size() - 1 - offset_from_top].second = v;
  }

  Value lookup(const std::string& name) const {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it)
      if (*it->first == name) return it->second;
    if (auto v = base_.get(name)) return *v;
    throw Error(ErrorCode::IncompleteAssignment, "no value assigned to " + name);
  }

 private:
  const Assignment& base_;
  std::vector<std::pair<const std::string*, Value>> stack_;
};

Evaluator::Evaluator(Interpretation interpretation, EvalBudget& budget)
    : d_(interpretation.domain_size), budget_(budget) {
  if (d_ < 1) throw Error(ErrorCode::InvalidArgument, "domain size must be at least 1");
}

bool Evaluator::eval(const Formula& f, const Assignment& a) {
  budget_.charge();
  Frame env(a);
  return formula(f, env);
}

Value Evaluator::eval_term(const Term& t, const Assignment& a) {
  budget_.charge();
  Frame env(a);
  return term(t, env);
}

bool Evaluator::formula(const Formula& f, Frame& env) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Member>) {
          const Value elem = term(*n.lhs, env);
          const Value set = term(*n.rhs, env);
          return elem < 64 && ((set >> elem) & 1U) != 0;
        } else if constexpr (std::is_same_v<T, Not>) {
          return !formula(*n.operand, env);
        } else if constexpr (std::is_same_v<T, Binary>) {
          switch (n.op) {
            case Connective::And: return formula(*n.left, env) && formula(*n.right, env);
            case Connective::Or: return formula(*n.left, env) || formula(*n.right, env);
            case Connective::Implies: return !formula(*n.left, env) || formula(*n.right, env);
          }
          return false;
        } else {
          const std::uint64_t count = range_size(n.var.sort, d_);
          const bool universal = n.quantifier == Quantifier::Forall;
          env.push(n.var.name, 0);
          bool result = universal;
          for (Value v = 0; v < count; ++v) {
            budget_.charge();
            env.set_top(0, v);
            if (formula(*n.body, env) != universal) {
              result = !universal;
              break;
            }
          }
          env.pop();
          return result;
        }
      },
      f.node);
}

Value Evaluator::term(const Term& t, Frame& env) {
  if (const auto* v = std::get_if<VarTerm>(&t.node)) return env.lookup(v->var.name);
  if (const auto* tu = std::get_if<TupleTerm>(&t.node)) {
    Value index = 0;
    for (const auto& c : tu->components) index = index * static_cast<Value>(d_) + term(*c, env);
    return index;
  }
  const auto& c = std::get<ComprehensionTerm>(t.node);
  // Enumerate the bound tuple as an odometer over the binders' ranges; the
  // running position is the member index within range(content sort).
  std::vector<std::uint64_t> sizes;
  std::uint64_t total = 1;
  for (const auto& b : c.bound) {
    sizes.push_back(range_size(b.sort, d_));
    total *= sizes.back();
  }
  if (total > 64)
    throw Error(ErrorCode::ResourceLimit, "comprehension ranges over more than 64 candidates");
  for (const auto& b : c.bound) env.push(b.name, 0);
  std::vector<Value> current(c.bound.size(), 0);
  Value result = 0;
  for (std::uint64_t index = 0; index < total; ++index) {
    budget_.charge();
    for (std::size_t i = 0; i < current.size(); ++i) env.set_top(current.size() - 1 - i, current[i]);
    if (formula(*c.body, env)) result |= Value{1} << index;
    for (std::size_t i = current.size(); i-- > 0;) {
      if (++current[i] < sizes[i]) break;
      current[i] = 0;
    }
  }
  env.pop(c.bound.size());
  return result;
}

bool eval(const Formula& f, Interpretation i, const Assignment& a) {
  EvalBudget budget;
  return Evaluator(i, budget).eval(f, a);
}

Value eval_term(const Term& t, Interpretation i, const Assignment& a) {
  EvalBudget budget;
  return Evaluator(i, budget).eval_term(t, a);
}

std::string Classification::label() const {
  switch (verdict) {
    case Verdict::ValidUpTo: return "ValidUpTo(" + std::to_string(max_size) + ")";
    case Verdict::UnsatUpTo: return "UnsatUpTo(" + std::to_string(max_size) + ")";
    case Verdict::Contingent: return "Contingent";
  }
  return "?";
}

Classification classify(const Formula& f, int max_size, std::uint64_t budget_limit) {
  if (max_size < 1) throw Error(ErrorCode::InvalidArgument, "max size must be at least 1");
  require_well_sorted(f);
  const auto vars = free_vars(f);
  EvalBudget budget(budget_limit);
  Classification result;
  result.max_size = max_size;
  for (int d = 1; d <= max_size; ++d) {
    Evaluator ev(Interpretation{d}, budget);
    for_each_assignment(vars, d, [&](const Assignment& a) {
      const bool value = ev.eval(f, a);
      auto& slot = value ? result.witness_true : result.witness_false;
      if (!slot) slot = Witness{d, a};
      return !(result.witness_true && result.witness_false);
    });
    if (result.witness_true && result.witness_false) break;
  }
  if (result.witness_true && result.witness_false) {
    result.verdict = Classification::Verdict::Contingent;
  } else if (result.witness_true) {
    result.verdict = Classification::Verdict::ValidUpTo;
  } else {
    result.verdict = Classification::Verdict::UnsatUpTo;
  }
  return result;
}

std::string Counterexample::str() const {
  return "d=" + std::to_string(domain_size) + (assignment.size() ? ", " + assignment.str(domain_size) : "") +
         ": " + lhs_value + " vs " + rhs_value;
}

ExtensionalResult extensionally_equal(const Expr& a, const Expr& b, int max_size,
                                      const VariablePairing& pairing, std::uint64_t budget_limit) {
  if (max_size < 1) throw Error(ErrorCode::InvalidArgument, "max size must be at least 1");
  if (is_formula(a) != is_formula(b))
    throw Error(ErrorCode::ProfileMismatch, "cannot compare a formula with a term");
  std::optional<Sort> sort;
  if (!is_formula(a)) {
    const Sort sa = require_well_sorted(*std::get<TermPtr>(a));
    const Sort sb = require_well_sorted(*std::get<TermPtr>(b));
    if (sa != sb)
      throw Error(ErrorCode::ProfileMismatch, "terms of sort " + sa.str() + " and " + sb.str());
    sort = sa;
  } else {
    require_well_sorted(a);
    require_well_sorted(b);
  }

  std::vector<Variable> vars = free_vars(a);
  // Second operand's free variables, renamed through the pairing.
  std::vector<std::pair<Variable, std::string>> b_vars;
  std::vector<std::string> targets;
  for (const auto& w : free_vars(b)) {
    auto it = pairing.find(w.name);
    const std::string target = it == pairing.end() ? w.name : it->second;
    if (std::find(targets.begin(), targets.end(), target) != targets.end())
      throw Error(ErrorCode::ProfileMismatch, "pairing maps two variables to " + target);
    targets.push_back(target);
    auto existing = std::find_if(vars.begin(), vars.end(), [&](const Variable& v) { return v.name == target; });
    if (existing != vars.end()) {
      if (existing->sort != w.sort)
        throw Error(ErrorCode::ProfileMismatch, "pairing " + w.name + " with " + target + " changes sort");
    } else {
      vars.push_back(Variable{target, w.sort});
    }
    b_vars.emplace_back(w, target);
  }

  EvalBudget budget(budget_limit);
  ExtensionalResult result;
  for (int d = 1; d <= max_size && result.equal; ++d) {
    Evaluator ev(Interpretation{d}, budget);
    for_each_assignment(vars, d, [&](const Assignment& asg) {
      Assignment asg_b;
      for (const auto& [w, target] : b_vars) asg_b.set(w, *asg.get(target));
      ++result.cases;
      std::string lhs;
      std::string rhs;
      bool same = false;
      if (sort) {
        const Value va = ev.eval_term(*std::get<TermPtr>(a), asg);
        const Value vb = ev.eval_term(*std::get<TermPtr>(b), asg_b);
        same = va == vb;
        if (!same) {
          lhs = format_value(va, *sort, d);
          rhs = format_value(vb, *sort, d);
        }
      } else {
        const bool va = ev.eval(*std::get<FormulaPtr>(a), asg);
        const bool vb = ev.eval(*std::get<FormulaPtr>(b), asg_b);
        same = va == vb;
        if (!same) {
          lhs = va ? "true" : "false";
          rhs = vb ? "true" : "false";
        }
      }
      if (!same) {
        result.equal = false;
        result.counterexample = Counterexample{d, asg, lhs, rhs};
        return false;
      }
      return true;
    });
  }
  return result;
}

}  // namespace signet
