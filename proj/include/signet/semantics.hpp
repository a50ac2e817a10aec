#pragma once

// Exhaustive evaluation over finite interpretations. The domain of size d is
// {0, ..., d-1}; every value is an index into the range of its sort:
//
//   Elem          0 .. d-1
//   Elem^n        tuple index, first component most significant
//   Set(s)        bitmask over range(s), bit i set iff value i is a member
//
// Quantifiers and comprehension binders enumerate their whole range in
// ascending order, so sets come in binary-counter order of their
// characteristic vectors.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "signet/formula.hpp"

namespace signet {

using Value = std::uint64_t;

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;
inline constexpr int kDefaultModelSize = 3;

struct Interpretation {
  int domain_size = 1;
};

// Throws ResourceLimit when values of the sort no longer fit in 64 bits.
std::uint64_t range_size(const Sort& sort, int domain_size);

// "1", "⟨0, 1⟩", "{0, 2}", "∅", "{∅, {0}}".
std::string format_value(Value v, const Sort& sort, int domain_size);

class Assignment {
 public:
  Assignment() = default;

  void set(const Variable& v, Value value);
  std::optional<Value> get(const std::string& name) const;
  const std::vector<std::pair<Variable, Value>>& bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }

  // "x0=1, A0={0, 1}"
  std::string str(int domain_size) const;

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.bindings_ == b.bindings_;
  }

 private:
  std::vector<std::pair<Variable, Value>> bindings_;
};

// Shared step counter for one sweep. A step is one top-level evaluation or
// one binder instance (a quantifier or comprehension trying one value).
class EvalBudget {
 public:
  explicit EvalBudget(std::uint64_t limit = kDefaultBudget) : limit_(limit) {}
  void charge(std::uint64_t n = 1);
  std::uint64_t used() const noexcept { return used_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

class Evaluator {
 public:
  Evaluator(Interpretation interpretation, EvalBudget& budget);

  bool eval(const Formula& f, const Assignment& a);
  Value eval_term(const Term& t, const Assignment& a);

 private:
  class Frame;
  bool formula(const Formula& f, Frame& env);
  Value term(const Term& t, Frame& env);

  int d_;
  EvalBudget& budget_;
};

bool eval(const Formula& f, Interpretation i, const Assignment& a);
Value eval_term(const Term& t, Interpretation i, const Assignment& a);

// Calls visit(assignment) for every assignment of vars at the given size, in
// odometer order (first variable most significant, values ascending). Stops
// early when visit returns false.
template <typename Visit>
void for_each_assignment(const std::vector<Variable>& vars, int domain_size, Visit&& visit);

struct Witness {
  int domain_size = 0;
  Assignment assignment;
};

struct Classification {
  enum class Verdict { ValidUpTo, UnsatUpTo, Contingent };
  Verdict verdict = Verdict::Contingent;
  int max_size = 0;
  std::optional<Witness> witness_true;
  std::optional<Witness> witness_false;

  // "ValidUpTo(3)", "UnsatUpTo(3)", "Contingent"
  std::string label() const;
};

Classification classify(const Formula& f, int max_size = kDefaultModelSize,
                        std::uint64_t budget = kDefaultBudget);

struct Counterexample {
  int domain_size = 0;
  Assignment assignment;
  std::string lhs_value;
  std::string rhs_value;

  std::string str() const;
};

struct ExtensionalResult {
  bool equal = true;
  std::optional<Counterexample> counterexample;
  std::uint64_t cases = 0;
};

// Maps a variable of the second operand to the variable of the first operand
// it is identified with. Unlisted variables pair with the same name.
using VariablePairing = std::map<std::string, std::string>;

// Sweeps every interpretation of size 1..max_size and every assignment to the
// free variables of both sides (first side's variables first); stops at the
// first disagreement. ProfileMismatch for a formula against a term, terms of
// different sorts, or a pairing that is not injective or not sort-preserving.
ExtensionalResult extensionally_equal(const Expr& a, const Expr& b, int max_size = kDefaultModelSize,
                                      const VariablePairing& pairing = {},
                                      std::uint64_t budget = kDefaultBudget);

// --- template implementation ------------------------------------------------

template <typename Visit>
void for_each_assignment(const std::vector<Variable>& vars, int domain_size, Visit&& visit) {
  std::vector<std::uint64_t> sizes;
  for (const auto& v : vars) sizes.push_back(range_size(v.sort, domain_size));
  std::vector<Value> current(vars.size(), 0);
  for (std::uint64_t s : sizes)
    if (s == 0) return;
  while (true) {
    Assignment a;
    for (std::size_t i = 0; i < vars.size(); ++i) a.set(vars[i], current[i]);
    if (!visit(a)) return;
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++current[i] < sizes[i]) break;
      current[i] = 0;
      if (i == 0) return;
    }
    if (vars.empty()) return;
  }
}

}  // namespace signet
