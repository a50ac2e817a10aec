#pragma once

// Bounded forward chaining over the rules, and the reference derivation
// table the default run is checked against.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "signet/recognition.hpp"
#include "signet/semantics.hpp"
#include "signet/store.hpp"

namespace signet {

struct EnumConfig {
  int elem_vars = 2;
  int set_vars = 2;
  int max_atoms = 2;          // literals per connective combination
  int quantifier_depth = 1;   // nested quantification rounds
  int model_check_size = kDefaultModelSize;
  std::uint64_t budget = kDefaultBudget;  // evaluation steps per sweep
  std::size_t max_objects = 100'000;      // BudgetExceeded beyond this

  // InvalidArgument on out-of-range values.
  void validate() const;
  friend bool operator==(const EnumConfig&, const EnumConfig&) = default;
};

// Phases, each in creation order:
//   1. seed atoms
//   2. negation of every atom
//   3. for And then Or: combinations of up to max_atoms literals (atoms
//      then negated atoms), indices strictly increasing
//   4. Forall then Exists over each free variable of every unquantified
//      formula, repeated quantifier_depth times on the new formulae
//   5. truth sets of every formula: non-empty subsets of its free element
//      variables (by size, then variable order), then each free set
//      variable alone
ObjectStore enumerate(const EnumConfig& config = {});

struct ReferenceRow {
  int number = 0;
  std::string formula;   // grammar text
  std::string notation;  // "P6(x0, A0, A1)"
  std::string symbol;    // instantiated notion, empty when none
  std::string catalog_key;
  std::string natural_language;
  Expr payload;
};

// The 28 rows of the reference derivation table.
const std::vector<ReferenceRow>& table1_rows();

// Applies the reference table's rules in its row order; ids equal row
// numbers and names equal the notation column.
ObjectStore replay_table1_construction();

struct RowCoverage {
  int number = 0;
  std::optional<ObjectId> object;
  bool notion_checked = false;
  bool notion_ok = true;
  std::string detail;
};

struct CoverageReport {
  std::vector<RowCoverage> rows;
  std::size_t matched = 0;
  std::size_t notions_checked = 0;
  std::size_t notions_ok = 0;
  std::size_t store_size = 0;

  bool ok() const { return matched == rows.size() && notions_ok == notions_checked; }
  // Stored objects that match no row; never a failure.
  std::size_t extras() const { return store_size - matched; }
  // "28/28"
  std::string summary() const;
};

// Looks every row up by canonical key and, for rows carrying a catalog
// notion, checks that recognition names it first with the row's symbol.
CoverageReport verify_table1(const ObjectStore& store, const std::vector<CatalogEntry>& catalog = builtin_catalog(),
                             int max_size = kDefaultModelSize, std::uint64_t budget = kDefaultBudget);

}  // namespace signet
