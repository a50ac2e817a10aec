#include "signet/enumerator.hpp"

#include <algorithm>
#include <sstream>

#include "signet/syntax.hpp"
#include "signet/table1_data.hpp"

namespace signet {

void EnumConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (elem_vars < 1) fail("at least one element variable is required");
  if (set_vars < 1) fail("at least one set variable is required");
  if (max_atoms < 1) fail("max atoms must be at least 1");
  if (quantifier_depth < 0) fail("quantifier depth must be non-negative");
  if (model_check_size < 1) fail("model check size must be at least 1");
  if (budget == 0) fail("evaluation budget must be positive");
  if (max_objects == 0) fail("object cap must be positive");
}

namespace {

class Enumeration {
 public:
  explicit Enumeration(const EnumConfig& config) : config_(config) {}

  ObjectStore run() {
    store_ = ObjectStore::seed(config_.elem_vars, config_.set_vars);
    check_cap();
    std::vector<ObjectId> atoms;
    for (const auto& obj : store_) atoms.push_back(obj.id);

    std::vector<ObjectId> literals = atoms;
    for (ObjectId a : atoms) literals.push_back(track(store_.apply_negate(a)));

    for (Connective op : {Connective::And, Connective::Or}) combine(op, literals);

    std::vector<ObjectId> round;
    for (const auto& obj : store_) round.push_back(obj.id);
    for (int depth = 0; depth < config_.quantifier_depth; ++depth) round = quantify(round);

    truth_sets();
    return std::move(store_);
  }

 private:
  ObjectId track(RuleOutcome outcome) {
    check_cap();
    return outcome.id;
  }

  void check_cap() const {
    if (store_.size() > config_.max_objects)
      throw Error(ErrorCode::BudgetExceeded,
                  "enumeration exceeded the cap of " + std::to_string(config_.max_objects) + " objects");
  }

  // Chains of literals with strictly increasing indices, one level per
  // extra literal.
  void combine(Connective op, const std::vector<ObjectId>& literals) {
    std::vector<std::pair<ObjectId, std::size_t>> level;
    for (std::size_t i = 0; i < literals.size(); ++i) level.emplace_back(literals[i], i);
    for (int size = 2; size <= config_.max_atoms; ++size) {
      std::vector<std::pair<ObjectId, std::size_t>> next;
      for (const auto& [formula, last] : level)
        for (std::size_t j = last + 1; j < literals.size(); ++j) {
          RuleOutcome out = store_.apply_connect(op, formula, literals[j]);
          check_cap();
          if (!out.already_present) next.emplace_back(out.id, j);
        }
      level = std::move(next);
    }
  }

  std::vector<ObjectId> quantify(const std::vector<ObjectId>& sources) {
    std::vector<ObjectId> created;
    for (ObjectId id : sources) {
      if (!store_.at(id).is_formula()) continue;
      const auto vars = free_vars(*store_.at(id).formula());
      for (const Variable& v : vars)
        for (Quantifier q : {Quantifier::Forall, Quantifier::Exists}) {
          RuleOutcome out = store_.apply_quantify(q, v, id);
          check_cap();
          if (!out.already_present) created.push_back(out.id);
        }
    }
    return created;
  }

  void truth_sets() {
    const std::size_t formula_count = store_.size();
    for (ObjectId id = 1; id <= formula_count; ++id) {
      if (!store_.at(id).is_formula()) continue;
      const auto vars = free_vars(*store_.at(id).formula());
      std::vector<Variable> elems;
      std::vector<Variable> sets;
      for (const auto& v : vars) (v.sort.is_elem() ? elems : sets).push_back(v);
      std::sort(elems.begin(), elems.end(), variable_less);
      std::sort(sets.begin(), sets.end(), variable_less);

      for (std::size_t size = 1; size <= elems.size(); ++size) {
        // Lexicographic combinations of the given size.
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
          std::vector<Variable> bound;
          for (std::size_t i : pick) bound.push_back(elems[i]);
          track(store_.apply_truth_set(bound, id));
          std::size_t k = size;
          while (k > 0 && pick[k - 1] == elems.size() - size + k - 1) --k;
          if (k == 0) break;
          ++pick[k - 1];
          for (std::size_t i = k; i < size; ++i) pick[i] = pick[i - 1] + 1;
        }
      }
      for (const auto& s : sets) track(store_.apply_truth_set({s}, id));
    }
  }

  const EnumConfig& config_;
  ObjectStore store_;
};

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

std::vector<ReferenceRow> parse_reference_rows(const std::string& text) {
  std::vector<ReferenceRow> rows;
  std::istringstream in(text);
  std::string line;
  auto field = [](const std::string& s) { return s == "-" ? std::string() : s; };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cols = split_tabs(line);
    if (cols.size() != 6) throw Error(ErrorCode::ParseError, "reference row has " + std::to_string(cols.size()) + " columns");
    ReferenceRow row;
    row.number = std::stoi(cols[0]);
    row.formula = cols[1];
    row.notation = cols[2];
    row.symbol = field(cols[3]);
    row.catalog_key = field(cols[4]);
    row.natural_language = field(cols[5]);
    row.payload = parse(row.formula);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ObjectStore enumerate(const EnumConfig& config) {
  config.validate();
  return Enumeration(config).run();
}

const std::vector<ReferenceRow>& table1_rows() {
  static const std::vector<ReferenceRow> rows = parse_reference_rows(kTable1Fixture);
  return rows;
}

ObjectStore replay_table1_construction() {
  const Variable x0 = make_variable("x0");
  const Variable x1 = make_variable("x1");
  const Variable a0 = make_variable("A0");
  const Variable a1 = make_variable("A1");
  const auto F = Quantifier::Forall;
  const auto E = Quantifier::Exists;
  const auto And = Connective::And;
  const auto Or = Connective::Or;

  ObjectStore s = ObjectStore::seed(2, 2);  // rows 1-4
  s.apply_negate(1);                        // 5
  s.apply_quantify(F, x0, 1);               // 6
  s.apply_quantify(F, a0, 1);               // 7
  s.apply_quantify(E, x0, 1);               // 8
  s.apply_quantify(E, a0, 1);               // 9
  s.apply_truth_set({x0}, 1);               // 10
  s.apply_truth_set({a0}, 1);               // 11
  s.apply_connect(And, 1, 2);               // 12
  s.apply_connect(Or, 1, 2);                // 13
  s.apply_negate(3);                        // 14
  s.apply_negate(4);                        // 15
  s.apply_negate(2);                        // 16
  s.apply_connect(And, 1, 3);               // 17
  s.apply_connect(And, 1, 16);              // 18
  s.apply_truth_set({x0}, 18);              // 19
  s.apply_truth_set({x0}, 12);              // 20
  s.apply_truth_set({x0}, 5);               // 21
  s.apply_truth_set({x0}, 13);              // 22
  s.apply_connect(Or, 1, 16);               // 23
  s.apply_truth_set({x0}, 23);              // 24
  s.apply_connect(And, 1, 4);               // 25
  s.apply_truth_set({x0, x1}, 25);          // 26
  s.apply_quantify(F, x0, 23);              // 27
  s.apply_truth_set({a1}, 27);              // 28
  return s;
}

std::string CoverageReport::summary() const {
  return std::to_string(matched) + "/" + std::to_string(rows.size());
}

CoverageReport verify_table1(const ObjectStore& store, const std::vector<CatalogEntry>& catalog, int max_size,
                             std::uint64_t budget) {
  CoverageReport report;
  report.store_size = store.size();
  for (const ReferenceRow& row : table1_rows()) {
    RowCoverage cov;
    cov.number = row.number;
    cov.object = store.find(row.payload);
    if (!cov.object) {
      cov.detail = "missing " + render(row.payload, Style::Unicode);
      report.rows.push_back(std::move(cov));
      continue;
    }
    ++report.matched;
    if (!row.catalog_key.empty()) {
      cov.notion_checked = true;
      ++report.notions_checked;
      const auto matches = match_catalog(store.at(*cov.object).payload, catalog, max_size, budget);
      if (matches.empty()) {
        cov.notion_ok = false;
        cov.detail = "not recognized, expected " + row.catalog_key;
      } else if (matches.front().key != row.catalog_key) {
        cov.notion_ok = false;
        cov.detail = "recognized as " + matches.front().key + ", expected " + row.catalog_key;
      } else if (!row.symbol.empty() && matches.front().instantiated_symbol != row.symbol) {
        cov.notion_ok = false;
        cov.detail = "symbol " + matches.front().instantiated_symbol + ", expected " + row.symbol;
      }
      if (cov.notion_ok) ++report.notions_ok;
    }
    report.rows.push_back(std::move(cov));
  }
  return report;
}

}  // namespace signet
