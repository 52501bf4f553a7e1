#include <algorithm>

#include "salbp3pm/cnf.hpp"
#include "salbp3pm/error.hpp"

namespace salbp3pm {

Var CnfFormula::new_vars(int count) {
  if (count < 0) throw ArgumentError("negative variable count");
  const Var first = var_count_ + 1;
  var_count_ += count;
  return first;
}

void CnfFormula::reserve_vars(int var_count) { var_count_ = std::max(var_count_, var_count); }

bool CnfFormula::add_clause(std::span<const Lit> lits) {
  scratch_.clear();
  for (Lit l : lits) {
    if (l == 0) throw ArgumentError("literal 0 is not a valid literal");
    if (var_of(l) > var_count_)
      throw ArgumentError("literal " + std::to_string(l) + " exceeds allocated variables (" +
                          std::to_string(var_count_) + ")");
    bool duplicate = false;
    for (Lit seen : scratch_) {
      if (seen == -l) return false;
      if (seen == l) duplicate = true;
    }
    if (!duplicate) scratch_.push_back(l);
  }
  if (scratch_.empty()) trivially_unsat_ = true;
  starts_.push_back(lits_.size());
  lits_.insert(lits_.end(), scratch_.begin(), scratch_.end());
  return true;
}

void CnfFormula::append(const CnfFormula& other) {
  reserve_vars(other.var_count());
  for (std::size_t i = 0; i < other.clause_count(); ++i) add_clause(other.clause(i));
}

bool CnfFormula::satisfied_by(const std::vector<bool>& model) const {
  for (std::size_t i = 0; i < clause_count(); ++i) {
    bool sat = false;
    for (Lit l : clause(i)) {
      const bool value = static_cast<std::size_t>(var_of(l)) < model.size() && model[var_of(l)];
      if (value == (l > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

std::uint64_t WcnfFormula::top() const {
  std::uint64_t total = 1;
  for (const auto& s : soft) total += s.weight;
  return total;
}

std::uint64_t WcnfFormula::cost(const std::vector<bool>& model) const {
  std::uint64_t total = 0;
  for (const auto& s : soft) {
    const bool sat = std::any_of(s.lits.begin(), s.lits.end(), [&](Lit l) {
      const bool value = static_cast<std::size_t>(var_of(l)) < model.size() && model[var_of(l)];
      return value == (l > 0);
    });
    if (!sat) total += s.weight;
  }
  return total;
}

}  // namespace salbp3pm
