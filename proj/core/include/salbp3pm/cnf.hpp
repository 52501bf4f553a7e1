#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace salbp3pm {

/// DIMACS-style literal: +v is variable v true, -v is v false. Never 0.
using Lit = int;
using Var = int;

inline Var var_of(Lit l) { return l < 0 ? -l : l; }

/// Clause database with a dense variable allocator.
///
/// Tautologies are rejected at insertion and duplicate literals collapsed,
/// so clause counts reflect what a solver actually receives. Inserting an
/// empty clause is legal and marks the formula trivially unsatisfiable; the
/// empty clause is kept so that serialisation preserves unsatisfiability.
class CnfFormula {
 public:
  CnfFormula() = default;
  explicit CnfFormula(int var_count) : var_count_(var_count) {}

  Var new_var() { return ++var_count_; }
  /// Allocates `count` consecutive variables and returns the first.
  Var new_vars(int count);
  /// Grows the variable range without allocating through the allocator.
  void reserve_vars(int var_count);

  /// Returns false when the clause was a tautology and therefore dropped.
  /// Throws ArgumentError for a zero literal or a variable beyond var_count().
  bool add_clause(std::span<const Lit> lits);
  bool add_clause(std::initializer_list<Lit> lits) {
    return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  void append(const CnfFormula& other);

  int var_count() const noexcept { return var_count_; }
  std::size_t clause_count() const noexcept { return starts_.size(); }
  std::size_t literal_count() const noexcept { return lits_.size(); }
  bool trivially_unsat() const noexcept { return trivially_unsat_; }

  std::span<const Lit> clause(std::size_t index) const {
    const std::size_t begin = starts_[index];
    const std::size_t end = index + 1 < starts_.size() ? starts_[index + 1] : lits_.size();
    return {lits_.data() + begin, end - begin};
  }

  /// True when `model` (indexed by variable, slot 0 unused) satisfies every clause.
  bool satisfied_by(const std::vector<bool>& model) const;

  friend bool operator==(const CnfFormula& a, const CnfFormula& b) {
    return a.var_count_ == b.var_count_ && a.trivially_unsat_ == b.trivially_unsat_ &&
           a.lits_ == b.lits_ && a.starts_ == b.starts_;
  }

 private:
  int var_count_ = 0;
  std::vector<Lit> lits_;
  std::vector<std::size_t> starts_;
  bool trivially_unsat_ = false;
  std::vector<Lit> scratch_;
};

struct SoftClause {
  std::vector<Lit> lits;
  std::uint64_t weight = 1;
  friend bool operator==(const SoftClause&, const SoftClause&) = default;
};

/// Weighted partial MaxSAT instance. `top()` is one more than the total soft weight.
struct WcnfFormula {
  CnfFormula hard;
  std::vector<SoftClause> soft;

  std::uint64_t top() const;
  /// Sum of weights of soft clauses falsified by `model`.
  std::uint64_t cost(const std::vector<bool>& model) const;
  friend bool operator==(const WcnfFormula&, const WcnfFormula&) = default;
};

/// sum coefficients[i] * [lits[i] true] <= bound.
struct PbConstraint {
  std::vector<Lit> lits;
  std::vector<std::int64_t> coefficients;
  std::int64_t bound = 0;
};

struct PbEncodingStats {
  int aux_vars = 0;
  std::size_t clauses = 0;
};

/// Weighted sequential counter. Auxiliary variable s(i,j) means "the prefix
/// of the first i+1 terms reaches at least j", for j in 1..bound. Appended
/// clauses admit an extension of an assignment iff the inequality holds.
///
/// Literals whose coefficient exceeds the bound become unit clauses; the
/// counter then runs over the remaining terms. At most
/// (#remaining terms - 1) * bound auxiliary variables are created.
/// Negative bound appends the empty clause; a vacuous constraint appends nothing.
PbEncodingStats encode_pb_leq(CnfFormula& formula, const PbConstraint& pb);

/// sum coefficients[i] * [lits[i] true] >= bound, via the complementary <= form.
PbEncodingStats encode_pb_geq(CnfFormula& formula, const PbConstraint& pb);

/// Upper bound on auxiliary variables created by encode_pb_leq.
std::int64_t pb_aux_var_bound(std::size_t literal_count, std::int64_t bound);

// --- serialisation ----------------------------------------------------------

enum class WcnfDialect { classic, modern };

/// `p cnf <vars> <clauses>` followed by one 0-terminated clause per line.
void write_dimacs(std::ostream& out, const CnfFormula& formula);

/// classic: `p wcnf <vars> <clauses> <top>`, hard clauses prefixed with top.
/// modern: no header, hard clauses prefixed with `h`.
void write_wcnf(std::ostream& out, const WcnfFormula& wcnf, WcnfDialect dialect = WcnfDialect::classic);

/// Reads DIMACS CNF. Comment lines (`c ...`) are skipped.
CnfFormula parse_dimacs(std::istream& in);

/// Reads either WCNF dialect; the dialect is detected from the first clause line.
WcnfFormula parse_wcnf(std::istream& in);

}  // namespace salbp3pm
