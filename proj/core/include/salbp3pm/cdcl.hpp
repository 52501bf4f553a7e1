#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "salbp3pm/solver.hpp"

namespace salbp3pm {

/// Embedded conflict-driven clause-learning solver.
///
/// Two watched literals with blocker literals, VSIDS branching with phase
/// saving, first-UIP learning with recursive minimisation, Luby restarts and
/// LBD-based learnt clause reduction. Sessions are append-only: clauses added
/// between solve() calls are simplified against the root assignment.
class CdclSolver final : public SatSession {
 public:
  explicit CdclSolver(std::uint64_t seed = 0);

  void reserve_vars(int count) override;
  void add_clause(std::span<const Lit> lits) override;
  SolveOutcome solve(const Budget& budget) override;
  int var_count() const override { return static_cast<int>(assigns_.size()) - 1; }
  std::string_view backend_name() const override { return "cdcl"; }

  bool root_conflict() const noexcept { return !ok_; }
  std::size_t learnt_count() const noexcept { return learnts_.size(); }

 private:
  using Code = std::uint32_t;  // 2 * var + sign
  using CRef = std::uint32_t;
  static constexpr CRef kNoReason = ~CRef{0};
  enum class Step { sat, unsat, restart, timeout };

  struct Clause {
    std::vector<Code> lits;
    double activity = 0.0;
    std::uint32_t lbd = 0;
    bool learnt = false;
    bool deleted = false;
  };
  struct Watcher {
    CRef cref;
    Code blocker;
  };

  static Code encode(Lit l) { return static_cast<Code>(2 * var_of(l) + (l < 0 ? 1 : 0)); }
  static std::uint32_t var(Code c) { return c >> 1; }
  static Code neg(Code c) { return c ^ 1U; }

  // 1 true, -1 false, 0 unassigned
  int value(Code c) const {
    const int v = assigns_[var(c)];
    return (c & 1U) ? -v : v;
  }

  void assign(Code c, CRef reason);
  CRef propagate();
  void analyze(CRef conflict, std::vector<Code>& learnt, int& backtrack_level, std::uint32_t& lbd);
  bool redundant(Code p, std::uint32_t abstract_levels);
  std::uint32_t abstract_level(std::uint32_t v) const { return 1U << (level_[v] & 31); }
  void cancel_until(int level);
  CRef attach(std::vector<Code> lits, bool learnt, std::uint32_t lbd);
  bool locked(CRef cref) const;
  void reduce_learnts();
  Code pick_branch();
  Step search(std::uint64_t conflict_budget, const Budget& budget, SolveStats& stats);
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  // VSIDS heap
  void heap_insert(std::uint32_t v);
  void heap_up(std::size_t pos);
  void heap_down(std::size_t pos);
  std::uint32_t heap_pop();
  bool heap_less(std::uint32_t a, std::uint32_t b) const { return activity_[a] > activity_[b]; }
  void bump_var(std::uint32_t v);
  void bump_clause(Clause& c);

  bool ok_ = true;
  std::vector<Clause> clauses_;
  std::vector<CRef> learnts_;
  std::vector<CRef> free_slots_;
  std::vector<std::vector<Watcher>> watches_;  // indexed by Code: clauses watching neg(code)

  std::vector<int> assigns_{0};
  std::vector<int> level_{0};
  std::vector<CRef> reason_{kNoReason};
  std::vector<char> polarity_{1};  // saved phase: 1 = assign false first
  std::vector<double> activity_{0.0};
  std::vector<char> seen_{0};
  std::vector<std::uint32_t> heap_;
  std::vector<int> heap_index_{-1};

  std::vector<Code> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  double var_inc_ = 1.0;
  double var_decay_ = 0.95;
  double clause_inc_ = 1.0;
  double clause_decay_ = 0.999;
  double max_learnts_ = 0.0;

  std::vector<Code> analyze_stack_;
  std::vector<Code> analyze_clear_;
  std::vector<std::uint32_t> lbd_stamp_;
  std::uint32_t lbd_counter_ = 0;

  std::mt19937_64 rng_;
  bool randomise_ = false;
  std::uint64_t total_conflicts_ = 0;
};

}  // namespace salbp3pm
