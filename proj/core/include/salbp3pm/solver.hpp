#pragma once

// Backend-agnostic incremental SAT sessions.

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "salbp3pm/cnf.hpp"

namespace salbp3pm {

using Clock = std::chrono::steady_clock;

/// Wall-clock deadline plus an optional conflict cap. Default: unlimited.
struct Budget {
  std::optional<Clock::time_point> deadline;
  std::optional<std::uint64_t> conflict_limit;

  static Budget unlimited() { return {}; }
  static Budget seconds(double s);
  static Budget until(Clock::time_point t) { return {t, std::nullopt}; }

  bool expired() const { return deadline && Clock::now() >= *deadline; }
  /// Seconds left, or +inf without a deadline. Never negative.
  double remaining_seconds() const;
};

enum class SolveStatus { sat, unsat, timeout };

const char* to_string(SolveStatus s);

struct SolveStats {
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  double seconds = 0.0;
};

/// Total assignment indexed by variable; slot 0 is unused.
using Model = std::vector<bool>;

struct SolveOutcome {
  SolveStatus status = SolveStatus::timeout;
  std::optional<Model> model;  // present iff status == sat
  SolveStats stats;

  bool value(Lit l) const { return (*model)[var_of(l)] == (l > 0); }
};

/// An append-only incremental SAT session. Clauses persist across solve()
/// calls and learned state is retained. A session is used by one thread at a time.
class SatSession {
 public:
  virtual ~SatSession() = default;

  /// Makes variables 1..count addressable even if no clause mentions them yet.
  virtual void reserve_vars(int count) = 0;
  virtual void add_clause(std::span<const Lit> lits) = 0;
  virtual SolveOutcome solve(const Budget& budget) = 0;
  virtual int var_count() const = 0;
  virtual std::string_view backend_name() const = 0;

  /// Adds clauses [from, clause_count()) of `formula`.
  void add_formula(const CnfFormula& formula, std::size_t from = 0);
};

enum class Backend { cdcl, cadical };

const char* to_string(Backend b);
Backend parse_backend(std::string_view name);
bool backend_available(Backend b);

/// Throws ConfigError when the backend was not compiled in.
std::unique_ptr<SatSession> make_session(Backend backend, std::uint64_t seed = 0);

/// A formula under construction mirrored into an incremental session. New
/// clauses appended to formula() are pushed before every solve.
class IncrementalSolver {
 public:
  IncrementalSolver(CnfFormula formula, Backend backend, std::uint64_t seed = 0);

  CnfFormula& formula() noexcept { return formula_; }
  const CnfFormula& formula() const noexcept { return formula_; }

  SolveOutcome solve(const Budget& budget);

  /// Discards learned state and reloads every clause into a fresh session.
  void rebuild();

  std::size_t solve_calls() const noexcept { return solve_calls_; }

 private:
  void sync();

  CnfFormula formula_;
  Backend backend_;
  std::uint64_t seed_;
  std::unique_ptr<SatSession> session_;
  std::size_t pushed_ = 0;
  std::size_t solve_calls_ = 0;
};

}  // namespace salbp3pm
