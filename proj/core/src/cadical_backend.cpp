#include <cadical.hpp>

#include "salbp3pm/error.hpp"
#include "salbp3pm/solver.hpp"

namespace salbp3pm {

namespace {

class Terminator : public CaDiCaL::Terminator {
 public:
  explicit Terminator(const Budget& budget) : budget_(budget) {}
  bool terminate() override { return budget_.expired(); }

 private:
  const Budget& budget_;
};

class CadicalSession final : public SatSession {
 public:
  explicit CadicalSession(std::uint64_t seed) {
    solver_.set("seed", static_cast<int>(seed & 0x7fffffff));
  }

  void reserve_vars(int count) override {
    if (count > vars_) {
      solver_.reserve(count);
      vars_ = count;
    }
  }

  void add_clause(std::span<const Lit> lits) override {
    for (Lit l : lits) {
      if (var_of(l) > vars_) reserve_vars(var_of(l));
      solver_.add(l);
    }
    solver_.add(0);
  }

  SolveOutcome solve(const Budget& budget) override {
    const auto started = Clock::now();
    Terminator term(budget);
    solver_.connect_terminator(&term);
    if (budget.conflict_limit)
      solver_.limit("conflicts", static_cast<int>(*budget.conflict_limit));
    const int res = solver_.solve();
    solver_.disconnect_terminator();
    SolveOutcome out;
    if (res == 10) {
      out.status = SolveStatus::sat;
      Model model(static_cast<std::size_t>(vars_) + 1, false);
      for (int v = 1; v <= vars_; ++v) model[v] = solver_.val(v) > 0;
      out.model = std::move(model);
    } else if (res == 20) {
      out.status = SolveStatus::unsat;
    } else {
      out.status = SolveStatus::timeout;
    }
    out.stats.seconds = std::chrono::duration<double>(Clock::now() - started).count();
    return out;
  }

  int var_count() const override { return vars_; }
  std::string_view backend_name() const override { return "cadical"; }

 private:
  CaDiCaL::Solver solver_;
  int vars_ = 0;
};

}  // namespace

std::unique_ptr<SatSession> make_cadical_session(std::uint64_t seed) {
  return std::make_unique<CadicalSession>(seed);
}

}  // namespace salbp3pm
