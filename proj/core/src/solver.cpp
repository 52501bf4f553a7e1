#include "salbp3pm/solver.hpp"

#include <limits>

#include "salbp3pm/cdcl.hpp"
#include "salbp3pm/error.hpp"

namespace salbp3pm {

#ifdef SALBP3PM_HAVE_CADICAL
std::unique_ptr<SatSession> make_cadical_session(std::uint64_t seed);
#endif

Budget Budget::seconds(double s) {
  Budget b;
  if (s < 0) s = 0;
  b.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(s));
  return b;
}

double Budget::remaining_seconds() const {
  if (!deadline) return std::numeric_limits<double>::infinity();
  const double left = std::chrono::duration<double>(*deadline - Clock::now()).count();
  return left > 0 ? left : 0.0;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::sat: return "sat";
    case SolveStatus::unsat: return "unsat";
    case SolveStatus::timeout: return "timeout";
  }
  return "unknown";
}

void SatSession::add_formula(const CnfFormula& formula, std::size_t from) {
  reserve_vars(formula.var_count());
  for (std::size_t i = from; i < formula.clause_count(); ++i) add_clause(formula.clause(i));
}

const char* to_string(Backend b) {
  switch (b) {
    case Backend::cdcl: return "cdcl";
    case Backend::cadical: return "cadical";
  }
  return "unknown";
}

Backend parse_backend(std::string_view name) {
  if (name == "cdcl") return Backend::cdcl;
  if (name == "cadical") return Backend::cadical;
  throw ArgumentError("unknown backend '" + std::string(name) + "'");
}

bool backend_available(Backend b) {
#ifdef SALBP3PM_HAVE_CADICAL
  (void)b;
  return true;
#else
  return b == Backend::cdcl;
#endif
}

std::unique_ptr<SatSession> make_session(Backend backend, std::uint64_t seed) {
  switch (backend) {
    case Backend::cdcl: return std::make_unique<CdclSolver>(seed);
    case Backend::cadical:
#ifdef SALBP3PM_HAVE_CADICAL
      return make_cadical_session(seed);
#else
      throw ConfigError("this build has no CaDiCaL backend");
#endif
  }
  throw ArgumentError("unknown backend");
}

IncrementalSolver::IncrementalSolver(CnfFormula formula, Backend backend, std::uint64_t seed)
    : formula_(std::move(formula)), backend_(backend), seed_(seed) {
  session_ = make_session(backend_, seed_);
}

void IncrementalSolver::sync() {
  session_->reserve_vars(formula_.var_count());
  session_->add_formula(formula_, pushed_);
  pushed_ = formula_.clause_count();
}

SolveOutcome IncrementalSolver::solve(const Budget& budget) {
  sync();
  ++solve_calls_;
  return session_->solve(budget);
}

void IncrementalSolver::rebuild() {
  session_ = make_session(backend_, seed_);
  pushed_ = 0;
}

}  // namespace salbp3pm
