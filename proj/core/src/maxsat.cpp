#include "salbp3pm/maxsat.hpp"

#include <sstream>

namespace salbp3pm {

const char* to_string(MaxSatStatus s) {
  switch (s) {
    case MaxSatStatus::optimum: return "optimum";
    case MaxSatStatus::satisfiable: return "satisfiable";
    case MaxSatStatus::unsat: return "unsat";
    case MaxSatStatus::timeout: return "timeout";
  }
  return "unknown";
}

MaxSatOutcome solve_maxsat(const WcnfFormula& wcnf, const Budget& budget, Backend backend,
                           std::uint64_t seed) {
  const auto started = Clock::now();
  CnfFormula work = wcnf.hard;
  // violated[i] is true whenever soft clause i may be falsified
  PbConstraint cost;
  for (const auto& soft : wcnf.soft)
    for (Lit l : soft.lits) work.reserve_vars(var_of(l));
  const int original_vars = work.var_count();
  for (const auto& soft : wcnf.soft) {
    Lit violated;
    if (soft.lits.size() == 1) {
      violated = -soft.lits[0];
    } else {
      violated = work.new_var();
      std::vector<Lit> relaxed = soft.lits;
      relaxed.push_back(violated);
      work.add_clause(relaxed);
    }
    cost.lits.push_back(violated);
    cost.coefficients.push_back(static_cast<std::int64_t>(soft.weight));
  }

  IncrementalSolver solver(std::move(work), backend, seed);
  MaxSatOutcome out;
  auto finish = [&](MaxSatStatus s) {
    out.status = s;
    out.seconds = std::chrono::duration<double>(Clock::now() - started).count();
    return out;
  };

  for (;;) {
    const auto res = solver.solve(budget);
    if (res.status == SolveStatus::timeout)
      return finish(out.model ? MaxSatStatus::satisfiable : MaxSatStatus::timeout);
    if (res.status == SolveStatus::unsat)
      return finish(out.model ? MaxSatStatus::optimum : MaxSatStatus::unsat);
    Model model(res.model->begin(), res.model->begin() + original_vars + 1);
    const auto c = wcnf.cost(model);
    out.model = std::move(model);
    out.cost = c;
    if (c == 0) return finish(MaxSatStatus::optimum);
    cost.bound = static_cast<std::int64_t>(c) - 1;
    encode_pb_leq(solver.formula(), cost);
  }
}

std::string format_maxsat_output(const MaxSatOutcome& outcome, int var_count) {
  std::ostringstream os;
  switch (outcome.status) {
    case MaxSatStatus::optimum: os << "s OPTIMUM FOUND\n"; break;
    case MaxSatStatus::satisfiable: os << "s SATISFIABLE\n"; break;
    case MaxSatStatus::unsat: os << "s UNSATISFIABLE\n"; break;
    case MaxSatStatus::timeout: os << "s UNKNOWN\n"; break;
  }
  if (outcome.cost) os << "o " << *outcome.cost << '\n';
  if (outcome.model) {
    os << 'v';
    for (int v = 1; v <= var_count; ++v) os << ' ' << ((*outcome.model)[v] ? v : -v);
    os << '\n';
  }
  return os.str();
}

}  // namespace salbp3pm
