#include "salbp3pm/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "salbp3pm/error.hpp"
#include "salbp3pm/maxsat.hpp"
#include "salbp3pm/peak_layers.hpp"
#include "salbp3pm/precedence.hpp"

namespace salbp3pm {

const char* to_string(Method m) {
  switch (m) {
    case Method::org_cb: return "org_cb";
    case Method::cse_cb: return "cse_cb";
    case Method::cse_pb: return "cse_pb";
    case Method::cse_maxsat: return "cse_maxsat";
    case Method::cse_inc: return "cse_inc";
  }
  return "unknown";
}

const char* to_string(BlockingScope s) {
  return s == BlockingScope::witnessed ? "witnessed" : "minimized";
}

const char* to_string(OptimizeStatus s) {
  switch (s) {
    case OptimizeStatus::optimal: return "optimal";
    case OptimizeStatus::feasible_only: return "feasible_only";
    case OptimizeStatus::infeasible: return "infeasible";
    case OptimizeStatus::timeout: return "timeout";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  for (Method m : kAllMethods)
    if (key == to_string(m)) return m;
  throw ArgumentError("unknown method '" + std::string(name) + "'");
}

BlockingScope parse_blocking(std::string_view name) {
  if (name == "witnessed") return BlockingScope::witnessed;
  if (name == "minimized") return BlockingScope::minimized;
  throw ArgumentError("unknown blocking scope '" + std::string(name) + "'");
}

EncoderKind default_encoder(Method m) { return m == Method::org_cb ? EncoderKind::org : EncoderKind::cse; }

Solution decode(const Model& model, const VarMap& vars, const Instance& inst) {
  const int n = inst.task_count();
  Solution sol;
  sol.station.assign(n, -1);
  sol.start.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < inst.station_count(); ++k) {
      if (!model[vars.x(i, k)]) continue;
      if (sol.station[i] >= 0)
        throw EncodingBug("task " + std::to_string(i + 1) + " assigned to several stations");
      sol.station[i] = k;
    }
    for (int t = 0; t < inst.cycle_time(); ++t) {
      const Var s = vars.s(i, t);
      if (!s || !model[s]) continue;
      if (sol.start[i] >= 0)
        throw EncodingBug("task " + std::to_string(i + 1) + " has several start times");
      sol.start[i] = t;
    }
    if (sol.station[i] < 0) throw EncodingBug("task " + std::to_string(i + 1) + " has no station");
    if (sol.start[i] < 0) throw EncodingBug("task " + std::to_string(i + 1) + " has no start time");
  }
  return sol;
}

std::vector<int> minimize_blocking_set(const Instance& inst, std::vector<int> tasks, Power threshold) {
  Power weight = 0;
  for (int i : tasks) weight += inst.power(i);
  std::vector<int> order = tasks;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return inst.power(a) < inst.power(b); });
  std::set<int> kept(tasks.begin(), tasks.end());
  for (int i : order) {
    if (weight - inst.power(i) >= threshold) {
      weight -= inst.power(i);
      kept.erase(i);
    }
  }
  return {kept.begin(), kept.end()};
}

namespace {

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Budget make_budget(double timeout) {
  if (!std::isfinite(timeout)) return Budget::unlimited();
  return Budget::seconds(timeout);
}

struct Found {
  Solution solution;
  PowerProfile profile;
};

Found certify(const Model& model, const VarMap& vars, const Instance& inst) {
  Found f{decode(model, vars, inst), {}};
  const auto report = validate_solution(inst, f.solution);
  if (!report.ok()) throw EncodingBug("decoded schedule is infeasible: " + report.summary());
  f.profile = power_profile(inst, f.solution);
  return f;
}

// Task sets active at slots whose load reaches `threshold`, optionally shrunk.
std::vector<std::vector<int>> blocking_sets(const Instance& inst, const Found& found,
                                            Power threshold, bool peak_only, BlockingScope scope) {
  std::set<std::vector<int>> sets;
  for (int t = 0; t < inst.cycle_time(); ++t) {
    const Power load = found.profile.load[t];
    if (peak_only ? load != found.profile.peak : load < threshold) continue;
    std::vector<int> active;
    for (int i = 0; i < inst.task_count(); ++i)
      if (found.solution.start[i] <= t && t < found.solution.start[i] + inst.duration(i))
        active.push_back(i);
    if (scope == BlockingScope::minimized) active = minimize_blocking_set(inst, active, threshold);
    sets.insert(std::move(active));
  }
  return {sets.begin(), sets.end()};
}

std::size_t block(CnfFormula& formula, const VarMap& vars, const std::vector<std::vector<int>>& sets) {
  std::size_t added = 0;
  for (const auto& s : sets) added += add_blocking_clauses(formula, vars, s);
  return added;
}

std::size_t add_slot_caps(CnfFormula& formula, const VarMap& vars, const Instance& inst, Power cap) {
  const auto before = formula.clause_count();
  for (int t = 0; t < inst.cycle_time(); ++t) {
    auto pb = activity_terms(inst, vars, t);
    pb.bound = cap;
    encode_pb_leq(formula, pb);
  }
  return formula.clause_count() - before;
}

class Run {
 public:
  Run(const Instance& inst, const DriverConfig& config)
      : inst_(inst), config_(config), started_(Clock::now()), budget_(make_budget(config.timeout)) {
    result_.method = config.method;
    result_.encoder = config.encoder_kind();
    result_.bounds = analytic_bounds(inst);
    const auto closure = compute_closure(inst);
    enc_ = encode_base(result_.encoder, inst, closure, config.encoding);
  }

  const Instance& inst() const { return inst_; }
  const DriverConfig& config() const { return config_; }
  const Budget& budget() const { return budget_; }
  Encoding& enc() { return enc_; }
  OptimizeResult& result() { return result_; }
  Clock::time_point started() const { return started_; }

  void log(IterationLog entry) {
    entry.seconds = since(started_);
    result_.log.push_back(entry);
  }

  bool improve(const Found& f) {
    if (result_.best_solution && f.profile.peak >= result_.best_peak) return false;
    result_.best_solution = f.solution;
    result_.best_peak = f.profile.peak;
    return true;
  }

  OptimizeResult finish(OptimizeStatus status, const CnfFormula& final_formula) {
    result_.status = status;
    result_.proof_of_optimality = status == OptimizeStatus::optimal;
    result_.iterations = static_cast<int>(result_.log.size());
    result_.variables = final_formula.var_count();
    result_.clauses = final_formula.clause_count();
    result_.seconds = since(started_);
    if (result_.best_solution) {
      const auto peak = power_profile(inst_, *result_.best_solution).peak;
      if (peak != result_.best_peak) throw EncodingBug("best peak does not match its schedule");
      if (!result_.bounds.ub_tight || *result_.bounds.ub_tight > peak) result_.bounds.ub_tight = peak;
    }
    return result_;
  }

  // Status after running out of time or getting stuck with a solution in hand.
  OptimizeStatus unfinished() const {
    return result_.best_solution ? OptimizeStatus::feasible_only : OptimizeStatus::timeout;
  }

 private:
  const Instance& inst_;
  DriverConfig config_;
  Clock::time_point started_;
  Budget budget_;
  Encoding enc_;
  OptimizeResult result_;
};

}  // namespace

InitResult init_upper_bound(IncrementalSolver& solver, const VarMap& vars, const Instance& inst,
                            int iterations, BlockingScope scope, const Budget& budget,
                            std::vector<IterationLog>* log) {
  if (iterations < 1) throw ArgumentError("initialisation needs at least one iteration");
  const auto started = Clock::now();
  InitResult out;
  for (int round = 0; round < iterations; ++round) {
    const auto res = solver.solve(budget);
    ++out.rounds;
    if (res.status == SolveStatus::timeout) {
      out.timed_out = true;
      break;
    }
    if (res.status == SolveStatus::unsat) {
      if (out.best)
        out.proved_optimal = true;
      else
        out.infeasible = true;
      if (log) log->push_back({"init", 0, since(started), 0, false, 0, 0, 0});
      break;
    }
    const auto found = certify(*res.model, vars, inst);
    if (!out.best || found.profile.peak < out.ub_tight) {
      out.best = found.solution;
      out.ub_tight = found.profile.peak;
    }
    const auto sets = blocking_sets(inst, found, found.profile.peak, true, scope);
    const auto added = block(solver.formula(), vars, sets);
    if (log) log->push_back({"init", found.profile.peak, since(started), added, true, 0, 0, 0});
  }
  return out;
}

OptimizeResult optimize_clause_blocking(const Instance& inst, const DriverConfig& config) {
  Run run(inst, config);
  IncrementalSolver solver(run.enc().formula, config.backend, config.seed);
  const VarMap& vars = run.enc().vars;
  for (;;) {
    const auto res = solver.solve(run.budget());
    if (res.status == SolveStatus::timeout) return run.finish(run.unfinished(), solver.formula());
    if (res.status == SolveStatus::unsat) {
      run.log({"search", 0, 0, 0, false, 0, 0, 0});
      return run.finish(run.result().best_solution ? OptimizeStatus::optimal
                                                   : OptimizeStatus::infeasible,
                        solver.formula());
    }
    const auto found = certify(*res.model, vars, inst);
    run.improve(found);
    const auto sets =
        blocking_sets(inst, found, run.result().best_peak, false, config.blocking);
    const auto added = block(solver.formula(), vars, sets);
    run.log({"search", found.profile.peak, 0, added, true, 0, 0, 0});
    if (!config.persistent_session) solver.rebuild();
  }
}

OptimizeResult optimize_pb(const Instance& inst, const DriverConfig& config) {
  Run run(inst, config);
  const VarMap& vars = run.enc().vars;
  IncrementalSolver solver(run.enc().formula, config.backend, config.seed);
  for (;;) {
    const auto res = solver.solve(run.budget());
    if (res.status == SolveStatus::timeout) return run.finish(run.unfinished(), solver.formula());
    if (res.status == SolveStatus::unsat) {
      run.log({"search", 0, 0, 0, false, 0, 0, 0});
      return run.finish(run.result().best_solution ? OptimizeStatus::optimal
                                                   : OptimizeStatus::infeasible,
                        solver.formula());
    }
    const auto found = certify(*res.model, vars, inst);
    if (run.result().best_solution && found.profile.peak >= run.result().best_peak)
      throw EncodingBug("peak bound was not respected");
    run.improve(found);
    CnfFormula next = run.enc().formula;
    const auto added = add_slot_caps(next, vars, inst, run.result().best_peak - 1);
    run.log({"search", found.profile.peak, 0, added, true, 0, 0, 0});
    solver = IncrementalSolver(std::move(next), config.backend, config.seed);
  }
}

OptimizeResult optimize_incremental(const Instance& inst, const DriverConfig& config) {
  Run run(inst, config);
  VarMap& vars = run.enc().vars;
  IncrementalSolver solver(run.enc().formula, config.backend, config.seed);
  auto& result = run.result();

  const auto init = init_upper_bound(solver, vars, inst, config.init_iterations, config.blocking,
                                     run.budget(), &result.log);
  if (init.best) run.improve({*init.best, power_profile(inst, *init.best)});
  if (init.infeasible) return run.finish(OptimizeStatus::infeasible, solver.formula());
  if (init.proved_optimal) return run.finish(OptimizeStatus::optimal, solver.formula());
  if (init.timed_out) return run.finish(run.unfinished(), solver.formula());

  const auto& w = inst.powers();
  const Power lb = *std::max_element(w.begin(), w.end());
  const Power top = result.best_peak;
  const auto before = solver.formula().clause_count();
  const int indicators = add_indicator_layer(solver.formula(), vars, inst, lb, top);
  const auto layer_clauses = solver.formula().clause_count() - before;

  Power current = top;
  std::size_t added = layer_clauses;
  for (;;) {
    const Power target = current - 1;
    if (const Var u = vars.u(static_cast<int>(target)); indicators > 0 && target > lb && u) {
      solver.formula().add_clause({-u});
      added += 1;
    } else {
      // below the indicator range: cap every slot directly
      added += add_slot_caps(solver.formula(), vars, inst, target);
    }
    const auto res = solver.solve(run.budget());
    if (res.status == SolveStatus::timeout) return run.finish(run.unfinished(), solver.formula());
    if (res.status == SolveStatus::unsat) {
      run.log({"search", 0, 0, added, false, indicators, 0, indicators > 0 ? top : 0});
      return run.finish(OptimizeStatus::optimal, solver.formula());
    }
    const auto found = certify(*res.model, vars, inst);
    if (found.profile.peak > target) throw EncodingBug("indicator refinement was not respected");
    int false_count = 0;
    for (Power j = lb + 1; j <= top - 1; ++j)
      if (!(*res.model)[vars.u(static_cast<int>(j))]) ++false_count;
    run.improve(found);
    run.log({"search", found.profile.peak, 0, added, true, indicators, false_count,
             indicators > 0 ? top : 0});
    added = 0;
    current = found.profile.peak;
  }
}

OptimizeResult optimize_maxsat(const Instance& inst, const DriverConfig& config) {
  Run run(inst, config);
  const VarMap& vars = run.enc().vars;
  IncrementalSolver solver(run.enc().formula, config.backend, config.seed);
  auto& result = run.result();

  const auto init = init_upper_bound(solver, vars, inst, config.init_iterations, config.blocking,
                                     run.budget(), &result.log);
  if (init.best) run.improve({*init.best, power_profile(inst, *init.best)});
  if (init.infeasible) return run.finish(OptimizeStatus::infeasible, solver.formula());
  if (init.proved_optimal) return run.finish(OptimizeStatus::optimal, solver.formula());
  if (init.timed_out) return run.finish(run.unfinished(), solver.formula());

  const auto& w = inst.powers();
  const Power lb = *std::max_element(w.begin(), w.end());
  VarMap layer_vars = vars;
  const int bits = binary_bits_for_peak(result.best_peak);
  const auto wcnf = peak_layer_binary_bits(run.enc().formula, layer_vars, inst, bits, lb);
  const auto added = wcnf.hard.clause_count() - run.enc().formula.clause_count();

  const auto outcome = config.maxsat_command.empty()
                           ? solve_maxsat(wcnf, run.budget(), config.backend, config.seed)
                           : run_external_maxsat(wcnf, config.maxsat_command, run.budget());
  if (outcome.status == MaxSatStatus::unsat)
    throw BackendError("MaxSAT solver reported UNSAT although a schedule is known");
  if (outcome.model) {
    const auto found = certify(*outcome.model, layer_vars, inst);
    const Power bit_peak = decode_binary_peak(*outcome.model, layer_vars);
    if (outcome.status == MaxSatStatus::optimum && bit_peak != found.profile.peak)
      throw EncodingBug("binary peak " + std::to_string(bit_peak) + " differs from schedule peak " +
                        std::to_string(found.profile.peak));
    run.improve(found);
    run.log({"maxsat", found.profile.peak, 0, added, true, 0, 0, 0});
  } else {
    run.log({"maxsat", 0, 0, added, false, 0, 0, 0});
  }
  // an optimum without a model only certifies the schedule we already hold
  const bool certified = outcome.status == MaxSatStatus::optimum &&
                         (outcome.model || (outcome.cost && static_cast<Power>(*outcome.cost) ==
                                                                result.best_peak));
  if (certified) return run.finish(OptimizeStatus::optimal, wcnf.hard);
  return run.finish(run.unfinished(), wcnf.hard);
}

OptimizeResult optimize(const Instance& inst, const DriverConfig& config) {
  switch (config.method) {
    case Method::org_cb:
    case Method::cse_cb: return optimize_clause_blocking(inst, config);
    case Method::cse_pb: return optimize_pb(inst, config);
    case Method::cse_maxsat: return optimize_maxsat(inst, config);
    case Method::cse_inc: return optimize_incremental(inst, config);
  }
  throw ArgumentError("unknown method");
}

}  // namespace salbp3pm
