#include <gtest/gtest.h>

#include "salbp3pm/encoder.hpp"
#include "salbp3pm/error.hpp"
#include "salbp3pm/optimize.hpp"
#include "salbp3pm/oracle.hpp"
#include "salbp3pm/peak_layers.hpp"
#include "testkit.hpp"

using namespace salbp3pm;

namespace {

std::set<Solution> as_set(const std::vector<Solution>& v) { return {v.begin(), v.end()}; }

EncodeOptions unpruned() {
  EncodeOptions o;
  o.use_pruning = false;
  return o;
}

}  // namespace

TEST(Encoders, TwoTasksOneStationHaveTwoModels) {
  const auto inst = testkit::make(1, 2, {1, 1}, {3, 4});
  const auto closure = compute_closure(inst);
  for (EncoderKind kind : {EncoderKind::org, EncoderKind::cse}) {
    const auto enc = encode_base(kind, inst, closure);
    const auto models = testkit::enumerate_models(enc.formula, enc.vars, inst);
    const std::set<Solution> expected{{{0, 0}, {0, 1}}, {{0, 0}, {1, 0}}};
    EXPECT_EQ(models, expected) << to_string(kind);
  }
}

TEST(Encoders, SingleTaskIsForced) {
  const auto inst = testkit::make(1, 1, {1}, {2});
  for (EncoderKind kind : {EncoderKind::org, EncoderKind::cse}) {
    const auto enc = encode_base(kind, inst, compute_closure(inst));
    const auto models = testkit::enumerate_models(enc.formula, enc.vars, inst);
    ASSERT_EQ(models.size(), 1u);
    EXPECT_EQ(*models.begin(), (Solution{{0}, {0}}));
  }
}

TEST(Encoders, ModelSetsMatchOracleUpToSixTasks) {
  int checked = 0;
  for (const auto& e : testkit::random_corpus(120, 2000)) {
    const auto& inst = e.inst;
    const auto reference = oracle_feasible_set(inst);
    if (reference.size() > 4000) continue;
    const auto closure = compute_closure(inst);
    for (EncoderKind kind : {EncoderKind::org, EncoderKind::cse})
      for (const auto& opts : {EncodeOptions{}, unpruned()}) {
        const auto enc = encode_base(kind, inst, closure, opts);
        const auto check = testkit::compare_model_set(enc, inst, reference);
        EXPECT_TRUE(check.ok()) << to_string(kind) << " pruning " << opts.use_pruning << ": "
                                << check.detail << '\n'
                                << testkit::describe(inst);
      }
    ++checked;
  }
  EXPECT_GT(checked, 80);
}

TEST(Encoders, EnumerationAgreesWithCanonicalCheck) {
  // independent of compare_model_set: enumerate models by repeated solving
  for (const auto& e : testkit::random_corpus(40, 3000)) {
    const auto& inst = e.inst;
    const auto reference = as_set(oracle_feasible_set(inst));
    if (reference.size() > 300) continue;
    const auto closure = compute_closure(inst);
    for (EncoderKind kind : {EncoderKind::org, EncoderKind::cse}) {
      const auto enc = encode_base(kind, inst, closure);
      EXPECT_EQ(testkit::enumerate_models(enc.formula, enc.vars, inst), reference)
          << to_string(kind) << '\n'
          << testkit::describe(inst);
    }
  }
}

TEST(Encoders, CompactWithoutExtendedEdgesKeepsModels) {
  EncodeOptions direct;
  direct.use_extended_edges = false;
  for (const auto& e : testkit::random_corpus(60, 4000)) {
    if (e.inst.edges().empty()) continue;
    const auto reference = oracle_feasible_set(e.inst);
    const auto enc = encode_cse_base(e.inst, compute_closure(e.inst), direct);
    EXPECT_TRUE(testkit::compare_model_set(enc, e.inst, reference).ok());
  }
}

TEST(Encoders, ChainsMatchTheirDefinitions) {
  // R(i,k) <=> a(i) <= k and T(i,t) <=> start(i) <= t in every model found
  for (const auto& e : testkit::random_corpus(40, 5000)) {
    const auto& inst = e.inst;
    const auto enc = encode_cse_base(inst, compute_closure(inst));
    IncrementalSolver s(enc.formula, Backend::cdcl);
    for (int round = 0; round < 6; ++round) {
      const auto r = s.solve(Budget::unlimited());
      if (r.status != SolveStatus::sat) break;
      const auto sol = decode(*r.model, enc.vars, inst);
      for (int i = 0; i < inst.task_count(); ++i) {
        for (int k = 0; k < inst.station_count(); ++k)
          EXPECT_EQ((*r.model)[enc.vars.r(i, k)], sol.station[i] <= k);
        for (int t = 0; t <= inst.latest_start(i); ++t)
          EXPECT_EQ((*r.model)[enc.vars.t(i, t)], sol.start[i] <= t);
      }
      std::vector<Lit> block;
      for (int i = 0; i < inst.task_count(); ++i) block.push_back(-enc.vars.s(i, sol.start[i]));
      s.formula().add_clause(block);
    }
  }
}

TEST(Encoders, MandatoryWindowModes) {
  // forcing activity on the mandatory window keeps the optimum; the literal
  // reading forbids it and so is only satisfiable when no window exists
  for (const auto& e : testkit::random_corpus(60, 6000)) {
    const auto& inst = e.inst;
    const auto truth = oracle_solve(inst);
    DriverConfig cfg;
    cfg.method = Method::org_cb;
    cfg.encoding.sat12 = Sat12Mode::force_active;
    const auto forced = optimize(inst, cfg);
    EXPECT_EQ(forced.status == OptimizeStatus::infeasible, !truth.feasible());
    if (truth.feasible()) {
      EXPECT_EQ(forced.best_peak, *truth.optimal_peak);
    }

    bool window = false;
    for (int i = 0; i < inst.task_count(); ++i)
      window = window || inst.cycle_time() - inst.duration(i) <= inst.duration(i) - 1;
    cfg.encoding.sat12 = Sat12Mode::literal;
    const auto literal = optimize(inst, cfg);
    if (window) {
      EXPECT_EQ(literal.status, OptimizeStatus::infeasible);
    } else if (truth.feasible()) {
      EXPECT_EQ(literal.best_peak, *truth.optimal_peak);
    }
  }
}

TEST(Encoders, LiteralOutsideStartsKeepModels) {
  EncodeOptions o;
  o.sat7_literal = true;
  for (const auto& e : testkit::random_corpus(30, 7000)) {
    const auto enc = encode_org_base(e.inst, compute_closure(e.inst), o);
    std::size_t outside = 0;
    for (int i = 0; i < e.inst.task_count(); ++i) outside += e.inst.duration(i) - 1;
    EXPECT_EQ(enc.stats.clauses("start_outside"), outside);
    EXPECT_TRUE(testkit::compare_model_set(enc, e.inst, oracle_feasible_set(e.inst)).ok());
  }
}

TEST(ClauseCounts, BaselineStationAtMostOneForFourStations) {
  const auto inst = testkit::make(4, 3, {1}, {1});
  const auto enc = encode_org_base(inst, compute_closure(inst), unpruned());
  EXPECT_EQ(enc.stats.clauses("assign_amo"), 6u);
  EXPECT_EQ(enc.stats.clauses("assign_alo"), 1u);
}

TEST(ClauseCounts, CompactChainForFourStations) {
  const auto inst = testkit::make(4, 3, {1}, {1});
  const auto enc = encode_cse_base(inst, compute_closure(inst), unpruned());
  EXPECT_EQ(enc.stats.clauses("reach_first"), 2u);
  EXPECT_EQ(enc.stats.clauses("reach_chain"), 3u);
  EXPECT_EQ(enc.stats.clauses("reach_link"), 4u);
  EXPECT_EQ(enc.stats.clauses("reach_exclusive"), 3u);
  EXPECT_EQ(enc.stats.clauses("reach_step"), 3u);
  EXPECT_EQ(enc.stats.clauses("assign_alo"), 1u);
}

TEST(ClauseCounts, OneEdgeFiveStations) {
  const auto inst = testkit::make(5, 4, {1, 1}, {1, 1}, {{1, 2}});
  const auto closure = compute_closure(inst);
  EXPECT_EQ(encode_cse_base(inst, closure, unpruned()).stats.clauses("prec_station"), 4u);
  EXPECT_EQ(encode_org_base(inst, closure, unpruned()).stats.clauses("prec_station"), 10u);
}

TEST(ClauseCounts, TwoStationsEqualPrecedenceCost) {
  const auto inst = testkit::make(2, 4, {1, 1, 1}, {1, 1, 1}, {{1, 2}, {2, 3}});
  EncodeOptions o = unpruned();
  o.use_extended_edges = false;
  const auto closure = compute_closure(inst);
  EXPECT_EQ(encode_cse_base(inst, closure, o).stats.clauses("prec_station"), 2u);
  EXPECT_EQ(encode_org_base(inst, closure, o).stats.clauses("prec_station"), 2u);
}

TEST(ClauseCounts, NoEdgesNoPrecedenceClauses) {
  const auto inst = testkit::make(3, 4, {2}, {1});
  const auto closure = compute_closure(inst);
  for (EncoderKind kind : {EncoderKind::org, EncoderKind::cse}) {
    const auto enc = encode_base(kind, inst, closure);
    EXPECT_EQ(enc.stats.clauses("prec_station"), 0u);
    EXPECT_EQ(enc.stats.clauses("prec_time"), 0u);
  }
}

TEST(ClauseCounts, CompactSameStationBound) {
  // at most (shared stations) x |T^after| clauses per edge
  for (const auto& e : testkit::random_corpus(80, 8000)) {
    const auto& inst = e.inst;
    const auto closure = compute_closure(inst);
    const auto enc = encode_cse_base(inst, closure);
    std::size_t bound = 0;
    for (const auto& edge : closure.edges_star) {
      int shared = 0;
      for (int k = 0; k < inst.station_count(); ++k)
        shared += closure.station_allowed(edge.before, k) && closure.station_allowed(edge.after, k);
      bound += static_cast<std::size_t>(shared) * (inst.latest_start(edge.after) + 1);
    }
    EXPECT_LE(enc.stats.clauses("prec_time"), bound);
  }
}

TEST(ClauseCounts, FamiliesSumToTotal) {
  for (const auto& e : testkit::random_corpus(30, 9000))
    for (EncoderKind kind : {EncoderKind::org, EncoderKind::cse}) {
      const auto enc = encode_base(kind, e.inst, compute_closure(e.inst));
      EXPECT_EQ(enc.stats.total_clauses(), enc.formula.clause_count());
    }
}

TEST(ClauseCounts, InfeasibleWindowsGiveUnsatFormula) {
  const auto inst = testkit::make(1, 2, {2, 2, 2}, {1, 1, 1}, {{1, 2}, {2, 3}});
  for (EncoderKind kind : {EncoderKind::org, EncoderKind::cse}) {
    const auto enc = encode_base(kind, inst, compute_closure(inst));
    IncrementalSolver s(enc.formula, Backend::cdcl);
    EXPECT_EQ(s.solve(Budget::unlimited()).status, SolveStatus::unsat);
  }
}

TEST(VarMapTags, EveryClauseVariableResolves) {
  for (const auto& e : testkit::random_corpus(30, 9100)) {
    for (EncoderKind kind : {EncoderKind::org, EncoderKind::cse}) {
      auto enc = encode_base(kind, e.inst, compute_closure(e.inst));
      add_indicator_layer(enc.formula, enc.vars, e.inst, 1, 12);
      for (std::size_t c = 0; c < enc.formula.clause_count(); ++c)
        for (Lit l : enc.formula.clause(c)) EXPECT_TRUE(enc.vars.tag(var_of(l))) << l;
    }
  }
}

TEST(VarMapTags, Describe) {
  const auto inst = testkit::make(2, 3, {1, 2}, {1, 1});
  CnfFormula f;
  VarMap vars(f, inst, {true, false});
  EXPECT_EQ(describe(*vars.tag(vars.x(1, 0))), "X(2,1)");
  EXPECT_EQ(describe(*vars.tag(vars.s(0, 2))), "S(1,2)");
  EXPECT_EQ(vars.tag(vars.r(0, 1))->kind, VarKind::r);
  EXPECT_EQ(vars.s(1, 2), 0);  // outside T^2
  EXPECT_EQ(vars.count(VarKind::x), 4u);
  EXPECT_EQ(vars.count(VarKind::a), 6u);
}

TEST(Blocking, SingletonForbidsTheTaskEverywhere) {
  const auto inst = testkit::make(1, 3, {1}, {4});
  auto enc = encode_org_base(inst, compute_closure(inst));
  const int task[] = {0};
  EXPECT_EQ(add_blocking_clauses(enc.formula, enc.vars, task), 3u);
  IncrementalSolver s(enc.formula, Backend::cdcl);
  EXPECT_EQ(s.solve(Budget::unlimited()).status, SolveStatus::unsat);
}

TEST(Blocking, OneClausePerSlot) {
  const auto inst = testkit::worked_example();
  const auto enc = encode_org_base(inst, compute_closure(inst));
  const int set[] = {0, 1, 2};
  const auto clauses = org_blocking_clause(enc.vars, set);
  EXPECT_EQ(clauses.size(), 7u);
  for (const auto& c : clauses) EXPECT_LE(c.size(), 3u);
  EXPECT_THROW(org_blocking_clause(enc.vars, std::span<const int>{}), ArgumentError);
}

TEST(Blocking, WitnessedSetNeverReappears) {
  const auto inst = testkit::worked_example();
  auto enc = encode_cse_base(inst, compute_closure(inst));
  const int set[] = {0, 1, 2};
  add_blocking_clauses(enc.formula, enc.vars, set);
  IncrementalSolver s(enc.formula, Backend::cdcl);
  for (int round = 0; round < 20; ++round) {
    const auto r = s.solve(Budget::unlimited());
    ASSERT_EQ(r.status, SolveStatus::sat);
    const auto sol = decode(*r.model, enc.vars, inst);
    const auto profile = power_profile(inst, sol);
    for (int t = 0; t < inst.cycle_time(); ++t) {
      int active = 0;
      for (int i : set) active += sol.start[i] <= t && t < sol.start[i] + inst.duration(i);
      EXPECT_LT(active, 3);
    }
    std::vector<Lit> next;
    for (int i = 0; i < inst.task_count(); ++i) next.push_back(-enc.vars.s(i, sol.start[i]));
    s.formula().add_clause(next);
  }
}

TEST(SizeReport, CompactSmallerAtScaleAndRowsConsistent) {
  RandomInstanceParams p;
  p.tasks = 21;
  p.stations = 8;
  p.cycle_time = 26;
  p.edge_probability = 0.13;
  const auto inst = random_instance(p, 77);
  const auto closure = compute_closure(inst);
  const auto rep = cse_size_report(inst, closure);
  EXPECT_LT(rep.cse_total_clauses, rep.org_total_clauses);
  std::size_t org = 0, cse = 0;
  for (const auto& r : rep.rows) {
    org += r.org;
    cse += r.cse;
  }
  EXPECT_EQ(org, rep.org_total_clauses);
  EXPECT_EQ(cse, rep.cse_total_clauses);
}
