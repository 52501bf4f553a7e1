#include <gtest/gtest.h>

#include <cmath>

#include "salbp3pm/encoder.hpp"
#include "salbp3pm/error.hpp"
#include "salbp3pm/optimize.hpp"
#include "salbp3pm/oracle.hpp"
#include "testkit.hpp"

using namespace salbp3pm;

namespace {

DriverConfig with(Method m) {
  DriverConfig c;
  c.method = m;
  c.timeout = 30.0;
  return c;
}

void expect_sane(const Instance& inst, const OptimizeResult& r) {
  if (!r.best_solution) return;
  EXPECT_TRUE(validate_solution(inst, *r.best_solution).ok());
  EXPECT_EQ(power_profile(inst, *r.best_solution).peak, r.best_peak);
  Power last = 0;
  bool first = true;
  for (const auto& e : r.log) {
    if (!e.sat || e.phase == "init") continue;
    if (!first && r.method != Method::org_cb && r.method != Method::cse_cb) {
      EXPECT_LT(e.peak, last);
    }
    last = e.peak;
    first = false;
  }
}

}  // namespace

class TinyDrivers : public ::testing::TestWithParam<Method> {};

TEST_P(TinyDrivers, MatchKnownOptima) {
  for (const auto& tiny : testkit::tiny_instances()) {
    const auto r = optimize(tiny.inst, with(GetParam()));
    EXPECT_EQ(r.status, OptimizeStatus::optimal) << tiny.inst.name();
    EXPECT_EQ(r.best_peak, tiny.optimum) << tiny.inst.name();
    EXPECT_TRUE(r.proof_of_optimality);
    expect_sane(tiny.inst, r);
  }
}

TEST_P(TinyDrivers, AgreeWithOracleWithOneInitRound) {
  for (const auto& e : testkit::random_corpus(60, 11000)) {
    auto cfg = with(GetParam());
    cfg.init_iterations = 1;
    const auto r = optimize(e.inst, cfg);
    const auto truth = oracle_solve(e.inst);
    if (!truth.feasible()) {
      EXPECT_EQ(r.status, OptimizeStatus::infeasible);
      continue;
    }
    ASSERT_EQ(r.status, OptimizeStatus::optimal) << testkit::describe(e.inst);
    EXPECT_EQ(r.best_peak, *truth.optimal_peak) << testkit::describe(e.inst);
    expect_sane(e.inst, r);
  }
}

TEST_P(TinyDrivers, InfeasibleInstance) {
  const auto inst = testkit::make(1, 2, {2, 2, 2}, {1, 2, 3}, {{1, 2}, {2, 3}});
  const auto r = optimize(inst, with(GetParam()));
  EXPECT_EQ(r.status, OptimizeStatus::infeasible);
  EXPECT_FALSE(r.best_solution);
  EXPECT_FALSE(r.proof_of_optimality);
}

TEST_P(TinyDrivers, ZeroBudgetTimesOut) {
  auto cfg = with(GetParam());
  cfg.timeout = 0.0;
  const auto r = optimize(testkit::worked_example(), cfg);
  EXPECT_EQ(r.status, OptimizeStatus::timeout);
  EXPECT_FALSE(r.proof_of_optimality);
}

INSTANTIATE_TEST_SUITE_P(AllMethods, TinyDrivers, ::testing::ValuesIn(kAllMethods),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Drivers, WorkedExampleAllAgree) {
  const auto inst = testkit::worked_example();
  const auto truth = oracle_solve(inst);
  for (Method m : kAllMethods) {
    const auto r = optimize(inst, with(m));
    EXPECT_EQ(r.status, OptimizeStatus::optimal) << to_string(m);
    EXPECT_EQ(r.best_peak, *truth.optimal_peak) << to_string(m);
  }
}

TEST(Drivers, VariantsAgree) {
  for (const auto& e : testkit::random_corpus(50, 12000)) {
    const auto truth = oracle_solve(e.inst);
    if (!truth.feasible()) continue;
    std::vector<DriverConfig> configs;
    auto a = with(Method::cse_cb);
    a.blocking = BlockingScope::minimized;
    configs.push_back(a);
    auto b = with(Method::org_cb);
    b.persistent_session = false;
    configs.push_back(b);
    auto c = with(Method::cse_inc);
    c.encoder = EncoderKind::org;
    c.init_iterations = 1;
    configs.push_back(c);
    auto d = with(Method::cse_pb);
    d.encoding.use_pruning = false;
    configs.push_back(d);
    auto f = with(Method::cse_maxsat);
    f.init_iterations = 1;
    f.encoder = EncoderKind::org;
    configs.push_back(f);
    auto g = with(Method::cse_inc);
    g.seed = 99;
    g.init_iterations = 2;
    configs.push_back(g);
    for (const auto& cfg : configs) {
      const auto r = optimize(e.inst, cfg);
      EXPECT_EQ(r.status, OptimizeStatus::optimal);
      EXPECT_EQ(r.best_peak, *truth.optimal_peak) << to_string(cfg.method);
    }
  }
}

TEST(Drivers, ExternalMaxSatThroughCli) {
#ifdef SALBP3PM_CLI_PATH
  for (const auto& e : testkit::random_corpus(8, 13000)) {
    const auto truth = oracle_solve(e.inst);
    if (!truth.feasible()) continue;
    auto cfg = with(Method::cse_maxsat);
    cfg.init_iterations = 1;
    cfg.maxsat_command = std::string(SALBP3PM_CLI_PATH) + " maxsat {wcnf}";
    const auto r = optimize(e.inst, cfg);
    EXPECT_EQ(r.status, OptimizeStatus::optimal);
    EXPECT_EQ(r.best_peak, *truth.optimal_peak);
  }
#else
  GTEST_SKIP() << "command-line tool not built";
#endif
}

TEST(Drivers, ExternalMaxSatTimeoutFallsBackToInitSolution) {
  // a schedule from initialisation survives a solver that never answers
  const auto inst = testkit::worked_example();
  auto cfg = with(Method::cse_maxsat);
  cfg.init_iterations = 1;
  cfg.timeout = 1.0;
  cfg.maxsat_command = "sleep 30 # {wcnf}";
  const auto r = optimize(inst, cfg);
  EXPECT_EQ(r.status, OptimizeStatus::feasible_only);
  ASSERT_TRUE(r.best_solution);
  EXPECT_TRUE(validate_solution(inst, *r.best_solution).ok());
}

TEST(Drivers, ExternalMaxSatGarbageIsAnError) {
  auto cfg = with(Method::cse_maxsat);
  cfg.init_iterations = 1;
  cfg.maxsat_command = "echo oops {wcnf}";
  EXPECT_THROW(optimize(testkit::worked_example(), cfg), ProtocolError);
}

TEST(Drivers, UnlimitedTimeout) {
  auto cfg = with(Method::cse_inc);
  cfg.timeout = std::numeric_limits<double>::infinity();
  EXPECT_EQ(optimize(testkit::worked_example(), cfg).status, OptimizeStatus::optimal);
}

TEST(Drivers, MethodNames) {
  EXPECT_EQ(parse_method("cse-inc"), Method::cse_inc);
  EXPECT_EQ(parse_method("org_cb"), Method::org_cb);
  EXPECT_THROW(parse_method("cse-xyz"), ArgumentError);
  EXPECT_EQ(default_encoder(Method::org_cb), EncoderKind::org);
  EXPECT_EQ(default_encoder(Method::cse_pb), EncoderKind::cse);
  EXPECT_EQ(parse_blocking("minimized"), BlockingScope::minimized);
}

TEST(InitUpperBound, ConstantObjective) {
  const auto inst = testkit::make(2, 3, {1}, {6});
  auto enc = encode_cse_base(inst, compute_closure(inst));
  IncrementalSolver s(enc.formula, Backend::cdcl);
  const auto r = init_upper_bound(s, enc.vars, inst, 10, BlockingScope::witnessed, Budget{});
  EXPECT_EQ(r.ub_tight, 6);
  EXPECT_TRUE(r.proved_optimal);
  EXPECT_EQ(r.rounds, 2);
}

TEST(InitUpperBound, NeverBelowOptimumNorAboveFirstPeak) {
  for (const auto& e : testkit::random_corpus(60, 14000)) {
    const auto truth = oracle_solve(e.inst);
    auto enc = encode_cse_base(e.inst, compute_closure(e.inst));
    IncrementalSolver s(enc.formula, Backend::cdcl);
    std::vector<IterationLog> log;
    const auto r = init_upper_bound(s, enc.vars, e.inst, 10, BlockingScope::witnessed, Budget{}, &log);
    if (!truth.feasible()) {
      EXPECT_TRUE(r.infeasible);
      continue;
    }
    EXPECT_GE(r.ub_tight, *truth.optimal_peak);
    ASSERT_FALSE(log.empty());
    EXPECT_LE(r.ub_tight, log.front().peak);
    EXPECT_LE(log.front().peak, analytic_bounds(e.inst).ub_analytic);
    if (r.proved_optimal) {
      EXPECT_EQ(r.ub_tight, *truth.optimal_peak);
    }
  }
}

TEST(InitUpperBound, RejectsZeroIterations) {
  const auto inst = testkit::make(1, 1, {1}, {1});
  auto enc = encode_cse_base(inst, compute_closure(inst));
  IncrementalSolver s(enc.formula, Backend::cdcl);
  EXPECT_THROW(init_upper_bound(s, enc.vars, inst, 0, BlockingScope::witnessed, Budget{}),
               ArgumentError);
}

TEST(Decode, ForcedSingleTask) {
  const auto inst = testkit::make(1, 1, {1}, {3});
  const auto enc = encode_org_base(inst, compute_closure(inst));
  IncrementalSolver s(enc.formula, Backend::cdcl);
  const auto r = s.solve(Budget{});
  ASSERT_EQ(r.status, SolveStatus::sat);
  EXPECT_EQ(decode(*r.model, enc.vars, inst), (Solution{{0}, {0}}));
}

TEST(Decode, AmbiguousModelIsEncodingBug) {
  const auto inst = testkit::make(2, 2, {1}, {3});
  const auto enc = encode_org_base(inst, compute_closure(inst));
  Model m(enc.formula.var_count() + 1, false);
  m[enc.vars.x(0, 0)] = m[enc.vars.x(0, 1)] = true;
  m[enc.vars.s(0, 0)] = true;
  EXPECT_THROW(decode(m, enc.vars, inst), EncodingBug);
  Model empty(enc.formula.var_count() + 1, false);
  EXPECT_THROW(decode(empty, enc.vars, inst), EncodingBug);
}

TEST(MinimizeBlockingSet, DropsLightTasksFirst) {
  const auto inst = testkit::worked_example();  // w = 5 3 6 4 5
  const auto set = minimize_blocking_set(inst, {0, 1, 2}, 11);
  EXPECT_EQ(set, (std::vector<int>{0, 2}));
  Power w = 0;
  for (int i : set) w += inst.power(i);
  EXPECT_GE(w, 11);
}
