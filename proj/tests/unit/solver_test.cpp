#include <gtest/gtest.h>

#include <random>

#include "salbp3pm/encoder.hpp"
#include "salbp3pm/error.hpp"
#include "salbp3pm/optimize.hpp"
#include "salbp3pm/solver.hpp"
#include "testkit.hpp"

using namespace salbp3pm;

namespace {

bool truth_table_sat(const CnfFormula& f) {
  const int n = f.var_count();
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    std::vector<bool> m(n + 1);
    for (int v = 1; v <= n; ++v) m[v] = (bits >> (v - 1)) & 1u;
    if (f.satisfied_by(m)) return true;
  }
  return false;
}

}  // namespace

TEST(Session, ContradictoryUnits) {
  auto s = make_session(Backend::cdcl);
  s->reserve_vars(1);
  s->add_clause(std::vector<Lit>{1});
  s->add_clause(std::vector<Lit>{-1});
  EXPECT_EQ(s->solve(Budget::unlimited()).status, SolveStatus::unsat);
}

TEST(Session, IncrementalReuse) {
  auto s = make_session(Backend::cdcl);
  s->reserve_vars(2);
  s->add_clause(std::vector<Lit>{1, 2});
  const auto first = s->solve(Budget::unlimited());
  ASSERT_EQ(first.status, SolveStatus::sat);
  EXPECT_TRUE(first.value(1) || first.value(2));
  s->add_clause(std::vector<Lit>{-1});
  s->add_clause(std::vector<Lit>{-2});
  EXPECT_EQ(s->solve(Budget::unlimited()).status, SolveStatus::unsat);
  // once unsat, always unsat
  s->reserve_vars(3);
  s->add_clause(std::vector<Lit>{3});
  EXPECT_EQ(s->solve(Budget::unlimited()).status, SolveStatus::unsat);
}

TEST(Session, AgreesWithTruthTable) {
  std::mt19937_64 rng(21);
  int sat = 0;
  for (int round = 0; round < 300; ++round) {
    const int n = 3 + static_cast<int>(rng() % 8);
    CnfFormula f(n);
    const int clauses = static_cast<int>(n * 4.3);
    for (int c = 0; c < clauses; ++c) {
      std::vector<Lit> cl;
      for (int j = 0; j < 3; ++j) {
        const int v = 1 + static_cast<int>(rng() % n);
        cl.push_back(rng() % 2 ? v : -v);
      }
      f.add_clause(cl);
    }
    auto s = make_session(Backend::cdcl, round);
    s->reserve_vars(n);
    s->add_formula(f);
    const auto res = s->solve(Budget::unlimited());
    ASSERT_NE(res.status, SolveStatus::timeout);
    EXPECT_EQ(res.status == SolveStatus::sat, truth_table_sat(f)) << "round " << round;
    if (res.status == SolveStatus::sat) {
      ++sat;
      EXPECT_TRUE(f.satisfied_by(*res.model));
      EXPECT_EQ(res.model->size(), static_cast<std::size_t>(n + 1));
    }
  }
  EXPECT_GT(sat, 20);
  EXPECT_LT(sat, 280);
}

TEST(Session, PigeonholeIsUnsat) {
  // 6 pigeons, 5 holes: needs real conflict analysis
  const int p = 6, h = 5;
  CnfFormula f(p * h);
  auto var = [&](int i, int j) { return i * h + j + 1; };
  for (int i = 0; i < p; ++i) {
    std::vector<Lit> cl;
    for (int j = 0; j < h; ++j) cl.push_back(var(i, j));
    f.add_clause(cl);
  }
  for (int j = 0; j < h; ++j)
    for (int a = 0; a < p; ++a)
      for (int b = a + 1; b < p; ++b) f.add_clause({-var(a, j), -var(b, j)});
  auto s = make_session(Backend::cdcl);
  s->reserve_vars(f.var_count());
  s->add_formula(f);
  const auto res = s->solve(Budget::unlimited());
  EXPECT_EQ(res.status, SolveStatus::unsat);
  EXPECT_GT(res.stats.conflicts, 0u);
}

TEST(Session, ConflictLimitGivesTimeout) {
  const int p = 9, h = 8;
  CnfFormula f(p * h);
  auto var = [&](int i, int j) { return i * h + j + 1; };
  for (int i = 0; i < p; ++i) {
    std::vector<Lit> cl;
    for (int j = 0; j < h; ++j) cl.push_back(var(i, j));
    f.add_clause(cl);
  }
  for (int j = 0; j < h; ++j)
    for (int a = 0; a < p; ++a)
      for (int b = a + 1; b < p; ++b) f.add_clause({-var(a, j), -var(b, j)});
  auto s = make_session(Backend::cdcl);
  s->reserve_vars(f.var_count());
  s->add_formula(f);
  Budget b;
  b.conflict_limit = 10;
  const auto res = s->solve(b);
  EXPECT_EQ(res.status, SolveStatus::timeout);
  EXPECT_FALSE(res.model);
}

TEST(Session, ExpiredDeadlineGivesTimeout) {
  auto s = make_session(Backend::cdcl);
  s->reserve_vars(1);
  s->add_clause(std::vector<Lit>{1});
  EXPECT_EQ(s->solve(Budget::until(Clock::now() - std::chrono::seconds(1))).status,
            SolveStatus::timeout);
}

TEST(Session, DeterministicForFixedSeed) {
  const auto inst = testkit::make(2, 4, {1, 2, 1, 2}, {3, 4, 5, 6}, {{1, 2}});
  const auto enc = encode_cse_base(inst, compute_closure(inst));
  Model first;
  for (int round = 0; round < 3; ++round) {
    auto s = make_session(Backend::cdcl, 9);
    s->reserve_vars(enc.formula.var_count());
    s->add_formula(enc.formula);
    const auto res = s->solve(Budget::unlimited());
    ASSERT_EQ(res.status, SolveStatus::sat);
    if (round == 0)
      first = *res.model;
    else
      EXPECT_EQ(*res.model, first);
  }
}

TEST(Session, EncodedTinyInstanceDecodesToFeasibleSchedule) {
  const auto inst = testkit::make(1, 2, {1, 1}, {3, 4});
  const auto enc = encode_cse_base(inst, compute_closure(inst));
  IncrementalSolver solver(enc.formula, Backend::cdcl);
  const auto res = solver.solve(Budget::unlimited());
  ASSERT_EQ(res.status, SolveStatus::sat);
  const auto sol = decode(*res.model, enc.vars, inst);
  EXPECT_TRUE(validate_solution(inst, sol).ok());
}

TEST(IncrementalSolver, PushesNewClausesAndRebuilds) {
  CnfFormula f(2);
  f.add_clause({1, 2});
  IncrementalSolver s(f, Backend::cdcl);
  EXPECT_EQ(s.solve(Budget::unlimited()).status, SolveStatus::sat);
  s.formula().add_clause({-1});
  const auto r = s.solve(Budget::unlimited());
  ASSERT_EQ(r.status, SolveStatus::sat);
  EXPECT_TRUE(r.value(2));
  s.rebuild();
  s.formula().add_clause({-2});
  EXPECT_EQ(s.solve(Budget::unlimited()).status, SolveStatus::unsat);
  EXPECT_EQ(s.solve_calls(), 3u);
}

TEST(Backend, ParseAndAvailability) {
  EXPECT_EQ(parse_backend("cdcl"), Backend::cdcl);
  EXPECT_EQ(parse_backend("cadical"), Backend::cadical);
  EXPECT_THROW(parse_backend("glucose"), ArgumentError);
  EXPECT_TRUE(backend_available(Backend::cdcl));
  if (!backend_available(Backend::cadical)) {
    EXPECT_THROW(make_session(Backend::cadical), ConfigError);
  }
}
