#include <gtest/gtest.h>

#include <random>

#include "salbp3pm/error.hpp"
#include "salbp3pm/oracle.hpp"
#include "salbp3pm/precedence.hpp"
#include "testkit.hpp"

using namespace salbp3pm;

TEST(Closure, ThreeChain) {
  const auto star = transitive_closure(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(star, (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(Closure, EmptyGraph) { EXPECT_TRUE(transitive_closure(4, {}).empty()); }

TEST(Closure, CycleIsRejected) {
  EXPECT_THROW(transitive_closure(3, {{0, 1}, {1, 2}, {2, 0}}), ValidationError);
}

TEST(Closure, MatchesWarshallOnRandomDags) {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 50; ++round) {
    const int n = 12;
    std::vector<Edge> edges;
    while (edges.size() < 20) {
      int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (std::find(edges.begin(), edges.end(), Edge{a, b}) == edges.end()) edges.push_back({a, b});
    }
    const auto star = transitive_closure(n, edges);
    EXPECT_EQ(star, testkit::warshall(n, edges));
    EXPECT_EQ(transitive_closure(n, star), star);
    EXPECT_LE(star.size(), static_cast<std::size_t>(n * (n - 1) / 2));
  }
}

TEST(StationWindows, ChainFillsOneStationEach) {
  const auto inst = testkit::make(3, 2, {2, 2, 2}, {1, 1, 1}, {{1, 2}, {2, 3}});
  const auto c = compute_closure(inst);
  EXPECT_EQ(c.first, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(c.last, (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(c.windows_feasible);
}

TEST(StationWindows, NoEdgesMeansFullRange) {
  const auto c = compute_closure(testkit::make(4, 5, {2, 3, 5}, {1, 1, 1}));
  EXPECT_EQ(c.first, (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(c.last, (std::vector<int>{3, 3, 3}));
}

TEST(StationWindows, SingleTaskSingleStation) {
  const auto c = compute_closure(testkit::make(1, 3, {2}, {1}));
  EXPECT_EQ(c.first, std::vector<int>{0});
  EXPECT_EQ(c.last, std::vector<int>{0});
}

TEST(StationWindows, OverloadedChainIsInfeasible) {
  const auto c = compute_closure(testkit::make(1, 2, {2, 2, 2}, {1, 1, 1}, {{1, 2}, {2, 3}}));
  EXPECT_FALSE(c.windows_feasible);
}

TEST(TemporalWindows, SingleStationForcesOrder) {
  const auto inst = testkit::make(1, 4, {2, 2}, {1, 1}, {{1, 2}});
  const auto c = compute_closure(inst);
  EXPECT_EQ(c.est[1][0], 2);
  EXPECT_EQ(c.lst[0][0], 0);
  EXPECT_TRUE(c.start_pruned(1, 0, 1));
  EXPECT_FALSE(c.start_pruned(1, 0, 2));
  EXPECT_TRUE(c.start_pruned(0, 0, 1));
  EXPECT_FALSE(c.start_pruned(0, 0, 0));
}

TEST(TemporalWindows, NoEdgesPruneNothing) {
  const auto inst = testkit::make(2, 5, {2, 3}, {1, 1});
  const auto c = compute_closure(inst);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      EXPECT_EQ(c.est[i][k], 0);
      EXPECT_EQ(c.lst[i][k], inst.latest_start(i));
    }
}

TEST(Windows, MonotoneAlongClosure) {
  for (const auto& e : testkit::random_corpus(120, 40)) {
    const auto c = compute_closure(e.inst);
    for (const auto& edge : c.edges_star) {
      EXPECT_LE(c.first[edge.before], c.first[edge.after]);
      EXPECT_LE(c.last[edge.before], c.last[edge.after]);
    }
  }
}

TEST(Windows, PruningNeverRemovesFeasibleSchedules) {
  // Every oracle schedule sits inside the station and start windows.
  for (const auto& e : testkit::random_corpus(100, 60)) {
    const auto c = compute_closure(e.inst);
    const auto all = oracle_feasible_set(e.inst);
    if (!c.windows_feasible) {
      EXPECT_TRUE(all.empty());
    }
    for (const auto& s : all)
      for (int i = 0; i < e.inst.task_count(); ++i) {
        EXPECT_TRUE(c.station_allowed(i, s.station[i]));
        EXPECT_FALSE(c.start_pruned(i, s.station[i], s.start[i]));
      }
  }
}
