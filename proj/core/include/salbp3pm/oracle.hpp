#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "salbp3pm/instance.hpp"

namespace salbp3pm {

struct OracleLimits {
  double max_space = 1e12;             // refuse when m^n * prod |T^i| exceeds this
  std::uint64_t max_nodes = 200'000'000;
  std::size_t max_solutions = 2'000'000;
};

struct OracleResult {
  std::optional<Power> optimal_peak;  // empty when infeasible
  std::optional<Solution> witness;
  std::uint64_t nodes = 0;

  bool feasible() const { return optimal_peak.has_value(); }
};

/// Exhaustive branch and bound over (station, start) per task in topological
/// order. Throws LimitExceeded instead of guessing when the search is too big.
OracleResult oracle_solve(const Instance& inst, const OracleLimits& limits = {});

/// Every feasible schedule, sorted.
std::vector<Solution> oracle_feasible_set(const Instance& inst, const OracleLimits& limits = {});

/// Stand-alone feasibility test sharing no code with validate_solution.
bool oracle_feasible(const Instance& inst, const Solution& sol);

}  // namespace salbp3pm
