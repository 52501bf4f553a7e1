#pragma once

#include <vector>

#include "salbp3pm/instance.hpp"

namespace salbp3pm {

/// Transitive closure of the precedence DAG and the station/time windows
/// derived from head and tail workloads.
struct PrecedenceClosure {
  std::vector<Edge> edges_star;               // sorted
  std::vector<std::vector<int>> succ_star;    // per task, sorted
  std::vector<std::vector<int>> pred_star;    // per task, sorted

  std::vector<int> first;  // earliest admissible station, 0-based, clamped to [0, m)
  std::vector<int> last;   // latest admissible station, 0-based, clamped to [0, m)
  bool windows_feasible = true;

  // est[i][k] / lst[i][k]: earliest and latest start of task i when a(i) = k.
  std::vector<std::vector<int>> est;
  std::vector<std::vector<int>> lst;

  bool station_allowed(int task, int k) const { return first[task] <= k && k <= last[task]; }

  /// ip(i,k,t): start t of task i is impossible on station k.
  bool start_pruned(int task, int k, int t) const { return t < est[task][k] || t > lst[task][k]; }

  bool precedes(int i, int j) const;
};

/// Memoised depth-first transitive closure. Each task's successor set is
/// finalised exactly once. Returns per-task sorted successor sets.
/// Throws ValidationError on a cycle.
std::vector<std::vector<int>> transitive_successors(int task_count, const std::vector<Edge>& edges);

std::vector<Edge> transitive_closure(int task_count, const std::vector<Edge>& edges);

struct StationWindows {
  std::vector<int> first;
  std::vector<int> last;
  bool feasible = true;
};

/// first(i) = ceil((t_i + sum of transitive predecessor durations) / c),
/// last(i) = m + 1 - ceil((t_i + sum of transitive successor durations) / c),
/// both 1-based in the formulas and returned 0-based, clamped to the station range.
StationWindows station_windows(const Instance& inst, const std::vector<std::vector<int>>& pred_star,
                               const std::vector<std::vector<int>>& succ_star);

struct TemporalWindows {
  std::vector<std::vector<int>> est;
  std::vector<std::vector<int>> lst;
};

/// e(i,k): total duration of transitive predecessors forced onto station k
/// along with i; l(i,k): c - t_i minus the forced-same-station successors.
TemporalWindows temporal_windows(const Instance& inst, const std::vector<std::vector<int>>& pred_star,
                                 const std::vector<std::vector<int>>& succ_star,
                                 const StationWindows& windows);

PrecedenceClosure compute_closure(const Instance& inst);

}  // namespace salbp3pm
