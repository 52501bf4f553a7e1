#include "salbp3pm/oracle.hpp"

#include <algorithm>

#include "salbp3pm/error.hpp"

namespace salbp3pm {

namespace {

class Search {
 public:
  Search(const Instance& inst, const OracleLimits& limits, bool enumerate)
      : inst_(inst), limits_(limits), enumerate_(enumerate), n_(inst.task_count()),
        m_(inst.station_count()), c_(inst.cycle_time()) {
    double space = 1.0;
    for (int i = 0; i < n_; ++i) space *= static_cast<double>(m_) * (c_ - inst.duration(i) + 1);
    if (space > limits.max_space)
      throw LimitExceeded("oracle search space " + std::to_string(space) + " exceeds limit");

    preds_.resize(n_);
    std::vector<int> indegree(n_, 0);
    std::vector<std::vector<int>> succ(n_);
    for (const auto& e : inst.edges()) {
      preds_[e.after].push_back(e.before);
      succ[e.before].push_back(e.after);
      ++indegree[e.after];
    }
    // smallest ready index first keeps the order deterministic
    std::vector<bool> done(n_, false);
    for (int step = 0; step < n_; ++step) {
      int pick = -1;
      for (int i = 0; i < n_ && pick < 0; ++i)
        if (!done[i] && indegree[i] == 0) pick = i;
      if (pick < 0) throw ValidationError("precedence cycle");
      done[pick] = true;
      order_.push_back(pick);
      for (int s : succ[pick]) --indegree[s];
    }

    Power max_w = 0, energy = 0;
    for (int i = 0; i < n_; ++i) {
      max_w = std::max(max_w, inst.power(i));
      energy += inst.power(i) * inst.duration(i);
    }
    floor_ = std::max(max_w, (energy + c_ - 1) / c_);
    station_.assign(n_, -1);
    start_.assign(n_, -1);
    load_.assign(c_, 0);
  }

  void run() { descend(0, 0); }

  std::optional<Power> best;
  Solution witness;
  std::vector<Solution> all;
  std::uint64_t nodes = 0;

 private:
  bool fits(int task, int k, int s) const {
    for (int p : preds_[task]) {
      if (station_[p] > k) return false;
      if (station_[p] == k && start_[p] + inst_.duration(p) > s) return false;
    }
    const int e = s + inst_.duration(task);
    for (int j = 0; j < n_; ++j) {
      if (j == task || station_[j] != k) continue;
      const int f = start_[j] + inst_.duration(j);
      if (s < f && start_[j] < e) return false;
    }
    return true;
  }

  void descend(std::size_t depth, Power partial_peak) {
    if (!enumerate_ && best && *best == floor_) return;
    if (depth == order_.size()) {
      if (enumerate_) {
        if (all.size() >= limits_.max_solutions)
          throw LimitExceeded("oracle enumeration exceeds " + std::to_string(limits_.max_solutions) +
                              " schedules");
        all.push_back({station_, start_});
      } else if (!best || partial_peak < *best) {
        best = partial_peak;
        witness = {station_, start_};
      }
      return;
    }
    const int task = order_[depth];
    const int d = inst_.duration(task);
    const Power w = inst_.power(task);
    for (int k = 0; k < m_; ++k) {
      for (int s = 0; s + d <= c_; ++s) {
        if (!fits(task, k, s)) continue;
        if (++nodes > limits_.max_nodes) throw LimitExceeded("oracle node limit reached");
        Power peak = partial_peak;
        for (int t = s; t < s + d; ++t) peak = std::max(peak, load_[t] + w);
        if (!enumerate_ && best && peak >= *best) continue;
        for (int t = s; t < s + d; ++t) load_[t] += w;
        station_[task] = k;
        start_[task] = s;
        descend(depth + 1, peak);
        station_[task] = -1;
        start_[task] = -1;
        for (int t = s; t < s + d; ++t) load_[t] -= w;
        if (!enumerate_ && best && *best == floor_) return;
      }
    }
  }

  const Instance& inst_;
  OracleLimits limits_;
  bool enumerate_;
  int n_, m_, c_;
  std::vector<std::vector<int>> preds_;
  std::vector<int> order_;
  Power floor_ = 0;
  std::vector<int> station_, start_;
  std::vector<Power> load_;
};

Instance with_unit_powers(const Instance& inst) {
  if (inst.has_powers()) return inst;
  return inst.with_powers(std::vector<Power>(inst.task_count(), 1));
}

}  // namespace

OracleResult oracle_solve(const Instance& inst, const OracleLimits& limits) {
  Search search(inst, limits, false);
  search.run();
  OracleResult out;
  out.nodes = search.nodes;
  if (search.best) {
    out.optimal_peak = search.best;
    out.witness = search.witness;
  }
  return out;
}

std::vector<Solution> oracle_feasible_set(const Instance& inst, const OracleLimits& limits) {
  const Instance weighted = with_unit_powers(inst);
  Search search(weighted, limits, true);
  search.run();
  std::sort(search.all.begin(), search.all.end());
  return search.all;
}

bool oracle_feasible(const Instance& inst, const Solution& sol) {
  const int n = inst.task_count();
  if (static_cast<int>(sol.station.size()) != n || static_cast<int>(sol.start.size()) != n)
    return false;
  // occupancy grid per station; any double booking is an overlap
  std::vector<std::vector<int>> grid(inst.station_count(), std::vector<int>(inst.cycle_time(), 0));
  for (int i = 0; i < n; ++i) {
    const int k = sol.station[i], s = sol.start[i], e = s + inst.duration(i);
    if (k < 0 || k >= inst.station_count() || s < 0 || e > inst.cycle_time()) return false;
    for (int t = s; t < e; ++t)
      if (++grid[k][t] > 1) return false;
  }
  for (const auto& edge : inst.edges()) {
    const int p = edge.before, q = edge.after;
    if (sol.station[p] > sol.station[q]) return false;
    if (sol.station[p] == sol.station[q] && sol.start[p] + inst.duration(p) > sol.start[q])
      return false;
  }
  return true;
}

}  // namespace salbp3pm
