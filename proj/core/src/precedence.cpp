#include "salbp3pm/precedence.hpp"

#include <algorithm>

#include "salbp3pm/error.hpp"

namespace salbp3pm {

namespace {

enum class Mark : unsigned char { fresh, active, done };

class ClosureBuilder {
 public:
  ClosureBuilder(int n, const std::vector<Edge>& edges) : succ_(n), reach_(n), mark_(n, Mark::fresh) {
    for (const auto& e : edges) succ_[e.before].push_back(e.after);
    for (int i = 0; i < n; ++i) reach_[i].assign(n, false);
  }

  std::vector<std::vector<int>> run() {
    const int n = static_cast<int>(succ_.size());
    for (int i = 0; i < n; ++i) visit(i);
    std::vector<std::vector<int>> out(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach_[i][j]) out[i].push_back(j);
    return out;
  }

 private:
  // Iterative post-order DFS; a node's set is complete once all children are done.
  void visit(int root) {
    if (mark_[root] == Mark::done) return;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    mark_[root] = Mark::active;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < succ_[v].size()) {
        const int child = succ_[v][next++];
        if (mark_[child] == Mark::active) throw ValidationError("precedence cycle");
        if (mark_[child] == Mark::fresh) {
          mark_[child] = Mark::active;
          stack.emplace_back(child, 0);
        }
        continue;
      }
      for (int child : succ_[v]) {
        reach_[v][child] = true;
        const auto& sub = reach_[child];
        for (std::size_t k = 0; k < sub.size(); ++k)
          if (sub[k]) reach_[v][k] = true;
      }
      mark_[v] = Mark::done;
      stack.pop_back();
    }
  }

  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<bool>> reach_;
  std::vector<Mark> mark_;
};

int ceil_div(long long a, long long b) { return static_cast<int>((a + b - 1) / b); }

}  // namespace

bool PrecedenceClosure::precedes(int i, int j) const {
  return std::binary_search(succ_star[i].begin(), succ_star[i].end(), j);
}

std::vector<std::vector<int>> transitive_successors(int task_count, const std::vector<Edge>& edges) {
  return ClosureBuilder(task_count, edges).run();
}

std::vector<Edge> transitive_closure(int task_count, const std::vector<Edge>& edges) {
  const auto succ = transitive_successors(task_count, edges);
  std::vector<Edge> out;
  for (int i = 0; i < task_count; ++i)
    for (int j : succ[i]) out.push_back({i, j});
  return out;
}

StationWindows station_windows(const Instance& inst, const std::vector<std::vector<int>>& pred_star,
                               const std::vector<std::vector<int>>& succ_star) {
  const int n = inst.task_count();
  const int m = inst.station_count();
  const int c = inst.cycle_time();
  StationWindows w;
  w.first.resize(n);
  w.last.resize(n);
  for (int i = 0; i < n; ++i) {
    long long head = inst.duration(i);
    for (int p : pred_star[i]) head += inst.duration(p);
    long long tail = inst.duration(i);
    for (int s : succ_star[i]) tail += inst.duration(s);
    const int first = ceil_div(head, c);           // 1-based
    const int last = m + 1 - ceil_div(tail, c);    // 1-based
    if (first > last || first > m || last < 1) w.feasible = false;
    w.first[i] = std::clamp(first, 1, m) - 1;
    w.last[i] = std::clamp(last, 1, m) - 1;
  }
  return w;
}

TemporalWindows temporal_windows(const Instance& inst, const std::vector<std::vector<int>>& pred_star,
                                 const std::vector<std::vector<int>>& succ_star,
                                 const StationWindows& windows) {
  const int n = inst.task_count();
  const int m = inst.station_count();
  TemporalWindows tw;
  tw.est.assign(n, std::vector<int>(m, 0));
  tw.lst.assign(n, std::vector<int>(m, 0));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) {
      int head = 0;
      for (int p : pred_star[i])
        if (windows.first[p] >= k) head += inst.duration(p);
      int tail = 0;
      for (int s : succ_star[i])
        if (windows.last[s] <= k) tail += inst.duration(s);
      tw.est[i][k] = head;
      tw.lst[i][k] = inst.latest_start(i) - tail;
    }
  }
  return tw;
}

PrecedenceClosure compute_closure(const Instance& inst) {
  const int n = inst.task_count();
  PrecedenceClosure pc;
  pc.succ_star = transitive_successors(n, inst.edges());
  pc.pred_star.assign(n, {});
  for (int i = 0; i < n; ++i)
    for (int j : pc.succ_star[i]) {
      pc.pred_star[j].push_back(i);
      pc.edges_star.push_back({i, j});
    }
  for (auto& preds : pc.pred_star) std::sort(preds.begin(), preds.end());
  auto windows = station_windows(inst, pc.pred_star, pc.succ_star);
  auto temporal = temporal_windows(inst, pc.pred_star, pc.succ_star, windows);
  pc.first = std::move(windows.first);
  pc.last = std::move(windows.last);
  pc.windows_feasible = windows.feasible;
  pc.est = std::move(temporal.est);
  pc.lst = std::move(temporal.lst);
  return pc;
}

}  // namespace salbp3pm
