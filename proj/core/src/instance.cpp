#include "salbp3pm/instance.hpp"

#include <algorithm>
#include <numeric>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "salbp3pm/error.hpp"

namespace salbp3pm {

namespace {

bool has_cycle(int n, const std::vector<Edge>& edges) {
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<int>> succ(n);
  for (const auto& e : edges) {
    succ[e.before].push_back(e.after);
    ++indegree[e.after];
  }
  std::vector<int> ready;
  for (int i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(i);
  int visited = 0;
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    ++visited;
    for (int s : succ[v])
      if (--indegree[s] == 0) ready.push_back(s);
  }
  return visited != n;
}

// Uniform draw in [lo, hi] by rejection, identical on every standard library.
std::int64_t draw_between(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do draw = rng();
  while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

double draw_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Instance::Instance(std::string name, int stations, int cycle_time, std::vector<int> durations,
                   std::optional<std::vector<Power>> powers, std::vector<Edge> edges)
    : name_(std::move(name)),
      stations_(stations),
      cycle_time_(cycle_time),
      durations_(std::move(durations)),
      powers_(std::move(powers)),
      edges_(std::move(edges)) {
  const int n = task_count();
  if (n <= 0) throw ValidationError("instance must have at least one task");
  if (stations_ <= 0) throw ValidationError("station count must be positive");
  if (cycle_time_ <= 0) throw ValidationError("cycle time must be positive");
  for (int i = 0; i < n; ++i) {
    if (durations_[i] < 1)
      throw ValidationError("task " + std::to_string(i + 1) + " has non-positive duration");
    if (durations_[i] > cycle_time_)
      throw ValidationError("task " + std::to_string(i + 1) + " has duration " +
                            std::to_string(durations_[i]) + " > cycle time " +
                            std::to_string(cycle_time_));
  }
  if (powers_) {
    if (static_cast<int>(powers_->size()) != n)
      throw ValidationError("power count does not match task count");
    for (int i = 0; i < n; ++i)
      if ((*powers_)[i] < 1)
        throw ValidationError("task " + std::to_string(i + 1) + " has non-positive power");
  }
  std::set<Edge> seen;
  for (const auto& e : edges_) {
    if (e.before < 0 || e.before >= n || e.after < 0 || e.after >= n)
      throw ValidationError("precedence edge (" + std::to_string(e.before + 1) + "," +
                            std::to_string(e.after + 1) + ") out of range");
    if (e.before == e.after)
      throw ValidationError("precedence cycle: self loop on task " + std::to_string(e.before + 1));
    if (!seen.insert(e).second)
      throw ValidationError("duplicate precedence edge (" + std::to_string(e.before + 1) + "," +
                            std::to_string(e.after + 1) + ")");
  }
  if (has_cycle(n, edges_)) throw ValidationError("precedence cycle");
}

Power Instance::power(int task) const { return powers().at(task); }

const std::vector<Power>& Instance::powers() const {
  if (!powers_) throw ArgumentError("instance '" + name_ + "' has no power data");
  return *powers_;
}

Instance Instance::with_powers(std::vector<Power> powers) const {
  return Instance(name_, stations_, cycle_time_, durations_, std::move(powers), edges_);
}

Instance Instance::with_name(std::string name) const {
  Instance copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

Instance Instance::with_edges(std::vector<Edge> edges) const {
  return Instance(name_, stations_, cycle_time_, durations_, powers_, std::move(edges));
}

const char* to_string(ConstraintClass cls) {
  switch (cls) {
    case ConstraintClass::assignment_range: return "assignment_range";
    case ConstraintClass::start_window: return "start_window";
    case ConstraintClass::non_overlap: return "non_overlap";
    case ConstraintClass::precedence: return "precedence";
    case ConstraintClass::cycle_time: return "cycle_time";
  }
  return "unknown";
}

bool ValidationReport::passes(ConstraintClass cls) const {
  return std::none_of(violations_.begin(), violations_.end(),
                      [cls](const Violation& v) { return v.kind == cls; });
}

std::string ValidationReport::summary() const {
  if (ok()) return "feasible";
  std::ostringstream os;
  for (const auto& v : violations_) {
    os << to_string(v.kind) << " task " << v.task + 1;
    if (v.other >= 0) os << "," << v.other + 1;
    if (!v.detail.empty()) os << " (" << v.detail << ")";
    os << "; ";
  }
  return os.str();
}

PowerProfile power_profile(const Instance& inst, const Solution& sol) {
  const int c = inst.cycle_time();
  PowerProfile p;
  p.load.assign(c, 0);
  for (int i = 0; i < inst.task_count(); ++i) {
    const int from = std::max(0, sol.start.at(i));
    const int to = std::min(c, sol.start[i] + inst.duration(i));
    for (int tau = from; tau < to; ++tau) p.load[tau] += inst.power(i);
  }
  p.peak = c > 0 ? *std::max_element(p.load.begin(), p.load.end()) : 0;
  for (int tau = 0; tau < c; ++tau) {
    if (p.load[tau] != p.peak) continue;
    p.peak_times.push_back(tau);
    std::vector<int> active;
    for (int i = 0; i < inst.task_count(); ++i)
      if (sol.start[i] <= tau && tau < sol.start[i] + inst.duration(i)) active.push_back(i);
    p.peak_sets.push_back(std::move(active));
  }
  return p;
}

ValidationReport validate_solution(const Instance& inst, const Solution& sol) {
  ValidationReport report;
  const int n = inst.task_count();
  if (static_cast<int>(sol.station.size()) != n || static_cast<int>(sol.start.size()) != n) {
    report.add({ConstraintClass::assignment_range, -1, -1, "solution shape does not match task count"});
    return report;
  }
  for (int i = 0; i < n; ++i) {
    if (sol.station[i] < 0 || sol.station[i] >= inst.station_count())
      report.add({ConstraintClass::assignment_range, i, -1,
                  "station " + std::to_string(sol.station[i] + 1)});
    if (sol.start[i] < 0 || sol.start[i] > inst.latest_start(i))
      report.add({ConstraintClass::start_window, i, -1, "start " + std::to_string(sol.start[i])});
    if (sol.start[i] + inst.duration(i) > inst.cycle_time())
      report.add({ConstraintClass::cycle_time, i, -1,
                  "completes at " + std::to_string(sol.start[i] + inst.duration(i))});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (sol.station[i] != sol.station[j]) continue;
      const bool disjoint = sol.start[i] + inst.duration(i) <= sol.start[j] ||
                            sol.start[j] + inst.duration(j) <= sol.start[i];
      if (!disjoint) report.add({ConstraintClass::non_overlap, i, j, {}});
    }
  }
  for (const auto& e : inst.edges()) {
    const int p = e.before, s = e.after;
    const bool ok = sol.station[p] < sol.station[s] ||
                    (sol.station[p] == sol.station[s] &&
                     sol.start[p] + inst.duration(p) <= sol.start[s]);
    if (!ok) report.add({ConstraintClass::precedence, p, s, {}});
  }
  return report;
}

Bounds analytic_bounds(const Instance& inst) {
  const auto& w = inst.powers();
  const int n = inst.task_count();
  Power max_w = *std::max_element(w.begin(), w.end());
  Power energy = 0;
  for (int i = 0; i < n; ++i) energy += w[i] * inst.duration(i);
  const Power c = inst.cycle_time();
  Bounds b;
  b.lb = std::max(max_w, (energy + c - 1) / c);
  std::vector<Power> sorted = w;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const int k = std::min(inst.station_count(), n);
  b.ub_analytic = std::accumulate(sorted.begin(), sorted.begin() + k, Power{0});
  return b;
}

Instance generate_powers(const Instance& inst, std::uint64_t seed, Power lo, Power hi) {
  if (lo < 1) throw ArgumentError("power range lower end must be positive");
  if (lo > hi) throw ArgumentError("power range lo > hi");
  std::mt19937_64 rng(seed);
  std::vector<Power> powers(inst.task_count());
  for (auto& w : powers) w = draw_between(rng, lo, hi);
  return inst.with_powers(std::move(powers));
}

Instance random_instance(const RandomInstanceParams& p, std::uint64_t seed, std::string name) {
  if (p.tasks < 1 || p.stations < 1 || p.cycle_time < 1)
    throw ArgumentError("random instance needs positive n, m and c");
  if (p.edge_probability < 0 || p.edge_probability > 1)
    throw ArgumentError("edge probability must lie in [0, 1]");
  if (p.power_lo < 1 || p.power_lo > p.power_hi) throw ArgumentError("bad power range");
  std::mt19937_64 rng(seed);
  const int n = p.tasks;
  const int max_t = std::min(p.cycle_time, std::max(1, p.stations * p.cycle_time / n));
  std::vector<int> durations(n);
  for (auto& t : durations) t = static_cast<int>(draw_between(rng, 1, max_t));
  std::vector<Power> powers(n);
  for (auto& w : powers) w = draw_between(rng, p.power_lo, p.power_hi);
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(label[i], label[draw_between(rng, 0, i)]);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (draw_unit(rng) < p.edge_probability) edges.push_back({label[i], label[j]});
  std::sort(edges.begin(), edges.end());
  if (name.empty()) name = "rand_n" + std::to_string(n) + "_s" + std::to_string(seed);
  return Instance(std::move(name), p.stations, p.cycle_time, std::move(durations), std::move(powers),
                  std::move(edges));
}

}  // namespace salbp3pm
