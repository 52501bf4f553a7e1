#pragma once

// SALBP-3PM instances, schedules and power profiles.
//
// Indexing convention: tasks and stations are 0-based everywhere in the
// library. File formats and printed reports use 1-based numbers.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace salbp3pm {

using Power = std::int64_t;

struct Edge {
  int before = 0;
  int after = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable problem instance. Construction validates every invariant:
/// the precedence graph is a DAG, 1 <= t_i <= c, edges are distinct and in range.
/// Powers may be absent (e.g. after reading an `.alb` file); use with_powers().
class Instance {
 public:
  Instance(std::string name, int stations, int cycle_time, std::vector<int> durations,
           std::optional<std::vector<Power>> powers, std::vector<Edge> edges);

  const std::string& name() const noexcept { return name_; }
  int task_count() const noexcept { return static_cast<int>(durations_.size()); }
  int station_count() const noexcept { return stations_; }
  int cycle_time() const noexcept { return cycle_time_; }

  int duration(int task) const { return durations_.at(task); }
  const std::vector<int>& durations() const noexcept { return durations_; }

  bool has_powers() const noexcept { return powers_.has_value(); }
  /// Throws ArgumentError when powers are absent.
  Power power(int task) const;
  const std::vector<Power>& powers() const;

  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Latest admissible start, c - t_i.
  int latest_start(int task) const { return cycle_time_ - duration(task); }

  Instance with_powers(std::vector<Power> powers) const;
  Instance with_name(std::string name) const;
  Instance with_edges(std::vector<Edge> edges) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::string name_;
  int stations_;
  int cycle_time_;
  std::vector<int> durations_;
  std::optional<std::vector<Power>> powers_;
  std::vector<Edge> edges_;
};

struct Solution {
  std::vector<int> station;  // a(i), 0-based
  std::vector<int> start;    // sigma_i

  friend bool operator==(const Solution&, const Solution&) = default;
  friend auto operator<=>(const Solution&, const Solution&) = default;
};

struct PowerProfile {
  std::vector<Power> load;               // W(tau), tau = 0..c-1
  Power peak = 0;
  std::vector<int> peak_times;           // every tau with W(tau) == peak
  std::vector<std::vector<int>> peak_sets;  // A(tau) for each peak time, sorted task ids
};

struct Bounds {
  Power lb = 0;
  Power ub_analytic = 0;
  std::optional<Power> ub_tight;
};

enum class ConstraintClass { assignment_range, start_window, non_overlap, precedence, cycle_time };

const char* to_string(ConstraintClass cls);

struct Violation {
  ConstraintClass kind;
  int task = -1;
  int other = -1;  // second task for pairwise classes, -1 otherwise
  std::string detail;
};

class ValidationReport {
 public:
  void add(Violation v) { violations_.push_back(std::move(v)); }
  bool ok() const noexcept { return violations_.empty(); }
  bool passes(ConstraintClass cls) const;
  const std::vector<Violation>& violations() const noexcept { return violations_; }
  std::string summary() const;

 private:
  std::vector<Violation> violations_;
};

/// Per-time totals, peak and every peak-achieving active set. Requires only
/// that `sol` has one entry per task; starts outside [0, c) are clipped.
PowerProfile power_profile(const Instance& inst, const Solution& sol);

/// Checks assignment range, start window, pairwise non-overlap, precedence
/// and the cycle-time horizon; every violating task or pair is reported.
ValidationReport validate_solution(const Instance& inst, const Solution& sol);

/// lb = max(max_i w_i, ceil(sum_i w_i t_i / c)); ub_analytic = sum of the
/// min(m, n) largest powers.
Bounds analytic_bounds(const Instance& inst);

/// Uniform integer powers in [lo, hi], deterministic for a given seed and
/// independent of the standard library's distribution implementation.
Instance generate_powers(const Instance& inst, std::uint64_t seed, Power lo, Power hi);

struct RandomInstanceParams {
  int tasks = 5;
  int stations = 2;
  int cycle_time = 5;
  double edge_probability = 0.3;
  Power power_lo = 1;
  Power power_hi = 10;
};

/// Random DAG over forward pairs i < j (each kept with edge_probability),
/// then shuffled task labels. Durations are uniform in
/// [1, min(c, max(1, floor(m * c / n)))] so that most instances stay feasible.
Instance random_instance(const RandomInstanceParams& params, std::uint64_t seed,
                         std::string name = {});

// --- text formats -----------------------------------------------------------

enum class InstanceFormat { native, alb };

/// Station count and cycle time for formats that do not carry them.
struct LineParameters {
  int stations = 0;
  int cycle_time = 0;
};

/// Parses an instance. For `alb` the line parameters are mandatory and the
/// resulting instance has no powers.
Instance parse_instance(std::istream& in, InstanceFormat format,
                        std::optional<LineParameters> line = std::nullopt,
                        std::string name = {});
Instance read_instance_file(const std::string& path, InstanceFormat format,
                            std::optional<LineParameters> line = std::nullopt);

/// Writes the native format; powers are written as `?` when absent.
void write_instance(std::ostream& out, const Instance& inst);

}  // namespace salbp3pm
