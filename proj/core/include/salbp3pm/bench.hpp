#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "salbp3pm/instance.hpp"
#include "salbp3pm/optimize.hpp"

namespace salbp3pm {

struct BenchInstance {
  std::string name;
  std::string family;
  Instance instance;
};

struct BenchRow {
  std::string instance;
  std::string family;
  int n = 0, m = 0, c = 0;
  std::size_t edges = 0, edges_star = 0;
  std::string method;
  std::string status;  // OptimizeStatus name, or "error"
  std::optional<Power> best_peak;
  bool proof = false;
  double seconds = 0.0;
  int iterations = 0;
  int variables = 0;
  std::size_t clauses = 0;
  std::string note;
};

struct BenchOptions {
  std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
  DriverConfig config;  // method field is overridden per cell
  int jobs = 0;         // 0: one worker per hardware thread
};

/// Family label from an instance name: the leading run of letters, upper-cased.
std::string family_of(const std::string& name);

/// Loads every native instance (*.txt, *.in) in `dir`, or the entries of
/// `dir/manifest.csv` (columns file,cycle_time,stations[,family]) when present.
/// Instances without powers get seeded powers in [lo, hi].
std::vector<BenchInstance> load_bench_dir(const std::filesystem::path& dir, std::uint64_t seed,
                                          Power lo, Power hi);

/// Instance x method cross product; rows come back in that order regardless of scheduling.
std::vector<BenchRow> run_bench(const std::vector<BenchInstance>& instances,
                                const BenchOptions& options);

BenchRow make_row(const BenchInstance& inst, Method method, const OptimizeResult& result);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool mask_seconds = false);

struct SummaryCell {
  std::string family;
  std::string method;
  int instances = 0;
  int solved = 0;
  double seconds = 0.0;  // over optimal rows only
};

std::vector<SummaryCell> summarize(const std::vector<BenchRow>& rows);
void write_markdown(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace salbp3pm
