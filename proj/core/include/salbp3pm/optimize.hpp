#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "salbp3pm/encoder.hpp"
#include "salbp3pm/instance.hpp"
#include "salbp3pm/solver.hpp"

namespace salbp3pm {

enum class Method { org_cb, cse_cb, cse_pb, cse_maxsat, cse_inc };
enum class BlockingScope { witnessed, minimized };
enum class OptimizeStatus { optimal, feasible_only, infeasible, timeout };

const char* to_string(Method m);
const char* to_string(BlockingScope s);
const char* to_string(OptimizeStatus s);
/// Accepts both `cse_inc` and `cse-inc` spellings.
Method parse_method(std::string_view name);
BlockingScope parse_blocking(std::string_view name);
EncoderKind default_encoder(Method m);

inline constexpr Method kAllMethods[] = {Method::org_cb, Method::cse_cb, Method::cse_pb,
                                         Method::cse_maxsat, Method::cse_inc};

struct DriverConfig {
  Method method = Method::cse_inc;
  std::optional<EncoderKind> encoder;  // defaults to default_encoder(method)
  double timeout = 60.0;               // seconds, wall clock, covers encoding
  int init_iterations = 10;
  BlockingScope blocking = BlockingScope::witnessed;
  std::uint64_t seed = 0;
  Backend backend = Backend::cdcl;
  EncodeOptions encoding;
  bool persistent_session = true;  // clause blocking: keep one session, else reload each round
  std::string maxsat_command;      // empty: embedded MaxSAT search

  EncoderKind encoder_kind() const { return encoder.value_or(default_encoder(method)); }
};

struct IterationLog {
  std::string phase;  // "init", "search", "maxsat"
  Power peak = 0;     // peak of the model found in this round, 0 for the closing UNSAT
  double seconds = 0.0;
  std::size_t clauses_added = 0;
  bool sat = true;
  // incremental driver only: indicator count and false indicators in the model
  int indicators = 0;
  int false_indicators = 0;
  Power indicator_top = 0;  // w_best the indicator layer was built with
};

struct OptimizeResult {
  OptimizeStatus status = OptimizeStatus::timeout;
  Power best_peak = 0;
  std::optional<Solution> best_solution;
  int iterations = 0;
  std::vector<IterationLog> log;
  bool proof_of_optimality = false;
  Bounds bounds;
  int variables = 0;
  std::size_t clauses = 0;
  double seconds = 0.0;
  Method method = Method::cse_inc;
  EncoderKind encoder = EncoderKind::cse;
};

/// a(i) and start(i) from the unique true X and S cells. Throws EncodingBug
/// when a task has zero or several.
Solution decode(const Model& model, const VarMap& vars, const Instance& inst);

struct InitResult {
  std::optional<Solution> best;
  Power ub_tight = 0;
  bool proved_optimal = false;  // an UNSAT after at least one model
  bool infeasible = false;      // first solve UNSAT
  bool timed_out = false;
  int rounds = 0;
};

/// Up to `iterations` rounds on the session, blocking every peak set of each
/// model (weight equal to that model's peak) at all time slots.
InitResult init_upper_bound(IncrementalSolver& solver, const VarMap& vars, const Instance& inst,
                            int iterations, BlockingScope scope, const Budget& budget,
                            std::vector<IterationLog>* log = nullptr);

OptimizeResult optimize_clause_blocking(const Instance& inst, const DriverConfig& config);
OptimizeResult optimize_pb(const Instance& inst, const DriverConfig& config);
OptimizeResult optimize_maxsat(const Instance& inst, const DriverConfig& config);
OptimizeResult optimize_incremental(const Instance& inst, const DriverConfig& config);

/// Dispatches on config.method.
OptimizeResult optimize(const Instance& inst, const DriverConfig& config);

/// Shrinks a task set to an inclusion-minimal subset with weight >= threshold,
/// dropping the lightest tasks first.
std::vector<int> minimize_blocking_set(const Instance& inst, std::vector<int> tasks, Power threshold);

}  // namespace salbp3pm
