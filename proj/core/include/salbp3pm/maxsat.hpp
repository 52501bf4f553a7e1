#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "salbp3pm/cnf.hpp"
#include "salbp3pm/solver.hpp"

namespace salbp3pm {

enum class MaxSatStatus { optimum, satisfiable, unsat, timeout };

const char* to_string(MaxSatStatus s);

struct MaxSatOutcome {
  MaxSatStatus status = MaxSatStatus::timeout;
  std::optional<Model> model;
  std::optional<std::uint64_t> cost;
  double seconds = 0.0;
};

/// Linear SAT-UNSAT search on an embedded session. Non-unit soft clauses get a
/// relaxation variable; each improvement appends a fresh cost bound, so the
/// final UNSAT certifies the optimum.
MaxSatOutcome solve_maxsat(const WcnfFormula& wcnf, const Budget& budget,
                           Backend backend = Backend::cdcl, std::uint64_t seed = 0);

/// Runs `command` through /bin/sh with `{wcnf}` replaced by a temporary WCNF path.
/// The process group is killed when the budget runs out.
MaxSatOutcome run_external_maxsat(const WcnfFormula& wcnf, const std::string& command,
                                  const Budget& budget);

/// Parses MaxSAT evaluation output (s/o/v lines). Throws ProtocolError on junk
/// and when the reported cost disagrees with the model.
MaxSatOutcome parse_maxsat_output(std::string_view text, const WcnfFormula& wcnf);

/// Prints an outcome in the same protocol; the CLI uses this to act as an external solver.
std::string format_maxsat_output(const MaxSatOutcome& outcome, int var_count);

inline constexpr std::string_view kWcnfPlaceholder = "{wcnf}";
inline constexpr const char* kMaxSatCommandEnv = "SALBP3PM_MAXSAT_CMD";

}  // namespace salbp3pm
