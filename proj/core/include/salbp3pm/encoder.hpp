#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "salbp3pm/cnf.hpp"
#include "salbp3pm/instance.hpp"
#include "salbp3pm/precedence.hpp"
#include "salbp3pm/varmap.hpp"

namespace salbp3pm {

enum class EncoderKind { org, cse };

const char* to_string(EncoderKind e);
EncoderKind parse_encoder(std::string_view name);

/// How the baseline treats the mandatory window [c - t_i, t_i - 1].
/// `literal` forbids activity there exactly as the clause is printed, which
/// contradicts S => A whenever the window is non-empty.
enum class Sat12Mode { off, force_active, literal };

struct EncodeOptions {
  bool use_pruning = true;
  bool use_extended_edges = true;  // compact encoder: precedence over E* instead of P
  Sat12Mode sat12 = Sat12Mode::off;
  bool sat7_literal = false;  // baseline: allocate S outside T^i and fix it false
};

struct FamilyCount {
  std::string family;
  std::size_t clauses = 0;
};

struct EncodingStats {
  std::vector<FamilyCount> families;  // emission order

  std::size_t clauses(std::string_view family) const;
  std::size_t total_clauses() const;
};

struct Encoding {
  EncoderKind kind = EncoderKind::cse;
  CnfFormula formula;
  VarMap vars;
  EncodingStats stats;
};

Encoding encode_org_base(const Instance& inst, const PrecedenceClosure& closure,
                         const EncodeOptions& options = {});
Encoding encode_cse_base(const Instance& inst, const PrecedenceClosure& closure,
                         const EncodeOptions& options = {});
Encoding encode_base(EncoderKind kind, const Instance& inst, const PrecedenceClosure& closure,
                     const EncodeOptions& options = {});

/// One clause OR_{i in C} not A(i,t) per time slot. Returns the number of clauses added.
std::size_t add_blocking_clauses(CnfFormula& formula, const VarMap& vars, std::span<const int> tasks);

/// Clauses for a task set as returned by add_blocking_clauses, without appending them.
std::vector<std::vector<Lit>> org_blocking_clause(const VarMap& vars, std::span<const int> tasks);

/// Per-time linear term sum_i w_i A(i,t).
PbConstraint activity_terms(const Instance& inst, const VarMap& vars, int time);

struct SizeRow {
  std::string family;
  std::size_t org = 0;
  std::size_t cse = 0;
};

struct SizeReport {
  std::vector<std::pair<std::string, std::size_t>> org_vars;  // by kind
  std::vector<std::pair<std::string, std::size_t>> cse_vars;
  std::vector<FamilyCount> org_clauses;
  std::vector<FamilyCount> cse_clauses;
  std::size_t org_total_clauses = 0;
  std::size_t cse_total_clauses = 0;
  int org_total_vars = 0;
  int cse_total_vars = 0;
  /// Families grouped by role so both encoders line up.
  std::vector<SizeRow> rows;
};

SizeReport cse_size_report(const Instance& inst, const PrecedenceClosure& closure,
                           const EncodeOptions& options = {});

}  // namespace salbp3pm
