#include <algorithm>

#include "encoding_detail.hpp"
#include "salbp3pm/error.hpp"

namespace salbp3pm {

namespace detail {

void add_station_pruning(Encoding& enc, const Instance& inst, const PrecedenceClosure& closure) {
  FamilyScope scope(enc, "station_prune");
  const int m = inst.station_count();
  for (int i = 0; i < inst.task_count(); ++i)
    for (int k = 0; k < m; ++k)
      if (!closure.station_allowed(i, k)) enc.formula.add_clause({-enc.vars.x(i, k)});
  if (!closure.windows_feasible) {
    // clamping can hide an empty window; make the contradiction explicit
    const Var x = enc.vars.x(0, 0);
    enc.formula.add_clause({x});
    enc.formula.add_clause({-x});
  }
}

void add_time_pruning(Encoding& enc, const Instance& inst, const PrecedenceClosure& closure) {
  FamilyScope scope(enc, "time_prune");
  for (int i = 0; i < inst.task_count(); ++i)
    for (int k = 0; k < inst.station_count(); ++k) {
      if (!closure.station_allowed(i, k)) continue;
      for (int t = 0; t <= inst.latest_start(i); ++t)
        if (closure.start_pruned(i, k, t))
          enc.formula.add_clause({-enc.vars.x(i, k), -enc.vars.s(i, t)});
    }
}

void add_activity(Encoding& enc, const Instance& inst) {
  FamilyScope scope(enc, "activity");
  for (int i = 0; i < inst.task_count(); ++i)
    for (int t = 0; t <= inst.latest_start(i); ++t)
      for (int e = 0; e < inst.duration(i); ++e)
        enc.formula.add_clause({-enc.vars.s(i, t), enc.vars.a(i, t + e)});
}

void add_non_overlap(Encoding& enc, const Instance& inst) {
  FamilyScope scope(enc, "overlap");
  const int n = inst.task_count();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < inst.station_count(); ++k)
        for (int t = 0; t < inst.cycle_time(); ++t)
          enc.formula.add_clause({-enc.vars.x(i, k), -enc.vars.x(j, k), -enc.vars.a(i, t),
                                  -enc.vars.a(j, t)});
}

}  // namespace detail

using detail::FamilyScope;

const char* to_string(EncoderKind e) { return e == EncoderKind::org ? "org" : "cse"; }

EncoderKind parse_encoder(std::string_view name) {
  if (name == "org") return EncoderKind::org;
  if (name == "cse") return EncoderKind::cse;
  throw ArgumentError("unknown encoder '" + std::string(name) + "'");
}

std::size_t EncodingStats::clauses(std::string_view family) const {
  std::size_t total = 0;
  for (const auto& f : families)
    if (f.family == family) total += f.clauses;
  return total;
}

std::size_t EncodingStats::total_clauses() const {
  std::size_t total = 0;
  for (const auto& f : families) total += f.clauses;
  return total;
}

Encoding encode_org_base(const Instance& inst, const PrecedenceClosure& closure,
                         const EncodeOptions& options) {
  Encoding enc;
  enc.kind = EncoderKind::org;
  enc.vars = VarMap(enc.formula, inst, {false, options.sat7_literal});
  auto& f = enc.formula;
  const auto& v = enc.vars;
  const int n = inst.task_count(), m = inst.station_count(), c = inst.cycle_time();

  {
    FamilyScope scope(enc, "assign_alo");
    for (int i = 0; i < n; ++i) {
      std::vector<Lit> clause;
      for (int k = 0; k < m; ++k) clause.push_back(v.x(i, k));
      f.add_clause(clause);
    }
  }
  {
    FamilyScope scope(enc, "assign_amo");
    for (int i = 0; i < n; ++i)
      for (int k1 = 0; k1 < m; ++k1)
        for (int k2 = k1 + 1; k2 < m; ++k2) f.add_clause({-v.x(i, k1), -v.x(i, k2)});
  }
  {
    FamilyScope scope(enc, "prec_station");
    for (const auto& e : inst.edges())
      for (int k = 0; k < m; ++k)
        for (int h = 0; h < k; ++h) f.add_clause({-v.x(e.before, k), -v.x(e.after, h)});
  }
  {
    FamilyScope scope(enc, "prec_time");
    for (const auto& e : inst.edges()) {
      const int p = e.before, s = e.after;
      for (int k = 0; k < m; ++k)
        for (int t1 = 0; t1 <= inst.latest_start(p); ++t1)
          for (int t2 = 0; t2 < t1 && t2 <= inst.latest_start(s); ++t2)
            f.add_clause({-v.x(p, k), -v.x(s, k), -v.s(p, t1), -v.s(s, t2)});
    }
  }
  {
    FamilyScope scope(enc, "start_alo");
    for (int i = 0; i < n; ++i) {
      std::vector<Lit> clause;
      for (int t = 0; t <= inst.latest_start(i); ++t) clause.push_back(v.s(i, t));
      f.add_clause(clause);
    }
  }
  {
    FamilyScope scope(enc, "start_amo");
    for (int i = 0; i < n; ++i)
      for (int t1 = 0; t1 <= inst.latest_start(i); ++t1)
        for (int t2 = t1 + 1; t2 <= inst.latest_start(i); ++t2)
          f.add_clause({-v.s(i, t1), -v.s(i, t2)});
  }
  if (options.sat7_literal) {
    FamilyScope scope(enc, "start_outside");
    for (int i = 0; i < n; ++i)
      for (int t = inst.latest_start(i) + 1; t < c; ++t) f.add_clause({-v.s(i, t)});
  }
  detail::add_activity(enc, inst);
  detail::add_non_overlap(enc, inst);
  if (options.use_pruning) {
    detail::add_station_pruning(enc, inst, closure);
    detail::add_time_pruning(enc, inst, closure);
  }
  if (options.sat12 != Sat12Mode::off) {
    FamilyScope scope(enc, "mandatory");
    const Lit sign = options.sat12 == Sat12Mode::force_active ? 1 : -1;
    for (int i = 0; i < n; ++i)
      for (int t = std::max(0, c - inst.duration(i)); t <= inst.duration(i) - 1 && t < c; ++t)
        f.add_clause({sign * v.a(i, t)});
  }
  return enc;
}

Encoding encode_base(EncoderKind kind, const Instance& inst, const PrecedenceClosure& closure,
                     const EncodeOptions& options) {
  return kind == EncoderKind::org ? encode_org_base(inst, closure, options)
                                  : encode_cse_base(inst, closure, options);
}

std::vector<std::vector<Lit>> org_blocking_clause(const VarMap& vars, std::span<const int> tasks) {
  if (tasks.empty()) throw ArgumentError("blocking set must be non-empty");
  std::vector<std::vector<Lit>> out;
  for (int t = 0; t < vars.cycle_time(); ++t) {
    std::vector<Lit> clause;
    for (int i : tasks)
      if (const Var a = vars.a(i, t)) clause.push_back(-a);
    if (!clause.empty()) out.push_back(std::move(clause));
  }
  return out;
}

std::size_t add_blocking_clauses(CnfFormula& formula, const VarMap& vars, std::span<const int> tasks) {
  const auto before = formula.clause_count();
  for (const auto& clause : org_blocking_clause(vars, tasks)) formula.add_clause(clause);
  return formula.clause_count() - before;
}

PbConstraint activity_terms(const Instance& inst, const VarMap& vars, int time) {
  PbConstraint pb;
  for (int i = 0; i < inst.task_count(); ++i) {
    pb.lits.push_back(vars.a(i, time));
    pb.coefficients.push_back(inst.power(i));
  }
  return pb;
}

}  // namespace salbp3pm
