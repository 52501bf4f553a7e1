#include <map>

#include "encoding_detail.hpp"

namespace salbp3pm {

using detail::FamilyScope;

Encoding encode_cse_base(const Instance& inst, const PrecedenceClosure& closure,
                         const EncodeOptions& options) {
  Encoding enc;
  enc.kind = EncoderKind::cse;
  enc.vars = VarMap(enc.formula, inst, {true, false});
  auto& f = enc.formula;
  const auto& v = enc.vars;
  const int n = inst.task_count(), m = inst.station_count();
  const auto& edges = options.use_extended_edges ? closure.edges_star : inst.edges();

  // station chain: R(i,k) means a(i) <= k
  {
    FamilyScope scope(enc, "reach_first");
    for (int i = 0; i < n; ++i) {
      f.add_clause({-v.r(i, 0), v.x(i, 0)});
      f.add_clause({-v.x(i, 0), v.r(i, 0)});
    }
  }
  {
    FamilyScope scope(enc, "reach_chain");
    for (int i = 0; i < n; ++i)
      for (int k = 1; k < m; ++k) f.add_clause({-v.r(i, k - 1), v.r(i, k)});
  }
  {
    FamilyScope scope(enc, "reach_link");
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < m; ++k) f.add_clause({-v.x(i, k), v.r(i, k)});
  }
  {
    FamilyScope scope(enc, "reach_exclusive");
    for (int i = 0; i < n; ++i)
      for (int k = 1; k < m; ++k) f.add_clause({-v.x(i, k), -v.r(i, k - 1)});
  }
  {
    FamilyScope scope(enc, "reach_step");
    for (int i = 0; i < n; ++i)
      for (int k = 1; k < m; ++k) f.add_clause({-v.r(i, k), v.r(i, k - 1), v.x(i, k)});
  }
  {
    FamilyScope scope(enc, "assign_alo");
    for (int i = 0; i < n; ++i) {
      if (m == 1)
        f.add_clause({v.x(i, 0)});
      else
        f.add_clause({v.r(i, m - 2), v.x(i, m - 1)});
    }
  }
  {
    // a(before) <= a(after): after on k forces before onto a station <= k
    FamilyScope scope(enc, "prec_station");
    for (const auto& e : edges)
      for (int k = 0; k + 1 < m; ++k) f.add_clause({-v.x(e.after, k), v.r(e.before, k)});
  }

  // time chain: T(i,t) means start(i) <= t
  {
    FamilyScope scope(enc, "start_first");
    for (int i = 0; i < n; ++i) {
      f.add_clause({-v.t(i, 0), v.s(i, 0)});
      f.add_clause({-v.s(i, 0), v.t(i, 0)});
    }
  }
  {
    FamilyScope scope(enc, "start_chain");
    for (int i = 0; i < n; ++i)
      for (int t = 1; t <= inst.latest_start(i); ++t) f.add_clause({-v.t(i, t - 1), v.t(i, t)});
  }
  {
    FamilyScope scope(enc, "start_link");
    for (int i = 0; i < n; ++i)
      for (int t = 0; t <= inst.latest_start(i); ++t) f.add_clause({-v.s(i, t), v.t(i, t)});
  }
  {
    FamilyScope scope(enc, "start_exclusive");
    for (int i = 0; i < n; ++i)
      for (int t = 1; t <= inst.latest_start(i); ++t) f.add_clause({-v.s(i, t), -v.t(i, t - 1)});
  }
  {
    FamilyScope scope(enc, "start_step");
    for (int i = 0; i < n; ++i)
      for (int t = 1; t <= inst.latest_start(i); ++t)
        f.add_clause({-v.t(i, t), v.t(i, t - 1), v.s(i, t)});
  }
  {
    // without this the all-false chain is a model
    FamilyScope scope(enc, "start_alo");
    for (int i = 0; i < n; ++i) f.add_clause({v.t(i, inst.latest_start(i))});
  }
  detail::add_activity(enc, inst);
  {
    // same station: after starting at t forces before to have started by t - t_before
    FamilyScope scope(enc, "prec_time");
    for (const auto& e : edges) {
      const int p = e.before, s = e.after;
      for (int k = 0; k < m; ++k) {
        if (options.use_pruning &&
            (!closure.station_allowed(p, k) || !closure.station_allowed(s, k)))
          continue;
        for (int ts = 0; ts <= inst.latest_start(s); ++ts) {
          const int latest = ts - inst.duration(p);
          if (latest >= 0)
            f.add_clause({-v.x(s, k), -v.x(p, k), -v.s(s, ts), v.t(p, latest)});
          else
            f.add_clause({-v.x(s, k), -v.x(p, k), -v.s(s, ts)});
        }
      }
    }
  }
  detail::add_non_overlap(enc, inst);
  if (options.use_pruning) {
    detail::add_station_pruning(enc, inst, closure);
    detail::add_time_pruning(enc, inst, closure);
  }
  return enc;
}

namespace {

const char* role_of(EncoderKind kind, const std::string& family) {
  static const std::map<std::string, const char*> cse = {
      {"reach_first", "assignment at-least-one"}, {"assign_alo", "assignment at-least-one"},
      {"reach_chain", "assignment at-most-one"},  {"reach_link", "assignment at-most-one"},
      {"reach_exclusive", "assignment at-most-one"}, {"reach_step", "assignment at-most-one"},
      {"start_first", "start at-least-one"},      {"start_alo", "start at-least-one"},
      {"start_chain", "start at-most-one"},       {"start_link", "start at-most-one"},
      {"start_exclusive", "start at-most-one"},   {"start_step", "start at-most-one"},
  };
  static const std::map<std::string, const char*> common = {
      {"assign_alo", "assignment at-least-one"}, {"assign_amo", "assignment at-most-one"},
      {"start_alo", "start at-least-one"},       {"start_amo", "start at-most-one"},
      {"start_outside", "start outside window"}, {"prec_station", "precedence across stations"},
      {"prec_time", "precedence on one station"}, {"activity", "activity"},
      {"overlap", "non-overlap"},                {"station_prune", "station pruning"},
      {"time_prune", "start pruning"},           {"mandatory", "mandatory activity"},
  };
  if (kind == EncoderKind::cse) {
    if (auto it = cse.find(family); it != cse.end()) return it->second;
  }
  if (auto it = common.find(family); it != common.end()) return it->second;
  return "other";
}

std::vector<std::pair<std::string, std::size_t>> var_counts(const VarMap& vars) {
  std::vector<std::pair<std::string, std::size_t>> out;
  for (auto kind : {VarKind::x, VarKind::s, VarKind::a, VarKind::r, VarKind::t, VarKind::aux})
    out.emplace_back(to_string(kind), vars.count(kind));
  return out;
}

}  // namespace

SizeReport cse_size_report(const Instance& inst, const PrecedenceClosure& closure,
                           const EncodeOptions& options) {
  auto org = encode_org_base(inst, closure, options);
  auto cse = encode_cse_base(inst, closure, options);
  org.vars.tag_aux(org.formula);
  cse.vars.tag_aux(cse.formula);
  SizeReport rep;
  rep.org_vars = var_counts(org.vars);
  rep.cse_vars = var_counts(cse.vars);
  rep.org_clauses = org.stats.families;
  rep.cse_clauses = cse.stats.families;
  rep.org_total_clauses = org.formula.clause_count();
  rep.cse_total_clauses = cse.formula.clause_count();
  rep.org_total_vars = org.formula.var_count();
  rep.cse_total_vars = cse.formula.var_count();

  auto row = [&rep](const std::string& role) -> SizeRow& {
    for (auto& r : rep.rows)
      if (r.family == role) return r;
    rep.rows.push_back({role, 0, 0});
    return rep.rows.back();
  };
  for (const auto& fc : org.stats.families) row(role_of(EncoderKind::org, fc.family)).org += fc.clauses;
  for (const auto& fc : cse.stats.families) row(role_of(EncoderKind::cse, fc.family)).cse += fc.clauses;
  return rep;
}

}  // namespace salbp3pm
