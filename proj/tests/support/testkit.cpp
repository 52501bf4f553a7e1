#include "testkit.hpp"

#include <random>
#include <sstream>

#include "salbp3pm/solver.hpp"

namespace testkit {

using namespace salbp3pm;

Instance make(int stations, int cycle_time, std::vector<int> t, std::vector<Power> w,
              std::vector<std::pair<int, int>> edges, std::string name) {
  std::vector<Edge> e;
  for (auto [a, b] : edges) e.push_back({a - 1, b - 1});
  return Instance(std::move(name), stations, cycle_time, std::move(t), std::move(w), std::move(e));
}

Instance worked_example() { return make(3, 7, {3, 4, 2, 3, 2}, {5, 3, 6, 4, 5}, {}, "worked"); }

Solution worked_schedule() {
  // task 1 on station 1 at 0; tasks 2 and 5 on station 2 at 1 and 5; tasks 3 and 4 on station 3 at 1 and 3
  return {{0, 1, 2, 2, 1}, {0, 1, 1, 3, 5}};
}

std::vector<Tiny> tiny_instances() {
  return {{make(2, 1, {1, 1}, {3, 4}, {}, "forced"), 7},
          {make(1, 2, {1, 1}, {3, 4}, {}, "one_station"), 4},
          {make(2, 2, {1, 1}, {3, 4}, {}, "stagger"), 4}};
}

std::vector<CorpusEntry> random_corpus(int count, std::uint64_t base_seed) {
  static constexpr double kProbabilities[] = {0.0, 0.3, 0.6};
  std::vector<CorpusEntry> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(k);
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL);
    RandomInstanceParams p;
    p.tasks = 2 + static_cast<int>(rng() % 5);
    p.stations = 1 + static_cast<int>(rng() % 3);
    p.cycle_time = 2 + static_cast<int>(rng() % 7);
    p.edge_probability = kProbabilities[k % 3];
    out.push_back({random_instance(p, seed), seed, p.edge_probability});
  }
  return out;
}

std::vector<Edge> warshall(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (const auto& e : edges) reach[e.before][e.after] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[i][k])
        for (int j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = 1;
  std::vector<Edge> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (reach[i][j]) out.push_back({i, j});
  return out;
}

std::vector<bool> canonical_assignment(const VarMap& vars, const Instance& inst, const Solution& sol,
                                       int var_count) {
  std::vector<bool> model(var_count + 1, false);
  for (Var v = 1; v <= var_count; ++v) {
    const auto tag = vars.tag(v);
    if (!tag) continue;
    const int i = tag->first, q = tag->second;
    switch (tag->kind) {
      case VarKind::x: model[v] = sol.station[i] == q; break;
      case VarKind::s: model[v] = sol.start[i] == q; break;
      case VarKind::a: model[v] = sol.start[i] <= q && q < sol.start[i] + inst.duration(i); break;
      case VarKind::r: model[v] = sol.station[i] <= q; break;
      case VarKind::t: model[v] = sol.start[i] <= q; break;
      default: break;
    }
  }
  return model;
}

namespace {

std::vector<Lit> blocking_clause(const VarMap& vars, const Solution& sol) {
  std::vector<Lit> clause;
  for (int i = 0; i < static_cast<int>(sol.station.size()); ++i) {
    clause.push_back(-vars.x(i, sol.station[i]));
    if (const Var s = vars.s(i, sol.start[i])) clause.push_back(-s);
  }
  return clause;
}

Solution project(const Model& model, const VarMap& vars, const Instance& inst) {
  Solution sol{std::vector<int>(inst.task_count(), -1), std::vector<int>(inst.task_count(), -1)};
  for (int i = 0; i < inst.task_count(); ++i) {
    for (int k = 0; k < inst.station_count(); ++k)
      if (model[vars.x(i, k)]) sol.station[i] = k;
    for (int t = 0; t < inst.cycle_time(); ++t)
      if (const Var s = vars.s(i, t); s && model[s]) sol.start[i] = t;
  }
  return sol;
}

}  // namespace

ModelSetCheck compare_model_set(const Encoding& enc, const Instance& inst,
                                const std::vector<Solution>& reference) {
  ModelSetCheck out;
  const auto& f = enc.formula;
  if (enc.vars.count(VarKind::aux) > 0) {
    out.every_reference_is_model = false;
    out.detail = "base encoding unexpectedly has auxiliary variables";
    return out;
  }
  for (const auto& sol : reference) {
    if (!f.satisfied_by(canonical_assignment(enc.vars, inst, sol, f.var_count()))) {
      out.every_reference_is_model = false;
      std::ostringstream os;
      os << "feasible schedule rejected: stations";
      for (int k : sol.station) os << ' ' << k;
      os << " starts";
      for (int t : sol.start) os << ' ' << t;
      out.detail = os.str();
      return out;
    }
  }
  auto session = make_session(Backend::cdcl);
  session->reserve_vars(f.var_count());
  session->add_formula(f);
  for (const auto& sol : reference) {
    const auto clause = blocking_clause(enc.vars, sol);
    session->add_clause(clause);
  }
  const auto res = session->solve(Budget::unlimited());
  if (res.status != SolveStatus::unsat) {
    out.no_other_models = false;
    const auto extra = project(*res.model, enc.vars, inst);
    std::ostringstream os;
    os << "model outside the reference set: stations";
    for (int k : extra.station) os << ' ' << k;
    os << " starts";
    for (int t : extra.start) os << ' ' << t;
    out.detail = os.str();
  }
  return out;
}

std::set<Solution> enumerate_models(const CnfFormula& formula, const VarMap& vars,
                                    const Instance& inst, std::size_t limit) {
  std::set<Solution> out;
  auto session = make_session(Backend::cdcl);
  session->reserve_vars(formula.var_count());
  session->add_formula(formula);
  while (out.size() < limit) {
    const auto res = session->solve(Budget::unlimited());
    if (res.status != SolveStatus::sat) break;
    const auto sol = project(*res.model, vars, inst);
    out.insert(sol);
    const auto clause = blocking_clause(vars, sol);
    session->add_clause(clause);
  }
  return out;
}

std::string describe(const Instance& inst) {
  std::ostringstream os;
  write_instance(os, inst);
  return os.str();
}

}  // namespace testkit
