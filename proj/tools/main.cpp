// salbp3pm command-line front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "salbp3pm/bench.hpp"
#include "salbp3pm/encoder.hpp"
#include "salbp3pm/error.hpp"
#include "salbp3pm/maxsat.hpp"
#include "salbp3pm/optimize.hpp"
#include "salbp3pm/oracle.hpp"
#include "salbp3pm/peak_layers.hpp"
#include "salbp3pm/precedence.hpp"

namespace {

using namespace salbp3pm;
using json = nlohmann::ordered_json;

namespace exit_code {
constexpr int ok = 0;
constexpr int usage = 2;
constexpr int input = 3;
constexpr int backend = 4;
constexpr int limit = 6;
constexpr int internal = 70;
constexpr int infeasible = 10;
constexpr int timeout = 11;
}  // namespace exit_code

struct InstanceArgs {
  std::string file;
  std::string format = "native";
  int stations = 0;
  int cycle_time = 0;
  std::string power_range = "1:10";
  std::uint64_t seed = 0;
};

void add_instance_options(CLI::App* cmd, InstanceArgs& a, bool positional = true) {
  if (positional) cmd->add_option("instance", a.file, "Instance file")->required();
  cmd->add_option("--format", a.format, "Instance format")
      ->check(CLI::IsMember({"native", "alb"}));
  cmd->add_option("--stations", a.stations, "Station count (alb format)");
  cmd->add_option("--cycle-time", a.cycle_time, "Cycle time (alb format)");
  cmd->add_option("--power-range", a.power_range, "lo:hi for generated powers");
  cmd->add_option("--seed", a.seed, "Seed for generated powers and solvers");
}

std::pair<Power, Power> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ArgumentError("power range must look like lo:hi");
  try {
    return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ArgumentError("power range must look like lo:hi");
  }
}

Instance load(const InstanceArgs& a) {
  const auto format = a.format == "alb" ? InstanceFormat::alb : InstanceFormat::native;
  std::optional<LineParameters> line;
  if (a.stations > 0 || a.cycle_time > 0) line = LineParameters{a.stations, a.cycle_time};
  auto inst = read_instance_file(a.file, format, line);
  if (!inst.has_powers()) {
    const auto [lo, hi] = parse_range(a.power_range);
    inst = generate_powers(inst, a.seed, lo, hi);
  }
  return inst;
}

bool on(const std::string& v) { return v == "on"; }

struct SolveArgs {
  InstanceArgs inst;
  std::string method = "cse-inc";
  std::string encoder;
  double timeout = 60.0;
  std::string maxsat_cmd;
  std::string pruning = "on";
  std::string extended = "on";
  std::string blocking = "witnessed";
  std::string sat12 = "off";
  std::string persistent = "on";
  std::string backend = "cdcl";
  int init_iterations = 10;
  bool json_out = false;
  bool verbose = false;
  std::string out;
};

DriverConfig make_config(const SolveArgs& a) {
  DriverConfig cfg;
  cfg.method = parse_method(a.method);
  if (!a.encoder.empty()) cfg.encoder = parse_encoder(a.encoder);
  cfg.timeout = a.timeout;
  cfg.init_iterations = a.init_iterations;
  cfg.blocking = parse_blocking(a.blocking);
  cfg.seed = a.inst.seed;
  cfg.backend = parse_backend(a.backend);
  cfg.encoding.use_pruning = on(a.pruning);
  cfg.encoding.use_extended_edges = on(a.extended);
  cfg.encoding.sat12 = a.sat12 == "force"     ? Sat12Mode::force_active
                       : a.sat12 == "literal" ? Sat12Mode::literal
                                              : Sat12Mode::off;
  cfg.persistent_session = on(a.persistent);
  cfg.maxsat_command = a.maxsat_cmd;
  if (cfg.maxsat_command.empty())
    if (const char* env = std::getenv(kMaxSatCommandEnv)) cfg.maxsat_command = env;
  return cfg;
}

void add_solver_options(CLI::App* cmd, SolveArgs& a) {
  cmd->add_option("--method", a.method, "org-cb, cse-cb, cse-pb, cse-maxsat or cse-inc");
  cmd->add_option("--encoder", a.encoder, "Override the method's encoder")
      ->check(CLI::IsMember({"org", "cse"}));
  cmd->add_option("--timeout", a.timeout, "Wall-clock seconds per run");
  cmd->add_option("--maxsat-cmd", a.maxsat_cmd,
                  "External MaxSAT command with {wcnf} placeholder (env SALBP3PM_MAXSAT_CMD)");
  cmd->add_option("--pruning", a.pruning)->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--extended-edges", a.extended)->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--blocking", a.blocking)->check(CLI::IsMember({"witnessed", "minimized"}));
  cmd->add_option("--mandatory", a.sat12, "Mandatory-window handling in the baseline encoder")
      ->check(CLI::IsMember({"off", "force", "literal"}));
  cmd->add_option("--persistent", a.persistent, "Keep one session for clause blocking")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--backend", a.backend)->check(CLI::IsMember({"cdcl", "cadical"}));
  cmd->add_option("--init-iterations", a.init_iterations)->check(CLI::PositiveNumber);
}

json solution_json(const Solution& sol) {
  json j;
  json st = json::array(), s = json::array();
  for (int k : sol.station) st.push_back(k + 1);
  for (int t : sol.start) s.push_back(t);
  j["station"] = st;
  j["start"] = s;
  return j;
}

json result_json(const Instance& inst, const OptimizeResult& r) {
  json j;
  j["instance"] = inst.name();
  j["method"] = to_string(r.method);
  j["encoder"] = to_string(r.encoder);
  j["status"] = to_string(r.status);
  if (r.best_solution)
    j["best_peak"] = r.best_peak;
  else
    j["best_peak"] = nullptr;
  j["proof_of_optimality"] = r.proof_of_optimality;
  j["iterations"] = r.iterations;
  j["seconds"] = r.seconds;
  j["variables"] = r.variables;
  j["clauses"] = r.clauses;
  j["bounds"] = {{"lb", r.bounds.lb}, {"ub_analytic", r.bounds.ub_analytic}};
  if (r.bounds.ub_tight) j["bounds"]["ub_tight"] = *r.bounds.ub_tight;
  if (r.best_solution) j["solution"] = solution_json(*r.best_solution);
  json log = json::array();
  for (const auto& e : r.log) {
    json row = {{"phase", e.phase}, {"sat", e.sat}, {"peak", e.peak}, {"seconds", e.seconds},
                {"clauses_added", e.clauses_added}};
    if (e.indicators > 0) {
      row["indicators"] = e.indicators;
      row["false_indicators"] = e.false_indicators;
      row["indicator_top"] = e.indicator_top;
    }
    log.push_back(row);
  }
  j["log"] = log;
  return j;
}

void print_text(std::ostream& out, const Instance& inst, const OptimizeResult& r, bool verbose) {
  out << "instance " << inst.name() << " n=" << inst.task_count() << " m=" << inst.station_count()
      << " c=" << inst.cycle_time() << '\n';
  out << "method " << to_string(r.method) << " (" << to_string(r.encoder) << ")\n";
  out << "status " << to_string(r.status) << '\n';
  if (r.best_solution) out << "peak " << r.best_peak << '\n';
  out << "bounds lb=" << r.bounds.lb << " ub=" << r.bounds.ub_analytic << '\n';
  out << "iterations " << r.iterations << "  seconds " << r.seconds << '\n';
  if (r.best_solution) {
    out << "task station start\n";
    for (int i = 0; i < inst.task_count(); ++i)
      out << "  " << i + 1 << ' ' << r.best_solution->station[i] + 1 << ' '
          << r.best_solution->start[i] << '\n';
  }
  if (verbose)
    for (const auto& e : r.log)
      out << "  [" << e.phase << "] " << (e.sat ? "sat peak " + std::to_string(e.peak) : "unsat")
          << " +" << e.clauses_added << " clauses at " << e.seconds << "s\n";
}

int status_exit(OptimizeStatus s) {
  switch (s) {
    case OptimizeStatus::optimal:
    case OptimizeStatus::feasible_only: return exit_code::ok;
    case OptimizeStatus::infeasible: return exit_code::infeasible;
    case OptimizeStatus::timeout: return exit_code::timeout;
  }
  return exit_code::internal;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw ArgumentError("cannot write " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

int run_solve(const SolveArgs& a) {
  const auto inst = load(a.inst);
  const auto result = optimize(inst, make_config(a));
  Output out(a.out);
  if (a.json_out)
    out.get() << result_json(inst, result).dump(2) << '\n';
  else
    print_text(out.get(), inst, result, a.verbose);
  return status_exit(result.status);
}

struct EncodeArgs {
  InstanceArgs inst;
  std::string encoder = "cse";
  std::string pruning = "on";
  std::string extended = "on";
  bool wcnf = false;
  bool modern = false;
  std::string out;
};

int run_encode(const EncodeArgs& a) {
  const auto inst = load(a.inst);
  EncodeOptions opts;
  opts.use_pruning = on(a.pruning);
  opts.use_extended_edges = on(a.extended);
  auto enc = encode_base(parse_encoder(a.encoder), inst, compute_closure(inst), opts);
  Output out(a.out);
  if (a.wcnf) {
    const auto b = analytic_bounds(inst);
    const auto w = peak_layer_binary(enc.formula, enc.vars, inst, b.lb, b.ub_analytic);
    write_wcnf(out.get(), w, a.modern ? WcnfDialect::modern : WcnfDialect::classic);
  } else {
    write_dimacs(out.get(), enc.formula);
  }
  return exit_code::ok;
}

int run_stats(const InstanceArgs& a, bool json_out, const std::string& pruning) {
  const auto inst = load(a);
  const auto closure = compute_closure(inst);
  EncodeOptions opts;
  opts.use_pruning = on(pruning);
  const auto rep = cse_size_report(inst, closure, opts);
  double width = 0;
  for (int i = 0; i < inst.task_count(); ++i) width += closure.last[i] - closure.first[i] + 1;
  width /= inst.task_count();
  if (json_out) {
    json j;
    j["instance"] = inst.name();
    j["n"] = inst.task_count();
    j["m"] = inst.station_count();
    j["c"] = inst.cycle_time();
    j["edges"] = inst.edges().size();
    j["edges_star"] = closure.edges_star.size();
    j["mean_station_window"] = width;
    j["windows_feasible"] = closure.windows_feasible;
    for (const auto& [label, vars, clauses, total_v, total_c] :
         {std::tuple{"org", &rep.org_vars, &rep.org_clauses, rep.org_total_vars, rep.org_total_clauses},
          std::tuple{"cse", &rep.cse_vars, &rep.cse_clauses, rep.cse_total_vars, rep.cse_total_clauses}}) {
      json e;
      e["variables"] = total_v;
      e["clauses"] = total_c;
      for (const auto& [kind, count] : *vars) e["variables_by_kind"][kind] = count;
      for (const auto& f : *clauses) e["clauses_by_family"][f.family] = f.clauses;
      j[label] = e;
    }
    json rows = json::array();
    for (const auto& r : rep.rows) rows.push_back({{"role", r.family}, {"org", r.org}, {"cse", r.cse}});
    j["comparison"] = rows;
    std::cout << j.dump(2) << '\n';
    return exit_code::ok;
  }
  std::cout << "instance " << inst.name() << " n=" << inst.task_count() << " m="
            << inst.station_count() << " c=" << inst.cycle_time() << '\n'
            << "edges " << inst.edges().size() << "  closure " << closure.edges_star.size()
            << "  mean station window " << width << '\n';
  std::cout << "role                              org        cse\n";
  for (const auto& r : rep.rows) {
    std::ostringstream line;
    line << r.family;
    std::string label = line.str();
    label.resize(std::max<std::size_t>(label.size(), 30), ' ');
    std::cout << label << ' ' << std::setw(10) << r.org << ' ' << std::setw(10) << r.cse << '\n';
  }
  std::cout << "total clauses                  " << std::setw(10) << rep.org_total_clauses << ' '
            << std::setw(10) << rep.cse_total_clauses << '\n'
            << "total variables                " << std::setw(10) << rep.org_total_vars << ' '
            << std::setw(10) << rep.cse_total_vars << '\n';
  return exit_code::ok;
}

struct GenerateArgs {
  RandomInstanceParams params;
  std::string from;
  InstanceArgs inst;
  std::string out;
};

int run_generate(GenerateArgs a) {
  const auto [lo, hi] = parse_range(a.inst.power_range);
  Instance inst = [&] {
    if (!a.from.empty()) {
      a.inst.file = a.from;
      auto base = load(a.inst);
      return generate_powers(base, a.inst.seed, lo, hi);
    }
    a.params.power_lo = lo;
    a.params.power_hi = hi;
    return random_instance(a.params, a.inst.seed);
  }();
  Output out(a.out);
  write_instance(out.get(), inst);
  return exit_code::ok;
}

struct BenchArgs {
  std::string dir;
  std::vector<std::string> methods;
  SolveArgs solve;
  int jobs = 0;
  std::string summary;
};

int run_bench_cmd(const BenchArgs& a) {
  const auto [lo, hi] = parse_range(a.solve.inst.power_range);
  const auto instances = load_bench_dir(a.dir, a.solve.inst.seed, lo, hi);
  BenchOptions opts;
  opts.config = make_config(a.solve);
  opts.jobs = a.jobs;
  if (!a.methods.empty()) {
    opts.methods.clear();
    for (const auto& m : a.methods) opts.methods.push_back(parse_method(m));
  }
  const auto rows = run_bench(instances, opts);
  {
    Output out(a.solve.out);
    write_csv(out.get(), rows);
  }
  std::string summary = a.summary;
  if (summary.empty() && !a.solve.out.empty() && a.solve.out != "-")
    summary = std::filesystem::path(a.solve.out).replace_extension(".md").string();
  if (!summary.empty()) {
    std::ofstream md(summary);
    if (!md) throw ArgumentError("cannot write " + summary);
    write_markdown(md, rows);
  } else {
    write_markdown(std::cerr, rows);
  }
  return exit_code::ok;
}

int run_oracle(const InstanceArgs& a, std::uint64_t max_nodes) {
  const auto inst = load(a);
  OracleLimits limits;
  limits.max_nodes = max_nodes;
  const auto r = oracle_solve(inst, limits);
  json j;
  j["instance"] = inst.name();
  j["feasible"] = r.feasible();
  if (r.feasible()) {
    j["optimal_peak"] = *r.optimal_peak;
    j["solution"] = solution_json(*r.witness);
  }
  j["nodes"] = r.nodes;
  std::cout << j.dump(2) << '\n';
  return r.feasible() ? exit_code::ok : exit_code::infeasible;
}

int run_maxsat(const std::string& file, double timeout) {
  std::ifstream in(file);
  if (!in) throw ArgumentError("cannot open " + file);
  const auto wcnf = parse_wcnf(in);
  const auto budget = std::isfinite(timeout) && timeout > 0 ? Budget::seconds(timeout) : Budget{};
  const auto outcome = solve_maxsat(wcnf, budget);
  int vars = wcnf.hard.var_count();
  for (const auto& s : wcnf.soft)
    for (Lit l : s.lits) vars = std::max(vars, var_of(l));
  std::cout << format_maxsat_output(outcome, vars);
  return exit_code::ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact power-peak minimisation for simple assembly lines"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "salbp3pm 0.3.0");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Minimise the power peak of one instance");
  add_instance_options(solve_cmd, solve.inst);
  add_solver_options(solve_cmd, solve);
  solve_cmd->add_flag("--json", solve.json_out, "Print a JSON result record");
  solve_cmd->add_flag("-v,--verbose", solve.verbose, "Print the iteration log");
  solve_cmd->add_option("--out", solve.out, "Write the result here instead of stdout");

  EncodeArgs encode;
  auto* encode_cmd = app.add_subcommand("encode", "Write the base CNF or the MaxSAT WCNF");
  add_instance_options(encode_cmd, encode.inst);
  encode_cmd->add_option("--encoder", encode.encoder)->check(CLI::IsMember({"org", "cse"}));
  encode_cmd->add_option("--pruning", encode.pruning)->check(CLI::IsMember({"on", "off"}));
  encode_cmd->add_option("--extended-edges", encode.extended)->check(CLI::IsMember({"on", "off"}));
  encode_cmd->add_flag("--wcnf", encode.wcnf, "Add the binary peak layer and write WCNF");
  encode_cmd->add_flag("--modern", encode.modern, "Header-less WCNF with 'h' hard clauses");
  encode_cmd->add_option("--out", encode.out);

  GenerateArgs generate;
  auto* generate_cmd = app.add_subcommand("generate", "Create a random instance or add powers");
  add_instance_options(generate_cmd, generate.inst, false);
  generate_cmd->add_option("--from", generate.from, "Existing instance to attach powers to");
  generate_cmd->add_option("--tasks", generate.params.tasks)->check(CLI::PositiveNumber);
  generate_cmd->add_option("--line-stations", generate.params.stations)->check(CLI::PositiveNumber);
  generate_cmd->add_option("--line-cycle-time", generate.params.cycle_time)->check(CLI::PositiveNumber);
  generate_cmd->add_option("--edge-prob", generate.params.edge_probability)->check(CLI::Range(0.0, 1.0));
  generate_cmd->add_option("--out", generate.out);

  InstanceArgs stats;
  bool stats_json = false;
  std::string stats_pruning = "on";
  auto* stats_cmd = app.add_subcommand("stats", "Closure and encoding size statistics");
  add_instance_options(stats_cmd, stats);
  stats_cmd->add_flag("--json", stats_json);
  stats_cmd->add_option("--pruning", stats_pruning)->check(CLI::IsMember({"on", "off"}));

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run every method on a directory of instances");
  bench_cmd->add_option("dir", bench.dir, "Directory with instances or a manifest.csv")->required();
  bench_cmd->add_option("--methods", bench.methods)->delimiter(',');
  add_instance_options(bench_cmd, bench.solve.inst, false);
  add_solver_options(bench_cmd, bench.solve);
  bench_cmd->add_option("--jobs", bench.jobs, "Parallel cells (0: one per core)");
  bench_cmd->add_option("--out", bench.solve.out, "CSV output");
  bench_cmd->add_option("--summary", bench.summary, "Markdown summary output");

  InstanceArgs oracle;
  std::uint64_t max_nodes = OracleLimits{}.max_nodes;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force optimum for small instances");
  add_instance_options(oracle_cmd, oracle);
  oracle_cmd->add_option("--max-nodes", max_nodes);

  std::string wcnf_file;
  double maxsat_timeout = 0;
  auto* maxsat_cmd = app.add_subcommand("maxsat", "Solve a WCNF file, printing s/o/v lines");
  maxsat_cmd->add_option("wcnf", wcnf_file)->required();
  maxsat_cmd->add_option("--timeout", maxsat_timeout);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*encode_cmd) return run_encode(encode);
    if (*generate_cmd) return run_generate(generate);
    if (*stats_cmd) return run_stats(stats, stats_json, stats_pruning);
    if (*bench_cmd) return run_bench_cmd(bench);
    if (*oracle_cmd) return run_oracle(oracle, max_nodes);
    if (*maxsat_cmd) return run_maxsat(wcnf_file, maxsat_timeout);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return exit_code::input;
  } catch (const ValidationError& e) {
    std::cerr << "invalid instance: " << e.what() << '\n';
    return exit_code::input;
  } catch (const LimitExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return exit_code::limit;
  } catch (const EncodingBug& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return exit_code::internal;
  } catch (const Error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return exit_code::backend;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::input;
  }
  return exit_code::usage;
}
