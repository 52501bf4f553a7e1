#include "salbp3pm/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "salbp3pm/error.hpp"
#include "salbp3pm/precedence.hpp"

namespace salbp3pm {

namespace fs = std::filesystem;

std::string family_of(const std::string& name) {
  std::string out;
  for (char ch : name) {
    if (!std::isalpha(static_cast<unsigned char>(ch))) break;
    out += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  return out.empty() ? "OTHER" : out;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

Instance ensure_powers(Instance inst, std::uint64_t seed, Power lo, Power hi) {
  if (inst.has_powers()) return inst;
  return generate_powers(inst, seed, lo, hi);
}

}  // namespace

std::vector<BenchInstance> load_bench_dir(const fs::path& dir, std::uint64_t seed, Power lo, Power hi) {
  if (!fs::is_directory(dir)) throw ArgumentError("not a directory: " + dir.string());
  std::vector<BenchInstance> out;
  const auto manifest = dir / "manifest.csv";
  if (fs::exists(manifest)) {
    std::ifstream in(manifest);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (line.empty() || line[0] == '#') continue;
      const auto cells = split_csv(line);
      if (cells.size() >= 1 && cells[0] == "file") continue;
      if (cells.size() < 3) throw ParseError(number, "manifest rows need file,cycle_time,stations");
      const fs::path file = dir / cells[0];
      LineParameters params{std::stoi(cells[2]), std::stoi(cells[1])};
      const auto format = file.extension() == ".alb" || file.extension() == ".IN2" ||
                                  file.extension() == ".in2"
                              ? InstanceFormat::alb
                              : InstanceFormat::native;
      std::ifstream src(file);
      if (!src) throw ArgumentError("cannot open " + file.string());
      const std::string name = file.stem().string() + "_c" + cells[1] + "_m" + cells[2];
      auto inst = parse_instance(src, format, params, name);
      const std::string family = cells.size() >= 4 && !cells[3].empty() ? cells[3] : family_of(name);
      out.push_back({name, family, ensure_powers(std::move(inst), seed, lo, hi)});
    }
    return out;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".txt" || ext == ".in")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    auto inst = read_instance_file(file.string(), InstanceFormat::native);
    const std::string name = file.stem().string();
    out.push_back({name, family_of(name), ensure_powers(std::move(inst), seed, lo, hi)});
  }
  return out;
}

BenchRow make_row(const BenchInstance& bi, Method method, const OptimizeResult& result) {
  BenchRow row;
  row.instance = bi.name;
  row.family = bi.family;
  row.n = bi.instance.task_count();
  row.m = bi.instance.station_count();
  row.c = bi.instance.cycle_time();
  row.edges = bi.instance.edges().size();
  row.edges_star = transitive_closure(row.n, bi.instance.edges()).size();
  row.method = to_string(method);
  row.status = to_string(result.status);
  if (result.best_solution) row.best_peak = result.best_peak;
  row.proof = result.proof_of_optimality;
  row.seconds = result.seconds;
  row.iterations = result.iterations;
  row.variables = result.variables;
  row.clauses = result.clauses;
  return row;
}

std::vector<BenchRow> run_bench(const std::vector<BenchInstance>& instances, const BenchOptions& options) {
  const std::size_t cells = instances.size() * options.methods.size();
  std::vector<BenchRow> rows(cells);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t cell; (cell = next.fetch_add(1)) < cells;) {
      const auto& bi = instances[cell / options.methods.size()];
      const Method method = options.methods[cell % options.methods.size()];
      DriverConfig config = options.config;
      config.method = method;
      config.encoder.reset();
      try {
        rows[cell] = make_row(bi, method, optimize(bi.instance, config));
      } catch (const std::exception& e) {
        BenchRow row;
        row.instance = bi.name;
        row.family = bi.family;
        row.n = bi.instance.task_count();
        row.m = bi.instance.station_count();
        row.c = bi.instance.cycle_time();
        row.edges = bi.instance.edges().size();
        row.method = to_string(method);
        row.status = "error";
        row.note = e.what();
        rows[cell] = row;
      }
    }
  };
  unsigned jobs = options.jobs > 0 ? static_cast<unsigned>(options.jobs)
                                   : std::max(1U, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(cells, 1)));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool mask_seconds) {
  out << "instance,family,n,m,c,edges,edges_star,method,status,best_peak,proof,seconds,iterations,"
         "variables,clauses,note\n";
  for (const auto& r : rows) {
    std::string note = r.note;
    std::replace(note.begin(), note.end(), ',', ';');
    std::replace(note.begin(), note.end(), '\n', ' ');
    out << r.instance << ',' << r.family << ',' << r.n << ',' << r.m << ',' << r.c << ','
        << r.edges << ',' << r.edges_star << ',' << r.method << ',' << r.status << ',';
    if (r.best_peak) out << *r.best_peak;
    out << ',' << (r.proof ? 1 : 0) << ',';
    if (mask_seconds)
      out << '-';
    else
      out << std::fixed << std::setprecision(3) << r.seconds << std::defaultfloat;
    out << ',' << r.iterations << ',' << r.variables << ',' << r.clauses << ',' << note << '\n';
  }
}

std::vector<SummaryCell> summarize(const std::vector<BenchRow>& rows) {
  std::vector<std::string> families, methods;
  auto remember = [](std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  };
  for (const auto& r : rows) {
    remember(families, r.family);
    remember(methods, r.method);
  }
  std::vector<SummaryCell> out;
  for (const auto& f : families)
    for (const auto& m : methods) {
      SummaryCell cell{f, m, 0, 0, 0.0};
      for (const auto& r : rows) {
        if (r.family != f || r.method != m) continue;
        ++cell.instances;
        if (r.status == "optimal") {
          ++cell.solved;
          cell.seconds += r.seconds;
        }
      }
      out.push_back(cell);
    }
  return out;
}

void write_markdown(std::ostream& out, const std::vector<BenchRow>& rows) {
  const auto cells = summarize(rows);
  std::vector<std::string> families, methods;
  for (const auto& c : cells) {
    if (std::find(families.begin(), families.end(), c.family) == families.end())
      families.push_back(c.family);
    if (std::find(methods.begin(), methods.end(), c.method) == methods.end())
      methods.push_back(c.method);
  }
  out << "| Family | #Inst |";
  for (const auto& m : methods) out << ' ' << m << " |";
  out << "\n|---|---|";
  for (std::size_t i = 0; i < methods.size(); ++i) out << "---|";
  out << '\n';
  std::map<std::string, std::pair<int, double>> totals;
  int total_instances = 0;
  for (const auto& f : families) {
    int count = 0;
    for (const auto& c : cells)
      if (c.family == f) count = std::max(count, c.instances);
    total_instances += count;
    out << "| " << f << " | " << count << " |";
    for (const auto& m : methods)
      for (const auto& c : cells)
        if (c.family == f && c.method == m) {
          out << ' ' << c.solved << " / " << std::fixed << std::setprecision(2) << c.seconds
              << std::defaultfloat << " |";
          totals[m].first += c.solved;
          totals[m].second += c.seconds;
        }
    out << '\n';
  }
  out << "| Total | " << total_instances << " |";
  for (const auto& m : methods)
    out << ' ' << totals[m].first << " / " << std::fixed << std::setprecision(2)
        << totals[m].second << std::defaultfloat << " |";
  out << "\n\nCells show #Opt / summed seconds over instances solved to proven optimality.\n";
}

}  // namespace salbp3pm
