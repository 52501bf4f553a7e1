#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "salbp3pm/error.hpp"
#include "salbp3pm/instance.hpp"

namespace salbp3pm {

namespace {

/// Yields non-blank, non-comment lines together with their 1-based line number.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  }

  std::size_t number() const noexcept { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

std::vector<std::string> split(const std::string& line, bool commas) {
  std::string s = line;
  if (commas)
    for (auto& ch : s)
      if (ch == ',') ch = ' ';
  std::istringstream is(s);
  std::vector<std::string> tokens;
  for (std::string tok; is >> tok;) tokens.push_back(tok);
  return tokens;
}

long long to_int(const std::string& tok, std::size_t line) {
  long long value = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParseError(line, "expected integer, got '" + tok + "'");
  return value;
}

int to_small_int(const std::string& tok, std::size_t line) {
  const long long v = to_int(tok, line);
  if (v < -1'000'000'000LL || v > 1'000'000'000LL) throw ParseError(line, "integer out of range");
  return static_cast<int>(v);
}

std::vector<Edge> read_edges(LineReader& reader, int n, bool commas) {
  std::vector<Edge> edges;
  std::string line;
  while (reader.next(line)) {
    const auto tokens = split(line, commas);
    if (tokens.size() != 2) throw ParseError(reader.number(), "expected an edge pair");
    const int i = to_small_int(tokens[0], reader.number());
    const int j = to_small_int(tokens[1], reader.number());
    if (i == -1 && j == -1) return edges;
    if (i < 1 || i > n || j < 1 || j > n)
      throw ParseError(reader.number(), "edge endpoint out of range 1.." + std::to_string(n));
    edges.push_back({i - 1, j - 1});
  }
  throw ParseError(reader.number(), "missing -1 -1 edge terminator");
}

Instance parse_native(std::istream& in, std::string name) {
  LineReader reader(in);
  std::string line;
  if (!reader.next(line)) throw ParseError(reader.number(), "empty input");
  auto header = split(line, false);
  if (header.size() != 3) throw ParseError(reader.number(), "header must be 'n m c'");
  const int n = to_small_int(header[0], reader.number());
  const int m = to_small_int(header[1], reader.number());
  const int c = to_small_int(header[2], reader.number());
  if (n < 1) throw ParseError(reader.number(), "task count must be positive");

  if (!reader.next(line)) throw ParseError(reader.number(), "missing durations line");
  const auto dur_tokens = split(line, false);
  if (static_cast<int>(dur_tokens.size()) != n)
    throw ParseError(reader.number(), "expected " + std::to_string(n) + " durations");
  std::vector<int> durations;
  for (const auto& tok : dur_tokens) durations.push_back(to_small_int(tok, reader.number()));

  if (!reader.next(line)) throw ParseError(reader.number(), "missing powers line");
  const auto pow_tokens = split(line, false);
  if (static_cast<int>(pow_tokens.size()) != n)
    throw ParseError(reader.number(), "expected " + std::to_string(n) + " powers");
  std::optional<std::vector<Power>> powers;
  const bool unknown = pow_tokens.front() == "?";
  if (!unknown) powers.emplace();
  for (const auto& tok : pow_tokens) {
    if ((tok == "?") != unknown)
      throw ParseError(reader.number(), "powers must be all numbers or all '?'");
    if (!unknown) powers->push_back(to_int(tok, reader.number()));
  }

  auto edges = read_edges(reader, n, false);
  return Instance(std::move(name), m, c, std::move(durations), std::move(powers), std::move(edges));
}

Instance parse_alb(std::istream& in, const LineParameters& params, std::string name) {
  LineReader reader(in);
  std::string line;
  if (!reader.next(line)) throw ParseError(reader.number(), "empty input");
  const auto head = split(line, true);
  if (head.size() != 1) throw ParseError(reader.number(), "first line must hold the task count");
  const int n = to_small_int(head[0], reader.number());
  if (n < 1) throw ParseError(reader.number(), "task count must be positive");
  std::vector<int> durations;
  while (static_cast<int>(durations.size()) < n) {
    if (!reader.next(line)) throw ParseError(reader.number(), "missing task durations");
    for (const auto& tok : split(line, true)) durations.push_back(to_small_int(tok, reader.number()));
  }
  if (static_cast<int>(durations.size()) != n)
    throw ParseError(reader.number(), "too many durations");
  auto edges = read_edges(reader, n, true);
  return Instance(std::move(name), params.stations, params.cycle_time, std::move(durations),
                  std::nullopt, std::move(edges));
}

}  // namespace

Instance parse_instance(std::istream& in, InstanceFormat format, std::optional<LineParameters> line,
                        std::string name) {
  if (format == InstanceFormat::native) return parse_native(in, std::move(name));
  if (!line) throw ArgumentError("alb input requires station count and cycle time");
  return parse_alb(in, *line, std::move(name));
}

Instance read_instance_file(const std::string& path, InstanceFormat format,
                            std::optional<LineParameters> line) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open instance file '" + path + "'");
  auto stem = path.substr(path.find_last_of('/') == std::string::npos ? 0 : path.find_last_of('/') + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos && dot > 0) stem.resize(dot);
  return parse_instance(in, format, line, stem);
}

void write_instance(std::ostream& out, const Instance& inst) {
  if (!inst.name().empty()) out << "# " << inst.name() << '\n';
  out << inst.task_count() << ' ' << inst.station_count() << ' ' << inst.cycle_time() << '\n';
  for (int i = 0; i < inst.task_count(); ++i) out << (i ? " " : "") << inst.duration(i);
  out << '\n';
  for (int i = 0; i < inst.task_count(); ++i) {
    out << (i ? " " : "");
    if (inst.has_powers())
      out << inst.power(i);
    else
      out << '?';
  }
  out << '\n';
  for (const auto& e : inst.edges()) out << e.before + 1 << ' ' << e.after + 1 << '\n';
  out << "-1 -1\n";
}

}  // namespace salbp3pm
