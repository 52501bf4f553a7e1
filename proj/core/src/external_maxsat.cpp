#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "salbp3pm/error.hpp"
#include "salbp3pm/maxsat.hpp"

namespace salbp3pm {

namespace {

class TempFile {
 public:
  TempFile() {
    const char* dir = std::getenv("TMPDIR");
    std::string pattern = std::string(dir && *dir ? dir : "/tmp") + "/salbp3pm-XXXXXX.wcnf";
    std::vector<char> buf(pattern.begin(), pattern.end());
    buf.push_back('\0');
    const int fd = mkstemps(buf.data(), 5);
    if (fd < 0) throw BackendError(std::string("cannot create temporary WCNF: ") + std::strerror(errno));
    close(fd);
    path_ = buf.data();
  }
  ~TempFile() { std::remove(path_.c_str()); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'')
      out += "'\\''";
    else
      out += ch;
  }
  return out + "'";
}

bool all_binary_digits(const std::string& tok) {
  return !tok.empty() && tok.find_first_not_of("01") == std::string::npos;
}

struct ChildResult {
  std::string output;
  bool killed = false;
  int exit_code = -1;
};

ChildResult run_child(const std::string& command, const Budget& budget) {
  int fds[2];
  if (pipe(fds) != 0) throw BackendError("pipe failed");
  const pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    throw BackendError("fork failed");
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(fds[1], STDOUT_FILENO);
    const int devnull = open("/dev/null", O_WRONLY);
    if (devnull >= 0) dup2(devnull, STDERR_FILENO);
    close(fds[0]);
    close(fds[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  close(fds[1]);

  ChildResult res;
  char buf[4096];
  for (;;) {
    int wait_ms = -1;
    if (budget.deadline) {
      const double left = budget.remaining_seconds();
      if (left <= 0) {
        res.killed = true;
        break;
      }
      wait_ms = static_cast<int>(left * 1000.0) + 1;
    }
    pollfd p{fds[0], POLLIN, 0};
    const int ready = poll(&p, 1, wait_ms);
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (ready == 0) continue;
    const ssize_t got = read(fds[0], buf, sizeof buf);
    if (got < 0 && errno == EINTR) continue;
    if (got <= 0) break;
    res.output.append(buf, static_cast<std::size_t>(got));
  }

  int status = 0;
  bool reaped = false;
  if (res.killed) {
    kill(-pid, SIGTERM);
    for (int i = 0; i < 50 && !reaped; ++i) {
      reaped = waitpid(pid, &status, WNOHANG) == pid;
      if (!reaped) std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    if (!reaped) kill(-pid, SIGKILL);
  }
  if (!reaped) waitpid(pid, &status, 0);
  // drain whatever the solver printed before it died
  for (;;) {
    pollfd p{fds[0], POLLIN, 0};
    if (poll(&p, 1, 0) <= 0) break;
    const ssize_t got = read(fds[0], buf, sizeof buf);
    if (got <= 0) break;
    res.output.append(buf, static_cast<std::size_t>(got));
  }
  close(fds[0]);
  if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

}  // namespace

MaxSatOutcome parse_maxsat_output(std::string_view text, const WcnfFormula& wcnf) {
  int nvars = wcnf.hard.var_count();
  for (const auto& s : wcnf.soft)
    for (Lit l : s.lits) nvars = std::max(nvars, var_of(l));

  const std::string raw(text);
  std::istringstream in(raw);
  std::string line;
  std::optional<std::string> status;
  std::optional<std::uint64_t> reported;
  std::optional<Model> model;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "s") {
      std::string rest;
      std::getline(ls, rest);
      const auto b = rest.find_first_not_of(' ');
      status = b == std::string::npos ? "" : rest.substr(b);
    } else if (tag == "o") {
      long long v;
      if (!(ls >> v) || v < 0) throw ProtocolError("malformed cost line: " + line, raw);
      reported = static_cast<std::uint64_t>(v);
    } else if (tag == "v") {
      std::vector<std::string> toks;
      for (std::string t; ls >> t;) toks.push_back(t);
      if (!model) model = Model(static_cast<std::size_t>(nvars) + 1, false);
      if (toks.size() == 1 && all_binary_digits(toks[0]) &&
          (toks[0].size() > 1 || nvars == 1)) {
        if (static_cast<int>(toks[0].size()) < nvars)
          throw ProtocolError("model string shorter than variable count", raw);
        for (int v = 1; v <= nvars; ++v) (*model)[v] = toks[0][v - 1] == '1';
        continue;
      }
      for (const auto& t : toks) {
        long long lit;
        try {
          std::size_t used = 0;
          lit = std::stoll(t, &used);
          if (used != t.size()) throw std::invalid_argument(t);
        } catch (const std::exception&) {
          throw ProtocolError("malformed model token '" + t + "'", raw);
        }
        if (lit == 0) break;
        const auto v = static_cast<int>(lit < 0 ? -lit : lit);
        if (v > nvars) continue;  // solver-internal variables
        (*model)[v] = lit > 0;
      }
    } else {
      throw ProtocolError("unexpected output line: " + line, raw);
    }
  }

  MaxSatOutcome out;
  if (!status) {
    if (reported || model) {
      out.status = MaxSatStatus::satisfiable;
    } else {
      throw ProtocolError("solver printed no status line", raw);
    }
  } else if (*status == "OPTIMUM FOUND") {
    out.status = MaxSatStatus::optimum;
  } else if (*status == "UNSATISFIABLE") {
    out.status = MaxSatStatus::unsat;
  } else if (*status == "SATISFIABLE") {
    out.status = MaxSatStatus::satisfiable;
  } else if (*status == "UNKNOWN") {
    out.status = (reported || model) ? MaxSatStatus::satisfiable : MaxSatStatus::timeout;
  } else {
    throw ProtocolError("unknown status '" + *status + "'", raw);
  }

  if (model) {
    if (!wcnf.hard.satisfied_by(*model))
      throw ProtocolError("reported model violates a hard clause", raw);
    const auto cost = wcnf.cost(*model);
    if (reported && *reported != cost)
      throw ProtocolError("reported cost " + std::to_string(*reported) + " but model costs " +
                              std::to_string(cost),
                          raw);
    out.cost = cost;
    out.model = std::move(model);
  } else {
    if (out.status == MaxSatStatus::optimum)
      throw ProtocolError("optimum reported without a model", raw);
    out.cost = reported;
  }
  return out;
}

MaxSatOutcome run_external_maxsat(const WcnfFormula& wcnf, const std::string& command,
                                  const Budget& budget) {
  const auto started = Clock::now();
  if (command.find(kWcnfPlaceholder) == std::string::npos)
    throw ConfigError("MaxSAT command template lacks the " + std::string(kWcnfPlaceholder) +
                      " placeholder");
  TempFile file;
  {
    std::ofstream out(file.path());
    write_wcnf(out, wcnf);
    if (!out) throw BackendError("cannot write " + file.path());
  }
  std::string cmd = command;
  const std::string quoted = shell_quote(file.path());
  for (auto pos = cmd.find(kWcnfPlaceholder); pos != std::string::npos;
       pos = cmd.find(kWcnfPlaceholder, pos + quoted.size()))
    cmd.replace(pos, kWcnfPlaceholder.size(), quoted);

  const auto child = run_child(cmd, budget);
  if (!child.killed && child.exit_code == 127)
    throw ConfigError("MaxSAT command could not be launched: " + command);

  MaxSatOutcome out;
  if (child.killed) {
    try {
      out = parse_maxsat_output(child.output, wcnf);
    } catch (const ProtocolError&) {
      out = MaxSatOutcome{};  // partial output at kill time is not an error
    }
    out.status = MaxSatStatus::timeout;
  } else {
    out = parse_maxsat_output(child.output, wcnf);
  }
  out.seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return out;
}

}  // namespace salbp3pm
