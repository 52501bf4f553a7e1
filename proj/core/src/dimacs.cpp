#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "salbp3pm/cnf.hpp"
#include "salbp3pm/error.hpp"

namespace salbp3pm {

namespace {

void write_clause(std::ostream& out, std::span<const Lit> lits) {
  for (Lit l : lits) out << l << ' ';
  out << "0\n";
}

long long read_number(std::istringstream& is, std::size_t line, const char* what) {
  long long v;
  if (!(is >> v)) throw ParseError(line, std::string("expected ") + what);
  return v;
}

std::vector<Lit> read_clause_tail(std::istringstream& is, std::size_t line) {
  std::vector<Lit> lits;
  for (long long v; is >> v;) {
    if (v == 0) return lits;
    lits.push_back(static_cast<Lit>(v));
  }
  throw ParseError(line, "clause is not 0-terminated");
}

void ensure_vars(CnfFormula& f, const std::vector<Lit>& lits) {
  for (Lit l : lits) f.reserve_vars(var_of(l));
}

}  // namespace

void write_dimacs(std::ostream& out, const CnfFormula& formula) {
  out << "p cnf " << formula.var_count() << ' ' << formula.clause_count() << '\n';
  for (std::size_t i = 0; i < formula.clause_count(); ++i) write_clause(out, formula.clause(i));
}

void write_wcnf(std::ostream& out, const WcnfFormula& wcnf, WcnfDialect dialect) {
  const auto& hard = wcnf.hard;
  if (dialect == WcnfDialect::classic) {
    const auto top = wcnf.top();
    out << "p wcnf " << hard.var_count() << ' ' << hard.clause_count() + wcnf.soft.size() << ' '
        << top << '\n';
    for (std::size_t i = 0; i < hard.clause_count(); ++i) {
      out << top << ' ';
      write_clause(out, hard.clause(i));
    }
  } else {
    for (std::size_t i = 0; i < hard.clause_count(); ++i) {
      out << "h ";
      write_clause(out, hard.clause(i));
    }
  }
  for (const auto& s : wcnf.soft) {
    out << s.weight << ' ';
    write_clause(out, s.lits);
  }
}

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula f;
  std::string line;
  std::size_t number = 0;
  bool header = false;
  long long declared_clauses = -1;
  std::vector<Lit> pending;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream is(line);
    std::string first;
    if (!(is >> first) || first == "c" || first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      std::string kind;
      is >> kind;
      if (kind != "cnf") throw ParseError(number, "expected 'p cnf' header");
      const auto vars = read_number(is, number, "variable count");
      declared_clauses = read_number(is, number, "clause count");
      f.reserve_vars(static_cast<int>(vars));
      header = true;
      continue;
    }
    if (!header) throw ParseError(number, "clause before 'p cnf' header");
    // clauses may span lines and share them
    std::istringstream whole(line);
    for (std::string tok; whole >> tok;) {
      long long v;
      try {
        std::size_t used = 0;
        v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(number, "bad literal '" + tok + "'");
      }
      if (v != 0) {
        pending.push_back(static_cast<Lit>(v));
        continue;
      }
      ensure_vars(f, pending);
      f.add_clause(pending);
      pending.clear();
    }
  }
  if (!header) throw ParseError(number, "missing 'p cnf' header");
  if (!pending.empty()) throw ParseError(number, "clause is not 0-terminated");
  if (declared_clauses >= 0 && static_cast<std::size_t>(declared_clauses) < f.clause_count())
    throw ParseError(number, "more clauses than declared in header");
  return f;
}

WcnfFormula parse_wcnf(std::istream& in) {
  WcnfFormula w;
  std::string line;
  std::size_t number = 0;
  std::optional<std::uint64_t> top;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream is(line);
    std::string first;
    if (!(is >> first) || first[0] == 'c') continue;
    if (first == "p") {
      std::string kind;
      is >> kind;
      if (kind != "wcnf") throw ParseError(number, "expected 'p wcnf' header");
      const auto vars = read_number(is, number, "variable count");
      read_number(is, number, "clause count");
      long long t;
      if (is >> t) top = static_cast<std::uint64_t>(t);
      w.hard.reserve_vars(static_cast<int>(vars));
      continue;
    }
    if (first == "h") {
      auto lits = read_clause_tail(is, number);
      ensure_vars(w.hard, lits);
      w.hard.add_clause(lits);
      continue;
    }
    std::uint64_t weight = 0;
    try {
      weight = std::stoull(first);
    } catch (const std::exception&) {
      throw ParseError(number, "expected clause weight, got '" + first + "'");
    }
    auto lits = read_clause_tail(is, number);
    ensure_vars(w.hard, lits);
    if (top && weight >= *top) {
      w.hard.add_clause(lits);
    } else {
      if (weight == 0) continue;
      w.soft.push_back({std::move(lits), weight});
    }
  }
  return w;
}

}  // namespace salbp3pm
