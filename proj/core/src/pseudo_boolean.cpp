#include <algorithm>
#include <numeric>

#include "salbp3pm/cnf.hpp"
#include "salbp3pm/error.hpp"

namespace salbp3pm {

std::int64_t pb_aux_var_bound(std::size_t literal_count, std::int64_t bound) {
  if (literal_count < 2 || bound <= 0) return 0;
  return static_cast<std::int64_t>(literal_count - 1) * bound;
}

PbEncodingStats encode_pb_leq(CnfFormula& formula, const PbConstraint& pb) {
  if (pb.lits.size() != pb.coefficients.size())
    throw ArgumentError("pseudo-Boolean constraint has misaligned coefficients");
  PbEncodingStats stats;
  const std::size_t clauses_before = formula.clause_count();
  const int vars_before = formula.var_count();
  auto finish = [&] {
    stats.clauses = formula.clause_count() - clauses_before;
    stats.aux_vars = formula.var_count() - vars_before;
    return stats;
  };

  if (pb.bound < 0) {
    formula.add_clause(std::span<const Lit>{});
    return finish();
  }
  const std::int64_t bound = pb.bound;

  std::vector<Lit> lits;
  std::vector<std::int64_t> weights;
  for (std::size_t i = 0; i < pb.lits.size(); ++i) {
    const auto w = pb.coefficients[i];
    if (w < 0) throw ArgumentError("pseudo-Boolean coefficients must be non-negative");
    if (w == 0) continue;
    if (w > bound) {
      formula.add_clause({-pb.lits[i]});
      continue;
    }
    lits.push_back(pb.lits[i]);
    weights.push_back(w);
  }
  const std::int64_t total = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  if (total <= bound) return finish();

  const std::size_t k = lits.size();
  // reg[i][j-1] is s(i, j); only j <= min(bound, prefix sum) is materialised.
  std::vector<std::vector<Var>> reg(k - 1);
  std::int64_t prefix = 0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    prefix += weights[i];
    const auto width = static_cast<int>(std::min(bound, prefix));
    const Var first = formula.new_vars(width);
    reg[i].resize(width);
    std::iota(reg[i].begin(), reg[i].end(), first);
  }
  auto s = [&](std::size_t i, std::int64_t j) -> Var {
    return j >= 1 && j <= static_cast<std::int64_t>(reg[i].size()) ? reg[i][j - 1] : 0;
  };

  for (std::size_t i = 0; i < k; ++i) {
    const Lit x = lits[i];
    const std::int64_t w = weights[i];
    if (i + 1 < k) {
      for (std::int64_t j = 1; j <= w; ++j) formula.add_clause({-x, s(i, j)});
      if (i > 0) {
        for (std::int64_t j = 1; j <= static_cast<std::int64_t>(reg[i - 1].size()); ++j) {
          formula.add_clause({-s(i - 1, j), s(i, j)});
          if (j + w <= bound) formula.add_clause({-x, -s(i - 1, j), s(i, j + w)});
        }
      }
    }
    if (i > 0) {
      if (const Var over = s(i - 1, bound + 1 - w); over != 0) formula.add_clause({-x, -over});
    }
  }
  return finish();
}

PbEncodingStats encode_pb_geq(CnfFormula& formula, const PbConstraint& pb) {
  PbConstraint flipped;
  flipped.coefficients = pb.coefficients;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < pb.lits.size(); ++i) {
    flipped.lits.push_back(-pb.lits[i]);
    total += pb.coefficients[i];
  }
  flipped.bound = total - pb.bound;
  return encode_pb_leq(formula, flipped);
}

}  // namespace salbp3pm
