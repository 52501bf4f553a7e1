#include "salbp3pm/cdcl.hpp"

#include <algorithm>
#include <cmath>

namespace salbp3pm {

namespace {

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

CdclSolver::CdclSolver(std::uint64_t seed) : rng_(seed), randomise_(seed != 0) {
  watches_.resize(2);
}

void CdclSolver::reserve_vars(int count) {
  const auto old = static_cast<std::uint32_t>(assigns_.size());
  if (count < static_cast<int>(old)) return;
  const auto size = static_cast<std::size_t>(count) + 1;
  assigns_.resize(size, 0);
  level_.resize(size, 0);
  reason_.resize(size, kNoReason);
  polarity_.resize(size, 1);
  activity_.resize(size, 0.0);
  seen_.resize(size, 0);
  heap_index_.resize(size, -1);
  watches_.resize(2 * size);
  std::uniform_real_distribution<double> jitter(0.0, 1e-5);
  for (auto v = old; v < size; ++v) {
    if (randomise_) activity_[v] = jitter(rng_);
    heap_insert(v);
  }
}

void CdclSolver::add_clause(std::span<const Lit> lits) {
  int max_var = 0;
  for (Lit l : lits) max_var = std::max(max_var, var_of(l));
  reserve_vars(max_var);
  if (!ok_) return;
  cancel_until(0);

  std::vector<Code> codes;
  codes.reserve(lits.size());
  for (Lit l : lits) codes.push_back(encode(l));
  std::sort(codes.begin(), codes.end());
  std::vector<Code> kept;
  Code prev = ~Code{0};
  for (Code c : codes) {
    if (c == prev) continue;
    if (prev != ~Code{0} && c == neg(prev)) return;  // tautology: sorted codes are adjacent
    prev = c;
    const int v = value(c);
    if (v == 1) return;
    if (v == 0) kept.push_back(c);
  }
  if (kept.empty()) {
    ok_ = false;
    return;
  }
  if (kept.size() == 1) {
    assign(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return;
  }
  attach(std::move(kept), false, 0);
}

CdclSolver::CRef CdclSolver::attach(std::vector<Code> lits, bool learnt, std::uint32_t lbd) {
  CRef cref;
  if (!free_slots_.empty()) {
    cref = free_slots_.back();
    free_slots_.pop_back();
    clauses_[cref] = Clause{std::move(lits), 0.0, lbd, learnt, false};
  } else {
    cref = static_cast<CRef>(clauses_.size());
    clauses_.push_back(Clause{std::move(lits), 0.0, lbd, learnt, false});
  }
  const auto& c = clauses_[cref];
  watches_[neg(c.lits[0])].push_back({cref, c.lits[1]});
  watches_[neg(c.lits[1])].push_back({cref, c.lits[0]});
  if (learnt) learnts_.push_back(cref);
  return cref;
}

void CdclSolver::assign(Code c, CRef reason) {
  const auto v = var(c);
  assigns_[v] = (c & 1U) ? -1 : 1;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(c);
}

CdclSolver::CRef CdclSolver::propagate() {
  CRef conflict = kNoReason;
  while (qhead_ < trail_.size()) {
    const Code p = trail_[qhead_++];
    const Code false_lit = neg(p);
    auto& ws = watches_[p];
    std::size_t i = 0, j = 0;
    const std::size_t end = ws.size();
    while (i < end) {
      const Watcher w = ws[i];
      if (value(w.blocker) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      Clause& c = clauses_[w.cref];
      if (c.deleted) {
        ++i;
        continue;
      }
      if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
      ++i;
      const Code first = c.lits[0];
      if (first != w.blocker && value(first) == 1) {
        ws[j++] = {w.cref, first};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.lits.size(); ++k) {
        if (value(c.lits[k]) != -1) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[neg(c.lits[1])].push_back({w.cref, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.cref, first};
      if (value(first) == -1) {
        conflict = w.cref;
        qhead_ = trail_.size();
        while (i < end) ws[j++] = ws[i++];
      } else {
        assign(first, w.cref);
      }
    }
    ws.resize(j);
    if (conflict != kNoReason) break;
  }
  return conflict;
}

void CdclSolver::bump_var(std::uint32_t v) {
  if ((activity_[v] += var_inc_) > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_index_[v] >= 0) heap_up(static_cast<std::size_t>(heap_index_[v]));
}

void CdclSolver::bump_clause(Clause& c) {
  if ((c.activity += clause_inc_) > 1e20) {
    for (CRef r : learnts_) clauses_[r].activity *= 1e-20;
    clause_inc_ *= 1e-20;
  }
}

void CdclSolver::analyze(CRef conflict, std::vector<Code>& learnt, int& backtrack_level,
                         std::uint32_t& lbd) {
  learnt.clear();
  learnt.push_back(0);
  int path = 0;
  Code p = 0;
  bool have_p = false;
  std::size_t index = trail_.size();
  CRef confl = conflict;
  do {
    Clause& c = clauses_[confl];
    if (c.learnt) bump_clause(c);
    for (std::size_t k = have_p ? 1 : 0; k < c.lits.size(); ++k) {
      const Code q = c.lits[k];
      const auto v = var(q);
      if (!seen_[v] && level_[v] > 0) {
        bump_var(v);
        seen_[v] = 1;
        if (level_[v] >= decision_level())
          ++path;
        else
          learnt.push_back(q);
      }
    }
    while (!seen_[var(trail_[--index])]) {
    }
    p = trail_[index];
    have_p = true;
    confl = reason_[var(p)];
    seen_[var(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = neg(p);

  analyze_clear_.assign(learnt.begin(), learnt.end());
  std::uint32_t abstract = 0;
  for (std::size_t k = 1; k < learnt.size(); ++k) abstract |= abstract_level(var(learnt[k]));
  std::size_t j = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    if (reason_[var(learnt[k])] == kNoReason || !redundant(learnt[k], abstract))
      learnt[j++] = learnt[k];
  }
  learnt.resize(j);
  for (Code c : analyze_clear_) seen_[var(c)] = 0;

  if (learnt.size() == 1) {
    backtrack_level = 0;
  } else {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (level_[var(learnt[k])] > level_[var(learnt[max_i])]) max_i = k;
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level_[var(learnt[1])];
  }

  if (lbd_stamp_.size() < trail_lim_.size() + 2) lbd_stamp_.resize(trail_lim_.size() + 2, 0);
  ++lbd_counter_;
  lbd = 0;
  for (Code c : learnt) {
    const int lv = level_[var(c)];
    if (lbd_stamp_[lv] != lbd_counter_) {
      lbd_stamp_[lv] = lbd_counter_;
      ++lbd;
    }
  }
}

bool CdclSolver::redundant(Code p, std::uint32_t abstract_levels) {
  analyze_stack_.clear();
  analyze_stack_.push_back(p);
  const std::size_t top = analyze_clear_.size();
  while (!analyze_stack_.empty()) {
    const Code q = analyze_stack_.back();
    analyze_stack_.pop_back();
    const Clause& c = clauses_[reason_[var(q)]];
    for (std::size_t k = 1; k < c.lits.size(); ++k) {
      const Code l = c.lits[k];
      const auto v = var(l);
      if (seen_[v] || level_[v] == 0) continue;
      if (reason_[v] != kNoReason && (abstract_level(v) & abstract_levels) != 0) {
        seen_[v] = 1;
        analyze_stack_.push_back(l);
        analyze_clear_.push_back(l);
      } else {
        for (std::size_t m = top; m < analyze_clear_.size(); ++m) seen_[var(analyze_clear_[m])] = 0;
        analyze_clear_.resize(top);
        return false;
      }
    }
  }
  return true;
}

void CdclSolver::cancel_until(int level) {
  if (decision_level() <= level) return;
  for (std::size_t c = trail_.size(); c-- > trail_lim_[level];) {
    const Code code = trail_[c];
    const auto v = var(code);
    assigns_[v] = 0;
    reason_[v] = kNoReason;
    polarity_[v] = static_cast<char>(code & 1U);
    if (heap_index_[v] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

bool CdclSolver::locked(CRef cref) const {
  const Clause& c = clauses_[cref];
  const auto v = var(c.lits[0]);
  return reason_[v] == cref && value(c.lits[0]) == 1;
}

void CdclSolver::reduce_learnts() {
  std::sort(learnts_.begin(), learnts_.end(), [this](CRef a, CRef b) {
    const Clause& x = clauses_[a];
    const Clause& y = clauses_[b];
    if (x.lbd != y.lbd) return x.lbd > y.lbd;
    return x.activity < y.activity;
  });
  const std::size_t target = learnts_.size() / 2;
  std::size_t removed = 0;
  std::vector<CRef> kept;
  kept.reserve(learnts_.size());
  for (CRef cref : learnts_) {
    Clause& c = clauses_[cref];
    if (removed < target && c.lbd > 2 && c.lits.size() > 2 && !locked(cref)) {
      c.deleted = true;
      ++removed;
    } else {
      kept.push_back(cref);
    }
  }
  learnts_.swap(kept);
  if (removed == 0) return;
  for (auto& ws : watches_)
    ws.erase(std::remove_if(ws.begin(), ws.end(),
                            [this](const Watcher& w) { return clauses_[w.cref].deleted; }),
             ws.end());
  for (CRef cref = 0; cref < clauses_.size(); ++cref) {
    Clause& c = clauses_[cref];
    if (c.deleted && !c.lits.empty()) {
      std::vector<Code>().swap(c.lits);
      free_slots_.push_back(cref);
    }
  }
}

CdclSolver::Code CdclSolver::pick_branch() {
  while (!heap_.empty()) {
    const auto v = heap_pop();
    if (assigns_[v] == 0) return static_cast<Code>(2 * v + static_cast<Code>(polarity_[v]));
  }
  return 0;
}

CdclSolver::Step CdclSolver::search(std::uint64_t conflict_budget, const Budget& budget,
                                    SolveStats& stats) {
  std::uint64_t local_conflicts = 0;
  std::vector<Code> learnt;
  for (;;) {
    const CRef confl = propagate();
    if (confl != kNoReason) {
      ++stats.conflicts;
      ++local_conflicts;
      ++total_conflicts_;
      if (decision_level() == 0) {
        ok_ = false;
        return Step::unsat;
      }
      int backtrack = 0;
      std::uint32_t lbd = 0;
      analyze(confl, learnt, backtrack, lbd);
      cancel_until(backtrack);
      if (learnt.size() == 1) {
        assign(learnt[0], kNoReason);
      } else {
        const CRef cref = attach(learnt, true, lbd);
        bump_clause(clauses_[cref]);
        assign(learnt[0], cref);
      }
      var_inc_ /= var_decay_;
      clause_inc_ /= clause_decay_;
      if ((stats.conflicts & 63U) == 0 && budget.expired()) {
        cancel_until(0);
        return Step::timeout;
      }
      if (budget.conflict_limit && stats.conflicts >= *budget.conflict_limit) {
        cancel_until(0);
        return Step::timeout;
      }
      continue;
    }
    if (local_conflicts >= conflict_budget) {
      cancel_until(0);
      return Step::restart;
    }
    if (static_cast<double>(learnts_.size()) - static_cast<double>(trail_.size()) >= max_learnts_)
      reduce_learnts();
    ++stats.decisions;
    if ((stats.decisions & 1023U) == 0 && budget.expired()) {
      cancel_until(0);
      return Step::timeout;
    }
    const Code next = pick_branch();
    if (next == 0) return Step::sat;
    trail_lim_.push_back(trail_.size());
    assign(next, kNoReason);
  }
}

SolveOutcome CdclSolver::solve(const Budget& budget) {
  const auto started = Clock::now();
  SolveOutcome out;
  auto finish = [&](SolveStatus s) {
    out.status = s;
    out.stats.seconds = std::chrono::duration<double>(Clock::now() - started).count();
    return out;
  };
  if (!ok_) return finish(SolveStatus::unsat);
  if (budget.expired()) return finish(SolveStatus::timeout);
  cancel_until(0);
  if (propagate() != kNoReason) {
    ok_ = false;
    return finish(SolveStatus::unsat);
  }
  if (max_learnts_ == 0.0) max_learnts_ = std::max(4000.0, static_cast<double>(clauses_.size()) / 3.0);

  for (int restart = 0;; ++restart) {
    const auto budget_conflicts = static_cast<std::uint64_t>(luby(2.0, restart) * 100.0);
    const Step step = search(budget_conflicts, budget, out.stats);
    if (step == Step::sat) {
      Model model(assigns_.size(), false);
      for (std::size_t v = 1; v < assigns_.size(); ++v) model[v] = assigns_[v] == 1;
      out.model = std::move(model);
      cancel_until(0);
      return finish(SolveStatus::sat);
    }
    if (step == Step::unsat) return finish(SolveStatus::unsat);
    if (step == Step::timeout) return finish(SolveStatus::timeout);
    max_learnts_ *= 1.05;
    if (budget.expired()) return finish(SolveStatus::timeout);
  }
}

// --- heap -------------------------------------------------------------------

void CdclSolver::heap_insert(std::uint32_t v) {
  heap_index_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void CdclSolver::heap_up(std::size_t pos) {
  const auto v = heap_[pos];
  while (pos > 0) {
    const std::size_t parent = (pos - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[pos] = heap_[parent];
    heap_index_[heap_[pos]] = static_cast<int>(pos);
    pos = parent;
  }
  heap_[pos] = v;
  heap_index_[v] = static_cast<int>(pos);
}

void CdclSolver::heap_down(std::size_t pos) {
  const auto v = heap_[pos];
  for (;;) {
    std::size_t child = 2 * pos + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[pos] = heap_[child];
    heap_index_[heap_[pos]] = static_cast<int>(pos);
    pos = child;
  }
  heap_[pos] = v;
  heap_index_[v] = static_cast<int>(pos);
}

std::uint32_t CdclSolver::heap_pop() {
  const auto top = heap_.front();
  heap_index_[top] = -1;
  const auto last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_index_[last] = 0;
    heap_down(0);
  }
  return top;
}

}  // namespace salbp3pm
