#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "salbp3pm/cnf.hpp"
#include "salbp3pm/instance.hpp"

namespace salbp3pm {

enum class VarKind : std::uint8_t { x, s, a, r, t, u, binu, aux };

const char* to_string(VarKind kind);

/// Semantic meaning of one propositional variable. Indices are 0-based;
/// `second` is unused (-1) for u, binu and aux.
struct VarTag {
  VarKind kind = VarKind::aux;
  int first = -1;
  int second = -1;
  friend bool operator==(const VarTag&, const VarTag&) = default;
};

/// Human-readable form with 1-based task/station indices, e.g. "X(3,2)" or "S(1,0)".
std::string describe(const VarTag& tag);

struct VarLayout {
  bool chains = false;           // allocate R and T (compact encoding)
  bool full_start_range = false; // allocate S over 0..c-1 instead of T^i
};

/// Bidirectional map between semantic variables and propositional indices.
/// Lookups of unallocated cells return 0.
class VarMap {
 public:
  VarMap() = default;
  VarMap(CnfFormula& formula, const Instance& inst, VarLayout layout = {});

  int task_count() const noexcept { return n_; }
  int station_count() const noexcept { return m_; }
  int cycle_time() const noexcept { return c_; }
  bool has_chains() const noexcept { return layout_.chains; }

  Var x(int task, int station) const { return x_[task * m_ + station]; }
  Var s(int task, int time) const;
  Var a(int task, int time) const { return a_[task * c_ + time]; }
  Var r(int task, int station) const { return layout_.chains ? r_[task * m_ + station] : 0; }
  Var t(int task, int time) const;

  Var add_u(CnfFormula& formula, int j);
  Var u(int j) const;
  Var add_binu(CnfFormula& formula, int bit);
  Var binu(int bit) const;
  int binu_count() const noexcept { return static_cast<int>(binu_.size()); }

  /// Tags every so-far untagged variable up to formula.var_count() as auxiliary.
  void tag_aux(const CnfFormula& formula);

  std::optional<VarTag> tag(Var v) const;
  std::size_t count(VarKind kind) const;
  int highest_var() const noexcept { return static_cast<int>(tags_.size()) - 1; }

 private:
  Var fresh(CnfFormula& formula, VarTag tag);

  int n_ = 0, m_ = 0, c_ = 0;
  VarLayout layout_;
  std::vector<int> durations_;
  std::vector<Var> x_, s_, a_, r_, t_;
  std::vector<std::size_t> s_offset_;  // start of task i's row in s_
  std::vector<std::size_t> t_offset_;
  std::vector<Var> u_;                 // index j, 0 when absent
  std::vector<Var> binu_;
  std::vector<VarTag> tags_{VarTag{}};  // slot 0 unused
  std::vector<bool> tagged_{false};
};

using CseVarMap = VarMap;

}  // namespace salbp3pm
