#include "salbp3pm/varmap.hpp"

#include <algorithm>

#include "salbp3pm/error.hpp"

namespace salbp3pm {

const char* to_string(VarKind kind) {
  switch (kind) {
    case VarKind::x: return "X";
    case VarKind::s: return "S";
    case VarKind::a: return "A";
    case VarKind::r: return "R";
    case VarKind::t: return "T";
    case VarKind::u: return "U";
    case VarKind::binu: return "binU";
    case VarKind::aux: return "aux";
  }
  return "?";
}

std::string describe(const VarTag& tag) {
  std::string out = to_string(tag.kind);
  switch (tag.kind) {
    case VarKind::x:
    case VarKind::r:
      return out + "(" + std::to_string(tag.first + 1) + "," + std::to_string(tag.second + 1) + ")";
    case VarKind::s:
    case VarKind::a:
    case VarKind::t:
      return out + "(" + std::to_string(tag.first + 1) + "," + std::to_string(tag.second) + ")";
    case VarKind::u:
    case VarKind::binu:
      return out + "(" + std::to_string(tag.first) + ")";
    case VarKind::aux:
      break;
  }
  return out;
}

VarMap::VarMap(CnfFormula& formula, const Instance& inst, VarLayout layout)
    : n_(inst.task_count()), m_(inst.station_count()), c_(inst.cycle_time()), layout_(layout),
      durations_(inst.durations()) {
  tag_aux(formula);
  x_.resize(static_cast<std::size_t>(n_) * m_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < m_; ++k) x_[i * m_ + k] = fresh(formula, {VarKind::x, i, k});

  s_offset_.resize(n_ + 1);
  for (int i = 0; i < n_; ++i) {
    s_offset_[i] = s_.size();
    const int width = layout_.full_start_range ? c_ : c_ - durations_[i] + 1;
    for (int t = 0; t < width; ++t) s_.push_back(fresh(formula, {VarKind::s, i, t}));
  }
  s_offset_[n_] = s_.size();

  a_.resize(static_cast<std::size_t>(n_) * c_);
  for (int i = 0; i < n_; ++i)
    for (int t = 0; t < c_; ++t) a_[i * c_ + t] = fresh(formula, {VarKind::a, i, t});

  if (layout_.chains) {
    r_.resize(static_cast<std::size_t>(n_) * m_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < m_; ++k) r_[i * m_ + k] = fresh(formula, {VarKind::r, i, k});
    t_offset_.resize(n_ + 1);
    for (int i = 0; i < n_; ++i) {
      t_offset_[i] = t_.size();
      for (int t = 0; t <= c_ - durations_[i]; ++t) t_.push_back(fresh(formula, {VarKind::t, i, t}));
    }
    t_offset_[n_] = t_.size();
  }
}

Var VarMap::s(int task, int time) const {
  const std::size_t width = s_offset_[task + 1] - s_offset_[task];
  if (time < 0 || static_cast<std::size_t>(time) >= width) return 0;
  return s_[s_offset_[task] + time];
}

Var VarMap::t(int task, int time) const {
  if (!layout_.chains) return 0;
  const std::size_t width = t_offset_[task + 1] - t_offset_[task];
  if (time < 0 || static_cast<std::size_t>(time) >= width) return 0;
  return t_[t_offset_[task] + time];
}

Var VarMap::add_u(CnfFormula& formula, int j) {
  if (j < 0) throw ArgumentError("peak indicator index must be non-negative");
  if (static_cast<int>(u_.size()) <= j) u_.resize(j + 1, 0);
  if (u_[j] == 0) u_[j] = fresh(formula, {VarKind::u, j, -1});
  return u_[j];
}

Var VarMap::u(int j) const { return j >= 0 && j < static_cast<int>(u_.size()) ? u_[j] : 0; }

Var VarMap::add_binu(CnfFormula& formula, int bit) {
  if (static_cast<int>(binu_.size()) <= bit) binu_.resize(bit + 1, 0);
  if (binu_[bit] == 0) binu_[bit] = fresh(formula, {VarKind::binu, bit, -1});
  return binu_[bit];
}

Var VarMap::binu(int bit) const {
  return bit >= 0 && bit < static_cast<int>(binu_.size()) ? binu_[bit] : 0;
}

Var VarMap::fresh(CnfFormula& formula, VarTag tag) {
  tag_aux(formula);
  const Var v = formula.new_var();
  tags_.push_back(tag);
  tagged_.push_back(true);
  return v;
}

void VarMap::tag_aux(const CnfFormula& formula) {
  while (static_cast<int>(tags_.size()) <= formula.var_count()) {
    tags_.push_back({VarKind::aux, -1, -1});
    tagged_.push_back(true);
  }
}

std::optional<VarTag> VarMap::tag(Var v) const {
  if (v <= 0 || v >= static_cast<Var>(tags_.size()) || !tagged_[v]) return std::nullopt;
  return tags_[v];
}

std::size_t VarMap::count(VarKind kind) const {
  return static_cast<std::size_t>(std::count_if(tags_.begin() + 1, tags_.end(),
                                                [kind](const VarTag& t) { return t.kind == kind; }));
}

}  // namespace salbp3pm
