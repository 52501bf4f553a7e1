#include "salbp3pm/peak_layers.hpp"

#include "salbp3pm/encoder.hpp"
#include "salbp3pm/error.hpp"

namespace salbp3pm {

UnaryPeakLayer peak_layer_unary(CnfFormula& formula, VarMap& vars, const Instance& inst, Power lb,
                                Power ub) {
  if (lb > ub) throw ArgumentError("peak layer needs lb <= ub");
  if (lb < 0) lb = 0;
  for (Power j = 1; j <= ub; ++j) vars.add_u(formula, static_cast<int>(j));
  for (Power j = 1; j <= lb; ++j) formula.add_clause({vars.u(static_cast<int>(j))});
  for (Power j = 2; j <= ub; ++j)
    formula.add_clause({-vars.u(static_cast<int>(j)), vars.u(static_cast<int>(j - 1))});
  for (int t = 0; t < inst.cycle_time(); ++t) {
    auto pb = activity_terms(inst, vars, t);
    for (Power j = 1; j <= ub; ++j) {
      pb.lits.push_back(-vars.u(static_cast<int>(j)));
      pb.coefficients.push_back(1);
    }
    pb.bound = ub;
    encode_pb_leq(formula, pb);
  }
  vars.tag_aux(formula);
  return {lb, ub};
}

int binary_bits_for_ub(Power ub) {
  if (ub < 1) throw ArgumentError("upper bound must be positive");
  int bits = 0;
  while ((Power{1} << bits) < ub) ++bits;
  return bits + 1;
}

int binary_bits_for_peak(Power w) {
  if (w < 1) throw ArgumentError("peak must be positive");
  int bits = 0;
  while ((w >> bits) > 1) ++bits;
  return bits + 1;
}

WcnfFormula peak_layer_binary_bits(const CnfFormula& base, VarMap& vars, const Instance& inst,
                                   int bits, Power lb) {
  if (bits < 1 || bits > 62) throw ArgumentError("binary peak layer width out of range");
  WcnfFormula w;
  w.hard = base;
  for (int b = 0; b < bits; ++b) vars.add_binu(w.hard, b);
  PbConstraint floor;
  for (int b = 0; b < bits; ++b) {
    floor.lits.push_back(vars.binu(b));
    floor.coefficients.push_back(Power{1} << b);
  }
  floor.bound = lb;
  encode_pb_geq(w.hard, floor);
  const Power cap = (Power{1} << bits) - 1;
  for (int t = 0; t < inst.cycle_time(); ++t) {
    auto pb = activity_terms(inst, vars, t);
    for (int b = 0; b < bits; ++b) {
      pb.lits.push_back(-vars.binu(b));
      pb.coefficients.push_back(Power{1} << b);
    }
    pb.bound = cap;
    encode_pb_leq(w.hard, pb);
  }
  vars.tag_aux(w.hard);
  for (int b = 0; b < bits; ++b)
    w.soft.push_back({{-vars.binu(b)}, static_cast<std::uint64_t>(Power{1} << b)});
  return w;
}

WcnfFormula peak_layer_binary(const CnfFormula& base, VarMap& vars, const Instance& inst, Power lb,
                              Power ub) {
  if (lb > ub) throw ArgumentError("peak layer needs lb <= ub");
  return peak_layer_binary_bits(base, vars, inst, binary_bits_for_ub(ub), lb);
}

Power decode_binary_peak(const Model& model, const VarMap& vars) {
  Power total = 0;
  for (int b = 0; b < vars.binu_count(); ++b)
    if (model[vars.binu(b)]) total += Power{1} << b;
  return total;
}

int add_indicator_layer(CnfFormula& formula, VarMap& vars, const Instance& inst, Power lb,
                        Power w_best) {
  const Power lo = lb + 1, hi = w_best - 1;
  if (hi < lo) return 0;
  for (Power j = lo; j <= hi; ++j) vars.add_u(formula, static_cast<int>(j));
  for (Power j = lo + 1; j <= hi; ++j)
    formula.add_clause({-vars.u(static_cast<int>(j)), vars.u(static_cast<int>(j - 1))});
  for (int t = 0; t < inst.cycle_time(); ++t) {
    auto pb = activity_terms(inst, vars, t);
    for (Power j = lo; j <= hi; ++j) {
      pb.lits.push_back(-vars.u(static_cast<int>(j)));
      pb.coefficients.push_back(1);
    }
    pb.bound = w_best;
    encode_pb_leq(formula, pb);
  }
  vars.tag_aux(formula);
  return static_cast<int>(hi - lo + 1);
}

}  // namespace salbp3pm
