#pragma once

#include <vector>

#include "salbp3pm/cnf.hpp"
#include "salbp3pm/instance.hpp"
#include "salbp3pm/solver.hpp"
#include "salbp3pm/varmap.hpp"

namespace salbp3pm {

/// Unary peak indicators u(1..ub): u(j) for j <= lb fixed true, u(j) => u(j-1),
/// and per time slot sum w_i A(i,t) + sum_j not u(j) <= ub. A model with k
/// false indicators therefore keeps every slot at or below ub - k.
struct UnaryPeakLayer {
  Power lb = 0;
  Power ub = 0;
};

UnaryPeakLayer peak_layer_unary(CnfFormula& formula, VarMap& vars, const Instance& inst, Power lb,
                                Power ub);

/// Number of bits ceil(log2 ub) + 1 used when the layer is sized from an upper bound.
int binary_bits_for_ub(Power ub);
/// floor(log2 w) + 1, the width used when the layer is sized from a witnessed peak.
int binary_bits_for_peak(Power w);

/// Binary peak B = sum 2^b binU(b) with soft units (not binU(b), 2^b), hard
/// B >= lb and per time slot sum w_i A(i,t) + sum 2^b not binU(b) <= 2^bits - 1.
/// `base` is copied into the hard part; binU variables are allocated in that copy.
WcnfFormula peak_layer_binary_bits(const CnfFormula& base, VarMap& vars, const Instance& inst,
                                   int bits, Power lb);
WcnfFormula peak_layer_binary(const CnfFormula& base, VarMap& vars, const Instance& inst, Power lb,
                              Power ub);

Power decode_binary_peak(const Model& model, const VarMap& vars);

/// Indicators u(j) for j in lb+1 .. w_best-1 with u(j) => u(j-1) and per slot
/// sum_j not u(j) + sum w_i A(i,t) <= w_best. Asserting not u(W-1) caps every
/// slot at W - 1. Returns the number of indicators.
int add_indicator_layer(CnfFormula& formula, VarMap& vars, const Instance& inst, Power lb,
                        Power w_best);

}  // namespace salbp3pm
