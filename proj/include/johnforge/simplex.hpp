#pragma once

#include "johnforge/symspace.hpp"

namespace johnforge {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vector x;           // primal solution (Optimal only)
  double objective = 0.0;
};

/// Dense two-phase primal simplex with Bland's anti-cycling rule for
///   max c^T x   s.t.  A x = b,  x >= 0.
/// Sized for tiny problems; throws MaxPivots on the pivot cap.
LpResult solve_lp(const Matrix& A, const Vector& b, const Vector& c,
                  int max_pivots = 100000);

}  // namespace johnforge
