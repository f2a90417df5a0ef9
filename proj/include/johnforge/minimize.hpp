#pragma once

#include "johnforge/objective.hpp"

namespace johnforge {

struct MinimizeConfig {
  double grad_tol = 1e-10;
  int max_iter = 500;
  double armijo_c1 = 1e-4;
  double backtrack = 0.5;
  SymPair start;  // empty -> (0, 0)
};

enum class MinimizeStatus { Converged, NotCoercive, MaxIter };

struct MinimizeResult {
  MinimizeStatus status = MinimizeStatus::MaxIter;
  SymPair minimizer;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
};

/// Minimizes I_c over sym_0 x R^n in chart coordinates: damped Newton with
/// Armijo backtracking, gradient fallback on near-singular Hessians.
/// Escaping rays (coercivity failure) surface as NotCoercive.
MinimizeResult minimize_Ic(const DiscreteMeasureProblem& prob,
                           const MinimizeConfig& cfg = {});

/// True iff the Hessian at the minimizer is definite (min eigenvalue
/// > 1e-9) and the contact configuration is solvable in the interior sense.
bool certify_uniqueness(const DiscreteMeasureProblem& prob,
                        const MinimizeResult& result);

}  // namespace johnforge
