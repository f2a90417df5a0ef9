#pragma once

#include <string>
#include <vector>

#include "johnforge/objective.hpp"

namespace johnforge {

/// Weighted contact points satisfying (up to residuals)
///   sum c_i xi_i (x) xi_i = lambda I,   sum c_i xi_i = 0.
struct IsotropicMeasure {
  std::vector<Vector> points;
  Vector weights;          // c_i >= 0
  double lambda = 0.0;     // sum c_i / n by construction
  double residual_iso = 0.0;
  double residual_center = 0.0;

  int dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
  double total_mass() const { return weights.sum(); }
};

struct VerificationReport {
  bool pass = false;
  double lambda = 0.0;
  double residual_iso = 0.0;
  double residual_center = 0.0;
  double min_weight = 0.0;
  double tol = 0.0;
};

/// Weights c_i = F'(<xi_i, M0 xi_i + w0>) at the minimizer.
IsotropicMeasure extract_weights(const DiscreteMeasureProblem& prob,
                                 const SymPair& minimizer);

VerificationReport verify_john(const IsotropicMeasure& meas, double tol = 1e-8);

IsotropicMeasure normalize_to_lambda(const IsotropicMeasure& meas,
                                     double target_lambda);

std::string measure_report_json(const IsotropicMeasure& meas,
                                const VerificationReport& rep);

}  // namespace johnforge
