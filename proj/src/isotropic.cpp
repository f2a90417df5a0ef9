#include "johnforge/isotropic.hpp"

#include <cmath>

#include "johnforge/json_out.hpp"

namespace johnforge {
namespace {

void compute_residuals(IsotropicMeasure& m) {
  const int n = m.dim();
  Matrix S = Matrix::Zero(n, n);
  Vector b = Vector::Zero(n);
  for (size_t i = 0; i < m.points.size(); ++i) {
    S += m.weights[static_cast<int>(i)] * (m.points[i] * m.points[i].transpose());
    b += m.weights[static_cast<int>(i)] * m.points[i];
  }
  m.lambda = m.weights.sum() / n;
  m.residual_iso = (S - m.lambda * Matrix::Identity(n, n)).norm();
  m.residual_center = b.norm();
}

}  // namespace

IsotropicMeasure extract_weights(const DiscreteMeasureProblem& prob,
                                 const SymPair& minimizer) {
  IsotropicMeasure m;
  m.points = prob.contacts();
  m.weights = Vector(prob.size());
  for (int i = 0; i < prob.size(); ++i) {
    const Vector& xi = prob.contacts()[i];
    m.weights[i] = prob.F().prime(xi.dot(minimizer.M * xi + minimizer.w));
  }
  if (m.weights.maxCoeff() <= 0)
    throw AllZeroWeights("extract_weights: F' vanished at every contact");
  compute_residuals(m);
  return m;
}

VerificationReport verify_john(const IsotropicMeasure& meas, double tol) {
  VerificationReport rep;
  rep.tol = tol;
  rep.lambda = meas.lambda;
  rep.residual_iso = meas.residual_iso;
  rep.residual_center = meas.residual_center;
  rep.min_weight = meas.weights.size() ? meas.weights.minCoeff() : 0.0;
  rep.pass = meas.residual_iso <= tol * meas.lambda &&
             meas.residual_center <= tol * meas.total_mass() &&
             rep.min_weight >= -1e-14;
  return rep;
}

IsotropicMeasure normalize_to_lambda(const IsotropicMeasure& meas,
                                     double target_lambda) {
  if (!(meas.lambda > 0))
    throw NonpositiveLambda("normalize_to_lambda: lambda must be positive");
  IsotropicMeasure out = meas;
  const double s = target_lambda / meas.lambda;
  out.weights *= s;
  out.lambda *= s;
  out.residual_iso *= s;
  out.residual_center *= s;
  return out;
}

std::string measure_report_json(const IsotropicMeasure& meas,
                                const VerificationReport& rep) {
  // Weights below 1e-14 are clamped to 0 for presentation only.
  std::string s = "{\"schema\":\"john-forge/1\",\"lambda\":";
  s += jsonout::num(meas.lambda);
  s += ",\"weights\":[";
  for (int i = 0; i < meas.weights.size(); ++i) {
    if (i) s += ",";
    const double c = meas.weights[i];
    s += jsonout::num(std::abs(c) < 1e-14 ? 0.0 : c);
  }
  s += "],\"points\":[";
  for (size_t i = 0; i < meas.points.size(); ++i) {
    if (i) s += ",";
    s += jsonout::vec(meas.points[i]);
  }
  s += "],\"residual_iso\":";
  s += jsonout::num(rep.residual_iso);
  s += ",\"residual_center\":";
  s += jsonout::num(rep.residual_center);
  s += ",\"pass\":";
  s += rep.pass ? "true" : "false";
  s += "}";
  return s;
}

}  // namespace johnforge
