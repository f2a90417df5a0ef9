#pragma once

#include <string>
#include <vector>

#include "johnforge/body.hpp"

namespace johnforge {

/// { x : (x - c)^T Q (x - c) <= 1 } with Q symmetric positive-definite.
struct Ellipsoid {
  Matrix Q;
  Vector center;
  std::string to_json() const;
};

struct MveeResult {
  Ellipsoid ellipsoid;
  Vector dual_weights;        // probability vector over the input points
  std::vector<int> support;   // indices with u_i above the weight threshold
  int iterations = 0;
};

/// Khachiyan barycentric ascent with Wolfe-Atwood away steps. Every input
/// point p ends up with (p-c)^T Q (p-c) <= 1 + eps.
MveeResult mvee(const Matrix& points, double eps,
                long max_iter = 1'000'000,
                double support_threshold_scale = 1e-6);

struct LoewnerPosition {
  ConvexBody body;  // A K + v, whose MVEE is the unit ball within eps
  Matrix A;         // symmetric positive-definite factor
  Vector v;
};

LoewnerPosition to_loewner(const ConvexBody& body, double eps);

struct ContactSet {
  std::vector<Vector> points;  // unit vectors, empty when full_sphere
  double tol = 0.0;
  bool full_sphere = false;
  int dim = 0;
  std::string to_json() const;
};

/// Contact points of a Loewner-positioned body with the unit sphere.
/// Polytopes: vertices in the unit-norm tol band, renormalized.
/// UnitBall (and p = 2 balls): full-sphere marker.
ContactSet contact_points(const ConvexBody& body, double tol);

}  // namespace johnforge
