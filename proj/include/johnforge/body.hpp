#pragma once

#include <optional>
#include <string>
#include <vector>

#include "johnforge/symspace.hpp"

namespace johnforge {

enum class BodyKind { HPolytope, VPolytope, PNormBall, UnitBall };

/// Convex body with 0 in the interior, exposing the gauge function
/// ||x||_K = inf{ l > 0 : x in l K } and the outward unit normal field.
class ConvexBody {
 public:
  // normals: one unit row per facet <u_j, x> <= h_j, all h_j > 0.
  // Default-constructed bodies are empty placeholders (dim 0); every factory
  // below produces a validated body.
  ConvexBody() = default;

  static ConvexBody hpolytope(Matrix normals, Vector offsets);
  // vertices: one row per vertex; n <= 3; origin strictly interior.
  static ConvexBody vpolytope(Matrix vertices);
  static ConvexBody pnorm_ball(double p, double radius, int dim);
  static ConvexBody unit_ball(int dim);

  BodyKind kind() const { return kind_; }
  int dim() const { return dim_; }

  double gauge(const Vector& x) const;
  Vector normal(const Vector& x) const;

  // Vertices of the polytope variants (HPolytope: enumerated, n <= 3).
  Matrix vertices() const;

  const Matrix& facet_normals() const { return normals_; }
  const Vector& facet_offsets() const { return offsets_; }
  double p() const { return p_; }
  double radius() const { return radius_; }

  std::string to_json() const;
  static ConvexBody from_json(const std::string& text);

 private:
  BodyKind kind_ = BodyKind::UnitBall;
  int dim_ = 0;
  Matrix normals_;   // HPolytope (also cached H-rep for VPolytope)
  Vector offsets_;
  Matrix vertices_;  // VPolytope
  double p_ = 2.0;
  double radius_ = 1.0;
};

/// H-representation of a V-polytope, n <= 3. 2D: angular sort of hull
/// edges; 3D: brute-force facet enumeration over vertex triples.
ConvexBody vpoly_to_hpoly(const ConvexBody& body);

/// Image body A K + v. Polytopes accept any invertible A; ball variants
/// only scalar multiples of orthogonal maps with v = 0.
ConvexBody transform(const ConvexBody& body, const Matrix& A, const Vector& v);

}  // namespace johnforge
