#pragma once

#include <string>
#include <vector>

#include "johnforge/symspace.hpp"

namespace johnforge {

/// Convex integrand F: non-negative, non-decreasing, convex, strictly
/// convex on [0,inf) with F'(0) > 0.
class ObjectiveF {
 public:
  enum class Kind { Exp, PaperConv, ShiftedSquare };

  static ObjectiveF exp() { return ObjectiveF(Kind::Exp); }
  static ObjectiveF paper_conv() { return ObjectiveF(Kind::PaperConv); }
  static ObjectiveF shifted_square() { return ObjectiveF(Kind::ShiftedSquare); }
  static ObjectiveF from_name(const std::string& name);

  Kind kind() const { return kind_; }
  std::string name() const;

  double eval(double x) const;
  double prime(double x) const;
  double second(double x) const;  // a.e. for the piecewise variants

  // Grid check of the convexity/monotonicity hypotheses; throws on failure.
  void self_check() const;

 private:
  explicit ObjectiveF(Kind k) : kind_(k) {}
  Kind kind_;
};

/// Counting-measure instance: finite contact set on S^{n-1} with an
/// integrand F. Caches the chart coordinates of (xi xi^T - I/n, xi).
class DiscreteMeasureProblem {
 public:
  DiscreteMeasureProblem(std::vector<Vector> contacts, ObjectiveF F);

  int n() const { return chart_.n(); }
  int size() const { return static_cast<int>(contacts_.size()); }
  const std::vector<Vector>& contacts() const { return contacts_; }
  const ObjectiveF& F() const { return F_; }
  const Chart& chart() const { return chart_; }
  const std::vector<Vector>& contact_coords() const { return coords_; }

 private:
  std::vector<Vector> contacts_;
  ObjectiveF F_;
  Chart chart_;
  std::vector<Vector> coords_;
};

double eval_Ic(const DiscreteMeasureProblem& prob, const SymPair& p);
double eval_Ic_chart(const DiscreteMeasureProblem& prob, const Vector& x);

/// Raw gradient sum F'(t_i) (xi xi^T, xi) in sym x R^n.
SymPair grad_Ic(const DiscreteMeasureProblem& prob, const SymPair& p);
/// Chart-projected gradient.
Vector grad_Ic_chart(const DiscreteMeasureProblem& prob, const Vector& x);
Matrix hessian_Ic_chart(const DiscreteMeasureProblem& prob, const Vector& x);

enum class SolvabilityKind { Interior, Boundary, Outside };

struct SolvabilityReport {
  SolvabilityKind kind = SolvabilityKind::Outside;
  double t_star = 0.0;     // optimal min-weight margin
  bool full_rank = false;  // contact coords span the chart space
  Vector lambda;           // convex weights (Interior/Boundary)
  SymPair witness;         // separating (M, w) for Outside
  std::string describe() const;
};

/// Classifies whether (I/n, 0) lies in the interior of the convex hull of
/// {(xi xi^T, xi)}, via the LP  max t  s.t.  sum l_i a_i = 0, sum l_i = 1,
/// l_i >= t, with a_i the chart coordinates of the contacts.
SolvabilityReport solvability_check(const std::vector<Vector>& contacts,
                                    double threshold = 1e-9);

}  // namespace johnforge
