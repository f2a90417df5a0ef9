#include "johnforge/objective.hpp"

#include <cmath>

#include "johnforge/simplex.hpp"

namespace johnforge {

ObjectiveF ObjectiveF::from_name(const std::string& name) {
  if (name == "exp") return exp();
  if (name == "paperconv") return paper_conv();
  if (name == "shiftedsquare") return shifted_square();
  throw InvalidInput("unknown F variant '" + name + "'");
}

std::string ObjectiveF::name() const {
  switch (kind_) {
    case Kind::Exp: return "exp";
    case Kind::PaperConv: return "paperconv";
    case Kind::ShiftedSquare: return "shiftedsquare";
  }
  return "?";
}

// PaperConv is the convolution f * g(-.) of the piecewise-linear pair
//   f(x) = (x+1)_+ restricted as 0 below -1,  g = 1, (1-x)/2, 0.
// Closed form:
//   x <= -2          : 0
//   -2 < x <= 0      : (x+2)^3 / 12
//   x > 0            : x^2/2 + x + 2/3
double ObjectiveF::eval(double x) const {
  switch (kind_) {
    case Kind::Exp:
      return std::exp(x);
    case Kind::PaperConv: {
      if (x <= -2.0) return 0.0;
      if (x <= 0.0) {
        const double u = x + 2.0;
        return u * u * u / 12.0;
      }
      return 0.5 * x * x + x + 2.0 / 3.0;
    }
    case Kind::ShiftedSquare: {
      const double u = std::max(x + 1.0, 0.0);
      return u * u;
    }
  }
  return 0;
}

double ObjectiveF::prime(double x) const {
  switch (kind_) {
    case Kind::Exp:
      return std::exp(x);
    case Kind::PaperConv: {
      if (x <= -2.0) return 0.0;
      if (x <= 0.0) {
        const double u = x + 2.0;
        return u * u / 4.0;
      }
      return x + 1.0;
    }
    case Kind::ShiftedSquare:
      return 2.0 * std::max(x + 1.0, 0.0);
  }
  return 0;
}

double ObjectiveF::second(double x) const {
  switch (kind_) {
    case Kind::Exp:
      return std::exp(x);
    case Kind::PaperConv: {
      if (x <= -2.0) return 0.0;
      if (x <= 0.0) return (x + 2.0) / 2.0;
      return 1.0;
    }
    case Kind::ShiftedSquare:
      return x > -1.0 ? 2.0 : 0.0;
  }
  return 0;
}

void ObjectiveF::self_check() const {
  if (!(prime(0.0) > 0)) throw Error("ObjectiveF: F'(0) must be positive");
  const double h = 1e-3;
  for (int i = -4000; i < 4000; ++i) {
    const double x = i * h;
    if (eval(x) < -1e-15) throw Error("ObjectiveF: F takes negative values");
    if (eval(x + h) < eval(x) - 1e-12)
      throw Error("ObjectiveF: F is not non-decreasing");
    const double mid = eval(x + 0.5 * h);
    if (mid > 0.5 * (eval(x) + eval(x + h)) + 1e-12)
      throw Error("ObjectiveF: F is not convex");
    // strict convexity on [0, inf)
    if (x >= 0.0 && mid >= 0.5 * (eval(x) + eval(x + h)))
      throw Error("ObjectiveF: F is not strictly convex on [0,inf)");
  }
}

DiscreteMeasureProblem::DiscreteMeasureProblem(std::vector<Vector> contacts,
                                               ObjectiveF F)
    : contacts_(std::move(contacts)),
      F_(F),
      chart_(contacts_.empty() ? 2 : static_cast<int>(contacts_[0].size())) {
  if (contacts_.empty())
    throw InvalidInput("DiscreteMeasureProblem: empty contact set");
  for (const auto& xi : contacts_) {
    if (xi.size() != chart_.n())
      throw DimensionMismatch("DiscreteMeasureProblem: mixed dimensions");
    if (std::abs(xi.norm() - 1.0) > 1e-10)
      throw InvalidInput("DiscreteMeasureProblem: contact point not unit norm");
  }
  coords_.reserve(contacts_.size());
  for (const auto& xi : contacts_)
    coords_.push_back(chart_.project(xi * xi.transpose(), xi));
}

double eval_Ic(const DiscreteMeasureProblem& prob, const SymPair& p) {
  if (std::abs(p.M.trace()) > 1e-10)
    throw InvalidInput("eval_Ic: M must be traceless");
  double s = 0;
  for (const auto& xi : prob.contacts())
    s += prob.F().eval(xi.dot(p.M * xi + p.w));
  return s;
}

double eval_Ic_chart(const DiscreteMeasureProblem& prob, const Vector& x) {
  double s = 0;
  for (const auto& a : prob.contact_coords()) s += prob.F().eval(a.dot(x));
  return s;
}

SymPair grad_Ic(const DiscreteMeasureProblem& prob, const SymPair& p) {
  const int n = prob.n();
  Matrix G = Matrix::Zero(n, n);
  Vector g = Vector::Zero(n);
  for (const auto& xi : prob.contacts()) {
    const double fp = prob.F().prime(xi.dot(p.M * xi + p.w));
    G += fp * (xi * xi.transpose());
    g += fp * xi;
  }
  return {std::move(G), std::move(g)};
}

Vector grad_Ic_chart(const DiscreteMeasureProblem& prob, const Vector& x) {
  Vector g = Vector::Zero(x.size());
  for (const auto& a : prob.contact_coords())
    g += prob.F().prime(a.dot(x)) * a;
  return g;
}

Matrix hessian_Ic_chart(const DiscreteMeasureProblem& prob, const Vector& x) {
  Matrix H = Matrix::Zero(x.size(), x.size());
  for (const auto& a : prob.contact_coords())
    H += prob.F().second(a.dot(x)) * (a * a.transpose());
  return H;
}

std::string SolvabilityReport::describe() const {
  switch (kind) {
    case SolvabilityKind::Interior: return "interior";
    case SolvabilityKind::Boundary: return "boundary";
    case SolvabilityKind::Outside: return "outside";
  }
  return "?";
}

SolvabilityReport solvability_check(const std::vector<Vector>& contacts,
                                    double threshold) {
  if (contacts.empty()) throw InvalidInput("solvability_check: no contacts");
  const int n = static_cast<int>(contacts[0].size());
  Chart chart(n);
  const int d = chart.dim();
  const int m = static_cast<int>(contacts.size());
  std::vector<Vector> a;
  a.reserve(m);
  for (const auto& xi : contacts)
    a.push_back(chart.project(xi * xi.transpose(), xi));

  // Rank of {a_i} via singular values.
  Matrix A(d, m);
  for (int i = 0; i < m; ++i) A.col(i) = a[i];
  Eigen::JacobiSVD<Matrix> svd(A);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > threshold) ++rank;
  const bool full_rank = (rank == d);

  // max t  s.t. sum l_i a_i = 0, sum l_i = 1, l_i >= t.
  // Substitute l_i = mu_i + t, mu_i >= 0, t = tp - tm.
  Vector asum = Vector::Zero(d);
  for (const auto& ai : a) asum += ai;
  Matrix LA = Matrix::Zero(d + 1, m + 2);
  Vector lb = Vector::Zero(d + 1), lc = Vector::Zero(m + 2);
  for (int i = 0; i < m; ++i) LA.block(0, i, d, 1) = a[i];
  LA.block(0, m, d, 1) = asum;
  LA.block(0, m + 1, d, 1) = -asum;
  for (int i = 0; i < m; ++i) LA(d, i) = 1.0;
  LA(d, m) = m;
  LA(d, m + 1) = -m;
  lb[d] = 1.0;
  lc[m] = 1.0;
  lc[m + 1] = -1.0;

  SolvabilityReport rep;
  rep.full_rank = full_rank;
  LpResult lp = solve_lp(LA, lb, lc);
  if (lp.status == LpStatus::Optimal) {
    rep.t_star = lp.objective;
    rep.lambda = Vector(m);
    const double t = lp.x[m] - lp.x[m + 1];
    for (int i = 0; i < m; ++i) rep.lambda[i] = lp.x[i] + t;
  }
  // Note: strict positivity of the weights (t* > 0) decides Interior on its
  // own; rank deficiency of {a_i} only means flat directions of I_c (the
  // cross-polytope is the canonical example) and is reported via full_rank.
  if (lp.status == LpStatus::Optimal && lp.objective > threshold) {
    rep.kind = SolvabilityKind::Interior;
    return rep;
  }
  if (lp.status == LpStatus::Optimal && lp.objective >= -threshold) {
    rep.kind = SolvabilityKind::Boundary;
    return rep;
  }

  rep.kind = SolvabilityKind::Outside;
  // Separating witness: maximize e s.t. <a_i, y> <= -e, |y_k| <= 1.
  // Variables: y = yp - ym (d each), e, slacks s_i (m), box slacks (2d).
  {
    const int nv = 2 * d + 1 + m + 2 * d;
    const int nr = m + 2 * d;
    Matrix WA = Matrix::Zero(nr, nv);
    Vector wb = Vector::Zero(nr), wc = Vector::Zero(nv);
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < d; ++k) {
        WA(i, k) = a[i][k];
        WA(i, d + k) = -a[i][k];
      }
      WA(i, 2 * d) = 1.0;            // + e
      WA(i, 2 * d + 1 + i) = 1.0;    // slack
      wb[i] = 0.0;
    }
    for (int k = 0; k < 2 * d; ++k) {
      WA(m + k, k) = 1.0;
      WA(m + k, 2 * d + 1 + m + k) = 1.0;
      wb[m + k] = 1.0;
    }
    wc[2 * d] = 1.0;
    LpResult wlp = solve_lp(WA, wb, wc);
    if (wlp.status == LpStatus::Optimal) {
      Vector y(d);
      for (int k = 0; k < d; ++k) y[k] = wlp.x[k] - wlp.x[d + k];
      rep.witness = chart.from_coords(y);
    }
  }
  return rep;
}

}  // namespace johnforge
