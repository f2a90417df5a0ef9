#include "johnforge/loewner.hpp"

#include <cmath>

#include "johnforge/json_out.hpp"

namespace johnforge {

std::string Ellipsoid::to_json() const {
  std::string s = "{\"schema\":\"john-forge/1\",\"Q\":";
  s += jsonout::mat(Q);
  s += ",\"center\":";
  s += jsonout::vec(center);
  s += "}";
  return s;
}

std::string ContactSet::to_json() const {
  std::string s = "{\"schema\":\"john-forge/1\",\"full_sphere\":";
  s += full_sphere ? "true" : "false";
  s += ",\"points\":[";
  for (size_t i = 0; i < points.size(); ++i) {
    if (i) s += ",";
    s += jsonout::vec(points[i]);
  }
  s += "],\"tol\":";
  s += jsonout::num(tol);
  s += "}";
  return s;
}

MveeResult mvee(const Matrix& points, double eps, long max_iter,
                double support_threshold_scale) {
  const int m = static_cast<int>(points.rows());
  const int n = static_cast<int>(points.cols());
  if (!(eps > 0) || eps > 0.1) throw InvalidInput("mvee: eps must be in (0, 0.1]");
  if (m < n + 1) throw DegenerateInput("mvee: too few points");

  // Lifted points q_i = (p_i, 1); affine-span check via rank.
  Matrix Q(n + 1, m);
  Q.block(0, 0, n, m) = points.transpose();
  Q.row(n).setOnes();
  {
    Eigen::JacobiSVD<Matrix> svd(Q);
    const auto& sv = svd.singularValues();
    if (sv[sv.size() - 1] < 1e-10 * sv[0])
      throw DegenerateInput("mvee: points do not affinely span R^n");
  }

  Vector u = Vector::Constant(m, 1.0 / m);
  const double target = n + 1;
  MveeResult res;
  long it = 0;
  for (; it < max_iter; ++it) {
    Matrix X = Q * u.asDiagonal() * Q.transpose();
    Matrix Xinv = X.inverse();
    // kappa_i = q_i^T X^{-1} q_i
    Vector kappa(m);
    for (int i = 0; i < m; ++i) kappa[i] = Q.col(i).dot(Xinv * Q.col(i));

    int jp;
    const double kmax = kappa.maxCoeff(&jp);
    // Away candidate: smallest kappa over the current support.
    int jm = -1;
    double kmin = 1e300;
    for (int i = 0; i < m; ++i)
      if (u[i] > 1e-12 && kappa[i] < kmin) {
        kmin = kappa[i];
        jm = i;
      }
    // (p_i - c)^T Q (p_i - c) = (kappa_i - 1)/n exactly, so measuring the
    // violation in units of n makes eps the containment guarantee itself.
    const double up_viol = (kmax - target) / n;
    const double down_viol = (target - kmin) / n;
    if (up_viol <= eps && down_viol <= eps) break;

    if (up_viol >= down_viol) {
      const double beta = (kmax - target) / (target * (kmax - 1.0));
      u *= (1.0 - beta);
      u[jp] += beta;
    } else {
      double beta = (kmin - target) / (target * (kmin - 1.0));  // negative
      beta = std::max(beta, -u[jm] / (1.0 - u[jm]));
      u *= (1.0 - beta);
      u[jm] += beta;
    }
  }
  if (it >= max_iter) throw MaxIterations("mvee: iteration cap exceeded");

  Vector c = points.transpose() * u;
  Matrix S = points.transpose() * u.asDiagonal() * points - c * c.transpose();
  res.ellipsoid.Q = S.inverse() / n;
  res.ellipsoid.Q = 0.5 * (res.ellipsoid.Q + res.ellipsoid.Q.transpose());
  res.ellipsoid.center = c;
  res.dual_weights = u;
  res.iterations = static_cast<int>(it);
  const double thr = support_threshold_scale / m;
  for (int i = 0; i < m; ++i)
    if (u[i] > thr) res.support.push_back(i);
  return res;
}

LoewnerPosition to_loewner(const ConvexBody& body, double eps) {
  const int n = body.dim();
  switch (body.kind()) {
    case BodyKind::UnitBall:
      return {body, Matrix::Identity(n, n), Vector::Zero(n)};
    case BodyKind::PNormBall: {
      // Loewner ball radius of the p-ball: R n^(1/2 - 1/p) for p >= 2,
      // R for p <= 2 (farthest points sit on the diagonals resp. the axes).
      const double p = body.p();
      const double rho =
          body.radius() * std::pow(double(n), std::max(0.0, 0.5 - 1.0 / p));
      Matrix A = Matrix::Identity(n, n) / rho;
      return {transform(body, A, Vector::Zero(n)), A, Vector::Zero(n)};
    }
    case BodyKind::HPolytope:
    case BodyKind::VPolytope: {
      Matrix V = body.vertices();
      MveeResult mv = mvee(V, eps);
      // Map x -> Q^(1/2) (x - c): the spd factor of the positioning map.
      Eigen::SelfAdjointEigenSolver<Matrix> es(mv.ellipsoid.Q);
      if (es.eigenvalues().minCoeff() <= 0)
        throw DegenerateInput("to_loewner: MVEE shape matrix not positive");
      Matrix A = es.operatorSqrt();
      Vector v = -A * mv.ellipsoid.center;
      return {transform(body, A, v), A, v};
    }
  }
  throw InvalidInput("to_loewner: unreachable");
}

ContactSet contact_points(const ConvexBody& body, double tol) {
  const int n = body.dim();
  ContactSet cs;
  cs.tol = tol;
  cs.dim = n;
  switch (body.kind()) {
    case BodyKind::UnitBall:
      cs.full_sphere = true;
      return cs;
    case BodyKind::PNormBall: {
      if (body.p() == 2.0) {
        if (std::abs(body.radius() - 1.0) > tol)
          throw InvalidInput("contact_points: ball not in Loewner position");
        cs.full_sphere = true;
        return cs;
      }
      if (body.p() > 2.0) {
        // Diagonal contact points (+-1, ..., +-1)/sqrt(n).
        const int count = 1 << n;
        for (int mask = 0; mask < count; ++mask) {
          Vector xi(n);
          for (int k = 0; k < n; ++k)
            xi[k] = ((mask >> k) & 1 ? 1.0 : -1.0) / std::sqrt(double(n));
          cs.points.push_back(xi);
        }
      } else {
        for (int k = 0; k < n; ++k) {
          Vector xi = Vector::Zero(n);
          xi[k] = 1.0;
          cs.points.push_back(xi);
          cs.points.push_back(-xi);
        }
      }
      break;
    }
    case BodyKind::HPolytope:
    case BodyKind::VPolytope: {
      Matrix V = body.vertices();
      for (int i = 0; i < V.rows(); ++i) {
        Vector v = V.row(i).transpose();
        const double len = v.norm();
        if (len >= 1.0 - tol && len <= 1.0 + tol) cs.points.push_back(v / len);
      }
      break;
    }
  }
  for (const auto& xi : cs.points)
    if (std::abs(body.gauge(xi) - 1.0) > 10 * tol + 1e-9)
      throw InvalidInput("contact_points: candidate not on the body boundary");
  if (static_cast<int>(cs.points.size()) < n + 1)
    throw TooFewContacts("contact_points: fewer than n+1 contacts found");
  return cs;
}

}  // namespace johnforge
