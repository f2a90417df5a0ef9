#include "johnforge/minimize.hpp"

#include <cmath>

namespace johnforge {
namespace {

constexpr double kEscapeNorm = 1e6;
constexpr double kPlateauRate = 1e-14;
constexpr double kHessianFloor = 1e-8;

}  // namespace

MinimizeResult minimize_Ic(const DiscreteMeasureProblem& prob,
                           const MinimizeConfig& cfg) {
  const Chart& chart = prob.chart();
  Vector x;
  if (cfg.start.dim() == 0)
    x = Vector::Zero(chart.dim());
  else
    x = chart.to_coords(cfg.start, 1e-10);

  MinimizeResult res;
  // Coercive (Interior) configurations satisfy I_c >= F(0) everywhere: with
  // probability weights lambda_i, sum lambda_i a_i = 0, Jensen gives
  // sum_i F(a_i.y) >= sum_i lambda_i F(a_i.y) >= F(0). Dropping below that
  // floor certifies an escaping ray even when the gradient has decayed
  // below tolerance along it.
  const double coercive_floor = 0.5 * prob.F().eval(0.0);
  double fx = eval_Ic_chart(prob, x);
  for (int it = 0; it < cfg.max_iter; ++it) {
    res.iterations = it + 1;
    Vector g = grad_Ic_chart(prob, x);
    res.grad_norm = g.norm();
    if (res.grad_norm <= cfg.grad_tol) {
      res.status = fx < coercive_floor ? MinimizeStatus::NotCoercive
                                       : MinimizeStatus::Converged;
      break;
    }

    Matrix H = hessian_Ic_chart(prob, x);
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    // Regularized Newton: clamp the (nonnegative, by convexity) eigenvalues
    // at the floor so flat directions get long, Armijo-guarded steps instead
    // of degrading to slow plain gradient descent.
    Vector clamped = es.eigenvalues().cwiseMax(kHessianFloor);
    Vector step = -es.eigenvectors() *
                  (es.eigenvectors().transpose() * g).cwiseQuotient(clamped);

    // Armijo backtracking; when the unit step is accepted, expand so that
    // escaping rays reach the NotCoercive norm threshold quickly.
    const double slope = g.dot(step);
    double alpha = 1.0;
    double fnew = eval_Ic_chart(prob, x + alpha * step);
    if (fnew <= fx + cfg.armijo_c1 * alpha * slope) {
      // Expand only while the decrease stays near-linear in alpha (true on
      // an escaping ray, false close to a quadratic minimum, where doubling
      // the Newton step would stall convergence by overshooting).
      while (fnew <= fx + 0.5 * alpha * slope) {
        const double a2 = 2.0 * alpha;
        const double f2 = eval_Ic_chart(prob, x + a2 * step);
        if (!(f2 <= fx + 0.5 * a2 * slope) ||
            (x + a2 * step).norm() > 10 * kEscapeNorm)
          break;
        alpha = a2;
        fnew = f2;
      }
    } else {
      while (fnew > fx + cfg.armijo_c1 * alpha * slope && alpha > 1e-16) {
        alpha *= cfg.backtrack;
        fnew = eval_Ic_chart(prob, x + alpha * step);
      }
    }

    const double decrease = fx - fnew;
    x += alpha * step;
    fx = fnew;
    const double rate =
        decrease / std::max(1.0, std::abs(fx)) / (alpha * step.norm());
    if (x.norm() > kEscapeNorm && rate < kPlateauRate) {
      res.status = MinimizeStatus::NotCoercive;
      break;
    }
  }
  res.minimizer = chart.from_coords(x);
  res.value = fx;
  res.grad_norm = grad_Ic_chart(prob, x).norm();
  if (res.status != MinimizeStatus::Converged &&
      res.status != MinimizeStatus::NotCoercive) {
    if (fx < coercive_floor)
      res.status = MinimizeStatus::NotCoercive;
    else
      res.status = res.grad_norm <= cfg.grad_tol ? MinimizeStatus::Converged
                                                 : MinimizeStatus::MaxIter;
  }
  return res;
}

bool certify_uniqueness(const DiscreteMeasureProblem& prob,
                        const MinimizeResult& result) {
  if (result.status != MinimizeStatus::Converged)
    throw InvalidInput("certify_uniqueness: result is not converged");
  Vector x = prob.chart().to_coords(result.minimizer, 1e-10);
  Matrix H = hessian_Ic_chart(prob, x);
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  if (es.eigenvalues().minCoeff() <= 1e-9) return false;
  return solvability_check(prob.contacts()).kind == SolvabilityKind::Interior;
}

}  // namespace johnforge
