#pragma once

#include <functional>
#include <string>
#include <vector>

#include "johnforge/body.hpp"
#include "johnforge/objective.hpp"
#include "johnforge/quadrature.hpp"

namespace johnforge::flow {

// The fixed profile pair: f(x) = (x+1) for x > -1 and 0 below;
// g = 1 below -1, (1-x)/2 on (-1,1), 0 above. f * g(-.) is
// ObjectiveF::paper_conv.
double f_profile(double x);
double f_prime_profile(double x);  // a.e.
double g_profile(double x);

// h_r(s) = h((s - 1)/(1 - r)).
inline double rescale(double s, double r) { return (s - 1.0) / (1.0 - r); }
inline double fr(double s, double r) { return f_profile(rescale(s, r)); }
inline double gr(double s, double r) { return g_profile(rescale(s, r)); }
inline double fpr(double s, double r) { return f_prime_profile(rescale(s, r)); }

// Grid check of the f1-f4 / g1-g5 properties; throws on failure.
void profile_self_check();

struct QuadConfig {
  PolarRule rule;             // base rule; refinement doubles the angle count
  bool refine = true;
  double target = 1e-6;
  long max_nodes = 1L << 27;  // total integrand evaluations before giving up
  bool parallel = true;
};

/// L_r(A, v) = 1/(1-r) Int f_r(|Ax + v|) g_r(||x||_K) dx,  n = 2.
double Lr_eval(const ConvexBody& body, double r, const Matrix& A,
               const Vector& v, const QuadConfig& quad = {});

/// I_r(M, w) with the deformation (I + (1-r)M)^{-1}(x - (1-r)w).
double Ir_eval(const ConvexBody& body, double r, const Matrix& M,
               const Vector& w, const QuadConfig& quad = {});

/// I_1(M, w) = Int_S F(<xi, M xi + w>) dxi over the full sphere
/// (the K = unit ball case). n = 2 (circle trapezoid) or 3 (product rule).
double I1_sphere(const ObjectiveF& F, const Matrix& M, const Vector& w,
                 int n_nodes = 2048);

struct Stationarity {
  Matrix T;
  Vector b;
  double lambda = 0.0;
  double iso_residual = 0.0;     // ||T - lambda I||_F / lambda
  double center_residual = 0.0;  // |b| / lambda
};

/// First-order residuals of the constrained minimum: the matrix and vector
/// integrals whose stationary values are lambda I and 0.
Stationarity stationarity_residual(const ConvexBody& body, double r,
                                   const Matrix& A, const Vector& v,
                                   const QuadConfig& quad = {});

struct FlowResult {
  double r = 0.0;
  Matrix A;   // spd, det = 1
  Vector v;
  Matrix M;   // (A - I)/(1 - r)
  Vector w;   // v/(1 - r)
  double value = 0.0;
  double lambda = 0.0;
  double iso_residual = 0.0;
  double center_residual = 0.0;
  int iterations = 0;
  std::string to_json() const;
};

struct FlowMinimizeConfig {
  QuadConfig quad = {.rule = {512, 12}, .refine = false};
  double grad_tol = 3e-5;
  int max_iter = 150;
  double fd_step = 3e-4;
};

/// Minimizes L_r over (SL cap sym_+) x R^n for n = 2, parametrizing
/// A = exp(sum x_i B_i) over the traceless symmetric basis (det = 1 exact).
/// BFGS with central-difference gradients and Armijo backtracking.
FlowResult minimize_Lr(const ConvexBody& body, double r,
                       const FlowMinimizeConfig& cfg = {});

struct DerivativeRow {
  double r = 0.0;
  Vector slope;      // chart coords of ((A_r, v_r) - (I, 0))/(r - 1)
  double deviation;  // || slope + (M0, w0) ||
};

/// Theorem-level finite-difference check of d(A_r, v_r)/dr at r = 1
/// against -(M0, w0).
std::vector<DerivativeRow> derivative_check(const ConvexBody& body,
                                            const std::vector<double>& rs,
                                            const SymPair& minimizer_I1,
                                            const FlowMinimizeConfig& cfg = {});

using TestFunction = std::function<double(const Vector&)>;

struct WeakConvergenceRow {
  double r = 0.0;
  double value = 0.0;   // 1/(1-r) Int delta (f')_r/|x| g_r(...) dx
  double limit = 0.0;   // Int_S delta(xi) F'(<xi, M0 xi + w0>) dxi
  double deviation = 0.0;
};

/// Weak-convergence check along the linear curve A = I + (1-r)M0,
/// v = (1-r)w0; K = unit ball, n = 2.
std::vector<WeakConvergenceRow> weak_convergence_check(
    const ConvexBody& body, const TestFunction& delta,
    const std::vector<double>& rs, const SymPair& minimizer_I1,
    const QuadConfig& quad = {});

}  // namespace johnforge::flow
