#include "johnforge/flow.hpp"

#include <algorithm>
#include <cmath>

#include "johnforge/json_out.hpp"

namespace johnforge::flow {

double f_profile(double x) { return x <= -1.0 ? 0.0 : x + 1.0; }
double f_prime_profile(double x) { return x <= -1.0 ? 0.0 : 1.0; }
double g_profile(double x) {
  if (x <= -1.0) return 1.0;
  if (x >= 1.0) return 0.0;
  return 0.5 * (1.0 - x);
}

void profile_self_check() {
  const double h = 1e-3;
  for (int i = -3000; i <= 3000; ++i) {
    const double x = i * h;
    if (x <= -1.0 && f_profile(x) != 0.0)
      throw Error("profile: f must vanish on (-inf,-1]");
    if (x > -1.0 && !(f_profile(x + h) > f_profile(x)))
      throw Error("profile: f must be strictly increasing on [-1,inf)");
    if (g_profile(x) < 0 || g_profile(x + h) > g_profile(x) + 1e-15)
      throw Error("profile: g must be non-increasing and non-negative");
    if (x <= -1.0 && g_profile(x) != 1.0) throw Error("profile: g != 1 below -1");
    if (x >= 1.0 && g_profile(x) != 0.0) throw Error("profile: g != 0 above 1");
    if (x > -1.0 + h && x < 1.0 - h && !(g_profile(x) > 0))
      throw Error("profile: g must be positive on (-1,1)");
  }
}

namespace {

struct Gauge2 {
  const ConvexBody* body;
  double operator()(double x, double y) const {
    switch (body->kind()) {
      case BodyKind::UnitBall:
        return std::hypot(x, y);
      case BodyKind::PNormBall: {
        const double p = body->p();
        const double s =
            std::pow(std::abs(x), p) + std::pow(std::abs(y), p);
        return std::pow(s, 1.0 / p) / body->radius();
      }
      default: {
        const auto& U = body->facet_normals();
        const auto& h = body->facet_offsets();
        double g = 0;
        for (int j = 0; j < U.rows(); ++j)
          g = std::max(g, (U(j, 0) * x + U(j, 1) * y) / h[j]);
        return g;
      }
    }
  }
};

void push_if_inside(double rho, double lo, double hi, std::vector<double>& br) {
  if (rho > lo + 1e-13 && rho < hi - 1e-13) br.push_back(rho);
}

// Roots of |rho p + q| = c.
void sphere_ray_breaks(double px, double py, double qx, double qy, double c,
                       double lo, double hi, std::vector<double>& br) {
  const double a = px * px + py * py;
  const double b = 2.0 * (px * qx + py * qy);
  const double e = qx * qx + qy * qy - c * c;
  const double disc = b * b - 4 * a * e;
  if (disc <= 0 || a == 0) return;
  const double sq = std::sqrt(disc);
  push_if_inside((-b - sq) / (2 * a), lo, hi, br);
  push_if_inside((-b + sq) / (2 * a), lo, hi, br);
}

// Kink radii of g_r(||rho p + q||_K): threshold crossings at gauge = c_lo
// and c_hi, plus facet-switch radii for polytopes.
void gauge_ray_breaks(const ConvexBody& body, const Eigen::Vector2d& p,
                      const Eigen::Vector2d& q, double c_lo, double c_hi,
                      double lo, double hi, std::vector<double>& br) {
  switch (body.kind()) {
    case BodyKind::UnitBall:
      sphere_ray_breaks(p[0], p[1], q[0], q[1], c_lo, lo, hi, br);
      sphere_ray_breaks(p[0], p[1], q[0], q[1], c_hi, lo, hi, br);
      return;
    case BodyKind::PNormBall: {
      Gauge2 gauge{&body};
      auto phi = [&](double rho) {
        return gauge(rho * p[0] + q[0], rho * p[1] + q[1]);
      };
      // Convex in rho: locate the minimum, then bisect each monotone side.
      double a = lo, b = hi;
      for (int it = 0; it < 200; ++it) {
        const double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
        if (phi(m1) < phi(m2)) b = m2; else a = m1;
      }
      const double rmin = 0.5 * (a + b);
      auto bisect = [&](double x0, double x1, double c) {
        double f0 = phi(x0) - c, f1 = phi(x1) - c;
        if (f0 * f1 >= 0) return;
        for (int it = 0; it < 100; ++it) {
          const double xm = 0.5 * (x0 + x1);
          if ((phi(xm) - c) * f0 <= 0) x1 = xm; else x0 = xm;
        }
        push_if_inside(0.5 * (x0 + x1), lo, hi, br);
      };
      for (double c : {c_lo, c_hi}) {
        bisect(lo, rmin, c);
        bisect(rmin, hi, c);
      }
      return;
    }
    default: {
      const auto& U = body.facet_normals();
      const auto& h = body.facet_offsets();
      const int m = static_cast<int>(U.rows());
      std::vector<double> alpha(m), beta(m);
      for (int j = 0; j < m; ++j) {
        alpha[j] = (U(j, 0) * p[0] + U(j, 1) * p[1]) / h[j];
        beta[j] = (U(j, 0) * q[0] + U(j, 1) * q[1]) / h[j];
      }
      for (int j = 0; j < m; ++j) {
        if (std::abs(alpha[j]) < 1e-14) continue;
        push_if_inside((c_lo - beta[j]) / alpha[j], lo, hi, br);
        push_if_inside((c_hi - beta[j]) / alpha[j], lo, hi, br);
      }
      for (int j = 0; j < m; ++j)
        for (int k = j + 1; k < m; ++k)
          if (std::abs(alpha[j] - alpha[k]) > 1e-14)
            push_if_inside((beta[k] - beta[j]) / (alpha[j] - alpha[k]), lo, hi,
                           br);
      return;
    }
  }
}

void finish_breaks(double lo, double hi, std::vector<double>& br) {
  br.push_back(lo);
  br.push_back(hi);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end(),
                       [](double a, double b) { return b - a < 1e-13; }),
           br.end());
}

double max_radius(const ConvexBody& body) {
  switch (body.kind()) {
    case BodyKind::UnitBall:
      return 1.0;
    case BodyKind::PNormBall:
      return body.radius() *
             std::pow(double(body.dim()),
                      std::max(0.0, 0.5 - 1.0 / body.p()));
    default: {
      Matrix V = body.vertices();
      double r = 0;
      for (int i = 0; i < V.rows(); ++i) r = std::max(r, V.row(i).norm());
      return r;
    }
  }
}

void check_flow_args(const ConvexBody& body, double r) {
  if (body.dim() != 2)
    throw InvalidInput("flow quadrature supports n = 2 only");
  if (!(r > 0.5 && r < 1.0))
    throw InvalidInput("flow: r must lie in (1/2, 1)");
}

// Doubles the angular resolution until two refinements agree.
template <class Eval>
Vector refine_loop(const QuadConfig& q, Eval&& eval) {
  PolarRule rule = q.rule;
  Vector prev = eval(rule);
  if (!q.refine) return prev;
  long nodes = static_cast<long>(rule.n_ang) * rule.gl_order * 8;
  while (true) {
    rule.n_ang *= 2;
    nodes += static_cast<long>(rule.n_ang) * rule.gl_order * 8;
    if (nodes > q.max_nodes)
      throw QuadratureBudgetExceeded("flow quadrature: node budget exceeded");
    Vector cur = eval(rule);
    if ((cur - prev).cwiseAbs().maxCoeff() <= q.target) return cur;
    prev = cur;
  }
}

}  // namespace

double Lr_eval(const ConvexBody& body, double r, const Matrix& A,
               const Vector& v, const QuadConfig& quad) {
  check_flow_args(body, r);
  // A need not be symmetric here: L_r(OA, Ov) = L_r(A, v) for orthogonal O,
  // and the invariance tests exercise exactly that. Invertibility is enough.
  if (std::abs(A.determinant()) < 1e-12)
    throw InvalidInput("Lr_eval: A must be invertible");
  const double a00 = A(0, 0), a01 = A(0, 1), a10 = A(1, 0), a11 = A(1, 1);
  const double v0 = v[0], v1 = v[1];
  const double inv1mr = 1.0 / (1.0 - r);
  Gauge2 gauge{&body};

  auto seg = [&](double theta, std::vector<double>& br) {
    const double cx = std::cos(theta), cy = std::sin(theta);
    const double gth = gauge(cx, cy);
    const double hi = (2.0 - r) / gth;
    // g_r kink where gauge crosses r (linear along central rays).
    push_if_inside(r / gth, 0.0, hi, br);
    // f_r kink where |A x + v| crosses r.
    sphere_ray_breaks(a00 * cx + a01 * cy, a10 * cx + a11 * cy, v0, v1, r, 0.0,
                      hi, br);
    finish_breaks(0.0, hi, br);
  };
  auto w = [&](double x, double y, double* out) {
    const double s1 = std::hypot(a00 * x + a01 * y + v0, a10 * x + a11 * y + v1);
    out[0] = inv1mr * fr(s1, r) * gr(gauge(x, y), r);
  };
  return refine_loop(quad, [&](const PolarRule& rule) {
    return polar_integrate(rule, 1, seg, w, quad.parallel);
  })[0];
}

double Ir_eval(const ConvexBody& body, double r, const Matrix& M,
               const Vector& w, const QuadConfig& quad) {
  check_flow_args(body, r);
  Matrix B = Matrix::Identity(2, 2) + (1.0 - r) * M;
  const double det = B.determinant();
  if (std::abs(det) < 1e-12)
    throw SingularDeformation("Ir_eval: I + (1-r)M is singular");
  Matrix Binv = B.inverse();
  const Eigen::Vector2d u = (1.0 - r) * w;
  const double smaxB = B.jacobiSvd().singularValues().maxCoeff();
  const double inv1mr = 1.0 / (1.0 - r);
  Gauge2 gauge{&body};
  const double rad = max_radius(body);
  const double hi_bound = u.norm() + (2.0 - r) * smaxB * rad + 1e-9;

  auto seg = [&](double theta, std::vector<double>& br) {
    const Eigen::Vector2d xi(std::cos(theta), std::sin(theta));
    const Eigen::Vector2d p = Binv * xi;
    const Eigen::Vector2d q = -(Binv * u);
    gauge_ray_breaks(body, p, q, r, 2.0 - r, r, hi_bound, br);
    finish_breaks(r, hi_bound, br);
  };
  auto wf = [&](double x, double y, double* out) {
    const double rho = std::hypot(x, y);
    const double yx = Binv(0, 0) * (x - u[0]) + Binv(0, 1) * (y - u[1]);
    const double yy = Binv(1, 0) * (x - u[0]) + Binv(1, 1) * (y - u[1]);
    out[0] = inv1mr * fr(rho, r) * gr(gauge(yx, yy), r);
  };
  return refine_loop(quad, [&](const PolarRule& rule) {
    return polar_integrate(rule, 1, seg, wf, quad.parallel);
  })[0];
}

double I1_sphere(const ObjectiveF& F, const Matrix& M, const Vector& w,
                 int n_nodes) {
  const int n = static_cast<int>(w.size());
  if (n == 2) {
    double s = 0;
    for (int j = 0; j < n_nodes; ++j) {
      const double th = 2.0 * M_PI * j / n_nodes;
      Eigen::Vector2d xi(std::cos(th), std::sin(th));
      s += F.eval(xi.dot(M * xi + w));
    }
    return s * 2.0 * M_PI / n_nodes;
  }
  if (n == 3) {
    // Product rule: Simpson in z = cos(phi), trapezoid in theta.
    const int nz = 200, nt = std::max(64, n_nodes / 8);
    const double hz = 2.0 / nz;
    double s = 0;
    for (int i = 0; i <= nz; ++i) {
      const double z = -1.0 + i * hz;
      const double sw = (i == 0 || i == nz) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      const double rz = std::sqrt(std::max(0.0, 1.0 - z * z));
      double ring = 0;
      for (int j = 0; j < nt; ++j) {
        const double th = 2.0 * M_PI * j / nt;
        Eigen::Vector3d xi(rz * std::cos(th), rz * std::sin(th), z);
        ring += F.eval(xi.dot(M * xi + w));
      }
      s += sw * ring * 2.0 * M_PI / nt;
    }
    return s * hz / 3.0;
  }
  throw InvalidInput("I1_sphere: n must be 2 or 3");
}

Stationarity stationarity_residual(const ConvexBody& body, double r,
                                   const Matrix& A, const Vector& v,
                                   const QuadConfig& quad) {
  check_flow_args(body, r);
  Matrix Ainv = A.inverse();
  const Eigen::Vector2d vv(v[0], v[1]);
  const double smaxA = A.jacobiSvd().singularValues().maxCoeff();
  const double inv1mr = 1.0 / (1.0 - r);
  Gauge2 gauge{&body};
  const double hi_bound = vv.norm() + (2.0 - r) * smaxA * max_radius(body) + 1e-9;

  auto seg = [&](double theta, std::vector<double>& br) {
    const Eigen::Vector2d xi(std::cos(theta), std::sin(theta));
    const Eigen::Vector2d p = Ainv * xi;
    const Eigen::Vector2d q = -(Ainv * vv);
    gauge_ray_breaks(body, p, q, r, 2.0 - r, r, hi_bound, br);
    finish_breaks(r, hi_bound, br);
  };
  auto wf = [&](double x, double y, double* out) {
    const double rho = std::hypot(x, y);
    const double yx = Ainv(0, 0) * (x - vv[0]) + Ainv(0, 1) * (y - vv[1]);
    const double yy = Ainv(1, 0) * (x - vv[0]) + Ainv(1, 1) * (y - vv[1]);
    const double s = inv1mr * fpr(rho, r) / rho * gr(gauge(yx, yy), r);
    out[0] = s * x * x;
    out[1] = s * x * y;
    out[2] = s * y * y;
    out[3] = s * x;
    out[4] = s * y;
  };
  Vector I = refine_loop(quad, [&](const PolarRule& rule) {
    return polar_integrate(rule, 5, seg, wf, quad.parallel);
  });

  Stationarity st;
  st.T = Matrix(2, 2);
  st.T << I[0], I[1], I[1], I[2];
  st.b = Vector(2);
  st.b << I[3], I[4];
  st.lambda = st.T.trace() / 2.0;
  st.iso_residual =
      (st.T - st.lambda * Matrix::Identity(2, 2)).norm() / st.lambda;
  st.center_residual = st.b.norm() / st.lambda;
  return st;
}

std::string FlowResult::to_json() const {
  std::string s = "{\"r\":" + jsonout::num(r);
  s += ",\"A\":" + jsonout::mat(A);
  s += ",\"v\":" + jsonout::vec(v);
  s += ",\"M\":" + jsonout::mat(M);
  s += ",\"w\":" + jsonout::vec(w);
  s += ",\"value\":" + jsonout::num(value);
  s += ",\"iso_residual\":" + jsonout::num(iso_residual);
  s += ",\"center_residual\":" + jsonout::num(center_residual);
  s += ",\"lambda\":" + jsonout::num(lambda);
  s += "}";
  return s;
}

FlowResult minimize_Lr(const ConvexBody& body, double r,
                       const FlowMinimizeConfig& cfg) {
  check_flow_args(body, r);
  const auto basis = basis_sym0(2);
  auto A_of = [&](const Vector& x) {
    Matrix S = x[0] * basis[0] + x[1] * basis[1];
    Eigen::SelfAdjointEigenSolver<Matrix> es(S);
    return Matrix(es.eigenvectors() *
                  es.eigenvalues().array().exp().matrix().asDiagonal() *
                  es.eigenvectors().transpose());
  };
  auto phi = [&](const Vector& x) {
    return Lr_eval(body, r, A_of(x), x.tail(2), cfg.quad);
  };
  auto fdgrad = [&](const Vector& x) {
    Vector g(4);
    for (int i = 0; i < 4; ++i) {
      Vector xp = x, xm = x;
      xp[i] += cfg.fd_step;
      xm[i] -= cfg.fd_step;
      g[i] = (phi(xp) - phi(xm)) / (2.0 * cfg.fd_step);
    }
    return g;
  };

  Vector x = Vector::Zero(4);
  double fx = phi(x);
  Vector g = fdgrad(x);
  Matrix Hinv = Matrix::Identity(4, 4);
  int it = 0;
  for (; it < cfg.max_iter && g.norm() > cfg.grad_tol; ++it) {
    Vector d = -(Hinv * g);
    if (d.dot(g) > -1e-18) {
      Hinv = Matrix::Identity(4, 4);
      d = -g;
    }
    double alpha = 1.0;
    const double slope = g.dot(d);
    double fn = phi(x + alpha * d);
    while (fn > fx + 1e-4 * alpha * slope && alpha > 1e-12) {
      alpha *= 0.5;
      fn = phi(x + alpha * d);
    }
    if (alpha <= 1e-12) break;
    Vector xn = x + alpha * d;
    Vector gn = fdgrad(xn);
    Vector s = xn - x, yv = gn - g;
    const double sy = s.dot(yv);
    if (sy > 1e-14) {
      Matrix V = Matrix::Identity(4, 4) - (s * yv.transpose()) / sy;
      Hinv = V * Hinv * V.transpose() + (s * s.transpose()) / sy;
    }
    x = xn;
    fx = fn;
    g = gn;
  }

  FlowResult res;
  res.r = r;
  res.A = A_of(x);
  res.v = x.tail(2);
  res.M = (res.A - Matrix::Identity(2, 2)) / (1.0 - r);
  res.w = res.v / (1.0 - r);
  res.value = fx;
  res.iterations = it;
  QuadConfig fine = cfg.quad;
  fine.rule.n_ang = std::max(fine.rule.n_ang, 2048);
  fine.refine = false;
  Stationarity st = stationarity_residual(body, r, res.A, res.v, fine);
  res.lambda = st.lambda;
  res.iso_residual = st.iso_residual;
  res.center_residual = st.center_residual;
  return res;
}

std::vector<DerivativeRow> derivative_check(const ConvexBody& body,
                                            const std::vector<double>& rs,
                                            const SymPair& minimizer_I1,
                                            const FlowMinimizeConfig& cfg) {
  std::vector<DerivativeRow> rows;
  for (double r : rs) {
    FlowResult fr = minimize_Lr(body, r, cfg);
    DerivativeRow row;
    row.r = r;
    // ((A_r, v_r) - (I, 0))/(r - 1) = (-M_r, -w_r)
    row.slope = Vector(5);
    row.slope << -fr.M(0, 0), -fr.M(0, 1), -fr.M(1, 1), -fr.w[0], -fr.w[1];
    const double dm = (-fr.M + minimizer_I1.M).norm();
    const double dv = (-fr.w + minimizer_I1.w).norm();
    row.deviation = std::sqrt(dm * dm + dv * dv);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<WeakConvergenceRow> weak_convergence_check(
    const ConvexBody& body, const TestFunction& delta,
    const std::vector<double>& rs, const SymPair& minimizer_I1,
    const QuadConfig& quad) {
  check_flow_args(body, rs.empty() ? 0.75 : rs[0]);
  const ObjectiveF F = ObjectiveF::paper_conv();
  // Limit integral over the sphere (full contact set: unit-ball fixture).
  double limit = 0;
  {
    const int N = 4096;
    for (int j = 0; j < N; ++j) {
      const double th = 2.0 * M_PI * j / N;
      Eigen::Vector2d xi(std::cos(th), std::sin(th));
      Vector xv(2);
      xv << xi[0], xi[1];
      limit += delta(xv) *
               F.prime(xi.dot(minimizer_I1.M * xi + minimizer_I1.w));
    }
    limit *= 2.0 * M_PI / N;
  }

  std::vector<WeakConvergenceRow> rows;
  Gauge2 gauge{&body};
  for (double r : rs) {
    Matrix Abar = Matrix::Identity(2, 2) + (1.0 - r) * minimizer_I1.M;
    Vector vbar = (1.0 - r) * minimizer_I1.w;
    Matrix Ainv = Abar.inverse();
    const Eigen::Vector2d vv(vbar[0], vbar[1]);
    const double smax = Abar.jacobiSvd().singularValues().maxCoeff();
    const double hi_bound =
        vv.norm() + (2.0 - r) * smax * max_radius(body) + 1e-9;
    const double inv1mr = 1.0 / (1.0 - r);

    auto seg = [&](double theta, std::vector<double>& br) {
      const Eigen::Vector2d xi(std::cos(theta), std::sin(theta));
      const Eigen::Vector2d p = Ainv * xi;
      const Eigen::Vector2d q = -(Ainv * vv);
      gauge_ray_breaks(body, p, q, r, 2.0 - r, r, hi_bound, br);
      finish_breaks(r, hi_bound, br);
    };
    auto wf = [&](double x, double y, double* out) {
      const double rho = std::hypot(x, y);
      const double yx = Ainv(0, 0) * (x - vv[0]) + Ainv(0, 1) * (y - vv[1]);
      const double yy = Ainv(1, 0) * (x - vv[0]) + Ainv(1, 1) * (y - vv[1]);
      Vector xv(2);
      xv << x, y;
      out[0] = inv1mr * fpr(rho, r) / rho * gr(gauge(yx, yy), r) * delta(xv);
    };
    WeakConvergenceRow row;
    row.r = r;
    row.value = refine_loop(quad, [&](const PolarRule& rule) {
      return polar_integrate(rule, 1, seg, wf, quad.parallel);
    })[0];
    row.limit = limit;
    row.deviation = std::abs(row.value - limit);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace johnforge::flow
