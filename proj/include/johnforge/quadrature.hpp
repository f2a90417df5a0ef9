#pragma once

#include <cmath>
#include <vector>

#include "johnforge/symspace.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace johnforge {

/// Thread cap for the parallel kernels; honors JOHN_FORGE_THREADS.
int quadrature_threads();

/// Gauss-Legendre nodes/weights on [-1, 1], cached per order.
const std::vector<std::pair<double, double>>& gauss_legendre(int order);

/// Polar product rule over the plane: uniform angles (periodic trapezoid =
/// plain average), radial Gauss-Legendre per smooth segment. The caller
/// supplies, per angle, the sorted radial breakpoints delimiting segments
/// on which the integrand is smooth (integrand kinks land on segment ends).
///
/// The integrand writes k values into `out` at the point (x, y); the
/// Jacobian factor rho is applied by the kernel. Per-angle partials are
/// reduced in index order, so serial and parallel kernels agree exactly
/// for a given angle count.
struct PolarRule {
  int n_ang = 512;
  int gl_order = 12;
};

namespace detail {

// Seg: void seg(double theta, std::vector<double>& breaks)
// W:   void w(double x, double y, double* out)
template <class Seg, class W>
inline void polar_angle_partial(int k, double theta, int gl_order, Seg&& seg,
                                W&& w, double* partial, double* scratch,
                                std::vector<double>& breaks) {
  for (int c = 0; c < k; ++c) partial[c] = 0.0;
  breaks.clear();
  seg(theta, breaks);
  if (breaks.size() < 2) return;
  const double cth = std::cos(theta), sth = std::sin(theta);
  const auto& gl = gauss_legendre(gl_order);
  for (size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s], b = breaks[s + 1];
    if (!(b > a)) continue;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (const auto& [node, weight] : gl) {
      const double rho = mid + half * node;
      w(rho * cth, rho * sth, scratch);
      const double fac = weight * half * rho;
      for (int c = 0; c < k; ++c) partial[c] += fac * scratch[c];
    }
  }
}

}  // namespace detail

template <class Seg, class W>
Vector polar_integrate_serial(const PolarRule& rule, int k, Seg&& seg, W&& w) {
  const double dth = 2.0 * M_PI / rule.n_ang;
  std::vector<double> partial(k), scratch(k), breaks;
  Vector total = Vector::Zero(k);
  for (int j = 0; j < rule.n_ang; ++j) {
    detail::polar_angle_partial(k, j * dth, rule.gl_order, seg, w,
                                partial.data(), scratch.data(), breaks);
    for (int c = 0; c < k; ++c) total[c] += partial[c];
  }
  return total * dth;
}

template <class Seg, class W>
Vector polar_integrate_omp(const PolarRule& rule, int k, Seg&& seg, W&& w) {
  const double dth = 2.0 * M_PI / rule.n_ang;
  std::vector<double> partials(static_cast<size_t>(rule.n_ang) * k);
#if defined(_OPENMP)
#pragma omp parallel num_threads(quadrature_threads())
  {
    std::vector<double> scratch(k), breaks;
#pragma omp for schedule(static)
    for (int j = 0; j < rule.n_ang; ++j)
      detail::polar_angle_partial(k, j * dth, rule.gl_order, seg, w,
                                  &partials[static_cast<size_t>(j) * k],
                                  scratch.data(), breaks);
  }
#else
  std::vector<double> scratch(k), breaks;
  for (int j = 0; j < rule.n_ang; ++j)
    detail::polar_angle_partial(k, j * dth, rule.gl_order, seg, w,
                                &partials[static_cast<size_t>(j) * k],
                                scratch.data(), breaks);
#endif
  Vector total = Vector::Zero(k);
  for (int j = 0; j < rule.n_ang; ++j)
    for (int c = 0; c < k; ++c)
      total[c] += partials[static_cast<size_t>(j) * k + c];
  return total * dth;
}

template <class Seg, class W>
Vector polar_integrate(const PolarRule& rule, int k, Seg&& seg, W&& w,
                       bool parallel = true) {
  if (parallel) return polar_integrate_omp(rule, k, seg, w);
  return polar_integrate_serial(rule, k, seg, w);
}

}  // namespace johnforge
