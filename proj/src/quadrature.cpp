#include "johnforge/quadrature.hpp"

#include <cstdlib>
#include <map>
#include <mutex>

namespace johnforge {

int quadrature_threads() {
  static const int cap = [] {
    int t = 1;
#if defined(_OPENMP)
    t = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("JOHN_FORGE_THREADS")) {
      const int v = std::atoi(env);
      if (v >= 1 && v < t) t = v;
    }
    return t;
  }();
  return cap;
}

namespace {

// Newton iteration on P_n with the standard cosine initial guess.
std::vector<std::pair<double, double>> compute_gl(int order) {
  std::vector<std::pair<double, double>> out(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    out[i] = {x, 2.0 / ((1.0 - x * x) * pp * pp)};
  }
  return out;
}

}  // namespace

const std::vector<std::pair<double, double>>& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gl(order)).first;
  return it->second;
}

}  // namespace johnforge
