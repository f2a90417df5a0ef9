// Timing comparison of the serial and OpenMP polar quadrature kernels on a
// representative flow integrand (L_r over the cross-polytope).

#include <chrono>
#include <cstdio>

#include "johnforge/body.hpp"
#include "johnforge/flow.hpp"

using namespace johnforge;

namespace {

double time_one(const ConvexBody& body, double r, bool parallel, int n_ang,
                int reps, double* value) {
  flow::QuadConfig quad;
  quad.rule = {n_ang, 12};
  quad.refine = false;
  quad.parallel = parallel;
  Matrix A = Matrix::Identity(2, 2);
  A(0, 0) = 1.05;
  A(1, 1) = 1.0 / 1.05;
  Vector v(2);
  v << 0.01, -0.02;

  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    *value = flow::Lr_eval(body, r, A, v, quad);
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main() {
  Matrix V(4, 2);
  V << 1, 0, -1, 0, 0, 1, 0, -1;
  ConvexBody body = ConvexBody::vpolytope(V);

  std::printf("threads available: %d\n", quadrature_threads());
  std::printf("%8s %10s %12s %12s %8s %10s\n", "n_ang", "r", "serial[s]",
              "omp[s]", "speedup", "|diff|");
  for (int n_ang : {512, 2048, 8192}) {
    for (double r : {0.9, 0.99}) {
      double vs = 0, vp = 0;
      const double ts = time_one(body, r, false, n_ang, 3, &vs);
      const double tp = time_one(body, r, true, n_ang, 3, &vp);
      std::printf("%8d %10.2f %12.6f %12.6f %8.2fx %10.2e\n", n_ang, r, ts,
                  tp, ts / tp, std::abs(vs - vp));
    }
  }
  return 0;
}
