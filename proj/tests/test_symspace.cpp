#include <doctest.h>

#include <random>

#include "johnforge/symspace.hpp"

using namespace johnforge;

TEST_CASE("basis_sym0 is orthonormal and traceless") {
  for (int n : {2, 3, 4, 5}) {
    auto basis = basis_sym0(n);
    const int d = n * (n + 1) / 2 - 1;
    CHECK(static_cast<int>(basis.size()) == d);
    for (size_t i = 0; i < basis.size(); ++i) {
      CHECK(std::abs(basis[i].trace()) < 1e-14);
      CHECK((basis[i] - basis[i].transpose()).norm() < 1e-14);
      for (size_t j = 0; j < basis.size(); ++j) {
        const double g = frobenius(basis[i], basis[j]);
        CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("chart round-trip is the identity and an isometry") {
  std::mt19937 rng(7);
  std::normal_distribution<double> gauss;
  for (int n : {2, 3, 4}) {
    Chart chart(n);
    CHECK(chart.dim() == n * (n + 3) / 2 - 1);
    for (int rep = 0; rep < 20; ++rep) {
      Matrix S(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) S(i, j) = S(j, i) = gauss(rng);
      S -= (S.trace() / n) * Matrix::Identity(n, n);
      Vector w(n);
      for (int i = 0; i < n; ++i) w[i] = gauss(rng);
      SymPair p(S, w);

      Vector x = chart.to_coords(p);
      SymPair q = chart.from_coords(x);
      CHECK((q.M - p.M).norm() < 1e-12);
      CHECK((q.w - p.w).norm() < 1e-12);
      CHECK(std::abs(x.norm() - p.norm()) < 1e-12);
    }
  }
}

TEST_CASE("project removes the trace part only") {
  Chart chart(3);
  Matrix S(3, 3);
  S << 2, 1, 0, 1, -1, 0.5, 0, 0.5, 4;
  Vector v(3);
  v << 1, 2, 3;
  SymPair p = chart.from_coords(chart.project(S, v));
  Matrix expected = S - (S.trace() / 3.0) * Matrix::Identity(3, 3);
  CHECK((p.M - expected).norm() < 1e-12);
  CHECK((p.w - v).norm() < 1e-12);
}

TEST_CASE("inner product satisfies Cauchy-Schwarz") {
  std::mt19937 rng(11);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 50; ++rep) {
    Matrix A(3, 3), B(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j <= i; ++j) {
        A(i, j) = A(j, i) = gauss(rng);
        B(i, j) = B(j, i) = gauss(rng);
      }
    Vector u(3), v(3);
    for (int i = 0; i < 3; ++i) {
      u[i] = gauss(rng);
      v[i] = gauss(rng);
    }
    SymPair p(A, u), q(B, v);
    CHECK(std::abs(inner(p, q)) <= p.norm() * q.norm() + 1e-12);
  }
}

TEST_CASE("check_symmetric rejects asymmetry") {
  Matrix A(2, 2);
  A << 1, 2, 3, 4;
  CHECK_THROWS_AS(check_symmetric(A), Error);
  CHECK_THROWS_AS(SymPair(A, Vector::Zero(2)), Error);
}
