#pragma once

#include <Eigen/Dense>
#include <vector>

#include "johnforge/errors.hpp"

namespace johnforge {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

constexpr double kSymTol = 1e-12;

/// A point (M, w) in sym x R^n with the inner product
/// <(A,v),(B,w)> = tr(A^T B) + <v,w>.
struct SymPair {
  Matrix M;
  Vector w;

  SymPair() = default;
  SymPair(Matrix m, Vector v);

  static SymPair zero(int n) {
    return SymPair(Matrix::Zero(n, n), Vector::Zero(n));
  }

  int dim() const { return static_cast<int>(w.size()); }
  double norm() const;

  SymPair operator+(const SymPair& o) const { return {M + o.M, w + o.w}; }
  SymPair operator-(const SymPair& o) const { return {M - o.M, w - o.w}; }
  SymPair operator*(double t) const { return {M * t, w * t}; }
};

// Rejects matrices farther than kSymTol from symmetric; does not silently
// symmetrize.
void check_symmetric(const Matrix& A, double tol = kSymTol);

double frobenius(const Matrix& A, const Matrix& B);

double inner(const SymPair& p, const SymPair& q);

/// Orthonormal (Frobenius) basis of the traceless symmetric matrices,
/// length n(n+1)/2 - 1.
std::vector<Matrix> basis_sym0(int n);

/// Linear isometry between sym0 x R^n and R^d, d = n(n+3)/2 - 1.
/// The matrix slots come first, the vector components last.
class Chart {
 public:
  explicit Chart(int n);

  int n() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()) + n_; }

  // Requires |tr(M)| <= trace_tol.
  Vector to_coords(const SymPair& p, double trace_tol = kSymTol) const;
  SymPair from_coords(const Vector& x) const;

  // Coords of (S - tr(S)/n I, v): the chart-projection of an arbitrary
  // symmetric S paired with v.
  Vector project(const Matrix& S, const Vector& v) const;

  const std::vector<Matrix>& matrix_basis() const { return basis_; }

 private:
  int n_;
  std::vector<Matrix> basis_;
};

}  // namespace johnforge
