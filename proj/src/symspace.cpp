#include "johnforge/symspace.hpp"

#include <cmath>

namespace johnforge {

SymPair::SymPair(Matrix m, Vector v) : M(std::move(m)), w(std::move(v)) {
  if (M.rows() != M.cols() || M.rows() != w.size())
    throw DimensionMismatch("SymPair: matrix/vector dimensions disagree");
  if (M.rows() < 2) throw InvalidInput("SymPair: dim must be >= 2");
  check_symmetric(M);
}

double SymPair::norm() const {
  return std::sqrt(M.squaredNorm() + w.squaredNorm());
}

void check_symmetric(const Matrix& A, double tol) {
  if (A.rows() != A.cols())
    throw DimensionMismatch("check_symmetric: matrix not square");
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > tol)
    throw InvalidInput("matrix is not symmetric within tolerance");
}

double frobenius(const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw DimensionMismatch("frobenius: dimension mismatch");
  return (A.array() * B.array()).sum();
}

double inner(const SymPair& p, const SymPair& q) {
  return frobenius(p.M, q.M) + p.w.dot(q.w);
}

std::vector<Matrix> basis_sym0(int n) {
  if (n < 2) throw InvalidInput("basis_sym0: n must be >= 2");
  std::vector<Matrix> basis;
  basis.reserve(n * (n + 1) / 2 - 1);
  // Diagonal part: Gram-Schmidt of diag(e_kk - e_{k+1,k+1}) yields
  // diag(1,...,1,-k,0,...,0)/sqrt(k(k+1)).
  for (int k = 1; k < n; ++k) {
    Matrix B = Matrix::Zero(n, n);
    const double s = 1.0 / std::sqrt(double(k) * (k + 1));
    for (int i = 0; i < k; ++i) B(i, i) = s;
    B(k, k) = -k * s;
    basis.push_back(B);
  }
  // Symmetrized off-diagonal pairs.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix B = Matrix::Zero(n, n);
      B(i, j) = B(j, i) = 1.0 / std::sqrt(2.0);
      basis.push_back(B);
    }
  return basis;
}

Chart::Chart(int n) : n_(n), basis_(basis_sym0(n)) {}

Vector Chart::to_coords(const SymPair& p, double trace_tol) const {
  if (p.dim() != n_) throw DimensionMismatch("Chart::to_coords: wrong dim");
  if (std::abs(p.M.trace()) > trace_tol)
    throw InvalidInput("Chart::to_coords: matrix trace violates tolerance");
  Vector x(dim());
  const int k = static_cast<int>(basis_.size());
  for (int i = 0; i < k; ++i) x[i] = frobenius(basis_[i], p.M);
  x.tail(n_) = p.w;
  return x;
}

SymPair Chart::from_coords(const Vector& x) const {
  if (x.size() != dim())
    throw DimensionMismatch("Chart::from_coords: wrong coordinate length");
  Matrix M = Matrix::Zero(n_, n_);
  const int k = static_cast<int>(basis_.size());
  for (int i = 0; i < k; ++i) M += x[i] * basis_[i];
  return SymPair(std::move(M), x.tail(n_));
}

Vector Chart::project(const Matrix& S, const Vector& v) const {
  if (S.rows() != n_ || v.size() != n_)
    throw DimensionMismatch("Chart::project: wrong dim");
  Vector x(dim());
  const int k = static_cast<int>(basis_.size());
  for (int i = 0; i < k; ++i) x[i] = frobenius(basis_[i], S);
  x.tail(n_) = v;
  return x;
}

}  // namespace johnforge
