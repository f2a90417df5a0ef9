#include "johnforge/simplex.hpp"

#include <cmath>
#include <vector>

namespace johnforge {
namespace {

constexpr double kPivotTol = 1e-11;

// Tableau rows: m constraint rows + 1 objective row (reduced costs of a
// maximization stored negated, i.e. we minimize -c^T x).
struct Tableau {
  Matrix T;               // (m+1) x (ncols+1), last column is rhs
  std::vector<int> basis;  // basic variable per row
  int m, ncols;

  // Bland: entering = smallest index with negative reduced cost,
  // leaving = smallest basic index among min-ratio rows.
  // Returns false when optimal, throws on unbounded.
  bool pivot_step() {
    int enter = -1;
    for (int j = 0; j < ncols; ++j)
      if (T(m, j) < -kPivotTol) {
        enter = j;
        break;
      }
    if (enter < 0) return false;
    int leave = -1;
    double best_ratio = 0;
    for (int i = 0; i < m; ++i) {
      if (T(i, enter) > kPivotTol) {
        const double ratio = T(i, ncols) / T(i, enter);
        if (leave < 0 || ratio < best_ratio - kPivotTol ||
            (std::abs(ratio - best_ratio) <= kPivotTol &&
             basis[i] < basis[leave]))
          leave = i, best_ratio = ratio;
      }
    }
    if (leave < 0) throw Error("simplex: unbounded");
    do_pivot(leave, enter);
    return true;
  }

  void do_pivot(int row, int col) {
    T.row(row) /= T(row, col);
    for (int i = 0; i <= m; ++i)
      if (i != row && std::abs(T(i, col)) > 0)
        T.row(i) -= T(i, col) * T.row(row);
    basis[row] = col;
  }
};

}  // namespace

LpResult solve_lp(const Matrix& A, const Vector& b, const Vector& c,
                  int max_pivots) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m || c.size() != n)
    throw DimensionMismatch("solve_lp: shape mismatch");

  // Phase 1: minimize the sum of artificial variables.
  Tableau t;
  t.m = m;
  t.ncols = n + m;
  t.T = Matrix::Zero(m + 1, t.ncols + 1);
  t.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    const double s = (b[i] < 0) ? -1.0 : 1.0;
    t.T.block(i, 0, 1, n) = s * A.row(i);
    t.T(i, n + i) = 1.0;
    t.T(i, t.ncols) = s * b[i];
    t.basis[i] = n + i;
  }
  for (int j = 0; j < n; ++j) t.T(m, j) = -t.T.block(0, j, m, 1).sum();
  t.T(m, t.ncols) = -t.T.block(0, t.ncols, m, 1).sum();

  int pivots = 0;
  auto run = [&](Tableau& tab) {
    while (tab.pivot_step())
      if (++pivots > max_pivots) throw MaxPivots("simplex: pivot cap exceeded");
  };
  run(t);
  if (t.T(m, t.ncols) < -1e-7) return {LpStatus::Infeasible, {}, 0.0};

  // Drive any artificial variables out of the basis.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] >= n) {
      int col = -1;
      for (int j = 0; j < n; ++j)
        if (std::abs(t.T(i, j)) > kPivotTol) {
          col = j;
          break;
        }
      if (col >= 0) t.do_pivot(i, col);
      // else: redundant row, its artificial stays basic at zero.
    }
  }

  // Phase 2 on the original columns.
  Tableau t2;
  t2.m = m;
  t2.ncols = n;
  t2.T = Matrix::Zero(m + 1, n + 1);
  t2.T.block(0, 0, m, n) = t.T.block(0, 0, m, n);
  t2.T.block(0, n, m, 1) = t.T.block(0, t.ncols, m, 1);
  t2.basis = t.basis;
  for (int i = 0; i < m; ++i)
    if (t2.basis[i] >= n) t2.basis[i] = -1;  // redundant row marker
  // Objective row: minimize -c, then eliminate basic columns.
  for (int j = 0; j < n; ++j) t2.T(m, j) = -c[j];
  for (int i = 0; i < m; ++i)
    if (t2.basis[i] >= 0 && std::abs(t2.T(m, t2.basis[i])) > 0)
      t2.T.row(m) -= t2.T(m, t2.basis[i]) * t2.T.row(i);

  try {
    run(t2);
  } catch (const Error& e) {
    if (std::string(e.what()).find("unbounded") != std::string::npos)
      return {LpStatus::Unbounded, {}, 0.0};
    throw;
  }

  Vector x = Vector::Zero(n);
  for (int i = 0; i < m; ++i)
    if (t2.basis[i] >= 0) x[t2.basis[i]] = t2.T(i, n);
  const double objective = c.dot(x);
  return {LpStatus::Optimal, std::move(x), objective};
}

}  // namespace johnforge
