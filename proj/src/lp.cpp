#include "spherecover/lp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace spherecover::lp {

namespace {
constexpr double kPivotTol = 1e-11;
constexpr int kMaxIterations = 50000;
}  // namespace

FeasibilityResult solve_equality_feasibility(const Matrix& A, const Vector& b,
                                             double tol) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m) throw std::invalid_argument("solve_equality_feasibility: size mismatch");

  // Tableau [A' | I | b'] with rows flipped so b' >= 0; artificial variables
  // n..n+m-1 form the starting basis.  The objective row carries the phase-1
  // reduced costs of min(sum of artificials).
  Matrix T = Matrix::Zero(m + 1, n + m + 1);
  for (int i = 0; i < m; ++i) {
    const double sign = (b(i) < 0.0) ? -1.0 : 1.0;
    T.block(i, 0, 1, n) = sign * A.row(i);
    T(i, n + i) = 1.0;
    T(i, n + m) = sign * b(i);
  }
  for (int j = 0; j < n; ++j) T(m, j) = -T.block(0, j, m, 1).sum();
  T(m, n + m) = -T.block(0, n + m, m, 1).sum();

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  int iterations = 0;
  while (iterations < kMaxIterations) {
    // Bland's rule: smallest-index improving column.
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (T(m, j) < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    // Ratio test; ties resolved toward the smallest basis variable (Bland).
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      if (T(i, enter) > kPivotTol) {
        const double ratio = T(i, n + m) / T(i, enter);
        if (leave < 0 || ratio < best_ratio - kPivotTol ||
            (std::abs(ratio - best_ratio) <= kPivotTol && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) break;  // numerically unbounded; cannot happen for phase 1

    // Pivot.
    T.row(leave) /= T(leave, enter);
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = T(i, enter);
      if (f != 0.0) T.row(i) -= f * T.row(leave);
    }
    basis[leave] = enter;
    ++iterations;
  }
  if (iterations >= kMaxIterations) {
    throw std::runtime_error("solve_equality_feasibility: iteration limit hit");
  }

  FeasibilityResult result;
  result.iterations = iterations;
  result.x.assign(n, 0.0);
  double artificial_sum = 0.0;
  for (int i = 0; i < m; ++i) {
    const double value = T(i, n + m);
    if (basis[i] < n) {
      result.x[basis[i]] = std::max(0.0, value);
    } else {
      artificial_sum += std::abs(value);
    }
  }
  result.infeasibility = artificial_sum;
  result.feasible = artificial_sum <= tol;
  return result;
}

}  // namespace spherecover::lp
