#pragma once

#include <Eigen/Dense>

#include <vector>

// Dense phase-1 simplex solver for linear feasibility: find x >= 0 with
// A x = b.  Bland's rule guarantees termination under the heavy degeneracy
// these systems produce (most right-hand sides are zero).  Problem sizes stay
// tiny: a handful of rows, at most a few dozen columns.
namespace spherecover::lp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct FeasibilityResult {
  bool feasible = false;
  std::vector<double> x;       // candidate solution (meaningful when feasible)
  double infeasibility = 0.0;  // residual sum of artificial variables
  int iterations = 0;
};

FeasibilityResult solve_equality_feasibility(const Matrix& A, const Vector& b,
                                             double tol);

}  // namespace spherecover::lp
