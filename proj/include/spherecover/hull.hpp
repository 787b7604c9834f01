#pragma once

#include <Eigen/Dense>

#include <vector>

// Exact small-dimension projectors onto convex hulls and finitely generated
// cones.  Both enumerate candidate faces (subsets of the input points), solve
// the face-relative critical point, and keep the best feasible candidate; a
// Moreau-style optimality test short-circuits the scan.  Sound for the
// ambient dimensions used here (<= 5) and modest generator counts.
namespace spherecover::hull {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct MinNormPoint {
  Vector point;
  double norm = 0.0;
};

// Euclidean minimum-norm point of conv(points).  points must be nonempty and
// of equal dimension.
MinNormPoint min_norm_point(const std::vector<Vector>& points);

struct ConeProjection {
  Vector point;        // projection of x onto cone(generators); may be zero
  double residual = 0.0;  // ||x - point||
};

// Euclidean projection onto cone(generators).  Throws std::invalid_argument
// when generators.size() exceeds enum_limit (face enumeration would blow up).
ConeProjection project_to_cone(const std::vector<Vector>& generators,
                               const Vector& x, int enum_limit = 12);

// Minimum slack of x against the inward facet normals of cone(generators).
// Positive iff x is interior to a full-dimensional cone; returns 0 when the
// generators do not span the ambient space (a flat cone has no interior).
double cone_interior_margin(const std::vector<Vector>& generators,
                            const Vector& x);

// Deterministic orthonormal basis (as columns) of the hyperplane orthogonal
// to the nonzero vector h.
Matrix hyperplane_basis(const Vector& h);

}  // namespace spherecover::hull
