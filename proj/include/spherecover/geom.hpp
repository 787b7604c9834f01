#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <vector>

namespace spherecover {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Raised when a point set admits no common open hemisphere.
class NotShortError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Central tolerances. Instances live at unit scale (everything is on the
// sphere), so absolute thresholds are meaningful.
namespace tol {
inline constexpr double kUnit = 1e-9;            // unit-norm slack for sphere points
inline constexpr double kDegeneracy = 1e-9;      // Hadamard-normalized determinant floor
inline constexpr double kSolve = 1e-9;           // linear solve residual budget
inline constexpr double kInteriorMargin = 1e-9;  // strict interiority of barycentric coords
inline constexpr double kFeas = 1e-9;            // feasibility slack of the LP engine
inline constexpr double kShortMargin = 1e-7;     // minimum open-hemisphere margin
inline constexpr double kDist = 1e-6;            // distance <-> membership coupling
inline constexpr double kPerturb = 1e-9;         // perturbation step for singular witness solves
}  // namespace tol

// A point of the n-sphere: a unit vector in R^(n+1).  Constructor enforces
// the unit-norm invariant; use normalized() to project arbitrary vectors.
class SpherePoint {
 public:
  explicit SpherePoint(Vector coords);

  // Normalizes v (must be nonzero) and wraps it.
  static SpherePoint normalized(const Vector& v);

  const Vector& coords() const { return coords_; }
  int ambient_dim() const { return static_cast<int>(coords_.size()); }  // n+1
  int sphere_dim() const { return ambient_dim() - 1; }                  // n

 private:
  Vector coords_;
};

// Angle between unit vectors, in [0, pi].  Throws on dimension mismatch.
double geodesic_distance(const SpherePoint& x, const SpherePoint& y);

// Barycentric coordinates of the origin with respect to k+1 affinely
// independent points spanning R^k: solves sum(l_i v_i) = 0, sum(l_i) = 1.
// Returns nullopt when the points are affinely dependent (rank-revealing
// solve; never regularized).
std::optional<std::vector<double>> try_origin_barycentric(
    const std::vector<Vector>& vertices);

// Determinant of the homogeneous matrix [v_i | 1], divided by the product of
// its row norms.  Scale-free nondegeneracy measure; requires exactly d+1
// points in R^d.
double normalized_simplex_det(const std::vector<Vector>& points);

// Full-dimensional flat simplex: n+2 vectors in R^(n+1), affinely
// independent.  Construction rejects degenerate vertex sets.
class FlatSimplex {
 public:
  explicit FlatSimplex(std::vector<Vector> vertices);
  const std::vector<Vector>& vertices() const { return vertices_; }
  int ambient_dim() const { return static_cast<int>(vertices_.front().size()); }

 private:
  std::vector<Vector> vertices_;
};

// Barycentric coordinates of the origin in s.  Throws when the residual of
// the solve exceeds tol::kSolve (cannot happen for a valid FlatSimplex).
std::vector<double> barycentric_origin(const FlatSimplex& s);

// True when every coordinate exceeds tol::kInteriorMargin.
bool origin_interior(const std::vector<double>& lambda);

// True when the n+2 unit points span a nondegenerate simplex with the origin
// not on any facet hyperplane extension: |normalized det| > tol::kDegeneracy.
// Throws unless exactly dim+1 points of equal dimension are given.
bool simplex_nondegenerate(const std::vector<SpherePoint>& points);

// Chart from the standard flat n-simplex onto a region of the n-sphere.
//
// Short kind: vertices are linearly independent unit vectors admitting a
// common open hemisphere; the chart radially projects convex combinations.
// Hemisphere kind: vertices lie on the equator of `pole` and surround the
// origin inside the equator hyperplane; convex combinations are lifted
// toward the pole by the product of the barycentric coordinates, so the
// image fills the closed hemisphere around `pole`.
enum class ChartKind { kShort, kHemisphere };

class SimplexChart {
 public:
  static SimplexChart make_short(std::vector<SpherePoint> vertices);
  static SimplexChart make_hemisphere(std::vector<SpherePoint> vertices,
                                      SpherePoint pole);

  ChartKind kind() const { return kind_; }
  const std::vector<SpherePoint>& vertices() const { return vertices_; }
  const SpherePoint& pole() const;       // Hemisphere kind only
  const SpherePoint& witness() const;    // Short kind only: hemisphere witness
  int sphere_dim() const { return vertices_.front().sphere_dim(); }

 private:
  SimplexChart(ChartKind kind, std::vector<SpherePoint> vertices,
               std::optional<SpherePoint> pole,
               std::optional<SpherePoint> witness);

  ChartKind kind_;
  std::vector<SpherePoint> vertices_;
  std::optional<SpherePoint> pole_;
  std::optional<SpherePoint> witness_;
};

// Evaluates the chart at barycentric t (size n+1, entries >= -kSolve,
// summing to 1 within kSolve).  Entries are clamped to [0,1] before use.
SpherePoint chart_map(const SimplexChart& chart, const std::vector<double>& t);

// Edgewise (midpoint) subdivision of the standard flat n-simplex at
// resolution 2^depth.  Vertices carry exact integer barycentric coordinates
// (lattice[i] sums to the resolution).  Cells are closed sub-simplices given
// by n+1 vertex ids; the triangulation is face-to-face and cells are listed
// in a canonical deterministic order.
struct Subdivision {
  int n = 0;
  int resolution = 1;  // 2^depth
  std::vector<std::vector<int>> vertex_lattice;
  std::vector<std::vector<double>> vertex_bary;
  std::vector<std::vector<int>> cells;
};

Subdivision subdivide(int n, int depth);

}  // namespace spherecover
