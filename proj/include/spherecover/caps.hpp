#pragma once

#include "spherecover/geom.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace spherecover {

struct ShortnessWitness {
  SpherePoint direction;  // unit u with <u, g> >= margin for every generator
  double margin = 0.0;    // exact max-min margin: distance from 0 to conv(points)
};

// Best-possible hemisphere witness for a point cloud: the unit vector
// maximizing the minimum inner product against the points.  Returns nullopt
// when the maximum margin does not exceed tol::kShortMargin (the origin lies
// in, or too close to, the convex hull).
std::optional<ShortnessWitness> shortness_witness(
    const std::vector<SpherePoint>& points);

// Closed spherical cap in the convex-cone sense: the intersection of the
// sphere with the cone positively generated by finitely many unit vectors,
// all of which fit in one open hemisphere.  Point set = { normalize(sum
// l_g g) : l >= 0, not all zero }.
class Cap {
 public:
  // Throws NotShortError when no hemisphere witness exists, and
  // std::invalid_argument on empty input or mixed dimensions.
  static Cap make(std::vector<SpherePoint> generators);

  const std::vector<SpherePoint>& generators() const { return generators_; }
  const SpherePoint& witness() const { return witness_; }
  double witness_margin() const { return margin_; }
  int ambient_dim() const { return generators_.front().ambient_dim(); }
  int sphere_dim() const { return ambient_dim() - 1; }

  // Generator matrix (columns) and, when the generators are linearly
  // independent, a cached least-squares factorization used as a fast
  // membership path.
  const Matrix& generator_matrix() const { return gen_matrix_; }
  bool simplicial() const { return simplicial_; }
  const Eigen::ColPivHouseholderQR<Matrix>& qr() const { return qr_; }

 private:
  Cap(std::vector<SpherePoint> generators, SpherePoint witness, double margin);

  std::vector<SpherePoint> generators_;
  SpherePoint witness_;
  double margin_ = 0.0;
  Matrix gen_matrix_;
  bool simplicial_ = false;
  Eigen::ColPivHouseholderQR<Matrix> qr_;
};

Cap make_cap(std::vector<SpherePoint> generators);

// Finite union of caps sharing one hemisphere witness.  Short closed sets
// are represented this way throughout: closed, inside an open hemisphere,
// not necessarily convex.
class ShortSet {
 public:
  // Computes a witness across all generators of all parts; throws
  // NotShortError when none exists.
  static ShortSet make(std::vector<Cap> parts);

  // Accepts a caller-supplied witness (revalidated against every generator).
  // Useful when parts are refinements of a cap whose witness is known.
  static ShortSet make_with_witness(std::vector<Cap> parts,
                                    SpherePoint witness);

  const std::vector<Cap>& parts() const { return parts_; }
  const SpherePoint& witness() const { return witness_; }
  int ambient_dim() const { return parts_.front().ambient_dim(); }
  int sphere_dim() const { return ambient_dim() - 1; }

 private:
  ShortSet(std::vector<Cap> parts, SpherePoint witness);

  std::vector<Cap> parts_;
  SpherePoint witness_;
};

ShortSet make_shortset(std::vector<Cap> parts);

// Membership of x in the cap's point set: exists l >= 0 with
// ||sum l_g g - x|| <= tol::kFeas.  Linearly independent generators use the
// cached factorization; redundant generator sets fall back to the LP engine.
bool cap_membership(const Cap& c, const SpherePoint& x);
bool shortset_membership(const ShortSet& s, const SpherePoint& x);

// Geodesic distance from x to the cap, capped at pi/2: computed as
// arccos <x, p/||p||> with p the Euclidean cone projection of x (pi/2 when
// p = 0, i.e. when every cap point is at angle >= pi/2).  Zero iff member,
// up to the tol::kDist coupling.  Throws when the generator count exceeds
// the face-enumeration limit of the projector.
double cap_distance(const Cap& c, const SpherePoint& x);
double shortset_distance(const ShortSet& s, const SpherePoint& x);

// Spherical convex hull of short point sets, as a cap generated by all the
// input points (no redundancy elimination).  Its point set equals the
// iterated geodesic hull of the inputs.
Cap geodesic_hull(const std::vector<SpherePoint>& points);

// Joint feasibility over k caps: a common nonzero cone point, normalized.
// The returned point passes cap_membership for every input cap; nullopt
// means the point sets intersect in nothing (cones meet only at 0).
std::optional<SpherePoint> intersection_witness(const std::vector<Cap>& caps);

// Closed halfspace H = { x : <a, x> + alpha <= 0 } whose boundary strictly
// separates the cap from the origin-side complement: a = -witness,
// alpha = margin/2, so every generator g has <a, g> + alpha <= -alpha < 0.
struct SeparatingHalfspace {
  Vector a;
  double alpha = 0.0;
};

SeparatingHalfspace separating_halfspace(const Cap& c);

// Deterministic orthonormal basis of the equator hyperplane of h.
Matrix equator_basis(const SpherePoint& h);

// Intersection of the cap's cone with the equator hyperplane of h,
// re-expressed on the (n-1)-sphere via the supplied basis (columns).
// Generators on the equator (|<h,g>| <= tol::kFeas) are kept; every
// plus/minus pair contributes its crossing <h,g+> g-  -  <h,g-> g+.
// Returns nullopt when the cap does not reach the equator.
std::optional<Cap> slice_to_equator(const Cap& c, const SpherePoint& h,
                                    const Matrix& basis);

// Minimum facet slack of x inside the cap's cone (see hull module); zero for
// flat cones.  Used to grade how robustly a witness sits inside a cap.
double cap_interior_margin(const Cap& c, const SpherePoint& x);

}  // namespace spherecover
