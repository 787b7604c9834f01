#pragma once

#include "spherecover/caps.hpp"
#include "spherecover/geom.hpp"

#include <optional>
#include <vector>

namespace spherecover {

// Diagnostics for the simplex spanned by the n+2 subfamily witnesses.
struct SimplexConditions {
  bool nondegenerate = false;
  std::vector<double> origin_barycentric;  // empty when witnesses are missing
  bool origin_interior = false;
};

// Shared family diagnostics for n+2 caps (or short sets) on the n-sphere:
//   condition_i:  the whole family has empty intersection;
//   condition_ii: every subfamily leaving one member out intersects, with a
//                 witness point per left-out index;
//   condition_iii: the witnesses span a nondegenerate simplex containing the
//                 origin strictly inside.
// margins grade each witness by its smallest interior slack across the caps
// it certifies; a margin below 10 * tol::kFeas marks the result fragile.
struct FamilyConditions {
  bool condition_i = false;
  std::optional<SpherePoint> common_point;  // set when condition_i fails
  bool condition_ii = false;
  std::vector<std::optional<SpherePoint>> witnesses;
  SimplexConditions condition_iii;
  std::vector<double> margins;
  bool fragile = false;
};

// For caps, condition_i + condition_ii certify that the family covers the
// sphere (and condition_iii then holds automatically; it is re-checked and a
// violation raises std::logic_error as a bug signal).
struct CoverCertificate : FamilyConditions {
  bool certified = false;
};

// For general short sets the same conditions are necessary for covering but
// no longer sufficient; conditions_hold only reports that no necessary
// condition refutes the cover.
struct ShortSetFamilyReport : FamilyConditions {
  bool conditions_hold = false;
};

// The n+2 caps obtained by radially projecting the facets of a flat simplex
// whose vertices are unit points surrounding the origin: cap j is generated
// by every vertex except v_j.  Throws when the vertex count is not n+2 or
// the origin is not strictly interior.
std::vector<Cap> facet_caps(const std::vector<SpherePoint>& vertices);

// Decides cover/no-cover for exactly n+2 caps via the joint feasibility
// engine.  Deterministic; per-subfamily checks may run in parallel.
CoverCertificate cover_certificate(const std::vector<Cap>& caps);

// A point not covered by k <= n+1 caps.  k <= n: any unit vector orthogonal
// to every cap witness.  k = n+1: solve <u_i, x> = -1 and normalize,
// perturbing (seeded from the instance, up to 16 retries) when the witness
// matrix is singular.  The returned point is re-verified to be a non-member
// of every cap; std::invalid_argument on k > n+1.
SpherePoint uncovered_witness(const std::vector<Cap>& caps);

// Same conditions for n+2 short sets; set intersections are expanded over
// all selections of one part per set (pairwise prefilter + joint LP).
// Throws std::invalid_argument when the selection count would exceed 10^6.
ShortSetFamilyReport shortset_family_check(const std::vector<ShortSet>& sets);

}  // namespace spherecover
