#pragma once

#include "spherecover/caps.hpp"
#include "spherecover/geom.hpp"

#include <cmath>
#include <initializer_list>
#include <vector>

namespace testutil {

inline spherecover::Vector vec(std::initializer_list<double> cs) {
  spherecover::Vector v(static_cast<int>(cs.size()));
  int i = 0;
  for (double c : cs) v(i++) = c;
  return v;
}

inline spherecover::SpherePoint pt(std::initializer_list<double> cs) {
  return spherecover::SpherePoint::normalized(vec(cs));
}

inline spherecover::SpherePoint circle_point_deg(double deg) {
  const double rad = deg * M_PI / 180.0;
  return pt({std::cos(rad), std::sin(rad)});
}

// Cap spanned by the two endpoints of a circle arc (must be shorter than a
// half turn to be a cap).
inline spherecover::Cap arc_cap_deg(double start_deg, double end_deg) {
  return spherecover::Cap::make(
      {circle_point_deg(start_deg), circle_point_deg(end_deg)});
}

inline bool near_point(const spherecover::SpherePoint& a,
                       const spherecover::SpherePoint& b, double tol) {
  return spherecover::geodesic_distance(a, b) <= tol;
}

}  // namespace testutil
