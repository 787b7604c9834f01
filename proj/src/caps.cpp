#include "spherecover/caps.hpp"

#include "spherecover/hull.hpp"
#include "spherecover/lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace spherecover {

namespace {

void check_points(const std::vector<SpherePoint>& pts, const char* what) {
  if (pts.empty()) throw std::invalid_argument(std::string(what) + ": empty point list");
  const int d = pts.front().ambient_dim();
  for (const auto& p : pts) {
    if (p.ambient_dim() != d) {
      throw std::invalid_argument(std::string(what) + ": mixed dimensions");
    }
  }
}

std::vector<Vector> coords_of(const std::vector<SpherePoint>& pts) {
  std::vector<Vector> vs;
  vs.reserve(pts.size());
  for (const auto& p : pts) vs.push_back(p.coords());
  return vs;
}

// Deduplicate near-identical points (exact duplicates plus fp dust); keeps
// first occurrences in order.
std::vector<Vector> dedup(const std::vector<Vector>& vs) {
  std::vector<Vector> out;
  for (const auto& v : vs) {
    bool seen = false;
    for (const auto& u : out) {
      if ((u - v).norm() <= 1e-12) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(v);
  }
  return out;
}

}  // namespace

std::optional<ShortnessWitness> shortness_witness(
    const std::vector<SpherePoint>& points) {
  check_points(points, "shortness_witness");
  const auto mn = hull::min_norm_point(dedup(coords_of(points)));
  if (mn.norm <= tol::kShortMargin) return std::nullopt;
  // The unit vector toward the nearest hull point attains the max-min margin,
  // which equals the distance from the origin to the hull.
  return ShortnessWitness{SpherePoint::normalized(mn.point), mn.norm};
}

Cap::Cap(std::vector<SpherePoint> generators, SpherePoint witness, double margin)
    : generators_(std::move(generators)),
      witness_(std::move(witness)),
      margin_(margin) {
  const int d = ambient_dim();
  const int m = static_cast<int>(generators_.size());
  gen_matrix_.resize(d, m);
  for (int j = 0; j < m; ++j) gen_matrix_.col(j) = generators_[j].coords();
  if (m <= d) {
    qr_.compute(gen_matrix_);
    qr_.setThreshold(1e-12);
    simplicial_ = (qr_.rank() == m);
  }
}

Cap Cap::make(std::vector<SpherePoint> generators) {
  check_points(generators, "Cap");
  auto w = shortness_witness(generators);
  if (!w) {
    throw NotShortError("Cap: generators admit no common open hemisphere");
  }
  return Cap(std::move(generators), w->direction, w->margin);
}

Cap make_cap(std::vector<SpherePoint> generators) {
  return Cap::make(std::move(generators));
}

ShortSet::ShortSet(std::vector<Cap> parts, SpherePoint witness)
    : parts_(std::move(parts)), witness_(std::move(witness)) {}

ShortSet ShortSet::make(std::vector<Cap> parts) {
  if (parts.empty()) throw std::invalid_argument("ShortSet: no parts");
  const int d = parts.front().ambient_dim();
  std::vector<SpherePoint> all;
  for (const auto& p : parts) {
    if (p.ambient_dim() != d) throw std::invalid_argument("ShortSet: mixed dimensions");
    all.insert(all.end(), p.generators().begin(), p.generators().end());
  }
  auto w = shortness_witness(all);
  if (!w) {
    throw NotShortError("ShortSet: parts admit no common open hemisphere");
  }
  return ShortSet(std::move(parts), w->direction);
}

ShortSet ShortSet::make_with_witness(std::vector<Cap> parts, SpherePoint witness) {
  if (parts.empty()) throw std::invalid_argument("ShortSet: no parts");
  const int d = parts.front().ambient_dim();
  if (witness.ambient_dim() != d) {
    throw std::invalid_argument("ShortSet: witness dimension mismatch");
  }
  for (const auto& p : parts) {
    if (p.ambient_dim() != d) throw std::invalid_argument("ShortSet: mixed dimensions");
    for (const auto& g : p.generators()) {
      if (witness.coords().dot(g.coords()) <= tol::kShortMargin) {
        throw NotShortError("ShortSet: supplied witness does not dominate all parts");
      }
    }
  }
  return ShortSet(std::move(parts), std::move(witness));
}

ShortSet make_shortset(std::vector<Cap> parts) { return ShortSet::make(std::move(parts)); }

bool cap_membership(const Cap& c, const SpherePoint& x) {
  if (x.ambient_dim() != c.ambient_dim()) {
    throw std::invalid_argument("cap_membership: dimension mismatch");
  }
  if (c.simplicial()) {
    // Independent generators: the conic representation is unique, so a
    // least-squares solve decides membership directly.
    Vector lambda = c.qr().solve(x.coords());
    if ((c.generator_matrix() * lambda - x.coords()).norm() > tol::kFeas) return false;
    for (int i = 0; i < lambda.size(); ++i) {
      if (lambda(i) < -tol::kFeas) return false;
    }
    return true;
  }
  const auto r = lp::solve_equality_feasibility(c.generator_matrix(), x.coords(),
                                                tol::kFeas);
  return r.feasible;
}

bool shortset_membership(const ShortSet& s, const SpherePoint& x) {
  for (const auto& part : s.parts()) {
    if (cap_membership(part, x)) return true;
  }
  return false;
}

double cap_distance(const Cap& c, const SpherePoint& x) {
  if (x.ambient_dim() != c.ambient_dim()) {
    throw std::invalid_argument("cap_distance: dimension mismatch");
  }
  const auto proj = hull::project_to_cone(coords_of(c.generators()), x.coords());
  const double norm = proj.point.norm();
  if (norm <= 1e-12) {
    // Projection at the apex: every cap point sits at angle >= pi/2.
    return M_PI / 2.0;
  }
  const double cosine = std::clamp(x.coords().dot(proj.point) / norm, -1.0, 1.0);
  return std::acos(cosine);
}

double shortset_distance(const ShortSet& s, const SpherePoint& x) {
  double best = M_PI;
  for (const auto& part : s.parts()) {
    best = std::min(best, cap_distance(part, x));
  }
  return best;
}

Cap geodesic_hull(const std::vector<SpherePoint>& points) {
  return Cap::make(points);
}

std::optional<SpherePoint> intersection_witness(const std::vector<Cap>& caps) {
  if (caps.empty()) throw std::invalid_argument("intersection_witness: no caps");
  const int d = caps.front().ambient_dim();
  for (const auto& c : caps) {
    if (c.ambient_dim() != d) {
      throw std::invalid_argument("intersection_witness: mixed dimensions");
    }
  }
  const int k = static_cast<int>(caps.size());

  // One nonnegative weight block per cap; cone combination of cap 0 equals
  // that of every other cap, with scale pinned by <witness_0, v> = 1 (valid:
  // every nonzero point of cone 0 has positive inner product with the
  // witness, so any common ray can be rescaled to meet the constraint).
  std::vector<int> offset(k + 1, 0);
  for (int i = 0; i < k; ++i) {
    offset[i + 1] = offset[i] + static_cast<int>(caps[i].generators().size());
  }
  const int cols = offset[k];
  const int rows = d * (k - 1) + 1;
  Matrix A = Matrix::Zero(rows, cols);
  Vector b = Vector::Zero(rows);
  for (int i = 1; i < k; ++i) {
    A.block(d * (i - 1), offset[0], d, offset[1]) = caps[0].generator_matrix();
    A.block(d * (i - 1), offset[i], d, offset[i + 1] - offset[i]) =
        -caps[i].generator_matrix();
  }
  A.block(rows - 1, 0, 1, offset[1]) =
      caps[0].witness().coords().transpose() * caps[0].generator_matrix();
  b(rows - 1) = 1.0;

  const auto r = lp::solve_equality_feasibility(A, b, tol::kFeas);
  if (!r.feasible) return std::nullopt;

  Vector v = Vector::Zero(d);
  for (int j = 0; j < offset[1]; ++j) {
    v += r.x[j] * caps[0].generator_matrix().col(j);
  }
  if (v.norm() <= tol::kFeas) return std::nullopt;  // defensive; scale is pinned
  SpherePoint p = SpherePoint::normalized(v);
  for (const auto& c : caps) {
    if (!cap_membership(c, p)) {
      throw std::logic_error(
          "intersection_witness: feasible point failed membership re-check");
    }
  }
  return p;
}

SeparatingHalfspace separating_halfspace(const Cap& c) {
  return SeparatingHalfspace{Vector(-c.witness().coords()), c.witness_margin() / 2.0};
}

Matrix equator_basis(const SpherePoint& h) {
  return hull::hyperplane_basis(h.coords());
}

std::optional<Cap> slice_to_equator(const Cap& c, const SpherePoint& h,
                                    const Matrix& basis) {
  const int d = c.ambient_dim();
  if (h.ambient_dim() != d) {
    throw std::invalid_argument("slice_to_equator: dimension mismatch");
  }
  if (basis.rows() != d || basis.cols() != d - 1) {
    throw std::invalid_argument("slice_to_equator: basis must have d-1 orthonormal columns");
  }

  // Split generators by side; keep on-plane generators, and add the crossing
  // of every plus/minus pair (a positive combination landing on the plane).
  std::vector<Vector> on_plane, plus, minus;
  for (const auto& g : c.generators()) {
    const double s = h.coords().dot(g.coords());
    if (std::abs(s) <= tol::kFeas) {
      on_plane.push_back(g.coords());
    } else if (s > 0) {
      plus.push_back(g.coords());
    } else {
      minus.push_back(g.coords());
    }
  }
  for (const auto& gp : plus) {
    for (const auto& gm : minus) {
      const double sp = h.coords().dot(gp);
      const double sm = h.coords().dot(gm);
      Vector w = sp * gm - sm * gp;
      const double norm = w.norm();
      if (norm > 1e-12) on_plane.push_back(w / norm);
    }
  }
  if (on_plane.empty()) return std::nullopt;

  std::vector<SpherePoint> sliced;
  sliced.reserve(on_plane.size());
  for (const auto& w : on_plane) {
    Vector y = basis.transpose() * w;
    const double norm = y.norm();
    if (norm <= 1e-12) continue;
    sliced.push_back(SpherePoint(Vector(y / norm)));
  }
  if (sliced.empty()) return std::nullopt;
  return Cap::make(std::move(sliced));
}

double cap_interior_margin(const Cap& c, const SpherePoint& x) {
  return hull::cone_interior_margin(coords_of(c.generators()), x.coords());
}

}  // namespace spherecover
