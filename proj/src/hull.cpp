#include "spherecover/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spherecover::hull {

namespace {

constexpr double kCoeffSlack = 1e-12;  // feasibility slack on face coefficients
constexpr double kOptSlack = 1e-10;    // optimality-test slack

void check_points(const std::vector<Vector>& pts, const char* what) {
  if (pts.empty()) throw std::invalid_argument(std::string(what) + ": empty input");
  const auto d = pts.front().size();
  for (const auto& p : pts) {
    if (p.size() != d) throw std::invalid_argument(std::string(what) + ": mixed dimensions");
  }
}

// Enumerates strictly increasing index subsets of {0..m-1} with sizes in
// [1, max_size], smallest sizes first, lexicographic within a size.
template <typename Fn>
void for_each_subset(int m, int max_size, Fn&& fn) {
  std::vector<int> idx;
  for (int size = 1; size <= max_size; ++size) {
    idx.assign(size, 0);
    for (int i = 0; i < size; ++i) idx[i] = i;
    if (size > m) break;
    while (true) {
      if (fn(idx)) return;
      int j = size - 1;
      while (j >= 0 && idx[j] == m - size + j) --j;
      if (j < 0) break;
      ++idx[j];
      for (int k = j + 1; k < size; ++k) idx[k] = idx[k - 1] + 1;
    }
  }
}

}  // namespace

MinNormPoint min_norm_point(const std::vector<Vector>& points) {
  check_points(points, "min_norm_point");
  const int d = static_cast<int>(points.front().size());
  const int m = static_cast<int>(points.size());

  // The projection lies in the relative interior of some face; by
  // Caratheodory it is an affine combination of at most d+1 affinely
  // independent points, and on that face's affine hull it is the critical
  // point of the norm.  Scan faces smallest-first and accept the first
  // candidate passing the global optimality test <p_j, p> >= <p, p>.
  bool have_best = false;
  Vector best;
  double best_norm = std::numeric_limits<double>::infinity();

  for_each_subset(m, std::min(m, d + 1), [&](const std::vector<int>& idx) {
    const int k = static_cast<int>(idx.size());
    // KKT system of min ||sum l_i p_i||^2 subject to sum l_i = 1:
    //   Gram * l = mu * 1,  1' l = 1.
    Matrix K = Matrix::Zero(k + 1, k + 1);
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) K(r, c) = points[idx[r]].dot(points[idx[c]]);
      K(r, k) = -1.0;
      K(k, r) = 1.0;
    }
    Vector rhs = Vector::Zero(k + 1);
    rhs(k) = 1.0;
    Eigen::FullPivLU<Matrix> lu(K);
    lu.setThreshold(1e-12);
    if (lu.rank() < k + 1) return false;  // affinely dependent face: skip
    Vector sol = lu.solve(rhs);
    double min_coeff = 0.0;
    for (int r = 0; r < k; ++r) min_coeff = std::min(min_coeff, sol(r));
    if (min_coeff < -kCoeffSlack) return false;
    Vector p = Vector::Zero(d);
    for (int r = 0; r < k; ++r) p += sol(r) * points[idx[r]];
    const double norm = p.norm();
    if (norm < best_norm) {
      best = p;
      best_norm = norm;
      have_best = true;
    }
    // Global optimality: every point at least as far along p as p itself.
    const double pp = p.squaredNorm();
    for (const auto& q : points) {
      if (q.dot(p) < pp - kOptSlack) return false;
    }
    best = p;
    best_norm = norm;
    have_best = true;
    return true;
  });

  if (!have_best) {
    // Cannot happen: singletons are always feasible candidates.
    throw std::logic_error("min_norm_point: no feasible face candidate");
  }
  return {best, best_norm};
}

ConeProjection project_to_cone(const std::vector<Vector>& generators,
                               const Vector& x, int enum_limit) {
  check_points(generators, "project_to_cone");
  if (generators.front().size() != x.size()) {
    throw std::invalid_argument("project_to_cone: dimension mismatch");
  }
  if (static_cast<int>(generators.size()) > enum_limit) {
    throw std::invalid_argument(
        "project_to_cone: generator count exceeds the face-enumeration limit");
  }
  const int d = static_cast<int>(x.size());
  const int m = static_cast<int>(generators.size());

  // By conic Caratheodory the projection is a nonnegative combination of at
  // most d linearly independent generators; on that face's span it is the
  // orthogonal projection of x.  Keep the best feasible candidate; the
  // Moreau test (residual in the polar cone) short-circuits the scan.
  Vector best = Vector::Zero(d);  // the apex is always a candidate
  double best_res = x.norm();

  auto moreau_optimal = [&](const Vector& p) {
    const Vector r = x - p;
    if (std::abs(r.dot(p)) > kOptSlack * std::max(1.0, x.norm())) return false;
    for (const auto& g : generators) {
      if (g.dot(r) > kOptSlack) return false;
    }
    return true;
  };

  if (moreau_optimal(best)) return {best, best_res};

  bool found_optimal = false;
  for_each_subset(m, std::min(m, d), [&](const std::vector<int>& idx) {
    const int k = static_cast<int>(idx.size());
    Matrix G(d, k);
    for (int c = 0; c < k; ++c) G.col(c) = generators[idx[c]];
    Eigen::ColPivHouseholderQR<Matrix> qr(G);
    qr.setThreshold(1e-12);
    if (qr.rank() < k) return false;  // linearly dependent subset: skip
    Vector lambda = qr.solve(x);
    double min_coeff = 0.0;
    for (int c = 0; c < k; ++c) min_coeff = std::min(min_coeff, lambda(c));
    if (min_coeff < -kCoeffSlack) return false;
    Vector p = G * lambda;
    const double res = (x - p).norm();
    if (res < best_res) {
      best = p;
      best_res = res;
    }
    if (moreau_optimal(p)) {
      best = p;
      best_res = res;
      found_optimal = true;
      return true;
    }
    return false;
  });
  (void)found_optimal;

  return {best, best_res};
}

double cone_interior_margin(const std::vector<Vector>& generators,
                            const Vector& x) {
  check_points(generators, "cone_interior_margin");
  const int d = static_cast<int>(x.size());
  const int m = static_cast<int>(generators.size());

  Matrix G(d, m);
  for (int c = 0; c < m; ++c) G.col(c) = generators[c];
  Eigen::ColPivHouseholderQR<Matrix> full(G);
  full.setThreshold(1e-12);
  if (full.rank() < d) return 0.0;  // flat cone: no interior

  if (d == 1) return 0.0;  // degenerate ambient; unused in practice

  // Facets are spanned by d-1 linearly independent generators whose
  // orthogonal direction supports all generators on one side.
  double margin = std::numeric_limits<double>::infinity();
  bool any_facet = false;
  for_each_subset(m, d - 1, [&](const std::vector<int>& idx) {
    if (static_cast<int>(idx.size()) != d - 1) return false;
    Matrix S(d, d - 1);
    for (int c = 0; c < d - 1; ++c) S.col(c) = generators[idx[c]];
    Eigen::FullPivLU<Matrix> lu(S.transpose());
    lu.setThreshold(1e-12);
    if (lu.rank() < d - 1) return false;
    Matrix kernel = lu.kernel();
    if (kernel.cols() != 1) return false;
    Vector nrm = kernel.col(0);
    nrm.normalize();
    double lo = 0.0, hi = 0.0;
    for (const auto& g : generators) {
      const double s = nrm.dot(g);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (lo >= -kCoeffSlack) {
      any_facet = true;
      margin = std::min(margin, nrm.dot(x));
    } else if (hi <= kCoeffSlack) {
      any_facet = true;
      margin = std::min(margin, -nrm.dot(x));
    }
    return false;  // scan all facets
  });

  if (!any_facet) return 0.0;
  return margin;
}

Matrix hyperplane_basis(const Vector& h) {
  const int d = static_cast<int>(h.size());
  if (d < 2) throw std::invalid_argument("hyperplane_basis: dimension must be >= 2");
  const double hn = h.norm();
  if (hn <= 0.0) throw std::invalid_argument("hyperplane_basis: zero normal");
  Vector u = h / hn;

  // Gram-Schmidt the coordinate axes against u, most-orthogonal first, for a
  // deterministic basis independent of tiny perturbations of h.
  std::vector<int> order(d);
  for (int i = 0; i < d; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(u(a)) < std::abs(u(b));
  });

  Matrix B(d, d - 1);
  int cols = 0;
  for (int i = 0; i < d && cols < d - 1; ++i) {
    Vector v = Vector::Zero(d);
    v(order[i]) = 1.0;
    v -= u.dot(v) * u;
    for (int c = 0; c < cols; ++c) v -= B.col(c).dot(v) * B.col(c);
    const double n = v.norm();
    if (n > 1e-9) {
      B.col(cols++) = v / n;
    }
  }
  if (cols != d - 1) throw std::logic_error("hyperplane_basis: failed to complete basis");
  return B;
}

}  // namespace spherecover::hull
