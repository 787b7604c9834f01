#include "spherecover/geom.hpp"

#include "spherecover/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace spherecover {

namespace {

void check_same_dim(const std::vector<Vector>& vs, const char* what) {
  if (vs.empty()) throw std::invalid_argument(std::string(what) + ": empty point list");
  const auto d = vs.front().size();
  if (d < 2) throw std::invalid_argument(std::string(what) + ": ambient dimension must be >= 2");
  for (const auto& v : vs) {
    if (v.size() != d) throw std::invalid_argument(std::string(what) + ": mixed dimensions");
  }
}

std::vector<Vector> coords_of(const std::vector<SpherePoint>& pts) {
  std::vector<Vector> vs;
  vs.reserve(pts.size());
  for (const auto& p : pts) vs.push_back(p.coords());
  return vs;
}

}  // namespace

SpherePoint::SpherePoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw std::invalid_argument("SpherePoint: ambient dimension must be >= 2");
  }
  const double norm = coords_.norm();
  if (std::abs(norm - 1.0) > tol::kUnit) {
    throw std::invalid_argument("SpherePoint: coordinates are not unit length");
  }
  coords_ /= norm;  // snap the residual error away
}

SpherePoint SpherePoint::normalized(const Vector& v) {
  const double norm = v.norm();
  if (norm <= tol::kUnit) {
    throw std::invalid_argument("SpherePoint::normalized: vector too close to zero");
  }
  return SpherePoint(Vector(v / norm));
}

double geodesic_distance(const SpherePoint& x, const SpherePoint& y) {
  if (x.ambient_dim() != y.ambient_dim()) {
    throw std::invalid_argument("geodesic_distance: dimension mismatch");
  }
  const double c = std::clamp(x.coords().dot(y.coords()), -1.0, 1.0);
  return std::acos(c);
}

std::optional<std::vector<double>> try_origin_barycentric(
    const std::vector<Vector>& vertices) {
  check_same_dim(vertices, "try_origin_barycentric");
  const int d = static_cast<int>(vertices.front().size());
  const int k = static_cast<int>(vertices.size());
  if (k != d + 1) {
    throw std::invalid_argument("try_origin_barycentric: need exactly dim+1 points");
  }
  Matrix A(d + 1, k);
  for (int j = 0; j < k; ++j) {
    A.block(0, j, d, 1) = vertices[j];
    A(d, j) = 1.0;
  }
  Vector b = Vector::Zero(d + 1);
  b(d) = 1.0;
  Eigen::FullPivLU<Matrix> lu(A);
  lu.setThreshold(tol::kDegeneracy);
  if (lu.rank() < d + 1) return std::nullopt;
  Vector lambda = lu.solve(b);
  if ((A * lambda - b).norm() > tol::kSolve) return std::nullopt;
  return std::vector<double>(lambda.data(), lambda.data() + lambda.size());
}

double normalized_simplex_det(const std::vector<Vector>& points) {
  check_same_dim(points, "normalized_simplex_det");
  const int d = static_cast<int>(points.front().size());
  const int k = static_cast<int>(points.size());
  if (k != d + 1) {
    throw std::invalid_argument("normalized_simplex_det: need exactly dim+1 points");
  }
  Matrix M(k, k);
  double row_scale = 1.0;
  for (int i = 0; i < k; ++i) {
    M.block(i, 0, 1, d) = points[i].transpose();
    M(i, d) = 1.0;
    row_scale *= M.row(i).norm();
  }
  if (row_scale <= 0.0) return 0.0;
  return M.determinant() / row_scale;
}

FlatSimplex::FlatSimplex(std::vector<Vector> vertices) : vertices_(std::move(vertices)) {
  if (!try_origin_barycentric(vertices_)) {
    throw std::invalid_argument("FlatSimplex: vertices are affinely dependent");
  }
}

std::vector<double> barycentric_origin(const FlatSimplex& s) {
  auto lambda = try_origin_barycentric(s.vertices());
  if (!lambda) {
    throw std::runtime_error("barycentric_origin: degenerate simplex");
  }
  return *lambda;
}

bool origin_interior(const std::vector<double>& lambda) {
  return std::all_of(lambda.begin(), lambda.end(),
                     [](double l) { return l > tol::kInteriorMargin; });
}

bool simplex_nondegenerate(const std::vector<SpherePoint>& points) {
  return std::abs(normalized_simplex_det(coords_of(points))) > tol::kDegeneracy;
}

SimplexChart::SimplexChart(ChartKind kind, std::vector<SpherePoint> vertices,
                           std::optional<SpherePoint> pole,
                           std::optional<SpherePoint> witness)
    : kind_(kind),
      vertices_(std::move(vertices)),
      pole_(std::move(pole)),
      witness_(std::move(witness)) {}

SimplexChart SimplexChart::make_short(std::vector<SpherePoint> vertices) {
  if (vertices.empty()) throw std::invalid_argument("SimplexChart: no vertices");
  const int d = vertices.front().ambient_dim();
  if (static_cast<int>(vertices.size()) != d) {
    throw std::invalid_argument("SimplexChart: short chart needs n+1 vertices on the n-sphere");
  }
  auto vs = coords_of(vertices);
  Matrix G(d, d);
  for (int j = 0; j < d; ++j) G.col(j) = vs[j];
  Eigen::FullPivLU<Matrix> lu(G);
  lu.setThreshold(tol::kDegeneracy);
  if (lu.rank() < d) {
    throw std::invalid_argument("SimplexChart: short chart vertices are linearly dependent");
  }
  auto mn = hull::min_norm_point(vs);
  if (mn.norm <= tol::kShortMargin) {
    throw NotShortError("SimplexChart: vertices admit no hemisphere witness");
  }
  return SimplexChart(ChartKind::kShort, std::move(vertices), std::nullopt,
                      SpherePoint::normalized(mn.point));
}

SimplexChart SimplexChart::make_hemisphere(std::vector<SpherePoint> vertices,
                                           SpherePoint pole) {
  if (vertices.empty()) throw std::invalid_argument("SimplexChart: no vertices");
  const int d = vertices.front().ambient_dim();
  if (pole.ambient_dim() != d) {
    throw std::invalid_argument("SimplexChart: pole dimension mismatch");
  }
  if (static_cast<int>(vertices.size()) != d) {
    throw std::invalid_argument("SimplexChart: hemisphere chart needs n+1 vertices");
  }
  for (const auto& v : vertices) {
    if (std::abs(v.coords().dot(pole.coords())) > tol::kUnit) {
      throw std::invalid_argument("SimplexChart: vertices must lie on the pole's equator");
    }
  }
  // Inside the equator hyperplane the n+1 vertices must span a simplex with
  // the origin strictly interior (they are necessarily linearly dependent in
  // the ambient space, so the check happens in equator coordinates).
  Matrix B = hull::hyperplane_basis(pole.coords());
  std::vector<Vector> eq;
  eq.reserve(vertices.size());
  for (const auto& v : vertices) eq.push_back(B.transpose() * v.coords());
  auto lambda = try_origin_barycentric(eq);
  if (!lambda || !origin_interior(*lambda)) {
    throw std::invalid_argument(
        "SimplexChart: origin is not interior to the equator simplex");
  }
  return SimplexChart(ChartKind::kHemisphere, std::move(vertices), std::move(pole),
                      std::nullopt);
}

const SpherePoint& SimplexChart::pole() const {
  if (!pole_) throw std::logic_error("SimplexChart: short charts have no pole");
  return *pole_;
}

const SpherePoint& SimplexChart::witness() const {
  if (!witness_) throw std::logic_error("SimplexChart: hemisphere charts have no witness");
  return *witness_;
}

SpherePoint chart_map(const SimplexChart& chart, const std::vector<double>& t) {
  const auto& verts = chart.vertices();
  if (t.size() != verts.size()) {
    throw std::invalid_argument("chart_map: barycentric size mismatch");
  }
  double sum = 0.0;
  for (double ti : t) {
    if (ti < -tol::kSolve || ti > 1.0 + tol::kSolve) {
      throw std::invalid_argument("chart_map: barycentric entry out of range");
    }
    sum += ti;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw std::invalid_argument("chart_map: barycentric coordinates must sum to 1");
  }
  const int d = verts.front().ambient_dim();
  Vector s = Vector::Zero(d);
  double prod = 1.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double ti = std::clamp(t[i], 0.0, 1.0);
    s += ti * verts[i].coords();
    prod *= ti;
  }
  if (chart.kind() == ChartKind::kHemisphere) {
    s += prod * chart.pole().coords();
  }
  const double norm = s.norm();
  if (norm <= 1e-12) {
    // Unreachable when the chart invariants hold (shortness or interior
    // origin forbid vanishing combinations).
    throw std::logic_error("chart_map: vanishing combination; chart invariants violated");
  }
  return SpherePoint(Vector(s / norm));
}

namespace {

// Kuhn-style edgewise subdivision: points of the standard n-simplex map to
// monotone "staircase" coordinates xi (m >= xi_1 >= ... >= xi_n >= 0); the
// Freudenthal cells (base point + coordinate insertion order) that fit in
// that region triangulate it face-to-face.  Resolution m = 2^depth gives
// exactly m^n cells and halves cell diameters per depth step.
std::vector<int> lattice_from_xi(const std::vector<int>& xi, int m) {
  const int n = static_cast<int>(xi.size());
  std::vector<int> l(n + 1);
  l[0] = m - xi[0];
  for (int j = 1; j < n; ++j) l[j] = xi[j - 1] - xi[j];
  l[n] = xi[n - 1];
  return l;
}

bool xi_in_region(const std::vector<int>& xi, int m) {
  int prev = m;
  for (int v : xi) {
    if (v > prev || v < 0) return false;
    prev = v;
  }
  return true;
}

}  // namespace

Subdivision subdivide(int n, int depth) {
  if (n < 1 || n > 6) throw std::invalid_argument("subdivide: n out of range");
  if (depth < 0 || depth > 24) throw std::invalid_argument("subdivide: depth out of range");
  const int m = 1 << depth;

  Subdivision out;
  out.n = n;
  out.resolution = m;

  std::map<std::vector<int>, int> vertex_ids;
  auto vertex_id = [&](const std::vector<int>& lattice) {
    auto it = vertex_ids.find(lattice);
    if (it != vertex_ids.end()) return it->second;
    const int id = static_cast<int>(out.vertex_lattice.size());
    vertex_ids.emplace(lattice, id);
    out.vertex_lattice.push_back(lattice);
    return id;
  };

  std::vector<int> perm(n);
  std::vector<std::vector<int>> cells;
  // Enumerate bases in lexicographic order.
  std::vector<int> a(n, 0);
  bool done = false;
  while (!done) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      // Walk the chain a, a+e_{perm[0]}, ...; all vertices must stay inside.
      std::vector<std::vector<int>> chain;
      chain.reserve(n + 1);
      std::vector<int> xi = a;
      bool ok = xi_in_region(xi, m);
      chain.push_back(xi);
      for (int k = 0; ok && k < n; ++k) {
        xi[perm[k]] += 1;
        ok = xi_in_region(xi, m);
        chain.push_back(xi);
      }
      if (ok) {
        std::vector<int> cell;
        cell.reserve(n + 1);
        for (const auto& x : chain) cell.push_back(vertex_id(lattice_from_xi(x, m)));
        cells.push_back(std::move(cell));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));

    // Advance base.
    int j = n - 1;
    while (j >= 0) {
      if (++a[j] < m) break;
      a[j] = 0;
      --j;
    }
    done = (j < 0);
  }

  // Canonical order: sort cells by their sorted vertex-lattice tuples.
  std::sort(cells.begin(), cells.end(), [&](const std::vector<int>& x,
                                            const std::vector<int>& y) {
    auto key = [&](const std::vector<int>& c) {
      std::vector<std::vector<int>> k;
      k.reserve(c.size());
      for (int id : c) k.push_back(out.vertex_lattice[id]);
      std::sort(k.begin(), k.end());
      return k;
    };
    return key(x) < key(y);
  });
  out.cells = std::move(cells);

  out.vertex_bary.reserve(out.vertex_lattice.size());
  for (const auto& l : out.vertex_lattice) {
    std::vector<double> b(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) b[i] = static_cast<double>(l[i]) / m;
    out.vertex_bary.push_back(std::move(b));
  }
  return out;
}

}  // namespace spherecover
