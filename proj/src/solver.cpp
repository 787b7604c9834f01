#include "spherecover/solver.hpp"

#include "spherecover/hull.hpp"
#include "spherecover/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace spherecover {

namespace {

std::vector<double> face_probe_barycentric(int n, int face, CounterRng& rng,
                                           bool random) {
  std::vector<double> t(n + 1, 0.0);
  if (!random) return t;  // caller fills corners / barycenter
  double sum = 0.0;
  for (int j = 0; j <= n; ++j) {
    if (j == face) continue;
    const double u = rng.next_unit();
    t[j] = -std::log1p(-u);
    sum += t[j];
  }
  for (int j = 0; j <= n; ++j) {
    if (j != face) t[j] /= sum;
  }
  return t;
}

}  // namespace

Lemma1Instance::Lemma1Instance(SimplexChart chart, std::vector<ShortSet> sets,
                               bool checked)
    : chart_(std::move(chart)),
      sets_(std::move(sets)),
      face_condition_checked_(checked) {}

Lemma1Instance Lemma1Instance::make(SimplexChart chart, std::vector<ShortSet> sets,
                                    int face_probes, std::uint64_t probe_seed) {
  const int n = chart.sphere_dim();
  const int k = static_cast<int>(sets.size());
  if (k < 1 || k > n + 1) {
    throw std::invalid_argument("Lemma1Instance: need between 1 and n+1 sets");
  }
  for (const auto& s : sets) {
    if (s.ambient_dim() != n + 1) {
      throw std::invalid_argument("Lemma1Instance: set dimension mismatch");
    }
  }
  bool checked = face_probes > 0 && k == n + 1;
  if (checked) {
    for (int i = 0; checked && i <= n; ++i) {
      std::vector<std::vector<double>> probes;
      // Face corners, face barycenter, then seeded interior samples.
      for (int j = 0; j <= n; ++j) {
        if (j == i) continue;
        std::vector<double> t(n + 1, 0.0);
        t[j] = 1.0;
        probes.push_back(std::move(t));
      }
      {
        std::vector<double> t(n + 1, 0.0);
        for (int j = 0; j <= n; ++j) {
          if (j != i) t[j] = 1.0 / n;
        }
        probes.push_back(std::move(t));
      }
      CounterRng rng(probe_seed * 1000003ULL + static_cast<std::uint64_t>(i));
      while (static_cast<int>(probes.size()) < face_probes) {
        probes.push_back(face_probe_barycentric(n, i, rng, true));
      }
      for (const auto& t : probes) {
        const SpherePoint p = chart_map(chart, t);
        if (!shortset_membership(sets[i], p)) {
          checked = false;  // recorded, not enforced: the solver still runs
          break;
        }
      }
    }
  }
  return Lemma1Instance(std::move(chart), std::move(sets), checked);
}

namespace {

// Branch and bound cells are Freudenthal simplices in staircase coordinates:
// base point a and insertion order pi at resolution m, with vertices
// a, a+e_{pi(0)}, ..., a+ones.  Refinement doubles the resolution; the 2^n
// children of a cell are exactly the candidate cells (b in 2a+{0,1}^n, sigma)
// whose vertices satisfy the parent's chain inequalities (integer-exact).
struct BBCell {
  std::vector<int> base;
  std::vector<int> perm;

  bool operator<(const BBCell& o) const {
    if (base != o.base) return base < o.base;
    return perm < o.perm;
  }
};

std::vector<std::vector<int>> cell_vertices(const BBCell& cell) {
  const int n = static_cast<int>(cell.base.size());
  std::vector<std::vector<int>> xs;
  xs.reserve(n + 1);
  std::vector<int> xi = cell.base;
  xs.push_back(xi);
  for (int k = 0; k < n; ++k) {
    xi[cell.perm[k]] += 1;
    xs.push_back(xi);
  }
  return xs;
}

bool inside_parent(const std::vector<int>& xi, const BBCell& parent) {
  const int n = static_cast<int>(xi.size());
  int prev = 2;
  for (int k = 0; k < n; ++k) {
    const int z = xi[parent.perm[k]] - 2 * parent.base[parent.perm[k]];
    if (z < 0 || z > prev) return false;
    prev = z;
  }
  return true;
}

std::vector<BBCell> cell_children(const BBCell& cell) {
  const int n = static_cast<int>(cell.base.size());
  std::vector<BBCell> kids;
  std::vector<int> delta(n, 0);
  while (true) {
    BBCell kid;
    kid.base.resize(n);
    for (int j = 0; j < n; ++j) kid.base[j] = 2 * cell.base[j] + delta[j];
    kid.perm.resize(n);
    std::iota(kid.perm.begin(), kid.perm.end(), 0);
    do {
      bool ok = true;
      std::vector<int> xi = kid.base;
      if (!inside_parent(xi, cell)) ok = false;
      for (int k = 0; ok && k < n; ++k) {
        xi[kid.perm[k]] += 1;
        ok = inside_parent(xi, cell);
      }
      if (ok) kids.push_back(kid);
    } while (std::next_permutation(kid.perm.begin(), kid.perm.end()));
    int j = n - 1;
    while (j >= 0) {
      if (++delta[j] < 2) break;
      delta[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return kids;
}

struct EvalEntry {
  SpherePoint point;
  double phi = 0.0;       // max over sets of the distance
  double min_dist = 0.0;  // distance to the union
};

class PotentialEvaluator {
 public:
  explicit PotentialEvaluator(const Lemma1Instance& inst) : inst_(inst) {}

  // Point given as staircase fractions nums/den at some resolution; the key
  // is reduced so coincident points across levels share one evaluation.
  const EvalEntry& eval(std::vector<long long> nums, long long den) {
    long long g = den;
    for (long long v : nums) g = std::gcd(g, v);
    if (g > 1) {
      den /= g;
      for (auto& v : nums) v /= g;
    }
    std::vector<long long> key;
    key.reserve(nums.size() + 1);
    key.push_back(den);
    key.insert(key.end(), nums.begin(), nums.end());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    const int n = static_cast<int>(nums.size());
    std::vector<double> t(n + 1);
    t[0] = static_cast<double>(den - nums[0]) / static_cast<double>(den);
    for (int j = 1; j < n; ++j) {
      t[j] = static_cast<double>(nums[j - 1] - nums[j]) / static_cast<double>(den);
    }
    t[n] = static_cast<double>(nums[n - 1]) / static_cast<double>(den);

    EvalEntry e{chart_map(inst_.chart(), t), 0.0,
                std::numeric_limits<double>::infinity()};
    for (const auto& s : inst_.sets()) {
      const double d = shortset_distance(s, e.point);
      e.phi = std::max(e.phi, d);
      e.min_dist = std::min(e.min_dist, d);
    }
    // Missing slots act as empty sets at distance pi, so a short list can
    // never reach a common point; the union distance ignores them.
    if (static_cast<int>(inst_.sets().size()) < n + 1) {
      e.phi = std::max(e.phi, M_PI);
    }
    return cache_.emplace(std::move(key), std::move(e)).first->second;
  }

 private:
  const Lemma1Instance& inst_;
  std::map<std::vector<long long>, EvalEntry> cache_;
};

}  // namespace

CommonPointResult common_point(const Lemma1Instance& instance,
                               const CommonPointOptions& options) {
  const int n = instance.chart().sphere_dim();
  PotentialEvaluator evaluator(instance);

  std::vector<BBCell> frontier;
  {
    BBCell root;
    root.base.assign(n, 0);
    root.perm.resize(n);
    std::iota(root.perm.begin(), root.perm.end(), 0);
    frontier.push_back(std::move(root));
  }

  std::vector<double> level_best;
  const EvalEntry* best = nullptr;
  const EvalEntry* uncovered = nullptr;

  for (int depth = 0;; ++depth) {
    const long long m = 1LL << depth;
    struct Scored {
      const BBCell* cell;
      double lower_bound;
    };
    std::vector<Scored> scored;
    scored.reserve(frontier.size());

    for (const auto& cell : frontier) {
      const auto xs = cell_vertices(cell);
      std::vector<const EvalEntry*> entries;
      entries.reserve(xs.size() + 1);
      std::vector<long long> centroid(n, 0);
      for (const auto& xi : xs) {
        std::vector<long long> nums(xi.begin(), xi.end());
        for (int j = 0; j < n; ++j) centroid[j] += nums[j];
        entries.push_back(&evaluator.eval(std::move(nums), m));
      }
      entries.push_back(&evaluator.eval(std::move(centroid), m * (n + 1)));

      double cell_min = std::numeric_limits<double>::infinity();
      for (const auto* e : entries) {
        cell_min = std::min(cell_min, e->phi);
        if (!best || e->phi < best->phi) best = e;
        if (!uncovered && e->min_dist > options.not_cover_tol) uncovered = e;
      }
      double spread = 0.0;
      for (std::size_t a = 0; a + 1 < xs.size(); ++a) {
        for (std::size_t b = a + 1; b < xs.size(); ++b) {
          spread = std::max(spread, geodesic_distance(entries[a]->point,
                                                      entries[b]->point));
        }
      }
      scored.push_back({&cell, cell_min - 2.0 * spread});
    }

    level_best.push_back(best->phi);
    if (best->phi <= options.eps) {
      return CommonPointResult{best->point, best->phi, depth, SolveStatus::kOk,
                               std::move(level_best)};
    }
    if (uncovered) {
      return CommonPointResult{uncovered->point, uncovered->phi, depth,
                               SolveStatus::kNotACover, std::move(level_best)};
    }
    if (depth == options.max_depth) {
      return CommonPointResult{best->point, best->phi, depth, SolveStatus::kLimit,
                               std::move(level_best)};
    }

    // Keep refinable cells, most promising first when over the frontier cap.
    std::vector<Scored> keep;
    for (const auto& s : scored) {
      if (s.lower_bound <= options.eps) keep.push_back(s);
    }
    if (keep.empty()) {
      return CommonPointResult{best->point, best->phi, depth, SolveStatus::kLimit,
                               std::move(level_best)};
    }
    std::stable_sort(keep.begin(), keep.end(), [](const Scored& x, const Scored& y) {
      if (x.lower_bound != y.lower_bound) return x.lower_bound < y.lower_bound;
      return *x.cell < *y.cell;
    });
    if (keep.size() > options.max_cells) keep.resize(options.max_cells);

    std::vector<BBCell> next;
    for (const auto& s : keep) {
      auto kids = cell_children(*s.cell);
      next.insert(next.end(), std::make_move_iterator(kids.begin()),
                  std::make_move_iterator(kids.end()));
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
}

std::vector<LabeledCell> sperner_fully_labeled_all(
    int n, int depth,
    const std::function<int(int, const std::vector<int>&)>& label) {
  const Subdivision sub = subdivide(n, depth);
  std::vector<int> labels(sub.vertex_lattice.size());
  for (std::size_t v = 0; v < sub.vertex_lattice.size(); ++v) {
    const auto& lattice = sub.vertex_lattice[v];
    const int l = label(static_cast<int>(v), lattice);
    if (l < 0 || l > n) {
      throw SpernerLabelError("label out of range", static_cast<int>(v), lattice);
    }
    if (lattice[l] <= 0) {
      throw SpernerLabelError("label outside the vertex support",
                              static_cast<int>(v), lattice);
    }
    labels[v] = l;
  }
  std::vector<LabeledCell> out;
  std::vector<bool> seen(n + 1);
  for (const auto& cell : sub.cells) {
    std::fill(seen.begin(), seen.end(), false);
    bool full = true;
    for (int v : cell) {
      if (seen[labels[v]]) {
        full = false;
        break;
      }
      seen[labels[v]] = true;
    }
    if (!full) continue;
    LabeledCell lc;
    lc.vertex_ids = cell;
    lc.labels.reserve(cell.size());
    for (int v : cell) lc.labels.push_back(labels[v]);
    out.push_back(std::move(lc));
  }
  return out;
}

LabeledCell sperner_fully_labeled(
    int n, int depth,
    const std::function<int(int, const std::vector<int>&)>& label) {
  auto all = sperner_fully_labeled_all(n, depth, label);
  if (all.empty()) {
    // The parity argument makes an empty result impossible for labelings that
    // pass the boundary validation.
    throw std::logic_error("sperner_fully_labeled: no fully labeled cell found");
  }
  return all.front();
}

Lemma1Instance voronoi_hemisphere_fixture() {
  const double tau = 2.0 * M_PI / 3.0;
  std::vector<SpherePoint> d;
  for (int i = 0; i < 3; ++i) {
    Vector v(3);
    v << std::cos(tau * i), std::sin(tau * i), 0.0;
    d.emplace_back(SpherePoint::normalized(v));
  }
  Vector north(3);
  north << 0.0, 0.0, 1.0;
  const SpherePoint pole(north);
  SimplexChart chart = SimplexChart::make_hemisphere(d, pole);

  // Set i is the closed upper-hemisphere Voronoi cell of the site -d[i]: the
  // spherical triangle of the pole and the two equator midpoints between that
  // site and the other sites.
  auto midpoint = [&](int i, int j) {
    return SpherePoint::normalized(-d[i].coords() - d[j].coords());
  };
  std::vector<ShortSet> sets;
  for (int i = 0; i < 3; ++i) {
    std::vector<SpherePoint> gens = {pole};
    for (int j = 0; j < 3; ++j) {
      if (j != i) gens.push_back(midpoint(i, j));
    }
    sets.push_back(ShortSet::make({Cap::make(std::move(gens))}));
  }
  return Lemma1Instance::make(std::move(chart), std::move(sets));
}

Lemma1Instance shattered_chart_instance(int n, int shatter_depth,
                                        std::uint64_t seed) {
  if (n < 1 || n > 3) {
    throw std::invalid_argument("shattered_chart_instance: n out of range");
  }
  if (shatter_depth < 0 || shatter_depth > 6) {
    throw std::invalid_argument("shattered_chart_instance: depth out of range");
  }
  const int d = n + 1;

  // Regular n-simplex directions: the d corners of the standard simplex in
  // R^d, centered and expressed in a basis of the sum-zero hyperplane.
  Matrix basis = hull::hyperplane_basis(Vector::Ones(d));
  std::vector<Vector> flat;
  flat.reserve(d);
  for (int i = 0; i < d; ++i) {
    Vector corner = -Vector::Ones(d) / static_cast<double>(d);
    corner(i) += 1.0;
    Vector u = basis.transpose() * corner;  // length n
    flat.push_back(u / u.norm());
  }

  CounterRng rng(seed);
  const double rho = 0.8;
  const double jitter = 0.15;
  std::vector<SpherePoint> verts;
  verts.reserve(d);
  for (int i = 0; i < d; ++i) {
    Vector u = flat[i];
    for (int j = 0; j < n; ++j) u(j) += jitter * rng.next_gauss();
    u /= u.norm();
    Vector v(d);
    v.head(n) = rho * u;
    v(n) = 1.0;
    verts.push_back(SpherePoint::normalized(v));
  }
  SimplexChart chart = SimplexChart::make_short(verts);

  const Subdivision sub = subdivide(n, shatter_depth);
  std::vector<SpherePoint> mapped;
  mapped.reserve(sub.vertex_bary.size());
  for (const auto& t : sub.vertex_bary) mapped.push_back(chart_map(chart, t));

  std::vector<std::vector<Cap>> parts(d);
  for (const auto& cell : sub.cells) {
    std::vector<long long> coord_sum(d, 0);
    for (int v : cell) {
      for (int j = 0; j < d; ++j) coord_sum[j] += sub.vertex_lattice[v][j];
    }
    const long long amin = *std::min_element(coord_sum.begin(), coord_sum.end());
    std::vector<SpherePoint> gens;
    gens.reserve(cell.size());
    for (int v : cell) gens.push_back(mapped[v]);
    Cap cap = Cap::make(gens);
    for (int j = 0; j < d; ++j) {
      if (coord_sum[j] == amin) parts[j].push_back(cap);
    }
  }
  std::vector<ShortSet> sets;
  sets.reserve(d);
  for (int j = 0; j < d; ++j) {
    sets.push_back(ShortSet::make_with_witness(std::move(parts[j]), chart.witness()));
  }
  return Lemma1Instance::make(std::move(chart), std::move(sets), 50, seed);
}

}  // namespace spherecover
