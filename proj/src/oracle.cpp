#include "spherecover/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace spherecover {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t positive_mod(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::uint64_t CounterRng::next_u64() {
  const std::uint64_t c = counter_++;
  return splitmix64(splitmix64(seed_) ^ splitmix64(c * 0xd1342543de82ef95ULL + 1));
}

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_gauss() {
  const double u1 = 1.0 - next_unit();  // (0, 1]
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::uint64_t CounterRng::next_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("CounterRng: zero bound");
  // Rejection keeps the draw unbiased; the loop terminates deterministically
  // because the counter advances on every draw.
  const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
  while (true) {
    const std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

Vector CounterRng::next_unit_vector(int dim) {
  if (dim < 2) throw std::invalid_argument("CounterRng: dimension must be >= 2");
  while (true) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = next_gauss();
    const double n = v.norm();
    if (n > 1e-6) return v / n;
  }
}

std::int64_t nanodeg_from_degrees(double degrees) {
  return positive_mod(std::llround(degrees * 1e9), kNanodegFull);
}

double degrees_from_nanodeg(std::int64_t nano) {
  return static_cast<double>(nano) * 1e-9;
}

double radians_from_nanodeg(std::int64_t nano) {
  return static_cast<double>(nano) * (M_PI / (180.0 * 1e9));
}

Arc make_arc_degrees(double start_deg, double end_deg) {
  const std::int64_t s = nanodeg_from_degrees(start_deg);
  const std::int64_t e = nanodeg_from_degrees(end_deg);
  const std::int64_t len = positive_mod(e - s, kNanodegFull);
  if (len == 0) {
    throw std::invalid_argument("make_arc_degrees: endpoints coincide on the lattice");
  }
  return Arc{s, len};
}

bool arc_contains(const Arc& a, std::int64_t point_nano) {
  return positive_mod(point_nano - a.start_nano, kNanodegFull) <= a.length_nano;
}

bool arcs_intersect(const Arc& a, const Arc& b) {
  return arc_contains(a, b.start_nano) || arc_contains(b, a.start_nano);
}

std::optional<std::int64_t> arc_intersection_point(const Arc& a, const Arc& b) {
  if (arc_contains(a, b.start_nano)) return positive_mod(b.start_nano, kNanodegFull);
  if (arc_contains(b, a.start_nano)) return positive_mod(a.start_nano, kNanodegFull);
  return std::nullopt;
}

CircleCoverReport circle_cover_check(const std::vector<ArcSet>& family) {
  std::vector<Arc> arcs;
  for (const auto& s : family) {
    arcs.insert(arcs.end(), s.arcs.begin(), s.arcs.end());
  }
  if (arcs.empty()) {
    throw std::invalid_argument("circle_cover_check: no arcs");
  }
  // Coverage is piecewise constant between consecutive arc endpoints, and
  // every endpoint is inside its own closed arc, so probing each open
  // interval's midpoint (exact in half-nanodegree units) decides everything.
  std::set<std::int64_t> endpoint_set;
  for (const auto& a : arcs) {
    endpoint_set.insert(positive_mod(a.start_nano, kNanodegFull));
    endpoint_set.insert(positive_mod(a.start_nano + a.length_nano, kNanodegFull));
  }
  std::vector<std::int64_t> endpoints(endpoint_set.begin(), endpoint_set.end());

  CircleCoverReport report;
  const int k = static_cast<int>(endpoints.size());
  for (int i = 0; i < k; ++i) {
    const std::int64_t e = endpoints[i];
    const std::int64_t len = (i + 1 < k) ? endpoints[i + 1] - e
                                         : endpoints[0] + kNanodegFull - e;
    if (len == 0) continue;  // single endpoint family cannot occur, but be safe
    const std::int64_t mid2 = 2 * e + len;  // half-nanodegree units
    bool covered = false;
    for (const auto& a : arcs) {
      if (positive_mod(mid2 - 2 * a.start_nano, 2 * kNanodegFull) <=
          2 * a.length_nano) {
        covered = true;
        break;
      }
    }
    if (!covered) report.gaps.push_back(Arc{e, len});
  }
  report.covered = report.gaps.empty();
  return report;
}

Arc arc_from_cap(const Cap& c) {
  if (c.ambient_dim() != 2) {
    throw std::invalid_argument("arc_from_cap: cap must live on the circle");
  }
  auto angle_nano = [](const Vector& v) {
    const double rad = std::atan2(v(1), v(0));
    return positive_mod(std::llround(rad * (180.0 * 1e9) / M_PI), kNanodegFull);
  };
  const std::int64_t w = angle_nano(c.witness().coords());
  std::int64_t dmin = kNanodegFull;
  std::int64_t dmax = -kNanodegFull;
  for (const auto& g : c.generators()) {
    std::int64_t delta = positive_mod(angle_nano(g.coords()) - w, kNanodegFull);
    if (delta > kNanodegFull / 2) delta -= kNanodegFull;
    dmin = std::min(dmin, delta);
    dmax = std::max(dmax, delta);
  }
  return Arc{positive_mod(w + dmin, kNanodegFull), dmax - dmin};
}

Cap cap_from_arc(const Arc& a) {
  if (a.length_nano < 0 || a.length_nano >= kNanodegFull / 2) {
    throw std::invalid_argument("cap_from_arc: arc must be shorter than a half circle");
  }
  auto point_at = [](std::int64_t nano) {
    const double rad = radians_from_nanodeg(positive_mod(nano, kNanodegFull));
    Vector v(2);
    v << std::cos(rad), std::sin(rad);
    return SpherePoint::normalized(v);
  };
  std::vector<SpherePoint> gens = {point_at(a.start_nano)};
  if (a.length_nano > 0) gens.push_back(point_at(a.start_nano + a.length_nano));
  return Cap::make(std::move(gens));
}

ArcSet arcset_from_shortset(const ShortSet& s) {
  ArcSet out;
  out.arcs.reserve(s.parts().size());
  for (const auto& part : s.parts()) out.arcs.push_back(arc_from_cap(part));
  return out;
}

namespace {

Arc shifted_arc(const Arc& a, std::int64_t offset) {
  return Arc{positive_mod(a.start_nano + offset, kNanodegFull), a.length_nano};
}

// A closed arc union contains an antipodal pair iff some arc meets the
// half-turn shift of some arc of the same set.
bool antipodal_free(const ArcSet& s) {
  const std::int64_t half = kNanodegFull / 2;
  for (const auto& a : s.arcs) {
    for (const auto& b : s.arcs) {
      if (arcs_intersect(a, shifted_arc(b, half))) return false;
    }
  }
  return true;
}

}  // namespace

PairwiseArcReport remark_pairwise_check(const std::vector<ArcSet>& family) {
  if (family.size() != 3) {
    throw std::invalid_argument("remark_pairwise_check: need exactly three sets");
  }
  PairwiseArcReport report;
  report.covered = circle_cover_check(family).covered;
  for (int i = 0; i < 3; ++i) {
    if (!antipodal_free(family[i])) report.not_antipodal_free.push_back(i);
  }
  report.preconditions_ok = report.covered && report.not_antipodal_free.empty();

  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      std::optional<std::int64_t> witness;
      for (const auto& a : family[i].arcs) {
        if (witness) break;
        for (const auto& b : family[j].arcs) {
          if (auto p = arc_intersection_point(a, b)) {
            witness = p;
            break;
          }
        }
      }
      report.pairwise_nonempty.push_back(witness.has_value());
      report.pairwise_witness_nano.push_back(witness);
    }
  }
  report.all_pairwise_nonempty =
      std::all_of(report.pairwise_nonempty.begin(), report.pairwise_nonempty.end(),
                  [](bool b) { return b; });
  return report;
}

SampleSet sample_sphere(int n, int depth, std::uint64_t seed, int extra_random) {
  if (n < 1 || n > 4) throw std::invalid_argument("sample_sphere: n out of range");
  if (depth < 0 || depth > 8) throw std::invalid_argument("sample_sphere: depth out of range");
  if (extra_random < 0) throw std::invalid_argument("sample_sphere: negative extra count");
  const int d = n + 1;
  // The reported bound tracks 2^depth; for n >= 3 the cross-polytope facets
  // distort enough under radial projection that the lattice is generated one
  // level finer to keep the bound valid.
  const int internal_depth = depth + (n >= 3 ? 1 : 0);
  const int m = 1 << internal_depth;
  const Subdivision sub = subdivide(n, internal_depth);

  SampleSet out;
  out.n = n;
  out.depth = depth;
  out.mesh_bound = (M_PI / 2.0) / static_cast<double>(1 << depth) * 1.1;

  std::set<std::vector<int>> seen;
  for (int bits = 0; bits < (1 << d); ++bits) {
    for (const auto& lattice : sub.vertex_lattice) {
      std::vector<int> key(d);
      for (int i = 0; i < d; ++i) {
        key[i] = ((bits >> i) & 1) ? -lattice[i] : lattice[i];
      }
      if (!seen.insert(key).second) continue;
      Vector v(d);
      for (int i = 0; i < d; ++i) v(i) = static_cast<double>(key[i]) / m;
      out.points.push_back(SpherePoint::normalized(v));
    }
  }
  CounterRng rng(seed);
  for (int i = 0; i < extra_random; ++i) {
    out.points.emplace_back(rng.next_unit_vector(d));
  }
  return out;
}

namespace {

// Exact-solve membership for square full-rank generator matrices; falls back
// to the generic path otherwise.  The inverse is shared across many samples.
class FastMember {
 public:
  explicit FastMember(const Cap& c) : cap_(&c) {
    const Matrix& g = c.generator_matrix();
    if (c.simplicial() && g.rows() == g.cols()) {
      inverse_ = g.inverse();
      fast_ = true;
    }
  }

  bool contains(const SpherePoint& x) const {
    if (!fast_) return cap_membership(*cap_, x);
    const Vector lambda = inverse_ * x.coords();
    return lambda.minCoeff() >= -tol::kFeas;
  }

 private:
  const Cap* cap_;
  Matrix inverse_;
  bool fast_ = false;
};

}  // namespace

SamplingCoverReport sampling_cover_check(const std::vector<Cap>& family,
                                         const SampleSet& samples) {
  if (family.empty()) throw std::invalid_argument("sampling_cover_check: empty family");
  std::vector<FastMember> members;
  members.reserve(family.size());
  for (const auto& c : family) members.emplace_back(c);

  SamplingCoverReport report;
  for (const auto& p : samples.points) {
    bool covered = false;
    for (const auto& m : members) {
      if (m.contains(p)) {
        covered = true;
        break;
      }
    }
    if (!covered) report.uncovered.push_back(p);
  }
  report.all_covered = report.uncovered.empty();
  return report;
}

SamplingCoverReport sampling_cover_check(const std::vector<ShortSet>& family,
                                         const SampleSet& samples) {
  if (family.empty()) throw std::invalid_argument("sampling_cover_check: empty family");
  std::vector<FastMember> members;
  for (const auto& s : family) {
    for (const auto& part : s.parts()) members.emplace_back(part);
  }
  SamplingCoverReport report;
  for (const auto& p : samples.points) {
    bool covered = false;
    for (const auto& m : members) {
      if (m.contains(p)) {
        covered = true;
        break;
      }
    }
    if (!covered) report.uncovered.push_back(p);
  }
  report.all_covered = report.uncovered.empty();
  return report;
}

std::vector<SpherePoint> random_simplex_with_origin(int n, std::uint64_t seed,
                                                    double origin_floor) {
  if (n < 1 || n > 4) {
    throw std::invalid_argument("random_simplex_with_origin: n out of range");
  }
  CounterRng rng(seed);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<SpherePoint> points;
    std::vector<Vector> coords;
    points.reserve(n + 2);
    for (int i = 0; i < n + 2; ++i) {
      points.emplace_back(rng.next_unit_vector(n + 1));
      coords.push_back(points.back().coords());
    }
    const auto lambda = try_origin_barycentric(coords);
    if (!lambda) continue;
    if (std::all_of(lambda->begin(), lambda->end(),
                    [&](double l) { return l > origin_floor; })) {
      return points;
    }
  }
  throw std::runtime_error("random_simplex_with_origin: rejection limit exceeded");
}

bool validate_simplex_with_origin(const std::vector<SpherePoint>& points,
                                  double origin_floor) {
  if (points.empty()) return false;
  const int d = points.front().ambient_dim();
  if (static_cast<int>(points.size()) != d + 1) return false;
  std::vector<Vector> coords;
  coords.reserve(points.size());
  for (const auto& p : points) coords.push_back(p.coords());
  const auto lambda = try_origin_barycentric(coords);
  if (!lambda) return false;
  return std::all_of(lambda->begin(), lambda->end(),
                     [&](double l) { return l > origin_floor; });
}

ShortSet shatter_cap(const Cap& c, int depth, std::uint64_t seed, double jitter) {
  const int d = c.ambient_dim();
  if (!c.simplicial() || static_cast<int>(c.generators().size()) != d) {
    throw std::invalid_argument(
        "shatter_cap: cap must have exactly n+1 independent generators");
  }
  if (jitter < 0.0 || jitter >= 1.0) {
    throw std::invalid_argument("shatter_cap: jitter must lie in [0, 1)");
  }
  const int n = d - 1;
  const Subdivision sub = subdivide(n, depth);

  auto map_bary = [&](const std::vector<double>& t) {
    Vector s = Vector::Zero(d);
    for (int i = 0; i < d; ++i) s += t[i] * c.generators()[i].coords();
    return SpherePoint::normalized(s);
  };

  CounterRng rng(seed);
  std::vector<SpherePoint> plain;
  std::vector<SpherePoint> moved;
  plain.reserve(sub.vertex_bary.size());
  moved.reserve(sub.vertex_bary.size());
  for (std::size_t v = 0; v < sub.vertex_bary.size(); ++v) {
    plain.push_back(map_bary(sub.vertex_bary[v]));
    const bool interior = std::all_of(sub.vertex_lattice[v].begin(),
                                      sub.vertex_lattice[v].end(),
                                      [](int l) { return l > 0; });
    if (jitter > 0.0 && interior) {
      std::vector<double> t = sub.vertex_bary[v];
      double sum = 0.0;
      for (double& ti : t) {
        ti *= 1.0 + jitter * (2.0 * rng.next_unit() - 1.0);
        sum += ti;
      }
      for (double& ti : t) ti /= sum;
      moved.push_back(map_bary(t));
    } else {
      moved.push_back(plain.back());
    }
  }

  std::vector<Cap> parts;
  parts.reserve(sub.cells.size());
  for (const auto& cell : sub.cells) {
    std::vector<SpherePoint> gens;
    gens.reserve(2 * cell.size());
    for (int v : cell) gens.push_back(moved[v]);
    if (jitter > 0.0) {
      // Keeping the unperturbed cell alongside the perturbed one leaves the
      // union of parts exactly equal to the original cap.
      for (int v : cell) gens.push_back(plain[v]);
    }
    parts.push_back(Cap::make(std::move(gens)));
  }
  return ShortSet::make_with_witness(std::move(parts), c.witness());
}

std::vector<ArcSet> random_arc_family(std::uint64_t seed) {
  CounterRng rng(seed);
  const std::int64_t tick = 10000000;  // 0.01 degree in nanodegrees
  const std::int64_t lo_ticks = (seed % 2 == 0) ? 2000 : 10000;  // 20 or 100 deg
  const std::int64_t hi_ticks = 18000;                           // 180 deg
  std::vector<ArcSet> family;
  for (int i = 0; i < 3; ++i) {
    const std::int64_t start = static_cast<std::int64_t>(rng.next_below(36000)) * tick;
    const std::int64_t len =
        (lo_ticks + static_cast<std::int64_t>(
                        rng.next_below(static_cast<std::uint64_t>(hi_ticks - lo_ticks)))) *
        tick;
    family.push_back(ArcSet{{Arc{start, len}}});
  }
  return family;
}

std::vector<ArcSet> random_remark_family(std::uint64_t seed) {
  CounterRng rng(seed);
  const std::int64_t tick = 10000000;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<ArcSet> family;
    for (int i = 0; i < 3; ++i) {
      const std::int64_t start = static_cast<std::int64_t>(rng.next_below(36000)) * tick;
      const std::int64_t len =
          (10000 + static_cast<std::int64_t>(rng.next_below(8000))) * tick;
      family.push_back(ArcSet{{Arc{start, len}}});
    }
    if (!circle_cover_check(family).covered) continue;

    // Optional detached small arcs, kept only when the host set stays
    // antipodal-free.
    const int extras = static_cast<int>(rng.next_below(4));
    for (int e = 0; e < extras; ++e) {
      const int host = static_cast<int>(rng.next_below(3));
      const std::int64_t start = static_cast<std::int64_t>(rng.next_below(36000)) * tick;
      const std::int64_t len =
          (100 + static_cast<std::int64_t>(rng.next_below(900))) * tick;  // 1..10 deg
      ArcSet trial = family[host];
      trial.arcs.push_back(Arc{start, len});
      if (antipodal_free(trial)) family[host] = std::move(trial);
    }
    return family;
  }
  throw std::runtime_error("random_remark_family: failed to draw a covering family");
}

}  // namespace spherecover
