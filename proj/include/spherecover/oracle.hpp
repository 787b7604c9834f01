#pragma once

#include "spherecover/caps.hpp"
#include "spherecover/geom.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace spherecover {

// Counter-based generator: value i of stream `seed` is a pure function of
// (seed, i), so parallel and replayed generation agree bit for bit.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  double next_unit();                 // uniform in [0, 1)
  double next_gauss();                // standard normal (Box-Muller)
  std::uint64_t next_below(std::uint64_t bound);  // uniform in [0, bound)
  Vector next_unit_vector(int dim);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// --- Exact circle arithmetic ------------------------------------------------
//
// Angles on the circle are integer counts of nanodegrees (1e-9 degree), the
// lattice all exact arc computations live on.  Doubles are rounded to the
// lattice on entry; every subsequent comparison is integer-exact.

inline constexpr std::int64_t kNanodegFull = 360LL * 1000000000LL;

std::int64_t nanodeg_from_degrees(double degrees);  // rounds to the lattice
double degrees_from_nanodeg(std::int64_t nano);
double radians_from_nanodeg(std::int64_t nano);

// Closed arc [start, start+length] (positive orientation), start normalized
// to [0, full), 0 < length < full.
struct Arc {
  std::int64_t start_nano = 0;
  std::int64_t length_nano = 0;
};

// Closed union of arcs on the circle.
struct ArcSet {
  std::vector<Arc> arcs;
};

Arc make_arc_degrees(double start_deg, double end_deg);
bool arc_contains(const Arc& a, std::int64_t point_nano);
// Closed arcs: touching endpoints count as intersection.
bool arcs_intersect(const Arc& a, const Arc& b);
std::optional<std::int64_t> arc_intersection_point(const Arc& a, const Arc& b);

struct CircleCoverReport {
  bool covered = false;
  std::vector<Arc> gaps;  // maximal uncovered open intervals, as arcs
};

// Exact sweep over all arc endpoints of the family; tolerance-free on the
// nanodegree lattice.
CircleCoverReport circle_cover_check(const std::vector<ArcSet>& family);

// Conversions between the n = 1 cap world and exact arcs.  A cap on the
// circle is the minor arc spanned by its generators; endpoint angles are
// rounded to the lattice.
Arc arc_from_cap(const Cap& c);
Cap cap_from_arc(const Arc& a);
ArcSet arcset_from_shortset(const ShortSet& s);

struct PairwiseArcReport {
  bool preconditions_ok = false;
  bool covered = false;                 // precondition detail
  std::vector<int> not_antipodal_free;  // offending set indices, if any
  // For the three pairs (0,1), (0,2), (1,2):
  std::vector<bool> pairwise_nonempty;
  std::vector<std::optional<std::int64_t>> pairwise_witness_nano;
  bool all_pairwise_nonempty = false;
};

// For three closed antipodal-free arc unions covering the circle, checks
// that all pairwise intersections are nonempty (they must be), exactly.
// Precondition failures are reported, not thrown.
PairwiseArcReport remark_pairwise_check(const std::vector<ArcSet>& family);

// --- Sphere sampling ---------------------------------------------------------

struct SampleSet {
  int n = 0;
  int depth = 0;
  std::vector<SpherePoint> points;
  double mesh_bound = 0.0;  // upper bound on the geodesic covering radius
};

// Deterministic mesh: the cross-polytope boundary subdivided edgewise to
// `depth` and radially normalized, deduplicated; optionally augmented with
// seeded uniform random points (the bound only tightens).
SampleSet sample_sphere(int n, int depth, std::uint64_t seed = 0,
                        int extra_random = 0);

struct SamplingCoverReport {
  bool all_covered = false;
  std::vector<SpherePoint> uncovered;
};

SamplingCoverReport sampling_cover_check(const std::vector<Cap>& family,
                                         const SampleSet& samples);
SamplingCoverReport sampling_cover_check(const std::vector<ShortSet>& family,
                                         const SampleSet& samples);

// --- Seeded instance generators ----------------------------------------------

// n+2 unit points whose simplex strictly surrounds the origin: rejection
// sampling until every barycentric coordinate of the origin exceeds
// origin_floor (default 0.01).  Throws after 100000 rejected draws.
std::vector<SpherePoint> random_simplex_with_origin(int n, std::uint64_t seed,
                                                    double origin_floor = 0.01);
bool validate_simplex_with_origin(const std::vector<SpherePoint>& points,
                                  double origin_floor = 0.01);

// Splits a simplicial cap (n+1 affinely independent generators) into the
// radially projected cells of the edgewise subdivision of its generator
// simplex.  jitter > 0 perturbs interior subdivision vertices in barycentric
// coordinates (seeded) and keeps the union exact by adding each cell's
// unperturbed vertices back to its part.
ShortSet shatter_cap(const Cap& c, int depth, std::uint64_t seed = 0,
                     double jitter = 0.0);

// Three single-arc sets with lattice endpoints (0.01 degree grid); even
// seeds draw lengths in [20, 180) degrees, odd seeds in [100, 180), so
// covering and non-covering families both occur.
std::vector<ArcSet> random_arc_family(std::uint64_t seed);

// Three antipodal-free closed arc unions that cover the circle: a covering
// three-arc family (redrawn until it covers), optionally extended with small
// detached arcs that keep each set antipodal-free.
std::vector<ArcSet> random_remark_family(std::uint64_t seed);

}  // namespace spherecover
