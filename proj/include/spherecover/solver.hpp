#pragma once

#include "spherecover/caps.hpp"
#include "spherecover/geom.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spherecover {

// Instance of the common-point problem: n+1 short sets over a chart of an
// n-dimensional spherical simplex (or closed hemisphere), where set i is
// expected to contain the chart face opposite vertex i.  That face condition
// is probed at construction (seeded samples per face plus the face vertices)
// and recorded, not enforced: the solver still runs on instances that fail
// it, and simply reports what it finds.
//
// Fewer than n+1 sets are accepted; the missing slots behave as empty sets
// (distance pi to everything), so such instances can only be refuted or hit
// the depth limit, never certify a common point.
class Lemma1Instance {
 public:
  static Lemma1Instance make(SimplexChart chart, std::vector<ShortSet> sets,
                             int face_probes = 50, std::uint64_t probe_seed = 0);

  const SimplexChart& chart() const { return chart_; }
  const std::vector<ShortSet>& sets() const { return sets_; }
  // True when every probe landed inside its set; false when probing was
  // skipped (face_probes <= 0), some probe escaped, or sets are missing.
  bool face_condition_checked() const { return face_condition_checked_; }

 private:
  Lemma1Instance(SimplexChart chart, std::vector<ShortSet> sets, bool checked);

  SimplexChart chart_;
  std::vector<ShortSet> sets_;
  bool face_condition_checked_ = false;
};

enum class SolveStatus { kOk, kNotACover, kLimit };

struct CommonPointResult {
  SpherePoint point;          // best point found (or the violating vertex)
  double max_dist = 0.0;      // max over sets of distance at `point`
  int depth = 0;              // subdivision depth reached
  SolveStatus status = SolveStatus::kLimit;
  std::vector<double> level_best;  // best potential after each depth level
};

struct CommonPointOptions {
  double eps = 1e-6;          // target potential
  int max_depth = 20;
  double not_cover_tol = 1e-5;   // union distance above this refutes the cover
  std::size_t max_cells = 200000;  // frontier cap (kept by best lower bound)
};

// Minimizes the potential max_i dist(sets[i], chart(t)) by branch and bound
// over edgewise subdivision cells: evaluates vertices and centroids, prunes
// cells whose best vertex value minus twice the mapped vertex spread exceeds
// eps, and refines best-first until the potential drops below eps or the
// depth limit binds.  A vertex farther than not_cover_tol from every set
// refutes the cover and is returned as a witness.  Deterministic.
CommonPointResult common_point(const Lemma1Instance& instance,
                               const CommonPointOptions& options = {});

// Boundary-condition violation for the labeled-subdivision search.
class SpernerLabelError : public std::runtime_error {
 public:
  SpernerLabelError(std::string msg, int vertex_id,
                    std::vector<int> vertex_lattice)
      : std::runtime_error(std::move(msg)),
        vertex_id(vertex_id),
        vertex_lattice(std::move(vertex_lattice)) {}

  int vertex_id;
  std::vector<int> vertex_lattice;
};

struct LabeledCell {
  std::vector<int> vertex_ids;
  std::vector<int> labels;  // one label per cell vertex, a permutation of 0..n
};

// label(vertex_id, lattice) must return a label in the support of the vertex
// (indices with positive barycentric coordinate); violations raise
// SpernerLabelError.  Returns every fully-labeled cell of subdivide(n, depth)
// in canonical cell order; the combinatorial guarantee is that the count is
// odd (in particular nonzero).
std::vector<LabeledCell> sperner_fully_labeled_all(
    int n, int depth,
    const std::function<int(int, const std::vector<int>&)>& label);

// First fully-labeled cell in canonical order.
LabeledCell sperner_fully_labeled(
    int n, int depth,
    const std::function<int(int, const std::vector<int>&)>& label);

// Fixed instance: hemisphere chart over the third roots of unity on the
// equator of the north pole, with set i the closed spherical Voronoi cell
// (restricted to the upper hemisphere) of the site antipodal to chart vertex
// i.  Each face lands in its set and the unique common point is the pole.
Lemma1Instance voronoi_hemisphere_fixture();

// Seeded instance over a random short chart: the chart simplex is subdivided
// at shatter_depth, and each cell becomes a part of set i for every i where
// the cell centroid's barycentric coordinate is minimal.  Faces land in
// their sets exactly and the union of the sets tiles the chart simplex.
Lemma1Instance shattered_chart_instance(int n, int shatter_depth,
                                        std::uint64_t seed);

}  // namespace spherecover
