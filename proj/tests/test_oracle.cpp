#include "spherecover/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

#include "spherecover/certify.hpp"
#include "test_util.hpp"

using namespace spherecover;
using testutil::pt;

namespace {

constexpr std::int64_t kNano = 1000000000LL;

ArcSet single(double start_deg, double end_deg) {
  return ArcSet{{make_arc_degrees(start_deg, end_deg)}};
}

}  // namespace

TEST_CASE("counter rng is a pure function of seed and index") {
  CounterRng a(42);
  CounterRng b(42);
  for (int i = 0; i < 32; ++i) CHECK(a.next_u64() == b.next_u64());

  CounterRng c(43);
  CHECK(CounterRng(42).next_u64() != c.next_u64());

  CounterRng u(7);
  for (int i = 0; i < 200; ++i) {
    const double x = u.next_unit();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CounterRng nb(9);
  for (int i = 0; i < 200; ++i) CHECK(nb.next_below(10) < 10);
  CHECK_THROWS_AS(nb.next_below(0), std::invalid_argument);

  CounterRng v(11);
  const Vector w = v.next_unit_vector(4);
  CHECK(w.size() == 4);
  CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(v.next_unit_vector(1), std::invalid_argument);
}

TEST_CASE("nanodegree lattice conversions") {
  CHECK(nanodeg_from_degrees(360.0) == 0);
  CHECK(nanodeg_from_degrees(-90.0) == 270 * kNano);
  CHECK(nanodeg_from_degrees(0.25) == kNano / 4);
  CHECK(degrees_from_nanodeg(270 * kNano) == doctest::Approx(270.0));
  CHECK(radians_from_nanodeg(90 * kNano) == doctest::Approx(M_PI / 2));
}

TEST_CASE("arc construction and closed containment") {
  const Arc a = make_arc_degrees(350, 10);
  CHECK(a.start_nano == 350 * kNano);
  CHECK(a.length_nano == 20 * kNano);
  CHECK(arc_contains(a, 350 * kNano));
  CHECK(arc_contains(a, 0));
  CHECK(arc_contains(a, 10 * kNano));
  CHECK_FALSE(arc_contains(a, 10 * kNano + 1));
  CHECK_FALSE(arc_contains(a, 180 * kNano));

  const Arc b = make_arc_degrees(-30, 30);
  CHECK(b.start_nano == 330 * kNano);
  CHECK(b.length_nano == 60 * kNano);

  CHECK_THROWS_AS(make_arc_degrees(45, 45), std::invalid_argument);
  CHECK_THROWS_AS(make_arc_degrees(45, 405), std::invalid_argument);
}

TEST_CASE("arc intersection is exact and closed") {
  const Arc a = make_arc_degrees(0, 50);
  const Arc b = make_arc_degrees(40, 90);
  const Arc touch = make_arc_degrees(50, 120);
  const Arc gap = make_arc_degrees(51, 120);

  CHECK(arcs_intersect(a, b));
  CHECK(arcs_intersect(b, a));
  CHECK(arcs_intersect(a, touch));  // shared endpoint counts
  CHECK_FALSE(arcs_intersect(a, gap));

  auto p = arc_intersection_point(a, b);
  REQUIRE(p.has_value());
  CHECK(*p == 40 * kNano);
  auto q = arc_intersection_point(a, touch);
  REQUIRE(q.has_value());
  CHECK(*q == 50 * kNano);
  CHECK_FALSE(arc_intersection_point(a, gap).has_value());
}

TEST_CASE("circle cover check finds exact gaps") {
  SUBCASE("three gapped arcs") {
    const std::vector<ArcSet> family = {single(0, 100), single(120, 200),
                                        single(210, 300)};
    const auto report = circle_cover_check(family);
    CHECK_FALSE(report.covered);
    REQUIRE(report.gaps.size() == 3);
    CHECK(report.gaps[0].start_nano == 100 * kNano);
    CHECK(report.gaps[0].length_nano == 20 * kNano);
    CHECK(report.gaps[1].start_nano == 200 * kNano);
    CHECK(report.gaps[1].length_nano == 10 * kNano);
    CHECK(report.gaps[2].start_nano == 300 * kNano);
    CHECK(report.gaps[2].length_nano == 60 * kNano);
  }
  SUBCASE("exact tiling covers") {
    const std::vector<ArcSet> family = {single(0, 120), single(120, 240),
                                        single(240, 360)};
    const auto report = circle_cover_check(family);
    CHECK(report.covered);
    CHECK(report.gaps.empty());
  }
  SUBCASE("multi-arc sets participate") {
    const std::vector<ArcSet> family = {
        ArcSet{{make_arc_degrees(0, 90), make_arc_degrees(180, 270)}},
        ArcSet{{make_arc_degrees(90, 180), make_arc_degrees(270, 360)}}};
    CHECK(circle_cover_check(family).covered);
  }
  CHECK_THROWS_AS(circle_cover_check({}), std::invalid_argument);
}

TEST_CASE("cap and arc conversions round trip on the lattice") {
  const Arc a = make_arc_degrees(10, 95);
  const Cap c = cap_from_arc(a);
  CHECK(c.ambient_dim() == 2);
  CHECK(c.generators().size() == 2);
  const Arc back = arc_from_cap(c);
  CHECK(back.start_nano == a.start_nano);
  CHECK(back.length_nano == a.length_nano);

  SUBCASE("degenerate arc becomes a singleton cap") {
    const Arc point{45 * kNano, 0};
    const Cap s = cap_from_arc(point);
    CHECK(s.generators().size() == 1);
    const Arc again = arc_from_cap(s);
    CHECK(again.start_nano == 45 * kNano);
    CHECK(again.length_nano == 0);
  }
  SUBCASE("half circle and longer are rejected") {
    CHECK_THROWS_AS(cap_from_arc(Arc{0, 180 * kNano}), std::invalid_argument);
  }
  SUBCASE("caps off the circle are rejected") {
    CHECK_THROWS_AS(arc_from_cap(Cap::make({pt({0, 0, 1})})),
                    std::invalid_argument);
  }
  SUBCASE("short set conversion maps every part") {
    const ShortSet s = ShortSet::make(
        {cap_from_arc(make_arc_degrees(0, 40)), cap_from_arc(make_arc_degrees(60, 100))});
    const ArcSet as = arcset_from_shortset(s);
    REQUIRE(as.arcs.size() == 2);
    CHECK(as.arcs[0].start_nano == 0);
    CHECK(as.arcs[1].start_nano == 60 * kNano);
  }
}

TEST_CASE("pairwise intersection check for antipodal-free covers") {
  SUBCASE("covering antipodal-free triple has all pairwise meets") {
    const std::vector<ArcSet> family = {single(0, 130), single(120, 250),
                                        single(240, 370)};
    const auto report = remark_pairwise_check(family);
    CHECK(report.preconditions_ok);
    CHECK(report.covered);
    CHECK(report.not_antipodal_free.empty());
    REQUIRE(report.pairwise_nonempty.size() == 3);
    CHECK(report.all_pairwise_nonempty);
    for (const auto& w : report.pairwise_witness_nano) {
      CHECK(w.has_value());
    }
    CHECK(*report.pairwise_witness_nano[0] == 120 * kNano);
    CHECK(*report.pairwise_witness_nano[2] == 240 * kNano);
  }
  SUBCASE("a set containing an antipodal pair is flagged") {
    const std::vector<ArcSet> family = {
        ArcSet{{make_arc_degrees(0, 10), make_arc_degrees(180, 190),
                make_arc_degrees(280, 310)}},
        ArcSet{{make_arc_degrees(0, 120), make_arc_degrees(301, 360)}},
        single(115, 294)};
    const auto report = remark_pairwise_check(family);
    CHECK(report.covered);
    REQUIRE(report.not_antipodal_free.size() == 1);
    CHECK(report.not_antipodal_free[0] == 0);
    CHECK_FALSE(report.preconditions_ok);
  }
  SUBCASE("non-covering triple fails the precondition") {
    const auto report =
        remark_pairwise_check({single(0, 10), single(20, 30), single(40, 50)});
    CHECK_FALSE(report.covered);
    CHECK_FALSE(report.preconditions_ok);
  }
  CHECK_THROWS_AS(remark_pairwise_check({single(0, 10)}), std::invalid_argument);
}

TEST_CASE("sphere sampling meshes") {
  SUBCASE("frozen point counts") {
    CHECK(sample_sphere(1, 0).points.size() == 4);
    CHECK(sample_sphere(2, 0).points.size() == 6);
    CHECK(sample_sphere(2, 1).points.size() == 18);
  }
  SUBCASE("points are unit and distinct") {
    const auto s = sample_sphere(2, 2);
    std::set<std::vector<long long>> keys;
    for (const auto& p : s.points) {
      CHECK(p.coords().norm() == doctest::Approx(1.0).epsilon(1e-12));
      std::vector<long long> key;
      for (int i = 0; i < 3; ++i) {
        key.push_back(std::llround(p.coords()(i) * 1e12));
      }
      CHECK(keys.insert(key).second);
    }
    CHECK(s.mesh_bound == doctest::Approx((M_PI / 2.0) / 4.0 * 1.1));
  }
  SUBCASE("mesh bound dominates the covering radius") {
    for (int n : {1, 2}) {
      const auto s = sample_sphere(n, 2);
      CounterRng rng(5);
      for (int trial = 0; trial < 200; ++trial) {
        const SpherePoint x(rng.next_unit_vector(n + 1));
        double best = M_PI;
        for (const auto& p : s.points) {
          best = std::min(best, geodesic_distance(x, p));
        }
        CHECK(best <= s.mesh_bound);
      }
    }
  }
  SUBCASE("extra random points only augment") {
    const auto base = sample_sphere(2, 1);
    const auto more = sample_sphere(2, 1, 3, 10);
    CHECK(more.points.size() == base.points.size() + 10);
    CHECK(more.mesh_bound == doctest::Approx(base.mesh_bound));
  }
  CHECK_THROWS_AS(sample_sphere(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_sphere(2, 9), std::invalid_argument);
  CHECK_THROWS_AS(sample_sphere(2, 1, 0, -1), std::invalid_argument);
}

TEST_CASE("sampling cover check") {
  const auto caps = facet_caps({pt({1, 1, 1}), pt({1, -1, -1}), pt({-1, 1, -1}),
                                pt({-1, -1, 1})});
  const auto samples = sample_sphere(2, 3);
  SUBCASE("full facet family covers every sample") {
    const auto report = sampling_cover_check(caps, samples);
    CHECK(report.all_covered);
    CHECK(report.uncovered.empty());
  }
  SUBCASE("removing a cap exposes genuine holes") {
    std::vector<Cap> minus(caps.begin() + 1, caps.end());
    const auto report = sampling_cover_check(minus, samples);
    CHECK_FALSE(report.all_covered);
    REQUIRE_FALSE(report.uncovered.empty());
    for (const auto& p : report.uncovered) {
      for (const auto& c : minus) {
        CHECK_FALSE(cap_membership(c, p));
      }
    }
  }
  SUBCASE("short set overload agrees with the cap overload") {
    std::vector<ShortSet> sets;
    sets.reserve(caps.size());
    for (const auto& c : caps) sets.push_back(ShortSet::make({c}));
    CHECK(sampling_cover_check(sets, samples).all_covered);
  }
  CHECK_THROWS_AS(sampling_cover_check(std::vector<Cap>{}, samples),
                  std::invalid_argument);
}

TEST_CASE("random simplex generator surrounds the origin") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    for (int n : {1, 2, 3}) {
      CAPTURE(seed);
      CAPTURE(n);
      const auto pts = random_simplex_with_origin(n, seed);
      CHECK(pts.size() == static_cast<std::size_t>(n + 2));
      CHECK(validate_simplex_with_origin(pts));
    }
  }
  SUBCASE("deterministic per seed") {
    const auto a = random_simplex_with_origin(2, 9);
    const auto b = random_simplex_with_origin(2, 9);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK((a[i].coords() - b[i].coords()).norm() == 0.0);
    }
    const auto c = random_simplex_with_origin(2, 10);
    CHECK((a[0].coords() - c[0].coords()).norm() > 0.0);
  }
  SUBCASE("validation rejects one-sided families") {
    CHECK_FALSE(validate_simplex_with_origin(
        {pt({1, 0}), pt({0.8, 0.6}), pt({0.6, 0.8})}));
    CHECK_FALSE(validate_simplex_with_origin({pt({1, 0}), pt({-1, 0})}));
    CHECK_FALSE(validate_simplex_with_origin({}));
  }
  CHECK_THROWS_AS(random_simplex_with_origin(0, 1), std::invalid_argument);
}

TEST_CASE("cap shattering") {
  const Cap quadrant = Cap::make({pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})});
  SUBCASE("cell count follows the subdivision") {
    CHECK(shatter_cap(quadrant, 0).parts().size() == 1);
    CHECK(shatter_cap(quadrant, 1).parts().size() == 4);
    CHECK(shatter_cap(quadrant, 2).parts().size() == 16);
  }
  SUBCASE("membership is preserved both ways") {
    const ShortSet s = shatter_cap(quadrant, 2);
    // Part generators stay inside the original cap.
    for (const auto& part : s.parts()) {
      for (const auto& g : part.generators()) {
        CHECK(cap_membership(quadrant, g));
      }
    }
    // Random cap points land in some part.
    CounterRng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
      Vector t(3);
      for (int i = 0; i < 3; ++i) t(i) = rng.next_unit();
      if (t.sum() <= 0) continue;
      Vector x = Vector::Zero(3);
      for (int i = 0; i < 3; ++i) x += t(i) * quadrant.generators()[i].coords();
      const SpherePoint p = SpherePoint::normalized(x);
      bool inside = false;
      for (const auto& part : s.parts()) {
        if (cap_membership(part, p)) {
          inside = true;
          break;
        }
      }
      CHECK(inside);
    }
  }
  SUBCASE("jitter keeps the union and the witness") {
    const ShortSet s = shatter_cap(quadrant, 1, 17, 0.2);
    CHECK(s.parts().size() == 4);
    CHECK((s.witness().coords() - quadrant.witness().coords()).norm() == 0.0);
    for (const auto& g : quadrant.generators()) {
      bool inside = false;
      for (const auto& part : s.parts()) {
        if (cap_membership(part, g)) {
          inside = true;
          break;
        }
      }
      CHECK(inside);
    }
    for (const auto& part : s.parts()) {
      for (const auto& g : part.generators()) {
        CHECK(cap_membership(quadrant, g));
      }
    }
  }
  CHECK_THROWS_AS(shatter_cap(Cap::make({pt({1, 0, 0}), pt({0, 1, 0})}), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(shatter_cap(quadrant, 1, 0, 1.5), std::invalid_argument);
}

TEST_CASE("random arc families live on the coarse lattice") {
  for (std::uint64_t seed : {0ULL, 1ULL, 2ULL, 3ULL, 7ULL}) {
    CAPTURE(seed);
    const auto family = random_arc_family(seed);
    REQUIRE(family.size() == 3);
    const std::int64_t tick = 10000000;  // 0.01 degree
    const std::int64_t lo = (seed % 2 == 0) ? 20 * kNano : 100 * kNano;
    for (const auto& s : family) {
      REQUIRE(s.arcs.size() == 1);
      const Arc& a = s.arcs.front();
      CHECK(a.start_nano % tick == 0);
      CHECK(a.length_nano % tick == 0);
      CHECK(a.length_nano >= lo);
      CHECK(a.length_nano < 180 * kNano);
    }
    const auto again = random_arc_family(seed);
    CHECK(again[0].arcs[0].start_nano == family[0].arcs[0].start_nano);
    CHECK(again[2].arcs[0].length_nano == family[2].arcs[0].length_nano);
  }
}

TEST_CASE("random remark families satisfy their preconditions") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    CAPTURE(seed);
    const auto family = random_remark_family(seed);
    const auto report = remark_pairwise_check(family);
    CHECK(report.preconditions_ok);
    CHECK(report.all_pairwise_nonempty);
  }
}
