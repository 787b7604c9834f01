#include "spherecover/caps.hpp"

#include <doctest.h>

#include <cmath>

#include "test_util.hpp"

using namespace spherecover;
using testutil::arc_cap_deg;
using testutil::circle_point_deg;
using testutil::pt;

TEST_CASE("shortness witness solves the max-min hemisphere problem") {
  SUBCASE("two points 60 degrees apart") {
    auto w = shortness_witness({circle_point_deg(0), circle_point_deg(60)});
    REQUIRE(w.has_value());
    CHECK(w->margin == doctest::Approx(std::sqrt(3) / 2).epsilon(1e-12));
    CHECK(testutil::near_point(w->direction, circle_point_deg(30), 1e-12));
  }
  SUBCASE("antipodal pair has no witness") {
    CHECK_FALSE(
        shortness_witness({circle_point_deg(10), circle_point_deg(190)}).has_value());
  }
  SUBCASE("spread triple has no witness") {
    CHECK_FALSE(shortness_witness({circle_point_deg(0), circle_point_deg(120),
                                   circle_point_deg(240)})
                    .has_value());
  }
  SUBCASE("duplicated points do not confuse the solver") {
    auto w = shortness_witness({pt({0, 0, 1}), pt({0, 0, 1}), pt({0, 0, 1})});
    REQUIRE(w.has_value());
    CHECK(w->margin == doctest::Approx(1.0));
  }
}

TEST_CASE("cap construction") {
  Cap c = arc_cap_deg(0, 90);
  CHECK(c.ambient_dim() == 2);
  CHECK(c.sphere_dim() == 1);
  CHECK(c.generators().size() == 2);
  CHECK(c.simplicial());
  CHECK(c.witness_margin() == doctest::Approx(std::cos(M_PI / 4)).epsilon(1e-12));
  for (const auto& g : c.generators()) {
    CHECK(c.witness().coords().dot(g.coords()) >= c.witness_margin() - 1e-12);
  }
  CHECK_THROWS_AS(Cap::make({circle_point_deg(0), circle_point_deg(180)}),
                  NotShortError);
  CHECK_THROWS_AS(Cap::make({}), std::invalid_argument);
  CHECK_THROWS_AS(Cap::make({pt({1, 0}), pt({1, 0, 0})}), std::invalid_argument);
}

TEST_CASE("cap membership on the circle") {
  Cap quadrant = arc_cap_deg(0, 90);
  CHECK(cap_membership(quadrant, circle_point_deg(45)));
  CHECK(cap_membership(quadrant, circle_point_deg(0)));   // boundary is closed
  CHECK(cap_membership(quadrant, circle_point_deg(90)));
  CHECK_FALSE(cap_membership(quadrant, circle_point_deg(-10)));
  CHECK_FALSE(cap_membership(quadrant, circle_point_deg(100)));
  CHECK_FALSE(cap_membership(quadrant, circle_point_deg(225)));
  CHECK_THROWS_AS(cap_membership(quadrant, pt({1, 0, 0})), std::invalid_argument);
}

TEST_CASE("cap membership with redundant generators uses the feasibility engine") {
  // Three generators in the plane: dependent, so no simplicial shortcut.
  Cap c = Cap::make(
      {circle_point_deg(0), circle_point_deg(40), circle_point_deg(80)});
  CHECK_FALSE(c.simplicial());
  CHECK(cap_membership(c, circle_point_deg(40)));
  CHECK(cap_membership(c, circle_point_deg(79)));
  CHECK_FALSE(cap_membership(c, circle_point_deg(81)));
}

TEST_CASE("cap distance freezes known angles") {
  SUBCASE("apex projection gives a right angle") {
    Cap single = Cap::make({circle_point_deg(0)});
    CHECK(cap_distance(single, circle_point_deg(180)) == doctest::Approx(M_PI / 2));
    CHECK(cap_distance(single, circle_point_deg(90)) == doctest::Approx(M_PI / 2));
    CHECK(cap_distance(single, circle_point_deg(45)) == doctest::Approx(M_PI / 4));
    CHECK(cap_distance(single, circle_point_deg(0)) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("quadrant cap") {
    Cap quadrant = arc_cap_deg(0, 90);
    CHECK(cap_distance(quadrant, circle_point_deg(135)) == doctest::Approx(M_PI / 4));
    CHECK(cap_distance(quadrant, circle_point_deg(45)) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("distance and membership agree through the coupling tolerance") {
    Cap c = arc_cap_deg(20, 110);
    for (double deg = 0; deg < 360; deg += 7.0) {
      const SpherePoint x = circle_point_deg(deg);
      if (cap_membership(c, x)) {
        CHECK(cap_distance(c, x) <= tol::kDist);
      } else {
        CHECK(cap_distance(c, x) > tol::kDist);
      }
    }
  }
  SUBCASE("face enumeration limit surfaces as an error") {
    std::vector<SpherePoint> many;
    for (int i = 0; i <= 12; ++i) many.push_back(circle_point_deg(i));
    Cap wide = Cap::make(many);
    CHECK_THROWS_AS(cap_distance(wide, circle_point_deg(180)),
                    std::invalid_argument);
  }
}

TEST_CASE("short sets are unions with a shared witness") {
  ShortSet s = ShortSet::make({arc_cap_deg(0, 40), arc_cap_deg(60, 100)});
  CHECK(s.parts().size() == 2);
  CHECK(shortset_membership(s, circle_point_deg(20)));
  CHECK(shortset_membership(s, circle_point_deg(80)));
  CHECK_FALSE(shortset_membership(s, circle_point_deg(50)));
  // Distance to the union is the min over parts: 50 degrees sits 10 from both.
  CHECK(shortset_distance(s, circle_point_deg(50)) ==
        doctest::Approx(10.0 * M_PI / 180).epsilon(1e-9));
  CHECK(shortset_distance(s, circle_point_deg(80)) ==
        doctest::Approx(0.0).epsilon(1e-12));

  SUBCASE("parts without a common hemisphere are rejected") {
    CHECK_THROWS_AS(ShortSet::make({arc_cap_deg(-10, 10), arc_cap_deg(170, 190)}),
                    NotShortError);
  }
  SUBCASE("supplied witnesses are revalidated") {
    CHECK_THROWS_AS(
        ShortSet::make_with_witness({arc_cap_deg(0, 40)}, circle_point_deg(180)),
        NotShortError);
    ShortSet ok =
        ShortSet::make_with_witness({arc_cap_deg(0, 40)}, circle_point_deg(20));
    CHECK(testutil::near_point(ok.witness(), circle_point_deg(20), 1e-12));
  }
}

TEST_CASE("geodesic hull contains inputs and their combinations") {
  Cap hull = geodesic_hull({circle_point_deg(0), circle_point_deg(80)});
  CHECK(cap_membership(hull, circle_point_deg(0)));
  CHECK(cap_membership(hull, circle_point_deg(40)));
  CHECK(cap_membership(hull, circle_point_deg(80)));
  CHECK_FALSE(cap_membership(hull, circle_point_deg(-5)));
}

TEST_CASE("intersection witness over cap families") {
  SUBCASE("overlapping arcs intersect") {
    auto w = intersection_witness({arc_cap_deg(0, 90), arc_cap_deg(60, 150)});
    REQUIRE(w.has_value());
    // The witness is re-verified internally; re-check the overlap region.
    const double deg = std::atan2(w->coords()(1), w->coords()(0)) * 180 / M_PI;
    CHECK(deg >= 60.0 - 1e-9);
    CHECK(deg <= 90.0 + 1e-9);
  }
  SUBCASE("touching arcs intersect in the shared endpoint") {
    auto w = intersection_witness({arc_cap_deg(0, 90), arc_cap_deg(90, 170)});
    REQUIRE(w.has_value());
    CHECK(testutil::near_point(*w, circle_point_deg(90), 1e-7));
  }
  SUBCASE("disjoint cones report empty") {
    CHECK_FALSE(
        intersection_witness({Cap::make({pt({1, 0})}), Cap::make({pt({0, 1})})})
            .has_value());
    CHECK_FALSE(
        intersection_witness({arc_cap_deg(0, 40), arc_cap_deg(50, 90)}).has_value());
  }
  SUBCASE("three-way intersection") {
    auto w = intersection_witness(
        {arc_cap_deg(0, 90), arc_cap_deg(45, 135), arc_cap_deg(80, 170)});
    REQUIRE(w.has_value());
    const double deg = std::atan2(w->coords()(1), w->coords()(0)) * 180 / M_PI;
    CHECK(deg >= 80.0 - 1e-9);
    CHECK(deg <= 90.0 + 1e-9);
  }
}

TEST_CASE("separating halfspace pushes every generator strictly out") {
  Cap c = Cap::make({pt({0.9, 0.3, 0.3}), pt({0.8, -0.4, 0.4}), pt({1, 0.1, -0.2})});
  auto h = separating_halfspace(c);
  CHECK(h.alpha > 0.0);
  for (const auto& g : c.generators()) {
    CHECK(h.a.dot(g.coords()) + h.alpha <= -h.alpha + 1e-12);
  }
}

TEST_CASE("equator slicing by a great subsphere") {
  const SpherePoint north = pt({0, 0, 1});
  const Matrix basis = equator_basis(north);

  SUBCASE("straddling cap slices to the crossing direction") {
    const double a = 20.0 * M_PI / 180;
    Cap c = Cap::make({pt({std::cos(a), 0, std::sin(a)}),
                       pt({std::cos(a), 0, -std::sin(a)})});
    auto sliced = slice_to_equator(c, north, basis);
    REQUIRE(sliced.has_value());
    REQUIRE(sliced->ambient_dim() == 2);
    // The crossing of the generator pair is the x axis, whatever 2d frame the
    // basis picked; map it back to check.
    const Vector back = basis * sliced->generators().front().coords();
    CHECK(std::abs(back(0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(back(2)) < 1e-12);
  }
  SUBCASE("strictly upper cap misses the equator") {
    Cap c = Cap::make({pt({0.3, 0, 1}), pt({0, 0.3, 1})});
    CHECK_FALSE(slice_to_equator(c, north, basis).has_value());
  }
  SUBCASE("on-plane generators are kept") {
    Cap c = Cap::make({pt({1, 0, 0}), pt({0.9, 0.2, 0.3})});
    auto sliced = slice_to_equator(c, north, basis);
    REQUIRE(sliced.has_value());
    const Vector back = basis * sliced->generators().front().coords();
    CHECK(back(0) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("interior margin grades witness robustness") {
  Cap quadrant = arc_cap_deg(0, 90);
  CHECK(cap_interior_margin(quadrant, circle_point_deg(45)) > 0.1);
  CHECK(cap_interior_margin(quadrant, circle_point_deg(0)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // A flat cone inside a bigger ambient space has no interior at all.
  Cap flat = Cap::make({pt({1, 0, 0}), pt({0.7071067811865476, 0.7071067811865476, 0})});
  CHECK(cap_interior_margin(flat, pt({0.9238795325112867, 0.3826834323650898, 0})) ==
        doctest::Approx(0.0).epsilon(1e-12));
}
