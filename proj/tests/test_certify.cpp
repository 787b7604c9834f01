#include "spherecover/certify.hpp"

#include <doctest.h>

#include <cmath>

#include "spherecover/oracle.hpp"
#include "test_util.hpp"

using namespace spherecover;
using testutil::arc_cap_deg;
using testutil::circle_point_deg;
using testutil::pt;

namespace {

std::vector<SpherePoint> equilateral_triangle() {
  return {circle_point_deg(90), circle_point_deg(210), circle_point_deg(330)};
}

std::vector<SpherePoint> regular_tetrahedron() {
  return {pt({1, 1, 1}), pt({1, -1, -1}), pt({-1, 1, -1}), pt({-1, -1, 1})};
}

}  // namespace

TEST_CASE("facet caps of a surrounding simplex") {
  SUBCASE("triangle on the circle gives three arcs") {
    auto caps = facet_caps(equilateral_triangle());
    REQUIRE(caps.size() == 3);
    for (const auto& c : caps) {
      CHECK(c.generators().size() == 2);
      CHECK(c.ambient_dim() == 2);
    }
    // Cap j is spanned by all vertices but j, so vertex j lies in the other
    // two caps and not in cap j.
    const auto verts = equilateral_triangle();
    for (int j = 0; j < 3; ++j) {
      CHECK_FALSE(cap_membership(caps[j], verts[j]));
      CHECK(cap_membership(caps[(j + 1) % 3], verts[j]));
      CHECK(cap_membership(caps[(j + 2) % 3], verts[j]));
    }
  }
  SUBCASE("tetrahedron on the 2-sphere gives four caps") {
    auto caps = facet_caps(regular_tetrahedron());
    REQUIRE(caps.size() == 4);
    for (const auto& c : caps) {
      CHECK(c.generators().size() == 3);
      CHECK(c.simplicial());
    }
  }
  SUBCASE("origin on the boundary is rejected") {
    CHECK_THROWS_AS(
        facet_caps({circle_point_deg(0), circle_point_deg(90), circle_point_deg(180)}),
        std::invalid_argument);
  }
  SUBCASE("wrong count is rejected") {
    CHECK_THROWS_AS(facet_caps({circle_point_deg(0), circle_point_deg(180)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(facet_caps({pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})}),
                    std::invalid_argument);
  }
}

TEST_CASE("cover certificate for facet cap families") {
  SUBCASE("equilateral cover is certified with symmetric witnesses") {
    auto cert = cover_certificate(facet_caps(equilateral_triangle()));
    CHECK(cert.certified);
    CHECK(cert.condition_i);
    CHECK(cert.condition_ii);
    CHECK(cert.condition_iii.nondegenerate);
    CHECK(cert.condition_iii.origin_interior);
    REQUIRE(cert.condition_iii.origin_barycentric.size() == 3);
    for (double l : cert.condition_iii.origin_barycentric) {
      CHECK(l == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    }
    REQUIRE(cert.witnesses.size() == 3);
    // Leaving cap j out, the remaining pair shares exactly vertex j.
    const auto verts = equilateral_triangle();
    for (int j = 0; j < 3; ++j) {
      REQUIRE(cert.witnesses[j].has_value());
      CHECK(testutil::near_point(*cert.witnesses[j], verts[j], 1e-7));
    }
    // Exact-touch witnesses sit on cap boundaries: margins collapse and the
    // certificate flags itself fragile.
    CHECK(cert.fragile);
  }
  SUBCASE("random surrounding simplices are always certified") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      for (int n = 1; n <= 3; ++n) {
        CAPTURE(seed);
        CAPTURE(n);
        auto cert = cover_certificate(
            facet_caps(random_simplex_with_origin(n, seed)));
        CHECK(cert.certified);
        CHECK_FALSE(cert.common_point.has_value());
      }
    }
  }
  SUBCASE("gapped arc family is refuted through condition ii") {
    auto cert = cover_certificate(
        {arc_cap_deg(0, 100), arc_cap_deg(90, 190), arc_cap_deg(180, 280)});
    CHECK_FALSE(cert.certified);
    CHECK(cert.condition_i);
    CHECK_FALSE(cert.condition_ii);
    // The pair skipping the middle arc never meets.
    REQUIRE(cert.witnesses.size() == 3);
    CHECK_FALSE(cert.witnesses[1].has_value());
    CHECK(cert.witnesses[0].has_value());
    CHECK(cert.witnesses[2].has_value());
  }
  SUBCASE("family with a common point is refuted through condition i") {
    auto cert = cover_certificate(
        {arc_cap_deg(0, 100), arc_cap_deg(50, 150), arc_cap_deg(90, 190)});
    CHECK_FALSE(cert.certified);
    CHECK_FALSE(cert.condition_i);
    REQUIRE(cert.common_point.has_value());
    // All three arcs contain [90, 100].
    const double deg =
        std::atan2(cert.common_point->coords()(1), cert.common_point->coords()(0)) *
        180 / M_PI;
    CHECK(deg >= 90.0 - 1e-9);
    CHECK(deg <= 100.0 + 1e-9);
  }
  SUBCASE("wrong family size is rejected") {
    CHECK_THROWS_AS(cover_certificate({arc_cap_deg(0, 100), arc_cap_deg(90, 190)}),
                    std::invalid_argument);
  }
}

TEST_CASE("uncovered witness for undersized families") {
  SUBCASE("single cap: orthogonal direction") {
    Cap c = Cap::make({pt({0, 0, 1})});
    const SpherePoint w = uncovered_witness({c});
    CHECK(std::abs(w.coords()(2)) <= 1e-6);
    CHECK_FALSE(cap_membership(c, w));
  }
  SUBCASE("tetrahedron minus one cap") {
    auto caps = facet_caps(regular_tetrahedron());
    caps.pop_back();
    const SpherePoint w = uncovered_witness(caps);
    for (const auto& c : caps) {
      CHECK_FALSE(cap_membership(c, w));
      CHECK(cap_distance(c, w) > tol::kDist);
    }
  }
  SUBCASE("two arcs on the circle") {
    const SpherePoint w = uncovered_witness({arc_cap_deg(0, 100), arc_cap_deg(120, 250)});
    CHECK_FALSE(cap_membership(arc_cap_deg(0, 100), w));
    CHECK_FALSE(cap_membership(arc_cap_deg(120, 250), w));
  }
  SUBCASE("adjacent thirds leave the opposite point uncovered") {
    // Witness directions point at 180 and 300 degrees; the solved direction
    // normalizes to the 60 degree point.
    const SpherePoint w =
        uncovered_witness({arc_cap_deg(120, 240), arc_cap_deg(240, 360)});
    CHECK(testutil::near_point(w, circle_point_deg(60), 1e-9));
  }
  SUBCASE("full-size families are refused") {
    CHECK_THROWS_AS(uncovered_witness(facet_caps(equilateral_triangle())),
                    std::invalid_argument);
  }
  SUBCASE("parallel witnesses need the perturbation retry") {
    // Two identical caps give a singular witness matrix; the seeded
    // perturbation must still produce a verified point.
    Cap c = arc_cap_deg(10, 60);
    const SpherePoint w = uncovered_witness({c, c});
    CHECK_FALSE(cap_membership(c, w));
  }
}

TEST_CASE("short set family check expands part selections") {
  SUBCASE("shattered equilateral arcs still satisfy the conditions") {
    // Each 120 degree arc split at its midpoint into two sub-arcs.
    auto split = [](double a, double b) {
      return ShortSet::make({arc_cap_deg(a, (a + b) / 2), arc_cap_deg((a + b) / 2, b)});
    };
    auto rep = shortset_family_check(
        {split(90, 210), split(210, 330), split(330, 450)});
    CHECK(rep.conditions_hold);
    CHECK(rep.condition_i);
    CHECK(rep.condition_ii);
    CHECK(rep.condition_iii.nondegenerate);
    CHECK(rep.condition_iii.origin_interior);
    REQUIRE(rep.witnesses.size() == 3);
    // Dropping set j leaves the two arcs that touch exactly at the vertex
    // opposite j.
    const auto verts = equilateral_triangle();
    CHECK(testutil::near_point(*rep.witnesses[0], verts[2], 1e-7));
    CHECK(testutil::near_point(*rep.witnesses[1], verts[0], 1e-7));
    CHECK(testutil::near_point(*rep.witnesses[2], verts[1], 1e-7));
  }
  SUBCASE("gapped union fails condition ii") {
    auto rep = shortset_family_check({
        ShortSet::make({arc_cap_deg(0, 50), arc_cap_deg(50, 100)}),
        ShortSet::make({arc_cap_deg(90, 190)}),
        ShortSet::make({arc_cap_deg(180, 280)}),
    });
    CHECK_FALSE(rep.conditions_hold);
    CHECK_FALSE(rep.condition_ii);
  }
  SUBCASE("shared point fails condition i") {
    auto rep = shortset_family_check({
        ShortSet::make({arc_cap_deg(-20, 20)}),
        ShortSet::make({arc_cap_deg(-10, 30)}),
        ShortSet::make({arc_cap_deg(0, 40)}),
    });
    CHECK_FALSE(rep.conditions_hold);
    CHECK_FALSE(rep.condition_i);
    CHECK(rep.common_point.has_value());
  }
  SUBCASE("singleton short sets agree with the cap certificate") {
    auto caps = facet_caps(regular_tetrahedron());
    std::vector<ShortSet> sets;
    for (const auto& c : caps) sets.push_back(ShortSet::make({c}));
    auto rep = shortset_family_check(sets);
    auto cert = cover_certificate(caps);
    CHECK(rep.conditions_hold == cert.certified);
    CHECK(rep.condition_i == cert.condition_i);
    CHECK(rep.condition_ii == cert.condition_ii);
    REQUIRE(rep.witnesses.size() == cert.witnesses.size());
    for (std::size_t j = 0; j < rep.witnesses.size(); ++j) {
      REQUIRE(rep.witnesses[j].has_value());
      REQUIRE(cert.witnesses[j].has_value());
      CHECK(testutil::near_point(*rep.witnesses[j], *cert.witnesses[j], 1e-9));
    }
  }
  SUBCASE("selection guard rejects explosive products") {
    std::vector<Cap> many;
    for (int i = 0; i < 101; ++i) {
      many.push_back(arc_cap_deg(i * 0.5, i * 0.5 + 0.2));
    }
    ShortSet s = ShortSet::make(many);
    CHECK_THROWS_AS(shortset_family_check({s, s, s}), std::invalid_argument);
  }
  SUBCASE("wrong set count is rejected") {
    ShortSet s = ShortSet::make({arc_cap_deg(0, 10)});
    CHECK_THROWS_AS(shortset_family_check({s, s}), std::invalid_argument);
  }
}

TEST_CASE("certified random families satisfy the witness simplex conditions") {
  for (std::uint64_t seed = 11; seed <= 14; ++seed) {
    auto cert = cover_certificate(facet_caps(random_simplex_with_origin(2, seed)));
    REQUIRE(cert.certified);
    REQUIRE(cert.witnesses.size() == 4);
    std::vector<SpherePoint> ws;
    for (const auto& w : cert.witnesses) {
      REQUIRE(w.has_value());
      ws.push_back(*w);
    }
    CHECK(simplex_nondegenerate(ws));
    CHECK(origin_interior(cert.condition_iii.origin_barycentric));
    CHECK(cert.margins.size() == 4);
  }
}
