#include <catch2/catch_amalgamated.hpp>

#include "parsets/grid.hpp"
#include "parsets/profile.hpp"

using namespace parsets;

TEST_CASE("make_grid basic arithmetic", "[grid]") {
    GridSpec g = make_grid({{0, 0, 0}, {1, 1, 0}}, 4, 2);
    CHECK(g.h() == Catch::Approx(0.25));
    CHECK(g.cell_count() == 16);

    GridSpec g3 = make_grid({{0, 0, 0}, {2, 2, 2}}, 8, 3);
    CHECK(g3.h() == Catch::Approx(0.25));
    CHECK(g3.cell_count() == 512);
}

TEST_CASE("make_grid rejects bad input", "[grid]") {
    CHECK_THROWS_AS(make_grid({{0, 0, 0}, {1, 2, 0}}, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_grid({{0, 0, 0}, {1, 1, 0}}, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_grid({{0, 0, 0}, {1, 1, 1}}, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid({{1, 0, 0}, {1, 1, 0}}, 4, 2), std::invalid_argument);
}

TEST_CASE("mask_from_points snapping", "[grid]") {
    GridSpec g = make_grid({{0, 0, 0}, {1, 1, 0}}, 4, 2);

    BinaryMask m = mask_from_points({{0.5, 0.5, 0}}, g);
    CHECK(m.count == 1);
    CHECK(m.occ[g.flat(2, 2)] == 1);

    BinaryMask m2 = mask_from_points({{0.52, 0.52, 0}, {0.55, 0.6, 0}}, g);
    CHECK(m2.count == 1); // same cell collapses

    CHECK_THROWS_WITH(mask_from_points({{1.5, 0.5, 0}}, g),
                      Catch::Matchers::ContainsSubstring("1.5"));
}

TEST_CASE("cell centers", "[grid]") {
    GridSpec g = make_grid({{0, 0, 0}, {1, 1, 0}}, 4, 2);
    auto c = g.center(0, 0);
    CHECK(c[0] == Catch::Approx(0.125));
    auto c2 = g.center(3, 3);
    CHECK(c2[1] == Catch::Approx(0.875));
}

TEST_CASE("geometric_radii schedules", "[grid]") {
    auto r1 = geometric_radii(0.1, 0.4, 1);
    REQUIRE(r1.size() == 3);
    CHECK(r1[0] == Catch::Approx(0.1));
    CHECK(r1[1] == Catch::Approx(0.2));
    CHECK(r1[2] == Catch::Approx(0.4));

    auto r2 = geometric_radii(0.1, 0.2, 2);
    REQUIRE(r2.size() == 3);
    CHECK(r2[1] == Catch::Approx(0.1 * std::sqrt(2.0)));

    CHECK_THROWS_AS(geometric_radii(0.4, 0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(geometric_radii(0.1, 0.4, 0), std::invalid_argument);
}
