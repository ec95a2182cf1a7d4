#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "parsets/bessel.hpp"

using namespace parsets;
using std::numbers::pi;

TEST_CASE("J0 and Y0 against high-precision references", "[bessel]") {
    // reference values computed independently to 17 digits
    const struct {
        double y, J, Y;
    } refs[] = {
        {0.1, 0.99750156206604003, -1.5342386513503668},
        {0.5, 0.9384698072408129, -0.44451873350670656},
        {1.0, 0.76519768655796655, 0.088256964215676958},
        {2.0, 0.22389077914123567, 0.51037567264974512},
        {5.0, -0.1775967713143383, -0.30851762524903378},
        {7.5, 0.2663396578803784, 0.11731328614820863},
        {10.0, -0.24593576445134834, 0.055671167283599391},
        {12.0, 0.047689310796833537, -0.22523731263436143},
        {15.0, -0.014224472826780773, 0.20546429603891826},
        {20.0, 0.16702466434058315, 0.062640596809383831},
        {35.0, -0.12684568275631257, 0.045797987195155641},
        {50.0, 0.055812327669251815, -0.098064995470077079},
    };
    for (const auto& ref : refs) {
        const auto b = bessel_jy(0.0, ref.y);
        INFO("y = " << ref.y);
        CHECK(b.J == Catch::Approx(ref.J).epsilon(1e-10).margin(1e-12));
        CHECK(b.Y == Catch::Approx(ref.Y).epsilon(1e-10).margin(1e-12));
    }
}

TEST_CASE("J0 series constant term", "[bessel]") {
    CHECK(bessel_jy(0.0, 1e-8).J == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("half order closed forms satisfy the modulus identity", "[bessel]") {
    for (double y : {0.05, 0.31, 1.7, 9.4, 33.0}) {
        const auto b = bessel_jy(0.5, y);
        CHECK(b.J * b.J + b.Y * b.Y == Catch::Approx(2.0 / (pi * y)).epsilon(1e-14));
        CHECK(bessel_m2(3, y) == Catch::Approx(2.0 / (pi * y)).epsilon(1e-14));
    }
}

TEST_CASE("unsupported orders are rejected", "[bessel]") {
    CHECK_THROWS_AS(bessel_jy(1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(bessel_jy(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(bessel_jy(0.0, -3.0), std::invalid_argument);
}

TEST_CASE("phi_d bounds and limits", "[bessel]") {
    for (int d : {2, 3}) {
        CHECK(phi_d(d, 0.0) == 0.0);
        CHECK(phi_d(d, 1e4) == Catch::Approx(1.0).epsilon(1e-14));
        double prev = -1.0;
        for (double z = 0.0; z <= 60.0; z += 0.37) {
            const double p = phi_d(d, z);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            CHECK(p >= prev); // monotone increase toward 1
            prev = p;
        }
    }
    CHECK_THROWS_AS(phi_d(2, -1.0), std::invalid_argument);
}
