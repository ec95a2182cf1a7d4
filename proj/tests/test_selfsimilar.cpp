#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "parsets/selfsimilar.hpp"

using namespace parsets;
using std::numbers::pi;
using std::numbers::sqrt3;

TEST_CASE("similarity dimension roots", "[selfsimilar]") {
    CHECK(similarity_dimension({0.5, 0.5, 0.5}) ==
          Catch::Approx(std::log(3.0) / std::log(2.0)).epsilon(1e-13));
    CHECK(similarity_dimension({1.0 / 3.0, 1.0 / 3.0}) ==
          Catch::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-13));
    // root of x + x^2 = 1 with x = 2^-D: the golden-ratio dimension
    CHECK(similarity_dimension({0.5, 0.25}) ==
          Catch::Approx(0.69424191363061731).epsilon(1e-12));
    // residual contract
    const double D = similarity_dimension({0.41, 0.27, 0.13});
    double acc = 0.0;
    for (double r : {0.41, 0.27, 0.13}) acc += std::pow(r, D);
    CHECK(std::abs(acc - 1.0) <= 1e-12);

    CHECK_THROWS_AS(similarity_dimension({0.5}), std::invalid_argument);
    CHECK_THROWS_AS(similarity_dimension({0.5, 1.2}), std::invalid_argument);
}

TEST_CASE("lattice classification", "[selfsimilar]") {
    auto a = classify_lattice({0.5, 0.5, 0.5});
    REQUIRE(a.arithmetic);
    CHECK(a.h == Catch::Approx(std::log(2.0)).epsilon(1e-12));

    auto b = classify_lattice({0.5, 0.25});
    REQUIRE(b.arithmetic);
    CHECK(b.h == Catch::Approx(std::log(2.0)).epsilon(1e-12));

    auto c = classify_lattice({0.25, 0.5});
    REQUIRE(c.arithmetic);
    CHECK(c.h == Catch::Approx(std::log(2.0)).epsilon(1e-12));

    auto d = classify_lattice({0.5, 1.0 / 3.0});
    CHECK_FALSE(d.arithmetic); // ln2, ln3 incommensurable at any resolution

    auto e = classify_lattice({0.3, 0.09});
    REQUIRE(e.arithmetic); // logs are l and 2l
    CHECK(e.h == Catch::Approx(-std::log(0.3)).epsilon(1e-12));
}

TEST_CASE("attractor bounds and rasterization of the gasket", "[selfsimilar]") {
    auto ifs = gasket_ifs();
    const Box b = attractor_bounds(ifs);
    CHECK(b.lo[0] == Catch::Approx(0.0).margin(1e-10));
    CHECK(b.hi[0] == Catch::Approx(1.0).margin(1e-10));
    CHECK(b.hi[1] == Catch::Approx(sqrt3 / 2.0).margin(1e-10));
    CHECK(attractor_diameter(ifs) == Catch::Approx(std::hypot(1.0, sqrt3 / 2.0)).margin(1e-9));

    GridSpec g = make_grid({{-0.15, -0.15, 0}, {1.15, 1.15, 0}}, 512, 2);
    auto mask = rasterize_attractor(ifs, g);
    CHECK(mask.count > 1000);

    // every stamped cell center must lie within h of the attractor: check a
    // necessary condition, distance to the three corner points is <= diam
    // and the profile matches the exact formulas (next test does this finely)
    auto f = exact_edt(mask);
    auto radii = geometric_radii(8 * g.h(), 0.12, 6);
    auto p = sample_profile(f, radii);
    for (std::size_t k = 0; k < radii.size(); ++k) {
        double Ve = 0, Se = 0;
        gasket_exact(radii[k], Ve, Se);
        CHECK(p.volume[k] == Catch::Approx(Ve).epsilon(0.04));
        CHECK(p.surface[k] == Catch::Approx(Se).epsilon(0.04));
    }
}

TEST_CASE("single-map systems are rejected", "[selfsimilar]") {
    IFSystem ifs;
    ifs.dim = 2;
    ifs.maps.push_back(similarity_2d(0.5, 0.0, {0, 0, 0}));
    GridSpec g = make_grid({{0, 0, 0}, {1, 1, 0}}, 64, 2);
    CHECK_THROWS_AS(rasterize_attractor(ifs, g), std::invalid_argument);
}

TEST_CASE("r_function reproduces the gasket closed forms", "[selfsimilar]") {
    const double u = 1.0 / (4.0 * sqrt3);
    auto radii = geometric_radii(std::ldexp(u, -10), 1.0, 32);
    auto p = gasket_profile(radii);
    auto rs = r_function(p, {0.5, 0.5, 0.5}, 2);
    REQUIRE(rs.r.size() == radii.size());
    for (std::size_t k = 0; k < rs.r.size(); ++k) {
        const double r = rs.r[k];
        double expect;
        if (r <= u * (1 + 1e-12))
            expect = -(4.0 * pi + 6.0 * sqrt3) * r;
        else if (r <= 0.5 * (1 + 1e-12))
            expect = -1.5 - 4.0 * pi * r;
        else
            expect = 3.0 + 2.0 * pi * r;
        // interpolation error only; S is piecewise linear in r, interp in log r
        CHECK(rs.R[k] == Catch::Approx(expect).margin(2e-4).epsilon(1e-3));
    }
    // above the largest ratio the indicator sum is empty
    const double rtop = rs.r.back();
    CHECK(rtop == Catch::Approx(1.0));
    double Vt = 0, St = 0;
    gasket_exact(rtop, Vt, St);
    CHECK(rs.R.back() == Catch::Approx(St).epsilon(1e-12));
}

TEST_CASE("r_function is linear in the surface column", "[selfsimilar]") {
    const double u = 1.0 / (4.0 * sqrt3);
    auto radii = geometric_radii(std::ldexp(u, -6), 1.0, 16);
    auto p = gasket_profile(radii);
    auto rs1 = r_function(p, {0.5, 0.5, 0.5}, 2);
    RadialProfile q = p;
    const double lam = 3.25;
    for (double& s : q.surface) s *= lam;
    auto rs2 = r_function(q, {0.5, 0.5, 0.5}, 2);
    for (std::size_t k = 0; k < rs1.R.size(); ++k)
        REQUIRE(rs2.R[k] == Catch::Approx(lam * rs1.R[k]).epsilon(1e-12).margin(1e-12));
}

TEST_CASE("renewal integral from the exact gasket profile", "[selfsimilar]") {
    const double u = 1.0 / (4.0 * sqrt3);
    const double D = std::log(3.0) / std::log(2.0);
    auto radii = renewal_radii(std::ldexp(u, -16), 32, {0.5, 0.5, 0.5});
    auto p = gasket_profile(radii);
    auto rs = r_function(p, {0.5, 0.5, 0.5}, 2);
    auto res = renewal_s_content(rs, D, {0.5, 0.5, 0.5}, 2);
    CHECK(res.eta == Catch::Approx(std::log(2.0)).epsilon(1e-12));
    // closed-form oracle: (3/2) u^(D-1) / (D (D-1) ln 2)
    CHECK(res.integral == Catch::Approx(0.7522933812757873).epsilon(2e-4));
    CHECK(res.lattice.arithmetic);
    CHECK(res.lattice.h == Catch::Approx(std::log(2.0)).epsilon(1e-12));
    // R ~ r on the gasket: fitted exponent 1, gamma_hat = D
    CHECK(res.fit_exponent == Catch::Approx(1.0).margin(0.01));
    CHECK(res.gamma_hat == Catch::Approx(D).margin(0.02));
    // |R(r)| r^-1 bounded on (0, u]
    for (std::size_t k = 0; k < rs.r.size(); ++k)
        if (rs.r[k] <= u)
            REQUIRE(std::abs(rs.R[k]) / rs.r[k] <= (4.0 * pi + 6.0 * sqrt3) * 1.001);
}

TEST_CASE("constant zero R gives zero content", "[selfsimilar]") {
    RSamples rs;
    for (double r : geometric_radii(1e-4, 1.0, 8)) {
        rs.r.push_back(r);
        rs.R.push_back(0.0);
    }
    auto res = renewal_s_content(rs, 1.0, {0.5, 0.5}, 2);
    CHECK(res.integral == 0.0);
}

TEST_CASE("divergent endpoint fit is refused by name", "[selfsimilar]") {
    // R ~ r^(d-1-D): gamma_hat = 0, the renewal integrand is not integrable
    const double D = 1.5;
    RSamples rs;
    for (double r : geometric_radii(1e-4, 1.0, 8)) {
        rs.r.push_back(r);
        rs.R.push_back(std::pow(r, 2.0 - 1.0 - D));
    }
    CHECK_THROWS_WITH(renewal_s_content(rs, D, {0.5, 0.5}, 2),
                      Catch::Matchers::ContainsSubstring("decay hypothesis"));
}
