#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "parsets/contents.hpp"
#include "parsets/gasket.hpp"
#include "parsets/shapes.hpp"

using namespace parsets;
using std::numbers::pi;

TEST_CASE("kappa at integer and fractional orders", "[contents]") {
    CHECK(kappa(0.0) == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(kappa(1.0) == Catch::Approx(2.0).epsilon(1e-14));
    CHECK(kappa(2.0) == Catch::Approx(pi).epsilon(1e-14));
    CHECK(kappa(3.0) == Catch::Approx(4.0 * pi / 3.0).epsilon(1e-14));
    // frozen high-precision references
    CHECK(kappa(0.5) == Catch::Approx(1.4688125832636094).epsilon(1e-12));
    CHECK(kappa(1.5) == Catch::Approx(2.5675407531904468).epsilon(1e-12));
    const double D = std::log(3.0) / std::log(2.0);
    CHECK(kappa(2.0 - D) == Catch::Approx(1.3841199244497224).epsilon(1e-12));
    CHECK_THROWS_AS(kappa(-0.1), std::invalid_argument);
}

TEST_CASE("kappa satisfies its defining identity", "[contents]") {
    for (double t = 0.0; t <= 5.0; t += 0.17)
        CHECK(kappa(t) * std::tgamma(1.0 + t / 2.0) ==
              Catch::Approx(std::pow(pi, t / 2.0)).epsilon(1e-12));
}

TEST_CASE("normalized series of the unit segment", "[contents]") {
    auto radii = geometric_radii(1e-5, 0.01, 8);
    auto p = shape_profile(parse_shape("seg:1"), radii);
    auto ns = normalized_series(p, 1.0, ContentKind::volume);
    // (2r + pi r^2) / (2r) -> 1; tiny radii make it approach the segment length
    CHECK(ns.values.front() == Catch::Approx(1.0).epsilon(1e-4));
    CHECK(ns.values.back() == Catch::Approx(1.0 + pi * 0.01 / 2.0).epsilon(1e-6));

    auto sd = normalized_series(p, 2.0, ContentKind::surface);
    CHECK(sd.zero_by_convention);
    CHECK(sd.values.back() == 0.0);

    CHECK_THROWS_AS(normalized_series(p, 2.5, ContentKind::volume), std::invalid_argument);
}

TEST_CASE("point mask content at s=0", "[contents]") {
    auto radii = geometric_radii(1e-4, 0.05, 8);
    auto p = shape_profile(parse_shape("point"), radii);
    auto ns = normalized_series(p, 0.0, ContentKind::volume);
    for (double v : ns.values) CHECK(v == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("content bounds on segment and gasket", "[contents]") {
    auto radii = geometric_radii(1e-4, 0.5, 16);
    auto seg = shape_profile(parse_shape("seg:1"), radii);
    auto est = content_bounds(seg, 1.0, ContentKind::volume);
    CHECK(est.lower == Catch::Approx(1.0).epsilon(0.02));
    CHECK(est.upper == Catch::Approx(1.0).epsilon(0.02));
    CHECK(est.lower <= est.upper);

    const double u = 1.0 / (4.0 * std::numbers::sqrt3);
    const double D = std::log(3.0) / std::log(2.0);
    auto gr = geometric_radii(std::ldexp(u, -22), 1.0, 16);
    auto gp = gasket_profile(gr);
    const Window w{gr.front(), 4.0 * gr.front()}; // smallest two octaves
    auto sb = content_bounds(gp, D, ContentKind::surface, w);
    const double k2d = kappa(2.0 - D);
    CHECK(sb.upper * k2d == Catch::Approx(1.8460392168490247).epsilon(0.005));
    CHECK(sb.lower * k2d == Catch::Approx(1.7472845677600413).epsilon(0.005));
    auto vb = content_bounds(gp, D, ContentKind::volume, w);
    CHECK(vb.upper * k2d == Catch::Approx(1.8144883233777351).epsilon(0.005));
    CHECK(vb.lower * k2d == Catch::Approx(1.8108220104657565).epsilon(0.005));

    CHECK_THROWS_AS(content_bounds(seg, 1.0, ContentKind::volume, Window{1e-4, 1.2e-4}),
                    std::invalid_argument);
}

TEST_CASE("average content of a constant series is the constant", "[contents]") {
    // build a profile whose volume-normalized series is exactly c = 2.75 at s=1
    std::vector<double> radii = geometric_radii(1e-4, 1.0, 12);
    RadialProfile p;
    p.radii = radii;
    p.dim = 2;
    p.source = ProfileSource::analytic;
    const double c = 2.75;
    for (double r : radii) {
        p.volume.push_back(c * kappa(1.0) * r);
        p.surface.push_back(c * kappa(1.0));
    }
    p.surface_deriv = p.surface;
    CHECK(average_content(p, 1.0, ContentKind::volume) == Catch::Approx(c).epsilon(1e-12));
    CHECK(average_content(p, 1.0, ContentKind::surface) == Catch::Approx(c).epsilon(1e-12));

    RadialProfile shorty = p;
    shorty.radii = {0.1, 0.2, 0.3};
    shorty.volume = {0.1, 0.2, 0.3};
    shorty.surface = {1, 1, 1};
    shorty.surface_deriv = shorty.surface;
    CHECK_THROWS_AS(average_content(shorty, 1.0, ContentKind::volume), std::invalid_argument);
}

TEST_CASE("gasket average surface content matches the renewal value", "[contents]") {
    const double u = 1.0 / (4.0 * std::numbers::sqrt3);
    const double D = std::log(3.0) / std::log(2.0);
    // closed-form piecewise integration gives (3/2) u^(D-1) / (D (D-1) ln 2)
    const double shat = 1.5 * std::pow(u, D - 1.0) / (D * (D - 1.0) * std::log(2.0));
    CHECK(shat == Catch::Approx(0.7522933812757873).epsilon(1e-12));

    // at t = 2^-60 u the Cesaro average sits within O(1/|log t|) of the limit
    auto radii = geometric_radii(std::ldexp(u, -60), 1.0, 32);
    auto p = gasket_profile(radii);
    const double avg = average_content(p, D, ContentKind::surface);
    const double norm = (2.0 - D) * kappa(2.0 - D);
    CHECK(avg * norm == Catch::Approx(shat).epsilon(0.2));
}

TEST_CASE("dimension estimates", "[contents]") {
    auto radii = geometric_radii(1e-4, 2e-2, 12);
    auto seg = shape_profile(parse_shape("seg:1"), radii);
    auto fit = estimate_dimension(seg, ContentKind::volume);
    CHECK(fit.dim == Catch::Approx(1.0).margin(0.02));

    auto pt = shape_profile(parse_shape("point"), radii);
    auto fit0 = estimate_dimension(pt, ContentKind::volume);
    CHECK(fit0.dim == Catch::Approx(0.0).margin(0.02));

    const double u = 1.0 / (4.0 * std::numbers::sqrt3);
    auto gp = gasket_profile(geometric_radii(std::ldexp(u, -14), u, 12));
    auto fitg = estimate_dimension(gp, ContentKind::volume);
    CHECK(fitg.dim == Catch::Approx(std::log(3.0) / std::log(2.0)).margin(0.02));
    auto fitgs = estimate_dimension(gp, ContentKind::surface);
    CHECK(fitgs.dim == Catch::Approx(std::log(3.0) / std::log(2.0)).margin(0.03));

    RadialProfile degenerate = seg;
    degenerate.radii.resize(4);
    degenerate.volume.resize(4);
    degenerate.surface.resize(4);
    degenerate.surface_deriv.resize(4);
    CHECK_THROWS_AS(estimate_dimension(degenerate, ContentKind::volume),
                    std::invalid_argument);
}

TEST_CASE("dimension estimate is invariant under profile rescaling", "[contents]") {
    const double lam = 7.5;
    auto radii = geometric_radii(1e-4, 2e-2, 12);
    auto p = shape_profile(parse_shape("seg:1"), radii);
    RadialProfile q = p;
    for (std::size_t k = 0; k < q.size(); ++k) {
        q.radii[k] *= lam;
        q.volume[k] *= lam * lam;
        q.surface[k] *= lam;
        q.surface_deriv[k] *= lam;
    }
    auto f1 = estimate_dimension(p, ContentKind::volume);
    auto f2 = estimate_dimension(q, ContentKind::volume);
    CHECK(f1.dim == Catch::Approx(f2.dim).epsilon(1e-10));
}
