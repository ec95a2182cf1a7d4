#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "parsets/wiener.hpp"

using namespace parsets;
using std::numbers::pi;

namespace {

double closed_surface_3d(double r, double t) {
    return 4 * pi * r * r + 2 * pi * t + 8 * r * std::sqrt(2 * pi * t);
}

double closed_volume_3d(double r, double t) {
    return 2 * pi * t * r + 4 * r * r * std::sqrt(2 * pi * t) + 4.0 / 3.0 * pi * r * r * r;
}

} // namespace

TEST_CASE("brownian paths are deterministic and scaled correctly", "[brownian]") {
    const auto a = brownian_path(3, 1.0, 100, 42);
    const auto b = brownian_path(3, 1.0, 100, 42);
    REQUIRE(a.points.size() == 101);
    CHECK(a.points[0][0] == 0.0);
    for (std::size_t k = 0; k < a.points.size(); ++k)
        for (int c = 0; c < 3; ++c) REQUIRE(a.points[k][c] == b.points[k][c]);
    const auto c = brownian_path(3, 1.0, 100, 43);
    CHECK(a.points[100][0] != c.points[100][0]);
}

TEST_CASE("endpoint variance matches the horizon", "[brownian]") {
    const int n = 10000;
    double acc = 0.0;
    for (int s = 0; s < n; ++s) {
        const auto p = brownian_path(2, 0.7, 1, 9000 + s);
        acc += p.points[1][0] * p.points[1][0] + p.points[1][1] * p.points[1][1];
    }
    CHECK(acc / (2 * n) == Catch::Approx(0.7).epsilon(0.05));
}

TEST_CASE("d=3 mean surface matches its closed-form reduction", "[wiener]") {
    for (double r : {0.01, 0.1, 1.0}) {
        for (double t : {0.01, 0.32, 1.0}) {
            INFO("r=" << r << " t=" << t);
            CHECK(mean_sausage_surface(3, r, t) ==
                  Catch::Approx(closed_surface_3d(r, t)).epsilon(1e-8));
        }
    }
}

TEST_CASE("d=3 mean volume matches its closed-form reduction", "[wiener]") {
    for (double r : {0.05, 0.2}) {
        CHECK(mean_sausage_volume(3, r, 1.0) ==
              Catch::Approx(closed_volume_3d(r, 1.0)).epsilon(1e-6));
    }
    CHECK(mean_sausage_volume(3, 0.1, 1.0) == Catch::Approx(0.7327724519).epsilon(1e-6));
}

TEST_CASE("d=2 mean surface against frozen quadrature references", "[wiener]") {
    const struct {
        double r, t, es;
    } refs[] = {
        {0.1, 1.0, 7.4540259796009},
        {0.05, 0.5, 5.6354556234618},
        {0.2, 2.0, 10.159036751521},
        {0.5, 1.0, 8.446088896878},
        {1.0, 1.0, 11.404933868481},
        {0.01, 1.0, 17.572198658421},
    };
    for (const auto& ref : refs) {
        INFO("r=" << ref.r << " t=" << ref.t);
        CHECK(mean_sausage_surface(2, ref.r, ref.t) == Catch::Approx(ref.es).epsilon(1e-7));
    }
}

TEST_CASE("doubling the quadrature cutoff does not move the result", "[wiener]") {
    detail::SausageQuadOptions twice;
    twice.cutoff_scale = 2.0;
    for (int d : {2, 3}) {
        for (double r : {0.03, 0.4}) {
            const double a = mean_sausage_surface(d, r, 1.0);
            const double b = mean_sausage_surface(d, r, 1.0, twice);
            INFO("d=" << d << " r=" << r);
            CHECK(a == Catch::Approx(b).epsilon(1e-9));
        }
    }
}

TEST_CASE("mean volume is nondecreasing in r", "[wiener]") {
    double prev = 0.0;
    for (double r : {0.05, 0.1, 0.2, 0.4}) {
        const double v = mean_sausage_volume(3, r, 1.0);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("d=2 small-r normalization approaches pi from above", "[wiener]") {
    const double c3 = 1e-3 * std::pow(std::log(1e-3), 2) * mean_sausage_surface(2, 1e-3, 1.0);
    const double c4 = 1e-4 * std::pow(std::log(1e-4), 2) * mean_sausage_surface(2, 1e-4, 1.0);
    CHECK(c3 / pi == Catch::Approx(1.1275).epsilon(0.01));
    CHECK(c4 / pi == Catch::Approx(1.0961).epsilon(0.01));
    CHECK(c4 < c3);
}

TEST_CASE("degenerate path profiles like a point", "[wiener]") {
    const auto path = brownian_path(2, 1e-12, 50, 7);
    auto radii = geometric_radii(0.05, 0.2, 4);
    const auto p = sausage_profile(path, radii, 256);
    for (std::size_t k = 0; k < radii.size(); ++k)
        CHECK(p.volume[k] == Catch::Approx(pi * radii[k] * radii[k]).epsilon(0.05));
}

TEST_CASE("undersampled paths are refused", "[wiener]") {
    const auto path = brownian_path(2, 1.0, 10, 3); // steps ~ 0.3 apart
    CHECK_THROWS_WITH(sausage_profile(path, {0.05, 0.1}, 64),
                      Catch::Matchers::ContainsSubstring("undersampled"));
}

TEST_CASE("small ensemble tracks the mean formulas", "[wiener][slow]") {
    auto ens = sausage_ensemble(3, 1.0, 20000, 96, {0.25}, 2024, 10);
    CHECK(ens.mean_volume[0] == Catch::Approx(mean_sausage_volume(3, 0.25, 1.0)).epsilon(0.15));
    CHECK(ens.mean_surface[0] == Catch::Approx(mean_sausage_surface(3, 0.25, 1.0)).epsilon(0.20));
}

TEST_CASE("asymptotic table columns approach their limits", "[wiener]") {
    auto tab3 = asymptotic_table(3, {1e-3, 1e-4, 1e-5}, 1.0);
    REQUIRE(tab3.rows.size() == 3);
    const std::size_t es_col = 4;
    CHECK(tab3.limits[es_col] == Catch::Approx(pi));
    double prev_gap = 1e9;
    for (const auto& row : tab3.rows) {
        const double gap = std::abs(row[es_col] / pi - 1.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.02);

    auto ens = sausage_ensemble(2, 1.0, 50000, 64, {0.1}, 5, 2);
    auto tab2 = asymptotic_table(2, {0.1}, 1.0, &ens);
    REQUIRE(tab2.columns.size() == 7);
    CHECK(std::isfinite(tab2.rows[0][5]));
}
