#include "doctest.h"

#include <cmath>
#include <random>

#include "rectsurf/tile_geometry.hpp"

using namespace rectsurf;

namespace {

CircleCoord cc(std::int64_t n, std::int64_t d) { return CircleCoord(n, d); }

Rectangle rect(std::int64_t tn, std::int64_t td, std::int64_t tn2, std::int64_t td2,
               std::int64_t pn, std::int64_t pd, std::int64_t pn2, std::int64_t pd2) {
    return Rectangle(Arc(cc(tn, td), cc(tn2, td2)), Arc(cc(pn, pd), cc(pn2, pd2)));
}

} // namespace

TEST_CASE("height reparametrization basics") {
    for (double kappa : {0.0, 0.25, 0.5, 1.0}) {
        CHECK(zeta(0, kappa) == 0);
        CHECK(zeta(1, kappa) == 1);
        CHECK(zeta(0.5, kappa) == 0.5);
        double prev = 0;
        for (int i = 1; i <= 40; ++i) {
            double x = i / 41.0;
            double z = zeta(x, kappa);
            CHECK(z > prev); // strictly monotone
            prev = z;
            CHECK(std::fabs(zeta(1 - x, kappa) + z - 1.0) <= 1e-12);
            CHECK(std::fabs(zeta_inverse(z, kappa) - x) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(zeta(-0.1, 0), std::domain_error);
    CHECK_THROWS_AS(zeta(1.1, 0), std::domain_error);
    CHECK_THROWS_AS(zeta(0.5, -1), std::domain_error);
}

TEST_CASE("kappa = 0 endpoint slope is infinite, kappa > 0 softens the middle") {
    // near 0 zeta_0(x) ~ sqrt(pi x / 2) * (2/pi), so the difference quotient blows up
    CHECK(zeta(1e-10, 0) / 1e-10 > 1e3);
    // larger kappa flattens the map toward 1/2 away from the endpoints
    CHECK(zeta(0.25, 1.0) > zeta(0.25, 0.0));
    CHECK(zeta(0.25, 0.0) > 0.25);
}

TEST_CASE("join embedding collapses the right coordinate at the ends") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 1000; ++i) {
        double th = u(rng), ph = u(rng), tau = u(rng);
        Vec4 v = embed_r4(th, ph, tau);
        CHECK(std::fabs(norm(v) - 1.0) <= 1e-12);
    }
    Vec4 p0 = embed_r4(0.3, 0.7, 0);
    CHECK(p0 == embed_r4(0.9, 0.7, 0)); // theta immaterial at tau = 0
    CHECK(p0[2] == 0);
    CHECK(p0[3] == 0);
    Vec4 p1 = embed_r4(0.3, 0.7, 1);
    CHECK(p1 == embed_r4(0.3, 0.1, 1)); // phi immaterial at tau = 1
    CHECK(p1[0] == 0);
    CHECK(p1[1] == 0);
    CHECK_THROWS_AS(embed_r4(0, 0, 1.5), std::domain_error);
}

TEST_CASE("stereographic projection is defined away from the pole only") {
    Vec4 pole = embed_r4(0, 0.5, 0);
    CHECK_THROWS_AS(stereographic(pole, pole), std::domain_error);
    // antipode maps to the origin
    Vec4 anti = embed_r4(0, 0, 0);
    Vec3 o = stereographic(anti, pole);
    CHECK(std::fabs(o.x) <= 1e-12);
    CHECK(std::fabs(o.y) <= 1e-12);
    CHECK(std::fabs(o.z) <= 1e-12);
    // projection is conformal on the sphere; spot-check it is injective on
    // a few distinct points
    Vec3 a = stereographic(embed_r4(0.1, 0.2, 0.4), pole);
    Vec3 b = stereographic(embed_r4(0.1, 0.2, 0.5), pole);
    CHECK((std::fabs(a.x - b.x) + std::fabs(a.y - b.y) + std::fabs(a.z - b.z)) > 1e-6);
}

TEST_CASE("corner arcs are tangent to the matching plane fields") {
    for (const Rectangle& r :
         {rect(0, 1, 2, 5, 0, 1, 3, 10), rect(0, 1, 1, 3, 1, 2, 5, 6)}) {
        HarmonicTile tile(r);
        for (double kappa : {0.0, 0.5}) {
            auto rep = tangency_check(tile, kappa);
            CHECK(rep.failures == 0);
            INFO("kappa ", kappa, " max defect ", rep.max_defect);
            CHECK(rep.max_defect <= 1e-2);
        }
    }
}

TEST_CASE("extremal and mixed corners use opposite plane fields") {
    CHECK(side_plane_field(CornerKind::BL) == PlaneField::Minus);
    CHECK(side_plane_field(CornerKind::TR) == PlaneField::Minus);
    CHECK(side_plane_field(CornerKind::BR) == PlaneField::Plus);
    CHECK(side_plane_field(CornerKind::TL) == PlaneField::Plus);
}

TEST_CASE("foliation slopes: center, sign, flattening near horizontal sides") {
    Rectangle sq = rect(0, 1, 2, 5, 1, 2, 9, 10); // square 2/5 x 2/5
    HarmonicTile tile(sq);
    double a = tile.a(), b = tile.b();
    CHECK(std::fabs(foliation_slope(tile, 0, a / 2, b / 2) + 1.0) <= 1e-6);
    for (double kappa : {0.0, 0.5}) {
        for (int i = 1; i < 12; ++i)
            for (int j = 1; j < 12; ++j)
                CHECK(foliation_slope(tile, kappa, a * i / 12, b * j / 12) < 0);
        // slope -> 0 when approaching a horizontal side away from its ends
        for (int i = 3; i <= 9; ++i) {
            CHECK(std::fabs(foliation_slope(tile, kappa, a * i / 12, 1e-3)) < 0.05);
            CHECK(std::fabs(foliation_slope(tile, kappa, a * i / 12, b - 1e-3)) < 0.05);
        }
    }
}

TEST_CASE("streamlines descend from the top-left toward the bottom-right") {
    Rectangle sq = rect(0, 1, 2, 5, 1, 2, 9, 10);
    HarmonicTile tile(sq);
    auto sl = foliation_streamline(tile, 0, tile.a() / 2, tile.b() / 2);
    REQUIRE(sl.points.size() > 10);
    CHECK(!sl.truncated);
    for (double s : sl.slopes) CHECK(s < 0);
    for (std::size_t i = 1; i < sl.points.size(); ++i) {
        CHECK(sl.points[i].first >= sl.points[i - 1].first);   // theta grows
        CHECK(sl.points[i].second <= sl.points[i - 1].second); // phi falls
    }
}

TEST_CASE("transverse contact line field") {
    Rectangle r = rect(0, 1, 2, 5, 1, 2, 4, 5); // 2/5 x 3/10
    HarmonicTile tile(r);
    auto rep = contact_field_check(tile);
    CHECK(rep.transversality_samples >= 900);
    CHECK(rep.transversality_failures == 0);
    CHECK(rep.min_transversality > 0);
    INFO("lie residual ", rep.max_lie_residual);
    CHECK(rep.max_lie_residual <= 1e-3);
    CHECK(rep.max_boundary_defect_tau0 <= 1e-6);
    CHECK(rep.max_boundary_defect_tau1 <= 1e-6);
    CHECK_THROWS_AS(contact_field_check(tile, ContactProfile{0.6}),
                    std::invalid_argument);
}

TEST_CASE("crossing tiles stay strictly separated in height") {
    // theta-narrow, phi-tall rectangle crossing a theta-wide, phi-short one
    Rectangle r1 = rect(2, 10, 4, 10, 1, 10, 9, 10);
    Rectangle r2 = rect(0, 10, 6, 10, 3, 10, 6, 10);
    REQUIRE(classify_pair(r1, r2).kind == PairKind::Crossing);
    for (double kappa : {0.0, 0.5}) {
        double gap = crossing_height_gap(r1, r2, 40, kappa);
        INFO("kappa ", kappa, " min gap ", gap);
        CHECK(gap > 0);
    }
    CHECK_THROWS_AS(crossing_height_gap(r1, r1, 10), std::invalid_argument);
}
