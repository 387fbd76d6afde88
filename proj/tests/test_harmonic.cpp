#include "doctest.h"

#include <cmath>
#include <random>

#include "rectsurf/harmonic.hpp"
#include "rectsurf/fd_laplace.hpp"

using namespace rectsurf;

namespace {

CircleCoord cc(std::int64_t n, std::int64_t d) { return CircleCoord(n, d); }

Rectangle rect(std::int64_t tn, std::int64_t td, std::int64_t tn2, std::int64_t td2,
               std::int64_t pn, std::int64_t pd, std::int64_t pn2, std::int64_t pd2) {
    return Rectangle(Arc(cc(tn, td), cc(tn2, td2)), Arc(cc(pn, pd), cc(pn2, pd2)));
}

const std::vector<Rectangle>& shapes() {
    // aspect ratios from 1:4 to 4:1, plus a wrap-around rectangle
    static const std::vector<Rectangle> r = {
        rect(0, 1, 1, 5, 0, 1, 4, 5),    // 1:4
        rect(0, 1, 2, 5, 0, 1, 4, 5),    // 1:2
        rect(0, 1, 3, 5, 0, 1, 3, 5),    // 1:1
        rect(0, 1, 4, 5, 0, 1, 2, 5),    // 2:1
        rect(0, 1, 4, 5, 0, 1, 1, 5),    // 4:1
        rect(7, 10, 1, 5, 3, 4, 1, 4),   // spans crossing 0
    };
    return r;
}

} // namespace

TEST_CASE("center value is 1/2 for square tiles") {
    // The diagonal reflection of a square swaps the 0-sides and the 1-sides,
    // so h(y,x) = 1 - h(x,y) and the center value is exactly 1/2. Non-square
    // tiles have no such symmetry and their center value is biased toward
    // the nearer pair of sides.
    for (const auto& r : {shapes()[2], shapes()[5], rect(1, 7, 2, 7, 3, 7, 4, 7)}) {
        HarmonicTile t(r);
        CHECK(std::fabs(t.eval_local(t.a() / 2, t.b() / 2) - 0.5) <= 1e-9);
    }
}

TEST_CASE("non-square center values are biased toward the vertical sides") {
    HarmonicTile narrow(shapes()[0]); // theta extent 1/5, phi extent 4/5
    HarmonicTile wide(shapes()[4]);
    double hn = narrow.eval_local(narrow.a() / 2, narrow.b() / 2);
    double hw = wide.eval_local(wide.a() / 2, wide.b() / 2);
    CHECK(hn > 0.9);
    CHECK(hw < 0.1);
    CHECK(std::fabs(hn + hw - 1.0) <= 1e-9); // the two shapes are transposes
}

TEST_CASE("boundary and corner input is rejected") {
    HarmonicTile t(shapes()[2]);
    CHECK_THROWS_AS(t.eval_local(0, t.b() / 2), std::domain_error);
    CHECK_THROWS_AS(t.eval_local(t.a() / 2, 0), std::domain_error);
    CHECK_THROWS_AS(t.eval_local(t.a(), t.b()), std::domain_error);
    CHECK_THROWS_AS(t.eval_local(-0.01, 0.01), std::domain_error);
}

TEST_CASE("square symmetries: diagonal flip complements, half turn preserves") {
    HarmonicTile t(shapes()[2]);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    for (int i = 0; i < 200; ++i) {
        double x = t.a() * u(rng), y = t.b() * u(rng);
        CHECK(std::fabs(t.eval_local(x, y) + t.eval_local(y, x) - 1.0) <= 1e-9);
        CHECK(std::fabs(t.eval_local(x, y) -
                        t.eval_local(t.a() - x, t.b() - y)) <= 1e-9);
    }
}

TEST_CASE("half-turn symmetry holds for every shape") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (const auto& r : shapes()) {
        HarmonicTile t(r);
        for (int i = 0; i < 50; ++i) {
            double x = t.a() * u(rng), y = t.b() * u(rng);
            CHECK(std::fabs(t.eval_local(x, y) -
                            t.eval_local(t.a() - x, t.b() - y)) <= 1e-9);
        }
    }
}

TEST_CASE("dual series complementarity") {
    for (const auto& r : shapes()) {
        HarmonicTile t(r);
        for (int i = 1; i < 12; ++i)
            for (int j = 1; j < 12; ++j) {
                double x = t.a() * i / 12, y = t.b() * j / 12;
                double sv = t.series_vertical(x, y);
                double sh = t.series_horizontal(x, y);
                CHECK(std::fabs(sv + sh - 1.0) <= 1e-9);
                double h = t.eval_local(x, y);
                CHECK(h > 0);
                CHECK(h < 1);
                CHECK(std::fabs(h - sv) <= 1e-9);
            }
    }
}

TEST_CASE("exact torus-point and turn evaluation agree with local") {
    const Rectangle& r = shapes()[5]; // wrap-around spans
    HarmonicTile t(r);
    TorusPoint p{cc(9, 10), cc(9, 10)}; // inside [7/10,1/5] x [3/4,1/4]
    double x = p.theta.cyclic_minus(r.theta_span.start).to_double();
    double y = p.phi.cyclic_minus(r.phi_span.start).to_double();
    CHECK(t.eval(p) == t.eval_local(x, y));
    CHECK(std::fabs(t.eval_turns(0.9, 0.9) - t.eval(p)) <= 1e-12);
}

TEST_CASE("five-point harmonicity residual of the series") {
    // Undivided 5-point Laplacian at spacing 1/256, sampled away from the
    // boundary where the fourth derivatives are moderate.
    double d = 1.0 / 256;
    for (const auto& r : {rect(0, 1, 3, 4, 0, 1, 4, 5), rect(0, 1, 4, 5, 0, 1, 3, 4)}) {
        HarmonicTile t(r);
        for (int i = 3; i <= 7; ++i)
            for (int j = 3; j <= 7; ++j) {
                double x = t.a() * i / 10, y = t.b() * j / 10;
                double res = t.eval_local(x + d, y) + t.eval_local(x - d, y) +
                             t.eval_local(x, y + d) + t.eval_local(x, y - d) -
                             4 * t.eval_local(x, y);
                CHECK(std::fabs(res) <= 1e-8);
            }
    }
}

TEST_CASE("series matches the finite-difference oracle on 65x65 grids") {
    for (int shape = 0; shape < 5; ++shape) {
        const Rectangle& r = shapes()[shape];
        HarmonicTile t(r);
        int nx = 256, ny = 256;
        auto fd = oracle::fd_laplace(t.a(), t.b(), nx, ny, 1e-10);
        double worst = 0;
        for (int k = 1; k <= 65; ++k)
            for (int l = 1; l <= 65; ++l) {
                int i = (int)std::lround((double)k * nx / 66);
                int j = (int)std::lround((double)l * ny / 66);
                double x = t.a() * i / nx, y = t.b() * j / ny;
                worst = std::max(worst, std::fabs(t.eval_local(x, y) - fd.at(i, j)));
            }
        INFO("shape ", shape, " max abs diff ", worst);
        CHECK(worst <= 1e-4);
    }
}
