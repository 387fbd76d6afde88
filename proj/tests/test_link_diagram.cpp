#include <doctest.h>

#include <rectsurf/link_diagram.hpp>

using namespace rectsurf;

namespace {

TorusPoint pt(Rational t, Rational p) {
    return TorusPoint{CircleCoord(t), CircleCoord(p)};
}

std::vector<TorusPoint> minimal_square() {
    return {pt(Rational(0), Rational(0)), pt(Rational(0), Rational(1, 2)),
            pt(Rational(1, 2), Rational(0)), pt(Rational(1, 2), Rational(1, 2))};
}

std::vector<TorusPoint> hopf_pair() {
    auto v = minimal_square();
    for (auto p : minimal_square())
        v.push_back(TorusPoint{p.theta + Rational(1, 4), p.phi + Rational(1, 4)});
    return v;
}

std::vector<TorusPoint> trefoil_staircase() {
    std::vector<TorusPoint> v;
    for (int i = 0; i < 5; ++i) {
        v.push_back(pt(Rational(i, 5), Rational(i, 5)));
        v.push_back(pt(Rational(i, 5), Rational((i + 2) % 5, 5)));
    }
    return v;
}

} // namespace

TEST_CASE("validation accepts the square and rejects bad line counts") {
    auto d = LinkDiagram::validate(minimal_square());
    CHECK(d.size() == 4);
    CHECK(d.edges().size() == 4);

    auto bad = minimal_square();
    bad.push_back(pt(Rational(0), Rational(1, 4)));
    bad.push_back(pt(Rational(1, 4), Rational(1, 4)));
    CHECK_THROWS_WITH_AS(LinkDiagram::validate(bad),
                         doctest::Contains("theta=0 has 3 vertices"), validation_error);

    auto dup = minimal_square();
    dup.push_back(pt(Rational(0), Rational(0)));
    CHECK_THROWS_AS(LinkDiagram::validate(dup), validation_error);

    CHECK(LinkDiagram::validate({}).empty());
}

TEST_CASE("every vertex lies on one vertical and one horizontal edge") {
    auto d = LinkDiagram::validate(trefoil_staircase());
    CHECK(d.size() == 10);
    CHECK(d.edges().size() == 10);
    for (std::size_t v = 0; v < d.size(); ++v) {
        const Edge& ve = d.edges()[d.vertical_edge_of(v)];
        const Edge& he = d.edges()[d.horizontal_edge_of(v)];
        CHECK(ve.kind == EdgeKind::Vertical);
        CHECK(he.kind == EdgeKind::Horizontal);
        CHECK((ve.a == v || ve.b == v));
        CHECK((he.a == v || he.b == v));
        CHECK(d.vertex(d.edge_partner(d.vertical_edge_of(v), v)).theta == d.vertex(v).theta);
        CHECK(d.vertex(d.edge_partner(d.horizontal_edge_of(v), v)).phi == d.vertex(v).phi);
    }
}

TEST_CASE("components") {
    CHECK(LinkDiagram::validate(minimal_square()).components().size() == 1);
    CHECK(LinkDiagram::validate(trefoil_staircase()).components().size() == 1);
    auto d = LinkDiagram::validate(hopf_pair());
    auto comps = d.components();
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].size() == 4);
    CHECK(comps[1].size() == 4);
    auto sub = d.restrict_to(comps[0]);
    CHECK(sub.size() == 4);
    CHECK(sub.components().size() == 1);
}

TEST_CASE("orientations alternate along edges") {
    auto d = LinkDiagram::validate(hopf_pair());
    auto all = orientations(d);
    CHECK(all.size() == 4); // 2^components
    for (auto& o : all) CHECK(o.valid_for(d));
    // distinct assignments
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            CHECK(all[i].sign != all[j].sign);
}

TEST_CASE("genericity flags half-length edges") {
    CHECK(genericity(LinkDiagram::validate(minimal_square())).has_half_length_edge);
    CHECK(genericity(LinkDiagram::validate(trefoil_staircase())).generic());
}

TEST_CASE("staircase approximation follows the polyline homology") {
    // (1,1) curve on the torus
    std::vector<TorusPoint> poly;
    for (int i = 0; i < 8; ++i)
        poly.push_back(pt(Rational(i, 8), Rational((2 * i + 1), 16)));
    auto [wt, wp] = polyline_homology(poly);
    CHECK(wt == Rational(1));
    CHECK(wp == Rational(1));
    auto d = approximate_staircase(poly);
    CHECK(d.size() == 16);
    CHECK(d.components().size() == 1);

    // degenerate inputs rejected
    CHECK_THROWS_AS(approximate_staircase({pt(Rational(0), Rational(0)),
                                           pt(Rational(1, 2), Rational(1, 2))}),
                    validation_error);
    CHECK_THROWS_AS(
        approximate_staircase({pt(Rational(0), Rational(0)), pt(Rational(0), Rational(1, 2)),
                               pt(Rational(1, 2), Rational(1, 4))}),
        validation_error);
}

TEST_CASE("staircase avoids forbidden lines") {
    std::vector<TorusPoint> poly;
    for (int i = 0; i < 6; ++i)
        poly.push_back(pt(Rational(i, 6), Rational((2 * i + 1) % 12, 12)));
    std::vector<CircleCoord> forb_t, forb_p;
    for (auto& p : poly) { forb_t.push_back(p.theta); forb_p.push_back(p.phi); }
    auto d = approximate_staircase(poly, forb_t, forb_p);
    for (auto& v : d.vertices()) {
        for (auto& f : forb_t) CHECK(v.theta != f);
        for (auto& f : forb_p) CHECK(v.phi != f);
    }
}
