#include "doctest.h"

#include "rectsurf/io.hpp"
#include "rectsurf/linking.hpp"

using namespace rectsurf;

TEST_CASE("link diagram json round trip") {
    for (auto make : {hopf_pair_diagram, trefoil_staircase_diagram,
                      minimal_square_diagram}) {
        LinkDiagram d = make();
        json j = to_json(d);
        LinkDiagram back = link_from_json(json::parse(j.dump()));
        CHECK(back.vertices() == d.vertices());
    }
}

TEST_CASE("surface diagram json round trip") {
    for (auto s : {single_rect_diagram(), sphere_pair_diagram(), make_chain(5)}) {
        json j = to_json(s);
        SurfaceDiagram back = surface_from_json(json::parse(j.dump()));
        REQUIRE(back.size() == s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(back.rectangles()[i].theta_span.start ==
                  s.rectangles()[i].theta_span.start);
            CHECK(back.rectangles()[i].phi_span.end == s.rectangles()[i].phi_span.end);
        }
    }
}

TEST_CASE("coordinates survive as exact rationals") {
    LinkDiagram d = trefoil_staircase_diagram();
    json j = to_json(d);
    CHECK(j["vertices"][1]["phi"] == "2/5");
    CHECK(rational_from_json(json("7/3")) == Rational(7, 3));
    CHECK(rational_from_json(json(4)) == Rational(4));
    CHECK_THROWS_AS(rational_from_json(json(1.5)), std::invalid_argument);
}

TEST_CASE("payload type detection") {
    CHECK(is_surface_json(to_json(single_rect_diagram())));
    CHECK(!is_surface_json(to_json(minimal_square_diagram())));
}

TEST_CASE("fixture library entries all parse back") {
    auto lib = fixture_library();
    CHECK(lib.size() == 7);
    int links = 0, surfaces = 0;
    for (auto& e : lib) {
        CHECK(!e.name.empty());
        if (is_surface_json(e.payload)) {
            surface_from_json(e.payload);
            ++surfaces;
        } else {
            link_from_json(e.payload);
            ++links;
        }
    }
    CHECK(links == 3);
    CHECK(surfaces == 4);
}

TEST_CASE("seeded link generator is deterministic and generic") {
    LinkDiagram a = random_link_diagram(42, 9);
    LinkDiagram b = random_link_diagram(42, 9);
    CHECK(a.vertices() == b.vertices());
    CHECK(a.size() == 18);
    CHECK(genericity(a).generic());
    LinkDiagram c = random_link_diagram(43, 9);
    CHECK(a.vertices() != c.vertices());
    // tb identity holds on generated diagrams
    CHECK(2 * (tb_plus(a) + tb_minus(a)) == -(long)a.size());
}

TEST_CASE("seeded surface generator honors the budget when reachable") {
    auto r = random_surface_diagram(7, 3);
    auto r2 = random_surface_diagram(7, 3);
    CHECK(to_json(r.diagram) == to_json(r2.diagram));
    if (r.budget_met) {
        CHECK(r.diagram.size() == 3);
        CHECK(r.notice.empty());
    } else {
        CHECK(r.diagram.size() < 3);
        CHECK(!r.notice.empty());
    }
    CHECK_THROWS_AS(random_surface_diagram(1, 0), std::invalid_argument);
}

TEST_CASE("move step serialization names the move") {
    MoveStep st;
    st.kind = MoveStep::Kind::Stabilize;
    st.vertex = 3;
    st.corner = CornerKind::TR;
    json j = to_json(st);
    CHECK(j["move"] == "stabilize");
    CHECK(j["vertex"] == 3);

    MoveStep ex;
    ex.kind = MoveStep::Kind::Exchange;
    ex.exchange = ExchangeSite{false, CircleCoord(Rational(1, 3)),
                               CircleCoord(Rational(2, 3))};
    json je = to_json(ex);
    CHECK(je["move"] == "exchange");
    CHECK(je["meridians"] == false);
    CHECK(je["line_b"] == "2/3");
}
