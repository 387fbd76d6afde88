#include "doctest.h"

#include "rectsurf/io.hpp"
#include "rectsurf/svg.hpp"

using namespace rectsurf;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t p = hay.find(needle); p != std::string::npos;
         p = hay.find(needle, p + needle.size()))
        ++n;
    return n;
}

} // namespace

TEST_CASE("single rectangle plot: one rect group, four free vertices") {
    PlotLayers layers;
    layers.free_vertices = true;
    std::string svg = torus_projection_svg(single_rect_diagram(), layers);
    CHECK(svg.find("<svg") == 0);
    CHECK(count(svg, "class=\"rect\"") == 1);
    CHECK(count(svg, "id=\"rect0\"") == 1);
    CHECK(count(svg, "class=\"free\"") == 1);
    CHECK(count(svg, "<circle") == 4);
    CHECK(count(svg, "</svg>") == 1);
}

TEST_CASE("crossing pair: contained theta span is drawn on top") {
    // r0 is theta-narrow and phi-tall, r1 theta-wide and phi-short
    auto cc = [](std::int64_t n, std::int64_t d) { return CircleCoord(n, d); };
    Rectangle r0(Arc(cc(2, 10), cc(4, 10)), Arc(cc(1, 10), cc(9, 10)));
    Rectangle r1(Arc(cc(0, 10), cc(6, 10)), Arc(cc(3, 10), cc(6, 10)));
    REQUIRE(classify_pair(r0, r1).kind == PairKind::Crossing);
    auto s = SurfaceDiagram::validate({r0, r1});
    std::string svg = torus_projection_svg(s);
    // later elements paint over earlier ones, so rect0 must come second
    CHECK(svg.find("id=\"rect1\"") < svg.find("id=\"rect0\""));
}

TEST_CASE("wrapped rectangle splits into unit-cell pieces") {
    auto cc = [](std::int64_t n, std::int64_t d) { return CircleCoord(n, d); };
    // spans wrap in both directions: four axis-aligned pieces
    Rectangle r(Arc(cc(4, 5), cc(1, 5)), Arc(cc(7, 10), cc(1, 5)));
    auto s = SurfaceDiagram::validate({r});
    std::string svg = torus_projection_svg(s);
    // one torus border + four wrap pieces
    CHECK(count(svg, "<rect") == 5);
}

TEST_CASE("chain diagram dividing set renders as one closed path") {
    PlotLayers layers;
    layers.rectangles = false;
    layers.dividing = true;
    layers.giroux = true;
    auto s = make_chain(4);
    std::string svg = torus_projection_svg(s, layers);
    CHECK(count(svg, "class=\"dividing\"") == 1);
    CHECK(count(svg, "class=\"giroux\"") == 1);
    CHECK(count(svg, "class=\"rect\"") == 0);
}

TEST_CASE("framing and streamline layers emit paths") {
    PlotLayers layers;
    layers.framing = true;
    layers.streamlines = true;
    std::string svg = torus_projection_svg(single_rect_diagram(), layers);
    CHECK(count(svg, "class=\"framing\"") == 1);
    CHECK(count(svg, "class=\"streamlines\"") == 1);
    CHECK(count(svg, "<path") >= 6);
}
