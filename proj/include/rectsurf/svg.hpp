#pragma once

#include <sstream>
#include <string>

#include "rectsurf/tile_geometry.hpp"

namespace rectsurf {

struct PlotLayers {
    bool rectangles = true;
    bool free_vertices = false;
    bool framing = false;
    bool giroux = false;
    bool dividing = false;
    bool streamlines = false;
};

namespace svg_detail {

struct Canvas {
    double margin = 20, scale = 600;
    double x(double u) const { return margin + scale * u; }
    double y(double v) const { return margin + scale * (1 - v); }
};

// axis-aligned pieces of a wrapped interval [start, start+len] in [0,1)
inline std::vector<std::pair<double, double>> wrap_pieces(double start, double len) {
    start -= std::floor(start);
    if (start + len <= 1) return {{start, len}};
    return {{start, 1 - start}, {0, start + len - 1}};
}

// split the straight unwrapped segment (x0,y0)-(x0+dx,y0+dy) at the unit
// cell boundaries and emit path commands with wrapped coordinates
inline void wrapped_segment(std::ostringstream& os, const Canvas& c, double x0,
                            double y0, double dx, double dy) {
    std::vector<double> cuts{0, 1};
    auto add_cuts = [&](double start, double d) {
        if (d == 0) return;
        for (int k = (int)std::floor(start) + 1; k <= (int)std::floor(start + d); ++k) {
            double t = (k - start) / d;
            if (t > 0 && t < 1) cuts.push_back(t);
        }
    };
    add_cuts(x0, dx);
    add_cuts(y0, dy);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double t0 = cuts[i], t1 = cuts[i + 1];
        if (t1 - t0 < 1e-12) continue;
        double tm = (t0 + t1) / 2;
        double bx = std::floor(x0 + tm * dx), by = std::floor(y0 + tm * dy);
        os << " M " << c.x(x0 + t0 * dx - bx) << " " << c.y(y0 + t0 * dy - by)
           << " L " << c.x(x0 + t1 * dx - bx) << " " << c.y(y0 + t1 * dy - by);
    }
}

} // namespace svg_detail

/// Unit-square rendering of a surface diagram with optional annotation
/// layers. Rectangles are drawn wrap-aware; for a crossing pair the
/// rectangle with the contained theta span is drawn on top.
inline std::string torus_projection_svg(const SurfaceDiagram& s,
                                        const PlotLayers& layers = {}) {
    using namespace svg_detail;
    Canvas c;
    std::ostringstream os;
    os.precision(8);
    double side = 2 * c.margin + c.scale;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side
       << "\" height=\"" << side << "\" viewBox=\"0 0 " << side << " " << side
       << "\">\n";
    os << "<rect class=\"torus\" x=\"" << c.margin << "\" y=\"" << c.margin
       << "\" width=\"" << c.scale << "\" height=\"" << c.scale
       << "\" fill=\"white\" stroke=\"black\"/>\n";

    std::size_t n = s.size();

    if (layers.rectangles) {
        // draw order: an over-rectangle comes after everything it covers
        std::vector<std::vector<std::size_t>> above(n); // above[i]: drawn after i
        std::vector<int> indeg(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                auto cls = classify_pair(s.rectangles()[i], s.rectangles()[j]);
                if (cls.kind != PairKind::Crossing) continue;
                auto ti = arc_intersection(s.rectangles()[i].theta_span,
                                           s.rectangles()[j].theta_span);
                bool i_over = ti[0].arc->length() ==
                              s.rectangles()[i].theta_span.length();
                std::size_t under = i_over ? j : i, over = i_over ? i : j;
                above[under].push_back(over);
                ++indeg[over];
            }
        std::vector<std::size_t> order;
        std::vector<std::size_t> queue;
        for (std::size_t i = 0; i < n; ++i)
            if (indeg[i] == 0) queue.push_back(i);
        while (!queue.empty()) {
            std::size_t v = queue.back();
            queue.pop_back();
            order.push_back(v);
            for (std::size_t w : above[v])
                if (--indeg[w] == 0) queue.push_back(w);
        }
        for (std::size_t i = 0; i < n; ++i) // cycles: fall back to index order
            if (indeg[i] > 0) order.push_back(i);

        for (std::size_t r : order) {
            const Rectangle& rc = s.rectangles()[r];
            os << "<g class=\"rect\" id=\"rect" << r << "\">\n";
            for (auto [xs, xl] : wrap_pieces(rc.theta_span.start.turns(),
                                             rc.theta_span.length().to_double()))
                for (auto [ys, yl] : wrap_pieces(rc.phi_span.start.turns(),
                                                 rc.phi_span.length().to_double()))
                    os << "  <rect x=\"" << c.x(xs) << "\" y=\"" << c.y(ys + yl)
                       << "\" width=\"" << c.scale * xl << "\" height=\""
                       << c.scale * yl
                       << "\" fill=\"#c8d8f0\" stroke=\"#204080\"/>\n";
            os << "</g>\n";
        }
    }

    if (layers.framing && !s.free_vertices().empty()) {
        auto bf = boundary_framing(s);
        os << "<g class=\"framing\">\n";
        for (std::size_t e = 0; e < bf.diagram.edges().size(); ++e) {
            const Edge& ed = bf.diagram.edges()[e];
            const TorusPoint& pa = bf.diagram.vertex(ed.a);
            const TorusPoint& pb = bf.diagram.vertex(ed.b);
            double x0 = pa.theta.turns(), y0 = pa.phi.turns();
            double dx = 0, dy = 0;
            if (ed.kind == EdgeKind::Horizontal) {
                dx = pb.theta.cyclic_minus(pa.theta).to_double();
                if (dx > 0.5) dx -= 1;
            } else {
                dy = pb.phi.cyclic_minus(pa.phi).to_double();
                if (dy > 0.5) dy -= 1;
            }
            std::ostringstream path;
            path.precision(8);
            wrapped_segment(path, c, x0, y0, dx, dy);
            os << "  <path d=\"" << path.str()
               << "\" stroke=\"#208040\" fill=\"none\"/>\n";
            const TorusPoint& g = bf.diagram.vertex(bf.framing.greater[e]);
            os << "  <circle cx=\"" << c.x(g.theta.turns()) << "\" cy=\""
               << c.y(g.phi.turns()) << "\" r=\"3\" fill=\"#208040\"/>\n";
        }
        os << "</g>\n";
    }

    GirouxReport gr;
    if (layers.giroux || layers.dividing) gr = giroux_and_dividing(s);

    if (layers.giroux) {
        os << "<g class=\"giroux\">\n";
        for (auto& p : gr.giroux_edges) {
            double x = c.x(p.theta.turns()), y = c.y(p.phi.turns());
            os << "  <path d=\"M " << x - 4 << " " << y - 4 << " L " << x + 4
               << " " << y + 4 << " M " << x - 4 << " " << y + 4 << " L "
               << x + 4 << " " << y - 4 << "\" stroke=\"#804020\"/>\n";
        }
        os << "</g>\n";
    }

    if (layers.dividing) {
        for (auto& comp : gr.dividing) {
            std::ostringstream path;
            path.precision(8);
            for (std::size_t r : comp.rects) {
                const Rectangle& rc = s.rectangles()[r];
                wrapped_segment(path, c, rc.theta_span.start.turns(),
                                rc.phi_span.start.turns(),
                                rc.theta_span.length().to_double(),
                                rc.phi_span.length().to_double());
            }
            os << "<path class=\"dividing\" d=\"" << path.str()
               << "\" stroke=\"#a02020\" stroke-width=\"2\" fill=\"none\"/>\n";
        }
    }

    if (layers.streamlines) {
        os << "<g class=\"streamlines\">\n";
        for (auto& rc : s.rectangles()) {
            HarmonicTile tile(rc);
            double t0 = rc.theta_span.start.turns(), p0 = rc.phi_span.start.turns();
            for (int k = 1; k <= 5; ++k) {
                double f = k / 6.0;
                auto sl = foliation_streamline(tile, 0, tile.a() * f,
                                               tile.b() * (1 - f), 2e-3, 2e-3, 4000);
                if (sl.points.size() < 2) continue;
                std::ostringstream path;
                path.precision(8);
                for (std::size_t i = 0; i + 1 < sl.points.size(); ++i) {
                    auto [x1, y1] = sl.points[i];
                    auto [x2, y2] = sl.points[i + 1];
                    wrapped_segment(path, c, t0 + x1, p0 + y1, x2 - x1, y2 - y1);
                }
                os << "  <path d=\"" << path.str()
                   << "\" stroke=\"#707070\" fill=\"none\"/>\n";
            }
        }
        os << "</g>\n";
    }

    if (layers.free_vertices) {
        os << "<g class=\"free\">\n";
        for (auto& p : s.free_vertices())
            os << "  <circle cx=\"" << c.x(p.theta.turns()) << "\" cy=\""
               << c.y(p.phi.turns())
               << "\" r=\"4\" fill=\"white\" stroke=\"black\"/>\n";
        os << "</g>\n";
    }

    os << "</svg>\n";
    return os.str();
}

} // namespace rectsurf
