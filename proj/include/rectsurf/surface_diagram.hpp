#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rectsurf/framing.hpp"

namespace rectsurf {

enum class CornerKind { BL, BR, TL, TR };

inline const char* corner_name(CornerKind k) {
    switch (k) {
        case CornerKind::BL: return "BL";
        case CornerKind::BR: return "BR";
        case CornerKind::TL: return "TL";
        case CornerKind::TR: return "TR";
    }
    return "?";
}

/// Product of two closed arcs: [theta1,theta2] x [phi1,phi2].
struct Rectangle {
    Arc theta_span, phi_span;

    Rectangle(Arc t, Arc p) : theta_span(t), phi_span(p) {}

    // placeholder value for default-constructed sites
    Rectangle()
        : theta_span(CircleCoord(Rational(0)), CircleCoord(Rational(1, 2))),
          phi_span(CircleCoord(Rational(0)), CircleCoord(Rational(1, 2))) {}

    TorusPoint corner(CornerKind k) const {
        switch (k) {
            case CornerKind::BL: return {theta_span.start, phi_span.start};
            case CornerKind::BR: return {theta_span.end, phi_span.start};
            case CornerKind::TL: return {theta_span.start, phi_span.end};
            case CornerKind::TR: return {theta_span.end, phi_span.end};
        }
        throw std::logic_error("bad corner kind");
    }

    std::vector<TorusPoint> corners() const {
        return {corner(CornerKind::BL), corner(CornerKind::BR),
                corner(CornerKind::TL), corner(CornerKind::TR)};
    }

    friend bool operator==(const Rectangle& a, const Rectangle& b) {
        return a.theta_span.start == b.theta_span.start &&
               a.theta_span.end == b.theta_span.end &&
               a.phi_span.start == b.phi_span.start && a.phi_span.end == b.phi_span.end;
    }
};

enum class PairKind { Disjoint, SharedVertices, Crossing, Incompatible };

struct PairClassification {
    PairKind kind;
    int shared_count = 0;              // for SharedVertices: 1, 2 or 4
    std::vector<TorusPoint> shared;    // the common corners
    std::string reason;                // for Incompatible
};

/// Exact trichotomy for a pair of rectangles. Incompatibility is a label,
/// not an error.
inline PairClassification classify_pair(const Rectangle& r1, const Rectangle& r2) {
    auto ti = arc_intersection(r1.theta_span, r2.theta_span);
    auto pi = arc_intersection(r1.phi_span, r2.phi_span);
    if (ti.empty() || pi.empty()) return {PairKind::Disjoint};

    bool t_points = true, p_points = true;
    for (auto& x : ti) t_points = t_points && x.is_point;
    for (auto& x : pi) p_points = p_points && x.is_point;

    if (t_points && p_points) {
        // Arcs touching only at points touch at common endpoints, so every
        // intersection point is a corner of both rectangles.
        PairClassification c{PairKind::SharedVertices};
        for (auto& t : ti)
            for (auto& p : pi) c.shared.push_back(TorusPoint{t.start, p.start});
        c.shared_count = static_cast<int>(c.shared.size());
        if (c.shared_count != 1 && c.shared_count != 2 && c.shared_count != 4)
            throw std::logic_error("impossible shared-corner count");
        return c;
    }

    if (ti.size() == 1 && !ti[0].is_point && pi.size() == 1 && !pi[0].is_point) {
        const Arc& bt = *ti[0].arc;
        const Arc& bp = *pi[0].arc;
        auto in_block = [&](const TorusPoint& v) {
            return arc_contains(bt, v.theta, true) && arc_contains(bp, v.phi, true);
        };
        for (const Rectangle* r : {&r1, &r2})
            for (auto& v : r->corners())
                if (in_block(v))
                    return {PairKind::Incompatible, 0, {},
                            "overlap region touches corner (" + v.theta.value().str() +
                                ", " + v.phi.value().str() + ")"};
        return {PairKind::Crossing};
    }

    return {PairKind::Incompatible, 0, {},
            "intersection is a segment or several regions"};
}

/// Where a corner point sits: owning rectangles with roles. Compatibility
/// forces opposite roles at shared corners, so multiplicity is at most 2 and
/// a point is either a BL/TR point or a TL/BR point, never both.
struct CornerUse {
    std::size_t rect;
    CornerKind kind;
};

class SurfaceDiagram {
public:
    static SurfaceDiagram validate(std::vector<Rectangle> rects) {
        for (std::size_t i = 0; i < rects.size(); ++i) {
            for (std::size_t j = i + 1; j < rects.size(); ++j) {
                auto c = classify_pair(rects[i], rects[j]);
                if (c.kind == PairKind::Incompatible)
                    throw validation_error("rectangles " + std::to_string(i) + " and " +
                                           std::to_string(j) + " are incompatible: " +
                                           c.reason);
            }
        }
        SurfaceDiagram s;
        s.rects_ = std::move(rects);
        for (std::size_t i = 0; i < s.rects_.size(); ++i) {
            for (CornerKind k :
                 {CornerKind::BL, CornerKind::BR, CornerKind::TL, CornerKind::TR})
                s.corner_map_[s.rects_[i].corner(k)].push_back(CornerUse{i, k});
        }
        for (auto& [pt, uses] : s.corner_map_) {
            if (uses.size() > 2)
                throw std::logic_error("corner multiplicity above 2 despite compatibility");
            if (uses.size() == 1) s.free_.push_back(pt);
        }
        // at most two free vertices on every meridian and longitude
        std::map<Rational, std::vector<TorusPoint>> by_theta, by_phi;
        for (auto& p : s.free_) {
            by_theta[p.theta.value()].push_back(p);
            by_phi[p.phi.value()].push_back(p);
        }
        for (auto& [t, pts] : by_theta)
            if (pts.size() > 2)
                throw validation_error("meridian theta=" + t.str() + " has " +
                                       std::to_string(pts.size()) +
                                       " free vertices (at most 2 allowed)");
        for (auto& [p, pts] : by_phi)
            if (pts.size() > 2)
                throw validation_error("longitude phi=" + p.str() + " has " +
                                       std::to_string(pts.size()) +
                                       " free vertices (at most 2 allowed)");
        return s;
    }

    const std::vector<Rectangle>& rectangles() const { return rects_; }
    std::size_t size() const { return rects_.size(); }
    bool empty() const { return rects_.empty(); }
    const std::vector<TorusPoint>& free_vertices() const { return free_; }
    const std::map<TorusPoint, std::vector<CornerUse>>& corner_map() const {
        return corner_map_;
    }

    /// The unique use of a free vertex.
    const CornerUse& free_use(const TorusPoint& p) const {
        auto it = corner_map_.find(p);
        if (it == corner_map_.end() || it->second.size() != 1)
            throw std::invalid_argument("not a free vertex");
        return it->second.front();
    }

private:
    std::vector<Rectangle> rects_;
    std::map<TorusPoint, std::vector<CornerUse>> corner_map_;
    std::vector<TorusPoint> free_;
};

/// The free vertices, as a link diagram. The 0-or-2 rule holds for every
/// valid surface diagram (corner multiplicities are 1 or 2 and incidences
/// per line are even).
inline LinkDiagram boundary(const SurfaceDiagram& s) {
    std::vector<TorusPoint> pts = s.free_vertices();
    return LinkDiagram::validate(std::move(pts));
}

struct BoundaryFraming {
    LinkDiagram diagram;
    Framing framing;
    std::vector<CornerRole> roles;        // per boundary vertex
    std::vector<CornerKind> corner_kinds; // per boundary vertex
};

/// The framing induced on the boundary by the surface: a free vertex at the
/// start of its rectangle's theta span (BL or TL corner) is the minimum of
/// its horizontal boundary edge, and at the start of the phi span (BL or BR)
/// the minimum of its vertical boundary edge.
inline BoundaryFraming boundary_framing(const SurfaceDiagram& s) {
    BoundaryFraming out;
    out.diagram = boundary(s);
    if (out.diagram.empty())
        throw validation_error("surface diagram has no boundary");
    std::size_t n = out.diagram.size();
    out.roles.resize(n);
    out.corner_kinds.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        CornerKind k = s.free_use(out.diagram.vertex(v)).kind;
        out.corner_kinds[v] = k;
        out.roles[v].is_max_of_horizontal =
            k == CornerKind::BR || k == CornerKind::TR;  // theta-span end
        out.roles[v].is_max_of_vertical =
            k == CornerKind::TL || k == CornerKind::TR;  // phi-span end
    }
    out.framing.greater.resize(out.diagram.edges().size());
    for (std::size_t e = 0; e < out.diagram.edges().size(); ++e) {
        const Edge& ed = out.diagram.edges()[e];
        bool ma = ed.kind == EdgeKind::Horizontal ? out.roles[ed.a].is_max_of_horizontal
                                                  : out.roles[ed.a].is_max_of_vertical;
        bool mb = ed.kind == EdgeKind::Horizontal ? out.roles[ed.b].is_max_of_horizontal
                                                  : out.roles[ed.b].is_max_of_vertical;
        if (ma == mb)
            throw validation_error("inconsistent corner roles on a boundary edge");
        out.framing.greater[e] = ma ? ed.a : ed.b;
    }
    return out;
}

/// All orientations: one sign per rectangle, adjacent (corner-sharing)
/// rectangles getting opposite signs. Empty result means non-orientable.
inline std::vector<std::vector<int>> orient_surface(const SurfaceDiagram& s) {
    std::size_t n = s.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto& [pt, uses] : s.corner_map()) {
        if (uses.size() == 2) {
            adj[uses[0].rect].push_back(uses[1].rect);
            adj[uses[1].rect].push_back(uses[0].rect);
        }
    }
    std::vector<int> base(n, 0);
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t st = 0; st < n; ++st) {
        if (base[st] != 0) continue;
        groups.emplace_back();
        std::vector<std::size_t> stack{st};
        base[st] = 1;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            groups.back().push_back(v);
            for (std::size_t u : adj[v]) {
                if (base[u] == 0) {
                    base[u] = -base[v];
                    stack.push_back(u);
                } else if (base[u] == base[v]) {
                    return {};  // odd cycle: non-orientable
                }
            }
        }
    }
    std::vector<std::vector<int>> out;
    std::size_t count = std::size_t{1} << groups.size();
    for (std::size_t mask = 0; mask < count; ++mask) {
        std::vector<int> o = base;
        for (std::size_t g = 0; g < groups.size(); ++g)
            if (mask & (std::size_t{1} << g))
                for (std::size_t r : groups[g]) o[r] = -o[r];
        out.push_back(std::move(o));
    }
    return out;
}

/// CW structure: 0-cells are the binding points (one per distinct corner
/// theta value on the tau=1 circle, one per distinct phi value on tau=0),
/// 1-cells the distinct corner arcs, 2-cells the rectangles.
struct CellComplex {
    std::vector<Rational> theta_cells, phi_cells;
    std::vector<TorusPoint> arc_cells;
    std::size_t face_count = 0;

    long euler() const {
        return static_cast<long>(theta_cells.size() + phi_cells.size()) -
               static_cast<long>(arc_cells.size()) + static_cast<long>(face_count);
    }
};

inline CellComplex cell_complex(const SurfaceDiagram& s) {
    CellComplex c;
    std::set<Rational> ts, ps;
    for (auto& [pt, uses] : s.corner_map()) {
        c.arc_cells.push_back(pt);
        ts.insert(pt.theta.value());
        ps.insert(pt.phi.value());
    }
    c.theta_cells.assign(ts.begin(), ts.end());
    c.phi_cells.assign(ps.begin(), ps.end());
    c.face_count = s.size();
    return c;
}

struct DividingComponent {
    bool closed = false;
    std::vector<std::size_t> rects;    // in traversal order
    std::vector<TorusPoint> nodes;     // BL/TR corner arcs visited
};

struct GirouxReport {
    std::vector<TorusPoint> giroux_edges;   // TL/BR corner arcs (0-arcs)
    std::vector<TorusPoint> dividing_nodes; // BL/TR corner arcs (-1-arcs)
    std::vector<DividingComponent> dividing;
};

/// The dividing set: one edge per rectangle joining its BL corner arc to its
/// TR corner arc; nodes have degree at most 2, so components are simple
/// paths or cycles. TL/BR corner arcs form the Giroux 0-arc edges.
inline GirouxReport giroux_and_dividing(const SurfaceDiagram& s) {
    GirouxReport out;
    std::map<TorusPoint, std::size_t> bl_of, tr_of;  // node -> rectangle
    for (auto& [pt, uses] : s.corner_map()) {
        bool bltr = false, tlbr = false;
        for (auto& u : uses) {
            if (u.kind == CornerKind::BL) { bl_of[pt] = u.rect; bltr = true; }
            if (u.kind == CornerKind::TR) { tr_of[pt] = u.rect; bltr = true; }
            if (u.kind == CornerKind::TL || u.kind == CornerKind::BR) tlbr = true;
        }
        if (bltr && tlbr)
            throw std::logic_error("corner arc is both a 0-arc and a -1-arc");
        if (bltr) out.dividing_nodes.push_back(pt);
        if (tlbr) out.giroux_edges.push_back(pt);
    }

    std::vector<bool> used(s.size(), false);
    auto walk_from = [&](std::size_t r0) {
        DividingComponent comp;
        // rewind: from r0's BL node, step to the rectangle having that node
        // as TR, until hitting a free end or closing a cycle.
        std::size_t r = r0;
        for (;;) {
            TorusPoint bl = s.rectangles()[r].corner(CornerKind::BL);
            auto it = tr_of.find(bl);
            if (it == tr_of.end()) break;
            if (it->second == r0) { comp.closed = true; break; }
            r = it->second;
        }
        // forward walk
        std::size_t start = r;
        for (;;) {
            used[r] = true;
            comp.rects.push_back(r);
            comp.nodes.push_back(s.rectangles()[r].corner(CornerKind::BL));
            TorusPoint tr = s.rectangles()[r].corner(CornerKind::TR);
            auto it = bl_of.find(tr);
            if (it == bl_of.end()) {
                comp.nodes.push_back(tr);
                break;
            }
            if (it->second == start) break;  // cycle closed
            r = it->second;
        }
        return comp;
    };
    for (std::size_t r = 0; r < s.size(); ++r)
        if (!used[r]) out.dividing.push_back(walk_from(r));
    return out;
}

struct BoundaryComponentReport {
    std::vector<std::size_t> vertices;  // indices into boundary diagram
    long length = 0;
    long rel_tb_plus = 0, rel_tb_minus = 0;
    long length_slack = 0;  // |S| + 2*rel_tb_plus, always nonnegative
    std::size_t surface_component = 0;
};

struct ComponentReport {
    std::vector<std::size_t> rects;
    long vertices = 0, edges = 0, faces = 0, euler = 0;
    bool orientable = false;
    bool closed = false;
    long boundary_count = 0;
    long genus = -1;      // orientable surfaces
    long crosscaps = -1;  // non-orientable surfaces
};

struct SurfaceReport {
    long euler = 0;
    bool orientable = false;
    std::vector<ComponentReport> components;
    std::vector<BoundaryComponentReport> boundaries;
    GirouxReport giroux;
};

/// Full topological classification. Components are taken from the
/// corner-sharing graph; for valid diagrams this agrees with connectivity of
/// the cell complex (binding points of distinct pieces never coincide, a
/// consequence of the two-free-vertices rule).
inline SurfaceReport classify(const SurfaceDiagram& s) {
    SurfaceReport rep;
    std::size_t n = s.size();

    // corner-sharing components
    std::vector<int> comp(n, -1);
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto& [pt, uses] : s.corner_map()) {
        if (uses.size() == 2) {
            adj[uses[0].rect].push_back(uses[1].rect);
            adj[uses[1].rect].push_back(uses[0].rect);
        }
    }
    int ncomp = 0;
    for (std::size_t st = 0; st < n; ++st) {
        if (comp[st] >= 0) continue;
        std::vector<std::size_t> stack{st};
        comp[st] = ncomp;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t u : adj[v])
                if (comp[u] < 0) { comp[u] = ncomp; stack.push_back(u); }
        }
        ++ncomp;
    }

    rep.components.resize(ncomp);
    for (std::size_t r = 0; r < n; ++r) rep.components[comp[r]].rects.push_back(r);

    // per-component cells
    std::vector<std::set<Rational>> cts(ncomp), cps(ncomp);
    std::vector<long> carcs(ncomp, 0);
    for (auto& [pt, uses] : s.corner_map()) {
        int c = comp[uses.front().rect];
        for (auto& u : uses)
            if (comp[u.rect] != c)
                throw std::logic_error("corner shared across surface components");
        ++carcs[c];
        cts[c].insert(pt.theta.value());
        cps[c].insert(pt.phi.value());
    }
    for (int c = 0; c < ncomp; ++c) {
        auto& cr = rep.components[c];
        cr.vertices = static_cast<long>(cts[c].size() + cps[c].size());
        cr.edges = carcs[c];
        cr.faces = static_cast<long>(cr.rects.size());
        cr.euler = cr.vertices - cr.edges + cr.faces;
        rep.euler += cr.euler;
        // orientability: bipartiteness of this component's adjacency
        cr.orientable = true;
        std::map<std::size_t, int> color;
        for (std::size_t seed : cr.rects) {
            if (color.count(seed)) continue;
            color[seed] = 1;
            std::vector<std::size_t> stack{seed};
            while (!stack.empty()) {
                std::size_t v = stack.back();
                stack.pop_back();
                for (std::size_t u : adj[v]) {
                    if (!color.count(u)) {
                        color[u] = -color[v];
                        stack.push_back(u);
                    } else if (color[u] == color[v]) {
                        cr.orientable = false;
                    }
                }
            }
        }
    }
    rep.orientable = true;
    for (auto& c : rep.components) rep.orientable = rep.orientable && c.orientable;

    // boundary components with relative tb from corner roles
    LinkDiagram bd = boundary(s);
    auto bcomps = bd.components();
    for (auto& bc : bcomps) {
        BoundaryComponentReport br;
        br.vertices = bc;
        br.length = static_cast<long>(bc.size());
        long n_extremal = 0, n_mixed = 0;
        for (std::size_t v : bc) {
            CornerKind k = s.free_use(bd.vertex(v)).kind;
            if (k == CornerKind::BL || k == CornerKind::TR) ++n_extremal;
            else ++n_mixed;
        }
        if (n_extremal % 2 != 0 || n_mixed % 2 != 0)
            throw std::logic_error("odd corner-role count on a boundary component");
        br.rel_tb_plus = -n_extremal / 2;
        br.rel_tb_minus = -n_mixed / 2;
        br.length_slack = br.length + 2 * br.rel_tb_plus;
        br.surface_component =
            static_cast<std::size_t>(comp[s.free_use(bd.vertex(bc.front())).rect]);
        rep.boundaries.push_back(std::move(br));
    }
    for (auto& br : rep.boundaries)
        ++rep.components[br.surface_component].boundary_count;
    for (auto& c : rep.components) {
        c.closed = c.boundary_count == 0;
        if (c.orientable)
            c.genus = (2 - c.euler - c.boundary_count) / 2;
        else
            c.crosscaps = 2 - c.euler - c.boundary_count;
    }

    rep.giroux = giroux_and_dividing(s);
    return rep;
}

struct LengthBound {
    long length = 0, bound = 0, slack = 0;
    bool ok = false;
};

/// |S| >= -2 tb+(S; Pi) for every boundary component; always holds.
inline std::vector<LengthBound> lengthbound_check(const SurfaceDiagram& s) {
    std::vector<LengthBound> out;
    for (auto& br : classify(s).boundaries) {
        LengthBound b;
        b.length = br.length;
        b.bound = -2 * br.rel_tb_plus;
        b.slack = b.length - b.bound;
        b.ok = b.slack >= 0;
        out.push_back(b);
    }
    return out;
}

/// Cyclic chain of k squares along the diagonal: rectangle i spans
/// [t_i, t_{i+1}] in both coordinates, consecutive squares sharing one
/// corner (TR of one, BL of the next). Even k gives an annulus, odd k a
/// Moebius band. k = 2 would force the two squares to share all four
/// corners (the complementary-pair sphere), so it is rejected.
inline SurfaceDiagram make_chain(int k, std::vector<CircleCoord> t = {}) {
    if (k <= 2)
        throw std::invalid_argument(
            "chain needs k >= 3: k = 2 degenerates to the complementary pair");
    if (t.empty())
        for (int i = 0; i < k; ++i) t.push_back(CircleCoord(Rational(i, 2 * k)));
    if (static_cast<int>(t.size()) != k)
        throw std::invalid_argument("need one breakpoint per chain square");
    std::vector<Rectangle> rects;
    for (int i = 0; i < k; ++i) {
        Arc a(t[i], t[(i + 1) % k]);
        rects.emplace_back(a, a);
    }
    return SurfaceDiagram::validate(std::move(rects));
}

} // namespace rectsurf
