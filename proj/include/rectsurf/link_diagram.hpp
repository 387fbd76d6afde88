#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rectsurf/circle.hpp"

namespace rectsurf {

/// Thrown when an input fails a diagram validity rule. The message names
/// the offending line or pair.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class EdgeKind { Vertical, Horizontal };

/// A pair of vertex indices lying on a common meridian (vertical) or
/// longitude (horizontal).
struct Edge {
    std::size_t a, b;
    EdgeKind kind;
};

/// Rectangular diagram of a link: finite vertex set on the torus with
/// 0 or exactly 2 points on every meridian and longitude.
/// Immutable after validation.
class LinkDiagram {
public:
    LinkDiagram() = default;

    static LinkDiagram validate(std::vector<TorusPoint> vertices) {
        std::sort(vertices.begin(), vertices.end());
        for (std::size_t i = 1; i < vertices.size(); ++i)
            if (vertices[i] == vertices[i - 1])
                throw validation_error("duplicate vertex at (theta=" +
                                       vertices[i].theta.value().str() + ", phi=" +
                                       vertices[i].phi.value().str() + ")");
        LinkDiagram d;
        d.vertices_ = std::move(vertices);
        d.build_edges();
        return d;
    }

    const std::vector<TorusPoint>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }

    const TorusPoint& vertex(std::size_t i) const { return vertices_.at(i); }

    /// Index of the vertical (resp. horizontal) edge through vertex i.
    std::size_t vertical_edge_of(std::size_t i) const { return vedge_of_.at(i); }
    std::size_t horizontal_edge_of(std::size_t i) const { return hedge_of_.at(i); }

    std::size_t edge_partner(std::size_t edge_index, std::size_t v) const {
        const Edge& e = edges_.at(edge_index);
        return e.a == v ? e.b : e.a;
    }

    /// Connected components under the edge relation; each entry is a list of
    /// vertex indices. Components are themselves valid link diagrams.
    std::vector<std::vector<std::size_t>> components() const {
        std::vector<int> comp(vertices_.size(), -1);
        std::vector<std::vector<std::size_t>> out;
        for (std::size_t s = 0; s < vertices_.size(); ++s) {
            if (comp[s] >= 0) continue;
            int id = static_cast<int>(out.size());
            out.emplace_back();
            std::vector<std::size_t> stack{s};
            comp[s] = id;
            while (!stack.empty()) {
                std::size_t v = stack.back();
                stack.pop_back();
                out[id].push_back(v);
                for (std::size_t n : {edge_partner(vedge_of_[v], v),
                                      edge_partner(hedge_of_[v], v)}) {
                    if (comp[n] < 0) { comp[n] = id; stack.push_back(n); }
                }
            }
        }
        for (auto& c : out) std::sort(c.begin(), c.end());
        return out;
    }

    /// Sub-diagram spanned by the given vertex indices (must be a union of
    /// components for the result to be valid).
    LinkDiagram restrict_to(const std::vector<std::size_t>& idx) const {
        std::vector<TorusPoint> pts;
        pts.reserve(idx.size());
        for (std::size_t i : idx) pts.push_back(vertices_[i]);
        return validate(std::move(pts));
    }

    std::vector<CircleCoord> theta_values() const {
        std::vector<CircleCoord> v;
        for (auto& p : vertices_) v.push_back(p.theta);
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }
    std::vector<CircleCoord> phi_values() const {
        std::vector<CircleCoord> v;
        for (auto& p : vertices_) v.push_back(p.phi);
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }

private:
    void build_edges() {
        std::map<Rational, std::vector<std::size_t>> by_theta, by_phi;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            by_theta[vertices_[i].theta.value()].push_back(i);
            by_phi[vertices_[i].phi.value()].push_back(i);
        }
        vedge_of_.assign(vertices_.size(), 0);
        hedge_of_.assign(vertices_.size(), 0);
        for (auto& [t, idx] : by_theta) {
            if (idx.size() != 2)
                throw validation_error("meridian theta=" + t.str() + " has " +
                                       std::to_string(idx.size()) +
                                       " vertices (needs 0 or 2)");
            vedge_of_[idx[0]] = vedge_of_[idx[1]] = edges_.size();
            edges_.push_back(Edge{idx[0], idx[1], EdgeKind::Vertical});
        }
        for (auto& [p, idx] : by_phi) {
            if (idx.size() != 2)
                throw validation_error("longitude phi=" + p.str() + " has " +
                                       std::to_string(idx.size()) +
                                       " vertices (needs 0 or 2)");
            hedge_of_[idx[0]] = hedge_of_[idx[1]] = edges_.size();
            edges_.push_back(Edge{idx[0], idx[1], EdgeKind::Horizontal});
        }
    }

    std::vector<TorusPoint> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> vedge_of_, hedge_of_;
};

/// Signs per vertex; the two endpoints of every edge carry different signs.
struct Orientation {
    std::vector<int> sign; // +1 or -1 per vertex index

    bool valid_for(const LinkDiagram& d) const {
        if (sign.size() != d.size()) return false;
        for (const Edge& e : d.edges())
            if (sign[e.a] == sign[e.b]) return false;
        return true;
    }
};

/// All 2^c orientations of a diagram with c components.
inline std::vector<Orientation> orientations(const LinkDiagram& d) {
    auto comps = d.components();
    // One base assignment per component: propagate alternating signs.
    Orientation base;
    base.sign.assign(d.size(), 0);
    for (auto& c : comps) {
        std::vector<std::size_t> stack{c.front()};
        base.sign[c.front()] = +1;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t n : {d.edge_partner(d.vertical_edge_of(v), v),
                                  d.edge_partner(d.horizontal_edge_of(v), v)}) {
                if (base.sign[n] == 0) {
                    base.sign[n] = -base.sign[v];
                    stack.push_back(n);
                }
            }
        }
    }
    std::vector<Orientation> out;
    std::size_t count = std::size_t{1} << comps.size();
    for (std::size_t mask = 0; mask < count; ++mask) {
        Orientation o = base;
        for (std::size_t ci = 0; ci < comps.size(); ++ci)
            if (mask & (std::size_t{1} << ci))
                for (std::size_t v : comps[ci]) o.sign[v] = -o.sign[v];
        out.push_back(std::move(o));
    }
    return out;
}

/// First orientation in the canonical enumeration; handy where tb values are
/// orientation-independent.
inline Orientation default_orientation(const LinkDiagram& d) {
    return orientations(d).front();
}

/// Flags from the genericity scan (framing computations require no edge of
/// circular length exactly 1/2).
struct GenericityReport {
    bool has_half_length_edge = false;
    bool generic() const { return !has_half_length_edge; }
};

inline GenericityReport genericity(const LinkDiagram& d) {
    GenericityReport r;
    Rational half(1, 2);
    for (const Edge& e : d.edges()) {
        const TorusPoint& pa = d.vertex(e.a);
        const TorusPoint& pb = d.vertex(e.b);
        Rational gap = e.kind == EdgeKind::Vertical
                           ? pb.phi.cyclic_minus(pa.phi)
                           : pb.theta.cyclic_minus(pa.theta);
        if (gap == half) r.has_half_length_edge = true;
    }
    return r;
}

/// Staircase approximation of a generic closed polyline on the torus.
/// Consecutive samples must be closer than a half turn in each coordinate
/// (displacements follow the minor arc). Returns a valid diagram whose drawn
/// cycle follows the polyline; avoids the given forbidden lines.
inline LinkDiagram approximate_staircase(const std::vector<TorusPoint>& polyline,
                                         const std::vector<CircleCoord>& forbidden_theta = {},
                                         const std::vector<CircleCoord>& forbidden_phi = {}) {
    if (polyline.size() < 3)
        throw validation_error("staircase approximation needs at least 3 points");
    std::size_t m = polyline.size();
    for (std::size_t i = 0; i < m; ++i) {
        const TorusPoint& p = polyline[i];
        const TorusPoint& q = polyline[(i + 1) % m];
        if (p == q) throw validation_error("degenerate polyline: repeated point");
        if (p.theta == q.theta)
            throw validation_error("degenerate polyline: vertical segment at theta=" +
                                   p.theta.value().str());
        if (p.phi == q.phi)
            throw validation_error("degenerate polyline: horizontal segment at phi=" +
                                   p.phi.value().str());
    }

    std::set<Rational> used_theta, used_phi;
    for (auto& c : forbidden_theta) used_theta.insert(c.value());
    for (auto& c : forbidden_phi) used_phi.insert(c.value());

    // Nudge a coordinate off forbidden/used lines; the perturbation shrinks
    // geometrically so distinct inputs stay distinct.
    auto place = [](CircleCoord c, std::set<Rational>& used) {
        Rational q = c.value();
        Rational step(1, 1 << 20);
        while (used.count(q)) { q = (q + step).mod1(); step = step / Rational(2); }
        used.insert(q);
        return CircleCoord(q);
    };

    std::vector<CircleCoord> xs(m), ys(m);
    for (std::size_t i = 0; i < m; ++i) {
        xs[i] = place(polyline[i].theta, used_theta);
        ys[i] = place(polyline[i].phi, used_phi);
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (xs[i] == xs[(i + 1) % m] || ys[i] == ys[(i + 1) % m])
            throw validation_error("staircase: colliding sample coordinates");
    }

    // Corner sequence: horizontal move to x_{i+1}, then vertical to y_{i+1}.
    // Vertices are the corners (x_{i+1}, y_i) and (x_{i+1}, y_{i+1}).
    std::vector<TorusPoint> verts;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = (i + 1) % m;
        verts.push_back(TorusPoint{xs[j], ys[i]});
        verts.push_back(TorusPoint{xs[j], ys[j]});
    }
    return LinkDiagram::validate(std::move(verts));
}

/// Signed minor-arc displacement used by staircase homology counting.
inline Rational minor_arc_displacement(const CircleCoord& from, const CircleCoord& to) {
    Rational fwd = to.cyclic_minus(from);
    if (fwd <= Rational(1, 2)) return fwd;
    return fwd - Rational(1);
}

/// Homology class (winding in theta, winding in phi) of the staircase drawn
/// through the sample points, following minor arcs.
inline std::pair<Rational, Rational> polyline_homology(const std::vector<TorusPoint>& polyline) {
    Rational wt(0), wp(0);
    std::size_t m = polyline.size();
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = (i + 1) % m;
        wt += minor_arc_displacement(polyline[i].theta, polyline[j].theta);
        wp += minor_arc_displacement(polyline[i].phi, polyline[j].phi);
    }
    return {wt, wp};
}

} // namespace rectsurf
