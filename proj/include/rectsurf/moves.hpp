#pragma once

#include <algorithm>
#include <chrono>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "rectsurf/surface_diagram.hpp"

namespace rectsurf {

enum class StabType { I, II };

/// Which stabilization type a given placement of the removed vertex within
/// the small square produces. Pinned by the tb effect: type I preserves
/// tb+ and drops tb- by one, type II the other way around. Calibrated
/// against the linking module (see tests): the extremal corners BL and TR
/// give type I.
inline StabType stab_type_of_corner(CornerKind k) {
    return (k == CornerKind::BL || k == CornerKind::TR) ? StabType::I : StabType::II;
}

struct StabilizationSite {
    std::size_t vertex = 0;   // v0, the vertex being replaced
    CornerKind corner = CornerKind::BL;  // position of v0 in the square
    Rectangle square;
    StabType type = StabType::I;
};

namespace detail {

/// Distance from x to the next / previous occupied line, cyclically.
inline Rational gap_after(const std::vector<CircleCoord>& lines, const CircleCoord& x) {
    Rational best(2);
    for (auto& l : lines) {
        if (l == x) continue;
        best = std::min(best, l.cyclic_minus(x));
    }
    return best;
}

inline Rational gap_before(const std::vector<CircleCoord>& lines, const CircleCoord& x) {
    Rational best(2);
    for (auto& l : lines) {
        if (l == x) continue;
        best = std::min(best, x.cyclic_minus(l));
    }
    return best;
}

inline bool line_occupied_inside(const std::vector<CircleCoord>& lines, const Arc& a) {
    for (auto& l : lines)
        if (arc_contains(a, l, false) && !(l == a.start) && !(l == a.end)) return true;
    return false;
}

} // namespace detail

/// Build the small square for a stabilization at vertex v0, with v0 sitting
/// at the given corner. The new meridian and longitude are placed at one
/// third of the adjacent empty gaps, so the strip conditions hold
/// automatically.
inline StabilizationSite make_stabilization_site(const LinkDiagram& d, std::size_t v,
                                                 CornerKind corner) {
    if (v >= d.size()) throw std::invalid_argument("vertex index out of range");
    auto ts = d.theta_values();
    auto ps = d.phi_values();
    if (ts.size() < 2 || ps.size() < 2)
        throw std::invalid_argument("diagram too small to stabilize");
    const TorusPoint& v0 = d.vertex(v);
    bool right = corner == CornerKind::BL || corner == CornerKind::TL;  // square grows in +theta
    bool up = corner == CornerKind::BL || corner == CornerKind::BR;     // square grows in +phi
    Rational gt = right ? detail::gap_after(ts, v0.theta) : detail::gap_before(ts, v0.theta);
    Rational gp = up ? detail::gap_after(ps, v0.phi) : detail::gap_before(ps, v0.phi);
    CircleCoord tn = right ? v0.theta + gt / Rational(3) : v0.theta - gt / Rational(3);
    CircleCoord pn = up ? v0.phi + gp / Rational(3) : v0.phi - gp / Rational(3);
    Arc tspan = right ? Arc(v0.theta, tn) : Arc(tn, v0.theta);
    Arc pspan = up ? Arc(v0.phi, pn) : Arc(pn, v0.phi);
    return StabilizationSite{v, corner, Rectangle(tspan, pspan),
                             stab_type_of_corner(corner)};
}

/// All four stabilization sites at a vertex (one per corner placement).
inline std::vector<StabilizationSite> stabilization_sites(const LinkDiagram& d,
                                                          std::size_t v) {
    std::vector<StabilizationSite> out;
    for (CornerKind k :
         {CornerKind::BL, CornerKind::BR, CornerKind::TL, CornerKind::TR})
        out.push_back(make_stabilization_site(d, v, k));
    return out;
}

/// Replace v0 by the other three corners of the site's square.
inline LinkDiagram stabilize(const LinkDiagram& d, const StabilizationSite& site) {
    if (site.vertex >= d.size()) throw std::invalid_argument("vertex index out of range");
    const TorusPoint& v0 = d.vertex(site.vertex);
    if (!(site.square.corner(site.corner) == v0))
        throw validation_error("square does not have the vertex at the stated corner");
    // strip emptiness: no vertex of the diagram strictly inside either strip,
    // and the two new lines unoccupied
    for (std::size_t i = 0; i < d.size(); ++i) {
        const TorusPoint& w = d.vertex(i);
        bool t_in = arc_contains(site.square.theta_span, w.theta, false) &&
                    !(w.theta == site.square.theta_span.start) &&
                    !(w.theta == site.square.theta_span.end);
        bool p_in = arc_contains(site.square.phi_span, w.phi, false) &&
                    !(w.phi == site.square.phi_span.start) &&
                    !(w.phi == site.square.phi_span.end);
        bool t_new = !(w.theta == v0.theta) &&
                     (w.theta == site.square.theta_span.start ||
                      w.theta == site.square.theta_span.end);
        bool p_new = !(w.phi == v0.phi) && (w.phi == site.square.phi_span.start ||
                                            w.phi == site.square.phi_span.end);
        if (t_in || p_in || t_new || p_new)
            throw validation_error("stabilization strip is blocked by vertex (" +
                                   w.theta.value().str() + ", " + w.phi.value().str() +
                                   ")");
    }
    std::vector<TorusPoint> pts;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (i != site.vertex) pts.push_back(d.vertex(i));
    for (CornerKind k :
         {CornerKind::BL, CornerKind::BR, CornerKind::TL, CornerKind::TR})
        if (k != site.corner) pts.push_back(site.square.corner(k));
    return LinkDiagram::validate(std::move(pts));
}

struct DestabilizationSite {
    Rectangle square;
    CornerKind missing = CornerKind::BL;  // the corner to be restored
};

/// Small squares with exactly three corners present and both strips empty.
inline std::vector<DestabilizationSite> destabilization_candidates(const LinkDiagram& d) {
    std::vector<DestabilizationSite> out;
    auto ts = d.theta_values();
    auto ps = d.phi_values();
    auto is_vertex = [&](const TorusPoint& p) {
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d.vertex(i) == p) return true;
        return false;
    };
    std::set<std::pair<std::pair<Rational, Rational>, std::pair<Rational, Rational>>> seen;
    for (const Edge& e : d.edges()) {
        if (e.kind != EdgeKind::Vertical) continue;
        const TorusPoint& a = d.vertex(e.a);
        const TorusPoint& b = d.vertex(e.b);
        for (const TorusPoint* endp : {&a, &b}) {
            const TorusPoint& other = endp == &a ? b : a;
            // horizontal partner of *endp fixes the second meridian
            std::size_t ei = endp == &a ? e.a : e.b;
            const Edge& h = d.edges()[d.horizontal_edge_of(ei)];
            const TorusPoint& w = d.vertex(h.a == ei ? h.b : h.a);
            TorusPoint missing_pt{w.theta, other.phi};
            if (is_vertex(missing_pt)) continue;
            for (bool tfwd : {true, false}) {
                Arc tspan = tfwd ? Arc(endp->theta, w.theta) : Arc(w.theta, endp->theta);
                if (detail::line_occupied_inside(ts, tspan)) continue;
                for (bool pfwd : {true, false}) {
                    Arc pspan =
                        pfwd ? Arc(endp->phi, other.phi) : Arc(other.phi, endp->phi);
                    if (detail::line_occupied_inside(ps, pspan)) continue;
                    Rectangle sq(tspan, pspan);
                    CornerKind missing = CornerKind::BL;
                    bool found = false;
                    for (CornerKind k : {CornerKind::BL, CornerKind::BR, CornerKind::TL,
                                         CornerKind::TR})
                        if (sq.corner(k) == missing_pt) {
                            missing = k;
                            found = true;
                        }
                    if (!found) throw std::logic_error("lost the missing corner");
                    auto key = std::make_pair(
                        std::make_pair(tspan.start.value(), tspan.end.value()),
                        std::make_pair(pspan.start.value(), pspan.end.value()));
                    if (seen.insert(key).second)
                        out.push_back(DestabilizationSite{sq, missing});
                }
            }
        }
    }
    return out;
}

/// Remove the three present corners of the square and restore the missing
/// one: the exact inverse of stabilize.
inline LinkDiagram destabilize(const LinkDiagram& d, const DestabilizationSite& site) {
    std::vector<TorusPoint> corners;
    for (CornerKind k : {CornerKind::BL, CornerKind::BR, CornerKind::TL, CornerKind::TR})
        if (k != site.missing) corners.push_back(site.square.corner(k));
    std::vector<TorusPoint> pts;
    std::size_t removed = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const TorusPoint& v = d.vertex(i);
        bool is_corner = false;
        for (auto& c : corners) is_corner = is_corner || v == c;
        if (is_corner) ++removed;
        else pts.push_back(v);
    }
    if (removed != 3)
        throw validation_error("destabilization pattern not found: square has " +
                               std::to_string(removed) + " of 3 corners present");
    if (detail::line_occupied_inside(d.theta_values(),
                                     Arc(site.square.theta_span)) ||
        detail::line_occupied_inside(d.phi_values(),
                                     site.square.phi_span))
        throw validation_error("destabilization strip is not empty");
    pts.push_back(site.square.corner(site.missing));
    return LinkDiagram::validate(std::move(pts));
}

struct ExchangeSite {
    bool meridians = true;  // true: swap two meridians, false: two longitudes
    CircleCoord line_a, line_b;
};

namespace detail {

/// The two values {x1, x2} and {y1, y2} interleave on the circle.
inline bool interleaved(const CircleCoord& x1, const CircleCoord& x2,
                        const CircleCoord& y1, const CircleCoord& y2) {
    Arc a(x1, x2);
    bool i1 = arc_contains(a, y1, false) && !(y1 == x1) && !(y1 == x2);
    bool i2 = arc_contains(a, y2, false) && !(y2 == x1) && !(y2 == x2);
    return i1 != i2;
}

} // namespace detail

/// Legality of an exchange: the two lines are circularly adjacent among the
/// occupied lines of their kind, the four cross coordinates are pairwise
/// distinct, and the two spans do not interleave.
///
/// The move itself is not defined in the source material for this toolkit;
/// this is the standard arc-presentation exchange, isolated here so the
/// convention can be revised without touching the search code.
inline bool exchange_legal(const LinkDiagram& d, const ExchangeSite& s,
                           std::string* why = nullptr) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    auto lines = s.meridians ? d.theta_values() : d.phi_values();
    bool found_a = false, found_b = false;
    for (auto& l : lines) {
        found_a = found_a || l == s.line_a;
        found_b = found_b || l == s.line_b;
    }
    if (!found_a || !found_b || s.line_a == s.line_b)
        return fail("lines are not two distinct occupied lines");
    if (detail::line_occupied_inside(lines, Arc(s.line_a, s.line_b)) &&
        detail::line_occupied_inside(lines, Arc(s.line_b, s.line_a)))
        return fail("lines are not circularly adjacent");
    std::vector<CircleCoord> ca, cb;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const TorusPoint& v = d.vertex(i);
        const CircleCoord& line = s.meridians ? v.theta : v.phi;
        const CircleCoord& cross = s.meridians ? v.phi : v.theta;
        if (line == s.line_a) ca.push_back(cross);
        if (line == s.line_b) cb.push_back(cross);
    }
    for (auto& x : ca)
        for (auto& y : cb)
            if (x == y) return fail("edges share an endpoint line");
    if (detail::interleaved(ca[0], ca[1], cb[0], cb[1]))
        return fail("edge spans interleave");
    return true;
}

inline std::vector<ExchangeSite> exchange_candidates(const LinkDiagram& d) {
    std::vector<ExchangeSite> out;
    for (bool meridians : {true, false}) {
        auto lines =
            meridians ? d.theta_values() : d.phi_values();
        std::size_t k = lines.size();
        if (k < 2) continue;
        std::size_t pairs = k == 2 ? 1 : k;
        for (std::size_t i = 0; i < pairs; ++i) {
            ExchangeSite s{meridians, lines[i], lines[(i + 1) % k]};
            if (exchange_legal(d, s)) out.push_back(s);
        }
    }
    return out;
}

/// Transpose the two lines: every vertex on line_a moves to line_b and vice
/// versa. An involution on the same site.
inline LinkDiagram apply_exchange(const LinkDiagram& d, const ExchangeSite& s) {
    std::string why;
    if (!exchange_legal(d, s, &why)) throw validation_error("illegal exchange: " + why);
    std::vector<TorusPoint> pts;
    for (std::size_t i = 0; i < d.size(); ++i) {
        TorusPoint v = d.vertex(i);
        CircleCoord& line = s.meridians ? v.theta : v.phi;
        if (line == s.line_a) line = s.line_b;
        else if (line == s.line_b) line = s.line_a;
        pts.push_back(v);
    }
    return LinkDiagram::validate(std::move(pts));
}

/// Combinatorial order type modulo torus translation: vertex coordinates
/// replaced by their circular ranks, minimized over independent cyclic
/// rotations of the two coordinates.
struct CanonicalForm {
    std::size_t kt = 0, kp = 0;
    std::vector<std::pair<std::size_t, std::size_t>> cells;  // sorted

    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
        return a.kt == b.kt && a.kp == b.kp && a.cells == b.cells;
    }
    friend bool operator<(const CanonicalForm& a, const CanonicalForm& b) {
        if (a.kt != b.kt) return a.kt < b.kt;
        if (a.kp != b.kp) return a.kp < b.kp;
        return a.cells < b.cells;
    }

    std::string key() const {
        std::string s = std::to_string(kt) + "x" + std::to_string(kp) + ":";
        for (auto& [i, j] : cells)
            s += std::to_string(i) + "," + std::to_string(j) + ";";
        return s;
    }

    /// Representative diagram on the uniform grid i/kt, j/kp.
    LinkDiagram diagram() const {
        std::vector<TorusPoint> pts;
        for (auto& [i, j] : cells)
            pts.push_back(TorusPoint{
                CircleCoord(Rational(static_cast<long long>(i), static_cast<long long>(kt))),
                CircleCoord(Rational(static_cast<long long>(j), static_cast<long long>(kp)))});
        return LinkDiagram::validate(std::move(pts));
    }
};

inline CanonicalForm canonical_form(const LinkDiagram& d) {
    auto ts = d.theta_values();
    auto ps = d.phi_values();
    std::size_t kt = ts.size(), kp = ps.size();
    auto rank = [](const std::vector<CircleCoord>& lines, const CircleCoord& x) {
        for (std::size_t i = 0; i < lines.size(); ++i)
            if (lines[i] == x) return i;
        throw std::logic_error("coordinate not among its own lines");
    };
    std::vector<std::pair<std::size_t, std::size_t>> base;
    for (std::size_t i = 0; i < d.size(); ++i)
        base.emplace_back(rank(ts, d.vertex(i).theta), rank(ps, d.vertex(i).phi));
    CanonicalForm best;
    best.kt = kt;
    best.kp = kp;
    bool first = true;
    for (std::size_t r = 0; r < std::max<std::size_t>(kt, 1); ++r) {
        for (std::size_t s = 0; s < std::max<std::size_t>(kp, 1); ++s) {
            std::vector<std::pair<std::size_t, std::size_t>> cells;
            for (auto& [i, j] : base)
                cells.emplace_back((i + r) % kt, (j + s) % kp);
            std::sort(cells.begin(), cells.end());
            if (first || cells < best.cells) {
                best.cells = std::move(cells);
                first = false;
            }
        }
    }
    return best;
}

struct ExploreLimits {
    std::size_t max_nodes = 10000;
    double max_seconds = 10.0;
};

struct ExploreResult {
    std::size_t visited = 0;
    bool rigid = false;         // no exchange available at the root
    bool complete = false;      // frontier exhausted within limits
    bool target_found = false;  // only meaningful when a target was given
};

/// BFS over exchange moves modulo canonical form. Limit exhaustion leaves
/// `complete` false; it is not an error.
inline ExploreResult explore_exchange_class(const LinkDiagram& start,
                                            const ExploreLimits& lim = {},
                                            const LinkDiagram* target = nullptr) {
    ExploreResult res;
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(lim.max_seconds));
    std::string target_key;
    if (target) target_key = canonical_form(*target).key();
    std::unordered_set<std::string> visited;
    std::deque<LinkDiagram> frontier;
    CanonicalForm c0 = canonical_form(start);
    visited.insert(c0.key());
    if (target && c0.key() == target_key) res.target_found = true;
    frontier.push_back(start);
    res.rigid = exchange_candidates(start).empty();
    bool truncated = false;
    while (!frontier.empty()) {
        if (visited.size() >= lim.max_nodes ||
            std::chrono::steady_clock::now() > deadline) {
            truncated = true;
            break;
        }
        LinkDiagram d = std::move(frontier.front());
        frontier.pop_front();
        for (auto& site : exchange_candidates(d)) {
            LinkDiagram next = apply_exchange(d, site);
            std::string key = canonical_form(next).key();
            if (visited.insert(key).second) {
                if (target && key == target_key) res.target_found = true;
                frontier.push_back(std::move(next));
            }
        }
    }
    res.visited = visited.size();
    res.complete = !truncated;
    return res;
}

/// One replayable move.
struct MoveStep {
    enum class Kind { Stabilize, Destabilize, Exchange } kind = Kind::Stabilize;
    // stabilize
    std::size_t vertex = 0;
    CornerKind corner = CornerKind::BL;
    // destabilize
    std::optional<DestabilizationSite> destab;
    // exchange
    std::optional<ExchangeSite> exchange;
};

inline LinkDiagram replay(LinkDiagram d, const std::vector<MoveStep>& trace) {
    for (auto& m : trace) {
        switch (m.kind) {
            case MoveStep::Kind::Stabilize:
                d = stabilize(d, make_stabilization_site(d, m.vertex, m.corner));
                break;
            case MoveStep::Kind::Destabilize:
                if (!m.destab) throw std::invalid_argument("missing destabilization site");
                d = destabilize(d, *m.destab);
                break;
            case MoveStep::Kind::Exchange:
                if (!m.exchange) throw std::invalid_argument("missing exchange site");
                d = apply_exchange(d, *m.exchange);
                break;
        }
    }
    return d;
}

} // namespace rectsurf
