#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "rectsurf/linking.hpp"

namespace rectsurf {

/// An ordering of each edge's endpoint pair: `greater[e]` is the vertex
/// index designated as the greater endpoint of edge e.
struct Framing {
    std::vector<std::size_t> greater;

    bool valid_for(const LinkDiagram& d) const {
        if (greater.size() != d.edges().size()) return false;
        for (std::size_t e = 0; e < greater.size(); ++e) {
            const Edge& ed = d.edges()[e];
            if (greater[e] != ed.a && greater[e] != ed.b) return false;
        }
        return true;
    }
};

/// Per-vertex corner data induced by a framing. A vertex that is extremal
/// for both its edges (min of both or max of both) sits on a corner arc
/// tangent to the xi_minus plane field; mixed vertices sit on xi_plus arcs.
struct CornerRole {
    bool is_max_of_horizontal = false;
    bool is_max_of_vertical = false;

    bool extremal() const { return is_max_of_horizontal == is_max_of_vertical; }
};

inline std::vector<CornerRole> corner_roles(const LinkDiagram& d, const Framing& f) {
    if (!f.valid_for(d))
        throw validation_error("framing does not fit the diagram");
    std::vector<CornerRole> roles(d.size());
    for (std::size_t v = 0; v < d.size(); ++v) {
        roles[v].is_max_of_vertical = f.greater[d.vertical_edge_of(v)] == v;
        roles[v].is_max_of_horizontal = f.greater[d.horizontal_edge_of(v)] == v;
    }
    return roles;
}

/// Number of extremal vertices of the given component; always even.
inline long n_minus(const LinkDiagram& d, const Framing& f,
                    const std::vector<std::size_t>& component) {
    auto roles = corner_roles(d, f);
    long n = 0;
    for (std::size_t v : component)
        if (roles[v].extremal()) ++n;
    return n;
}

struct FramingValue {
    std::vector<long> per_component;
    long total = 0;
};

/// The framing invariant <f|K> = tb+(K) + n-(K,f)/2, per component.
/// Requires a generic diagram: with an edge of circular length exactly 1/2
/// the diagram-to-link framing correspondence is one-to-many, which this
/// module does not model.
inline FramingValue framing_value(const LinkDiagram& d, const Framing& f) {
    if (!f.valid_for(d))
        throw validation_error("framing does not fit the diagram");
    if (!genericity(d).generic())
        throw validation_error(
            "framing value undefined: diagram has an edge of circular length 1/2");
    FramingValue out;
    for (auto& comp : d.components()) {
        LinkDiagram sub = d.restrict_to(comp);
        long n = n_minus(d, f, comp);
        if (n % 2 != 0) throw std::logic_error("odd extremal vertex count");
        long v = tb_plus(sub) + n / 2;
        out.per_component.push_back(v);
        out.total += v;
    }
    return out;
}

struct FramingRange {
    long lo = 0, hi = 0;  // [tb+(K), -tb-(K)]
};

/// Admissible framing values per component: the integer interval
/// [tb+(K), -tb-(K)], of width |K|/2.
inline std::vector<FramingRange> framing_range(const LinkDiagram& d) {
    std::vector<FramingRange> out;
    for (auto& comp : d.components()) {
        LinkDiagram sub = d.restrict_to(comp);
        out.push_back(FramingRange{tb_plus(sub), -tb_minus(sub)});
    }
    return out;
}

struct RelativeTb {
    long tb_plus = 0, tb_minus = 0;  // tb+-(K;F) = tb+-(K) -+ lk(K, K^F)
};

/// Thurston-Bennequin numbers relative to a surface, given the linking
/// number of each boundary component with its push-off along the surface.
inline std::vector<RelativeTb> relative_tb(const LinkDiagram& d,
                                           const std::vector<long>& surface_lk) {
    auto comps = d.components();
    if (surface_lk.size() != comps.size())
        throw std::invalid_argument("need one lk value per component");
    std::vector<RelativeTb> out;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        LinkDiagram sub = d.restrict_to(comps[i]);
        out.push_back(RelativeTb{tb_plus(sub) - surface_lk[i], tb_minus(sub) + surface_lk[i]});
    }
    return out;
}

struct RepresentabilityVerdict {
    std::vector<bool> component_passes;
    std::vector<RelativeTb> relative;
    bool overall = false;
};

/// A framed link is representable by a rectangular surface diagram iff both
/// relative Thurston-Bennequin numbers of every component are non-positive,
/// i.e. lk(K, K^F) lies in [tb+(K), -tb-(K)].
inline RepresentabilityVerdict representability_check(const LinkDiagram& d,
                                                      const std::vector<long>& surface_lk) {
    RepresentabilityVerdict v;
    v.relative = relative_tb(d, surface_lk);
    v.overall = true;
    for (auto& r : v.relative) {
        bool ok = r.tb_plus <= 0 && r.tb_minus <= 0;
        v.component_passes.push_back(ok);
        if (!ok) v.overall = false;
    }
    return v;
}

/// All 2^edges framings; intended for exhaustive checks on small diagrams.
inline std::vector<Framing> all_framings(const LinkDiagram& d) {
    std::size_t m = d.edges().size();
    if (m > 24)
        throw std::invalid_argument("framing enumeration limited to 24 edges");
    std::vector<Framing> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        Framing f;
        f.greater.resize(m);
        for (std::size_t e = 0; e < m; ++e)
            f.greater[e] = (mask >> e) & 1 ? d.edges()[e].a : d.edges()[e].b;
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace rectsurf
