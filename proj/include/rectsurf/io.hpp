#pragma once

#include <random>
#include <string>

#include <json.hpp>

#include "rectsurf/linking.hpp"
#include "rectsurf/moves.hpp"
#include "rectsurf/surface_diagram.hpp"

namespace rectsurf {

using nlohmann::json;

// Coordinates travel as exact "p/q" strings so that parse(print(x)) == x.

inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw std::invalid_argument("expected a rational as \"p/q\" or integer");
}

inline CircleCoord coord_from_json(const json& j) {
    return CircleCoord(rational_from_json(j));
}

inline json to_json(const TorusPoint& p) {
    return json{{"theta", p.theta.value().str()}, {"phi", p.phi.value().str()}};
}

inline TorusPoint point_from_json(const json& j) {
    return TorusPoint{coord_from_json(j.at("theta")), coord_from_json(j.at("phi"))};
}

inline json to_json(const LinkDiagram& d) {
    json verts = json::array();
    for (auto& p : d.vertices()) verts.push_back(to_json(p));
    return json{{"vertices", std::move(verts)}};
}

inline LinkDiagram link_from_json(const json& j) {
    std::vector<TorusPoint> pts;
    for (auto& v : j.at("vertices")) pts.push_back(point_from_json(v));
    return LinkDiagram::validate(std::move(pts));
}

inline json to_json(const Rectangle& r) {
    return json{{"theta", {r.theta_span.start.value().str(),
                           r.theta_span.end.value().str()}},
                {"phi", {r.phi_span.start.value().str(),
                         r.phi_span.end.value().str()}}};
}

inline Rectangle rectangle_from_json(const json& j) {
    auto& t = j.at("theta");
    auto& p = j.at("phi");
    return Rectangle(Arc(coord_from_json(t.at(0)), coord_from_json(t.at(1))),
                     Arc(coord_from_json(p.at(0)), coord_from_json(p.at(1))));
}

inline json to_json(const SurfaceDiagram& s) {
    json rects = json::array();
    for (auto& r : s.rectangles()) rects.push_back(to_json(r));
    return json{{"rectangles", std::move(rects)}};
}

inline SurfaceDiagram surface_from_json(const json& j) {
    std::vector<Rectangle> rects;
    for (auto& r : j.at("rectangles")) rects.push_back(rectangle_from_json(r));
    return SurfaceDiagram::validate(std::move(rects));
}

inline json to_json(const LinkDiagram& d, const Framing& f) {
    json edges = json::array();
    for (std::size_t e = 0; e < d.edges().size(); ++e) {
        const Edge& ed = d.edges()[e];
        std::size_t hi = f.greater[e], lo = ed.a == hi ? ed.b : ed.a;
        edges.push_back(json{{"lesser", to_json(d.vertex(lo))},
                             {"greater", to_json(d.vertex(hi))}});
    }
    return json{{"edges", std::move(edges)}};
}

inline json to_json(const MoveStep& m) {
    json j;
    switch (m.kind) {
        case MoveStep::Kind::Stabilize:
            j["move"] = "stabilize";
            j["vertex"] = m.vertex;
            j["corner"] = corner_name(m.corner);
            break;
        case MoveStep::Kind::Destabilize:
            j["move"] = "destabilize";
            j["square"] = to_json(m.destab->square);
            j["missing"] = corner_name(m.destab->missing);
            break;
        case MoveStep::Kind::Exchange:
            j["move"] = "exchange";
            j["meridians"] = m.exchange->meridians;
            j["line_a"] = m.exchange->line_a.value().str();
            j["line_b"] = m.exchange->line_b.value().str();
            break;
    }
    return j;
}

/// Detects the payload type by its keys.
inline bool is_surface_json(const json& j) { return j.contains("rectangles"); }

// ---------------------------------------------------------------------------
// Fixture library

inline LinkDiagram minimal_square_diagram() {
    auto c0 = CircleCoord(Rational(0));
    auto ch = CircleCoord(Rational(1, 2));
    return LinkDiagram::validate(
        {{c0, c0}, {c0, ch}, {ch, c0}, {ch, ch}});
}

/// Grid diagram from two permutations: column i holds vertices at heights
/// sigma_i and tau_i (all coordinates i/n).
inline LinkDiagram permutation_diagram(const std::vector<int>& sigma,
                                       const std::vector<int>& tau) {
    std::size_t n = sigma.size();
    std::vector<TorusPoint> pts;
    for (std::size_t i = 0; i < n; ++i) {
        pts.push_back({CircleCoord((std::int64_t)i, (std::int64_t)n),
                       CircleCoord(sigma[i], (std::int64_t)n)});
        pts.push_back({CircleCoord((std::int64_t)i, (std::int64_t)n),
                       CircleCoord(tau[i], (std::int64_t)n)});
    }
    return LinkDiagram::validate(std::move(pts));
}

inline LinkDiagram hopf_pair_diagram() {
    LinkDiagram base = minimal_square_diagram();
    std::vector<TorusPoint> v;
    for (const auto& p : base.vertices()) {
        v.push_back(p);
        v.push_back(TorusPoint{p.theta + Rational(1, 4), p.phi + Rational(1, 4)});
    }
    return LinkDiagram::validate(std::move(v));
}

inline LinkDiagram trefoil_staircase_diagram() {
    return permutation_diagram({0, 1, 2, 3, 4}, {2, 3, 4, 0, 1});
}

inline SurfaceDiagram single_rect_diagram() {
    Arc t(CircleCoord(Rational(0)), CircleCoord(Rational(1, 3)));
    Arc p(CircleCoord(Rational(0)), CircleCoord(Rational(1, 3)));
    return SurfaceDiagram::validate({Rectangle(t, p)});
}

inline SurfaceDiagram sphere_pair_diagram() {
    Arc t(CircleCoord(Rational(0)), CircleCoord(Rational(1, 3)));
    Arc p(CircleCoord(Rational(0)), CircleCoord(Rational(1, 3)));
    Arc tc(CircleCoord(Rational(1, 3)), CircleCoord(Rational(0)));
    Arc pc(CircleCoord(Rational(1, 3)), CircleCoord(Rational(0)));
    return SurfaceDiagram::validate({Rectangle(t, p), Rectangle(tc, pc)});
}

/// Seeded random link diagram with n vertical lines (n odd keeps the
/// diagram generic: no edge can have circular length exactly 1/2).
inline LinkDiagram random_link_diagram(std::uint64_t seed, int n = 9) {
    std::mt19937_64 rng(seed);
    std::vector<int> sigma(n), tau(n);
    for (int i = 0; i < n; ++i) sigma[i] = tau[i] = i;
    std::shuffle(sigma.begin(), sigma.end(), rng);
    for (;;) {
        std::shuffle(tau.begin(), tau.end(), rng);
        bool ok = true;
        for (int i = 0; i < n; ++i) ok = ok && sigma[i] != tau[i];
        if (ok) break;
    }
    return permutation_diagram(sigma, tau);
}

struct RandomSurfaceResult {
    SurfaceDiagram diagram;
    bool budget_met = true;
    std::string notice;
};

/// Rejection sampling of compatible rectangles on a fresh rational grid.
/// Deterministic per seed; if the budget is unreachable within the attempt
/// bound, a smaller valid diagram is returned together with a notice.
inline RandomSurfaceResult random_surface_diagram(std::uint64_t seed,
                                                  int budget) {
    if (budget < 1) throw std::invalid_argument("budget must be at least 1");
    std::mt19937_64 rng(seed);
    std::int64_t grid = 4 * budget + 1;
    std::uniform_int_distribution<std::int64_t> pick(0, grid - 1);
    std::vector<Rectangle> rects;
    auto coord = [&](std::int64_t v) { return CircleCoord(v, grid); };
    int attempts = 0, limit = 400 * budget;
    while ((int)rects.size() < budget && attempts < limit) {
        ++attempts;
        std::int64_t t1 = pick(rng), t2 = pick(rng), p1 = pick(rng), p2 = pick(rng);
        if (t1 == t2 || p1 == p2) continue;
        Rectangle cand(Arc(coord(t1), coord(t2)), Arc(coord(p1), coord(p2)));
        std::vector<Rectangle> trial = rects;
        trial.push_back(cand);
        try {
            SurfaceDiagram::validate(trial);
        } catch (const validation_error&) {
            continue;
        }
        rects.push_back(cand);
    }
    RandomSurfaceResult out{SurfaceDiagram::validate(rects),
                            (int)rects.size() == budget, ""};
    if (!out.budget_met)
        out.notice = "budget " + std::to_string(budget) +
                     " unreachable; returning " + std::to_string(rects.size()) +
                     " rectangles";
    return out;
}

struct FixtureEntry {
    std::string name;
    json payload;
};

inline std::vector<FixtureEntry> fixture_library() {
    std::vector<FixtureEntry> out;
    out.push_back({"minimal_square", to_json(minimal_square_diagram())});
    out.push_back({"hopf_pair", to_json(hopf_pair_diagram())});
    out.push_back({"trefoil_staircase", to_json(trefoil_staircase_diagram())});
    out.push_back({"single_rect", to_json(single_rect_diagram())});
    out.push_back({"sphere_pair", to_json(sphere_pair_diagram())});
    out.push_back({"chain3", to_json(make_chain(3))});
    out.push_back({"chain4", to_json(make_chain(4))});
    return out;
}

} // namespace rectsurf
