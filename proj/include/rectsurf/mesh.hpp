#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "rectsurf/tile_geometry.hpp"

namespace rectsurf {

struct TileMesh {
    std::size_t tile_index = 0;
    std::vector<std::array<std::size_t, 3>> faces;     // global vertex ids
    std::array<std::vector<std::size_t>, 4> corner_arcs; // BL, BR, TL, TR
};

struct SurfaceMesh {
    std::vector<Vec4> vertices;
    std::vector<TileMesh> tiles;
    Vec4 pole;
    std::vector<Vec3> projected;
};

inline std::size_t corner_arc_slot(CornerKind k) {
    switch (k) {
        case CornerKind::BL: return 0;
        case CornerKind::BR: return 1;
        case CornerKind::TL: return 2;
        case CornerKind::TR: return 3;
    }
    return 0;
}

/// Default projection pole: the point of the tau = 0 binding circle whose
/// phi is farthest from every rectangle's phi span; if the spans cover the
/// whole circle (as for any cyclic chain), farthest from the binding points,
/// which are the only points where the surface meets the circle. The
/// closeness of the final pole to the surface is checked during meshing.
inline Vec4 default_pole(const SurfaceDiagram& s) {
    if (s.empty()) return embed_r4(0, 0.5, 0);
    std::vector<CircleCoord> ends;
    for (auto& r : s.rectangles()) {
        ends.push_back(r.phi_span.start);
        ends.push_back(r.phi_span.end);
    }
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    auto span_clearance = [&](const CircleCoord& p) {
        double best = 0.5;
        for (auto& r : s.rectangles()) {
            if (arc_contains(r.phi_span, p, true)) return 0.0;
            for (auto& e : {r.phi_span.start, r.phi_span.end}) {
                double d = p.cyclic_minus(e).to_double();
                best = std::min(best, std::min(d, 1.0 - d));
            }
        }
        return best;
    };
    CircleCoord best_phi;
    std::pair<double, double> best{-1, -1};
    for (std::size_t i = 0; i < ends.size(); ++i) {
        const CircleCoord& lo = ends[i];
        const CircleCoord& hi = ends[(i + 1) % ends.size()];
        Rational gap = hi.cyclic_minus(lo);
        if (gap == Rational(0)) gap = Rational(1);
        CircleCoord mid = lo + gap / Rational(2);
        std::pair<double, double> score{span_clearance(mid),
                                        (gap / Rational(2)).to_double()};
        if (score > best) {
            best = score;
            best_phi = mid;
        }
    }
    return embed_r4(0, best_phi.turns(), 0);
}

/// Structured tile meshes over the whole diagram, sharing corner-arc
/// polylines bit-exact between adjacent tiles. The grid is cosine-graded
/// toward the corners; each horizontal or vertical side collapses to its
/// binding point, and the four corner regions are closed by fans onto the
/// uniformly sampled corner arcs.
inline SurfaceMesh surface_mesh(const SurfaceDiagram& s, double kappa,
                                int resolution,
                                std::optional<Vec4> pole = std::nullopt) {
    if (resolution < 8)
        throw std::invalid_argument("mesh resolution must be at least 8");
    SurfaceMesh out;
    std::map<Vec4, std::size_t> ids;
    auto vid = [&](const Vec4& v) {
        auto [it, fresh] = ids.try_emplace(v, out.vertices.size());
        if (fresh) out.vertices.push_back(v);
        return it->second;
    };

    const int R = resolution;
    for (std::size_t ti = 0; ti < s.size(); ++ti) {
        const Rectangle& r = s.rectangles()[ti];
        HarmonicTile tile(r);
        double a = tile.a(), b = tile.b();
        double t0 = r.theta_span.start.turns(), p0 = r.phi_span.start.turns();
        double t1 = r.theta_span.end.turns(), p1 = r.phi_span.end.turns();

        TileMesh tm;
        tm.tile_index = ti;

        // corner arcs: uniform tau samples at the exact corner coordinates
        auto arc_of = [&](CornerKind k) {
            TorusPoint c = r.corner(k);
            std::vector<std::size_t> arc;
            for (int j = 0; j <= R; ++j)
                arc.push_back(
                    vid(embed_r4(c.theta.turns(), c.phi.turns(), (double)j / R)));
            return arc;
        };
        for (CornerKind k :
             {CornerKind::BL, CornerKind::BR, CornerKind::TL, CornerKind::TR})
            tm.corner_arcs[corner_arc_slot(k)] = arc_of(k);

        // cosine-graded local samples, refined toward both ends
        auto graded = [&](double len) {
            std::vector<double> xs(R + 1);
            for (int i = 0; i <= R; ++i)
                xs[i] = len * (1 - std::cos(kPi * i / R)) / 2;
            return xs;
        };
        std::vector<double> xs = graded(a), ys = graded(b);

        // vertex of the structured grid; sides collapse to binding points
        std::vector<std::size_t> grid((R + 1) * (R + 1), SIZE_MAX);
        auto gid = [&](int i, int j) -> std::size_t& {
            return grid[i * (R + 1) + j];
        };
        for (int i = 0; i <= R; ++i)
            for (int j = 0; j <= R; ++j) {
                if ((i == 0 || i == R) && (j == 0 || j == R)) continue; // corners
                Vec4 v;
                if (j == 0)
                    v = embed_r4(0, p0, 0);
                else if (j == R)
                    v = embed_r4(0, p1, 0);
                else if (i == 0)
                    v = embed_r4(t0, 0, 1);
                else if (i == R)
                    v = embed_r4(t1, 0, 1);
                else
                    v = embed_r4(t0 + xs[i], p0 + ys[j],
                                 zeta(tile.eval_local(xs[i], ys[j]), kappa));
                gid(i, j) = vid(v);
            }

        auto emit = [&](std::size_t u, std::size_t v, std::size_t w) {
            if (u == v || v == w || u == w) return;
            tm.faces.push_back({u, v, w});
        };
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < R; ++j) {
                bool corner_cell = (i == 0 || i == R - 1) && (j == 0 || j == R - 1);
                if (corner_cell) continue;
                std::size_t A = gid(i, j), B = gid(i + 1, j), C = gid(i + 1, j + 1),
                            D = gid(i, j + 1);
                emit(A, B, C);
                emit(A, C, D);
            }
        // Fans closing the four corner cells onto the corner arcs. The arc
        // endpoints coincide with the binding points of the adjacent sides,
        // so each fan meets the structured grid without a seam.
        struct Fan {
            CornerKind k;
            int ii, jj; // inner grid corner
        };
        for (Fan f : {Fan{CornerKind::BL, 1, 1}, Fan{CornerKind::BR, R - 1, 1},
                      Fan{CornerKind::TL, 1, R - 1}, Fan{CornerKind::TR, R - 1, R - 1}}) {
            const auto& arc = tm.corner_arcs[corner_arc_slot(f.k)];
            std::size_t inner = gid(f.ii, f.jj);
            for (int j = 0; j < R; ++j) emit(arc[j], arc[j + 1], inner);
        }
        out.tiles.push_back(std::move(tm));
    }

    out.pole = pole ? *pole : default_pole(s);
    double clearance = std::numeric_limits<double>::infinity();
    for (auto& v : out.vertices) clearance = std::min(clearance, norm(v - out.pole));
    if (clearance < Tolerances::get().pole_clearance)
        throw std::runtime_error(
            "projection pole is within " + std::to_string(clearance) +
            " of the surface; choose another pole");
    out.projected.reserve(out.vertices.size());
    for (auto& v : out.vertices) out.projected.push_back(stereographic(v, out.pole));
    return out;
}

/// Wavefront OBJ with one object per tile.
inline std::string obj_document(const SurfaceMesh& m) {
    std::ostringstream os;
    os.precision(17);
    os << "# rectsurf surface mesh\n";
    for (auto& p : m.projected)
        os << "v " << p.x << " " << p.y << " " << p.z << "\n";
    for (auto& t : m.tiles) {
        os << "o tile_" << t.tile_index << "\n";
        for (auto& f : t.faces)
            os << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
    }
    return os.str();
}

struct ObjCheck {
    std::size_t vertex_count = 0, face_count = 0, object_count = 0;
    std::vector<std::string> warnings;
    bool ok() const { return warnings.empty(); }
};

/// Minimal OBJ validation: parseable statements, in-range one-based indices,
/// no degenerate faces.
inline ObjCheck validate_obj(const std::string& text) {
    ObjCheck c;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        auto warn = [&](const std::string& msg) {
            c.warnings.push_back("line " + std::to_string(lineno) + ": " + msg);
        };
        if (tag == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z))
                warn("vertex needs three coordinates");
            else if (!(std::isfinite(x) && std::isfinite(y) && std::isfinite(z)))
                warn("non-finite vertex coordinate");
            ++c.vertex_count;
        } else if (tag == "f") {
            long i, j, k;
            if (!(ls >> i >> j >> k)) {
                warn("face needs three indices");
                continue;
            }
            ++c.face_count;
            for (long idx : {i, j, k})
                if (idx < 1 || idx > (long)c.vertex_count)
                    warn("face index out of range");
            if (i == j || j == k || i == k) warn("degenerate face");
        } else if (tag == "o") {
            ++c.object_count;
        } else {
            warn("unknown statement: " + tag);
        }
    }
    return c;
}

} // namespace rectsurf
