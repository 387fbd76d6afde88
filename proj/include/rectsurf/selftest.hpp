#pragma once

// Twelve-point self-check of the whole toolkit: exact identities on the
// combinatorial side, tolerance-bounded checks against independent oracles
// on the numeric side. Each criterion reports one pass/fail line.

#include <numeric>
#include <ostream>
#include <sstream>

#include "rectsurf/fd_laplace.hpp"
#include "rectsurf/framing.hpp"
#include "rectsurf/io.hpp"
#include "rectsurf/mesh.hpp"
#include "rectsurf/moves.hpp"

namespace rectsurf {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelftestReport {
    std::vector<CriterionResult> criteria;

    bool all_passed() const {
        for (auto& c : criteria)
            if (!c.passed) return false;
        return true;
    }
};

namespace selftest_detail {

inline std::pair<long, long> tb_component_sums(const LinkDiagram& d) {
    auto r = tb_report(d);
    long p = std::accumulate(r.tb_plus_component.begin(), r.tb_plus_component.end(), 0L);
    long m = std::accumulate(r.tb_minus_component.begin(), r.tb_minus_component.end(), 0L);
    return {p, m};
}

inline LinkDiagram seeded_diagram(std::uint64_t seed) {
    return random_link_diagram(seed, 2 + (int)(seed % 19));  // 4..40 vertices
}

// 1. tb_plus + tb_minus = -|R|/2 on fixtures and seeded random diagrams.
inline CriterionResult c1() {
    CriterionResult r{1, "tb identity on fixtures and 200 random diagrams"};
    std::vector<LinkDiagram> pool = {minimal_square_diagram(), hopf_pair_diagram(),
                                     trefoil_staircase_diagram()};
    for (std::uint64_t s = 0; s < 200; ++s) pool.push_back(seeded_diagram(s));
    long checked = 0;
    for (auto& d : pool) {
        if (tb_plus(d) + tb_minus(d) != -(long)d.size() / 2) {
            r.detail = "identity failed on a diagram with " +
                       std::to_string(d.size()) + " vertices";
            return r;
        }
        ++checked;
    }
    r.passed = true;
    r.detail = std::to_string(checked) + " diagrams";
    return r;
}

// 2. writhe, tb shifts and lk do not depend on the admissible cut.
inline CriterionResult c2() {
    CriterionResult r{2, "cut invariance of writhe, tb and lk"};
    std::mt19937_64 rng(99);
    long checked = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        LinkDiagram d = seeded_diagram(s * 17 + 1);
        Orientation o = default_orientation(d);
        auto comps = d.components();
        std::vector<int> groups(comps.size(), 1);
        groups[0] = 0;
        ShiftedDiagram up = shift_diagram(d, ShiftDirection::UpRight);
        ShiftedDiagram dn = shift_diagram(d, ShiftDirection::UpLeft);
        std::vector<TorusPoint> uv = d.vertices();
        for (auto& p : up.shifted.vertices()) uv.push_back(p);
        LinkDiagram u1 = LinkDiagram::validate(std::move(uv));
        std::vector<TorusPoint> dv = d.vertices();
        for (auto& p : dn.shifted.vertices()) dv.push_back(p);
        LinkDiagram u2 = LinkDiagram::validate(std::move(dv));

        long w0 = writhe(d, o, default_cut(d));
        long p0 = shifted_linking(d, o, ShiftDirection::UpRight, union_cut(d, up.shifted));
        long m0 = shifted_linking(d, o, ShiftDirection::UpLeft, union_cut(d, dn.shifted));
        long l0 = comps.size() > 1
                      ? linking_number(d, o, groups, default_cut(d))
                      : 0;
        for (int k = 0; k < 5; ++k) {
            if (writhe(d, o, random_cut(d, rng)) != w0 ||
                shifted_linking(d, o, ShiftDirection::UpRight, random_cut(u1, rng)) != p0 ||
                shifted_linking(d, o, ShiftDirection::UpLeft, random_cut(u2, rng)) != m0 ||
                (comps.size() > 1 &&
                 linking_number(d, o, groups, random_cut(d, rng)) != l0)) {
                r.detail = "cut dependence on a diagram with " +
                           std::to_string(d.size()) + " vertices";
                return r;
            }
            ++checked;
        }
    }
    r.passed = true;
    r.detail = std::to_string(checked) + " cuts";
    return r;
}

// 3. Stabilization tb calculus and exact round trip over every site.
inline CriterionResult c3() {
    CriterionResult r{3, "stabilization deltas and round trip at every site"};
    long sites = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        LinkDiagram d = random_link_diagram(s + 1000, 3 + (int)(s % 6));
        auto [p0, m0] = tb_component_sums(d);
        auto sorted0 = d.vertices();
        std::sort(sorted0.begin(), sorted0.end());
        for (std::size_t v = 0; v < d.size(); ++v)
            for (auto& site : stabilization_sites(d, v)) {
                LinkDiagram d2 = stabilize(d, site);
                auto [p1, m1] = tb_component_sums(d2);
                long dp = p1 - p0, dm = m1 - m0;
                bool ok = site.type == StabType::I ? (dp == 0 && dm == -1)
                                                   : (dp == -1 && dm == 0);
                LinkDiagram back =
                    destabilize(d2, DestabilizationSite{site.square, site.corner});
                auto sorted2 = back.vertices();
                std::sort(sorted2.begin(), sorted2.end());
                if (!ok || sorted2 != sorted0) {
                    r.detail = "site failed at vertex " + std::to_string(v);
                    return r;
                }
                ++sites;
            }
    }
    r.passed = true;
    r.detail = std::to_string(sites) + " sites";
    return r;
}

// 4. Exhaustive framing enumeration on every generic diagram with <= 10
// edges: per component the achieved values are exactly the integer interval
// [tb_plus, -tb_minus], and the extremal-vertex count is always even.
inline CriterionResult c4() {
    CriterionResult r{4, "framing range exhaustive on all diagrams up to 10 edges"};
    long diagrams = 0, framings = 0;
    for (int n = 2; n <= 5; ++n) {
        std::vector<int> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0);
        do {
            std::vector<int> tau(n);
            std::iota(tau.begin(), tau.end(), 0);
            do {
                bool disjoint = true;
                for (int i = 0; i < n; ++i) disjoint = disjoint && sigma[i] != tau[i];
                if (!disjoint) continue;
                LinkDiagram d = permutation_diagram(sigma, tau);
                if (!genericity(d).generic()) continue;  // framings undefined
                ++diagrams;
                auto comps = d.components();
                auto range = framing_range(d);
                std::vector<std::set<long>> achieved(comps.size());
                for (auto& f : all_framings(d)) {
                    ++framings;
                    for (std::size_t c = 0; c < comps.size(); ++c) {
                        long nm = n_minus(d, f, comps[c]);
                        if (nm % 2 != 0) {
                            r.detail = "odd extremal count";
                            return r;
                        }
                        achieved[c].insert(range[c].lo + nm / 2);
                    }
                }
                for (std::size_t c = 0; c < comps.size(); ++c) {
                    std::set<long> want;
                    for (long v = range[c].lo; v <= range[c].hi; ++v) want.insert(v);
                    if (achieved[c] != want) {
                        r.detail = "achieved values differ from the interval";
                        return r;
                    }
                }
            } while (std::next_permutation(tau.begin(), tau.end()));
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    r.passed = true;
    r.detail = std::to_string(diagrams) + " diagrams, " + std::to_string(framings) +
               " framings";
    return r;
}

// 5. Boundary admissibility and length bound on random surface diagrams.
inline CriterionResult c5() {
    CriterionResult r{5, "boundary rel-tb nonpositive, sum -|K|/2, length bound"};
    long boundaries = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto gen = random_surface_diagram(s, 1 + (int)(s % 8));
        auto rep = classify(gen.diagram);
        for (auto& b : rep.boundaries) {
            if (!(b.rel_tb_plus <= 0 && b.rel_tb_minus <= 0 &&
                  2 * (b.rel_tb_plus + b.rel_tb_minus) == -b.length)) {
                r.detail = "rel-tb violation, seed " + std::to_string(s);
                return r;
            }
            ++boundaries;
        }
        for (auto& lb : lengthbound_check(gen.diagram))
            if (!lb.ok) {
                r.detail = "length bound violation, seed " + std::to_string(s);
                return r;
            }
    }
    r.passed = true;
    r.detail = std::to_string(boundaries) + " boundary components";
    return r;
}

// 6. Topology fixtures, cross-checked against the Euler characteristic of
// the independently built triangle mesh.
inline CriterionResult c6() {
    CriterionResult r{6, "topology fixtures vs triangulated Euler characteristic"};
    auto mesh_euler = [](const SurfaceDiagram& s) {
        auto m = surface_mesh(s, 0, 12);
        std::set<std::size_t> used;
        std::set<std::pair<std::size_t, std::size_t>> edges;
        long faces = 0;
        for (auto& t : m.tiles)
            for (auto& f : t.faces) {
                ++faces;
                for (int k = 0; k < 3; ++k) {
                    std::size_t a = f[k], b = f[(k + 1) % 3];
                    used.insert(a);
                    edges.insert({std::min(a, b), std::max(a, b)});
                }
            }
        return (long)used.size() - (long)edges.size() + faces;
    };

    auto fail = [&](const std::string& why) {
        r.detail = why;
        return r;
    };

    SurfaceDiagram disc = single_rect_diagram();
    auto rd = classify(disc);
    if (!(rd.euler == 1 && rd.orientable && rd.boundaries.size() == 1 &&
          mesh_euler(disc) == 1))
        return fail("single rectangle is not a disc");

    SurfaceDiagram sphere = sphere_pair_diagram();
    auto rs = classify(sphere);
    if (!(rs.euler == 2 && rs.orientable && rs.boundaries.empty() &&
          rs.components.size() == 1 && rs.components[0].closed &&
          mesh_euler(sphere) == 2))
        return fail("complementary pair is not a sphere");

    SurfaceDiagram ann = make_chain(4);
    auto ra = classify(ann);
    bool ann_tb = ra.boundaries.size() == 2;
    for (auto& b : ra.boundaries)
        ann_tb = ann_tb && b.rel_tb_plus == 0 && b.rel_tb_minus == -2;
    if (!(ra.euler == 0 && ra.orientable && ann_tb &&
          ra.giroux.dividing.size() == 1 && ra.giroux.dividing[0].closed &&
          mesh_euler(ann) == 0))
        return fail("chain of 4 is not the expected annulus");

    SurfaceDiagram mob = make_chain(3);
    auto rm = classify(mob);
    if (!(rm.euler == 0 && !rm.orientable && rm.boundaries.size() == 1 &&
          mesh_euler(mob) == 0))
        return fail("chain of 3 is not a Moebius band");

    r.passed = true;
    r.detail = "disc, sphere, annulus, Moebius band";
    return r;
}

// 7. Dividing set structure on random surface diagrams.
inline CriterionResult c7() {
    CriterionResult r{7, "one dividing edge per rectangle, node degree at most 2"};
    long rects = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto gen = random_surface_diagram(s + 500, 1 + (int)(s % 8));
        const SurfaceDiagram& sd = gen.diagram;
        auto g = giroux_and_dividing(sd);
        std::vector<int> times(sd.size(), 0);
        for (auto& comp : g.dividing)
            for (std::size_t rect : comp.rects) ++times[rect];
        for (int t : times)
            if (t != 1) {
                r.detail = "rectangle not covered exactly once, seed " +
                           std::to_string(s);
                return r;
            }
        for (auto& node : g.dividing_nodes) {
            int deg = 0;
            for (auto& u : sd.corner_map().at(node))
                if (u.kind == CornerKind::BL || u.kind == CornerKind::TR) ++deg;
            if (deg > 2) {
                r.detail = "dividing node of degree > 2";
                return r;
            }
        }
        rects += (long)sd.size();
    }
    r.passed = true;
    r.detail = std::to_string(rects) + " rectangles";
    return r;
}

inline std::vector<Rectangle> aspect_shapes() {
    auto cc = [](std::int64_t n, std::int64_t d) { return CircleCoord(n, d); };
    std::vector<Rectangle> out;
    // aspect ratios 1:4 through 4:1
    out.push_back(Rectangle(Arc(cc(0, 1), cc(1, 5)), Arc(cc(0, 1), cc(4, 5))));
    out.push_back(Rectangle(Arc(cc(0, 1), cc(1, 4)), Arc(cc(0, 1), cc(1, 2))));
    out.push_back(Rectangle(Arc(cc(0, 1), cc(3, 5)), Arc(cc(0, 1), cc(3, 5))));
    out.push_back(Rectangle(Arc(cc(0, 1), cc(1, 2)), Arc(cc(0, 1), cc(1, 4))));
    out.push_back(Rectangle(Arc(cc(0, 1), cc(4, 5)), Arc(cc(0, 1), cc(1, 5))));
    return out;
}

// 8. Harmonic tile numerics against the finite-difference oracle.
// The center value and dual complementarity are symmetry identities; the
// center sits at height 1/2 exactly when the tile is square (the diagonal
// flip swaps the two boundary conditions).
inline CriterionResult c8() {
    CriterionResult r{8, "harmonic tile: center, complementarity, oracle, involution"};
    const Tolerances& tol = Tolerances::get();
    auto cc = [](std::int64_t n, std::int64_t d) { return CircleCoord(n, d); };

    for (auto sq : {Rectangle(Arc(cc(0, 1), cc(3, 5)), Arc(cc(0, 1), cc(3, 5))),
                    Rectangle(Arc(cc(1, 3), cc(5, 6)), Arc(cc(1, 4), cc(3, 4)))}) {
        HarmonicTile t(sq);
        if (std::fabs(t.eval_local(t.a() / 2, t.b() / 2) - 0.5) > tol.center_value) {
            r.detail = "square center off 1/2";
            return r;
        }
    }

    double worst_comp = 0, worst_fd = 0;
    for (auto& shape : aspect_shapes()) {
        HarmonicTile t(shape);
        double a = t.a(), b = t.b();
        for (int i = 1; i < 16; ++i)
            for (int j = 1; j < 16; ++j) {
                double x = a * i / 16, y = b * j / 16;
                double sum = t.series_vertical(x, y) + t.series_horizontal(x, y);
                worst_comp = std::max(worst_comp, std::fabs(sum - 1.0));
            }
        int nfd = 256;
        auto fd = oracle::fd_laplace(a, b, nfd, nfd, 1e-10);
        for (int i = 1; i <= 65; ++i)
            for (int j = 1; j <= 65; ++j) {
                int fi = (int)std::lround((double)i * nfd / 66);
                int fj = (int)std::lround((double)j * nfd / 66);
                double diff =
                    std::fabs(t.eval_local(a * fi / nfd, b * fj / nfd) - fd.at(fi, fj));
                worst_fd = std::max(worst_fd, diff);
            }
    }
    if (worst_comp > tol.complementarity) {
        r.detail = "complementarity defect " + std::to_string(worst_comp);
        return r;
    }
    if (worst_fd > tol.fd_oracle) {
        r.detail = "oracle mismatch " + std::to_string(worst_fd);
        return r;
    }

    double worst_inv = 0;
    for (double kappa : {0.0, 0.5, 1.0})
        for (int i = 1; i < 40; ++i) {
            double x = i / 40.0;
            worst_inv = std::max(worst_inv,
                                 std::fabs(zeta(1 - x, kappa) + zeta(x, kappa) - 1));
            worst_inv = std::max(
                worst_inv, std::fabs(zeta_inverse(zeta(x, kappa), kappa) - x));
        }
    if (worst_inv > tol.involution) {
        r.detail = "involution defect " + std::to_string(worst_inv);
        return r;
    }
    std::ostringstream os;
    os.precision(3);
    os << "oracle diff " << worst_fd << ", complementarity " << worst_comp;
    r.passed = true;
    r.detail = os.str();
    return r;
}

// 9. Corner tangency to the plane fields and crossing height separation.
inline CriterionResult c9() {
    CriterionResult r{9, "corner tangency and crossing height separation"};
    const Tolerances& tol = Tolerances::get();
    auto cc = [](std::int64_t n, std::int64_t d) { return CircleCoord(n, d); };
    double worst = 0;
    for (auto shape : {Rectangle(Arc(cc(0, 1), cc(2, 5)), Arc(cc(0, 1), cc(3, 10))),
                       Rectangle(Arc(cc(0, 1), cc(1, 3)), Arc(cc(1, 2), cc(5, 6)))}) {
        HarmonicTile t(shape);
        for (double kappa : {0.0, 0.5}) {
            auto rep = tangency_check(t, kappa);
            if (rep.failures > 0 || rep.max_defect > tol.tangency) {
                r.detail = "tangency defect " + std::to_string(rep.max_defect);
                return r;
            }
            worst = std::max(worst, rep.max_defect);
        }
    }
    Rectangle r1(Arc(cc(2, 10), cc(4, 10)), Arc(cc(1, 10), cc(9, 10)));
    Rectangle r2(Arc(cc(0, 10), cc(6, 10)), Arc(cc(3, 10), cc(6, 10)));
    double gap = 1;
    for (double kappa : {0.0, 0.5}) {
        double g = crossing_height_gap(r1, r2, 40, kappa);
        if (!(g > 0)) {
            r.detail = "crossing tiles touch";
            return r;
        }
        gap = std::min(gap, g);
    }
    std::ostringstream os;
    os.precision(3);
    os << "max defect " << worst << " rad, min crossing gap " << gap;
    r.passed = true;
    r.detail = os.str();
    return r;
}

// 10. Contact line field: transversality, flow invariance, boundary match.
inline CriterionResult c10() {
    CriterionResult r{10, "contact line field transverse and contact-preserving"};
    const Tolerances& tol = Tolerances::get();
    auto cc = [](std::int64_t n, std::int64_t d) { return CircleCoord(n, d); };
    Rectangle shape(Arc(cc(0, 1), cc(2, 5)), Arc(cc(1, 2), cc(4, 5)));
    HarmonicTile t(shape);
    auto rep = contact_field_check(t, ContactProfile{}, 33);
    if (rep.transversality_samples < 1000) {
        r.detail = "too few samples";
        return r;
    }
    if (rep.transversality_failures != 0) {
        r.detail = std::to_string(rep.transversality_failures) +
                   " transversality failures";
        return r;
    }
    if (rep.max_lie_residual > tol.contact_residual) {
        r.detail = "flow residual " + std::to_string(rep.max_lie_residual);
        return r;
    }
    if (rep.max_boundary_defect_tau0 > tol.boundary_parallel ||
        rep.max_boundary_defect_tau1 > tol.boundary_parallel) {
        r.detail = "boundary restriction not parallel to the binding direction";
        return r;
    }
    std::ostringstream os;
    os.precision(3);
    os << rep.transversality_samples << " samples, flow residual "
       << rep.max_lie_residual;
    r.passed = true;
    r.detail = os.str();
    return r;
}

// 11. Foliation slopes: negative everywhere sampled, -1 at a square center.
inline CriterionResult c11() {
    CriterionResult r{11, "foliation slopes negative, square center slope -1"};
    const Tolerances& tol = Tolerances::get();
    auto cc = [](std::int64_t n, std::int64_t d) { return CircleCoord(n, d); };
    Rectangle sq(Arc(cc(0, 1), cc(2, 5)), Arc(cc(1, 2), cc(9, 10)));
    HarmonicTile tsq(sq);
    double center = foliation_slope(tsq, 0, tsq.a() / 2, tsq.b() / 2);
    if (std::fabs(center + 1.0) > tol.center_slope) {
        r.detail = "square center slope " + std::to_string(center);
        return r;
    }
    long samples = 0;
    for (auto& shape : aspect_shapes()) {
        HarmonicTile t(shape);
        for (double kappa : {0.0, 0.5})
            for (int k = 1; k <= 5; ++k) {
                auto sl = foliation_streamline(t, kappa, t.a() * k / 6,
                                               t.b() * (6 - k) / 6, 2e-3, 2e-3, 4000);
                for (double slope : sl.slopes) {
                    if (!(slope < 0)) {
                        r.detail = "nonnegative streamline slope";
                        return r;
                    }
                    ++samples;
                }
            }
    }
    r.passed = true;
    r.detail = std::to_string(samples) + " slope samples";
    return r;
}

// 12. Mesh integrity and OBJ export on the topology fixtures.
inline CriterionResult c12() {
    CriterionResult r{12, "mesh unit norms, shared arcs bit-exact, OBJ validates"};
    const Tolerances& tol = Tolerances::get();
    auto cc = [](std::int64_t n, std::int64_t d) { return CircleCoord(n, d); };
    std::vector<SurfaceDiagram> fixtures = {single_rect_diagram(),
                                            sphere_pair_diagram(), make_chain(4),
                                            make_chain(3)};
    for (auto& s : fixtures) {
        auto m = surface_mesh(s, 0, 12);
        for (auto& v : m.vertices)
            if (std::fabs(norm(v) - 1.0) > tol.unit_norm) {
                r.detail = "vertex off the unit sphere";
                return r;
            }
        auto check = validate_obj(obj_document(m));
        if (!check.ok() || check.object_count != s.size()) {
            r.detail = check.warnings.empty() ? "object count mismatch"
                                              : check.warnings.front();
            return r;
        }
    }
    auto pair = SurfaceDiagram::validate(
        {Rectangle(Arc(cc(0, 1), cc(1, 3)), Arc(cc(0, 1), cc(1, 3))),
         Rectangle(Arc(cc(1, 3), cc(2, 3)), Arc(cc(1, 3), cc(2, 3)))});
    auto m = surface_mesh(pair, 0.25, 16);
    if (m.tiles[0].corner_arcs[corner_arc_slot(CornerKind::TR)] !=
        m.tiles[1].corner_arcs[corner_arc_slot(CornerKind::BL)]) {
        r.detail = "shared corner arc differs between tiles";
        return r;
    }
    r.passed = true;
    r.detail = "4 fixtures, shared arcs identical";
    return r;
}

} // namespace selftest_detail

inline SelftestReport run_selftest() {
    using namespace selftest_detail;
    SelftestReport rep;
    rep.criteria = {c1(), c2(), c3(), c4(), c5(), c6(),
                    c7(), c8(), c9(), c10(), c11(), c12()};
    return rep;
}

inline int print_selftest(const SelftestReport& rep, std::ostream& os) {
    for (auto& c : rep.criteria)
        os << (c.passed ? "PASS" : "FAIL") << " " << (c.number < 10 ? " " : "")
           << c.number << "  " << c.name << (c.detail.empty() ? "" : " [")
           << c.detail << (c.detail.empty() ? "" : "]") << "\n";
    os << (rep.all_passed() ? "selftest: all criteria passed"
                            : "selftest: FAILURES present")
       << "\n";
    return rep.all_passed() ? 0 : 1;
}

} // namespace rectsurf
