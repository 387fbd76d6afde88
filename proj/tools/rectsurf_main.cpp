// rectsurf: command line front end for rectangular diagrams of links and
// surfaces on the torus. Reads JSON payloads ("-" for stdin), writes text or
// JSON reports. Exit codes: 0 success, 1 invalid input, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rectsurf/selftest.hpp"
#include "rectsurf/svg.hpp"

using namespace rectsurf;

namespace {

json load_json(const std::string& path) {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return json::parse(in);
}

LinkDiagram load_link(const std::string& path) {
    json j = load_json(path);
    if (is_surface_json(j))
        throw validation_error("expected a link diagram, got a surface diagram");
    return link_from_json(j);
}

SurfaceDiagram load_surface(const std::string& path) {
    json j = load_json(path);
    if (!is_surface_json(j))
        throw validation_error("expected a surface diagram, got a link diagram");
    return surface_from_json(j);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

CornerKind parse_corner(const std::string& s) {
    if (s == "BL") return CornerKind::BL;
    if (s == "BR") return CornerKind::BR;
    if (s == "TL") return CornerKind::TL;
    if (s == "TR") return CornerKind::TR;
    throw std::invalid_argument("corner must be BL, BR, TL or TR");
}

json classify_json(const SurfaceReport& rep) {
    json out;
    out["euler"] = rep.euler;
    out["orientable"] = rep.orientable;
    out["components"] = json::array();
    for (auto& c : rep.components) {
        json jc{{"rectangles", c.rects},
                {"euler", c.euler},
                {"orientable", c.orientable},
                {"closed", c.closed},
                {"boundary_components", c.boundary_count}};
        if (c.orientable) jc["genus"] = c.genus;
        else jc["crosscaps"] = c.crosscaps;
        out["components"].push_back(std::move(jc));
    }
    out["boundaries"] = json::array();
    for (auto& b : rep.boundaries)
        out["boundaries"].push_back(json{{"length", b.length},
                                         {"rel_tb_plus", b.rel_tb_plus},
                                         {"rel_tb_minus", b.rel_tb_minus},
                                         {"length_slack", b.length_slack},
                                         {"surface_component", b.surface_component}});
    return out;
}

json giroux_json(const GirouxReport& g) {
    json out;
    out["giroux_edges"] = json::array();
    for (auto& p : g.giroux_edges) out["giroux_edges"].push_back(to_json(p));
    out["dividing_nodes"] = json::array();
    for (auto& p : g.dividing_nodes) out["dividing_nodes"].push_back(to_json(p));
    out["dividing_components"] = json::array();
    for (auto& c : g.dividing)
        out["dividing_components"].push_back(
            json{{"closed", c.closed}, {"rectangles", c.rects}});
    return out;
}

void emit(const json& j, bool as_json, const std::string& text) {
    if (as_json) std::cout << j.dump(2) << "\n";
    else std::cout << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for rectangular diagrams of links and surfaces"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable JSON on stdout");

    std::string in_path = "-", out_path, target_path, out_dir = "fixtures";
    std::size_t vertex = 0, destab_index = 0;
    std::string corner_str = "BL", line_a, line_b, layers_str = "rectangles";
    bool longitudes = false;
    double kappa = 0, pole_phi = -1, max_seconds = 10;
    int res = 48;
    std::size_t max_nodes = 10000;
    std::vector<long> surface_lk;
    std::vector<std::size_t> greater;

    auto add_input = [&](CLI::App* cmd) {
        cmd->fallthrough();  // lets --json appear after the subcommand
        cmd->add_option("input", in_path, "input JSON file, - for stdin");
    };

    auto* c_validate = app.add_subcommand("validate", "check a diagram file");
    add_input(c_validate);
    auto* c_boundary =
        app.add_subcommand("boundary", "boundary link of a surface diagram");
    add_input(c_boundary);
    auto* c_tb = app.add_subcommand("tb", "Thurston-Bennequin numbers of a link");
    add_input(c_tb);
    auto* c_fv = app.add_subcommand("framing-value", "value of an edge framing");
    add_input(c_fv);
    c_fv->add_option("--greater", greater,
                     "per edge, the vertex index taken as the greater endpoint")
        ->required();
    auto* c_rep = app.add_subcommand("check-representable",
                                     "is the framed link a surface boundary");
    add_input(c_rep);
    c_rep->add_option("--lk", surface_lk,
                      "per component, the push-off linking number")
        ->required();
    auto* c_classify =
        app.add_subcommand("classify", "topological type of a surface diagram");
    add_input(c_classify);
    auto* c_giroux =
        app.add_subcommand("giroux", "Giroux graph and dividing set");
    add_input(c_giroux);
    auto* c_stab = app.add_subcommand("stabilize", "stabilize at a vertex");
    add_input(c_stab);
    c_stab->add_option("--vertex", vertex, "vertex index")->required();
    c_stab->add_option("--corner", corner_str, "corner taken by the old vertex");
    auto* c_destab = app.add_subcommand("destabilize", "undo a stabilization");
    add_input(c_destab);
    c_destab->add_option("--index", destab_index, "candidate index (default 0)");
    auto* c_ex = app.add_subcommand("exchange", "swap two adjacent occupied lines");
    add_input(c_ex);
    c_ex->add_option("--line-a", line_a, "first line, exact rational")->required();
    c_ex->add_option("--line-b", line_b, "second line, exact rational")->required();
    c_ex->add_flag("--longitudes", longitudes, "swap longitudes instead of meridians");
    auto* c_explore =
        app.add_subcommand("explore", "search the exchange class of a diagram");
    add_input(c_explore);
    c_explore->add_option("--max-nodes", max_nodes, "node budget");
    c_explore->add_option("--max-seconds", max_seconds, "time budget");
    c_explore->add_option("--target", target_path, "stop when this diagram is reached");
    auto* c_mesh = app.add_subcommand("mesh", "triangulated surface as OBJ");
    add_input(c_mesh);
    c_mesh->add_option("--kappa", kappa, "corner sharpening exponent (>= 0)");
    c_mesh->add_option("--res", res, "grid resolution per tile (>= 8)");
    c_mesh->add_option("--out", out_path, "output OBJ file")->required();
    c_mesh->add_option("--pole-phi", pole_phi,
                       "projection pole position on the binding circle, in turns");
    auto* c_plot = app.add_subcommand("plot", "SVG picture of a surface diagram");
    add_input(c_plot);
    c_plot->add_option("--layers", layers_str,
                       "comma list: rectangles,free,framing,giroux,dividing,"
                       "streamlines");
    c_plot->add_option("--out", out_path, "output SVG file")->required();
    auto* c_fix = app.add_subcommand("fixtures", "write the bundled fixture files");
    c_fix->fallthrough();
    c_fix->add_option("--out-dir", out_dir, "target directory");
    auto* c_self = app.add_subcommand("selftest", "run the acceptance checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_validate->parsed()) {
            json j = load_json(in_path);
            if (is_surface_json(j)) {
                SurfaceDiagram s = surface_from_json(j);
                emit(json{{"valid", true},
                          {"kind", "surface"},
                          {"rectangles", s.size()},
                          {"free_vertices", s.free_vertices().size()}},
                     as_json,
                     "valid surface diagram: " + std::to_string(s.size()) +
                         " rectangles, " + std::to_string(s.free_vertices().size()) +
                         " free vertices\n");
            } else {
                LinkDiagram d = link_from_json(j);
                emit(json{{"valid", true},
                          {"kind", "link"},
                          {"vertices", d.size()},
                          {"components", d.components().size()}},
                     as_json,
                     "valid link diagram: " + std::to_string(d.size()) +
                         " vertices, " + std::to_string(d.components().size()) +
                         " components\n");
            }
        } else if (c_boundary->parsed()) {
            LinkDiagram b = boundary(load_surface(in_path));
            emit(to_json(b), true, "");
        } else if (c_tb->parsed()) {
            LinkDiagram d = load_link(in_path);
            auto rep = tb_report(d);
            json comps = json::array();
            std::ostringstream text;
            for (std::size_t i = 0; i < rep.tb_plus_component.size(); ++i) {
                comps.push_back(json{{"tb_plus", rep.tb_plus_component[i]},
                                     {"tb_minus", rep.tb_minus_component[i]}});
                text << "component " << i << ": tb+ = " << rep.tb_plus_component[i]
                     << ", tb- = " << rep.tb_minus_component[i] << "\n";
            }
            emit(json{{"tb_plus_total", rep.tb_plus_total},
                      {"tb_minus_total", rep.tb_minus_total},
                      {"components", std::move(comps)}},
                 as_json, text.str());
        } else if (c_fv->parsed()) {
            LinkDiagram d = load_link(in_path);
            Framing f{greater};
            auto v = framing_value(d, f);
            json comps = v.per_component;
            std::ostringstream text;
            for (std::size_t i = 0; i < v.per_component.size(); ++i)
                text << "component " << i << ": " << v.per_component[i] << "\n";
            text << "total: " << v.total << "\n";
            emit(json{{"per_component", comps}, {"total", v.total}}, as_json,
                 text.str());
        } else if (c_rep->parsed()) {
            LinkDiagram d = load_link(in_path);
            auto v = representability_check(d, surface_lk);
            json comps = json::array();
            std::ostringstream text;
            for (std::size_t i = 0; i < v.relative.size(); ++i) {
                comps.push_back(json{{"rel_tb_plus", v.relative[i].tb_plus},
                                     {"rel_tb_minus", v.relative[i].tb_minus},
                                     {"ok", (bool)v.component_passes[i]}});
                text << "component " << i << ": rel tb+ = " << v.relative[i].tb_plus
                     << ", rel tb- = " << v.relative[i].tb_minus
                     << (v.component_passes[i] ? " (ok)" : " (fails)") << "\n";
            }
            text << (v.overall ? "representable\n" : "not representable\n");
            emit(json{{"representable", v.overall}, {"components", std::move(comps)}},
                 as_json, text.str());
        } else if (c_classify->parsed()) {
            auto rep = classify(load_surface(in_path));
            std::ostringstream text;
            text << "euler " << rep.euler << ", "
                 << (rep.orientable ? "orientable" : "non-orientable") << ", "
                 << rep.components.size() << " component(s), " << rep.boundaries.size()
                 << " boundary component(s)\n";
            emit(classify_json(rep), as_json, text.str());
        } else if (c_giroux->parsed()) {
            auto g = giroux_and_dividing(load_surface(in_path));
            std::ostringstream text;
            text << g.giroux_edges.size() << " Giroux edge(s), " << g.dividing.size()
                 << " dividing component(s)\n";
            emit(giroux_json(g), as_json, text.str());
        } else if (c_stab->parsed()) {
            LinkDiagram d = load_link(in_path);
            auto site = make_stabilization_site(d, vertex, parse_corner(corner_str));
            emit(to_json(stabilize(d, site)), true, "");
        } else if (c_destab->parsed()) {
            LinkDiagram d = load_link(in_path);
            auto sites = destabilization_candidates(d);
            if (sites.empty()) throw validation_error("no destabilization available");
            if (destab_index >= sites.size())
                throw validation_error("candidate index out of range (have " +
                                       std::to_string(sites.size()) + ")");
            emit(to_json(destabilize(d, sites[destab_index])), true, "");
        } else if (c_ex->parsed()) {
            LinkDiagram d = load_link(in_path);
            ExchangeSite site{!longitudes, CircleCoord(Rational::parse(line_a)),
                              CircleCoord(Rational::parse(line_b))};
            emit(to_json(apply_exchange(d, site)), true, "");
        } else if (c_explore->parsed()) {
            LinkDiagram d = load_link(in_path);
            std::optional<LinkDiagram> target;
            if (!target_path.empty()) target = load_link(target_path);
            ExploreLimits lim{max_nodes, max_seconds};
            auto res2 = explore_exchange_class(d, lim, target ? &*target : nullptr);
            std::ostringstream text;
            text << "visited " << res2.visited << " class(es), "
                 << (res2.complete ? "complete" : "budget exhausted");
            if (res2.rigid) text << ", rigid";
            if (target)
                text << ", target " << (res2.target_found ? "found" : "not found");
            text << "\n";
            emit(json{{"visited", res2.visited},
                      {"complete", res2.complete},
                      {"rigid", res2.rigid},
                      {"target_found", res2.target_found}},
                 as_json, text.str());
            if (target && !res2.target_found) return 1;
        } else if (c_mesh->parsed()) {
            SurfaceDiagram s = load_surface(in_path);
            std::optional<Vec4> pole;
            if (pole_phi >= 0) pole = embed_r4(0, pole_phi, 0);
            auto m = surface_mesh(s, kappa, res, pole);
            write_text(out_path, obj_document(m));
            std::ostringstream text;
            text << "wrote " << out_path << ": " << m.vertices.size()
                 << " vertices, " << m.tiles.size() << " tile(s)\n";
            emit(json{{"out", out_path},
                      {"vertices", m.vertices.size()},
                      {"tiles", m.tiles.size()}},
                 as_json, text.str());
        } else if (c_plot->parsed()) {
            SurfaceDiagram s = load_surface(in_path);
            PlotLayers layers{};
            layers.rectangles = false;
            std::stringstream ls(layers_str);
            std::string tok;
            while (std::getline(ls, tok, ',')) {
                if (tok == "rectangles" || tok == "rect") layers.rectangles = true;
                else if (tok == "free") layers.free_vertices = true;
                else if (tok == "framing") layers.framing = true;
                else if (tok == "giroux") layers.giroux = true;
                else if (tok == "dividing") layers.dividing = true;
                else if (tok == "streamlines") layers.streamlines = true;
                else throw std::invalid_argument("unknown layer: " + tok);
            }
            write_text(out_path, torus_projection_svg(s, layers));
            emit(json{{"out", out_path}}, as_json, "wrote " + out_path + "\n");
        } else if (c_fix->parsed()) {
            std::filesystem::create_directories(out_dir);
            json names = json::array();
            std::ostringstream text;
            for (auto& e : fixture_library()) {
                std::string path = out_dir + "/" + e.name + ".json";
                write_text(path, e.payload.dump(2) + "\n");
                names.push_back(path);
                text << path << "\n";
            }
            emit(json{{"written", std::move(names)}}, as_json, text.str());
        } else if (c_self->parsed()) {
            return print_selftest(run_selftest(), std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
