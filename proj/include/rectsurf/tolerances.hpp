#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rectsurf {

/// Every numeric threshold used by the floating-point module, in one place.
/// The environment variable RECTSURF_TOLERANCES may point to a file of
/// "name value" lines overriding individual entries.
struct Tolerances {
    double unit_norm = 1e-12;         // |r4| - 1 for embedded points
    double involution = 1e-12;        // zeta(x) + zeta(1-x) - 1
    double center_value = 1e-9;       // h(center) - 1/2
    double complementarity = 1e-9;    // S_vert + S_horiz - 1
    double fd_oracle = 1e-4;          // series vs finite-difference solve
    double harmonicity = 1e-8;        // 5-point Laplacian residual
    double tangency = 1e-2;           // principal angle vs the boundary plane fields
    double contact_residual = 1e-3;   // Lie-derivative defect of the line field
    double boundary_parallel = 1e-6;  // line field vs binding circle directions
    double center_slope = 1e-6;       // streamline slope at the tile center vs -1
    double pole_clearance = 1e-6;     // stereographic pole distance to the surface
    double fan_gap = 1e-3;            // corner fan vs grid row mismatch, R^4 norm
    double series_term = 1e-14;       // series truncation: absolute term bound

    struct Entry {
        const char* name;
        double Tolerances::*field;
    };

    static const std::vector<Entry>& entries() {
        static const std::vector<Entry> e = {
            {"unit_norm", &Tolerances::unit_norm},
            {"involution", &Tolerances::involution},
            {"center_value", &Tolerances::center_value},
            {"complementarity", &Tolerances::complementarity},
            {"fd_oracle", &Tolerances::fd_oracle},
            {"harmonicity", &Tolerances::harmonicity},
            {"tangency", &Tolerances::tangency},
            {"contact_residual", &Tolerances::contact_residual},
            {"boundary_parallel", &Tolerances::boundary_parallel},
            {"center_slope", &Tolerances::center_slope},
            {"pole_clearance", &Tolerances::pole_clearance},
            {"fan_gap", &Tolerances::fan_gap},
            {"series_term", &Tolerances::series_term},
        };
        return e;
    }

    void apply_override_file(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot read tolerance override file: " + path);
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string name;
            if (!(ls >> name) || name[0] == '#') continue;
            double value;
            if (!(ls >> value))
                throw std::runtime_error("bad tolerance line: " + line);
            bool found = false;
            for (auto& e : entries())
                if (name == e.name) {
                    this->*(e.field) = value;
                    found = true;
                }
            if (!found) throw std::runtime_error("unknown tolerance name: " + name);
        }
    }

    static Tolerances load() {
        Tolerances t;
        if (const char* path = std::getenv("RECTSURF_TOLERANCES"))
            t.apply_override_file(path);
        return t;
    }

    /// Process-wide table, read once.
    static const Tolerances& get() {
        static const Tolerances t = load();
        return t;
    }

    std::string table() const {
        std::ostringstream out;
        for (auto& e : entries()) out << e.name << " " << this->*(e.field) << "\n";
        return out.str();
    }
};

} // namespace rectsurf
