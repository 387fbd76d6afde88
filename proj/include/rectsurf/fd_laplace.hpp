#pragma once

// Independent finite-difference oracle for the rectangle Dirichlet problem:
// second-order 5-point scheme, red-black SOR with the model-problem optimal
// relaxation factor, iterated until the diagonally scaled residual is below
// the requested bound. Used only to cross-check the series solution; the
// geometry code never calls it.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rectsurf::oracle {

struct FdSolution {
    int nx = 0, ny = 0;     // interior nodes per axis are nx-1, ny-1
    double a = 0, b = 0;
    std::vector<double> u;  // (nx+1) x (ny+1), row-major in i

    double at(int i, int j) const { return u[i * (ny + 1) + j]; }
};

/// Sum of the four corner angle functions: each is harmonic, equals 1 on
/// its own vertical side and 0 on its own horizontal side, and carries the
/// full boundary discontinuity of the target function at its corner.
/// Subtracting it leaves a problem with continuous boundary data, which the
/// second-order scheme handles at full accuracy.
inline double corner_angles(double a, double b, double x, double y) {
    const double pi = std::acos(-1.0);
    return (std::atan2(y, x) + std::atan2(y, a - x) + std::atan2(b - y, x) +
            std::atan2(b - y, a - x)) *
           (2 / pi);
}

/// Solve Laplace u = 0 on [0,a] x [0,b], u = 1 on the vertical sides,
/// u = 0 on the horizontal ones (corner singularities split off analytically).
inline FdSolution fd_laplace(double a, double b, int nx, int ny,
                             double residual_bound = 1e-10,
                             int max_sweeps = 200000) {
    FdSolution s;
    s.nx = nx;
    s.ny = ny;
    s.a = a;
    s.b = b;
    s.u.assign((nx + 1) * (ny + 1), 0.0);
    auto U = [&](int i, int j) -> double& { return s.u[i * (ny + 1) + j]; };
    auto X = [&](int i) { return a * i / nx; };
    auto Y = [&](int j) { return b * j / ny; };
    for (int j = 1; j < ny; ++j) {
        U(0, j) = 1 - corner_angles(a, b, 0, Y(j));
        U(nx, j) = 1 - corner_angles(a, b, a, Y(j));
    }
    for (int i = 1; i < nx; ++i) {
        U(i, 0) = 0 - corner_angles(a, b, X(i), 0);
        U(i, ny) = 0 - corner_angles(a, b, X(i), b);
    }
    // the continuous limit at the corners
    U(0, 0) = U(nx, 0) = -1 - (2 / std::acos(-1.0)) * std::atan2(b, a);
    U(0, ny) = U(nx, ny) = U(0, 0);

    double hx = a / nx, hy = b / ny;
    double cx = 1.0 / (hx * hx), cy = 1.0 / (hy * hy);
    double den = 2 * (cx + cy);
    const double pi = std::acos(-1.0);
    double rho = (cx * std::cos(pi / nx) + cy * std::cos(pi / ny)) / (cx + cy);
    double omega = 2.0 / (1.0 + std::sqrt(1.0 - rho * rho));

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (int color = 0; color < 2; ++color)
            for (int i = 1; i < nx; ++i)
                for (int j = 1 + ((i + color) & 1); j < ny; j += 2) {
                    double gs = (cx * (U(i - 1, j) + U(i + 1, j)) +
                                 cy * (U(i, j - 1) + U(i, j + 1))) /
                                den;
                    U(i, j) += omega * (gs - U(i, j));
                }
        if (sweep % 16 == 15) {
            double res = 0;
            for (int i = 1; i < nx; ++i)
                for (int j = 1; j < ny; ++j) {
                    double gs = (cx * (U(i - 1, j) + U(i + 1, j)) +
                                 cy * (U(i, j - 1) + U(i, j + 1))) /
                                den;
                    res = std::max(res, std::fabs(gs - U(i, j)));
                }
            if (res < residual_bound) {
                for (int i = 0; i <= nx; ++i)
                    for (int j = 0; j <= ny; ++j)
                        U(i, j) += corner_angles(a, b, X(i), Y(j));
                return s;
            }
        }
    }
    throw std::runtime_error("fd_laplace: SOR did not reach the residual bound");
}

} // namespace rectsurf::oracle
