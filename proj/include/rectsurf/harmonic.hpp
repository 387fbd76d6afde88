#pragma once

#include <cmath>
#include <stdexcept>

#include "rectsurf/surface_diagram.hpp"
#include "rectsurf/tolerances.hpp"

namespace rectsurf {

/// The bounded harmonic function on the open rectangle with boundary limits
/// 0 on the horizontal sides and 1 on the vertical ones. Evaluated by the
/// separated-variables series in whichever direction converges fast; the two
/// series sum to 1, so the slow one is never needed directly.
class HarmonicTile {
public:
    explicit HarmonicTile(const Rectangle& r,
                          double term_tol = Tolerances::get().series_term)
        : rect_(r),
          a_(r.theta_span.length().to_double()),
          b_(r.phi_span.length().to_double()),
          x0_(r.theta_span.start.turns()),
          y0_(r.phi_span.start.turns()),
          term_tol_(term_tol) {}

    const Rectangle& rect() const { return rect_; }
    double a() const { return a_; }
    double b() const { return b_; }

    /// Value at local coordinates (x, y) in (0, a) x (0, b).
    double eval_local(double x, double y) const {
        if (!(x > 0 && x < a_ && y > 0 && y < b_))
            throw std::domain_error(
                "h is defined on the open rectangle only; boundary limits are "
                "0 (horizontal sides) and 1 (vertical sides)");
        // Convergence rates: distance to the sides the series decays from.
        double rv = std::min(x, a_ - x) / b_;
        double rh = std::min(y, b_ - y) / a_;
        if (rv >= rh) return series_vertical(x, y);
        return 1.0 - series_horizontal(x, y);
    }

    /// Value at an exact torus point strictly inside the rectangle.
    double eval(const TorusPoint& p) const {
        double x = p.theta.cyclic_minus(rect_.theta_span.start).to_double();
        double y = p.phi.cyclic_minus(rect_.phi_span.start).to_double();
        return eval_local(x, y);
    }

    /// Value at absolute turn coordinates (reduced into the rectangle).
    double eval_turns(double theta, double phi) const {
        double x = theta - x0_, y = phi - y0_;
        x -= std::floor(x);
        y -= std::floor(y);
        return eval_local(x, y);
    }

    /// Series with Dirichlet data 1 on the vertical sides:
    ///   sum over odd n of (4/(n pi)) sin(n pi y / b) cosh(n pi (x-a/2)/b) / cosh(n pi a/(2b)).
    double series_vertical(double x, double y) const {
        return square_series(y / b_, (x - a_ / 2) / b_, a_ / (2 * b_),
                             std::min(x, a_ - x) / b_);
    }

    /// Same series with the roles of the coordinates exchanged.
    double series_horizontal(double x, double y) const {
        return square_series(x / a_, (y - b_ / 2) / a_, b_ / (2 * a_),
                             std::min(y, b_ - y) / a_);
    }

private:
    // sum over odd n of (4/(n pi)) sin(n pi s) cosh(n pi u) / cosh(n pi U),
    // with |u| <= U and decay rate exp(-n pi d), d = U - |u|.
    double square_series(double s, double u, double U, double d) const {
        double sum = 0;
        const double pi = std::acos(-1.0);
        for (long n = 1;; n += 2) {
            double bound = 8.0 / (n * pi) * std::exp(-n * pi * d);
            if (bound < term_tol_) break;
            if (n > 4000000)
                throw std::runtime_error(
                    "harmonic series did not truncate; point too close to a corner");
            sum += 4.0 / (n * pi) * std::sin(n * pi * s) * cosh_ratio(n * pi * u, n * pi * U);
        }
        return sum;
    }

    // cosh(u)/cosh(U) for |u| <= U without overflow.
    static double cosh_ratio(double u, double U) {
        double au = std::fabs(u);
        return (std::exp(au - U) + std::exp(-au - U)) / (1.0 + std::exp(-2.0 * U));
    }

    Rectangle rect_;
    double a_, b_, x0_, y0_;
    double term_tol_;
};

} // namespace rectsurf
