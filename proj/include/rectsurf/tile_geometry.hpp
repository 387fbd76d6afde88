#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "rectsurf/harmonic.hpp"

namespace rectsurf {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTau = 2 * kPi;

struct Vec3 {
    double x = 0, y = 0, z = 0;
};

struct Vec4 {
    std::array<double, 4> v{0, 0, 0, 0};

    double& operator[](int i) { return v[i]; }
    double operator[](int i) const { return v[i]; }

    friend Vec4 operator-(const Vec4& a, const Vec4& b) {
        return {{a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}};
    }
    friend Vec4 operator+(const Vec4& a, const Vec4& b) {
        return {{a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}};
    }
    friend Vec4 operator*(double s, const Vec4& a) {
        return {{s * a[0], s * a[1], s * a[2], s * a[3]}};
    }
    friend bool operator==(const Vec4& a, const Vec4& b) { return a.v == b.v; }
    friend bool operator<(const Vec4& a, const Vec4& b) { return a.v < b.v; }
};

inline double dot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
inline double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }

/// The height reparametrization: x -> (2/pi) atan(tan(pi x/2)^(1/(2+kappa))).
/// Monotone [0,1] -> [0,1], fixes 0, 1/2 and 1, and zeta(1-x) = 1 - zeta(x);
/// its derivative is infinite at the endpoints, which is what makes the tile
/// meet the binding circles orthogonally.
inline double zeta(double x, double kappa = 0) {
    if (!(x >= 0 && x <= 1)) throw std::domain_error("zeta needs x in [0,1]");
    if (kappa < 0) throw std::domain_error("zeta needs kappa >= 0");
    if (x == 0 || x == 1 || x == 0.5) return x;
    if (x > 0.5) return 1.0 - zeta(1.0 - x, kappa);
    return (2 / kPi) * std::atan(std::pow(std::tan(kPi * x / 2), 1.0 / (2.0 + kappa)));
}

/// Inverse of zeta with the same kappa (exponent 2+kappa).
inline double zeta_inverse(double y, double kappa = 0) {
    if (!(y >= 0 && y <= 1)) throw std::domain_error("zeta_inverse needs y in [0,1]");
    if (y == 0 || y == 1 || y == 0.5) return y;
    if (y > 0.5) return 1.0 - zeta_inverse(1.0 - y, kappa);
    return (2 / kPi) * std::atan(std::pow(std::tan(kPi * y / 2), 2.0 + kappa));
}

/// Reparametrized height of the tile surface over an interior point.
inline double tile_height(const HarmonicTile& t, double x, double y, double kappa = 0) {
    return zeta(t.eval_local(x, y), kappa);
}

/// Join coordinates (theta, phi in turns, tau in [0,1]) to the unit sphere:
/// (cos(pi tau/2) cos Phi, cos(pi tau/2) sin Phi, sin(pi tau/2) cos Theta,
///  sin(pi tau/2) sin Theta) with Theta = 2 pi theta, Phi = 2 pi phi.
/// tau = 0 and tau = 1 are handled exactly so that collapsed coordinates
/// produce bit-identical points.
inline Vec4 embed_r4(double theta_turns, double phi_turns, double tau) {
    if (!(tau >= 0 && tau <= 1)) throw std::domain_error("embed needs tau in [0,1]");
    double c, s;
    if (tau == 0) {
        c = 1;
        s = 0;
    } else if (tau == 1) {
        c = 0;
        s = 1;
    } else {
        c = std::cos(kPi * tau / 2);
        s = std::sin(kPi * tau / 2);
    }
    double Th = kTau * theta_turns, Ph = kTau * phi_turns;
    return {{c * std::cos(Ph), c * std::sin(Ph), s * std::cos(Th), s * std::sin(Th)}};
}

struct EmbeddedPoint {
    double theta = 0, phi = 0, tau = 0; // turns, turns, [0,1]
    Vec4 r4;
};

inline EmbeddedPoint embed(double theta_turns, double phi_turns, double tau) {
    return {theta_turns, phi_turns, tau, embed_r4(theta_turns, phi_turns, tau)};
}

/// Stereographic projection of q from the given unit pole, expressed in a
/// deterministic orthonormal basis of the pole's orthogonal complement.
inline Vec3 stereographic(const Vec4& q, const Vec4& pole) {
    double den = 1.0 - dot(q, pole);
    if (den < 1e-12)
        throw std::domain_error("stereographic projection undefined at the pole");
    // drop the axis most aligned with the pole, orthonormalize the rest
    int drop = 0;
    for (int i = 1; i < 4; ++i)
        if (std::fabs(pole[i]) > std::fabs(pole[drop])) drop = i;
    std::array<Vec4, 3> basis;
    int k = 0;
    for (int i = 0; i < 4; ++i) {
        if (i == drop) continue;
        Vec4 e;
        e[i] = 1;
        e = e - (dot(e, pole) * pole);
        for (int j = 0; j < k; ++j) e = e - (dot(e, basis[j]) * basis[j]);
        basis[k] = (1.0 / norm(e)) * e;
        ++k;
    }
    Vec4 w = (1.0 / den) * (q - (dot(q, pole) * pole));
    return {dot(w, basis[0]), dot(w, basis[1]), dot(w, basis[2])};
}

enum class PlaneField { Minus, Plus };

/// Which of the two boundary plane fields a given side is tangent to:
/// the extremal sides (BL, TR) follow the minus field
/// ker(cos^(2+k)(pi tau/2) dphi - sin^(2+k)(pi tau/2) dtheta),
/// the mixed sides (BR, TL) the plus field (sign of the dtheta term flipped).
inline PlaneField side_plane_field(CornerKind k) {
    return (k == CornerKind::BL || k == CornerKind::TR) ? PlaneField::Minus
                                                        : PlaneField::Plus;
}

struct TangencySample {
    CornerKind corner;
    double tau = 0;
    double defect = 0; // principal angle, radians
    bool converged = true;
};

struct TangencyReport {
    std::vector<TangencySample> samples;
    double max_defect = 0;
    int failures = 0;
};

/// Numeric check that the tile surface meets each corner arc tangentially to
/// the matching plane field. The tangent direction transverse to the arc is
/// estimated from a surface point at small radius from the corner, placed at
/// the polar angle whose boundary height limit equals the sampled tau.
inline TangencyReport tangency_check(const HarmonicTile& tile, double kappa = 0,
                                     int samples = 13, double radius = 1e-3) {
    TangencyReport rep;
    double a = tile.a(), b = tile.b();
    double s = std::min(radius, 0.05 * std::min(a, b));
    for (CornerKind ck :
         {CornerKind::BL, CornerKind::BR, CornerKind::TL, CornerKind::TR}) {
        bool at_xmax = ck == CornerKind::BR || ck == CornerKind::TR;
        bool at_ymax = ck == CornerKind::TL || ck == CornerKind::TR;
        double exp_sign = side_plane_field(ck) == PlaneField::Minus ? -1.0 : 1.0;
        for (int i = 0; i < samples; ++i) {
            double tau = 0.2 + 0.6 * i / (samples - 1);
            // boundary height limit at polar angle alpha is (2/pi) alpha,
            // so alpha below hits the level whose zeta-image is tau
            double h0 = zeta_inverse(tau, kappa);
            double alpha = (kPi / 2) * h0;
            TangencySample out{ck, tau, 0, true};
            // Measure the surface height at two radii along a fixed chart
            // direction and extrapolate to the arc. The approach direction
            // must lie in the kernel of the plane field at the extrapolated
            // height; the arc direction d/dtau is shared by both planes, so
            // the principal angle is that of the transverse direction alone.
            double t_far, t_near;
            try {
                auto height_at = [&](double r) {
                    double dx = r * std::cos(alpha), dy = r * std::sin(alpha);
                    return zeta(tile.eval_local(at_xmax ? a - dx : dx,
                                                at_ymax ? b - dy : dy),
                                kappa);
                };
                t_far = height_at(s);
                t_near = height_at(s / 2);
            } catch (const std::runtime_error&) {
                out.converged = false;
                ++rep.failures;
                rep.samples.push_back(out);
                continue;
            }
            double tau_est = 2 * t_near - t_far;
            out.tau = tau_est;
            double et = (at_xmax ? -1 : 1) * std::cos(alpha);
            double ep = (at_ymax ? -1 : 1) * std::sin(alpha);
            double cs = std::cos(kPi * tau_est / 2), sn = std::sin(kPi * tau_est / 2);
            double w_phi = std::pow(cs, 2 + kappa);
            double w_theta = exp_sign * std::pow(sn, 2 + kappa);
            double nrm = std::sqrt(et * et + ep * ep) *
                         std::sqrt(w_theta * w_theta + w_phi * w_phi);
            out.defect = std::asin(
                std::min(1.0, std::fabs(w_theta * et + w_phi * ep) / nrm));
            rep.max_defect = std::max(rep.max_defect, out.defect);
            rep.samples.push_back(out);
        }
    }
    return rep;
}

/// Slope dphi/dtheta of the projected characteristic line field at an
/// interior point: -tan^(2/(2+kappa))((pi/2) h).
inline double foliation_slope(const HarmonicTile& tile, double kappa, double x,
                              double y) {
    double h = tile.eval_local(x, y);
    return -std::pow(std::tan((kPi / 2) * h), 2.0 / (2.0 + kappa));
}

struct Streamline {
    std::vector<std::pair<double, double>> points; // local (x, y)
    std::vector<double> slopes;                    // dphi/dtheta at each point
    bool truncated = false;                        // stopped by the step cap
};

/// Integrate the projected line field through a seed, both ways, by RK4 on
/// the unit-speed direction field, stopping within delta of the boundary.
inline Streamline foliation_streamline(const HarmonicTile& tile, double kappa,
                                       double x0, double y0, double step = 1e-3,
                                       double delta = 1e-3, int max_steps = 20000) {
    double a = tile.a(), b = tile.b();
    auto dir = [&](double x, double y, double sign) {
        double h = tile.eval_local(x, y);
        double m = 2.0 / (2.0 + kappa);
        double t = (kPi / 2) * h;
        double dx = std::pow(std::cos(t), m), dy = -std::pow(std::sin(t), m);
        double n = std::hypot(dx, dy);
        return std::pair<double, double>{sign * dx / n, sign * dy / n};
    };
    auto inside = [&](double x, double y) {
        return x > delta && x < a - delta && y > delta && y < b - delta;
    };
    Streamline out;
    for (double sign : {-1.0, 1.0}) {
        std::vector<std::pair<double, double>> half;
        std::vector<double> hslopes;
        double x = x0, y = y0;
        int steps = 0;
        while (inside(x, y)) {
            half.emplace_back(x, y);
            hslopes.push_back(foliation_slope(tile, kappa, x, y));
            if (++steps > max_steps) {
                out.truncated = true;
                break;
            }
            auto k1 = dir(x, y, sign);
            auto mid1x = x + step / 2 * k1.first, mid1y = y + step / 2 * k1.second;
            if (!inside(mid1x, mid1y)) break;
            auto k2 = dir(mid1x, mid1y, sign);
            auto mid2x = x + step / 2 * k2.first, mid2y = y + step / 2 * k2.second;
            if (!inside(mid2x, mid2y)) break;
            auto k3 = dir(mid2x, mid2y, sign);
            auto endx = x + step * k3.first, endy = y + step * k3.second;
            if (!inside(endx, endy)) break;
            auto k4 = dir(endx, endy, sign);
            x += step / 6 * (k1.first + 2 * k2.first + 2 * k3.first + k4.first);
            y += step / 6 * (k1.second + 2 * k2.second + 2 * k3.second + k4.second);
        }
        if (sign < 0) {
            std::reverse(half.begin(), half.end());
            std::reverse(hslopes.begin(), hslopes.end());
        } else if (!half.empty()) {
            half.erase(half.begin()); // seed already emitted by the backward half
            hslopes.erase(hslopes.begin());
        }
        out.points.insert(out.points.end(), half.begin(), half.end());
        out.slopes.insert(out.slopes.end(), hslopes.begin(), hslopes.end());
    }
    return out;
}

/// Odd bump profile for the transverse line field: value +1 on the leading
/// margin, -1 on the trailing one, strictly monotone in between, and
/// antisymmetric about the midpoint. Built from the C^2 quintic step.
struct ContactProfile {
    double margin = 0.1; // fraction of the span kept flat at each end

    void check() const {
        if (!(margin > 0 && margin < 0.5))
            throw std::invalid_argument(
                "profile margin must lie in (0, 1/2) to keep flat ends and a "
                "monotone middle");
    }

    // value at normalized coordinate u in [-margin, 1+margin]
    double value(double u) const {
        if (u <= margin) return 1;
        if (u >= 1 - margin) return -1;
        double t = (u - margin) / (1 - 2 * margin);
        return 1 - 2 * (((6 * t - 15) * t + 10) * t * t * t);
    }
    // derivative with respect to u
    double slope(double u) const {
        if (u <= margin || u >= 1 - margin) return 0;
        double t = (u - margin) / (1 - 2 * margin);
        return -60 * t * t * (1 - t) * (1 - t) / (1 - 2 * margin);
    }
};

struct ContactReport {
    double min_transversality = std::numeric_limits<double>::infinity();
    int transversality_failures = 0;
    int transversality_samples = 0;
    double max_lie_residual = 0;
    double max_boundary_defect_tau0 = 0;
    double max_boundary_defect_tau1 = 0;
};

/// Checks the transverse contact line field
///   l = a(Theta) d/dTheta + b(Phi) d/dPhi
///       + sin(pi tau)/(2 pi) (b'(Phi) - a'(Theta)) d/dtau
/// with a the profile over the theta span and b its negative over the phi
/// span: transversality to the tile, first-order invariance of the plus
/// plane field under its flow (finite-difference Lie derivative), and the
/// restrictions to the binding circles.
inline ContactReport contact_field_check(const HarmonicTile& tile,
                                         const ContactProfile& profile = {},
                                         int grid = 32, double kappa = 0) {
    profile.check();
    ContactReport rep;
    double a = tile.a(), b = tile.b();

    // chart components of l at local (x, y, tau); angles in radians
    auto field = [&](double x, double y, double tau) {
        double av = profile.value(x / a);
        double bv = -profile.value(y / b);
        double da = profile.slope(x / a) / (kTau * a);
        double db = -profile.slope(y / b) / (kTau * b);
        double g = std::sin(kPi * tau) / kTau * (db - da);
        return std::array<double, 3>{av, bv, g};
    };

    // transversality on an interior grid of the tile
    double fd = 1e-6 * std::min(a, b);
    for (int i = 1; i < grid; ++i) {
        for (int j = 1; j < grid; ++j) {
            double x = a * i / grid, y = b * j / grid;
            auto T = [&](double px, double py) {
                return zeta(tile.eval_local(px, py), kappa);
            };
            double tau = T(x, y);
            double dTdTh = (T(x + fd, y) - T(x - fd, y)) / (2 * fd) / kTau;
            double dTdPh = (T(x, y + fd) - T(x, y - fd)) / (2 * fd) / kTau;
            auto l = field(x, y, tau);
            double d = -l[0] * dTdTh - l[1] * dTdPh + l[2];
            double nn = std::sqrt(dTdTh * dTdTh + dTdPh * dTdPh + 1);
            double ln = std::sqrt(l[0] * l[0] + l[1] * l[1] + l[2] * l[2]);
            double val = std::fabs(d) / (nn * ln);
            ++rep.transversality_samples;
            if (!(val > 1e-9)) ++rep.transversality_failures;
            rep.min_transversality = std::min(rep.min_transversality, val);
        }
    }

    // Lie derivative of the defining form of the plus field along l,
    // modulo the form itself; the flow preserves the plane field iff the
    // residual vanishes. Components in the (Theta, Phi, tau) chart.
    auto alpha = [](double tau) {
        double sn = std::sin(kPi * tau / 2), cs = std::cos(kPi * tau / 2);
        return std::array<double, 3>{sn * sn, cs * cs, 0};
    };
    int lg = 10;
    double h3 = 1e-5;
    for (int i = 1; i < lg; ++i)
        for (int j = 1; j < lg; ++j)
            for (int k = 1; k < lg; ++k) {
                double x = a * i / lg, y = b * j / lg, tau = (double)k / lg;
                // position derivatives: chart coords q = (Theta, Phi, tau);
                // x, y are turn offsets, so dTheta = kTau * dx
                auto Xat = [&](double qx, double qy, double qt) {
                    return field(qx, qy, qt);
                };
                std::array<double, 3> L{};
                auto X = Xat(x, y, tau);
                auto al = alpha(tau);
                for (int ii = 0; ii < 3; ++ii) {
                    // X^j d_j alpha_i  (alpha depends on tau only)
                    double dal =
                        (alpha(tau + h3)[ii] - alpha(tau - h3)[ii]) / (2 * h3);
                    L[ii] = X[2] * dal;
                    // alpha_j d_i X^j
                    for (int jj = 0; jj < 3; ++jj) {
                        double plus, minus;
                        if (ii == 0) {
                            plus = Xat(x + h3 / kTau, y, tau)[jj];
                            minus = Xat(x - h3 / kTau, y, tau)[jj];
                        } else if (ii == 1) {
                            plus = Xat(x, y + h3 / kTau, tau)[jj];
                            minus = Xat(x, y - h3 / kTau, tau)[jj];
                        } else {
                            plus = Xat(x, y, tau + h3)[jj];
                            minus = Xat(x, y, tau - h3)[jj];
                        }
                        L[ii] += al[jj] * (plus - minus) / (2 * h3);
                    }
                }
                double aa = al[0] * al[0] + al[1] * al[1];
                double lam = (L[0] * al[0] + L[1] * al[1]) / aa;
                double r = 0;
                for (int ii = 0; ii < 3; ++ii) {
                    double d = L[ii] - lam * al[ii];
                    r += d * d;
                }
                rep.max_lie_residual =
                    std::max(rep.max_lie_residual, std::sqrt(r / aa));
            }

    // restrictions to the binding circles, pushed to R^4
    double t0 = tile.rect().theta_span.start.turns();
    double p0 = tile.rect().phi_span.start.turns();
    auto push = [&](double x, double y, double tau) {
        double Th = kTau * (t0 + x), Ph = kTau * (p0 + y);
        double C = tau == 0 ? 1.0 : (tau == 1 ? 0.0 : std::cos(kPi * tau / 2));
        double S = tau == 0 ? 0.0 : (tau == 1 ? 1.0 : std::sin(kPi * tau / 2));
        auto l = field(x, y, tau);
        Vec4 eT{{0, 0, -S * std::sin(Th), S * std::cos(Th)}};
        Vec4 eP{{-C * std::sin(Ph), C * std::cos(Ph), 0, 0}};
        Vec4 eU{{-kPi / 2 * S * std::cos(Ph), -kPi / 2 * S * std::sin(Ph),
                 kPi / 2 * C * std::cos(Th), kPi / 2 * C * std::sin(Th)}};
        Vec4 l4 = l[0] * eT + l[1] * eP + (l[2] * eU);
        return std::pair<Vec4, std::pair<Vec4, Vec4>>{l4, {eP, eT}};
    };
    for (int i = 0; i <= 20; ++i) {
        double u = 0.02 + 0.96 * i / 20;
        if (std::fabs(u - 0.5) < 0.05) continue; // line field vanishes mid-span
        {
            auto [l4, dirs] = push(a * u, b * u, 0.0);
            Vec4 d = (1.0 / norm(dirs.first)) * dirs.first;
            Vec4 perp = l4 - (dot(l4, d) * d);
            rep.max_boundary_defect_tau0 =
                std::max(rep.max_boundary_defect_tau0, norm(perp) / norm(l4));
        }
        {
            auto [l4, dirs] = push(a * u, b * u, 1.0);
            Vec4 d = (1.0 / norm(dirs.second)) * dirs.second;
            Vec4 perp = l4 - (dot(l4, d) * d);
            rep.max_boundary_defect_tau1 =
                std::max(rep.max_boundary_defect_tau1, norm(perp) / norm(l4));
        }
    }
    return rep;
}

/// Minimum height gap over the overlap block of a crossing pair. Strictly
/// positive: the two harmonic functions differ everywhere on the block
/// boundary, hence everywhere inside by the maximum principle, so the two
/// tiles are disjoint.
inline double crossing_height_gap(const Rectangle& r1, const Rectangle& r2,
                                  int grid = 40, double kappa = 0) {
    auto c = classify_pair(r1, r2);
    if (c.kind != PairKind::Crossing)
        throw std::invalid_argument("height gap is defined for crossing pairs");
    auto ti = arc_intersection(r1.theta_span, r2.theta_span);
    auto pi = arc_intersection(r1.phi_span, r2.phi_span);
    const Arc& bt = *ti[0].arc;
    const Arc& bp = *pi[0].arc;
    HarmonicTile t1(r1), t2(r2);
    double gap = std::numeric_limits<double>::infinity();
    double ts = bt.start.turns(), tl = bt.length().to_double();
    double ps = bp.start.turns(), pl = bp.length().to_double();
    for (int i = 1; i < grid; ++i)
        for (int j = 1; j < grid; ++j) {
            double th = ts + tl * i / grid, ph = ps + pl * j / grid;
            double d = std::fabs(zeta(t1.eval_turns(th, ph), kappa) -
                                 zeta(t2.eval_turns(th, ph), kappa));
            gap = std::min(gap, d);
        }
    return gap;
}

} // namespace rectsurf
