#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "rectsurf/rational.hpp"

namespace rectsurf {

/// A point on the oriented circle, stored as an exact angle in turns.
/// Canonical form: reduced fraction in [0,1). Equality is exact.
class CircleCoord {
public:
    CircleCoord() = default;
    explicit CircleCoord(Rational q) : value_(q.mod1()) {}
    CircleCoord(std::int64_t n, std::int64_t d) : value_(Rational(n, d).mod1()) {}

    const Rational& value() const { return value_; }
    double turns() const { return value_.to_double(); }

    CircleCoord operator+(const Rational& d) const { return CircleCoord(value_ + d); }
    CircleCoord operator-(const Rational& d) const { return CircleCoord(value_ - d); }

    /// Positive circular difference (*this - other) mod 1, in [0,1).
    Rational cyclic_minus(const CircleCoord& other) const {
        return (value_ - other.value_).mod1();
    }

    friend bool operator==(const CircleCoord& a, const CircleCoord& b) {
        return a.value_ == b.value_;
    }
    friend bool operator!=(const CircleCoord& a, const CircleCoord& b) {
        return !(a == b);
    }
    // Order on representatives in [0,1); used for canonical sorting only.
    friend bool operator<(const CircleCoord& a, const CircleCoord& b) {
        return a.value_ < b.value_;
    }

private:
    Rational value_;
};

/// Closed arc [start,end] traversed positively from start to end.
/// Wrap-around spans such as [3/4,1/4] are legal; start != end always.
struct Arc {
    CircleCoord start, end;

    Arc(CircleCoord s, CircleCoord e) : start(s), end(e) {
        if (s == e) throw std::invalid_argument("degenerate arc: start == end");
    }

    /// Exact length in (0,1).
    Rational length() const { return end.cyclic_minus(start); }
};

inline bool arc_contains(const Arc& a, const CircleCoord& x, bool closed = true) {
    Rational pos = x.cyclic_minus(a.start);
    Rational len = a.length();
    if (closed) return pos <= len;
    return Rational(0) < pos && pos < len;
}

/// One piece of an arc intersection: an isolated point or a sub-arc.
struct ArcPiece {
    bool is_point;
    CircleCoord start;          // the point itself when is_point
    std::optional<Arc> arc;     // set when !is_point

    static ArcPiece point(CircleCoord p) { return ArcPiece{true, p, std::nullopt}; }
    static ArcPiece of(Arc a) { return ArcPiece{false, a.start, a}; }
};

/// Exact decomposition of a ∩ b into isolated points and arcs (0, 1 or 2 pieces).
inline std::vector<ArcPiece> arc_intersection(const Arc& a, const Arc& b) {
    // Work on the line, with a lifted to [0, la].
    Rational la = a.length(), lb = b.length();
    Rational bs = b.start.cyclic_minus(a.start);
    std::vector<ArcPiece> out;
    auto emit = [&](Rational u, Rational v) {
        CircleCoord p = a.start + u;
        if (u == v) {
            out.push_back(ArcPiece::point(p));
        } else {
            out.push_back(ArcPiece::of(Arc(p, a.start + v)));
        }
    };
    // Two lifts of b: [bs-1, bs-1+lb] and [bs, bs+lb].
    for (int shift = -1; shift <= 0; ++shift) {
        Rational u = bs + Rational(shift);
        Rational v = u + lb;
        Rational lo = std::max(Rational(0), u, std::less<Rational>{});
        Rational hi = std::min(la, v, std::less<Rational>{});
        if (lo <= hi) emit(lo, hi);
    }
    // Both lifts can contribute; pieces are disjoint except when b covers a's
    // start point from both sides, which cannot happen for lb < 1.
    return out;
}

/// Minimum gap between circularly consecutive values; requires >= 2 distinct.
inline Rational min_cyclic_gap(std::vector<CircleCoord> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.size() < 2)
        throw std::invalid_argument("min_cyclic_gap needs at least 2 distinct values");
    Rational best = values.front().cyclic_minus(values.back());
    for (std::size_t i = 1; i < values.size(); ++i) {
        Rational g = values[i].cyclic_minus(values[i - 1]);
        if (g < best) best = g;
    }
    return best;
}

struct TorusPoint {
    CircleCoord theta, phi;

    friend bool operator==(const TorusPoint& a, const TorusPoint& b) {
        return a.theta == b.theta && a.phi == b.phi;
    }
    friend bool operator!=(const TorusPoint& a, const TorusPoint& b) { return !(a == b); }
    friend bool operator<(const TorusPoint& a, const TorusPoint& b) {
        if (a.theta != b.theta) return a.theta < b.theta;
        return a.phi < b.phi;
    }
};

inline std::size_t hash_value(const TorusPoint& p) {
    std::size_t h = hash_value(p.theta.value());
    h ^= hash_value(p.phi.value()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

struct TorusPointHash {
    std::size_t operator()(const TorusPoint& p) const { return hash_value(p); }
};

} // namespace rectsurf
