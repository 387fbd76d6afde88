#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include <rectsurf/framing.hpp>

using namespace rectsurf;

namespace {

TorusPoint pt(Rational t, Rational p) {
    return TorusPoint{CircleCoord(t), CircleCoord(p)};
}

LinkDiagram minimal_square() {
    return LinkDiagram::validate(
        {pt(Rational(0), Rational(0)), pt(Rational(0), Rational(1, 2)),
         pt(Rational(1, 2), Rational(0)), pt(Rational(1, 2), Rational(1, 2))});
}

// 4-vertex unknot with all edge lengths 1/3: generic, tb identical to the
// minimal square by translation/scale-free crossing combinatorics.
LinkDiagram generic_square() {
    return LinkDiagram::validate(
        {pt(Rational(0), Rational(0)), pt(Rational(0), Rational(1, 3)),
         pt(Rational(1, 3), Rational(0)), pt(Rational(1, 3), Rational(1, 3))});
}

LinkDiagram random_link(std::mt19937_64& rng, int n) {
    for (;;) {
        std::vector<int> sigma(n), tau(n);
        for (int i = 0; i < n; ++i) sigma[i] = tau[i] = i;
        std::shuffle(sigma.begin(), sigma.end(), rng);
        std::shuffle(tau.begin(), tau.end(), rng);
        bool ok = true;
        for (int i = 0; i < n; ++i)
            if (sigma[i] == tau[i]) ok = false;
        if (!ok) continue;
        std::vector<TorusPoint> v;
        for (int i = 0; i < n; ++i) {
            v.push_back(pt(Rational(i, n), Rational(sigma[i], n)));
            v.push_back(pt(Rational(i, n), Rational(tau[i], n)));
        }
        return LinkDiagram::validate(std::move(v));
    }
}

LinkDiagram random_generic_link(std::mt19937_64& rng, int n) {
    for (;;) {
        LinkDiagram d = random_link(rng, n);
        if (genericity(d).generic()) return d;
    }
}

} // namespace

TEST_CASE("corner roles and framing validity") {
    LinkDiagram d = generic_square();
    auto framings = all_framings(d);
    CHECK(framings.size() == 16);
    for (auto& f : framings) CHECK(f.valid_for(d));

    Framing bad;
    bad.greater = {0, 0, 0};
    CHECK(!bad.valid_for(d));
    CHECK_THROWS_AS(corner_roles(d, bad), validation_error);
}

TEST_CASE("n_minus is even and single flips move it by at most 2") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        LinkDiagram d = random_link(rng, 3 + static_cast<int>(rng() % 4));
        auto comps = d.components();
        Framing f;
        for (const Edge& e : d.edges()) f.greater.push_back(rng() % 2 ? e.a : e.b);
        for (auto& c : comps) CHECK(n_minus(d, f, c) % 2 == 0);
        for (std::size_t e = 0; e < d.edges().size(); ++e) {
            Framing g = f;
            g.greater[e] = d.edge_partner(e, g.greater[e]);
            for (auto& c : comps) {
                long delta = n_minus(d, g, c) - n_minus(d, f, c);
                CHECK((delta == -2 || delta == 0 || delta == 2));
            }
        }
    }
}

TEST_CASE("framing values of the generic square") {
    LinkDiagram d = generic_square();
    REQUIRE(tb_plus(d) == -1);
    REQUIRE(tb_minus(d) == -1);
    std::set<long> values;
    bool saw_n0 = false, saw_n4 = false;
    for (auto& f : all_framings(d)) {
        auto comps = d.components();
        long n = n_minus(d, f, comps[0]);
        FramingValue v = framing_value(d, f);
        REQUIRE(v.per_component.size() == 1);
        CHECK(v.per_component[0] == -1 + n / 2);
        CHECK(v.total == v.per_component[0]);
        values.insert(v.total);
        if (n == 0) { saw_n0 = true; CHECK(v.total == -1); }
        if (n == 4) { saw_n4 = true; CHECK(v.total == 1); }
    }
    CHECK(saw_n0);
    CHECK(saw_n4);
    CHECK(values == std::set<long>{-1, 0, 1});
}

TEST_CASE("non-generic diagrams are rejected by framing_value") {
    LinkDiagram d = minimal_square();
    Framing f;
    for (const Edge& e : d.edges()) f.greater.push_back(e.a);
    CHECK_THROWS_AS(framing_value(d, f), validation_error);
}

TEST_CASE("framing range per component") {
    auto ranges = framing_range(generic_square());
    REQUIRE(ranges.size() == 1);
    CHECK(ranges[0].lo == -1);
    CHECK(ranges[0].hi == 1);

    CHECK(framing_range(LinkDiagram::validate({})).empty());

    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 15; ++trial) {
        LinkDiagram d = random_link(rng, 3 + static_cast<int>(rng() % 6));
        auto comps = d.components();
        auto rs = framing_range(d);
        REQUIRE(rs.size() == comps.size());
        for (std::size_t i = 0; i < rs.size(); ++i)
            CHECK(rs[i].hi - rs[i].lo == static_cast<long>(comps[i].size()) / 2);
    }
}

TEST_CASE("exhaustive framing enumeration reproduces the range") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        LinkDiagram d = random_generic_link(rng, 3 + static_cast<int>(rng() % 3));
        auto comps = d.components();
        auto ranges = framing_range(d);
        std::vector<std::set<long>> seen(comps.size());
        for (auto& f : all_framings(d)) {
            FramingValue v = framing_value(d, f);
            for (std::size_t i = 0; i < comps.size(); ++i) seen[i].insert(v.per_component[i]);
        }
        for (std::size_t i = 0; i < comps.size(); ++i) {
            std::set<long> want;
            for (long k = ranges[i].lo; k <= ranges[i].hi; ++k) want.insert(k);
            CHECK(seen[i] == want);
        }
    }
}

TEST_CASE("relative tb arithmetic") {
    LinkDiagram d = minimal_square();
    auto r = relative_tb(d, {-1});
    REQUIRE(r.size() == 1);
    CHECK(r[0].tb_plus == 0);
    CHECK(r[0].tb_minus == -2);

    r = relative_tb(d, {0});
    CHECK(r[0].tb_plus == -1);
    CHECK(r[0].tb_minus == -1);

    CHECK_THROWS_AS(relative_tb(d, {}), std::invalid_argument);
    CHECK_THROWS_AS(relative_tb(d, {0, 0}), std::invalid_argument);
}

TEST_CASE("representability predicate") {
    LinkDiagram d = minimal_square();
    CHECK(representability_check(d, {-1}).overall);
    CHECK(representability_check(d, {0}).overall);
    CHECK(representability_check(d, {1}).overall);

    auto v = representability_check(d, {2});
    CHECK(!v.overall);
    CHECK(v.relative[0].tb_plus == -3);
    CHECK(v.relative[0].tb_minus == 1);

    CHECK(!representability_check(d, {-2}).overall);

    // representable iff lk lies in the framing range
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        LinkDiagram r = random_link(rng, 3 + static_cast<int>(rng() % 4));
        auto ranges = framing_range(r);
        std::vector<long> lk;
        for (auto& rg : ranges) lk.push_back(rg.lo + static_cast<long>(rng() % (rg.hi - rg.lo + 1)));
        CHECK(representability_check(r, lk).overall);
        std::vector<long> bad = lk;
        bad[0] = ranges[0].hi + 1;
        CHECK(!representability_check(r, bad).overall);
    }
}
