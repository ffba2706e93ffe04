#include <cmath>

#include "doctest.h"
#include "geopath/geodesic.hpp"
#include "geopath/rng.hpp"

using namespace geopath;

namespace {

struct Fixture {
    PolygonalDomain d;
    VisibilityGraph vg;
    GeodesicMatrix gm;
    Fixture(PolygonalDomain dom) : d(std::move(dom)), vg(build_visibility_graph(d)), gm(all_pairs(d, vg)) {}
};

Fixture& f0() {
    static Fixture f(PolygonalDomain({{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                                     {{{4, 4}, {4, 6}, {6, 6}, {6, 4}}}));
    return f;
}

}  // namespace

TEST_CASE("all_pairs matrix on D0") {
    auto& f = f0();
    // vertices: 0..3 outer corners, 4:(4,4) 5:(4,6) 6:(6,6) 7:(6,4)
    CHECK(f.gm.d[5][6] == doctest::Approx(2.0));  // hole edge
    for (int u = 0; u < f.d.n(); ++u) CHECK(f.gm.d[u][u] == 0.0);
    // d((0,0),(10,10)): one bend at hole corner (4,6) or (6,4), two legs of sqrt(52)
    double expect = 2 * std::sqrt(52.0);
    CHECK(f.gm.d[0][2] == doctest::Approx(expect).epsilon(1e-12));
    // symmetry and triangle inequality
    for (int u = 0; u < f.d.n(); ++u)
        for (int w = 0; w < f.d.n(); ++w) {
            CHECK(f.gm.d[u][w] == doctest::Approx(f.gm.d[w][u]).epsilon(1e-12));
            for (int x = 0; x < f.d.n(); ++x)
                CHECK(f.gm.d[u][w] <= f.gm.d[u][x] + f.gm.d[x][w] + 1e-9 * (1 + f.gm.d[u][w]));
        }
}

TEST_CASE("oracle examples on D0") {
    auto& f = f0();
    auto r = oracle_distance(f.d, f.vg, f.gm, {1, 5}, {9, 5});
    CHECK(r.distance == doctest::Approx(2 + 2 * std::sqrt(10.0)).epsilon(1e-12));
    REQUIRE(r.path.size() == 4);
    CHECK(r.path.front() == Point{1, 5});
    CHECK(r.path.back() == Point{9, 5});
    // tie rule: lexicographically smallest (u, w) picks the route below the hole
    CHECK(r.via_u == 4);
    CHECK(r.via_w == 7);

    auto same = oracle_distance(f.d, f.vg, f.gm, {1, 5}, {1, 5});
    CHECK(same.distance == 0.0);
    REQUIRE(same.path.size() == 1);

    auto direct = oracle_distance(f.d, f.vg, f.gm, {1, 1}, {2, 2});
    CHECK(direct.distance == doctest::Approx(std::sqrt(2.0)));
    CHECK(direct.path.size() == 2);

    CHECK_THROWS_AS(oracle_distance(f.d, f.vg, f.gm, {5, 5}, {1, 1}), PointOutsideDomain);
}

TEST_CASE("oracle invariants on random pairs") {
    auto& f = f0();
    Rng rng(17);
    auto bb = f.d.bounds();
    int n = 0;
    while (n < 1000) {
        Point s{rng.uniform(bb.xlo, bb.xhi), rng.uniform(bb.ylo, bb.yhi)};
        Point t{rng.uniform(bb.xlo, bb.xhi), rng.uniform(bb.ylo, bb.yhi)};
        if (f.d.contains(s) == Location::exterior || f.d.contains(t) == Location::exterior)
            continue;
        ++n;
        auto st = oracle_distance(f.d, f.vg, f.gm, s, t);
        auto ts = oracle_distance(f.d, f.vg, f.gm, t, s);
        CHECK(st.distance == doctest::Approx(ts.distance).epsilon(1e-12));
        CHECK(path_length(st.path) == doctest::Approx(st.distance).epsilon(1e-12));
        CHECK(st.distance >= dist(s, t) - 1e-12 * (1 + st.distance));
        if (st.distance > dist(s, t) + 1e-9) CHECK_FALSE(sees(f.d, s, t));
        // every link of the path is a free-space segment
        for (size_t i = 0; i + 1 < st.path.size(); ++i) CHECK(sees(f.d, st.path[i], st.path[i + 1]));
    }
}

TEST_CASE("vertex-query consistency") {
    auto& f = f0();
    Rng rng(23);
    auto bb = f.d.bounds();
    for (int q = 0; q < 200;) {
        Point t{rng.uniform(bb.xlo, bb.xhi), rng.uniform(bb.ylo, bb.yhi)};
        if (f.d.contains(t) == Location::exterior) continue;
        ++q;
        int v = rng.index(f.d.n());
        auto r = oracle_distance(f.d, f.vg, f.gm, f.d.vertex(v), t);
        // reduce by hand: min over u visible from t of d(v,u) + |u t|
        double expect = std::numeric_limits<double>::infinity();
        if (sees(f.d, f.d.vertex(v), t)) expect = dist(f.d.vertex(v), t);
        for (int u : visible_vertices(f.d, t))
            expect = std::min(expect, f.gm.d[v][u] + dist(f.d.vertex(u), t));
        CHECK(r.distance == doctest::Approx(expect).epsilon(1e-12));
    }
}
