#include "doctest.h"
#include "geopath/visibility.hpp"
#include "geopath/rng.hpp"

using namespace geopath;

namespace {

PolygonalDomain d0() {
    return PolygonalDomain({{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                           {{{4, 4}, {4, 6}, {6, 6}, {6, 4}}});
}

}  // namespace

TEST_CASE("sees on D0") {
    auto d = d0();
    CHECK_FALSE(sees(d, {1, 5}, {9, 5}));  // hole spans x in [4,6] at y=5
    CHECK(sees(d, {1, 5}, {1, 9}));
    CHECK_FALSE(sees(d, {4, 4}, {6, 6}));  // hole diagonal
    CHECK(sees(d, {4, 4}, {4, 6}));        // along the hole boundary (closed P)
    CHECK(sees(d, {0, 0}, {10, 0}));
    CHECK_FALSE(sees(d, {0, 0}, {10, 10}));  // blocked by the hole
    // grazing a corner: segment through (4,4) continuing into free space
    CHECK(sees(d, {3, 3}, {5, 3}));
}

TEST_CASE("sees symmetry on random pairs") {
    auto d = d0();
    Rng rng(42);
    auto bb = d.bounds();
    int n = 0;
    while (n < 1000) {
        Point p{rng.uniform(bb.xlo, bb.xhi), rng.uniform(bb.ylo, bb.yhi)};
        Point q{rng.uniform(bb.xlo, bb.xhi), rng.uniform(bb.ylo, bb.yhi)};
        if (d.contains(p) == Location::exterior || d.contains(q) == Location::exterior) continue;
        ++n;
        CHECK(sees(d, p, q) == sees(d, q, p));
    }
}

TEST_CASE("visibility graph on D0") {
    auto d = d0();
    auto g = build_visibility_graph(d);
    CHECK(g.edge(0, 1));       // outer bottom edge
    CHECK_FALSE(g.edge(0, 2)); // (0,0)-(10,10) blocked by the hole
    CHECK(g.edge(4, 5));       // hole edge
    // every domain edge is a visibility edge
    for (const auto& e : d.edges()) {
        int u = -1, w = -1;
        for (int i = 0; i < d.n(); ++i) {
            if (d.vertex(i) == e.seg.a) u = i;
            if (d.vertex(i) == e.seg.b) w = i;
        }
        REQUIRE(u >= 0);
        REQUIRE(w >= 0);
        CHECK(g.edge(u, w));
    }
    // consistency: graph edge <=> sees(u, w)
    for (int u = 0; u < d.n(); ++u)
        for (int w = 0; w < d.n(); ++w)
            if (u != w) CHECK(g.edge(u, w) == sees(d, d.vertex(u), d.vertex(w)));
}

TEST_CASE("visible_vertices on D0") {
    auto d = d0();
    auto vis = visible_vertices(d, {1, 5});
    // brute-force oracle: run sees against every vertex
    std::vector<int> expect;
    for (int w = 0; w < d.n(); ++w)
        if (sees(d, {1, 5}, d.vertex(w))) expect.push_back(w);
    CHECK(vis == expect);
    // the spec's fixed members: (0,0), (0,10), (4,4), (4,6)
    auto has = [&](Point p) {
        for (int w : vis)
            if (d.vertex(w) == p) return true;
        return false;
    };
    CHECK(has({0, 0}));
    CHECK(has({0, 10}));
    CHECK(has({4, 4}));
    CHECK(has({4, 6}));
    CHECK_FALSE(has({6, 6}));

    CHECK_THROWS_AS(visible_vertices(d, {5, 5}), PointOutsideDomain);

    auto vis0 = visible_vertices(d, {0, 0});
    auto has0 = [&](Point p) {
        for (int w : vis0)
            if (d.vertex(w) == p) return true;
        return false;
    };
    CHECK(has0({10, 0}));
    CHECK(has0({0, 10}));
}
