#include <tuple>
#include <vector>

#include "doctest.h"
#include "geopath/domain.hpp"
#include "geopath/rng.hpp"

using namespace geopath;

namespace {

PolygonalDomain d0() {
    return PolygonalDomain({{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                           {{{4, 4}, {4, 6}, {6, 6}, {6, 4}}});
}

}  // namespace

TEST_CASE("validate accepts the square fixture") {
    auto plain = PolygonalDomain({{0, 0}, {10, 0}, {10, 10}, {0, 10}}, {});
    CHECK(validate(plain).empty());
    CHECK(validate(d0()).empty());
}

TEST_CASE("validate flags a CCW hole") {
    PolygonalDomain bad({{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                        {{{4, 4}, {6, 4}, {6, 6}, {4, 6}}});
    auto v = validate(bad);
    REQUIRE(!v.empty());
    bool found = false;
    for (auto& viol : v)
        if (viol.what.find("clockwise") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("validate flags a hole overlapping the outer ring") {
    PolygonalDomain bad({{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                        {{{8, 4}, {8, 6}, {12, 6}, {12, 4}}});
    auto v = validate(bad);
    bool found = false;
    for (auto& viol : v)
        if (viol.what.find("intersect") != std::string::npos ||
            viol.what.find("inside") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("contains classification on D0") {
    auto d = d0();
    CHECK(d.contains({1, 5}) == Location::interior);
    CHECK(d.contains({5, 5}) == Location::exterior);
    CHECK(d.contains({4, 5}) == Location::boundary);
    CHECK(d.contains({0, 0}) == Location::boundary);
    CHECK(d.contains({-1, 5}) == Location::exterior);
    CHECK(d.contains({5, 0}) == Location::boundary);
}

TEST_CASE("boundary parameterization on D0") {
    auto d = d0();
    auto bp = d.boundary_locate({1, 0});
    CHECK(bp.cycle == 0);
    CHECK(bp.edge == 0);
    CHECK(bp.fraction == doctest::Approx(0.1));

    BoundaryPoint mid;
    mid.cycle = 1;
    mid.edge = 0;
    mid.fraction = 0.5;
    Point p = d.boundary_eval(mid);
    CHECK(p.x == doctest::Approx(4.0));
    CHECK(p.y == doctest::Approx(5.0));

    CHECK_THROWS_AS(d.boundary_locate({5, 5}), NotOnBoundary);
}

TEST_CASE("boundary locate/eval round-trip") {
    auto d = d0();
    Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        int cycle = rng.index(d.cycles());
        double param = rng.uniform(0, d.cycle_length(cycle));
        auto bp = d.boundary_at(cycle, param);
        auto back = d.boundary_locate(bp.point);
        CHECK(back.cycle == bp.cycle);
        double p1 = d.boundary_param(bp), p2 = d.boundary_param(back);
        double len = d.cycle_length(cycle);
        double diff = std::abs(p1 - p2);
        diff = std::min(diff, len - diff);
        CHECK(diff <= 1e-9 * (1 + len));
    }
}

TEST_CASE("generate is deterministic and valid") {
    auto d1 = generate(1, 12, 1);
    auto d2 = generate(1, 12, 1);
    CHECK(d1.n() == 12);
    CHECK(d1.h() == 1);
    CHECK(validate(d1).empty());
    CHECK(d1.to_json() == d2.to_json());
    CHECK_THROWS_AS(generate(1, 5, 1), GenerationFailed);
}

TEST_CASE("generate covers a range of sizes") {
    std::vector<std::tuple<uint64_t, int, int>> cases{{2, 16, 2}, {3, 24, 3}, {4, 40, 4}, {9, 60, 4}};
    for (auto [seed, n, h] : cases) {
        auto d = generate(seed, n, h);
        CHECK(d.n() == n);
        CHECK(d.h() == h);
        CHECK(validate(d).empty());
    }
}

TEST_CASE("random interior points are strictly inside") {
    auto d = generate(7, 20, 2);
    Rng rng(13);
    auto bb = d.bounds();
    int found = 0;
    while (found < 1000) {
        Point p{rng.uniform(bb.xlo, bb.xhi), rng.uniform(bb.ylo, bb.yhi)};
        if (d.contains(p) != Location::interior) continue;
        ++found;
        for (const auto& e : d.edges()) {
            CHECK_FALSE(point_on_segment(p, e.seg));
        }
    }
}

TEST_CASE("json round trip") {
    auto d = d0();
    auto text = d.to_json();
    auto back = PolygonalDomain::from_json(text);
    CHECK(back.n() == d.n());
    CHECK(back.h() == d.h());
    CHECK(back.to_json() == text);
}

TEST_CASE("reflex vertices of D0 are exactly the hole corners") {
    auto d = d0();
    for (int v = 0; v < 4; ++v) CHECK_FALSE(d.reflex(v));
    for (int v = 4; v < 8; ++v) CHECK(d.reflex(v));
}
