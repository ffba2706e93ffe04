#include <cmath>

#include "doctest.h"
#include "geopath/spm.hpp"
#include "geopath/rng.hpp"

using namespace geopath;

namespace {

struct World {
    PolygonalDomain d;
    VisibilityGraph vg;
    GeodesicMatrix gm;
    SeesIndex si;
    RegionMultiset ms;
    World(PolygonalDomain dom)
        : d(std::move(dom)), vg(build_visibility_graph(d)), gm(all_pairs(d, vg)), si(d),
          ms(build_region_multiset(d, vg, gm, si)) {}

    Point rand_point(Rng& rng) const {
        auto bb = d.bounds();
        for (;;) {
            Point p{rng.uniform(bb.xlo, bb.xhi), rng.uniform(bb.ylo, bb.yhi)};
            if (d.contains(p) != Location::exterior) return p;
        }
    }
};

World& w0() {
    static World w(PolygonalDomain({{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                                   {{{4, 4}, {4, 6}, {6, 6}, {6, 4}}}));
    return w;
}

World& w1() {
    static World w(generate(21, 14, 1));
    return w;
}

double min_visible_g(const World& w, Point q, int source) {
    double best = std::numeric_limits<double>::infinity();
    for (int v : visible_vertices(w.d, q))
        best = std::min(best, dist(q, w.d.vertex(v)) + w.gm.d[v][source]);
    return best;
}

}  // namespace

TEST_CASE("spm regions around the source have apex = source") {
    auto& w = w0();
    int rid = w.ms.region_containing(0, {1, 1});  // source (0,0)
    CHECK(w.ms.regions[rid].apex == 0);
    CHECK(w.ms.regions[rid].weight == 0.0);
}

TEST_CASE("spm far region picks the hole corner") {
    auto& w = w0();
    int rid = w.ms.region_containing(0, {9.5, 9.5});
    // apex (4,6) [index 5] or (6,4) [index 7], weight sqrt(52)
    CHECK((w.ms.regions[rid].apex == 5 || w.ms.regions[rid].apex == 7));
    CHECK(w.ms.regions[rid].weight == doctest::Approx(std::sqrt(52.0)));
    // brute-force check of the label at that point
    double g = dist(Point{9.5, 9.5}, w.d.vertex(w.ms.regions[rid].apex)) +
               w.ms.regions[rid].weight;
    CHECK(g == doctest::Approx(min_visible_g(w, {9.5, 9.5}, 0)).epsilon(1e-9));
}

TEST_CASE("per-source region count stays linear") {
    for (World* wp : {&w0(), &w1()}) {
        auto& w = *wp;
        for (int v = 0; v < w.d.n(); ++v) {
            double ratio = double(w.ms.by_source[v].size()) / w.d.n();
            CHECK(ratio <= 12.0);
        }
    }
}

TEST_CASE("per-source regions tile the domain by area") {
    for (World* wp : {&w0(), &w1()}) {
        auto& w = *wp;
        double target = w.d.area();
        for (int v = 0; v < w.d.n(); ++v) {
            double total = 0;
            for (int rid : w.ms.by_source[v]) total += w.ms.regions[rid].cell.area();
            CHECK(total == doctest::Approx(target).epsilon(1e-6));
        }
    }
}

TEST_CASE("labels attain the weighted visibility minimum") {
    for (World* wp : {&w0(), &w1()}) {
        auto& w = *wp;
        Rng rng(99);
        for (int v = 0; v < w.d.n(); ++v) {
            for (int k = 0; k < 40; ++k) {
                Point q = w.rand_point(rng);
                int rid = w.ms.region_containing(v, q);
                const auto& r = w.ms.regions[rid];
                double got = dist(q, w.d.vertex(r.apex)) + r.weight;
                double want = min_visible_g(w, q, v);
                CHECK(got == doctest::Approx(want).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("every region sample sees its apex") {
    for (World* wp : {&w0(), &w1()}) {
        auto& w = *wp;
        for (const auto& r : w.ms.regions) {
            CHECK(sees(w.d, r.cell.interior_sample, w.d.vertex(r.apex)));
            CHECK(sees(w.d, r.cell.arcs[1].a, w.d.vertex(r.apex)));
        }
    }
}

TEST_CASE("regions_containing returns one region per source") {
    auto& w = w0();
    auto ids = w.ms.regions_containing({1, 5});
    REQUIRE(ids.size() == 8);
    for (int v = 0; v < 8; ++v) {
        CHECK(w.ms.regions[ids[v]].source == v);
        CHECK(w.ms.regions[ids[v]].cell.contains({1, 5}, 1e-6));
    }
    // vertex query: the region of the vertex's own SPM has apex = the vertex
    auto vid = w.ms.regions_containing({4, 6});
    REQUIRE(vid.size() == 8);
    CHECK(w.ms.regions[vid[5]].apex == 5);
    CHECK(w.ms.regions[vid[5]].weight == 0.0);

    CHECK_THROWS_AS(w.ms.regions_containing({5, 5}), PointOutsideDomain);
}

TEST_CASE("relevant_pairs buckets by source") {
    auto& w = w0();
    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        Point s = w.rand_point(rng), t = w.rand_point(rng);
        auto a = w.ms.regions_containing(s);
        auto b = w.ms.regions_containing(t);
        auto rel = relevant_pairs(w.ms, a, b);
        CHECK(rel.size() == 8);  // one region per source on each side
        for (auto [x, y] : rel) CHECK(w.ms.regions[x].source == w.ms.regions[y].source);
    }
    // disjoint sources
    std::vector<int> a3 = {w.ms.by_source[3][0]};
    std::vector<int> b4 = {w.ms.by_source[4][0]};
    CHECK(relevant_pairs(w.ms, a3, b4).empty());
    std::vector<int> one = {w.ms.by_source[2][0]};
    auto self = relevant_pairs(w.ms, one, one);
    REQUIRE(self.size() == 1);
    CHECK(self[0].first == self[0].second);
}

TEST_CASE("min over relevant pairs is decomposable") {
    auto& w = w0();
    Rng rng(31);
    auto f_eval = [&](int a, int b, Point s, Point t) {
        const auto& ra = w.ms.regions[a];
        const auto& rb = w.ms.regions[b];
        return dist(s, w.d.vertex(ra.apex)) + w.gm.d[ra.apex][rb.apex] +
               dist(w.d.vertex(rb.apex), t);
    };
    auto min_rel = [&](const std::vector<int>& A, const std::vector<int>& B, Point s, Point t) {
        double best = std::numeric_limits<double>::infinity();
        for (auto [a, b] : relevant_pairs(w.ms, A, B)) best = std::min(best, f_eval(a, b, s, t));
        return best;
    };
    for (int rep = 0; rep < 100; ++rep) {
        Point s = w.rand_point(rng), t = w.rand_point(rng);
        auto A = w.ms.regions_containing(s);
        auto B = w.ms.regions_containing(t);
        // random partition of A into two parts, B into three
        std::vector<std::vector<int>> APs(2), BPs(3);
        for (int a : A) APs[rng.index(2)].push_back(a);
        for (int b : B) BPs[rng.index(3)].push_back(b);
        double whole = min_rel(A, B, s, t);
        double parts = std::numeric_limits<double>::infinity();
        for (auto& ap : APs)
            for (auto& bp : BPs) parts = std::min(parts, min_rel(ap, bp, s, t));
        CHECK(whole == parts);  // exact equality: same f evaluations
    }
}

TEST_CASE("spm distance equals the oracle distance to the source") {
    for (World* wp : {&w0(), &w1()}) {
        auto& w = *wp;
        Rng rng(7);
        for (int k = 0; k < 100; ++k) {
            Point q = w.rand_point(rng);
            int v = rng.index(w.d.n());
            int rid = w.ms.region_containing(v, q);
            const auto& r = w.ms.regions[rid];
            double via_spm = dist(q, w.d.vertex(r.apex)) + r.weight;
            auto oracle = oracle_distance(w.d, w.vg, w.gm, q, w.d.vertex(v));
            CHECK(via_spm == doctest::Approx(oracle.distance).epsilon(1e-9));
        }
    }
}
