#include "geopath/domain.hpp"

#include <algorithm>
#include <cmath>

#include "geopath/rng.hpp"
#include "json.hpp"

namespace geopath {

double signed_area(const std::vector<Point>& ring) {
    double s = 0;
    for (size_t i = 0; i < ring.size(); ++i) {
        Point a = ring[i], b = ring[(i + 1) % ring.size()];
        s += cross(a, b);
    }
    return s / 2;
}

namespace {

bool point_in_ring(Point p, const std::vector<Point>& ring) {
    bool in = false;
    for (size_t i = 0; i < ring.size(); ++i) {
        Point a = ring[i], b = ring[(i + 1) % ring.size()];
        if ((a.y > p.y) != (b.y > p.y)) {
            int o = orient(a, b, p);
            if (b.y > a.y ? o > 0 : o < 0) in = !in;
        }
    }
    return in;
}

double dist_point_segment(Point p, const Segment& s) {
    Point d = s.b - s.a;
    double dd = dot(d, d);
    if (dd == 0) return dist(p, s.a);
    double t = std::clamp(dot(p - s.a, d) / dd, 0.0, 1.0);
    return dist(p, s.a + t * d);
}

double dist_segments(const Segment& s, const Segment& t) {
    if (segments_intersect(s, t, IntersectMode::closed)) return 0;
    return std::min(std::min(dist_point_segment(s.a, t), dist_point_segment(s.b, t)),
                    std::min(dist_point_segment(t.a, s), dist_point_segment(t.b, s)));
}

}  // namespace

PolygonalDomain::PolygonalDomain(std::vector<Point> outer, std::vector<std::vector<Point>> holes)
    : outer_(std::move(outer)), holes_(std::move(holes)) {
    ring_offset_.push_back(0);
    for (auto p : outer_) verts_.push_back(p);
    for (auto& hole : holes_) {
        ring_offset_.push_back(static_cast<int>(verts_.size()));
        for (auto p : hole) verts_.push_back(p);
    }
    n_ = static_cast<int>(verts_.size());
    if (!verts_.empty()) bbox_ = bbox_of(verts_);

    for (int c = 0; c < cycles(); ++c) {
        const auto& r = ring(c);
        std::vector<double> pre{0.0};
        for (size_t i = 0; i < r.size(); ++i) {
            Point a = r[i], b = r[(i + 1) % r.size()];
            edges_.push_back({Segment{a, b}, c, static_cast<int>(i)});
            pre.push_back(pre.back() + dist(a, b));
        }
        prefix_.push_back(std::move(pre));
    }

    reflex_.assign(n_, false);
    for (int c = 0; c < cycles(); ++c) {
        const auto& r = ring(c);
        int m = static_cast<int>(r.size());
        for (int i = 0; i < m; ++i) {
            Point prev = r[(i + m - 1) % m], cur = r[i], next = r[(i + 1) % m];
            reflex_[vertex_index(c, i)] = orient(prev, cur, next) < 0;
        }
    }
}

std::pair<int, int> PolygonalDomain::vertex_cycle(int v) const {
    int c = 0;
    while (c + 1 < cycles() && ring_offset_[c + 1] <= v) ++c;
    return {c, v - ring_offset_[c]};
}

Location PolygonalDomain::contains(Point p) const {
    for (const auto& e : edges_)
        if (point_on_segment(p, e.seg)) return Location::boundary;
    // points within curve tolerance of an edge count as boundary: computed
    // contact points land an ulp off the exact segment
    const double t = tol();
    for (const auto& e : edges_)
        if (dist_point_segment(p, e.seg) <= t) return Location::boundary;
    if (!point_in_ring(p, outer_)) return Location::exterior;
    for (const auto& hole : holes_)
        if (point_in_ring(p, hole)) return Location::exterior;
    return Location::interior;
}

double PolygonalDomain::area() const {
    double a = signed_area(outer_);
    for (const auto& hole : holes_) a += signed_area(hole);  // holes are CW, negative
    return a;
}

double PolygonalDomain::boundary_param(const BoundaryPoint& bp) const {
    const auto& pre = prefix_[bp.cycle];
    double elen = pre[bp.edge + 1] - pre[bp.edge];
    return pre[bp.edge] + bp.fraction * elen;
}

BoundaryPoint PolygonalDomain::boundary_at(int cycle, double param) const {
    const auto& pre = prefix_[cycle];
    double len = pre.back();
    param = std::fmod(param, len);
    if (param < 0) param += len;
    auto it = std::upper_bound(pre.begin(), pre.end(), param);
    int edge = static_cast<int>(it - pre.begin()) - 1;
    edge = std::clamp(edge, 0, static_cast<int>(pre.size()) - 2);
    double elen = pre[edge + 1] - pre[edge];
    BoundaryPoint bp;
    bp.cycle = cycle;
    bp.edge = edge;
    bp.fraction = elen > 0 ? std::clamp((param - pre[edge]) / elen, 0.0, 1.0) : 0.0;
    if (bp.fraction >= 1.0) {
        bp.edge = (edge + 1) % static_cast<int>(ring(cycle).size());
        bp.fraction = 0.0;
    }
    bp.point = boundary_eval(bp);
    return bp;
}

BoundaryPoint PolygonalDomain::boundary_locate(Point p) const {
    const PolygonalDomain::Edge* best = nullptr;
    double bestd = tol();
    for (const auto& e : edges_) {
        if (point_on_segment(p, e.seg)) {
            best = &e;
            bestd = 0;
            break;
        }
        double d = dist_point_segment(p, e.seg);
        if (d < bestd) {
            bestd = d;
            best = &e;
        }
    }
    if (!best) throw NotOnBoundary("point is not on the domain boundary");
    Point d = best->seg.b - best->seg.a;
    double dd = dot(d, d);
    double f = dd > 0 ? std::clamp(dot(p - best->seg.a, d) / dd, 0.0, 1.0) : 0.0;
    BoundaryPoint bp;
    bp.cycle = best->cycle;
    bp.edge = best->index;
    bp.fraction = f;
    if (bp.fraction >= 1.0) {
        bp.edge = (bp.edge + 1) % static_cast<int>(ring(bp.cycle).size());
        bp.fraction = 0.0;
    }
    bp.point = boundary_eval(bp);
    return bp;
}

Point PolygonalDomain::boundary_eval(const BoundaryPoint& bp) const {
    const auto& r = ring(bp.cycle);
    Point a = r[bp.edge], b = r[(bp.edge + 1) % r.size()];
    return (1 - bp.fraction) * a + bp.fraction * b;
}

std::string PolygonalDomain::to_json() const {
    nlohmann::json j;
    auto ring_to_json = [](const std::vector<Point>& r) {
        nlohmann::json arr = nlohmann::json::array();
        for (auto p : r) arr.push_back({p.x, p.y});
        return arr;
    };
    j["outer"] = ring_to_json(outer_);
    j["holes"] = nlohmann::json::array();
    for (const auto& hole : holes_) j["holes"].push_back(ring_to_json(hole));
    return j.dump(2) + "\n";
}

PolygonalDomain PolygonalDomain::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    auto ring_from = [](const nlohmann::json& arr) {
        std::vector<Point> r;
        for (const auto& p : arr) r.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        return r;
    };
    std::vector<Point> outer = ring_from(j.at("outer"));
    std::vector<std::vector<Point>> holes;
    if (j.contains("holes"))
        for (const auto& hole : j["holes"]) holes.push_back(ring_from(hole));
    return PolygonalDomain(std::move(outer), std::move(holes));
}

std::vector<Violation> validate(const PolygonalDomain& d) {
    std::vector<Violation> out;
    for (int c = 0; c < d.cycles(); ++c) {
        const auto& r = d.ring(c);
        int m = static_cast<int>(r.size());
        if (m < 3) {
            out.push_back({"ring has fewer than 3 vertices", c, -1});
            continue;
        }
        for (int i = 0; i < m; ++i)
            if (r[i] == r[(i + 1) % m]) out.push_back({"degenerate zero-length edge", c, i});
        double sa = signed_area(r);
        if (c == 0 && sa <= 0) out.push_back({"outer ring is not counterclockwise", c, -1});
        if (c > 0 && sa >= 0) out.push_back({"hole ring is not clockwise", c, -1});
        // simplicity within the ring
        for (int i = 0; i < m; ++i) {
            Segment si{r[i], r[(i + 1) % m]};
            for (int k = i + 1; k < m; ++k) {
                Segment sk{r[k], r[(k + 1) % m]};
                bool adjacent = (k == i + 1) || (i == 0 && k == m - 1);
                if (adjacent) {
                    if (segments_intersect(si, sk, IntersectMode::open))
                        out.push_back({"adjacent edges overlap", c, i});
                } else if (segments_intersect(si, sk, IntersectMode::closed)) {
                    out.push_back({"ring is not simple", c, i});
                }
            }
        }
    }
    // rings pairwise disjoint (no intersection or touching)
    for (size_t i = 0; i < d.edges().size(); ++i) {
        for (size_t k = i + 1; k < d.edges().size(); ++k) {
            const auto& a = d.edges()[i];
            const auto& b = d.edges()[k];
            if (a.cycle == b.cycle) continue;
            if (segments_intersect(a.seg, b.seg, IntersectMode::closed))
                out.push_back({"rings intersect or touch", a.cycle, a.index});
        }
    }
    // holes strictly inside the outer ring and outside each other
    for (int c = 1; c < d.cycles(); ++c) {
        const auto& r = d.ring(c);
        bool bad = false;
        for (auto p : r)
            if (!point_in_ring(p, d.outer())) bad = true;
        if (bad) out.push_back({"hole is not inside the outer ring", c, -1});
        for (int c2 = 1; c2 < d.cycles(); ++c2) {
            if (c2 == c) continue;
            for (auto p : r)
                if (point_in_ring(p, d.ring(c2))) {
                    out.push_back({"hole lies inside another hole", c, -1});
                    break;
                }
        }
    }
    return out;
}

namespace {

std::vector<Point> star_polygon(Rng& rng, Point center, double rmin, double rmax, int m) {
    // jittered regular angles: consecutive gaps stay within [0.5, 1.5] of the average
    double phase = rng.uniform(0, 2 * M_PI);
    double step = 2 * M_PI / m;
    std::vector<Point> ring(m);
    for (int i = 0; i < m; ++i) {
        double a = phase + (i + 0.25 + 0.5 * rng.uniform()) * step;
        double r = rng.uniform(rmin, rmax);
        ring[i] = {center.x + r * std::cos(a), center.y + r * std::sin(a)};
    }
    return ring;  // CCW: angles strictly increasing
}

}  // namespace

PolygonalDomain generate(uint64_t seed, int n_target, int h_target) {
    if (n_target < 3 + 3 * h_target || h_target < 0)
        throw GenerationFailed("infeasible vertex budget: need n >= 3 + 3h");

    for (int round = 0; round < 24; ++round) {
        Rng rng(Rng::mix(seed, round));
        // split the vertex budget
        std::vector<int> hole_sizes(h_target, 3);
        int n_outer = 3;
        int spare = n_target - 3 - 3 * h_target;
        for (int i = 0; i < spare; ++i) {
            bool to_outer = h_target == 0 || rng.uniform() < 0.62;
            if (!to_outer) {
                int k = rng.index(h_target);
                if (hole_sizes[k] < 9) {
                    ++hole_sizes[k];
                    continue;
                }
            }
            ++n_outer;
        }

        const double R = 10.0;
        std::vector<Point> outer = star_polygon(rng, {0, 0}, 0.55 * R, R, n_outer);

        const double margin = 0.03 * R;
        std::vector<std::vector<Point>> holes;
        bool ok = true;
        for (int hi = 0; hi < h_target && ok; ++hi) {
            int hs = hole_sizes[hi];
            bool placed = false;
            for (int attempt = 0; attempt < 600 && !placed; ++attempt) {
                Point c{rng.uniform(-0.8 * R, 0.8 * R), rng.uniform(-0.8 * R, 0.8 * R)};
                double hr = rng.uniform(0.05 * R, 0.14 * R);
                std::vector<Point> hole = star_polygon(rng, c, 0.5 * hr, hr, hs);
                std::reverse(hole.begin(), hole.end());  // CW
                // clearance against the outer ring and previous holes
                bool clear = true;
                for (auto p : hole)
                    if (!point_in_ring(p, outer)) clear = false;
                for (size_t i = 0; i < hole.size() && clear; ++i) {
                    Segment he{hole[i], hole[(i + 1) % hole.size()]};
                    for (size_t k = 0; k < outer.size() && clear; ++k) {
                        Segment oe{outer[k], outer[(k + 1) % outer.size()]};
                        if (dist_segments(he, oe) < margin) clear = false;
                    }
                    for (const auto& other : holes) {
                        for (size_t k = 0; k < other.size() && clear; ++k) {
                            Segment oe{other[k], other[(k + 1) % other.size()]};
                            if (dist_segments(he, oe) < margin) clear = false;
                        }
                        if (clear) {
                            // reject nesting
                            if (point_in_ring(hole[0], other) || point_in_ring(other[0], hole))
                                clear = false;
                        }
                    }
                }
                if (!clear) continue;
                holes.push_back(std::move(hole));
                placed = true;
            }
            if (!placed) ok = false;
        }
        if (!ok) continue;

        PolygonalDomain d(std::move(outer), std::move(holes));
        if (validate(d).empty()) return d;
    }
    throw GenerationFailed("retry budget exhausted");
}

}  // namespace geopath
