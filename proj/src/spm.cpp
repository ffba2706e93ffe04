#include "geopath/spm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace geopath {

namespace {

struct Shadow {
    Point from, to;  // clipped ray from a reflex vertex away from an apex
};

// first boundary hit of the ray r + t*u, t > eps; nullopt if it escapes
std::optional<Point> ray_shoot(const PolygonalDomain& dom, Point r, Point u, double eps) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : dom.edges()) {
        Point d = e.seg.b - e.seg.a;
        double den = cross(u, d);
        if (den == 0) continue;
        double t = cross(e.seg.a - r, d) / den;
        double s = cross(e.seg.a - r, u) / den;
        if (t > eps && s >= -1e-12 && s <= 1 + 1e-12) best = std::min(best, t);
    }
    if (!std::isfinite(best)) return std::nullopt;
    return r + best * u;
}

std::optional<Shadow> shadow_ray(const PolygonalDomain& dom, int reflex_v, Point apex_pos) {
    Point r = dom.vertex(reflex_v);
    double len = dist(r, apex_pos);
    if (len == 0) return std::nullopt;
    Point u = (1.0 / len) * (r - apex_pos);
    auto hit = ray_shoot(dom, r, u, 1e-9 * (1 + dom.diameter()));
    if (!hit) return std::nullopt;
    Point mid = 0.5 * (r + *hit);
    if (dom.contains(mid) == Location::exterior) return std::nullopt;
    if (dist(r, *hit) < dom.tol()) return std::nullopt;
    return Shadow{r, *hit};
}

// per-source construction state
struct Builder {
    const PolygonalDomain& dom;
    const VisibilityGraph& vg;
    const GeodesicMatrix& gm;
    const SeesIndex& si;
    int source;
    double tol;
    BBox box;

    std::vector<int> apexes;        // source + reflex vertices
    std::vector<double> apex_g_buf;  // scratch
    TrapMap map;
    std::vector<int> label;      // per cell: apex vertex index or -1
    std::vector<bool> cell_in_p;
    std::vector<char> cell_interior;  // sample strictly interior
    std::set<std::pair<int, int>> bisector_pairs;
    int ambiguous = 0;

    Builder(const PolygonalDomain& d, const VisibilityGraph& v, const GeodesicMatrix& g,
            const SeesIndex& s, int src)
        : dom(d), vg(v), gm(g), si(s), source(src), tol(d.tol()),
          box(d.bounds().inflated(0.10)), map(TrapMap::over_box(box, d.tol())) {}

    double weight(int w) const { return gm.d[w][source]; }

    // apex attaining min_{w visible from q} |q w| + d(w, source); q must be in P
    int label_at(Point q, bool count_ties, bool interior = true) {
        struct Cand {
            double g;
            int w;
        };
        std::vector<Cand> cands;
        cands.reserve(apexes.size());
        for (int w : apexes) cands.push_back({dist(q, dom.vertex(w)) + weight(w), w});
        std::sort(cands.begin(), cands.end(),
                  [](const Cand& a, const Cand& b) { return a.g < b.g || (a.g == b.g && a.w < b.w); });
        auto visible = [&](Point target) {
            return interior ? si.sees_from_inside(q, target) : si.sees(q, target);
        };
        for (size_t i = 0; i < cands.size(); ++i) {
            if (!visible(dom.vertex(cands[i].w))) continue;
            if (count_ties) {
                double reltol = 1e-9 * (1 + cands[i].g);
                for (size_t k = i + 1; k < cands.size() && cands[k].g <= cands[i].g + reltol; ++k)
                    if (visible(dom.vertex(cands[k].w))) {
                        ++ambiguous;
                        break;
                    }
            }
            return cands[i].w;
        }
        return -1;  // unreachable in a connected domain
    }

    void seed_curves() {
        for (const auto& e : dom.edges()) map.insert_curve(ConicArc::segment_arc(e.seg.a, e.seg.b));
        // predecessor windows: the visibility-type SPM edges
        for (int r = 0; r < dom.n(); ++r) {
            if (!dom.reflex(r)) continue;
            double dr = gm.d[r][source];
            for (int w : apexes) {
                if (w == r || !vg.adj[r][w]) continue;
                if (dist(dom.vertex(r), dom.vertex(w)) + weight(w) > dr + tol * (1 + dr)) continue;
                if (auto sh = shadow_ray(dom, r, dom.vertex(w)))
                    map.insert_curve(ConicArc::segment_arc(sh->from, sh->to));
            }
        }
    }

    // refresh labels for cells created since the last pass
    void label_new_cells() {
        size_t old = label.size();
        label.resize(map.cells().size(), -2);
        cell_in_p.resize(map.cells().size(), false);
        cell_interior.resize(map.cells().size(), 0);
        for (size_t cid = old; cid < map.cells().size(); ++cid) {
            Point q = map.cell_sample(static_cast<int>(cid));
            Location loc = dom.contains(q);
            cell_in_p[cid] = loc != Location::exterior;
            cell_interior[cid] = loc == Location::interior ? 1 : 0;
            label[cid] = cell_in_p[cid] ? label_at(q, true, cell_interior[cid] != 0) : -1;
        }
    }

    // probe points spread through a cell (corners pulled toward the sample)
    std::vector<Point> cell_probes(int cid) const {
        const TrapCell& c = map.cells()[cid];
        Point s = map.cell_sample(cid);
        std::vector<Point> raw{{c.lx, map.ybot(cid, c.lx)}, {c.lx, map.ytop(cid, c.lx)},
                               {c.rx, map.ybot(cid, c.rx)}, {c.rx, map.ytop(cid, c.rx)},
                               {(c.lx + c.rx) / 2, map.ybot(cid, (c.lx + c.rx) / 2)},
                               {(c.lx + c.rx) / 2, map.ytop(cid, (c.lx + c.rx) / 2)}};
        std::vector<Point> out;
        for (auto p : raw) {
            Point q = p + 0.25 * (s - p);
            if (map.cell_contains(cid, q, -map.tol())) out.push_back(q);
        }
        return out;
    }

    void add_pair(int w1, int w2, std::set<std::pair<int, int>>& fresh) {
        if (w1 < 0 || w2 < 0 || w1 == w2) return;
        auto key = std::minmax(w1, w2);
        if (bisector_pairs.count({key.first, key.second})) return;
        fresh.insert({key.first, key.second});
    }

    // true geodesic distance to the source at q (min over visible apexes)
    double g_min(Point q) {
        struct Cand {
            double g;
            int w;
        };
        std::vector<Cand> cands;
        cands.reserve(apexes.size());
        for (int w : apexes) cands.push_back({dist(q, dom.vertex(w)) + weight(w), w});
        std::sort(cands.begin(), cands.end(),
                  [](const Cand& a, const Cand& b) { return a.g < b.g || (a.g == b.g && a.w < b.w); });
        for (const auto& c : cands)
            if (si.sees(q, dom.vertex(c.w))) return c.g;
        return std::numeric_limits<double>::infinity();
    }

    // Does the sub-piece [ta,tb] carry a lower-envelope point of g_{w1}?
    // g_{w1} and the true distance are both 1-Lipschitz along the arc, so a
    // probe with gap = g_{w1} - d_true rules out envelope points within
    // (gap - margin)/2 of arc length; walk until a low-gap probe or the end.
    bool envelope_touch(const ConicArc& piece, double ta, double tb, Point p1, double d1,
                        double margin) {
        double t = ta;
        for (int guard = 0; guard < 4096; ++guard) {
            Point xi = piece.point_at(t);
            double gap = (dist(xi, p1) + d1) - g_min(xi);
            if (gap <= margin) return true;
            if (t >= tb) return false;
            double speed = std::max(norm(piece.tangent_at(t)), 1e-12);
            double step = std::max((gap - margin) / 2 / speed, (tb - ta) / 1024);
            // guard against speed growth along the step
            double nt = std::min(t + step, tb);
            double chord = dist(piece.point_at(nt), xi);
            if (chord > 1.2 * (gap - margin) / 2) nt = std::min(t + step / 2, tb);
            t = (nt <= t) ? tb : nt;
        }
        return true;  // give up pruning; keeping the piece is always safe
    }

    // insert the lower-envelope-relevant parts of the bisector of (w1, w2)
    void insert_bisector(int w1, int w2) {
        Point p1 = dom.vertex(w1), p2 = dom.vertex(w2);
        double d1 = weight(w1), d2 = weight(w2);
        double f2 = dist(p1, p2);
        if (std::abs(d1 - d2) >= f2 - 1e-12 * (1 + f2)) return;  // ray case: already a window
        const double margin = 64 * tol;
        std::vector<ConicArc> cutters;
        for (const auto& e : dom.edges()) cutters.push_back(ConicArc::segment_arc(e.seg.a, e.seg.b));
        for (const auto& piece : bisector_pieces(p1, d1, p2, d2, box)) {
            std::vector<double> cuts;
            double plo = piece.kind == ArcKind::segment ? 0.0 : piece.t0;
            double phi = piece.kind == ArcKind::segment ? 1.0 : piece.t1;
            cuts.push_back(plo);
            cuts.push_back(phi);
            for (const auto& cut : cutters) {
                auto res = arc_arc_intersections(piece, cut, tol);
                for (auto p : res.points) cuts.push_back(piece.param_of(p));
                for (auto p : res.touches) cuts.push_back(piece.param_of(p));
            }
            std::sort(cuts.begin(), cuts.end());
            for (size_t i = 0; i + 1 < cuts.size(); ++i) {
                double ta = std::clamp(cuts[i], plo, phi), tb = std::clamp(cuts[i + 1], plo, phi);
                if (tb - ta < 1e-12) continue;
                Point mid = piece.point_at((ta + tb) / 2);
                if (dom.contains(mid) == Location::exterior) continue;
                if (!envelope_touch(piece, ta, tb, p1, d1, margin)) continue;
                map.insert_curve(piece.subarc(ta, tb));
            }
        }
    }

    // every apex pair is a candidate; the envelope walk discards the inert ones
    void insert_all_bisectors() {
        for (size_t i = 0; i < apexes.size(); ++i)
            for (size_t k = i + 1; k < apexes.size(); ++k) {
                bisector_pairs.insert({std::min(apexes[i], apexes[k]), std::max(apexes[i], apexes[k])});
                insert_bisector(apexes[i], apexes[k]);
            }
    }

    // apex pairs of adjacent alive cells with different labels; any such
    // boundary must be carried by a real SPM edge, so the pair's bisector
    // belongs in the arrangement
    void adjacent_label_pairs(std::set<std::pair<int, int>>& fresh) {
        auto alive = map.alive_cells();
        std::map<double, std::vector<int>> by_rx, by_lx;
        std::map<int, std::vector<int>> by_top, by_bot;
        for (int cid : alive) {
            by_rx[map.cells()[cid].rx].push_back(cid);
            by_lx[map.cells()[cid].lx].push_back(cid);
            by_top[map.cells()[cid].top].push_back(cid);
            by_bot[map.cells()[cid].bottom].push_back(cid);
        }
        for (auto& [x, lefts] : by_rx) {
            auto it = by_lx.find(x);
            if (it == by_lx.end()) continue;
            for (int a : lefts) {
                if (label[a] < 0) continue;
                for (int c : it->second) {
                    if (label[c] < 0 || label[c] == label[a]) continue;
                    double lo = std::max(map.ybot(a, x), map.ybot(c, x));
                    double hi = std::min(map.ytop(a, x), map.ytop(c, x));
                    if (hi - lo > tol) add_pair(label[a], label[c], fresh);
                }
            }
        }
        for (auto& [aid, lows] : by_top) {
            auto it = by_bot.find(aid);
            if (it == by_bot.end()) continue;
            for (int a : lows) {
                if (label[a] < 0) continue;
                for (int c : it->second) {
                    if (label[c] < 0 || label[c] == label[a]) continue;
                    double xl = std::max(map.cells()[a].lx, map.cells()[c].lx);
                    double xr = std::min(map.cells()[a].rx, map.cells()[c].rx);
                    if (xr - xl > tol) add_pair(label[a], label[c], fresh);
                }
            }
        }
    }

    void run_fixpoint() {
        size_t probed_upto = 0;
        const int max_rounds = 12 + 4 * dom.n();
        for (int round = 0; round < max_rounds; ++round) {
            label_new_cells();
            std::set<std::pair<int, int>> fresh;
            // disagreement probes on cells not yet examined
            for (size_t cid = probed_upto; cid < map.cells().size(); ++cid) {
                if (!map.cells()[cid].alive || !cell_in_p[cid] || label[cid] < 0) continue;
                for (auto q : cell_probes(static_cast<int>(cid))) {
                    int lq = label_at(q, false, cell_interior[cid] != 0);
                    if (lq != label[cid]) add_pair(lq, label[cid], fresh);
                }
            }
            probed_upto = map.cells().size();
            adjacent_label_pairs(fresh);
            // apex-neighborhood probes: every nonempty region touches its apex,
            // and fresh territory opens just past a window, so bracket those too
            std::vector<Point> probes;
            double base = 1 + dom.diameter();
            for (int w : apexes) {
                Point wp = dom.vertex(w);
                for (double rho : {1e-5 * base, 1e-3 * base, 6e-3 * base})
                    for (int k = 0; k < 24; ++k) {
                        double a = 2 * M_PI * (k + 0.5) / 24;
                        probes.push_back({wp.x + rho * std::cos(a), wp.y + rho * std::sin(a)});
                    }
            }
            for (int r = 0; r < dom.n(); ++r) {
                if (!dom.reflex(r)) continue;
                double dr = gm.d[r][source];
                Point rp = dom.vertex(r);
                for (int w : apexes) {
                    if (w == r || !vg.adj[r][w]) continue;
                    if (dist(rp, dom.vertex(w)) + weight(w) > dr + tol * (1 + dr)) continue;
                    Point u = rp - dom.vertex(w);
                    double len = norm(u);
                    if (len == 0) continue;
                    u = (1.0 / len) * u;
                    for (double ang : {-0.1, -0.02, -2e-3, 2e-3, 0.02, 0.1}) {
                        double ca = std::cos(ang), sa = std::sin(ang);
                        Point ru{u.x * ca - u.y * sa, u.x * sa + u.y * ca};
                        for (double rho : {1e-4 * base, 2e-3 * base, 1e-2 * base})
                            probes.push_back(rp + rho * ru);
                    }
                }
            }
            for (auto q : probes) {
                if (dom.contains(q) != Location::interior) continue;
                int lq = label_at(q, false);
                int cid = map.locate(q);
                if (label[cid] == -2) continue;  // freshly split; next round covers it
                if (lq != label[cid]) add_pair(lq, label[cid], fresh);
            }
            if (fresh.empty()) return;
            for (auto [w1, w2] : fresh) {
                bisector_pairs.insert({w1, w2});
                insert_bisector(w1, w2);
            }
        }
        throw Error("build_spm: labeling did not converge");
    }
};

struct SidePiece {
    // a boundary piece of a merged component: either a vertical wall piece or
    // a sub-arc of a map arc
    bool vertical;
    double x, ylo, yhi;   // vertical
    int arc;              // non-vertical: map arc id
    double xl, xr;
};

}  // namespace

std::vector<SpmRegion> build_spm(const PolygonalDomain& dom, const VisibilityGraph& vg,
                                 const GeodesicMatrix& gm, const SeesIndex& si, int source,
                                 SourceSpm* out_spm) {
    Builder b(dom, vg, gm, si, source);
    b.apexes.push_back(source);
    for (int v = 0; v < dom.n(); ++v)
        if (v != source && dom.reflex(v)) b.apexes.push_back(v);
    std::sort(b.apexes.begin(), b.apexes.end());

    b.seed_curves();
    b.insert_all_bisectors();
    b.run_fixpoint();

    TrapMap& map = b.map;
    const double tol = b.tol;

    // merge same-label neighbors into SPM' components
    std::vector<int> parent(map.cells().size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int c) { parent[find(a)] = find(c); };

    auto alive = map.alive_cells();
    // wall adjacency: group by shared wall x
    {
        std::map<double, std::vector<int>> by_rx, by_lx;
        for (int cid : alive) {
            by_rx[map.cells()[cid].rx].push_back(cid);
            by_lx[map.cells()[cid].lx].push_back(cid);
        }
        for (auto& [x, rcells] : by_rx) {
            auto it = by_lx.find(x);
            if (it == by_lx.end()) continue;
            for (int a : rcells)
                for (int c : it->second) {
                    if (b.label[a] < 0 || b.label[a] != b.label[c]) continue;
                    double lo = std::max(map.ybot(a, x), map.ybot(c, x));
                    double hi = std::min(map.ytop(a, x), map.ytop(c, x));
                    if (hi - lo > tol) unite(a, c);
                }
        }
    }
    // arc adjacency: same arc as top of one and bottom of the other
    {
        std::map<int, std::vector<int>> by_top, by_bot;
        for (int cid : alive) {
            by_top[map.cells()[cid].top].push_back(cid);
            by_bot[map.cells()[cid].bottom].push_back(cid);
        }
        for (auto& [aid, lows] : by_top) {
            auto it = by_bot.find(aid);
            if (it == by_bot.end()) continue;
            for (int a : lows)
                for (int c : it->second) {
                    if (b.label[a] < 0 || b.label[a] != b.label[c]) continue;
                    double xl = std::max(map.cells()[a].lx, map.cells()[c].lx);
                    double xr = std::min(map.cells()[a].rx, map.cells()[c].rx);
                    if (xr - xl > tol) unite(a, c);
                }
        }
    }

    // boundary sides per component
    std::map<int, std::vector<SidePiece>> comp_sides;
    {
        std::map<double, std::vector<int>> by_rx, by_lx;
        std::map<int, std::vector<int>> by_top, by_bot;
        for (int cid : alive) {
            by_rx[map.cells()[cid].rx].push_back(cid);
            by_lx[map.cells()[cid].lx].push_back(cid);
            by_top[map.cells()[cid].top].push_back(cid);
            by_bot[map.cells()[cid].bottom].push_back(cid);
        }
        auto subtract = [&](double lo, double hi, const std::vector<std::pair<double, double>>& cover,
                            std::vector<std::pair<double, double>>& out) {
            // out += [lo,hi] minus the union of cover
            std::vector<std::pair<double, double>> cov = cover;
            std::sort(cov.begin(), cov.end());
            double cur = lo;
            for (auto [a, c] : cov) {
                if (c <= cur) continue;
                if (a > cur) out.push_back({cur, std::min(a, hi)});
                cur = std::max(cur, c);
                if (cur >= hi) break;
            }
            if (cur < hi) out.push_back({cur, hi});
        };
        for (int cid : alive) {
            if (b.label[cid] < 0) continue;
            int comp = find(cid);
            const TrapCell& c = map.cells()[cid];
            // vertical sides
            for (int side = 0; side < 2; ++side) {
                double x = side == 0 ? c.lx : c.rx;
                double ylo = map.ybot(cid, x), yhi = map.ytop(cid, x);
                if (yhi - ylo <= tol) continue;
                std::vector<std::pair<double, double>> cover;
                auto& others = side == 0 ? by_rx[x] : by_lx[x];
                for (int o : others) {
                    if (find(o) != comp || b.label[o] != b.label[cid]) continue;
                    double lo = std::max(ylo, map.ybot(o, x)), hi = std::min(yhi, map.ytop(o, x));
                    if (hi - lo > 0) cover.push_back({lo, hi});
                }
                std::vector<std::pair<double, double>> rest;
                subtract(ylo, yhi, cover, rest);
                for (auto [lo, hi] : rest)
                    if (hi - lo > tol) comp_sides[comp].push_back({true, x, lo, hi, -1, 0, 0});
            }
            // top/bottom sides
            for (int side = 0; side < 2; ++side) {
                int aid = side == 0 ? c.bottom : c.top;
                auto& others = side == 0 ? by_top[aid] : by_bot[aid];
                std::vector<std::pair<double, double>> cover;
                for (int o : others) {
                    if (find(o) != comp || b.label[o] != b.label[cid]) continue;
                    double xl = std::max(c.lx, map.cells()[o].lx), xr = std::min(c.rx, map.cells()[o].rx);
                    if (xr - xl > 0) cover.push_back({xl, xr});
                }
                std::vector<std::pair<double, double>> rest;
                subtract(c.lx, c.rx, cover, rest);
                for (auto [xl, xr] : rest)
                    if (xr - xl > tol) comp_sides[comp].push_back({false, 0, 0, 0, aid, xl, xr});
            }
        }
    }

    // coalesce collinear pieces, then fan each component from its apex
    std::vector<SpmRegion> out;
    std::vector<std::vector<int>> comp_regions_local;
    std::map<int, int> comp_index;
    for (auto& [comp, sides] : comp_sides) {
        int apex = b.label[find(comp)];
        Point apex_pos = dom.vertex(apex);

        // merge vertical pieces sharing x, and arc pieces sharing the arc
        std::map<double, std::vector<std::pair<double, double>>> verts;
        std::map<int, std::vector<std::pair<double, double>>> arcs;
        for (const auto& s : sides) {
            if (s.vertical)
                verts[s.x].push_back({s.ylo, s.yhi});
            else
                arcs[s.arc].push_back({s.xl, s.xr});
        }
        auto merge_intervals = [](std::vector<std::pair<double, double>>& v, double eps) {
            std::sort(v.begin(), v.end());
            std::vector<std::pair<double, double>> out;
            for (auto [a, c] : v) {
                if (!out.empty() && a <= out.back().second + eps)
                    out.back().second = std::max(out.back().second, c);
                else
                    out.push_back({a, c});
            }
            v = out;
        };

        std::vector<ConicArc> pieces;
        for (auto& [x, iv] : verts) {
            merge_intervals(iv, tol);
            for (auto [lo, hi] : iv) pieces.push_back(ConicArc::segment_arc({x, lo}, {x, hi}));
        }
        for (auto& [aid, iv] : arcs) {
            merge_intervals(iv, tol);
            const ConicArc& geo = map.arc(aid).geo;
            for (auto [xl, xr] : iv) {
                if (geo.kind == ArcKind::segment) {
                    if (geo.a.x == geo.b.x) continue;  // walls already covered
                    double t0 = (xl - geo.a.x) / (geo.b.x - geo.a.x);
                    double t1 = (xr - geo.a.x) / (geo.b.x - geo.a.x);
                    pieces.push_back(geo.subarc(t0, t1));
                } else {
                    auto p0 = geo.params_at_x(xl);
                    auto p1 = geo.params_at_x(xr);
                    if (p0.empty() || p1.empty()) continue;
                    pieces.push_back(geo.subarc(p0.front(), p1.front()));
                }
            }
        }

        std::vector<int> rids;
        for (const auto& piece : pieces) {
            auto fan = TarskiCell::fan(apex_pos, piece, tol);
            if (fan.side_sign == 0) continue;  // radial sliver
            if (!fan.contains(fan.interior_sample, tol)) continue;
            SpmRegion r;
            r.source = source;
            r.apex = apex;
            r.weight = b.weight(apex);
            r.cell = std::move(fan);
            rids.push_back(static_cast<int>(out.size()));
            out.push_back(std::move(r));
        }
        comp_index[comp] = static_cast<int>(comp_regions_local.size());
        comp_regions_local.push_back(std::move(rids));
    }

    if (out_spm) {
        out_spm->source = source;
        out_spm->cell_label.assign(map.cells().size(), -1);
        out_spm->cell_component.assign(map.cells().size(), -1);
        for (int cid : alive) {
            out_spm->cell_label[cid] = b.label[cid];
            if (b.label[cid] >= 0) {
                auto it = comp_index.find(find(cid));
                if (it != comp_index.end()) out_spm->cell_component[cid] = it->second;
            }
        }
        out_spm->component_regions = comp_regions_local;  // ids are local here; fixed by caller
        out_spm->ambiguous_labels = b.ambiguous;
        out_spm->map = std::make_unique<TrapMap>(std::move(b.map));
    }
    return out;
}

RegionMultiset build_region_multiset(const PolygonalDomain& dom, const VisibilityGraph& vg,
                                     const GeodesicMatrix& gm, const SeesIndex& si) {
    RegionMultiset ms;
    ms.dom = &dom;
    ms.by_source.resize(dom.n());
    ms.spms.resize(dom.n());
    for (int v = 0; v < dom.n(); ++v) {
        auto regs = build_spm(dom, vg, gm, si, v, &ms.spms[v]);
        int base = ms.size();
        for (auto& r : regs) {
            r.id = static_cast<int>(ms.regions.size());
            ms.by_source[v].push_back(r.id);
            ms.regions.push_back(std::move(r));
        }
        for (auto& rids : ms.spms[v].component_regions)
            for (auto& rid : rids) rid += base;
    }
    return ms;
}

int RegionMultiset::region_containing(int source, Point p) const {
    const SourceSpm& s = spms[source];
    double tol = dom->tol();
    int cid = -1;
    try {
        cid = s.map->locate(p);
    } catch (const OutsideBoundingBox&) {
        cid = -1;
    }
    if (cid >= 0 && s.cell_component[cid] >= 0) {
        const auto& rids = s.component_regions[s.cell_component[cid]];
        int best = -1;
        for (int rid : rids)
            if (regions[rid].cell.contains(p, tol)) {
                best = rid;
                break;  // ids ascending within a component
            }
        if (best >= 0 && s.map->cell_contains(cid, p, -tol)) return best;
        // boundary ties: take the smallest id over the whole source
    }
    int best = -1;
    for (int rid : by_source[source]) {
        if (!regions[rid].cell.bounds().inflated(0.001).contains(p)) continue;
        if (regions[rid].cell.contains(p, tol)) {
            best = rid;
            break;
        }
    }
    if (best >= 0) return best;
    for (int rid : by_source[source])
        if (regions[rid].cell.contains(p, 1000 * tol)) return rid;
    // last resort: nearest region sample (keeps |T_p| = n even at slivers)
    double bd = std::numeric_limits<double>::infinity();
    for (int rid : by_source[source]) {
        double d = dist(regions[rid].cell.interior_sample, p);
        if (d < bd) {
            bd = d;
            best = rid;
        }
    }
    return best;
}

std::vector<int> RegionMultiset::regions_containing(Point p) const {
    if (dom->contains(p) == Location::exterior)
        throw PointOutsideDomain("regions_containing: point outside P");
    std::vector<int> out;
    out.reserve(spms.size());
    for (int v = 0; v < static_cast<int>(spms.size()); ++v) out.push_back(region_containing(v, p));
    return out;
}

std::vector<int> RegionMultiset::all_regions_containing(int source, Point p) const {
    std::vector<int> out;
    double tol = dom->tol();
    for (int rid : by_source[source])
        if (regions[rid].cell.contains(p, tol)) out.push_back(rid);
    return out;
}

std::vector<std::pair<int, int>> relevant_pairs(const RegionMultiset& ms,
                                                const std::vector<int>& a_ids,
                                                const std::vector<int>& b_ids) {
    std::vector<std::pair<int, int>> out;
    std::map<int, std::vector<int>> b_by_source;
    for (int b : b_ids) b_by_source[ms.regions[b].source].push_back(b);
    for (int a : a_ids) {
        auto it = b_by_source.find(ms.regions[a].source);
        if (it == b_by_source.end()) continue;
        for (int b : it->second) out.push_back({a, b});
    }
    return out;
}

}  // namespace geopath
