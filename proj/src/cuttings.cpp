#include "geopath/cuttings.hpp"

#include <algorithm>
#include <cmath>

#include "geopath/rng.hpp"

namespace geopath {

namespace {

const double kGlNodes[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
const double kGlWeights[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

// integral of y dx along an x-monotone arc between two x-values (parametric,
// so steep ends of hyperbola pieces stay accurate)
double integral_y_dx(const ConicArc& arc, double xl, double xr) {
    if (arc.kind == ArcKind::segment) {
        if (arc.a.x == arc.b.x) return 0;
        double yl = arc.y_at(xl), yr = arc.y_at(xr);
        return (yl + yr) / 2 * (xr - xl);
    }
    auto tl = arc.params_at_x(xl);
    auto tr = arc.params_at_x(xr);
    double ta = tl.empty() ? (arc.point_at(arc.t0).x < arc.point_at(arc.t1).x ? arc.t0 : arc.t1)
                           : tl.front();
    double tb = tr.empty() ? (arc.point_at(arc.t0).x < arc.point_at(arc.t1).x ? arc.t1 : arc.t0)
                           : tr.front();
    double half = (tb - ta) / 2, mid = (ta + tb) / 2;
    double sum = 0;
    for (int i = 0; i < 16; ++i) {
        double t = mid + half * kGlNodes[i];
        sum += kGlWeights[i] * arc.point_at(t).y * arc.tangent_at(t).x;
    }
    return sum * half;
}

}  // namespace

// ---------------------------------------------------------------------------
// TrapMap

TrapMap TrapMap::over_box(const BBox& box, double tol) {
    TrapMap m;
    m.tol_ = tol;
    m.snap_ = 1e-12 * std::max(1.0, box.xhi - box.xlo);
    m.cont_bot_ = ConicArc::segment_arc({box.xlo, box.ylo}, {box.xhi, box.ylo});
    m.cont_top_ = ConicArc::segment_arc({box.xlo, box.yhi}, {box.xhi, box.yhi});
    m.cont_lx_ = box.xlo;
    m.cont_rx_ = box.xhi;
    m.arcs_.push_back({m.cont_bot_, -1});
    m.arcs_.push_back({m.cont_top_, -1});
    m.root_ = m.new_cell(box.xlo, box.xhi, 1, 0, -1, -1);
    return m;
}

TrapMap TrapMap::sub_map(int cid) const {
    const TrapCell& c = cells_[cid];
    TrapMap m;
    m.tol_ = tol_;
    m.snap_ = snap_;
    auto restrict_arc = [&](const ConicArc& arc) {
        if (arc.kind == ArcKind::segment) {
            if (arc.a.x == arc.b.x) return arc;
            double t0 = (c.lx - arc.a.x) / (arc.b.x - arc.a.x);
            double t1 = (c.rx - arc.a.x) / (arc.b.x - arc.a.x);
            return arc.subarc(t0, t1);
        }
        auto p0 = arc.params_at_x(c.lx);
        auto p1 = arc.params_at_x(c.rx);
        double ta = p0.empty() ? arc.t0 : p0.front();
        double tb = p1.empty() ? arc.t1 : p1.front();
        return arc.subarc(ta, tb);
    };
    m.cont_bot_ = restrict_arc(arcs_[c.bottom].geo);
    m.cont_top_ = restrict_arc(arcs_[c.top].geo);
    m.cont_lx_ = c.lx;
    m.cont_rx_ = c.rx;
    m.arcs_.push_back({m.cont_bot_, arcs_[c.bottom].owner});
    m.arcs_.push_back({m.cont_top_, arcs_[c.top].owner});
    m.root_ = m.new_cell(c.lx, c.rx, 1, 0, c.lowner, c.rowner);
    m.regions_ = regions_;
    return m;
}

int TrapMap::new_cell(double lx, double rx, int top, int bottom, int lo, int ro) {
    TrapCell c;
    c.lx = lx;
    c.rx = rx;
    c.top = top;
    c.bottom = bottom;
    c.lowner = lo;
    c.rowner = ro;
    c.id = static_cast<int>(cells_.size());
    cells_.push_back(std::move(c));
    return cells_.back().id;
}

void TrapMap::init_conflicts(const std::vector<int>& region_ids) {
    auto& root = cells_[root_];
    root.conflicts.clear();
    for (int rid : region_ids)
        if (region_conflicts_cell(rid, root_)) root.conflicts.push_back(rid);
}

double TrapMap::ybot(int cid, double x) const {
    const TrapCell& c = cells_[cid];
    return arcs_[c.bottom].geo.y_at(std::clamp(x, c.lx, c.rx));
}

double TrapMap::ytop(int cid, double x) const {
    const TrapCell& c = cells_[cid];
    return arcs_[c.top].geo.y_at(std::clamp(x, c.lx, c.rx));
}

Point TrapMap::cell_sample(int cid) const {
    const TrapCell& c = cells_[cid];
    double xm = (c.lx + c.rx) / 2;
    return {xm, (ybot(cid, xm) + ytop(cid, xm)) / 2};
}

double TrapMap::cell_area(int cid) const {
    const TrapCell& c = cells_[cid];
    return integral_y_dx(arcs_[c.top].geo, c.lx, c.rx) -
           integral_y_dx(arcs_[c.bottom].geo, c.lx, c.rx);
}

BBox TrapMap::cell_bbox(int cid) const {
    const TrapCell& c = cells_[cid];
    double xm = (c.lx + c.rx) / 2;
    double ys[6] = {ybot(cid, c.lx), ybot(cid, xm), ybot(cid, c.rx),
                    ytop(cid, c.lx), ytop(cid, xm), ytop(cid, c.rx)};
    double ylo = ys[0], yhi = ys[0];
    for (double y : ys) {
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
    }
    return {c.lx, ylo, c.rx, yhi};
}

bool TrapMap::cell_contains(int cid, Point p, double pad) const {
    const TrapCell& c = cells_[cid];
    if (p.x < c.lx - pad || p.x > c.rx + pad) return false;
    double x = std::clamp(p.x, c.lx, c.rx);
    return p.y >= arcs_[c.bottom].geo.y_at(x) - pad && p.y <= arcs_[c.top].geo.y_at(x) + pad;
}

std::vector<int> TrapMap::alive_cells() const {
    std::vector<int> out;
    for (const auto& c : cells_)
        if (c.alive) out.push_back(c.id);
    return out;
}

int TrapMap::num_alive() const {
    int k = 0;
    for (const auto& c : cells_)
        if (c.alive) ++k;
    return k;
}

void TrapMap::redistribute(const TrapCell& parent, int child, int skip_region) {
    auto& cc = cells_[child].conflicts;
    for (int rid : parent.conflicts) {
        if (rid == skip_region) continue;
        if (region_conflicts_cell(rid, child)) cc.push_back(rid);
    }
}

void TrapMap::split_vertical(int cid, double xs, int owner, int skip_region) {
    const double lx = cells_[cid].lx, rx = cells_[cid].rx;
    const int top = cells_[cid].top, bottom = cells_[cid].bottom;
    const int lo = cells_[cid].lowner, ro = cells_[cid].rowner;
    cells_[cid].alive = false;
    int left = new_cell(lx, xs, top, bottom, lo, owner);
    int right = new_cell(xs, rx, top, bottom, owner, ro);
    cells_[cid].children = {left, right};
    redistribute(cells_[cid], left, skip_region);
    redistribute(cells_[cid], right, skip_region);
}

void TrapMap::split_horizontal(int cid, int aid, int skip_region) {
    const double lx = cells_[cid].lx, rx = cells_[cid].rx;
    const int top = cells_[cid].top, bottom = cells_[cid].bottom;
    const int lo = cells_[cid].lowner, ro = cells_[cid].rowner;
    cells_[cid].alive = false;
    int below = new_cell(lx, rx, aid, bottom, lo, ro);
    int above = new_cell(lx, rx, top, aid, lo, ro);
    cells_[cid].children = {below, above};
    redistribute(cells_[cid], below, skip_region);
    redistribute(cells_[cid], above, skip_region);
}

void TrapMap::insert_arc_internal(const ConicArc& arc, int owner, int skip_region) {
    const double scale = std::max(1.0, std::abs(cont_rx_ - cont_lx_));
    if (arc.kind == ArcKind::segment && dist(arc.a, arc.b) < 1e-13 * scale) return;

    int aid = static_cast<int>(arcs_.size());
    arcs_.push_back({arc, owner});

    if (arc.is_vertical_segment()) {
        double x0 = arc.a.x;
        double y1 = std::min(arc.a.y, arc.b.y), y2 = std::max(arc.a.y, arc.b.y);
        std::vector<int> work;
        for (const auto& c : cells_)
            if (c.alive && c.lx + snap_ < x0 && x0 < c.rx - snap_) work.push_back(c.id);
        for (int cid : work) {
            if (!cells_[cid].alive) continue;
            double yb = ybot(cid, x0), yt = ytop(cid, x0);
            if (yb + tol_ < y2 && yt - tol_ > y1) split_vertical(cid, x0, owner, skip_region);
        }
        inserted_.push_back(aid);
        return;
    }

    // events: endpoints plus crossings/contacts with already inserted arcs
    std::vector<Point> events{arc.lex_lo(), arc.lex_hi()};
    BBox ab = arc.bounds();
    for (int other : inserted_) {
        const TrapArc& o = arcs_[other];
        if (!ab.inflated(0.0).overlaps(o.geo.bounds().inflated(0.0))) continue;
        if (o.geo.kind == ArcKind::hyperbola && arc.kind == ArcKind::hyperbola &&
            arc.same_support(o.geo))
            continue;  // pre-deduplicated by callers; shared supports add no events
        auto xs = arc_arc_intersections(arc, o.geo, tol_);
        for (auto p : xs.points) events.push_back(p);
        for (auto p : xs.touches) events.push_back(p);
        if (xs.overlap) {
            events.push_back(xs.overlap_a);
            events.push_back(xs.overlap_b);
        }
    }
    std::sort(events.begin(), events.end(), lex_less);

    double xlo = arc.x_lo(), xhi = arc.x_hi();
    std::vector<int> work;
    for (const auto& c : cells_)
        if (c.alive && c.rx >= xlo && c.lx <= xhi) work.push_back(c.id);
    for (const auto& w : events) {
        size_t wn = work.size();
        for (size_t i = 0; i < wn; ++i) {
            int cid = work[i];
            if (!cells_[cid].alive) continue;
            const TrapCell& c = cells_[cid];
            if (!(c.lx + snap_ < w.x && w.x < c.rx - snap_)) continue;
            if (w.y < ybot(cid, w.x) - tol_ || w.y > ytop(cid, w.x) + tol_) continue;
            split_vertical(cid, w.x, owner, skip_region);
            work.push_back(cells_[cid].children[0]);
            work.push_back(cells_[cid].children[1]);
        }
    }

    // horizontal phase: the arc now spans every cell it passes through
    std::vector<int> snapshot;
    for (int cid : work)
        if (cells_[cid].alive) snapshot.push_back(cid);
    for (int cid : snapshot) {
        if (!cells_[cid].alive) continue;
        const TrapCell& c = cells_[cid];
        double xl = std::max(c.lx, xlo), xr = std::min(c.rx, xhi);
        if (xr - xl <= snap_) continue;
        double xm = (xl + xr) / 2;
        double ya = arc.y_at(xm);
        if (ya <= ybot(cid, xm) + tol_ || ya >= ytop(cid, xm) - tol_) continue;
        split_horizontal(cid, aid, skip_region);
    }
    inserted_.push_back(aid);
}

void TrapMap::insert_curve(const ConicArc& arc, int owner) {
    for (const auto& piece : clip_arc_to_container(arc))
        insert_arc_internal(piece, owner, owner < 0 ? -2 : owner);
}

void TrapMap::insert_region(int rid) {
    for (const auto& arc : (*regions_)[rid].boundary()) {
        for (const auto& piece : clip_arc_to_container(arc)) insert_arc_internal(piece, rid, rid);
    }
}

std::vector<ConicArc> TrapMap::clip_arc_to_container(const ConicArc& arc) const {
    std::vector<ConicArc> out;
    auto inside = [&](Point p) {
        return p.x >= cont_lx_ - tol_ && p.x <= cont_rx_ + tol_ &&
               p.y >= cont_bot_.y_at(std::clamp(p.x, cont_lx_, cont_rx_)) - tol_ &&
               p.y <= cont_top_.y_at(std::clamp(p.x, cont_lx_, cont_rx_)) + tol_;
    };
    if (arc.is_vertical_segment()) {
        double x0 = arc.a.x;
        if (x0 < cont_lx_ || x0 > cont_rx_) return out;
        double yb = cont_bot_.y_at(x0), yt = cont_top_.y_at(x0);
        double y1 = std::max(std::min(arc.a.y, arc.b.y), yb);
        double y2 = std::min(std::max(arc.a.y, arc.b.y), yt);
        if (y2 - y1 > tol_) out.push_back(ConicArc::segment_arc({x0, y1}, {x0, y2}));
        return out;
    }
    // parameter cuts at the container walls and at crossings with its arcs
    double plo = arc.kind == ArcKind::segment ? 0.0 : arc.t0;
    double phi = arc.kind == ArcKind::segment ? 1.0 : arc.t1;
    std::vector<double> cuts{plo, phi};
    for (double x : {cont_lx_, cont_rx_})
        for (double t : arc.params_at_x(x)) cuts.push_back(t);
    for (const ConicArc* ca : {&cont_bot_, &cont_top_}) {
        if (arc.kind == ArcKind::hyperbola && ca->kind == ArcKind::hyperbola &&
            arc.same_support(*ca))
            continue;
        auto xs = arc_arc_intersections(arc, *ca, tol_);
        for (auto p : xs.points) cuts.push_back(arc.param_of(p));
        for (auto p : xs.touches) cuts.push_back(arc.param_of(p));
    }
    std::sort(cuts.begin(), cuts.end());
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double ta = std::clamp(cuts[i], plo, phi), tb = std::clamp(cuts[i + 1], plo, phi);
        if (tb - ta < 1e-13) continue;
        if (inside(arc.point_at((ta + tb) / 2))) out.push_back(arc.subarc(ta, tb));
    }
    return out;
}

bool TrapMap::arc_crosses_cell(const ConicArc& arc, int cid) const {
    const TrapCell& c = cells_[cid];
    if (arc.is_vertical_segment()) {
        double x0 = arc.a.x;
        if (!(c.lx < x0 && x0 < c.rx)) return false;
        double y1 = std::min(arc.a.y, arc.b.y), y2 = std::max(arc.a.y, arc.b.y);
        double lo = std::max(y1, ybot(cid, x0)), hi = std::min(y2, ytop(cid, x0));
        return hi - lo > tol_;
    }
    double xl = std::max(c.lx, arc.x_lo()), xr = std::min(c.rx, arc.x_hi());
    if (xr - xl <= snap_) return false;
    std::vector<double> xs{xl, xr};
    for (const int side : {c.bottom, c.top}) {
        const ConicArc& sa = arcs_[side].geo;
        if (arc.kind == ArcKind::hyperbola && sa.kind == ArcKind::hyperbola &&
            arc.same_support(sa))
            continue;
        auto res = arc_arc_intersections(arc, sa, tol_);
        for (auto p : res.points)
            if (p.x > xl && p.x < xr) xs.push_back(p.x);
        for (auto p : res.touches)
            if (p.x > xl && p.x < xr) xs.push_back(p.x);
    }
    std::sort(xs.begin(), xs.end());
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        if (xs[i + 1] - xs[i] <= 0) continue;
        double xm = (xs[i] + xs[i + 1]) / 2;
        double ya = arc.y_at(xm);
        if (ya > ybot(cid, xm) + tol_ && ya < ytop(cid, xm) - tol_) return true;
    }
    return false;
}

bool TrapMap::region_conflicts_cell(int rid, int cid) const {
    BBox cb = cell_bbox(cid).inflated(0.0);
    for (const auto& arc : (*regions_)[rid].boundary()) {
        if (!cb.overlaps(arc.bounds())) continue;
        if (arc_crosses_cell(arc, cid)) return true;
    }
    return false;
}

int TrapMap::locate(Point p) const {
    if (!cell_contains(root_, p, tol_))
        throw OutsideBoundingBox("locate: point outside the container");
    int cur = root_;
    while (!cells_[cur].alive) {
        int next = -1;
        for (int ch : cells_[cur].children) {
            if (cell_contains(ch, p, tol_)) {
                next = ch;
                break;
            }
        }
        if (next < 0) break;
        cur = next;
    }
    if (cells_[cur].alive && cell_contains(cur, p, -tol_)) return cur;  // strictly inside
    // boundary tie (or descent slipped by tolerance): smallest containing alive id
    for (const auto& c : cells_) {
        if (!c.alive) continue;
        if (cell_contains(c.id, p, tol_)) return c.id;
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Lemma-4 vertical decomposition and Lemma-5 cuttings

TrapMap vertical_decomposition(const std::vector<TarskiCell>& regions, int r, uint64_t seed,
                               const BBox& box, double tol) {
    const int n = static_cast<int>(regions.size());
    if (r > n) throw DegenerateInput("vertical_decomposition: r exceeds the region count");
    TrapMap map = TrapMap::over_box(box, tol);
    map.attach_regions(&regions);
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    map.init_conflicts(ids);
    Rng rng(seed);
    rng.shuffle(ids);
    for (int i = 0; i < r; ++i) map.insert_region(ids[i]);
    return map;
}

Cutting::Cutting(const std::vector<TarskiCell>& regions, const std::vector<int>& ids, int r,
                 uint64_t seed, const BBox& box, double tol) {
    n_ = static_cast<int>(ids.size());
    r_ = std::max(1, std::min(r, std::max(1, n_)));
    box_ = box;
    const int target = n_ == 0 ? 0 : std::max(1, n_ / r_);

    main_ = std::make_unique<TrapMap>(TrapMap::over_box(box, tol));
    main_->attach_regions(&regions);
    main_->init_conflicts(ids);
    std::vector<int> order = ids;
    Rng rng(seed);
    rng.shuffle(order);
    for (int i = 0; i < std::min<int>(r_, order.size()); ++i) main_->insert_region(order[i]);

    int budget = 64;
    auto main_alive = main_->alive_cells();
    sub_of_main_.assign(main_->cells().size(), -1);
    for (int cid : main_alive) {
        const auto& conf = main_->cells()[cid].conflicts;
        if (static_cast<int>(conf.size()) <= target) continue;
        int t = std::max<int>(2, static_cast<int>(conf.size()) * r_ / std::max(1, n_) + 1);
        bool done = false;
        for (int attempt = 0; !done; ++attempt) {
            if (--budget < 0)
                throw RetryBudgetExceeded("build_cutting: refinement retry budget exhausted");
            TrapMap sub = main_->sub_map(cid);
            auto& root = sub.cells()[sub.container_cell()];
            (void)root;
            // root conflicts are exactly the parent's (same geometry)
            {
                std::vector<int> rc = conf;
                // filter against the sub container for safety
                sub.init_conflicts(rc);
            }
            std::vector<int> order2 = conf;
            Rng sub_rng(Rng::mix(seed, (uint64_t)cid * 97 + attempt));
            sub_rng.shuffle(order2);
            // a 1/t-net needs ~t log t samples to hold with constant probability
            int boosted = static_cast<int>(std::ceil(t * (1.0 + std::log(double(t)))));
            int take = std::min<int>(boosted, order2.size());
            for (int i = 0; i < take; ++i) sub.insert_region(order2[i]);
            bool ok = true;
            for (int sc : sub.alive_cells())
                if (static_cast<int>(sub.cells()[sc].conflicts.size()) > target) ok = false;
            if (ok) {
                sub_of_main_[cid] = static_cast<int>(subs_.size());
                subs_.push_back(std::make_unique<TrapMap>(std::move(sub)));
                done = true;
            } else if (attempt % 2 == 1) {
                t = std::min<int>(t + std::max(1, t / 2), static_cast<int>(conf.size()));
            }
        }
    }

    // final cell numbering: main cells in id order, refined ones expanded in place
    final_of_main_.assign(main_->cells().size(), -1);
    final_of_sub_.resize(subs_.size());
    for (int cid : main_alive) {
        int sub = sub_of_main_[cid];
        if (sub < 0) {
            final_of_main_[cid] = static_cast<int>(final_.size());
            final_.push_back({-1, cid});
        } else {
            final_of_sub_[sub].assign(subs_[sub]->cells().size(), -1);
            for (int sc : subs_[sub]->alive_cells()) {
                final_of_sub_[sub][sc] = static_cast<int>(final_.size());
                final_.push_back({sub, sc});
            }
        }
    }
}

const TrapMap& Cutting::map_of(int fid) const {
    const FinalRef& ref = final_[fid];
    return ref.sub < 0 ? *main_ : *subs_[ref.sub];
}

int Cutting::locate(Point p) const {
    int mcid = main_->locate(p);
    int sub = sub_of_main_[mcid];
    if (sub < 0) {
        int fid = final_of_main_[mcid];
        if (fid < 0) throw OutsideBoundingBox("locate: dead cell");  // unreachable
        return fid;
    }
    int sc = subs_[sub]->locate(p);
    return final_of_sub_[sub][sc];
}

const std::vector<int>& Cutting::conflicts(int fid) const {
    const FinalRef& ref = final_[fid];
    return map_of(fid).cells()[ref.local].conflicts;
}

std::vector<int> Cutting::defining(int fid) const {
    const FinalRef& ref = final_[fid];
    const TrapMap& m = map_of(fid);
    const TrapCell& c = m.cells()[ref.local];
    std::vector<int> out;
    for (int owner : {m.arc(c.top).owner, m.arc(c.bottom).owner, c.lowner, c.rowner}) {
        if (owner < 0) continue;
        if (std::find(out.begin(), out.end(), owner) == out.end()) out.push_back(owner);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Point Cutting::sample(int fid) const { return map_of(fid).cell_sample(final_[fid].local); }

BBox Cutting::cell_bbox(int fid) const { return map_of(fid).cell_bbox(final_[fid].local); }

double Cutting::cell_area(int fid) const { return map_of(fid).cell_area(final_[fid].local); }

bool Cutting::cell_contains(int fid, Point p, double pad) const {
    return map_of(fid).cell_contains(final_[fid].local, p, pad);
}

double Cutting::container_area() const { return (box_.xhi - box_.xlo) * (box_.yhi - box_.ylo); }

long long Cutting::conflict_total() const {
    long long s = 0;
    for (int fid = 0; fid < num_cells(); ++fid) s += conflicts(fid).size();
    return s;
}

}  // namespace geopath
