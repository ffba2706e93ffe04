#include "geopath/visibility.hpp"

#include <algorithm>

namespace geopath {

bool sees(const PolygonalDomain& d, Point p, Point q) {
    if (p == q) return d.contains(p) != Location::exterior;
    Segment pq{p, q};
    for (const auto& e : d.edges()) {
        if (segment_crossing(pq, e.seg)) return false;  // transversal crossing
    }
    // contact points along pq happen at polygon vertices (or pq's endpoints);
    // every stretch between consecutive contacts must stay in closed P
    std::vector<double> ts{0.0, 1.0};
    Point dir = q - p;
    double dd = dot(dir, dir);
    for (auto v : d.vertices()) {
        if (point_on_segment(v, pq)) ts.push_back(dot(v - p, dir) / dd);
    }
    std::sort(ts.begin(), ts.end());
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
        if (ts[i + 1] - ts[i] < 1e-15) continue;
        Point mid = p + 0.5 * (ts[i] + ts[i + 1]) * dir;
        if (d.contains(mid) == Location::exterior) return false;
    }
    return true;
}

VisibilityGraph build_visibility_graph(const PolygonalDomain& d) {
    VisibilityGraph g;
    g.n = d.n();
    g.adj.assign(g.n, std::vector<bool>(g.n, false));
    g.weight.assign(g.n, std::vector<double>(g.n, 0.0));
    for (int u = 0; u < g.n; ++u) {
        for (int w = u + 1; w < g.n; ++w) {
            if (sees(d, d.vertex(u), d.vertex(w))) {
                g.adj[u][w] = g.adj[w][u] = true;
                g.weight[u][w] = g.weight[w][u] = dist(d.vertex(u), d.vertex(w));
            }
        }
    }
    return g;
}

std::vector<int> visible_vertices(const PolygonalDomain& d, Point p) {
    if (d.contains(p) == Location::exterior)
        throw PointOutsideDomain("visible_vertices: point outside P");
    std::vector<int> out;
    for (int w = 0; w < d.n(); ++w)
        if (sees(d, p, d.vertex(w))) out.push_back(w);
    return out;
}

// ---------------------------------------------------------------------------
// SeesIndex

SeesIndex::SeesIndex(const PolygonalDomain& d) : d_(&d) {
    bb_ = d.bounds().inflated(0.02);
    int k = std::max(4, static_cast<int>(std::sqrt(static_cast<double>(d.n()))) * 2);
    nx_ = ny_ = k;
    cell_ = std::max((bb_.xhi - bb_.xlo) / nx_, (bb_.yhi - bb_.ylo) / ny_);
    edge_buckets_.assign(nx_ * ny_, {});
    vert_buckets_.assign(nx_ * ny_, {});
    auto clampx = [&](int i) { return std::clamp(i, 0, nx_ - 1); };
    auto clampy = [&](int i) { return std::clamp(i, 0, ny_ - 1); };
    for (size_t e = 0; e < d.edges().size(); ++e) {
        const Segment& s = d.edges()[e].seg;
        int x0 = clampx(static_cast<int>((std::min(s.a.x, s.b.x) - bb_.xlo) / (bb_.xhi - bb_.xlo) * nx_));
        int x1 = clampx(static_cast<int>((std::max(s.a.x, s.b.x) - bb_.xlo) / (bb_.xhi - bb_.xlo) * nx_));
        int y0 = clampy(static_cast<int>((std::min(s.a.y, s.b.y) - bb_.ylo) / (bb_.yhi - bb_.ylo) * ny_));
        int y1 = clampy(static_cast<int>((std::max(s.a.y, s.b.y) - bb_.ylo) / (bb_.yhi - bb_.ylo) * ny_));
        for (int iy = y0; iy <= y1; ++iy)
            for (int ix = x0; ix <= x1; ++ix)
                edge_buckets_[bucket(ix, iy)].push_back(static_cast<int>(e));
    }
    for (int v = 0; v < d.n(); ++v) {
        Point p = d.vertex(v);
        int ix = clampx(static_cast<int>((p.x - bb_.xlo) / (bb_.xhi - bb_.xlo) * nx_));
        int iy = clampy(static_cast<int>((p.y - bb_.ylo) / (bb_.yhi - bb_.ylo) * ny_));
        vert_buckets_[bucket(ix, iy)].push_back(v);
    }
}

void SeesIndex::collect(Point p, Point q, std::vector<int>& edges, std::vector<int>& verts) const {
    double len = dist(p, q);
    int steps = std::max(1, static_cast<int>(len / (cell_ * 0.9)) + 1);
    auto clampx = [&](int i) { return std::clamp(i, 0, nx_ - 1); };
    auto clampy = [&](int i) { return std::clamp(i, 0, ny_ - 1); };
    for (int s = 0; s <= steps; ++s) {
        Point m = p + (double(s) / steps) * (q - p);
        int cx = static_cast<int>((m.x - bb_.xlo) / (bb_.xhi - bb_.xlo) * nx_);
        int cy = static_cast<int>((m.y - bb_.ylo) / (bb_.yhi - bb_.ylo) * ny_);
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                int ix = clampx(cx + dx), iy = clampy(cy + dy);
                for (int e : edge_buckets_[bucket(ix, iy)]) edges.push_back(e);
                for (int v : vert_buckets_[bucket(ix, iy)]) verts.push_back(v);
            }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
}

bool SeesIndex::sees_impl(Point p, Point q, bool p_inside) const {
    if (p == q) return p_inside || d_->contains(p) != Location::exterior;
    std::vector<int> edges, verts;
    collect(p, q, edges, verts);
    Segment pq{p, q};
    for (int e : edges) {
        if (segment_crossing(pq, d_->edges()[e].seg)) return false;
    }
    std::vector<double> ts{0.0, 1.0};
    Point dir = q - p;
    double dd = dot(dir, dir);
    for (int v : verts) {
        Point vp = d_->vertex(v);
        if (point_on_segment(vp, pq)) ts.push_back(dot(vp - p, dir) / dd);
    }
    if (p_inside && ts.size() == 2) return true;  // no contacts: the segment cannot leave P
    std::sort(ts.begin(), ts.end());
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
        if (ts[i + 1] - ts[i] < 1e-15) continue;
        Point mid = p + 0.5 * (ts[i] + ts[i + 1]) * dir;
        if (d_->contains(mid) == Location::exterior) return false;
    }
    return true;
}

bool SeesIndex::sees(Point p, Point q) const { return sees_impl(p, q, false); }

bool SeesIndex::sees_from_inside(Point p, Point q) const { return sees_impl(p, q, true); }

}  // namespace geopath
