#include "geopath/geodesic.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace geopath {

std::vector<int> GeodesicMatrix::vertex_path(int u, int w) const {
    std::vector<int> rev{w};
    while (rev.back() != u) {
        int p = pred[u][rev.back()];
        if (p < 0) break;
        rev.push_back(p);
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

GeodesicMatrix all_pairs(const PolygonalDomain& dom, const VisibilityGraph& vg) {
    const int n = vg.n;
    GeodesicMatrix gm;
    gm.n = n;
    gm.d.assign(n, std::vector<double>(n, std::numeric_limits<double>::infinity()));
    gm.pred.assign(n, std::vector<int>(n, -1));
    for (int src = 0; src < n; ++src) {
        auto& dist = gm.d[src];
        auto& pred = gm.pred[src];
        dist[src] = 0;
        std::set<std::pair<double, int>> queue;
        queue.insert({0.0, src});
        while (!queue.empty()) {
            auto [du, u] = *queue.begin();
            queue.erase(queue.begin());
            for (int v = 0; v < n; ++v) {
                if (!vg.adj[u][v]) continue;
                double nd = du + vg.weight[u][v];
                if (nd < dist[v] || (nd == dist[v] && pred[v] > u)) {
                    queue.erase({dist[v], v});
                    dist[v] = nd;
                    pred[v] = u;
                    queue.insert({nd, v});
                }
            }
        }
        for (int v = 0; v < n; ++v)
            if (!std::isfinite(dist[v]))
                throw DisconnectedDomain("vertex unreachable in the visibility graph");
        (void)dom;
    }
    return gm;
}

double path_length(const std::vector<Point>& path) {
    double len = 0;
    for (size_t i = 0; i + 1 < path.size(); ++i) len += dist(path[i], path[i + 1]);
    return len;
}

OracleResult oracle_distance(const PolygonalDomain& dom, const VisibilityGraph& vg,
                             const GeodesicMatrix& gm, Point s, Point t) {
    if (dom.contains(s) == Location::exterior || dom.contains(t) == Location::exterior)
        throw PointOutsideDomain("oracle_distance: query point outside P");
    OracleResult res;
    if (s == t) {
        res.distance = 0;
        res.path = {s};
        return res;
    }
    if (sees(dom, s, t)) {
        res.distance = dist(s, t);
        res.path = {s, t};
        return res;
    }
    auto vs = visible_vertices(dom, s);
    auto vt = visible_vertices(dom, t);
    double best = std::numeric_limits<double>::infinity();
    int bu = -1, bw = -1;
    for (int u : vs) {
        double su = dist(s, dom.vertex(u));
        for (int w : vt) {
            double f = su + gm.d[u][w] + dist(dom.vertex(w), t);
            if (f < best || (f == best && std::pair{u, w} < std::pair{bu, bw})) {
                best = f;
                bu = u;
                bw = w;
            }
        }
    }
    res.distance = best;
    res.via_u = bu;
    res.via_w = bw;
    res.path.push_back(s);
    for (int v : gm.vertex_path(bu, bw)) res.path.push_back(dom.vertex(v));
    res.path.push_back(t);
    return res;
}

}  // namespace geopath
