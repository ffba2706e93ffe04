#pragma once

#include <vector>

#include "geopath/domain.hpp"

namespace geopath {

// Adjacency over the n vertices of P; edge (u,w) present iff the closed
// segment uw stays inside P (boundary contact allowed).
struct VisibilityGraph {
    int n = 0;
    std::vector<std::vector<bool>> adj;
    std::vector<std::vector<double>> weight;

    bool edge(int u, int w) const { return adj[u][w]; }
};

// true iff segment pq is contained in the closed free space
bool sees(const PolygonalDomain& d, Point p, Point q);

VisibilityGraph build_visibility_graph(const PolygonalDomain& d);

// indices of vertices visible from p; throws PointOutsideDomain
std::vector<int> visible_vertices(const PolygonalDomain& d, Point p);

// Grid-bucketed accelerator for segment-vs-boundary tests. Same semantics as
// sees(); read-only and safe for concurrent queries.
class SeesIndex {
  public:
    explicit SeesIndex(const PolygonalDomain& d);

    bool sees(Point p, Point q) const;
    // p is already known to lie in closed P; skips the interior re-check
    bool sees_from_inside(Point p, Point q) const;

  private:
    const PolygonalDomain* d_;
    BBox bb_;
    double cell_;
    int nx_ = 1, ny_ = 1;
    std::vector<std::vector<int>> edge_buckets_;
    std::vector<std::vector<int>> vert_buckets_;

    int bucket(int ix, int iy) const { return iy * nx_ + ix; }
    void collect(Point p, Point q, std::vector<int>& edges, std::vector<int>& verts) const;
    bool sees_impl(Point p, Point q, bool p_inside) const;
};

}  // namespace geopath
