#pragma once

#include <vector>

#include "geopath/visibility.hpp"

namespace geopath {

// All-pairs vertex geodesic distances over the visibility graph, with
// predecessors for path reconstruction.
struct GeodesicMatrix {
    int n = 0;
    std::vector<std::vector<double>> d;
    std::vector<std::vector<int>> pred;  // pred[s][v]: previous vertex on the s->v path

    // vertex path from u to w (inclusive); empty if u == w is false... always contains both ends
    std::vector<int> vertex_path(int u, int w) const;
};

GeodesicMatrix all_pairs(const PolygonalDomain& dom, const VisibilityGraph& vg);

struct OracleResult {
    double distance = 0;
    std::vector<Point> path;
    int via_u = -1, via_w = -1;  // first/last vertex of the path, -1 for direct
};

// ground-truth two-point query: min over visible vertex pairs of
// |s u| + d(u, w) + |w t|, with the direct-visibility short-circuit
OracleResult oracle_distance(const PolygonalDomain& dom, const VisibilityGraph& vg,
                             const GeodesicMatrix& gm, Point s, Point t);

double path_length(const std::vector<Point>& path);

}  // namespace geopath
