#pragma once

#include <string>
#include <vector>

#include "geopath/geom.hpp"

namespace geopath {

enum class Location { interior, boundary, exterior };

struct BoundaryPoint {
    int cycle = 0;  // 0 = outer, i >= 1 = hole i
    int edge = 0;
    double fraction = 0.0;  // in [0, 1)
    Point point;
};

struct Violation {
    std::string what;
    int cycle = -1;
    int edge = -1;
};

// Outer ring CCW, holes CW, pairwise disjoint and strictly inside the outer
// ring. The free space P is closed: its boundary belongs to it.
class PolygonalDomain {
  public:
    PolygonalDomain() = default;
    PolygonalDomain(std::vector<Point> outer, std::vector<std::vector<Point>> holes);

    const std::vector<Point>& outer() const { return outer_; }
    const std::vector<std::vector<Point>>& holes() const { return holes_; }
    int n() const { return n_; }
    int h() const { return static_cast<int>(holes_.size()); }
    int cycles() const { return 1 + h(); }
    const std::vector<Point>& ring(int cycle) const { return cycle == 0 ? outer_ : holes_[cycle - 1]; }

    // flattened vertex list: outer first, then holes in order
    const std::vector<Point>& vertices() const { return verts_; }
    Point vertex(int i) const { return verts_[i]; }
    int vertex_index(int cycle, int k) const { return ring_offset_[cycle] + k; }
    // (cycle, index within cycle) of a flat vertex index
    std::pair<int, int> vertex_cycle(int v) const;

    // every ring edge as a segment, with its (cycle, edge) tag
    struct Edge {
        Segment seg;
        int cycle;
        int index;
    };
    const std::vector<Edge>& edges() const { return edges_; }

    BBox bounds() const { return bbox_; }
    double diameter() const { return bbox_.diameter(); }
    double tol() const { return curve_tol(diameter()); }

    bool reflex(int v) const { return reflex_[v]; }  // free-space interior angle > pi

    Location contains(Point p) const;
    double area() const;

    // boundary parameterization: each cycle has its own cyclic arc-length axis
    double cycle_length(int cycle) const { return prefix_[cycle].back(); }
    double boundary_param(const BoundaryPoint& bp) const;  // arc-length along bp.cycle
    BoundaryPoint boundary_at(int cycle, double param) const;
    BoundaryPoint boundary_locate(Point p) const;  // throws NotOnBoundary
    Point boundary_eval(const BoundaryPoint& bp) const;

    std::string to_json() const;
    static PolygonalDomain from_json(const std::string& text);

  private:
    std::vector<Point> outer_;
    std::vector<std::vector<Point>> holes_;
    std::vector<Point> verts_;
    std::vector<int> ring_offset_;
    std::vector<Edge> edges_;
    std::vector<bool> reflex_;
    std::vector<std::vector<double>> prefix_;  // per cycle: edge-start arc lengths + total
    BBox bbox_;
    int n_ = 0;

    friend std::vector<Violation> validate(const PolygonalDomain& d);
};

std::vector<Violation> validate(const PolygonalDomain& d);

double signed_area(const std::vector<Point>& ring);

// deterministic random instance supply; throws GenerationFailed
PolygonalDomain generate(uint64_t seed, int n_target, int h_target);

}  // namespace geopath
