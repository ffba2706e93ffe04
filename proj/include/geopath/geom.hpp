#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "geopath/errors.hpp"

namespace geopath {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point p, Point q) { return {p.x + q.x, p.y + q.y}; }
    friend Point operator-(Point p, Point q) { return {p.x - q.x, p.y - q.y}; }
    friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
    friend bool operator==(Point p, Point q) { return p.x == q.x && p.y == q.y; }
    friend bool operator!=(Point p, Point q) { return !(p == q); }
};

inline double dot(Point p, Point q) { return p.x * q.x + p.y * q.y; }
inline double cross(Point p, Point q) { return p.x * q.y - p.y * q.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double dist(Point p, Point q) { return norm(p - q); }
inline Point perp(Point p) { return {-p.y, p.x}; }

// lexicographic (x, then y); the symbolic shear used to break vertical ties
inline bool lex_less(Point p, Point q) { return p.x < q.x || (p.x == q.x && p.y < q.y); }

struct BBox {
    double xlo = 0, ylo = 0, xhi = 0, yhi = 0;

    void expand(Point p) {
        xlo = std::min(xlo, p.x);
        ylo = std::min(ylo, p.y);
        xhi = std::max(xhi, p.x);
        yhi = std::max(yhi, p.y);
    }
    bool contains(Point p) const { return p.x >= xlo && p.x <= xhi && p.y >= ylo && p.y <= yhi; }
    bool overlaps(const BBox& o) const {
        return xlo <= o.xhi && o.xlo <= xhi && ylo <= o.yhi && o.ylo <= yhi;
    }
    double diameter() const { return std::hypot(xhi - xlo, yhi - ylo); }
    Point center() const { return {(xlo + xhi) / 2, (ylo + yhi) / 2}; }
    BBox inflated(double f) const {
        double dx = (xhi - xlo) * f + 1e-12, dy = (yhi - ylo) * f + 1e-12;
        return {xlo - dx, ylo - dy, xhi + dx, yhi + dy};
    }
};

inline BBox bbox_of(const std::vector<Point>& pts) {
    BBox b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (auto p : pts) b.expand(p);
    return b;
}

// on-curve tolerance, relative to instance scale
inline double curve_tol(double diameter) { return 1e-9 * (1.0 + diameter); }

// ---------------------------------------------------------------------------
// Orientation predicate: sign of the doubled signed area of (a,b,c).
// Floating-point filter with an exact big-integer fallback.
int orient(Point a, Point b, Point c);

// exact path, exposed for tests
int orient_exact(Point a, Point b, Point c);

struct Segment {
    Point a, b;
    bool degenerate() const { return a == b; }
};

enum class IntersectMode { open, closed };

// true iff the relative interiors (open) or closures (closed) of the two
// segments share a point
bool segments_intersect(const Segment& s1, const Segment& s2, IntersectMode mode);

bool point_on_segment(Point p, const Segment& s);  // closed

// proper (transversal) crossing point of two segments, if any
std::optional<Point> segment_crossing(const Segment& s1, const Segment& s2);

// ---------------------------------------------------------------------------
// ConicArc: a line segment or an x-monotone piece of one branch of the
// additively-weighted bisector  { p : |p-focus_a| + weight_a = |p-focus_b| + weight_b }.
enum class ArcKind { segment, hyperbola };

struct ConicArc {
    ArcKind kind = ArcKind::segment;
    Point a, b;  // endpoints

    // hyperbola support (normalized so the branch bends around focus_b)
    Point focus_a, focus_b;
    double weight_a = 0, weight_b = 0;
    int branch = +1;  // +1: branch around the originally-second focus; -1: swapped at construction

    // canonical frame: p(t) = center + axis*(a_semi*cosh t) + perp(axis)*(b_semi*sinh t)
    Point center;
    Point axis;  // unit vector from focus_a toward focus_b
    double a_semi = 0, b_semi = 0;
    double t0 = 0, t1 = 0;

    static ConicArc segment_arc(Point a, Point b) {
        ConicArc c;
        c.kind = ArcKind::segment;
        c.a = a;
        c.b = b;
        return c;
    }

    bool is_vertical_segment() const { return kind == ArcKind::segment && a.x == b.x; }

    Point lex_lo() const { return lex_less(a, b) ? a : b; }
    Point lex_hi() const { return lex_less(a, b) ? b : a; }
    double x_lo() const { return std::min(a.x, b.x); }
    double x_hi() const { return std::max(a.x, b.x); }

    Point point_at(double t) const;       // hyperbola: canonical parameter; segment: [0,1]
    Point tangent_at(double t) const;     // derivative dp/dt
    double param_of(Point p) const;       // inverse of point_at (p assumed on the arc)
    double y_at(double x) const;          // requires x within [x_lo, x_hi]; arc x-monotone
    std::vector<double> params_at_x(double x) const;  // t with point_at(t).x == x, within range

    // (|p-focus_a|+weight_a) - (|p-focus_b|+weight_b); 0 on the full bisector
    double defining_eval(Point p) const;
    bool on_curve(Point p, double tol) const;

    bool is_x_monotone() const;
    // canonical parameters of vertical-tangency points strictly inside (t0,t1)
    std::vector<double> vertical_tangency_ts() const;

    ConicArc subarc(double ta, double tb) const;

    BBox bounds() const;
    Point midpoint() const;  // point at mid-parameter
    double length() const;   // arc length (quadrature for hyperbolas)

    bool same_support(const ConicArc& o) const;
};

// Construct the x-monotone pieces of the additively-weighted bisector of
// (fa, wa) and (fb, wb), clipped to `box`. Degenerate supports (equal
// weights -> line; |wa-wb| >= |fa fb| -> ray or empty) come back as
// segment-kind arcs.
std::vector<ConicArc> bisector_pieces(Point fa, double wa, Point fb, double wb, const BBox& box);

// all y with (x, y) on the arc, within the arc's range, sorted ascending
std::vector<double> arc_x_intersections(const ConicArc& arc, double x);

struct ArcIntersections {
    std::vector<Point> points;   // transversal crossings
    std::vector<Point> touches;  // isolated tangential / endpoint contacts
    bool overlap = false;        // collinear segments sharing a positive-length piece
    Point overlap_a, overlap_b;
};

// throws OverlapUnsupported when both arcs are hyperbolas on the same support
ArcIntersections arc_arc_intersections(const ConicArc& a1, const ConicArc& a2, double tol);

// ---------------------------------------------------------------------------
// TarskiCell: region bounded by a constant number of arcs.
//   fan  — apex + one far arc + the two apex-to-endpoint segments (SPM regions)
//   loop — arcs form a closed boundary chain (general cells, e.g. triangles)
enum class CellShape { loop, fan };

struct TarskiCell {
    CellShape shape = CellShape::loop;
    std::vector<ConicArc> arcs;  // loop: full cyclic boundary; fan: all three arcs, arcs[1] = far arc
    Point interior_sample;
    Point apex;       // fan only
    int side_sign = 0;  // fan only: sign of far-arc defining_eval / orient on the inside

    static TarskiCell triangle(Point a, Point b, Point c);
    static TarskiCell fan(Point apex, const ConicArc& far_arc, double tol);

    // boundary arcs (what conflicts are measured against)
    const std::vector<ConicArc>& boundary() const { return arcs; }

    bool contains(Point p, double tol) const;  // closed containment
    BBox bounds() const;
    double area() const;  // by Green's theorem along the boundary
};

// signed area term of one boundary arc, integral of x dy along the arc from a to b
double arc_area_term(const ConicArc& arc);

}  // namespace geopath
