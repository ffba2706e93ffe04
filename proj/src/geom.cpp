#include "geopath/geom.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

namespace geopath {

// ---------------------------------------------------------------------------
// orientation

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1]
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

void split_double(double d, long long& m, int& e) {
    int exp = 0;
    double fr = std::frexp(d, &exp);
    m = static_cast<long long>(std::ldexp(fr, 53));
    e = exp - 53;
}

}  // namespace

int orient_exact(Point a, Point b, Point c) {
    using boost::multiprecision::cpp_int;
    // det = ax*by - ax*cy - cx*by - ay*bx + ay*cx + cy*bx
    const double xs[6] = {a.x, a.x, c.x, a.y, a.y, c.y};
    const double ys[6] = {b.y, c.y, b.y, b.x, c.x, b.x};
    const int sign[6] = {+1, -1, -1, -1, +1, +1};

    cpp_int terms[6];
    int exps[6];
    int emin = 0;
    bool any = false;
    for (int i = 0; i < 6; ++i) {
        long long m1, m2;
        int e1, e2;
        split_double(xs[i], m1, e1);
        split_double(ys[i], m2, e2);
        terms[i] = cpp_int(m1) * m2 * sign[i];
        exps[i] = e1 + e2;
        if (terms[i] != 0) {
            if (!any || exps[i] < emin) emin = exps[i];
            any = true;
        }
    }
    if (!any) return 0;
    cpp_int sum = 0;
    for (int i = 0; i < 6; ++i) {
        if (terms[i] == 0) continue;
        sum += terms[i] << (exps[i] - emin);
    }
    if (sum > 0) return +1;
    if (sum < 0) return -1;
    return 0;
}

int orient(Point a, Point b, Point c) {
    const double detleft = (a.x - c.x) * (b.y - c.y);
    const double detright = (a.y - c.y) * (b.x - c.x);
    const double det = detleft - detright;

    double detsum;
    if (detleft > 0) {
        if (detright <= 0) return det > 0 ? +1 : (det < 0 ? -1 : 0);
        detsum = detleft + detright;
    } else if (detleft < 0) {
        if (detright >= 0) return det > 0 ? +1 : (det < 0 ? -1 : 0);
        detsum = -detleft - detright;
    } else {
        return det > 0 ? +1 : (det < 0 ? -1 : 0);
    }
    // Shewchuk's ccwerrboundA
    constexpr double eps = 1.1102230246251565e-16;  // 2^-53
    constexpr double errbound = (3.0 + 16.0 * eps) * eps;
    if (det >= errbound * detsum || -det >= errbound * detsum) return det > 0 ? +1 : -1;
    return orient_exact(a, b, c);
}

// ---------------------------------------------------------------------------
// segments

bool point_on_segment(Point p, const Segment& s) {
    if (orient(s.a, s.b, p) != 0) return false;
    return p.x >= std::min(s.a.x, s.b.x) && p.x <= std::max(s.a.x, s.b.x) &&
           p.y >= std::min(s.a.y, s.b.y) && p.y <= std::max(s.a.y, s.b.y);
}

namespace {

// 1-d interval overlap of collinear segments, projected on the dominant axis
bool collinear_overlap(const Segment& s1, const Segment& s2, Point& oa, Point& ob) {
    Point d = s1.b - s1.a;
    bool usex = std::abs(d.x) >= std::abs(d.y);
    auto key = [&](Point p) { return usex ? p.x : p.y; };
    double a1 = key(s1.a), b1 = key(s1.b);
    if (a1 > b1) std::swap(a1, b1);
    double a2 = key(s2.a), b2 = key(s2.b);
    if (a2 > b2) std::swap(a2, b2);
    double lo = std::max(a1, a2), hi = std::min(b1, b2);
    if (lo > hi) return false;
    auto at = [&](double k) -> Point {
        double t = (key(s1.b) == key(s1.a)) ? 0.0 : (k - key(s1.a)) / (key(s1.b) - key(s1.a));
        return s1.a + t * d;
    };
    oa = at(lo);
    ob = at(hi);
    return true;
}

}  // namespace

bool segments_intersect(const Segment& s1, const Segment& s2, IntersectMode mode) {
    int o1 = orient(s2.a, s2.b, s1.a);
    int o2 = orient(s2.a, s2.b, s1.b);
    int o3 = orient(s1.a, s1.b, s2.a);
    int o4 = orient(s1.a, s1.b, s2.b);

    if (o1 != o2 && o3 != o4 && o1 * o2 < 0 && o3 * o4 < 0) return true;  // proper crossing

    if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
        // collinear
        Point oa, ob;
        if (!collinear_overlap(s1, s2, oa, ob)) return false;
        if (mode == IntersectMode::closed) return true;
        return oa != ob;  // positive-length overlap meets the relative interiors
    }

    if (mode == IntersectMode::open) {
        // remaining contacts all involve an endpoint of one of the segments
        return false;
    }
    return (o1 == 0 && point_on_segment(s1.a, s2)) || (o2 == 0 && point_on_segment(s1.b, s2)) ||
           (o3 == 0 && point_on_segment(s2.a, s1)) || (o4 == 0 && point_on_segment(s2.b, s1));
}

std::optional<Point> segment_crossing(const Segment& s1, const Segment& s2) {
    int o1 = orient(s2.a, s2.b, s1.a);
    int o2 = orient(s2.a, s2.b, s1.b);
    int o3 = orient(s1.a, s1.b, s2.a);
    int o4 = orient(s1.a, s1.b, s2.b);
    if (!(o1 * o2 < 0 && o3 * o4 < 0)) return std::nullopt;
    Point r = s1.b - s1.a, q = s2.b - s2.a;
    double den = cross(r, q);
    double t = cross(s2.a - s1.a, q) / den;
    return s1.a + t * r;
}

// ---------------------------------------------------------------------------
// ConicArc

Point ConicArc::point_at(double t) const {
    if (kind == ArcKind::segment) return a + t * (b - a);
    double ch = std::cosh(t), sh = std::sinh(t);
    Point n = perp(axis);
    return {center.x + axis.x * a_semi * ch + n.x * b_semi * sh,
            center.y + axis.y * a_semi * ch + n.y * b_semi * sh};
}

Point ConicArc::tangent_at(double t) const {
    if (kind == ArcKind::segment) return b - a;
    double ch = std::cosh(t), sh = std::sinh(t);
    Point n = perp(axis);
    return {axis.x * a_semi * sh + n.x * b_semi * ch, axis.y * a_semi * sh + n.y * b_semi * ch};
}

double ConicArc::param_of(Point p) const {
    if (kind == ArcKind::segment) {
        Point d = b - a;
        double dd = dot(d, d);
        return dd == 0 ? 0.0 : dot(p - a, d) / dd;
    }
    double eta = dot(p - center, perp(axis));
    return std::asinh(eta / b_semi);
}

double ConicArc::defining_eval(Point p) const {
    return (dist(p, focus_a) + weight_a) - (dist(p, focus_b) + weight_b);
}

bool ConicArc::on_curve(Point p, double tol) const {
    if (kind == ArcKind::segment) {
        Point d = b - a;
        double len = norm(d);
        if (len == 0) return dist(p, a) <= tol;
        double t = dot(p - a, d) / (len * len);
        t = std::clamp(t, 0.0, 1.0);
        return dist(p, a + t * d) <= tol;
    }
    if (std::abs(defining_eval(p)) > tol) return false;
    double t = param_of(p);
    if (t < t0 - 1e-9 || t > t1 + 1e-9) {
        // parameter range check, against actual endpoint proximity at the ends
        return dist(p, a) <= tol || dist(p, b) <= tol;
    }
    return dot(p - center, axis) > 0;  // right branch only
}

bool ConicArc::is_x_monotone() const {
    if (kind == ArcKind::segment) return true;  // vertical segments: symbolic shear
    for (double t : vertical_tangency_ts()) {
        (void)t;
        return false;
    }
    return true;
}

std::vector<double> ConicArc::vertical_tangency_ts() const {
    std::vector<double> out;
    if (kind == ArcKind::segment) return out;
    // x'(t) = A sinh t + B cosh t with A = axis.x*a_semi, B = -axis.y*b_semi
    double A = axis.x * a_semi, B = -axis.y * b_semi;
    if (A == 0) return out;
    double r = -B / A;
    if (std::abs(r) >= 1.0) return out;
    double ts = std::atanh(r);
    const double margin = 1e-12 * std::max(1.0, std::max(std::abs(t0), std::abs(t1)));
    if (ts > t0 + margin && ts < t1 - margin) out.push_back(ts);
    return out;
}

ConicArc ConicArc::subarc(double ta, double tb) const {
    ConicArc c = *this;
    if (ta > tb) std::swap(ta, tb);
    if (kind == ArcKind::segment) {
        c.a = point_at(ta);
        c.b = point_at(tb);
        return c;
    }
    c.t0 = ta;
    c.t1 = tb;
    c.a = point_at(ta);
    c.b = point_at(tb);
    return c;
}

double ConicArc::y_at(double x) const {
    if (kind == ArcKind::segment) {
        if (a.x == b.x) return std::min(a.y, b.y);
        double t = (x - a.x) / (b.x - a.x);
        return a.y + t * (b.y - a.y);
    }
    auto ys = arc_x_intersections(*this, x);
    if (!ys.empty()) return ys.front();
    // x at (or numerically past) an endpoint
    return std::abs(x - a.x) <= std::abs(x - b.x) ? a.y : b.y;
}

BBox ConicArc::bounds() const {
    BBox bb{std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
    if (kind == ArcKind::hyperbola) {
        // interior y-extremum: y'(t) = C sinh t + D cosh t = 0
        double C = axis.y * a_semi, D = axis.x * b_semi;
        if (C != 0 && std::abs(D / C) < 1.0) {
            double ts = std::atanh(-D / C);
            if (ts > t0 && ts < t1) bb.expand(point_at(ts));
        }
        for (double ts : vertical_tangency_ts()) bb.expand(point_at(ts));
    }
    return bb;
}

Point ConicArc::midpoint() const {
    if (kind == ArcKind::segment) return point_at(0.5);
    return point_at((t0 + t1) / 2);
}

double ConicArc::length() const {
    if (kind == ArcKind::segment) return dist(a, b);
    double half = (t1 - t0) / 2, mid = (t0 + t1) / 2;
    double sum = 0;
    for (int i = 0; i < 16; ++i) sum += kGlWeights[i] * norm(tangent_at(mid + half * kGlNodes[i]));
    return sum * half;
}

bool ConicArc::same_support(const ConicArc& o) const {
    if (kind != ArcKind::hyperbola || o.kind != ArcKind::hyperbola) return false;
    auto eq = [](Point p, Point q) { return p.x == q.x && p.y == q.y; };
    return (eq(focus_a, o.focus_a) && eq(focus_b, o.focus_b) && weight_a == o.weight_a &&
            weight_b == o.weight_b) ||
           (eq(focus_a, o.focus_b) && eq(focus_b, o.focus_a) && weight_a == o.weight_b &&
            weight_b == o.weight_a);
}

// ---------------------------------------------------------------------------
// bisector construction

namespace {

// solve A cosh t + B sinh t = R for t; returns up to 2 solutions
void solve_cosh_sinh(double A, double B, double R, std::vector<double>& out) {
    // substitute u = e^t:  (A+B) u^2 - 2 R u + (A-B) = 0
    double p = A + B, q = -2 * R, r = A - B;
    if (p == 0) {
        if (q != 0) {
            double u = -r / q;
            if (u > 0) out.push_back(std::log(u));
        }
        return;
    }
    double disc = q * q - 4 * p * r;
    if (disc < 0) return;
    double sq = std::sqrt(disc);
    double qq = -(q + (q >= 0 ? sq : -sq)) / 2;
    double u1 = qq / p;
    double u2 = (qq == 0) ? 0.0 : r / qq;
    if (u1 > 0) out.push_back(std::log(u1));
    if (u2 > 0 && u2 != u1) out.push_back(std::log(u2));
}

// clip an x-monotone hyperbola piece to a bbox; returns kept sub-pieces
void clip_piece_to_box(const ConicArc& piece, const BBox& box, std::vector<ConicArc>& out) {
    std::vector<double> cuts{piece.t0, piece.t1};
    double A = piece.axis.x * piece.a_semi, B = -piece.axis.y * piece.b_semi;
    double C = piece.axis.y * piece.a_semi, D = piece.axis.x * piece.b_semi;
    std::vector<double> ts;
    solve_cosh_sinh(A, B, box.xlo - piece.center.x, ts);
    solve_cosh_sinh(A, B, box.xhi - piece.center.x, ts);
    solve_cosh_sinh(C, D, box.ylo - piece.center.y, ts);
    solve_cosh_sinh(C, D, box.yhi - piece.center.y, ts);
    for (double t : ts)
        if (t > piece.t0 && t < piece.t1) cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] - cuts[i] < 1e-13) continue;
        double tm = (cuts[i] + cuts[i + 1]) / 2;
        if (box.contains(piece.point_at(tm))) out.push_back(piece.subarc(cuts[i], cuts[i + 1]));
    }
}

void clip_segment_to_box(Point a, Point b, const BBox& box, std::vector<ConicArc>& out) {
    // Liang-Barsky
    double t0 = 0, t1 = 1;
    Point d = b - a;
    auto clip = [&](double p, double q) {
        if (p == 0) return q >= 0;
        double r = q / p;
        if (p < 0) {
            if (r > t1) return false;
            if (r > t0) t0 = r;
        } else {
            if (r < t0) return false;
            if (r < t1) t1 = r;
        }
        return true;
    };
    if (!clip(-d.x, a.x - box.xlo)) return;
    if (!clip(d.x, box.xhi - a.x)) return;
    if (!clip(-d.y, a.y - box.ylo)) return;
    if (!clip(d.y, box.yhi - a.y)) return;
    if (t1 - t0 <= 1e-15) return;
    out.push_back(ConicArc::segment_arc(a + t0 * d, a + t1 * d));
}

}  // namespace

std::vector<ConicArc> bisector_pieces(Point fa, double wa, Point fb, double wb, const BBox& box) {
    std::vector<ConicArc> out;
    int branch = +1;
    if (wb - wa < 0) {
        std::swap(fa, fb);
        std::swap(wa, wb);
        branch = -1;
    }
    double delta = wb - wa;
    double f2 = dist(fa, fb);
    if (f2 == 0) throw DegenerateInput("bisector_pieces: coincident foci");
    double scale = std::max({1.0, f2, box.diameter()});
    Point u = (1.0 / f2) * (fb - fa);
    Point c = 0.5 * (fa + fb);

    if (delta <= 1e-14 * scale) {
        // equal weights: perpendicular bisector line
        Point n = perp(u);
        double reach = 4 * box.diameter() + 1;
        clip_segment_to_box(c - reach * n, c + reach * n, box, out);
        return out;
    }
    if (delta >= f2 - 1e-14 * scale) {
        if (delta > f2 + 1e-14 * scale) return out;  // empty: the lighter focus always wins
        // degenerate ray from fb, directed away from fa
        double reach = 4 * box.diameter() + 1;
        clip_segment_to_box(fb, fb + reach * u, box, out);
        return out;
    }

    ConicArc h;
    h.kind = ArcKind::hyperbola;
    h.focus_a = fa;
    h.focus_b = fb;
    h.weight_a = wa;
    h.weight_b = wb;
    h.branch = branch;
    h.center = c;
    h.axis = u;
    h.a_semi = delta / 2;
    double f = f2 / 2;
    h.b_semi = std::sqrt(std::max(0.0, f * f - h.a_semi * h.a_semi));

    double reach = 2 * box.diameter() + dist(c, box.center()) + 1;
    double T = std::asinh(reach / std::max(h.a_semi, h.b_semi)) + 1;
    h.t0 = -T;
    h.t1 = T;
    h.a = h.point_at(h.t0);
    h.b = h.point_at(h.t1);

    std::vector<ConicArc> pieces;
    auto tang = h.vertical_tangency_ts();
    if (tang.empty()) {
        pieces.push_back(h);
    } else {
        pieces.push_back(h.subarc(h.t0, tang[0]));
        pieces.push_back(h.subarc(tang[0], h.t1));
    }
    for (const auto& p : pieces) clip_piece_to_box(p, box, out);
    return out;
}

std::vector<double> ConicArc::params_at_x(double x) const {
    std::vector<double> out;
    if (kind == ArcKind::segment) {
        if (a.x == b.x) return out;
        if (x < x_lo() || x > x_hi()) return out;
        out.push_back((x - a.x) / (b.x - a.x));
        return out;
    }
    double A = axis.x * a_semi, B = -axis.y * b_semi;
    std::vector<double> ts;
    solve_cosh_sinh(A, B, x - center.x, ts);
    double margin = 1e-12 * (1 + std::abs(t0) + std::abs(t1));
    for (double t : ts)
        if (t >= t0 - margin && t <= t1 + margin) out.push_back(std::clamp(t, t0, t1));
    return out;
}

std::vector<double> arc_x_intersections(const ConicArc& arc, double x) {
    std::vector<double> out;
    if (arc.kind == ArcKind::segment && arc.a.x == arc.b.x) {
        if (x == arc.a.x) {
            out.push_back(std::min(arc.a.y, arc.b.y));
            if (arc.a.y != arc.b.y) out.push_back(std::max(arc.a.y, arc.b.y));
        }
        return out;
    }
    for (double t : arc.params_at_x(x)) out.push_back(arc.point_at(t).y);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// arc-arc intersections

namespace {

void push_unique(std::vector<Point>& v, Point p, double tol) {
    for (auto& q : v)
        if (dist(p, q) <= tol) return;
    v.push_back(p);
}

void seg_seg(const ConicArc& a1, const ConicArc& a2, double tol, ArcIntersections& res) {
    Segment s1{a1.a, a1.b}, s2{a2.a, a2.b};
    int o1 = orient(s2.a, s2.b, s1.a);
    int o2 = orient(s2.a, s2.b, s1.b);
    int o3 = orient(s1.a, s1.b, s2.a);
    int o4 = orient(s1.a, s1.b, s2.b);
    if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
        Point oa, ob;
        if (collinear_overlap(s1, s2, oa, ob)) {
            if (dist(oa, ob) <= tol) {
                push_unique(res.touches, oa, tol);
            } else {
                res.overlap = true;
                res.overlap_a = oa;
                res.overlap_b = ob;
            }
        }
        return;
    }
    if (o1 * o2 < 0 && o3 * o4 < 0) {
        if (auto p = segment_crossing(s1, s2)) push_unique(res.points, *p, tol);
        return;
    }
    // endpoint contacts
    if (o1 == 0 && point_on_segment(s1.a, s2)) push_unique(res.touches, s1.a, tol);
    if (o2 == 0 && point_on_segment(s1.b, s2)) push_unique(res.touches, s1.b, tol);
    if (o3 == 0 && point_on_segment(s2.a, s1)) push_unique(res.touches, s2.a, tol);
    if (o4 == 0 && point_on_segment(s2.b, s1)) push_unique(res.touches, s2.b, tol);
}

void seg_hyp(const ConicArc& seg, const ConicArc& hyp, double tol, ArcIntersections& res) {
    // transform the segment into the hyperbola's canonical frame and solve the quadratic
    Point u = hyp.axis, n = perp(u);
    Point p0 = seg.a - hyp.center, d = seg.b - seg.a;
    double xi0 = dot(p0, u), eta0 = dot(p0, n);
    double dxi = dot(d, u), deta = dot(d, n);
    double A = hyp.a_semi, B = hyp.b_semi;
    // B^2 xi^2 - A^2 eta^2 = A^2 B^2
    double qa = B * B * dxi * dxi - A * A * deta * deta;
    double qb = 2 * (B * B * xi0 * dxi - A * A * eta0 * deta);
    double qc = B * B * xi0 * xi0 - A * A * eta0 * eta0 - A * A * B * B;
    std::vector<double> ss;
    if (std::abs(qa) < 1e-300) {
        if (qb != 0) ss.push_back(-qc / qb);
    } else {
        double disc = qb * qb - 4 * qa * qc;
        if (disc < 0) return;
        double sq = std::sqrt(disc);
        double qq = -(qb + (qb >= 0 ? sq : -sq)) / 2;
        ss.push_back(qq / qa);
        if (qq != 0) ss.push_back(qc / qq);
    }
    double seglen = dist(seg.a, seg.b);
    double stol = seglen > 0 ? tol / seglen : 0;
    for (double s : ss) {
        if (s < -stol || s > 1 + stol) continue;
        Point p = seg.a + s * d;
        double xi = xi0 + s * dxi;
        if (xi <= 0) continue;  // wrong branch
        double t = hyp.param_of(p);
        double ttol = 1e-9 * (1 + std::abs(hyp.t0) + std::abs(hyp.t1));
        if (t < hyp.t0 - ttol || t > hyp.t1 + ttol) continue;
        // transversal if the segment direction is not parallel to the curve tangent
        Point tv = hyp.tangent_at(t);
        bool interior = s > stol && s < 1 - stol && t > hyp.t0 + ttol && t < hyp.t1 - ttol;
        if (interior && std::abs(cross(d, tv)) > 1e-12 * norm(d) * norm(tv)) {
            push_unique(res.points, p, tol);
        } else {
            push_unique(res.touches, p, tol);
        }
    }
}

void hyp_hyp(const ConicArc& h1, const ConicArc& h2, double tol, ArcIntersections& res) {
    // root isolation of g2 along h1's parameter, then Newton polish
    const int kSamples = 96;
    double lo = h1.t0, hi = h1.t1;
    double prev_t = lo;
    double prev_v = h2.defining_eval(h1.point_at(lo));
    auto grad2 = [&](Point p) {
        Point ga = (1.0 / std::max(dist(p, h2.focus_a), 1e-300)) * (p - h2.focus_a);
        Point gb = (1.0 / std::max(dist(p, h2.focus_b), 1e-300)) * (p - h2.focus_b);
        return ga - gb;
    };
    std::vector<double> roots;
    for (int i = 1; i <= kSamples; ++i) {
        double t = lo + (hi - lo) * i / kSamples;
        double v = h2.defining_eval(h1.point_at(t));
        if ((prev_v <= 0 && v >= 0) || (prev_v >= 0 && v <= 0)) {
            double ta = prev_t, tb = t, va = prev_v;
            for (int it = 0; it < 80; ++it) {
                double tm = (ta + tb) / 2;
                double vm = h2.defining_eval(h1.point_at(tm));
                if ((va <= 0 && vm <= 0) || (va >= 0 && vm >= 0)) {
                    ta = tm;
                    va = vm;
                } else {
                    tb = tm;
                }
            }
            double tr = (ta + tb) / 2;
            for (int it = 0; it < 3; ++it) {  // Newton polish
                Point p = h1.point_at(tr);
                double g = h2.defining_eval(p);
                double dg = dot(grad2(p), h1.tangent_at(tr));
                if (dg == 0) break;
                double step = g / dg;
                if (std::abs(step) > (hi - lo)) break;
                tr -= step;
            }
            tr = std::clamp(tr, lo, hi);
            roots.push_back(tr);
        }
        prev_t = t;
        prev_v = v;
    }
    for (double t : roots) {
        Point p = h1.point_at(t);
        if (std::abs(h2.defining_eval(p)) > tol) continue;
        double t2 = h2.param_of(p);
        double ttol = 1e-9 * (1 + std::abs(h2.t0) + std::abs(h2.t1));
        if (t2 < h2.t0 - ttol || t2 > h2.t1 + ttol) continue;
        if (dot(p - h2.center, h2.axis) <= 0) continue;
        Point tv1 = h1.tangent_at(t), tv2 = h2.tangent_at(t2);
        if (std::abs(cross(tv1, tv2)) > 1e-12 * norm(tv1) * norm(tv2)) {
            push_unique(res.points, p, tol);
        } else {
            push_unique(res.touches, p, tol);
        }
    }
}

}  // namespace

ArcIntersections arc_arc_intersections(const ConicArc& a1, const ConicArc& a2, double tol) {
    ArcIntersections res;
    if (a1.kind == ArcKind::segment && a2.kind == ArcKind::segment) {
        seg_seg(a1, a2, tol, res);
    } else if (a1.kind == ArcKind::segment) {
        seg_hyp(a1, a2, tol, res);
    } else if (a2.kind == ArcKind::segment) {
        seg_hyp(a2, a1, tol, res);
    } else {
        if (a1.same_support(a2)) throw OverlapUnsupported("identical hyperbola supports");
        hyp_hyp(a1, a2, tol, res);
    }
    return res;
}

// ---------------------------------------------------------------------------
// TarskiCell

TarskiCell TarskiCell::triangle(Point a, Point b, Point c) {
    TarskiCell cell;
    cell.shape = CellShape::loop;
    cell.arcs = {ConicArc::segment_arc(a, b), ConicArc::segment_arc(b, c),
                 ConicArc::segment_arc(c, a)};
    cell.interior_sample = {(a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3};
    return cell;
}

namespace {

double far_side_value(const ConicArc& far, Point p) {
    if (far.kind == ArcKind::segment) {
        Point d = far.b - far.a;
        double len = norm(d);
        if (len == 0) return 0;
        return cross(d, p - far.a) / len;  // signed distance
    }
    return far.defining_eval(p);
}

}  // namespace

TarskiCell TarskiCell::fan(Point apex, const ConicArc& far_arc, double tol) {
    TarskiCell cell;
    cell.shape = CellShape::fan;
    cell.apex = apex;
    cell.arcs = {ConicArc::segment_arc(apex, far_arc.a), far_arc,
                 ConicArc::segment_arc(far_arc.b, apex)};
    for (double lam : {0.5, 0.25, 0.75, 0.1, 0.9}) {
        Point m = far_arc.midpoint();
        Point q = apex + lam * (m - apex);
        double sv = far_side_value(far_arc, q);
        if (std::abs(sv) > tol) {
            cell.side_sign = sv > 0 ? +1 : -1;
            cell.interior_sample = q;
            break;
        }
    }
    return cell;
}

bool TarskiCell::contains(Point p, double tol) const {
    if (shape == CellShape::fan) {
        if (dist(p, apex) <= tol) return true;
        const ConicArc& far = arcs[1];
        // angular wedge about the apex, handling sweeps beyond pi
        double tha = std::atan2(far.a.y - apex.y, far.a.x - apex.x);
        double thb = std::atan2(far.b.y - apex.y, far.b.x - apex.x);
        double thm = std::atan2(far.midpoint().y - apex.y, far.midpoint().x - apex.x);
        double thp = std::atan2(p.y - apex.y, p.x - apex.x);
        auto fwd = [](double from, double to) {
            double d = to - from;
            while (d < 0) d += 2 * M_PI;
            while (d >= 2 * M_PI) d -= 2 * M_PI;
            return d;
        };
        // orient the sweep a -> b so that it passes through the arc midpoint
        double sweep = fwd(tha, thb);
        bool ccw = fwd(tha, thm) <= sweep + 1e-12;
        if (!ccw) {
            std::swap(tha, thb);
            sweep = fwd(tha, thb);
        }
        double dp = fwd(tha, thp);
        double atol = tol / std::max(dist(p, apex), tol);
        if (dp > sweep + atol && (2 * M_PI - dp) > atol) return false;
        // on the apex side of the far arc's supporting curve
        double sv = far_side_value(arcs[1], p);
        if (std::abs(sv) <= tol) return true;
        return (sv > 0 ? +1 : -1) == side_sign;
    }
    // loop: boundary first, then even-odd with lexicographic half-open rule
    for (const auto& arc : arcs)
        if (arc.on_curve(p, tol)) return true;
    int crossings = 0;
    for (const auto& arc : arcs) {
        if (arc.kind == ArcKind::segment && arc.a.x == arc.b.x) continue;
        Point lo = arc.lex_lo(), hi = arc.lex_hi();
        if (p.x < lo.x || p.x >= hi.x) continue;
        for (double y : arc_x_intersections(arc, p.x))
            if (y > p.y) ++crossings;
    }
    return (crossings % 2) == 1;
}

BBox TarskiCell::bounds() const {
    BBox bb = arcs[0].bounds();
    for (size_t i = 1; i < arcs.size(); ++i) {
        BBox o = arcs[i].bounds();
        bb.expand({o.xlo, o.ylo});
        bb.expand({o.xhi, o.yhi});
    }
    if (shape == CellShape::fan) bb.expand(apex);
    return bb;
}

double arc_area_term(const ConicArc& arc) {
    if (arc.kind == ArcKind::segment) return (arc.a.x + arc.b.x) * (arc.b.y - arc.a.y) / 2;
    // integral of x dy along the arc, Gauss-Legendre
    double half = (arc.t1 - arc.t0) / 2, mid = (arc.t0 + arc.t1) / 2;
    double sum = 0;
    for (int i = 0; i < 16; ++i) {
        double t = mid + half * kGlNodes[i];
        sum += kGlWeights[i] * arc.point_at(t).x * arc.tangent_at(t).y;
    }
    return sum * half;
}

double TarskiCell::area() const {
    double s = 0;
    for (const auto& arc : arcs) s += arc_area_term(arc);
    return std::abs(s);
}

}  // namespace geopath
