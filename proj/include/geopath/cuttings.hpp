#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "geopath/geom.hpp"

namespace geopath {

struct TrapArc {
    ConicArc geo;
    int owner = -1;  // region id, -1 for raw curves / container
};

// pseudo trapezoid: two wall x-coordinates, top and bottom arc references
struct TrapCell {
    double lx = 0, rx = 0;
    int top = 1, bottom = 0;  // indices into the arc table
    int id = 0;
    bool alive = true;
    int lowner = -1, rowner = -1;   // regions whose vertices induced the walls
    std::vector<int> children;      // history DAG (set when the cell dies)
    std::vector<int> conflicts;     // regions whose boundary crosses the open cell
};

// Incremental vertical decomposition of x-monotone arcs inside a container
// cell. Insertions only ever split cells, so the history DAG doubles as the
// point-location structure. Vertical input segments act as wall makers.
class TrapMap {
  public:
    static TrapMap over_box(const BBox& box, double tol);
    // sub-map whose container is cell `cid` of this map
    TrapMap sub_map(int cid) const;

    void attach_regions(const std::vector<TarskiCell>* regions) { regions_ = regions; }
    void init_conflicts(const std::vector<int>& region_ids);

    void insert_curve(const ConicArc& arc, int owner = -1);
    void insert_region(int rid);  // inserts the region boundary, redistributing conflicts

    int locate(Point p) const;  // alive cell id; boundary ties -> smallest id
    bool cell_contains(int cid, Point p, double pad) const;

    const std::vector<TrapCell>& cells() const { return cells_; }
    const TrapArc& arc(int i) const { return arcs_[i]; }
    std::vector<int> alive_cells() const;
    int num_alive() const;

    double ybot(int cid, double x) const;
    double ytop(int cid, double x) const;
    Point cell_sample(int cid) const;
    double cell_area(int cid) const;
    BBox cell_bbox(int cid) const;
    double tol() const { return tol_; }

    bool arc_crosses_cell(const ConicArc& arc, int cid) const;
    bool region_conflicts_cell(int rid, int cid) const;
    std::vector<ConicArc> clip_arc_to_container(const ConicArc& arc) const;

    int container_cell() const { return root_; }

  private:
    TrapMap() = default;
    double tol_ = 1e-9;
    double snap_ = 1e-12;  // minimum wall spacing; events closer reuse the wall
    std::vector<TrapArc> arcs_;
    std::vector<TrapCell> cells_;
    std::vector<int> inserted_;  // arc ids already part of the decomposition
    const std::vector<TarskiCell>* regions_ = nullptr;
    int root_ = 0;
    ConicArc cont_top_, cont_bot_;
    double cont_lx_ = 0, cont_rx_ = 0;

    int new_cell(double lx, double rx, int top, int bottom, int lo, int ro);
    void redistribute(const TrapCell& parent, int child, int skip_region);
    void split_vertical(int cid, double xs, int owner, int skip_region);
    void split_horizontal(int cid, int aid, int skip_region);
    void insert_arc_internal(const ConicArc& arc, int owner, int skip_region);
};

// Lemma-4 style randomized vertical decomposition: decompose a uniform random
// r-subset of the regions, with conflict lists against all of them.
TrapMap vertical_decomposition(const std::vector<TarskiCell>& regions, int r, uint64_t seed,
                               const BBox& box, double tol);

// 1/r-cutting with exact floor(N/r) conflict bound, built by sampling plus
// refinement of heavy cells; throws RetryBudgetExceeded after 64 attempts.
class Cutting {
  public:
    Cutting(const std::vector<TarskiCell>& regions, const std::vector<int>& ids, int r,
            uint64_t seed, const BBox& box, double tol);

    int r() const { return r_; }
    int num_regions() const { return n_; }
    int num_cells() const { return static_cast<int>(final_.size()); }

    int locate(Point p) const;  // final cell id; throws OutsideBoundingBox
    const std::vector<int>& conflicts(int fid) const;
    std::vector<int> defining(int fid) const;
    Point sample(int fid) const;
    BBox cell_bbox(int fid) const;
    double cell_area(int fid) const;
    bool cell_contains(int fid, Point p, double pad) const;
    double container_area() const;
    BBox box() const { return box_; }

    // total conflict-list mass, for instrumentation
    long long conflict_total() const;

  private:
    struct FinalRef {
        int sub;    // -1: cell of the main map, else index into subs_
        int local;  // cell id within that map
    };
    std::vector<FinalRef> final_;
    std::vector<int> final_of_main_;  // main alive cell id -> final id or -1 (refined)
    std::vector<std::vector<int>> final_of_sub_;
    std::unique_ptr<TrapMap> main_;
    std::vector<std::unique_ptr<TrapMap>> subs_;
    std::vector<int> sub_of_main_;  // main cell id -> sub index or -1
    int r_ = 1, n_ = 0;
    BBox box_;
    const TrapMap& map_of(int fid) const;
};

}  // namespace geopath
