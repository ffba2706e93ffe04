#pragma once

#include <memory>
#include <vector>

#include "geopath/cuttings.hpp"
#include "geopath/geodesic.hpp"

namespace geopath {

// one augmented-SPM region: a fan cell (two apex segments + one far arc)
struct SpmRegion {
    int id = -1;      // index in the multiset
    int source = -1;  // vertex whose SPM it belongs to
    int apex = -1;    // first vertex on the shortest path toward the source
    double weight = 0;  // d(apex, source)
    TarskiCell cell;
};

// labeled arrangement of one source, kept for point location
struct SourceSpm {
    int source = -1;
    std::unique_ptr<TrapMap> map;
    std::vector<int> cell_label;      // per map cell: apex vertex or -1 (outside P)
    std::vector<int> cell_component;  // per map cell: merged SPM' component or -1
    std::vector<std::vector<int>> component_regions;  // component -> region ids
    int ambiguous_labels = 0;  // samples where two apexes tie beyond tolerance
};

class RegionMultiset {
  public:
    const PolygonalDomain* dom = nullptr;
    std::vector<SpmRegion> regions;
    std::vector<std::vector<int>> by_source;
    std::vector<SourceSpm> spms;

    int size() const { return static_cast<int>(regions.size()); }

    // the one region of `source` containing p, smallest id on boundary ties
    int region_containing(int source, Point p) const;
    // T_p: one region per source; throws PointOutsideDomain
    std::vector<int> regions_containing(Point p) const;

    // all SPM' regions containing p for this source (boundary multiplicity)
    std::vector<int> all_regions_containing(int source, Point p) const;
};

// SPM'(v) + fan augmentation for a single source vertex
std::vector<SpmRegion> build_spm(const PolygonalDomain& dom, const VisibilityGraph& vg,
                                 const GeodesicMatrix& gm, const SeesIndex& si, int source,
                                 SourceSpm* out_spm);

RegionMultiset build_region_multiset(const PolygonalDomain& dom, const VisibilityGraph& vg,
                                     const GeodesicMatrix& gm, const SeesIndex& si);

// Rel(A x B): same-source pairs, by bucket join
std::vector<std::pair<int, int>> relevant_pairs(const RegionMultiset& ms,
                                                const std::vector<int>& a_ids,
                                                const std::vector<int>& b_ids);

}  // namespace geopath
