#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "nodalab/grid.hpp"

namespace nodalab {

// A nodal domain extracted from a sign grid.
struct ComponentInfo {
    int id = 0;
    int sign = 0;  // +1 / -1
    long cell_count = 0;
    double area = 0;
    bool touches_boundary = false;  // planar windows only
    bool sub_resolution = false;    // fewer than 4 cells
};

// Connected components of the sign grid under 4-connectivity plus
// saddle-resolved diagonal joins.  Labels partition all pixels.
struct SignedComponents {
    std::vector<int> label;  // rows*cols, component id per pixel
    std::vector<ComponentInfo> components;
    // per-plaquette saddle resolution: +1 joins the positive diagonal,
    // -1 the negative one, 0 = degenerate tie (no join)
    std::unordered_map<std::int64_t, int> saddle_decisions;
    int degenerate_saddles = 0;
    int rows = 0, cols = 0;
};

// One nodal curve: a closed polyline on grid-cell edges with its two
// adjacent domains.
struct Curve {
    std::vector<std::array<double, 2>> points;  // world coords ((x,y) or (theta,phi))
    int domain_pos = -1;  // domain on the positive side
    int domain_neg = -1;
    double length = 0;
    bool closed = true;
};

struct NodalCurveSet {
    std::vector<Curve> curves;   // closed curves only
    int discarded_open = 0;      // curves that exited a planar window
    int degenerate_saddles = 0;  // ties encountered during pairing
};

// Per-domain number of boundary curves m(omega).
struct DomainConnectivity {
    std::vector<int> m;  // indexed by component id
};

// Boundary-filtered view for planar counting windows.
struct FilteredView {
    std::vector<int> kept_domains;
    std::vector<int> kept_curves;  // indices into NodalCurveSet::curves
    int raw_domains = 0;
    int raw_curves = 0;
};

SignedComponents label_domains(const ScalarGrid& grid);
NodalCurveSet extract_nodal_curves(const ScalarGrid& grid, const SignedComponents& comps);
DomainConnectivity connectivity(const SignedComponents& comps, const NodalCurveSet& curves);
FilteredView filter_boundary(const ScalarGrid& grid, const SignedComponents& comps,
                             const NodalCurveSet& curves, double margin);

}  // namespace nodalab
