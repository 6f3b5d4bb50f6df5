#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nodalab/nesting.hpp"
#include "nodalab/nodal2d.hpp"

namespace nodalab {

// Lattice points to resolve, with the sign of the perturbation there.
// sign +1 joins the two positive-f0 cells meeting at the point, -1 the
// negative pair.
struct PerturbationSpec {
    int dim = 2;  // 2 or 3
    std::vector<std::array<int, 3>> points;  // z ignored when dim == 2
    std::vector<int> signs;
    double epsilon = 0.1;

    void validate() const;
};

// Finite sum of unit wavevectors (the monochromatic class A_1).  The barrier
// base f0 lives on the spectral circle of radius pi*sqrt(2) in lattice
// coordinates, so the perturbation is evaluated at the common scale:
// psi(x) = sum_j a_j cos(k0 <xi_j, x>) + b_j sin(...), k0 = pi*sqrt(2),
// |xi_j| = 1.
inline constexpr double kBarrierWaveScale = 4.442882938158366;  // pi*sqrt(2)

struct UnitWaveField {
    int dim = 2;
    std::vector<std::array<double, 3>> wavevectors;  // unit norm
    std::vector<double> cos_amps;
    std::vector<double> sin_amps;

    double value(double x, double y, double z = 0) const;
};

enum class BarrierBase { Grid2D, Boxes3D };

struct BarrierFunction {
    BarrierBase base = BarrierBase::Grid2D;
    UnitWaveField perturbation;
    double epsilon = 0.1;

    double value(double x, double y, double z = 0) const;
};

// f0(x1,x2) = sin(pi x1) sin(pi x2); nodal set = the integer grid, conic
// singularities at lattice points.
double grid_function_2d(double x, double y);

// f0 = sin sin + sin sin + sin sin over the three coordinate pairs.
double boxes_function_3d(double x, double y, double z);

// psi with psi(k) = sign_k at every k in spec, solved by least squares over
// random unit wavevectors; redraws on rank deficiency (<= 10 attempts).
// Requires num_waves >= 2 |K|.
UnitWaveField interpolate_signs(const PerturbationSpec& spec, int num_waves,
                                std::uint64_t seed);

BarrierFunction resolve_singularities(BarrierBase base, const PerturbationSpec& spec,
                                      std::uint64_t seed = 1);

struct RealizeOptions {
    double epsilon = 0.1;
    double spacing = 1.0 / 48.0;  // verification grid step, lattice units
    std::uint64_t seed = 1;
    int max_attempts = 12;
    int margin_cells = 5;  // random sea left around the construction
};

struct TreeRealization {
    PerturbationSpec spec;
    BarrierFunction field;
    RootedTree target;
    RootedTree verified;  // canonical code the pipeline produced
    double window_x0 = 0, window_y0 = 0, window_w = 0, window_h = 0;
    ScalarGrid grid;
    SignedComponents components;
    NodalCurveSet curves;
    int root_domain = -1;
    int root_edge = -1;  // curve index of the root <-> ambient boundary
    int attempts = 0;
};

// Constructs lattice resolutions realizing the target as a nesting end and
// verifies through the full pipeline; throws if verification cannot be
// achieved.  The returned spec holds the resolved corners and their signs.
TreeRealization realize_tree(const RootedTree& target, const RealizeOptions& opts = {});

// Evaluate a 2-D barrier field on a planar window (fast path for the
// verification grids).
ScalarGrid barrier_grid(const BarrierFunction& f, double x0, double y0, double width,
                        double height, double spacing);

}  // namespace nodalab
