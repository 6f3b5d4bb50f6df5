#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nodalab/grid.hpp"
#include "nodalab/stats.hpp"

namespace nodalab {

struct TriangleMesh {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::array<double, 3> period{0, 0, 0};  // per-axis period, 0 = aperiodic
};

struct SurfaceComponent {
    long num_vertices = 0;
    long num_edges = 0;
    long num_faces = 0;
    long euler = 0;  // V - E + F
    int genus = -1;  // (2 - euler)/2 for watertight orientable components
    bool watertight = false;
    bool orientable = false;
    double area = 0;
};

// Isosurface extraction at level 0 with the asymptotic decider on ambiguous
// faces.  Face segments are computed from shared data, so the mesh is crack
// free; throws on a non-manifold edge (under-resolution).
TriangleMesh marching_cubes(const ScalarGrid3& grid);

std::vector<SurfaceComponent> split_components(const TriangleMesh& mesh);

struct GenusDistributionResult {
    EmpiricalMeasure measure;  // atoms = genus values
    double mean_genus = 0;
    double stderr_ = 0;
    long total_components = 0;
    long flagged_components = 0;  // non-watertight, excluded and counted
    double euler_sum = 0;         // sum over components of 2(1 - g)
    long num_samples = 0;
};

GenusDistributionResult genus_distribution(double alpha, double T, int num_samples,
                                           std::uint64_t seed,
                                           double samples_per_wavelength = kDefaultSamplesPerWavelength);

}  // namespace nodalab
