#pragma once

#include <array>
#include <functional>
#include <vector>

#include "nodalab/ensemble.hpp"

namespace nodalab {

enum class Geometry2 { PlanarRect, FlatTorus, SphereLonLat };

// Scalar samples on a structured 2-D grid.
//
// PlanarRect / FlatTorus: sample (r,c) sits at world position
//   (x0 + (c+0.5) dx, y0 + (r+0.5) dy),
// i.e. at cell centers; a torus has periods (cols*dx, rows*dy).
// SphereLonLat: sample (r,c) sits at (theta = r*pi/(rows-1), phi = c*2pi/cols);
// the polar rows r = 0 and r = rows-1 hold the pole value duplicated across
// all columns.
struct ScalarGrid {
    Geometry2 geometry = Geometry2::PlanarRect;
    int rows = 0;
    int cols = 0;
    double x0 = 0, y0 = 0, dx = 0, dy = 0;
    std::vector<double> values;
    // Field behind the grid in world coordinates ((x,y) or (theta,phi));
    // used to disambiguate saddle cells.  May be empty.
    std::function<double(double, double)> sampler;
    double wavelength = 0;  // 2pi/T of the generating field, 0 if unknown

    double at(int r, int c) const { return values[(std::size_t)r * cols + c]; }
    double& at(int r, int c) { return values[(std::size_t)r * cols + c]; }
    std::array<double, 2> pos(int r, int c) const;
    // area of the surface patch represented by sample (r,c)
    double pixel_area(int r, int c) const;
};

enum class Geometry3 { PlanarBox, Torus3 };

// Scalar samples on a structured 3-D grid; same cell-center convention for
// boxes, periods (n*dx, ...) for the 3-torus.
struct ScalarGrid3 {
    Geometry3 geometry = Geometry3::PlanarBox;
    int nx = 0, ny = 0, nz = 0;
    double x0 = 0, y0 = 0, z0 = 0;
    double dx = 0, dy = 0, dz = 0;
    std::vector<double> values;  // index (i,j,k) -> ((k*ny)+j)*nx + i
    double wavelength = 0;

    double at(int i, int j, int k) const {
        return values[((std::size_t)k * ny + j) * nx + i];
    }
    double& at(int i, int j, int k) {
        return values[((std::size_t)k * ny + j) * nx + i];
    }
    std::array<double, 3> pos(int i, int j, int k) const;
};

// Grids must carry >= 10 samples per wavelength unless explicitly overridden.
inline constexpr double kMinSamplesPerWavelength = 10.0;
inline constexpr double kDefaultSamplesPerWavelength = 12.0;

ScalarGrid grid_sphere(const SphericalField& f,
                       double samples_per_wavelength = kDefaultSamplesPerWavelength,
                       bool allow_under_resolved = false);
ScalarGrid grid_torus(const TorusField& f,
                      double samples_per_wavelength = kDefaultSamplesPerWavelength,
                      bool allow_under_resolved = false);
ScalarGrid grid_planar(const PlaneWaveField& f, double x0, double y0,
                       double width, double height,
                       double samples_per_wavelength = kDefaultSamplesPerWavelength,
                       bool allow_under_resolved = false);
ScalarGrid3 grid_torus3(const Torus3Field& f,
                        double samples_per_wavelength = kDefaultSamplesPerWavelength,
                        bool allow_under_resolved = false);

// Arbitrary function on a window; used by the barrier constructions and by
// tests with analytic fields.  spacing is the sample step.
ScalarGrid grid_function(const std::function<double(double, double)>& fn,
                         Geometry2 geometry, double x0, double y0, double width,
                         double height, double spacing, double wavelength = 0,
                         bool allow_under_resolved = false);
ScalarGrid3 grid3_function(const std::function<double(double, double, double)>& fn,
                           Geometry3 geometry, double x0, double y0, double z0,
                           double width, double height, double depth, int n,
                           double wavelength = 0, bool allow_under_resolved = false);

// Circle samples plus cyclic sign-change count (zero counting for n = 1).
std::vector<double> sample_circle_values(const CircleField& f,
                                         double samples_per_wavelength = kDefaultSamplesPerWavelength);
int count_sign_changes_cyclic(const std::vector<double>& values);

}  // namespace nodalab
