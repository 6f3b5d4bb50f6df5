#include "nodalab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nodalab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_resolution(double spacing, double wavelength, bool allow) {
    if (wavelength <= 0) return;
    if (spacing > wavelength / kMinSamplesPerWavelength + 1e-12 && !allow)
        throw std::invalid_argument(
            "grid: fewer than 10 samples per wavelength (pass allow_under_resolved to override)");
}

}  // namespace

std::array<double, 2> ScalarGrid::pos(int r, int c) const {
    if (geometry == Geometry2::SphereLonLat)
        return {std::numbers::pi * r / (rows - 1), kTwoPi * c / cols};
    return {x0 + (c + 0.5) * dx, y0 + (r + 0.5) * dy};
}

double ScalarGrid::pixel_area(int r, int c) const {
    (void)c;
    if (geometry != Geometry2::SphereLonLat) return dx * dy;
    double dtheta = std::numbers::pi / (rows - 1);
    double lo = std::max(0.0, (r - 0.5) * dtheta);
    double hi = std::min(std::numbers::pi, (r + 0.5) * dtheta);
    return (std::cos(lo) - std::cos(hi)) * kTwoPi / cols;
}

std::array<double, 3> ScalarGrid3::pos(int i, int j, int k) const {
    return {x0 + (i + 0.5) * dx, y0 + (j + 0.5) * dy, z0 + (k + 0.5) * dz};
}

ScalarGrid grid_sphere(const SphericalField& f, double spw, bool allow_under) {
    double T = std::sqrt((double)f.ell_max * (f.ell_max + 1));
    double wavelength = kTwoPi / T;
    int rows = (int)std::ceil(spw * T / 2.0) + 1;
    int cols = (int)std::ceil(spw * T);
    check_resolution(std::numbers::pi / (rows - 1), wavelength, allow_under);

    ScalarGrid g;
    g.geometry = Geometry2::SphereLonLat;
    g.rows = rows;
    g.cols = cols;
    g.wavelength = wavelength;
    g.values.assign((std::size_t)rows * cols, 0.0);
    g.sampler = [f](double theta, double phi) { return f.value(theta, phi); };

    // Row synthesis: Legendre values once per latitude, then a Fourier sum in
    // longitude with precomputed cos/sin tables.
    const int mmax = f.ell_max;
    std::vector<double> cos_tab((std::size_t)(mmax + 1) * cols), sin_tab((std::size_t)(mmax + 1) * cols);
    for (int m = 0; m <= mmax; ++m)
        for (int c = 0; c < cols; ++c) {
            double a = kTwoPi * m * c / cols;
            cos_tab[(std::size_t)m * cols + c] = std::cos(a);
            sin_tab[(std::size_t)m * cols + c] = std::sin(a);
        }
    std::vector<double> P, Am(mmax + 1), Bm(mmax + 1);
    for (int r = 0; r < rows; ++r) {
        double theta = std::numbers::pi * r / (rows - 1);
        legendre_row(f.ell_max, std::cos(theta), P);
        std::fill(Am.begin(), Am.end(), 0.0);
        std::fill(Bm.begin(), Bm.end(), 0.0);
        for (int ell = f.ell_min; ell <= f.ell_max; ++ell) {
            const double* c = f.coeffs.data() + f.coeff_offset(ell);
            const std::size_t base = (std::size_t)ell * (ell + 1) / 2;
            Am[0] += c[0] * P[base];
            for (int m = 1; m <= ell; ++m) {
                double b = std::numbers::sqrt2 * P[base + m];
                Am[m] += b * c[2 * m - 1];
                Bm[m] += b * c[2 * m];
            }
        }
        for (int c = 0; c < cols; ++c) {
            double sum = Am[0];
            for (int m = 1; m <= mmax; ++m)
                sum += Am[m] * cos_tab[(std::size_t)m * cols + c] +
                       Bm[m] * sin_tab[(std::size_t)m * cols + c];
            g.at(r, c) = f.normalization * sum;
        }
    }
    return g;
}

ScalarGrid grid_torus(const TorusField& f, double spw, bool allow_under) {
    double maxnorm = 0.0;
    for (const auto& m : f.freqs)
        maxnorm = std::max(maxnorm, std::hypot((double)m[0], (double)m[1]));
    double wavelength = 1.0 / maxnorm;
    int n = (int)std::ceil(spw * maxnorm);
    check_resolution(1.0 / n, wavelength, allow_under);

    ScalarGrid g;
    g.geometry = Geometry2::FlatTorus;
    g.rows = n;
    g.cols = n;
    g.x0 = 0;
    g.y0 = 0;
    g.dx = 1.0 / n;
    g.dy = 1.0 / n;
    g.wavelength = wavelength;
    g.values.assign((std::size_t)n * n, 0.0);
    g.sampler = [f](double x, double y) { return f.value(x, y); };

    // accumulate one frequency at a time, rotating the phase along each row
    for (std::size_t j = 0; j < f.freqs.size(); ++j) {
        double a = f.cos_amps[j], b = f.sin_amps[j];
        double stepx = kTwoPi * f.freqs[j][0] / n;
        double cx = std::cos(stepx), sx = std::sin(stepx);
        for (int r = 0; r < n; ++r) {
            double ph0 = kTwoPi * (f.freqs[j][0] * 0.5 + f.freqs[j][1] * (r + 0.5)) / n;
            double c = std::cos(ph0), s = std::sin(ph0);
            double* row = &g.values[(std::size_t)r * n];
            for (int cidx = 0; cidx < n; ++cidx) {
                row[cidx] += a * c + b * s;
                double cn = c * cx - s * sx;
                s = s * cx + c * sx;
                c = cn;
            }
        }
    }
    for (auto& v : g.values) v *= f.normalization;
    return g;
}

ScalarGrid grid_planar(const PlaneWaveField& f, double x0, double y0, double width,
                       double height, double spw, bool allow_under) {
    double wavelength = kTwoPi;  // shortest wavelength of the unit annulus
    double spacing = wavelength / spw;
    int cols = (int)std::ceil(width / spacing);
    int rows = (int)std::ceil(height / spacing);
    check_resolution(spacing, wavelength, allow_under);

    ScalarGrid g;
    g.geometry = Geometry2::PlanarRect;
    g.rows = rows;
    g.cols = cols;
    g.x0 = x0;
    g.y0 = y0;
    g.dx = width / cols;
    g.dy = height / rows;
    g.wavelength = wavelength;
    g.values.assign((std::size_t)rows * cols, 0.0);
    g.sampler = [f](double x, double y) { return f.value(x, y); };

    for (std::size_t j = 0; j < f.wavevectors.size(); ++j) {
        double a = f.cos_amps[j], b = f.sin_amps[j];
        double kx = f.wavevectors[j][0], ky = f.wavevectors[j][1];
        double stepx = kx * g.dx;
        double cx = std::cos(stepx), sx = std::sin(stepx);
        for (int r = 0; r < rows; ++r) {
            double ph0 = kx * (x0 + 0.5 * g.dx) + ky * (y0 + (r + 0.5) * g.dy);
            double c = std::cos(ph0), s = std::sin(ph0);
            double* row = &g.values[(std::size_t)r * cols];
            for (int cidx = 0; cidx < cols; ++cidx) {
                row[cidx] += a * c + b * s;
                double cn = c * cx - s * sx;
                s = s * cx + c * sx;
                c = cn;
            }
        }
    }
    for (auto& v : g.values) v *= f.normalization;
    return g;
}

ScalarGrid3 grid_torus3(const Torus3Field& f, double spw, bool allow_under) {
    double maxnorm = 0.0;
    for (const auto& m : f.freqs)
        maxnorm = std::max(maxnorm, std::sqrt((double)m[0] * m[0] + (double)m[1] * m[1] +
                                              (double)m[2] * m[2]));
    double wavelength = 1.0 / maxnorm;
    int n = (int)std::ceil(spw * maxnorm);
    check_resolution(1.0 / n, wavelength, allow_under);

    ScalarGrid3 g;
    g.geometry = Geometry3::Torus3;
    g.nx = g.ny = g.nz = n;
    g.dx = g.dy = g.dz = 1.0 / n;
    g.wavelength = wavelength;
    g.values.assign((std::size_t)n * n * n, 0.0);

    for (std::size_t j = 0; j < f.freqs.size(); ++j) {
        double a = f.cos_amps[j], b = f.sin_amps[j];
        double stepx = kTwoPi * f.freqs[j][0] / n;
        double cx = std::cos(stepx), sx = std::sin(stepx);
        for (int k = 0; k < n; ++k) {
            for (int jj = 0; jj < n; ++jj) {
                double ph0 = kTwoPi *
                             (f.freqs[j][0] * 0.5 + f.freqs[j][1] * (jj + 0.5) +
                              f.freqs[j][2] * (k + 0.5)) /
                             n;
                double c = std::cos(ph0), s = std::sin(ph0);
                double* row = &g.values[((std::size_t)k * n + jj) * n];
                for (int i = 0; i < n; ++i) {
                    row[i] += a * c + b * s;
                    double cn = c * cx - s * sx;
                    s = s * cx + c * sx;
                    c = cn;
                }
            }
        }
    }
    for (auto& v : g.values) v *= f.normalization;
    return g;
}

ScalarGrid grid_function(const std::function<double(double, double)>& fn,
                         Geometry2 geometry, double x0, double y0, double width,
                         double height, double spacing, double wavelength,
                         bool allow_under) {
    if (geometry == Geometry2::SphereLonLat)
        throw std::invalid_argument("grid_function: use grid_sphere for sphere geometry");
    check_resolution(spacing, wavelength, allow_under);
    ScalarGrid g;
    g.geometry = geometry;
    g.cols = std::max(2, (int)std::llround(width / spacing));
    g.rows = std::max(2, (int)std::llround(height / spacing));
    g.x0 = x0;
    g.y0 = y0;
    g.dx = width / g.cols;
    g.dy = height / g.rows;
    g.wavelength = wavelength;
    g.values.resize((std::size_t)g.rows * g.cols);
    g.sampler = fn;
    for (int r = 0; r < g.rows; ++r)
        for (int c = 0; c < g.cols; ++c) {
            auto p = g.pos(r, c);
            g.at(r, c) = fn(p[0], p[1]);
        }
    return g;
}

ScalarGrid3 grid3_function(const std::function<double(double, double, double)>& fn,
                           Geometry3 geometry, double x0, double y0, double z0,
                           double width, double height, double depth, int n,
                           double wavelength, bool allow_under) {
    if (n < 2) throw std::invalid_argument("grid3_function: n must be >= 2");
    check_resolution(width / n, wavelength, allow_under);
    ScalarGrid3 g;
    g.geometry = geometry;
    g.nx = g.ny = g.nz = n;
    g.x0 = x0;
    g.y0 = y0;
    g.z0 = z0;
    g.dx = width / n;
    g.dy = height / n;
    g.dz = depth / n;
    g.wavelength = wavelength;
    g.values.resize((std::size_t)n * n * n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                auto p = g.pos(i, j, k);
                g.at(i, j, k) = fn(p[0], p[1], p[2]);
            }
    return g;
}

std::vector<double> sample_circle_values(const CircleField& f, double spw) {
    int maxfreq = 0;
    for (int j : f.freqs) maxfreq = std::max(maxfreq, j);
    int n = (int)std::ceil(spw * maxfreq);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = f.value(kTwoPi * i / n);
    return out;
}

int count_sign_changes_cyclic(const std::vector<double>& values) {
    int changes = 0;
    const std::size_t n = values.size();
    auto sgn = [](double v) { return v >= 0.0 ? 1 : -1; };
    for (std::size_t i = 0; i < n; ++i)
        if (sgn(values[i]) != sgn(values[(i + 1) % n])) ++changes;
    return changes;
}

}  // namespace nodalab
