#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nodalab/rng.hpp"

namespace nodalab {

// Spectral window [alpha*T, T]; for alpha == 1 the window is [T - eta, T].
struct BandParams {
    double alpha = 0.0;
    double T = 0.0;
    double eta = 0.0;

    void validate() const;
};

// f(x) = normalization * sum_j (cos_amps[j] cos<k_j,x> + sin_amps[j] sin<k_j,x>)
// with wavevectors drawn uniformly (area measure) from the annulus
// alpha <= |k| <= 1.  Amplitudes are i.i.d. standard gaussians and
// normalization = 1/sqrt(J), which makes Var f(x) = 1 exactly.
struct PlaneWaveField {
    double alpha = 0.0;
    std::vector<std::array<double, 2>> wavevectors;
    std::vector<double> cos_amps;
    std::vector<double> sin_amps;
    double normalization = 0.0;

    double value(double x, double y) const;
};

// Random linear combination of real orthonormal spherical harmonics with
// degrees ell_min..ell_max.  Coefficient layout per degree ell:
//   c[ell][0]              -> m = 0
//   c[ell][2m-1], c[ell][2m] -> cos / sin part for m = 1..ell
// normalization scales the sum so that Var f(x) = 1 on the sphere.
struct SphericalField {
    int ell_min = 0;
    int ell_max = 0;
    std::vector<double> coeffs;  // sum over ell of (2 ell + 1) entries
    double normalization = 0.0;

    std::size_t coeff_offset(int ell) const;
    double value(double theta, double phi) const;
};

// Trigonometric polynomial on the unit 2-torus; one representative per
// {m, -m} frequency pair.
struct TorusField {
    std::vector<std::array<int, 2>> freqs;
    std::vector<double> cos_amps;
    std::vector<double> sin_amps;
    double normalization = 0.0;

    double value(double x, double y) const;
};

// Same on the unit 3-torus.
struct Torus3Field {
    std::vector<std::array<int, 3>> freqs;
    std::vector<double> cos_amps;
    std::vector<double> sin_amps;
    double normalization = 0.0;

    double value(double x, double y, double z) const;
};

// Random trigonometric polynomial on the circle, frequencies in [alpha*T, T].
struct CircleField {
    std::vector<int> freqs;
    std::vector<double> cos_amps;
    std::vector<double> sin_amps;
    double normalization = 0.0;

    double value(double t) const;
};

PlaneWaveField sample_planar(double alpha, int num_waves, std::uint64_t seed);
SphericalField sample_sphere(const BandParams& params, std::uint64_t seed);
TorusField sample_torus(const BandParams& params, std::uint64_t seed);
Torus3Field sample_torus3(const BandParams& params, std::uint64_t seed);
CircleField sample_circle(const BandParams& params, std::uint64_t seed);

// Degrees ell with sqrt(ell(ell+1)) inside the window of params.
std::vector<int> sphere_degree_range(const BandParams& params);

// Default monochromatic window width putting exactly one degree below T.
double default_sphere_eta(double T);

std::vector<double> evaluate(const PlaneWaveField& f,
                             const std::vector<std::array<double, 2>>& pts);
std::vector<double> evaluate(const SphericalField& f,
                             const std::vector<std::array<double, 2>>& theta_phi);
std::vector<double> evaluate(const TorusField& f,
                             const std::vector<std::array<double, 2>>& pts);
std::vector<double> evaluate(const CircleField& f, const std::vector<double>& ts);

// Orthonormalized associated Legendre values P~_{l,m}(cos theta) for
// 0 <= m <= l <= lmax, laid out at index l(l+1)/2 + m.  The scaling is such
// that Y_{l,0}(theta,phi) = P~_{l,0}(cos theta) and for m >= 1 the real
// harmonics are sqrt(2) P~_{l,m}(cos theta) {cos,sin}(m phi).
void legendre_row(int lmax, double cos_theta, std::vector<double>& out);

// JSON (de)serialization for replay, type-tagged.
std::string field_to_json(const PlaneWaveField& f);
std::string field_to_json(const SphericalField& f);
std::string field_to_json(const TorusField& f);
std::string field_to_json(const Torus3Field& f);
std::string field_to_json(const CircleField& f);
PlaneWaveField planewave_from_json(const std::string& text);
SphericalField sphere_from_json(const std::string& text);
TorusField torus_from_json(const std::string& text);
CircleField circle_from_json(const std::string& text);

}  // namespace nodalab
