#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nodalab/ensemble.hpp"

namespace nodalab {

// B_{n,alpha}, the covariance of the scaling-limit field with spectral
// measure uniform on the annulus alpha <= |xi| <= 1 in R^n.
struct CovarianceSpec {
    int n = 2;
    double alpha = 0.0;

    void validate() const;
};

// J0 / J1.  Power series up to x = 12, Hankel asymptotic expansion beyond;
// absolute error <= 1e-12 over x >= 0.
double bessel_j(int order, double x);

// B_{n,alpha}(r).  Closed forms for (n=2, alpha in {0,1}); adaptive radial
// quadrature of the oscillatory annulus integral otherwise (abs err <= 1e-9).
double covariance(const CovarianceSpec& spec, double r);

// Quadrature path regardless of closed forms; exposed for the dual-route
// consistency check.
double covariance_quadrature(const CovarianceSpec& spec, double r);

// beta_{1,alpha} = sqrt(1 + alpha + alpha^2) / sqrt(3)
double ns_constant_1d(double alpha);

struct CovarianceEstimate {
    double lag = 0;
    double estimate = 0;
    double stderr_ = 0;
};

struct EmpiricalCovarianceResult {
    std::vector<CovarianceEstimate> lags;
    bool under_sampled = false;  // warning channel: fewer fields than advised
};

// Monte-Carlo estimate of the planar covariance at the given lags, averaging
// f(x0)f(x0 + r e) over fields, >= 8 directions e, and a spread of base
// points x0 (stationarity makes base points free variance reduction).
EmpiricalCovarianceResult empirical_covariance(
    const std::vector<PlaneWaveField>& fields, const std::vector<double>& lags,
    int num_directions = 8, int num_base_points = 16);

EmpiricalCovarianceResult empirical_covariance(double alpha, int num_waves,
                                               int num_fields, std::uint64_t seed,
                                               const std::vector<double>& lags,
                                               int num_directions = 8,
                                               int num_base_points = 16);

}  // namespace nodalab
