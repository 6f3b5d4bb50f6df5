#include "doctest.h"

#include <cmath>
#include <numbers>

#include "nodalab/kernel.hpp"

using namespace nodalab;

namespace {

// independent oracle: defining power series summed to convergence in long
// double (trustworthy to ~1e-14 for x <= 14)
double series_oracle(int order, double x) {
    long double half = 0.5L * (long double)x;
    long double term = 1.0L;
    for (int k = 0; k < order; ++k) term *= half / (k + 1);
    long double sum = term;
    long double x2 = half * half;
    for (int k = 1; k <= 80; ++k) {
        term *= -x2 / ((long double)k * (k + order));
        sum += term;
    }
    return (double)sum;
}

// independent oracle: brute-force 2-D quadrature of the annulus Fourier
// integral in polar coordinates (composite Simpson)
double annulus_quadrature_oracle(double alpha, double r) {
    const int nr = 512, na = 512;
    auto simpson_weight = [](int i, int n) { return i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0); };
    double total = 0;
    for (int i = 0; i <= nr; ++i) {
        double rho = alpha + (1.0 - alpha) * i / nr;
        double inner = 0;
        for (int j = 0; j <= na; ++j) {
            double phi = 2.0 * std::numbers::pi * j / na;
            inner += simpson_weight(j, na) * std::cos(r * rho * std::cos(phi));
        }
        inner *= 2.0 * std::numbers::pi / na / 3.0;
        total += simpson_weight(i, nr) * rho * inner;
    }
    total *= (1.0 - alpha) / nr / 3.0;
    double area = std::numbers::pi * (1.0 - alpha * alpha);
    return total / area;
}

}  // namespace

TEST_CASE("bessel_j matches the defining series") {
    CHECK(bessel_j(0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bessel_j(1, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(bessel_j(0, 1.0) - 0.7651976865579666) < 1e-13);
    for (double x = 0.0; x <= 12.0; x += 0.37)
        CHECK(std::abs(bessel_j(0, x) - series_oracle(0, x)) < 1e-13);
    for (double x = 0.0; x <= 12.0; x += 0.41)
        CHECK(std::abs(bessel_j(1, x) - series_oracle(1, x)) < 1e-13);
}

TEST_CASE("bessel_j asymptotic branch agrees with the series at the crossover") {
    // the series remains trustworthy well past the crossover at 14
    for (double x = 13.5; x <= 15.5; x += 0.125) {
        CHECK(std::abs(bessel_j(0, x) - series_oracle(0, x)) < 1e-12);
        CHECK(std::abs(bessel_j(1, x) - series_oracle(1, x)) < 1e-12);
    }
}

TEST_CASE("bessel_j cross-checked against the standard library") {
    for (double x = 0.1; x <= 40.0; x += 0.173) {
        CHECK(std::abs(bessel_j(0, x) - std::cyl_bessel_j(0.0, x)) < 1e-12);
        CHECK(std::abs(bessel_j(1, x) - std::cyl_bessel_j(1.0, x)) < 1e-12);
    }
}

TEST_CASE("covariance closed forms and special values") {
    CovarianceSpec mono{2, 1.0};
    CHECK(covariance(mono, 0.0) == doctest::Approx(1.0));
    // first zero of J0, located independently
    CHECK(std::abs(covariance(mono, 2.404825557695773)) < 1e-6);
    CovarianceSpec band{2, 0.0};
    CHECK(covariance(band, 0.0) == doctest::Approx(1.0));
    CHECK(covariance(band, 1e-14) == doctest::Approx(1.0));
}

TEST_CASE("covariance quadrature path agrees with closed forms to 1e-8") {
    for (double alpha : {0.0, 1.0}) {
        CovarianceSpec spec{2, alpha};
        for (double r = 0.0; r <= 20.0; r += 0.25)
            CHECK(std::abs(covariance_quadrature(spec, r) - covariance(spec, r)) < 1e-8);
    }
}

TEST_CASE("covariance general alpha matches brute-force 2-D quadrature") {
    CovarianceSpec spec{2, 0.5};
    CHECK(std::abs(covariance(spec, 3.0) - annulus_quadrature_oracle(0.5, 3.0)) < 1e-3);
    for (double r : {0.5, 1.5, 5.0})
        CHECK(std::abs(covariance(spec, r) - annulus_quadrature_oracle(0.5, r)) < 1e-3);
}

TEST_CASE("covariance is bounded by 1 with B(0) = 1") {
    for (int n : {1, 2, 3}) {
        for (double alpha : {0.0, 0.3, 0.7, 1.0}) {
            CovarianceSpec spec{n, alpha};
            CHECK(covariance(spec, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
            for (double r = 0.0; r <= 30.0; r += 0.5)
                CHECK(std::abs(covariance(spec, r)) <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("ns_constant_1d closed-form values") {
    CHECK(ns_constant_1d(0.0) == doctest::Approx(0.5773503).epsilon(1e-6));
    CHECK(ns_constant_1d(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ns_constant_1d(0.5) == doctest::Approx(0.7637626).epsilon(1e-6));
}

TEST_CASE("ns_constant_1d is monotone in alpha") {
    double prev = 0;
    for (double a = 0.0; a <= 1.0; a += 0.05) {
        double v = ns_constant_1d(a);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("empirical covariance of the zero field is (0, 0)") {
    PlaneWaveField f = sample_planar(1.0, 64, 7);
    std::fill(f.cos_amps.begin(), f.cos_amps.end(), 0.0);
    std::fill(f.sin_amps.begin(), f.sin_amps.end(), 0.0);
    std::vector<PlaneWaveField> fields{f, f, f};
    auto res = empirical_covariance(fields, {0.0, 1.0, 2.0}, 8, 4);
    for (const auto& e : res.lags) {
        CHECK(e.estimate == doctest::Approx(0.0));
        CHECK(e.stderr_ == doctest::Approx(0.0));
    }
    CHECK(res.under_sampled);
}

TEST_CASE("empirical covariance matches J0 within noise at alpha = 1") {
    std::vector<double> lags;
    for (int t = 0; t <= 8; ++t) lags.push_back((double)t);
    auto res = empirical_covariance(1.0, 256, 400, 99, lags, 8, 16);
    CHECK(!res.under_sampled);
    CovarianceSpec spec{2, 1.0};
    CHECK(res.lags[0].estimate == doctest::Approx(1.0).epsilon(0.05));
    for (const auto& e : res.lags) {
        double tol = std::max(4.0 * e.stderr_, 0.02);
        CHECK(std::abs(e.estimate - covariance(spec, e.lag)) < tol);
    }
}
