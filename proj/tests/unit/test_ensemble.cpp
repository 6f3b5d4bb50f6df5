#include "doctest.h"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "nodalab/grid.hpp"
#include "nodalab/kernel.hpp"

using namespace nodalab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sample_planar parameter checks and annulus support") {
    CHECK_THROWS_AS(sample_planar(-0.1, 128, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_planar(0.5, 32, 1), std::invalid_argument);
    auto f = sample_planar(1.0, 256, 42);
    for (const auto& k : f.wavevectors)
        CHECK(std::abs(std::hypot(k[0], k[1]) - 1.0) < 1e-14);
    auto g = sample_planar(0.5, 4096, 43);
    for (const auto& k : g.wavevectors) {
        double n = std::hypot(k[0], k[1]);
        CHECK(n >= 0.5 - 1e-12);
        CHECK(n <= 1.0 + 1e-12);
    }
}

TEST_CASE("planar fields are reproducible per seed") {
    auto a = sample_planar(0.3, 128, 1234);
    auto b = sample_planar(0.3, 128, 1234);
    CHECK(a.wavevectors == b.wavevectors);
    CHECK(a.cos_amps == b.cos_amps);
    CHECK(a.sin_amps == b.sin_amps);
    auto c = sample_planar(0.3, 128, 1235);
    CHECK(a.cos_amps != c.cos_amps);
}

TEST_CASE("unit variance for every ensemble type") {
    const int N = 2000;
    auto check_var = [](double var, int n) {
        double tol = 3.0 * std::sqrt(2.0 / n) + 0.02;
        CHECK(std::abs(var - 1.0) < tol);
    };
    {
        double s2 = 0;
        for (int i = 0; i < N; ++i) {
            auto f = sample_planar(0.5, 128, derive_seed(11, i));
            double v = f.value(1.3, -0.7);
            s2 += v * v;
        }
        check_var(s2 / N, N);
    }
    {
        BandParams p{0.0, std::sqrt(12.0 * 13.0), 0.0};
        double s2 = 0;
        for (int i = 0; i < N; ++i) {
            auto f = sample_sphere(p, derive_seed(12, i));
            double v = f.value(1.1, 2.2);
            s2 += v * v;
        }
        check_var(s2 / N, N);
    }
    {
        BandParams p{0.0, 2.0 * kPi * 4.0, 0.0};
        double s2 = 0;
        for (int i = 0; i < N; ++i) {
            auto f = sample_torus(p, derive_seed(13, i));
            double v = f.value(0.37, 0.81);
            s2 += v * v;
        }
        check_var(s2 / N, N);
    }
    {
        BandParams p{0.0, 2.0 * kPi * 3.0, 0.0};
        double s2 = 0;
        for (int i = 0; i < N; ++i) {
            auto f = sample_torus3(p, derive_seed(14, i));
            double v = f.value(0.2, 0.5, 0.9);
            s2 += v * v;
        }
        check_var(s2 / N, N);
    }
    {
        BandParams p{0.0, 40.0, 0.0};
        double s2 = 0;
        for (int i = 0; i < N; ++i) {
            auto f = sample_circle(p, derive_seed(15, i));
            double v = f.value(2.5);
            s2 += v * v;
        }
        check_var(s2 / N, N);
    }
}

TEST_CASE("planar ensemble is stationary and isotropic within noise") {
    const int N = 2000;
    const int J = 256;
    // same displacement from ten different base points
    std::vector<std::array<double, 2>> bases;
    for (int i = 0; i < 10; ++i) bases.push_back({7.0 * i, 3.0 * ((i * 29) % 7)});
    std::vector<double> est(bases.size(), 0.0), est2(bases.size(), 0.0);
    std::vector<double> iso(8, 0.0), iso2(8, 0.0);
    for (int i = 0; i < N; ++i) {
        auto f = sample_planar(1.0, J, derive_seed(77, i));
        for (std::size_t b = 0; b < bases.size(); ++b) {
            double v = f.value(bases[b][0], bases[b][1]) *
                       f.value(bases[b][0] + 2.0, bases[b][1]);
            est[b] += v;
            est2[b] += v * v;
        }
        for (int d = 0; d < 8; ++d) {
            double a = 2.0 * kPi * d / 8;
            double v = f.value(0, 0) * f.value(2.0 * std::cos(a), 2.0 * std::sin(a));
            iso[d] += v;
            iso2[d] += v * v;
        }
    }
    double expected = covariance(CovarianceSpec{2, 1.0}, 2.0);
    for (std::size_t b = 0; b < bases.size(); ++b) {
        double mean = est[b] / N;
        double se = std::sqrt((est2[b] / N - mean * mean) / (N - 1));
        CHECK(std::abs(mean - expected) < 3.5 * se + 1.0 / J);
    }
    for (int d = 0; d < 8; ++d) {
        double mean = iso[d] / N;
        double se = std::sqrt((iso2[d] / N - mean * mean) / (N - 1));
        CHECK(std::abs(mean - expected) < 3.5 * se + 1.0 / J);
    }
}

TEST_CASE("sphere degree windows") {
    double T = std::sqrt(80.0 * 81.0);
    BandParams mono{1.0, T, default_sphere_eta(T)};
    auto f = sample_sphere(mono, 5);
    CHECK(f.ell_min == 80);
    CHECK(f.ell_max == 80);
    BandParams band{0.0, T, 0.0};
    auto g = sample_sphere(band, 5);
    CHECK(g.ell_min == 1);
    CHECK(g.ell_max == 80);
    CHECK(g.coeffs.size() == (std::size_t)(81 * 81 - 1));  // sum of 2l+1, l=1..80
    BandParams empty{1.0, 1.0, 0.5};
    CHECK_THROWS_AS(sample_sphere(empty, 5), std::invalid_argument);
}

TEST_CASE("sphere coefficients obey the law of large numbers per degree") {
    double T = std::sqrt(80.0 * 81.0);
    BandParams mono{1.0, T, default_sphere_eta(T)};
    auto f = sample_sphere(mono, 2024);
    double sum = 0;
    for (double c : f.coeffs) sum += c * c;
    double mean = sum / (2.0 * 80 + 1);
    CHECK(std::abs(mean - 1.0) < 5.0 * std::sqrt(2.0 / 161.0));
}

TEST_CASE("torus frequency enumeration matches brute force") {
    BandParams p{0.0, 2.0 * kPi * 10.0, 0.0};
    auto f = sample_torus(p, 3);
    // independent brute-force count of integer points 0 < |m| <= 10
    int count = 0;
    for (int a = -10; a <= 10; ++a)
        for (int b = -10; b <= 10; ++b)
            if ((a || b) && a * a + b * b <= 100) ++count;
    CHECK(count == 316);
    CHECK(f.freqs.size() == (std::size_t)(count / 2));

    // monochromatic window covering only |m|^2 = 100
    BandParams mono{1.0, 2.0 * kPi * 10.0, 0.5};
    auto g = sample_torus(mono, 3);
    std::set<std::pair<int, int>> got;
    for (const auto& m : g.freqs) got.insert({m[0], m[1]});
    std::set<std::pair<int, int>> expect{{10, 0}, {0, 10}, {6, 8}, {6, -8}, {8, 6}, {8, -6}};
    CHECK(got == expect);
}

TEST_CASE("circle frequency windows") {
    BandParams p{0.0, 100.0, 0.0};
    auto f = sample_circle(p, 9);
    CHECK(f.freqs.size() == 100);
    CHECK(f.freqs.front() == 1);
    CHECK(f.freqs.back() == 100);
    BandParams mono{1.0, 100.0, 10.0};
    auto g = sample_circle(mono, 9);
    CHECK(g.freqs.size() == 11);
    CHECK(g.freqs.front() == 90);
}

TEST_CASE("circle zero counts match the Kac-Rice oracle") {
    BandParams p{0.0, 60.0, 0.0};
    const int N = 300;
    double sum = 0, sum2 = 0;
    double m2 = 0;
    {
        auto f = sample_circle(p, 1);
        for (int j : f.freqs) m2 += (double)j * j;
        m2 /= f.freqs.size();
    }
    for (int i = 0; i < N; ++i) {
        auto f = sample_circle(p, derive_seed(500, i));
        double c = count_sign_changes_cyclic(sample_circle_values(f));
        sum += c;
        sum2 += c * c;
    }
    double mean = sum / N;
    double se = std::sqrt((sum2 / N - mean * mean) / (N - 1));
    double oracle = 2.0 * std::sqrt(m2);  // Kac-Rice for the sampled spectrum
    CHECK(std::abs(mean - oracle) < 4.0 * se + 0.01 * oracle);
}

TEST_CASE("evaluate special cases") {
    auto f = sample_planar(1.0, 64, 7);
    std::fill(f.cos_amps.begin(), f.cos_amps.end(), 0.0);
    std::fill(f.sin_amps.begin(), f.sin_amps.end(), 0.0);
    for (double v : evaluate(f, {{0, 0}, {1, 2}, {-3, 0.5}})) CHECK(v == 0.0);

    BandParams p{0.0, 2.0 * kPi * 4.0, 0.0};
    auto t = sample_torus(p, 11);
    CHECK(t.value(0.31, 0.87) == doctest::Approx(t.value(1.31, 0.87)).epsilon(1e-12));
    CHECK(t.value(0.31, 0.87) == doctest::Approx(t.value(0.31, -2.13)).epsilon(1e-12));

    // single (l,m) = (2,0) harmonic with unit coefficient, no rescaling
    SphericalField y20;
    y20.ell_min = 2;
    y20.ell_max = 2;
    y20.coeffs.assign(5, 0.0);
    y20.coeffs[0] = 1.0;
    y20.normalization = 1.0;
    CHECK(y20.value(0.0, 0.0) == doctest::Approx(std::sqrt(5.0 / (4.0 * kPi))).epsilon(1e-12));
    CHECK_THROWS_AS(y20.value(4.0, 0.0), std::domain_error);
}

TEST_CASE("legendre rows satisfy the addition theorem") {
    std::vector<double> P;
    for (double ct : {-0.9, -0.3, 0.0, 0.42, 0.99}) {
        legendre_row(60, ct, P);
        for (int l : {1, 7, 33, 60}) {
            double sum = 0;
            std::size_t base = (std::size_t)l * (l + 1) / 2;
            sum += P[base] * P[base];
            for (int m = 1; m <= l; ++m) sum += 2.0 * P[base + m] * P[base + m];
            CHECK(sum == doctest::Approx((2.0 * l + 1.0) / (4.0 * kPi)).epsilon(1e-10));
        }
    }
}

TEST_CASE("grid synthesis agrees with direct evaluation") {
    BandParams p{0.0, std::sqrt(20.0 * 21.0), 0.0};
    auto f = sample_sphere(p, 21);
    auto g = grid_sphere(f);
    for (int r : {0, 1, g.rows / 2, g.rows - 1})
        for (int c : {0, 5, g.cols / 2}) {
            auto pos = g.pos(r, c);
            CHECK(g.at(r, c) == doctest::Approx(f.value(pos[0], pos[1])).epsilon(1e-9));
        }

    BandParams pt{0.0, 2.0 * kPi * 5.0, 0.0};
    auto t = sample_torus(pt, 22);
    auto gt = grid_torus(t);
    for (int r : {0, 3, gt.rows - 1})
        for (int c : {0, 7, gt.cols - 1}) {
            auto pos = gt.pos(r, c);
            CHECK(gt.at(r, c) == doctest::Approx(t.value(pos[0], pos[1])).epsilon(1e-9));
        }

    auto pw = sample_planar(1.0, 128, 23);
    auto gp = grid_planar(pw, -5, -3, 10, 6);
    for (int r : {0, gp.rows / 3, gp.rows - 1})
        for (int c : {0, gp.cols / 2, gp.cols - 1}) {
            auto pos = gp.pos(r, c);
            CHECK(gp.at(r, c) == doctest::Approx(pw.value(pos[0], pos[1])).epsilon(1e-9));
        }

    BandParams p3{0.0, 2.0 * kPi * 3.0, 0.0};
    auto f3 = sample_torus3(p3, 24);
    auto g3 = grid_torus3(f3);
    auto pos = g3.pos(1, 2, 3);
    CHECK(g3.at(1, 2, 3) == doctest::Approx(f3.value(pos[0], pos[1], pos[2])).epsilon(1e-9));
}

TEST_CASE("grid resolution guard") {
    BandParams p{0.0, std::sqrt(20.0 * 21.0), 0.0};
    auto f = sample_sphere(p, 31);
    CHECK_THROWS_AS(grid_sphere(f, 5.0), std::invalid_argument);
    auto g = grid_sphere(f, 5.0, true);
    CHECK(g.rows > 0);
}

TEST_CASE("sphere grids duplicate the pole value across polar rows") {
    BandParams p{0.0, std::sqrt(12.0 * 13.0), 0.0};
    auto f = sample_sphere(p, 8);
    auto g = grid_sphere(f);
    for (int c = 1; c < g.cols; ++c) {
        CHECK(g.at(0, c) == doctest::Approx(g.at(0, 0)).epsilon(1e-12));
        CHECK(g.at(g.rows - 1, c) == doctest::Approx(g.at(g.rows - 1, 0)).epsilon(1e-12));
    }
}

TEST_CASE("field JSON round trips") {
    auto f = sample_planar(0.5, 128, 77);
    auto f2 = planewave_from_json(field_to_json(f));
    CHECK(f.wavevectors == f2.wavevectors);
    CHECK(f.cos_amps == f2.cos_amps);
    CHECK(f.normalization == f2.normalization);

    BandParams p{0.0, std::sqrt(10.0 * 11.0), 0.0};
    auto s = sample_sphere(p, 78);
    auto s2 = sphere_from_json(field_to_json(s));
    CHECK(s.coeffs == s2.coeffs);
    CHECK(s.ell_min == s2.ell_min);

    BandParams pt{0.0, 2.0 * kPi * 4.0, 0.0};
    auto t = sample_torus(pt, 79);
    auto t2 = torus_from_json(field_to_json(t));
    CHECK(t.freqs == t2.freqs);
    CHECK(t.sin_amps == t2.sin_amps);

    BandParams pc{0.0, 30.0, 0.0};
    auto c = sample_circle(pc, 80);
    auto c2 = circle_from_json(field_to_json(c));
    CHECK(c.freqs == c2.freqs);
    CHECK(c.cos_amps == c2.cos_amps);
}
