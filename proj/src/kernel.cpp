#include "nodalab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace nodalab {

void CovarianceSpec::validate() const {
    if (n < 1 || n > 3) throw std::invalid_argument("covariance: n must be 1, 2 or 3");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("covariance: alpha must lie in [0,1]");
}

namespace {

// Series sum in long double; max term at x = 12 is ~4.2e3, well inside the
// 64-bit mantissa, so the alternating-sum cancellation stays below 1e-15.
double bessel_series(int order, double x) {
    long double half = 0.5L * (long double)x;
    long double term = 1.0L;
    for (int k = 0; k < order; ++k) term *= half / (k + 1);
    long double sum = term;
    long double x2 = half * half;
    for (int k = 1; k <= 64; ++k) {
        term *= -x2 / ((long double)k * (k + order));
        sum += term;
        if (std::abs((double)term) < 1e-20) break;
    }
    return (double)sum;
}

// Hankel asymptotic expansion, truncated at the smallest term.
double bessel_asymptotic(int order, double x) {
    const double mu = 4.0 * order * order;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double sign_p = -1.0, sign_q = 1.0;
    for (int k = 1; k <= 28; ++k) {
        double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * x);
        if (std::abs(term) < 1e-18) break;
        if (k % 2 == 1) {
            q += sign_q * term;
            sign_q = -sign_q;
        } else {
            p += sign_p * term;
            sign_p = -sign_p;
        }
    }
    double chi = x - (0.5 * order + 0.25) * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) *
           (p * std::cos(chi) - q * std::sin(chi));
}

// angular average of e^{i r rho cos} over the unit sphere in R^n
double angular_kernel(int n, double u) {
    switch (n) {
        case 1:
            return std::cos(u);
        case 2:
            return bessel_j(0, u);
        default:
            if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
            return std::sin(u) / u;
    }
}

template <typename F>
double gauss15(const F& f, double a, double b) {
    // 15-point Gauss-Legendre nodes/weights on [-1,1]
    static const double xs[8] = {0.0,
                                 0.2011940939974345,
                                 0.3941513470775634,
                                 0.5709721726085388,
                                 0.7244177313601701,
                                 0.8482065834104272,
                                 0.9372733924007060,
                                 0.9879925180204854};
    static const double ws[8] = {0.2025782419255613,
                                 0.1984314853271116,
                                 0.1861610000155622,
                                 0.1662692058169939,
                                 0.1395706779261543,
                                 0.1071592204671719,
                                 0.0703660474881081,
                                 0.0307532419961173};
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = ws[0] * f(mid);
    for (int i = 1; i < 8; ++i)
        sum += ws[i] * (f(mid + half * xs[i]) + f(mid - half * xs[i]));
    return half * sum;
}

}  // namespace

double bessel_j(int order, double x) {
    if (order != 0 && order != 1) throw std::invalid_argument("bessel_j: order must be 0 or 1");
    if (x < 0.0) throw std::invalid_argument("bessel_j: x must be >= 0");
    // crossover at 14: the optimally truncated Hankel tail at 12 bottoms out
    // near 1.2e-12, just over the accuracy contract; at 14 both branches are
    // comfortably below 1e-13
    if (x <= 14.0) return bessel_series(order, x);
    return bessel_asymptotic(order, x);
}

double covariance_quadrature(const CovarianceSpec& spec, double r) {
    spec.validate();
    if (r < 0.0) throw std::invalid_argument("covariance: r must be >= 0");
    const int n = spec.n;
    const double alpha = spec.alpha;
    if (alpha >= 1.0) return angular_kernel(n, r);  // degenerate annulus
    auto integrand = [&](double rho) {
        return std::pow(rho, n - 1) * angular_kernel(n, rho * r);
    };
    // Panels sized to a fraction of the oscillation wavelength 2pi/r.
    double span = 1.0 - alpha;
    int panels = (int)std::ceil(span * std::max(1.0, r) / (std::numbers::pi / 4.0));
    if (panels < 2) panels = 2;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        double a = alpha + span * i / panels;
        double b = alpha + span * (i + 1) / panels;
        sum += gauss15(integrand, a, b);
    }
    double one_minus = 1.0 - std::pow(alpha, n);
    return (double)n * sum / one_minus;
}

double covariance(const CovarianceSpec& spec, double r) {
    spec.validate();
    if (r < 0.0) throw std::invalid_argument("covariance: r must be >= 0");
    if (spec.n == 2 && spec.alpha == 1.0) return bessel_j(0, r);
    if (spec.n == 2 && spec.alpha == 0.0) {
        if (r < 1e-12) return 1.0;
        return 2.0 * bessel_j(1, r) / r;
    }
    return covariance_quadrature(spec, r);
}

double ns_constant_1d(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("ns_constant_1d: alpha must lie in [0,1]");
    return std::sqrt((1.0 + alpha + alpha * alpha) / 3.0);
}

namespace {

// Streaming accumulator for f(x0)f(x0+r e) products over a lag grid.
//
// For uniformly spaced lags the per-wave phase advances by a fixed angle per
// lag step, so each (base, direction) pass rotates a cached phase vector
// instead of calling sin/cos per point.  That is what makes 2000-field runs
// with J = 4096 feasible.
class CovarianceAccumulator {
  public:
    CovarianceAccumulator(std::vector<double> lags, int num_directions,
                          int num_base_points)
        : lags_(std::move(lags)) {
        if (lags_.empty()) throw std::invalid_argument("empirical_covariance: no lags");
        if (num_directions < 8)
            throw std::invalid_argument("empirical_covariance: need >= 8 directions");
        if (num_base_points < 1) num_base_points = 1;
        const double spacing = 37.0;
        const int per_side = (int)std::ceil(std::sqrt((double)num_base_points));
        for (int i = 0; i < num_base_points; ++i)
            bases_.push_back({spacing * (i % per_side), spacing * (i / per_side)});
        for (int d = 0; d < num_directions; ++d) {
            double a = 2.0 * std::numbers::pi * d / num_directions;
            dirs_.push_back({std::cos(a), std::sin(a)});
        }
        uniform_ = true;
        if (lags_.size() > 1) {
            double step = lags_[1] - lags_[0];
            for (std::size_t t = 0; t < lags_.size(); ++t)
                if (std::abs(lags_[t] - (lags_[0] + step * t)) > 1e-12) uniform_ = false;
            if (step <= 0) uniform_ = false;
        }
        sum_.assign(lags_.size(), 0.0);
        sumsq_.assign(lags_.size(), 0.0);
    }

    void add(const PlaneWaveField& f) {
        const std::size_t L = lags_.size();
        std::vector<double> per_field(L, 0.0);
        if (uniform_)
            add_uniform(f, per_field);
        else
            add_generic(f, per_field);
        double inv = 1.0 / ((double)bases_.size() * dirs_.size());
        for (std::size_t t = 0; t < L; ++t) {
            double v = per_field[t] * inv;
            sum_[t] += v;
            sumsq_[t] += v * v;
        }
        ++count_;
    }

    EmpiricalCovarianceResult finalize() const {
        EmpiricalCovarianceResult out;
        const double N = (double)count_;
        for (std::size_t t = 0; t < lags_.size(); ++t) {
            double mean = sum_[t] / N;
            double var = std::max(0.0, sumsq_[t] / N - mean * mean);
            double se = count_ > 1 ? std::sqrt(var / (N - 1.0)) : 0.0;
            out.lags.push_back({lags_[t], mean, se});
        }
        out.under_sampled = count_ < 100;
        return out;
    }

  private:
    void add_generic(const PlaneWaveField& f, std::vector<double>& acc) {
        for (const auto& b : bases_) {
            double f0 = f.value(b[0], b[1]);
            for (const auto& e : dirs_)
                for (std::size_t t = 0; t < lags_.size(); ++t)
                    acc[t] += f0 * f.value(b[0] + lags_[t] * e[0], b[1] + lags_[t] * e[1]);
        }
    }

    void add_uniform(const PlaneWaveField& f, std::vector<double>& acc) {
        const std::size_t J = f.wavevectors.size();
        const std::size_t L = lags_.size();
        const std::size_t D = dirs_.size();
        const double step = L > 1 ? lags_[1] - lags_[0] : 0.0;
        const double lag0 = lags_[0];

        // per-direction rotation angles: shift to the first lag, then step
        std::vector<double> shift_c(D * J), shift_s(D * J), step_c(D * J), step_s(D * J);
        for (std::size_t d = 0; d < D; ++d) {
            for (std::size_t w = 0; w < J; ++w) {
                double de = f.wavevectors[w][0] * dirs_[d][0] + f.wavevectors[w][1] * dirs_[d][1];
                shift_c[d * J + w] = std::cos(lag0 * de);
                shift_s[d * J + w] = std::sin(lag0 * de);
                step_c[d * J + w] = std::cos(step * de);
                step_s[d * J + w] = std::sin(step * de);
            }
        }

        std::vector<double> cb(J), sb(J), c(J), s(J);
        const double* a = f.cos_amps.data();
        const double* bamp = f.sin_amps.data();
        const double norm2 = f.normalization * f.normalization;
        for (const auto& base : bases_) {
            double f0 = 0.0;
            for (std::size_t w = 0; w < J; ++w) {
                double ph = f.wavevectors[w][0] * base[0] + f.wavevectors[w][1] * base[1];
                cb[w] = std::cos(ph);
                sb[w] = std::sin(ph);
                f0 += a[w] * cb[w] + bamp[w] * sb[w];
            }
            for (std::size_t d = 0; d < D; ++d) {
                const double* shc = &shift_c[d * J];
                const double* shs = &shift_s[d * J];
                const double* stc = &step_c[d * J];
                const double* sts = &step_s[d * J];
                for (std::size_t w = 0; w < J; ++w) {
                    c[w] = cb[w] * shc[w] - sb[w] * shs[w];
                    s[w] = sb[w] * shc[w] + cb[w] * shs[w];
                }
                for (std::size_t t = 0; t < L; ++t) {
                    if (t > 0) {
                        for (std::size_t w = 0; w < J; ++w) {
                            double cn = c[w] * stc[w] - s[w] * sts[w];
                            s[w] = s[w] * stc[w] + c[w] * sts[w];
                            c[w] = cn;
                        }
                    }
                    double fx = 0.0;
                    for (std::size_t w = 0; w < J; ++w) fx += a[w] * c[w] + bamp[w] * s[w];
                    acc[t] += f0 * fx * norm2;
                }
            }
        }
    }

    std::vector<double> lags_;
    std::vector<std::array<double, 2>> bases_;
    std::vector<std::array<double, 2>> dirs_;
    std::vector<double> sum_, sumsq_;
    long count_ = 0;
    bool uniform_ = false;
};

}  // namespace

EmpiricalCovarianceResult empirical_covariance(
    const std::vector<PlaneWaveField>& fields, const std::vector<double>& lags,
    int num_directions, int num_base_points) {
    if (fields.empty()) throw std::invalid_argument("empirical_covariance: no fields");
    CovarianceAccumulator acc(lags, num_directions, num_base_points);
    for (const auto& f : fields) acc.add(f);
    return acc.finalize();
}

EmpiricalCovarianceResult empirical_covariance(double alpha, int num_waves,
                                               int num_fields, std::uint64_t seed,
                                               const std::vector<double>& lags,
                                               int num_directions,
                                               int num_base_points) {
    if (num_fields < 100)
        throw std::invalid_argument("empirical_covariance: need >= 100 fields");
    CovarianceAccumulator acc(lags, num_directions, num_base_points);
    for (int i = 0; i < num_fields; ++i)
        acc.add(sample_planar(alpha, num_waves, derive_seed(seed, i)));
    return acc.finalize();
}

}  // namespace nodalab
