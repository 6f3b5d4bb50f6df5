#include "nodalab/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace nodalab {

using json = nlohmann::json;
namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;
}  // namespace

void BandParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("BandParams: alpha must lie in [0,1]");
    if (!(T > 0.0)) throw std::invalid_argument("BandParams: T must be > 0");
    if (alpha == 1.0 && !(eta > 0.0 && eta < T))
        throw std::invalid_argument("BandParams: monochromatic window needs 0 < eta < T");
}

double PlaneWaveField::value(double x, double y) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < wavevectors.size(); ++j) {
        double ph = wavevectors[j][0] * x + wavevectors[j][1] * y;
        sum += cos_amps[j] * std::cos(ph) + sin_amps[j] * std::sin(ph);
    }
    return normalization * sum;
}

std::size_t SphericalField::coeff_offset(int ell) const {
    // sum of (2l+1) for l = ell_min .. ell-1 telescopes to ell^2 - ell_min^2
    return (std::size_t)ell * ell - (std::size_t)ell_min * ell_min;
}

double SphericalField::value(double theta, double phi) const {
    if (theta < -1e-12 || theta > std::numbers::pi + 1e-12)
        throw std::domain_error("SphericalField: colatitude outside [0, pi]");
    std::vector<double> P;
    legendre_row(ell_max, std::cos(theta), P);
    double sum = 0.0;
    for (int ell = ell_min; ell <= ell_max; ++ell) {
        const double* c = coeffs.data() + coeff_offset(ell);
        const std::size_t base = (std::size_t)ell * (ell + 1) / 2;
        double acc = c[0] * P[base];
        for (int m = 1; m <= ell; ++m) {
            double b = std::numbers::sqrt2 * P[base + m];
            acc += b * (c[2 * m - 1] * std::cos(m * phi) + c[2 * m] * std::sin(m * phi));
        }
        sum += acc;
    }
    return normalization * sum;
}

double TorusField::value(double x, double y) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        double ph = kTwoPi * (freqs[j][0] * x + freqs[j][1] * y);
        sum += cos_amps[j] * std::cos(ph) + sin_amps[j] * std::sin(ph);
    }
    return normalization * sum;
}

double Torus3Field::value(double x, double y, double z) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        double ph = kTwoPi * (freqs[j][0] * x + freqs[j][1] * y + freqs[j][2] * z);
        sum += cos_amps[j] * std::cos(ph) + sin_amps[j] * std::sin(ph);
    }
    return normalization * sum;
}

double CircleField::value(double t) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        double ph = freqs[j] * t;
        sum += cos_amps[j] * std::cos(ph) + sin_amps[j] * std::sin(ph);
    }
    return normalization * sum;
}

PlaneWaveField sample_planar(double alpha, int num_waves, std::uint64_t seed) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("sample_planar: alpha must lie in [0,1]");
    if (num_waves < 64) throw std::invalid_argument("sample_planar: need >= 64 waves");
    Rng rng(seed);
    PlaneWaveField f;
    f.alpha = alpha;
    f.wavevectors.resize(num_waves);
    f.cos_amps.resize(num_waves);
    f.sin_amps.resize(num_waves);
    for (int j = 0; j < num_waves; ++j) {
        // area-uniform radius (density ~ r on [alpha, 1]); collapses to the
        // unit circle for alpha = 1
        double u = rng.uniform();
        double r = std::sqrt(alpha * alpha + (1.0 - alpha * alpha) * u);
        double a = rng.uniform(0.0, kTwoPi);
        f.wavevectors[j] = {r * std::cos(a), r * std::sin(a)};
    }
    for (int j = 0; j < num_waves; ++j) f.cos_amps[j] = rng.gaussian();
    for (int j = 0; j < num_waves; ++j) f.sin_amps[j] = rng.gaussian();
    f.normalization = 1.0 / std::sqrt((double)num_waves);
    return f;
}

double default_sphere_eta(double T) {
    int top = -1;
    for (int ell = 1;; ++ell) {
        double t = std::sqrt((double)ell * (ell + 1));
        if (t > T) break;
        top = ell;
    }
    if (top < 1) throw std::invalid_argument("default_sphere_eta: no degree below T");
    if (top == 1) return 0.5 * T;
    double t_top = std::sqrt((double)top * (top + 1));
    double t_prev = std::sqrt((double)(top - 1) * top);
    return T - 0.5 * (t_top + t_prev);
}

std::vector<int> sphere_degree_range(const BandParams& params) {
    params.validate();
    double lo = params.alpha == 1.0 ? params.T - params.eta : params.alpha * params.T;
    std::vector<int> degrees;
    for (int ell = 1;; ++ell) {
        double t = std::sqrt((double)ell * (ell + 1));
        if (t > params.T) break;
        if (t >= lo) degrees.push_back(ell);
    }
    return degrees;
}

SphericalField sample_sphere(const BandParams& params, std::uint64_t seed) {
    auto degrees = sphere_degree_range(params);
    if (degrees.empty())
        throw std::invalid_argument("sample_sphere: empty degree range");
    SphericalField f;
    f.ell_min = degrees.front();
    f.ell_max = degrees.back();
    std::size_t count = 0;
    for (int ell = f.ell_min; ell <= f.ell_max; ++ell) count += 2 * ell + 1;
    f.coeffs.resize(count);
    Rng rng(seed);
    for (auto& c : f.coeffs) c = rng.gaussian();
    double variance = 0.0;
    for (int ell = f.ell_min; ell <= f.ell_max; ++ell)
        variance += (2.0 * ell + 1.0) / kFourPi;
    f.normalization = 1.0 / std::sqrt(variance);
    return f;
}

namespace {

// one representative per {m, -m}
bool canonical_pair_rep2(int m1, int m2) { return m1 > 0 || (m1 == 0 && m2 > 0); }
bool canonical_pair_rep3(int m1, int m2, int m3) {
    if (m1 != 0) return m1 > 0;
    if (m2 != 0) return m2 > 0;
    return m3 > 0;
}

}  // namespace

TorusField sample_torus(const BandParams& params, std::uint64_t seed) {
    params.validate();
    double hi = params.T / kTwoPi;
    double lo = (params.alpha == 1.0 ? params.T - params.eta : params.alpha * params.T) / kTwoPi;
    TorusField f;
    int bound = (int)std::floor(hi + 1e-9);
    for (int m1 = -bound; m1 <= bound; ++m1) {
        for (int m2 = -bound; m2 <= bound; ++m2) {
            if (m1 == 0 && m2 == 0) continue;
            if (!canonical_pair_rep2(m1, m2)) continue;
            double norm = std::hypot((double)m1, (double)m2);
            if (norm < lo - 1e-12 || norm > hi + 1e-12) continue;
            f.freqs.push_back({m1, m2});
        }
    }
    if (f.freqs.empty()) throw std::invalid_argument("sample_torus: empty frequency set");
    Rng rng(seed);
    f.cos_amps.resize(f.freqs.size());
    f.sin_amps.resize(f.freqs.size());
    for (auto& a : f.cos_amps) a = rng.gaussian();
    for (auto& a : f.sin_amps) a = rng.gaussian();
    f.normalization = 1.0 / std::sqrt((double)f.freqs.size());
    return f;
}

Torus3Field sample_torus3(const BandParams& params, std::uint64_t seed) {
    params.validate();
    double hi = params.T / kTwoPi;
    double lo = (params.alpha == 1.0 ? params.T - params.eta : params.alpha * params.T) / kTwoPi;
    Torus3Field f;
    int bound = (int)std::floor(hi + 1e-9);
    for (int m1 = -bound; m1 <= bound; ++m1)
        for (int m2 = -bound; m2 <= bound; ++m2)
            for (int m3 = -bound; m3 <= bound; ++m3) {
                if (m1 == 0 && m2 == 0 && m3 == 0) continue;
                if (!canonical_pair_rep3(m1, m2, m3)) continue;
                double norm = std::sqrt((double)m1 * m1 + (double)m2 * m2 + (double)m3 * m3);
                if (norm < lo - 1e-12 || norm > hi + 1e-12) continue;
                f.freqs.push_back({m1, m2, m3});
            }
    if (f.freqs.empty()) throw std::invalid_argument("sample_torus3: empty frequency set");
    Rng rng(seed);
    f.cos_amps.resize(f.freqs.size());
    f.sin_amps.resize(f.freqs.size());
    for (auto& a : f.cos_amps) a = rng.gaussian();
    for (auto& a : f.sin_amps) a = rng.gaussian();
    f.normalization = 1.0 / std::sqrt((double)f.freqs.size());
    return f;
}

CircleField sample_circle(const BandParams& params, std::uint64_t seed) {
    params.validate();
    double lo = params.alpha == 1.0 ? params.T - params.eta : params.alpha * params.T;
    CircleField f;
    int jlo = std::max(1, (int)std::ceil(lo - 1e-9));
    int jhi = (int)std::floor(params.T + 1e-9);
    for (int j = jlo; j <= jhi; ++j) f.freqs.push_back(j);
    if (f.freqs.empty()) throw std::invalid_argument("sample_circle: empty frequency set");
    Rng rng(seed);
    f.cos_amps.resize(f.freqs.size());
    f.sin_amps.resize(f.freqs.size());
    for (auto& a : f.cos_amps) a = rng.gaussian();
    for (auto& a : f.sin_amps) a = rng.gaussian();
    f.normalization = 1.0 / std::sqrt((double)f.freqs.size());
    return f;
}

std::vector<double> evaluate(const PlaneWaveField& f,
                             const std::vector<std::array<double, 2>>& pts) {
    std::vector<double> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = f.value(pts[i][0], pts[i][1]);
    return out;
}

std::vector<double> evaluate(const SphericalField& f,
                             const std::vector<std::array<double, 2>>& theta_phi) {
    std::vector<double> out(theta_phi.size());
    for (std::size_t i = 0; i < theta_phi.size(); ++i)
        out[i] = f.value(theta_phi[i][0], theta_phi[i][1]);
    return out;
}

std::vector<double> evaluate(const TorusField& f,
                             const std::vector<std::array<double, 2>>& pts) {
    std::vector<double> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = f.value(pts[i][0], pts[i][1]);
    return out;
}

std::vector<double> evaluate(const CircleField& f, const std::vector<double>& ts) {
    std::vector<double> out(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) out[i] = f.value(ts[i]);
    return out;
}

void legendre_row(int lmax, double ct, std::vector<double>& out) {
    const std::size_t n = (std::size_t)(lmax + 1) * (lmax + 2) / 2;
    out.assign(n, 0.0);
    auto idx = [](int l, int m) { return (std::size_t)l * (l + 1) / 2 + m; };
    double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    out[0] = std::sqrt(1.0 / kFourPi);
    if (lmax == 0) return;
    // diagonal and first off-diagonal, then three-term recurrence upward in l
    for (int m = 1; m <= lmax; ++m)
        out[idx(m, m)] = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * st * out[idx(m - 1, m - 1)];
    for (int m = 0; m < lmax; ++m)
        out[idx(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * ct * out[idx(m, m)];
    for (int m = 0; m <= lmax; ++m) {
        for (int l = m + 2; l <= lmax; ++l) {
            double a = std::sqrt((4.0 * l * l - 1.0) / ((double)l * l - m * m));
            double b = std::sqrt(((2.0 * l + 1.0) * (l - 1.0 + m) * (l - 1.0 - m)) /
                                 ((2.0 * l - 3.0) * ((double)l * l - m * m)));
            out[idx(l, m)] = a * ct * out[idx(l - 1, m)] - b * out[idx(l - 2, m)];
        }
    }
}

namespace {

json amps_json(const std::vector<double>& cos_amps, const std::vector<double>& sin_amps,
               double normalization) {
    json j;
    j["cos_amps"] = cos_amps;
    j["sin_amps"] = sin_amps;
    j["normalization"] = normalization;
    return j;
}

}  // namespace

std::string field_to_json(const PlaneWaveField& f) {
    json j = amps_json(f.cos_amps, f.sin_amps, f.normalization);
    j["type"] = "plane_wave";
    j["alpha"] = f.alpha;
    json kx = json::array(), ky = json::array();
    for (const auto& k : f.wavevectors) {
        kx.push_back(k[0]);
        ky.push_back(k[1]);
    }
    j["kx"] = kx;
    j["ky"] = ky;
    return j.dump();
}

std::string field_to_json(const SphericalField& f) {
    json j;
    j["type"] = "spherical";
    j["ell_min"] = f.ell_min;
    j["ell_max"] = f.ell_max;
    j["coeffs"] = f.coeffs;
    j["normalization"] = f.normalization;
    return j.dump();
}

std::string field_to_json(const TorusField& f) {
    json j = amps_json(f.cos_amps, f.sin_amps, f.normalization);
    j["type"] = "torus";
    json m = json::array();
    for (const auto& q : f.freqs) m.push_back({q[0], q[1]});
    j["freqs"] = m;
    return j.dump();
}

std::string field_to_json(const Torus3Field& f) {
    json j = amps_json(f.cos_amps, f.sin_amps, f.normalization);
    j["type"] = "torus3";
    json m = json::array();
    for (const auto& q : f.freqs) m.push_back({q[0], q[1], q[2]});
    j["freqs"] = m;
    return j.dump();
}

std::string field_to_json(const CircleField& f) {
    json j = amps_json(f.cos_amps, f.sin_amps, f.normalization);
    j["type"] = "circle";
    j["freqs"] = f.freqs;
    return j.dump();
}

namespace {

void check_type(const json& j, const char* expect) {
    if (j.at("type").get<std::string>() != expect)
        throw std::invalid_argument("field_from_json: type mismatch");
}

}  // namespace

PlaneWaveField planewave_from_json(const std::string& text) {
    json j = json::parse(text);
    check_type(j, "plane_wave");
    PlaneWaveField f;
    f.alpha = j.at("alpha").get<double>();
    auto kx = j.at("kx").get<std::vector<double>>();
    auto ky = j.at("ky").get<std::vector<double>>();
    for (std::size_t i = 0; i < kx.size(); ++i) f.wavevectors.push_back({kx[i], ky[i]});
    f.cos_amps = j.at("cos_amps").get<std::vector<double>>();
    f.sin_amps = j.at("sin_amps").get<std::vector<double>>();
    f.normalization = j.at("normalization").get<double>();
    return f;
}

SphericalField sphere_from_json(const std::string& text) {
    json j = json::parse(text);
    check_type(j, "spherical");
    SphericalField f;
    f.ell_min = j.at("ell_min").get<int>();
    f.ell_max = j.at("ell_max").get<int>();
    f.coeffs = j.at("coeffs").get<std::vector<double>>();
    f.normalization = j.at("normalization").get<double>();
    return f;
}

TorusField torus_from_json(const std::string& text) {
    json j = json::parse(text);
    check_type(j, "torus");
    TorusField f;
    for (const auto& q : j.at("freqs")) f.freqs.push_back({q[0].get<int>(), q[1].get<int>()});
    f.cos_amps = j.at("cos_amps").get<std::vector<double>>();
    f.sin_amps = j.at("sin_amps").get<std::vector<double>>();
    f.normalization = j.at("normalization").get<double>();
    return f;
}

CircleField circle_from_json(const std::string& text) {
    json j = json::parse(text);
    check_type(j, "circle");
    CircleField f;
    f.freqs = j.at("freqs").get<std::vector<int>>();
    f.cos_amps = j.at("cos_amps").get<std::vector<double>>();
    f.sin_amps = j.at("sin_amps").get<std::vector<double>>();
    f.normalization = j.at("normalization").get<double>();
    return f;
}

}  // namespace nodalab
