#include "nodalab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace nodalab {

double EmpiricalMeasure::mass(const std::string& key) const {
    auto it = atoms.find(key);
    return it == atoms.end() ? 0.0 : it->second;
}

double EmpiricalMeasure::mass(int key) const { return mass(std::to_string(key)); }

double EmpiricalMeasure::total_mass() const {
    double s = unresolved_mass;
    for (const auto& [k, v] : atoms) s += v;
    return s;
}

EmpiricalMeasure accumulate(const std::vector<SampleAtoms>& samples) {
    if (samples.empty()) throw std::invalid_argument("accumulate: no samples");
    EmpiricalMeasure out;
    std::map<std::string, std::uint64_t> pooled;
    std::uint64_t pooled_unresolved = 0, total = 0;
    for (const auto& s : samples) {
        for (const auto& [k, c] : s.counts) {
            pooled[k] += c;
            total += c;
        }
        pooled_unresolved += s.unresolved;
        total += s.unresolved;
    }
    if (total == 0) throw std::invalid_argument("accumulate: empty samples");
    out.total_count = total;
    for (const auto& [k, c] : pooled) out.atoms[k] = (double)c / (double)total;
    out.unresolved_mass = (double)pooled_unresolved / (double)total;

    // ratio-estimator cluster variance over samples:
    // var(m) ~ sum_i (c_i - m n_i)^2 / (sum n_i)^2
    if (samples.size() > 1) {
        auto cluster_se = [&](const std::string& key, bool unresolved) {
            double m = unresolved ? out.unresolved_mass : out.atoms.at(key);
            double acc = 0;
            for (const auto& s : samples) {
                double ci = 0, ni = (double)s.unresolved;
                for (const auto& [k, c] : s.counts) ni += c;
                if (unresolved)
                    ci = (double)s.unresolved;
                else {
                    auto it = s.counts.find(key);
                    ci = it == s.counts.end() ? 0.0 : (double)it->second;
                }
                double d = ci - m * ni;
                acc += d * d;
            }
            double scale = (double)samples.size() / ((double)samples.size() - 1.0);
            return std::sqrt(scale * acc) / (double)total;
        };
        for (const auto& [k, v] : out.atoms) out.stderrs[k] = cluster_se(k, false);
        out.unresolved_stderr = cluster_se("", true);
    }
    return out;
}

double discrepancy(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
    std::set<std::string> keys;
    for (const auto& [k, v] : a.atoms) keys.insert(k);
    for (const auto& [k, v] : b.atoms) keys.insert(k);
    double pos = 0, neg = 0;
    for (const auto& k : keys) {
        double d = a.mass(k) - b.mass(k);
        if (d > 0)
            pos += d;
        else
            neg -= d;
    }
    double du = a.unresolved_mass - b.unresolved_mass;
    if (du > 0)
        pos += du;
    else
        neg -= du;
    return std::max(pos, neg);
}

double unit_ball_volume(int n) {
    switch (n) {
        case 1:
            return 2.0;
        case 2:
            return std::numbers::pi;
        case 3:
            return 4.0 * std::numbers::pi / 3.0;
        default:
            throw std::invalid_argument("unit_ball_volume: n must be 1, 2 or 3");
    }
}

NSEstimate ns_estimate(const std::vector<long>& counts, double volume, double T, int n,
                       double alpha) {
    if (counts.empty()) throw std::invalid_argument("ns_estimate: no counts");
    if (!(volume > 0) || !(T > 0)) throw std::invalid_argument("ns_estimate: bad volume or T");
    NSEstimate out;
    out.n = n;
    out.alpha = alpha;
    out.num_samples = (long)counts.size();
    double sum = 0;
    for (long c : counts) sum += (double)c;
    out.mean_count = sum / counts.size();
    double var = 0;
    for (long c : counts) var += ((double)c - out.mean_count) * ((double)c - out.mean_count);
    if (counts.size() > 1) var /= (double)(counts.size() - 1);
    out.sd_count = std::sqrt(var);
    double scale = std::pow(2.0 * std::numbers::pi, n) /
                   (unit_ball_volume(n) * volume * std::pow(T, n));
    out.beta_hat = out.mean_count * scale;
    out.stderr_ = out.sd_count / std::sqrt((double)counts.size()) * scale;
    return out;
}

double harnack_ratio(double beta_hat, int degree) {
    if (degree < 3) throw std::invalid_argument("harnack_ratio: degree must be >= 3");
    const double t = degree;
    // Vol(P^2(R)) = 2pi with the round metric of curvature 1
    double expected = beta_hat * unit_ball_volume(2) /
                      std::pow(2.0 * std::numbers::pi, 2) * (2.0 * std::numbers::pi) * t * t;
    double harnack = 0.5 * (t - 1.0) * (t - 2.0) + 1.0;
    return expected / harnack;
}

namespace {

// Hurwitz zeta sums with Euler-Maclaurin tails: sum_{k>=a} k^-s weighted by
// (ln k)^p for p = 0, 1, 2.
void zeta_moments(double s, int a, double& z0, double& z1, double& z2) {
    const int K = 200000;
    z0 = z1 = z2 = 0;
    for (int k = a; k < a + K; ++k) {
        double lk = std::log((double)k);
        double w = std::pow((double)k, -s);
        z0 += w;
        z1 += w * lk;
        z2 += w * lk * lk;
    }
    double X = a + K;
    double lX = std::log(X);
    double head = std::pow(X, 1.0 - s);
    double sm1 = s - 1.0;
    z0 += head / sm1 + 0.5 * std::pow(X, -s);
    z1 += head * (lX / sm1 + 1.0 / (sm1 * sm1)) + 0.5 * std::pow(X, -s) * lX;
    z2 += head * (lX * lX / sm1 + 2.0 * lX / (sm1 * sm1) + 2.0 / (sm1 * sm1 * sm1)) +
          0.5 * std::pow(X, -s) * lX * lX;
}

}  // namespace

TailFit fit_power_law(const EmpiricalMeasure& measure, int m_min) {
    if (m_min < 1) throw std::invalid_argument("fit_power_law: m_min must be >= 1");
    std::map<int, double> tail;
    for (const auto& [k, v] : measure.atoms) {
        std::size_t pos = 0;
        int atom = 0;
        try {
            atom = std::stoi(k, &pos);
        } catch (...) {
            continue;
        }
        if (pos != k.size()) continue;
        if (atom >= m_min && v > 0) tail[atom] = v;
    }
    if ((int)tail.size() < 5)
        throw std::invalid_argument("fit_power_law: need >= 5 atoms at or above m_min");

    double W = 0, mean_log = 0;
    for (const auto& [m, w] : tail) W += w;
    for (const auto& [m, w] : tail) mean_log += w * std::log((double)m);
    mean_log /= W;

    // MLE: E_s[ln k | k >= m_min] = mean of observed ln m; monotone in s
    auto expected_log = [&](double s) {
        double z0, z1, z2;
        zeta_moments(s, m_min, z0, z1, z2);
        return z1 / z0;
    };
    double lo = 1.0001, hi = 12.0;
    if (expected_log(lo) < mean_log)
        throw std::invalid_argument("fit_power_law: tail too heavy for a summable fit");
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (expected_log(mid) > mean_log)
            lo = mid;
        else
            hi = mid;
    }
    TailFit fit;
    fit.m_min = m_min;
    fit.exponent = 0.5 * (lo + hi);
    double z0, z1, z2;
    zeta_moments(fit.exponent, m_min, z0, z1, z2);
    double fisher = z2 / z0 - (z1 / z0) * (z1 / z0);  // Var_s[ln k]
    double n_eff = W * (double)measure.total_count;
    fit.num_points = (long)std::llround(n_eff);
    fit.stderr_ = fisher > 0 && n_eff > 0 ? 1.0 / std::sqrt(n_eff * fisher) : 0.0;
    return fit;
}

std::vector<TableRow> table_compare(const EmpiricalMeasure& measure,
                                    const std::map<int, double>& reference) {
    std::vector<TableRow> rows;
    for (const auto& [atom, ref] : reference) {
        TableRow row;
        row.atom = atom;
        row.reference = ref;
        row.measured = measure.mass(atom);
        row.abs_dev = std::abs(row.measured - ref);
        auto it = measure.stderrs.find(std::to_string(atom));
        row.stderr_ = it == measure.stderrs.end() ? 0.0 : it->second;
        rows.push_back(row);
    }
    return rows;
}

const std::map<int, double>& connectivity_reference_table(double alpha) {
    static const std::map<int, double> mono = {
        {1, 0.91171},  {2, 0.05143},  {3, 0.01322},  {4, 0.00628},  {5, 0.00364},
        {6, 0.00230},  {7, 0.00159},  {8, 0.00117},  {9, 0.00090},  {10, 0.00070},
        {11, 0.00058}, {12, 0.00047}, {13, 0.00039}, {14, 0.00034}, {15, 0.00030},
        {16, 0.00026}, {17, 0.00023}, {18, 0.00021}, {19, 0.00018}, {20, 0.00017},
        {21, 0.00016}, {22, 0.00014}, {23, 0.00013}, {24, 0.00012}, {25, 0.000098},
        {26, 0.000097}};
    static const std::map<int, double> band = {
        {1, 0.94473},  {2, 0.02820},  {3, 0.00889},  {4, 0.00437},  {5, 0.00261},
        {6, 0.00173},  {7, 0.00128},  {8, 0.00093},  {9, 0.00072},  {10, 0.00056},
        {11, 0.00048}, {12, 0.00039}, {13, 0.00034}, {14, 0.00029}, {15, 0.00026},
        {16, 0.00025}, {17, 0.00021}, {18, 0.00019}, {19, 0.00016}, {20, 0.00014},
        {21, 0.00013}, {22, 0.00011}, {23, 0.00011}, {24, 0.00009}, {25, 0.00008},
        {26, 0.00008}};
    if (alpha == 1.0) return mono;
    if (alpha == 0.0) return band;
    throw std::invalid_argument("connectivity_reference_table: tables exist for alpha 0 and 1");
}

int sample_zeta(double s, Rng& rng) {
    if (!(s > 1.0)) throw std::invalid_argument("sample_zeta: exponent must be > 1");
    const double am1 = s - 1.0;
    const double b = std::pow(2.0, am1);
    for (;;) {
        double u1 = rng.uniform();
        double u2 = rng.uniform();
        if (u1 <= 0) continue;
        double x = std::floor(std::pow(u1, -1.0 / am1));
        if (x > 9.0e15 || x < 1.0) continue;
        double t = std::pow(1.0 + 1.0 / x, am1);
        if (u2 * x * (t - 1.0) / (b - 1.0) <= t / b) return (int)x;
    }
}

}  // namespace nodalab
