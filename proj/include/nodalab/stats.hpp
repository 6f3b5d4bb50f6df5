#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nodalab/rng.hpp"

namespace nodalab {

// Topology counts of one sample: atom key -> occurrences, plus everything
// that escaped resolution (ties, non-separating edges, sub-resolution
// components, cutoff overflow).
struct SampleAtoms {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t unresolved = 0;
};

// Probability mass over a countable atom set with an explicit infinity /
// unresolved bucket.  Atom keys are decimal integers for connectivity and
// genus measures and canonical parenthesis codes for tree ends.
struct EmpiricalMeasure {
    std::map<std::string, double> atoms;
    std::map<std::string, double> stderrs;  // cluster (per-sample) standard errors
    double unresolved_mass = 0;
    double unresolved_stderr = 0;
    std::uint64_t total_count = 0;

    double mass(const std::string& key) const;
    double mass(int key) const;
    double total_mass() const;  // atoms + unresolved; 1 up to rounding
};

// Pooled aggregation: masses are pooled counts over the pooled total.
EmpiricalMeasure accumulate(const std::vector<SampleAtoms>& samples);

// sup over finite atom subsets (incl. the unresolved bucket) of
// |a(F) - b(F)|; for probability measures this is the positive-part sum.
double discrepancy(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

struct NSEstimate {
    double beta_hat = 0;
    double stderr_ = 0;
    int n = 0;
    double alpha = 0;
    double mean_count = 0;
    double sd_count = 0;
    long num_samples = 0;
};

// beta_hat = mean(count) (2pi)^n / (omega_n * volume * T^n)
NSEstimate ns_estimate(const std::vector<long>& counts, double volume, double T, int n,
                       double alpha);

// Component count of the random degree-t real projective plane curve,
// relative to the Harnack bound (t-1)(t-2)/2 + 1.  Uses Vol(P^2(R)) = 2pi
// (half the round sphere).
double harnack_ratio(double beta_hat, int degree);

struct TailFit {
    double exponent = 0;
    double stderr_ = 0;
    int m_min = 2;
    long num_points = 0;
};

// Discrete (zeta-normalized) maximum-likelihood fit of mass(m) ~ m^-beta
// over integer atoms m >= m_min.
TailFit fit_power_law(const EmpiricalMeasure& measure, int m_min);

struct TableRow {
    int atom = 0;
    double measured = 0;
    double reference = 0;
    double abs_dev = 0;
    double stderr_ = 0;
};

std::vector<TableRow> table_compare(const EmpiricalMeasure& measure,
                                    const std::map<int, double>& reference);

// Connectivity reference tables for the monochromatic (alpha = 1) and
// full-band (alpha = 0) ensembles, atoms m = 1..26.
const std::map<int, double>& connectivity_reference_table(double alpha);

// exact zeta(s) sampler on {1, 2, ...} (rejection method), s > 1
int sample_zeta(double exponent, Rng& rng);

// unit n-ball volume, n = 1, 2, 3
double unit_ball_volume(int n);

}  // namespace nodalab
