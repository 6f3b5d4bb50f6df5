#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace nodalab {

enum class Experiment {
    CovarianceCheck,
    KacRice1D,
    MeasureOmega2D,
    MeasureEnds2D,
    Genus3D,
    NSConstant,
    BarrierDemo,
};

std::string experiment_name(Experiment e);
Experiment experiment_from_name(const std::string& name);

struct ExperimentConfig {
    Experiment experiment = Experiment::MeasureOmega2D;
    std::string geometry = "sphere";  // sphere | torus | planar
    double alpha = 1.0;
    double T = 0;    // spectral parameter; 0 derives it from ell on the sphere
    int ell = 80;    // sphere degree shorthand
    double eta = 0;  // monochromatic window; 0 selects a default
    int samples = 100;
    double resolution_factor = 12;  // samples per wavelength
    bool allow_under_resolved = false;
    int num_waves = 4096;  // planar wave count
    double window = 40;    // planar window side length
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out_dir = "out";
    std::string tree_code = "(())";  // barrier-demo target
    int ends_cutoff = 10;            // tree end size cutoff
    double lag_max = 8.0;
    double lag_step = 0.5;
    int base_points = 48;
    int directions = 8;
    bool table_only = false;  // covariance-check: emit the exact table only
};

// field-level validation; empty iff run() would accept
std::vector<std::string> validate(const ExperimentConfig& config);

struct RunResult {
    std::string manifest_path;
    std::vector<std::string> outputs;           // paths written (manifest excluded)
    std::map<std::string, double> metrics;      // headline numbers
};

RunResult run(const ExperimentConfig& config);

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig config_from_manifest(const std::string& manifest_path);

// shared deterministic worker pool: results are folded in sample order, so
// outputs do not depend on the worker count
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace nodalab
