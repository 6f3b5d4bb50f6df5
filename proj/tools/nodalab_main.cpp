#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "nodalab/experiments.hpp"

namespace {

void add_common(CLI::App* cmd, nodalab::ExperimentConfig& cfg) {
    cmd->add_option("--alpha", cfg.alpha, "spectral lower cutoff in [0,1]");
    cmd->add_option("--T", cfg.T, "spectral parameter");
    cmd->add_option("--eta", cfg.eta, "monochromatic window width (alpha = 1)");
    cmd->add_option("--samples", cfg.samples, "Monte-Carlo sample count");
    cmd->add_option("--seed", cfg.seed, "master seed");
    cmd->add_option("--workers", cfg.workers, "worker threads");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--resolution-factor", cfg.resolution_factor, "samples per wavelength");
    cmd->add_flag("--allow-under-resolved", cfg.allow_under_resolved,
                  "accept grids below 10 samples per wavelength");
    cmd->set_config("--config", "", "flat key=value config file (flags win)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nodalab: nodal-set topology laboratory for band-limited random fields"};
    app.require_subcommand(0, 1);

    std::string manifest_path;
    app.add_option("--from-manifest", manifest_path,
                   "re-run the experiment recorded in a manifest.json");

    nodalab::ExperimentConfig cfg;

    auto* cov = app.add_subcommand("covariance-check",
                                   "empirical planar covariance against B_{2,alpha}");
    add_common(cov, cfg);
    cov->add_option("--num-waves", cfg.num_waves, "plane waves per field");
    cov->add_option("--lag-max", cfg.lag_max, "largest lag");
    cov->add_option("--lag-step", cfg.lag_step, "lag grid step");
    cov->add_option("--base-points", cfg.base_points, "averaging base points per field");
    cov->add_option("--directions", cfg.directions, "averaging directions (>= 8)");
    cov->add_flag("--table-only", cfg.table_only, "emit the exact (r, B(r)) table and stop");

    auto* kac = app.add_subcommand("kacrice-1d", "circle zero counts vs the 1-D constant");
    add_common(kac, cfg);

    auto* omega = app.add_subcommand("measure-omega-2d", "connectivity distribution mu_Omega");
    add_common(omega, cfg);
    omega->add_option("--geometry", cfg.geometry, "sphere | torus | planar");
    omega->add_option("--ell", cfg.ell, "sphere degree (T derived)");
    omega->add_option("--num-waves", cfg.num_waves, "planar waves");
    omega->add_option("--window", cfg.window, "planar window side");

    auto* ends = app.add_subcommand("measure-ends-2d", "tree-end distribution mu_X");
    add_common(ends, cfg);
    ends->add_option("--geometry", cfg.geometry, "sphere | torus");
    ends->add_option("--ell", cfg.ell, "sphere degree (T derived)");
    ends->add_option("--cutoff", cfg.ends_cutoff, "end size cutoff (larger ends -> unresolved)");

    auto* genus = app.add_subcommand("genus-3d", "genus distribution on the 3-torus");
    add_common(genus, cfg);

    auto* ns = app.add_subcommand("ns-constant", "planar component density beta_{2,alpha}");
    add_common(ns, cfg);
    ns->add_option("--num-waves", cfg.num_waves, "planar waves");
    ns->add_option("--window", cfg.window, "planar window side");

    auto* barrier = app.add_subcommand("barrier-demo", "deterministic nesting-end construction");
    add_common(barrier, cfg);
    barrier->add_option("--tree", cfg.tree_code, "target rooted tree, canonical parentheses");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!manifest_path.empty()) {
            cfg = nodalab::config_from_manifest(manifest_path);
        } else if (cov->parsed()) {
            cfg.experiment = nodalab::Experiment::CovarianceCheck;
        } else if (kac->parsed()) {
            cfg.experiment = nodalab::Experiment::KacRice1D;
        } else if (omega->parsed()) {
            cfg.experiment = nodalab::Experiment::MeasureOmega2D;
        } else if (ends->parsed()) {
            cfg.experiment = nodalab::Experiment::MeasureEnds2D;
        } else if (genus->parsed()) {
            cfg.experiment = nodalab::Experiment::Genus3D;
        } else if (ns->parsed()) {
            cfg.experiment = nodalab::Experiment::NSConstant;
        } else if (barrier->parsed()) {
            cfg.experiment = nodalab::Experiment::BarrierDemo;
        } else {
            std::fprintf(stderr, "%s\n", app.help().c_str());
            return 1;
        }
        auto violations = nodalab::validate(cfg);
        if (!violations.empty()) {
            for (const auto& v : violations) std::fprintf(stderr, "config error: %s\n", v.c_str());
            return 1;
        }
        auto result = nodalab::run(cfg);
        std::printf("manifest: %s\n", result.manifest_path.c_str());
        for (const auto& o : result.outputs) std::printf("output:   %s\n", o.c_str());
        for (const auto& [k, v] : result.metrics) std::printf("%-18s %.8g\n", k.c_str(), v);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
