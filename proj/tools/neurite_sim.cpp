// Command-line driver for the neurite transport simulator.

#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "neurite/config.hpp"
#include "neurite/convergence.hpp"
#include "neurite/output.hpp"
#include "neurite/stationary.hpp"
#include "neurite/validate.hpp"

namespace fs = std::filesystem;

namespace {

fs::path run_dir(const neurite::ExperimentConfig& cfg) {
    return neurite::output_root() / cfg.name;
}

int cmd_simulate(const std::vector<std::string>& config_paths, bool sweep, bool no_plots) {
    std::vector<neurite::BuiltExperiment> built;
    std::vector<fs::path> dirs;
    for (const auto& path : config_paths) {
        const neurite::ExperimentConfig cfg = neurite::load_config(path);
        built.push_back(neurite::build_experiment(cfg));
        dirs.push_back(run_dir(cfg));
    }
    std::vector<int> status(built.size(), 0);
    if (sweep && built.size() > 1) {
        std::vector<std::thread> workers;
        for (size_t i = 0; i < built.size(); ++i)
            workers.emplace_back([&, i] {
                status[i] = neurite::run_experiment(built[i], dirs[i], !no_plots);
            });
        for (auto& w : workers) w.join();
    } else {
        for (size_t i = 0; i < built.size(); ++i)
            status[i] = neurite::run_experiment(built[i], dirs[i], !no_plots);
    }
    int rc = 0;
    for (size_t i = 0; i < built.size(); ++i) {
        std::printf("%s: %s -> %s\n", built[i].name.c_str(),
                    status[i] == 0 ? "ok" : "FAILED", dirs[i].string().c_str());
        rc |= status[i];
    }
    return rc;
}

int cmd_stationary(const std::string& config_path) {
    const neurite::ExperimentConfig cfg = neurite::load_config(config_path);
    const neurite::ConstantStationaryState st = neurite::solve_constant_state(
        cfg.f_inf, cfg.lambda_inf, cfg.lambda_som_inf, cfg.lambda_som_max, cfg.lambda_cone_max,
        cfg.stationary_v0);
    const neurite::ModelFunctions mf = neurite::stationary_model_functions(st);
    const neurite::DimensionlessParams p =
        neurite::stationary_params(st, cfg.stationary_kappa_D);
    const neurite::Grid1D grid = neurite::Grid1D::uniform(cfg.n_cells);
    const double residual = neurite::stationary_residual(st, grid, p, mf);

    for (int j = 0; j < 2; ++j) {
        std::printf("neurite %d: f_inf = %.17g, flux = %.17g\n", j + 1, st.f_inf[j],
                    st.flux_inf(j));
        std::printf("  c_alpha_plus = %.17g  c_beta_minus = %.17g\n",
                    st.coefficients.c_alpha_plus[j], st.coefficients.c_beta_minus[j]);
        std::printf("  c_alpha_minus = %.17g  c_beta_plus = %.17g\n",
                    st.coefficients.c_alpha_minus[j], st.coefficients.c_beta_plus[j]);
        const auto root = neurite::h_length_root(mf.h[j], st.lambda_inf[j], p.ell_min[j]);
        if (root)
            std::printf("  stationary length root: %.17g\n", *root);
        else
            std::printf("  stationary length: infeasible (h has no root for this pool)\n");
    }
    std::printf("discrete residual (n = %d): %.3e\n", grid.n_cells, residual);
    std::printf("total mass: %.17g\n", neurite::mass_of_state(st));
    return residual <= 1e-10 ? 0 : 1;
}

int cmd_validate(const std::string& config_path) {
    const neurite::ExperimentConfig cfg = neurite::load_config(config_path);
    const neurite::BuiltExperiment b = neurite::build_experiment(cfg);
    const neurite::HypothesisReport rep =
        neurite::hypothesis_diagnostics(b.functions, b.params);
    if (rep.ok()) {
        std::printf("%s: all structural assumptions hold on the sampled grids\n",
                    b.functions.name.c_str());
        return 0;
    }
    for (const auto& w : rep.warnings)
        std::printf("warn (%s): %s\n", w.hypothesis.c_str(), w.message.c_str());
    // warnings are informational; presets may violate an assumption by design
    return 0;
}

int cmd_converge(const std::string& config_path, int levels, double t_end) {
    const neurite::ExperimentConfig cfg = neurite::load_config(config_path);
    const neurite::ConvergenceResult res = neurite::self_convergence(cfg, levels, t_end);
    std::printf("%-8s %-12s %-14s %-14s\n", "cells", "tau", "density_err", "scalar_err");
    for (size_t l = 0; l + 1 < res.n_cells.size(); ++l)
        std::printf("%-8d %-12.4g %-14.6e %-14.6e\n", res.n_cells[l], res.taus[l],
                    res.density_errors[l], res.scalar_errors[l]);
    std::printf("observed orders (densities):");
    for (double o : res.density_orders) std::printf(" %.3f", o);
    std::printf("\nobserved orders (pools/lengths):");
    for (double o : res.scalar_orders) std::printf(" %.3f", o);
    std::printf("\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-neurite vesicle transport simulator"};
    app.require_subcommand(1);

    std::vector<std::string> sim_configs;
    bool sweep = false, no_plots = false;
    auto* sim = app.add_subcommand("simulate", "run configured experiments");
    sim->add_option("config", sim_configs, "JSON config file(s)")->required();
    sim->add_flag("--sweep", sweep, "run multiple configs on worker threads");
    sim->add_flag("--no-plots", no_plots, "skip SVG plot generation");

    std::string stat_config;
    auto* stat = app.add_subcommand("stationary", "construct and check a constant steady state");
    stat->add_option("config", stat_config, "JSON config file")->required();

    std::string val_config;
    auto* val = app.add_subcommand("validate", "hypothesis diagnostics for a config");
    val->add_option("config", val_config, "JSON config file")->required();

    std::string conv_config;
    int levels = 3;
    double conv_t_end = 1.0;
    auto* conv = app.add_subcommand("converge", "self-convergence study");
    conv->add_option("config", conv_config, "JSON config file")->required();
    conv->add_option("--levels", levels, "number of refinement levels (>= 3)");
    conv->add_option("--t-end", conv_t_end, "integration time of the study");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim_configs, sweep, no_plots);
        if (stat->parsed()) return cmd_stationary(stat_config);
        if (val->parsed()) return cmd_validate(val_config);
        if (conv->parsed()) return cmd_converge(conv_config, levels, conv_t_end);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
