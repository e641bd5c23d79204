#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "neurite/config.hpp"
#include "neurite/stepper.hpp"
#include "neurite/validate.hpp"

namespace neurite {

/// Self-convergence study: runs at dyadically refined resolutions against
/// the finest run as reference.
struct ConvergenceResult {
    std::vector<int> n_cells;
    std::vector<double> taus;
    std::vector<double> density_errors;  // coarse-grid L2, per level below finest
    std::vector<double> scalar_errors;   // pools and lengths, max abs
    std::vector<double> density_orders;
    std::vector<double> scalar_orders;
};

/// Runs `levels` refinements (halving h and tau together) of the given
/// configuration up to `t_end` and measures errors of the final state
/// against the finest level after conservative projection.
inline ConvergenceResult self_convergence(const ExperimentConfig& base, int levels,
                                          double t_end) {
    if (levels < 3) throw std::invalid_argument("self_convergence: need at least 3 levels");
    ConvergenceResult res;
    std::vector<SimState> finals;
    for (int l = 0; l < levels; ++l) {
        ExperimentConfig cfg = base;
        cfg.n_cells = base.n_cells << l;
        cfg.stepper.tau = base.stepper.tau / static_cast<double>(1 << l);
        cfg.stepper.t_end = t_end;
        cfg.stepper.max_steps = -1;
        cfg.sampling.stride = 0;
        cfg.sampling.snapshot_times.clear();
        BuiltExperiment b = build_experiment(cfg);
        RunRecord rec = run(b.initial, b.stepper, b.functions, b.params, b.grid, b.sampling);
        finals.push_back(rec.final_state);
        res.n_cells.push_back(cfg.n_cells);
        res.taus.push_back(cfg.stepper.tau);
    }

    auto to_coarse = [&](std::vector<double> v, int level) {
        for (int l = 0; l < level; ++l) v = project_to_coarse(v);
        return v;
    };
    const double h0 = 1.0 / static_cast<double>(base.n_cells);
    const SimState& ref = finals.back();
    for (int l = 0; l + 1 < levels; ++l) {
        double ss = 0.0;
        double sc = 0.0;
        for (int j = 0; j < 2; ++j) {
            const auto dp = to_coarse(finals[static_cast<size_t>(l)].fields[j].f_plus, l);
            const auto dm = to_coarse(finals[static_cast<size_t>(l)].fields[j].f_minus, l);
            const auto rp = to_coarse(ref.fields[j].f_plus, levels - 1);
            const auto rm = to_coarse(ref.fields[j].f_minus, levels - 1);
            for (size_t k = 0; k < dp.size(); ++k) {
                ss += (dp[k] - rp[k]) * (dp[k] - rp[k]);
                ss += (dm[k] - rm[k]) * (dm[k] - rm[k]);
            }
            sc = std::max(sc, std::abs(finals[static_cast<size_t>(l)].lengths[j] - ref.lengths[j]));
            sc = std::max(sc, std::abs(finals[static_cast<size_t>(l)].lambda[j] - ref.lambda[j]));
        }
        sc = std::max(sc, std::abs(finals[static_cast<size_t>(l)].lambda_som - ref.lambda_som));
        res.density_errors.push_back(std::sqrt(h0 * ss));
        res.scalar_errors.push_back(sc);
    }
    res.density_orders = observed_orders(res.density_errors);
    res.scalar_orders = observed_orders(res.scalar_errors);
    return res;
}

}  // namespace neurite
