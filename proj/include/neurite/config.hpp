#pragma once

#include <array>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "neurite/model.hpp"
#include "neurite/params.hpp"
#include "neurite/scaling.hpp"
#include "neurite/stationary.hpp"
#include "neurite/stepper.hpp"

namespace neurite {

/// Declarative description of one simulation run, loadable from JSON.
struct ExperimentConfig {
    std::string name = "run";
    std::string preset = "experiment-1";  // experiment-1 | experiment-2 | linear-stationary

    int n_cells = 101;
    StepperConfig stepper;
    SamplingConfig sampling;

    // preset knobs
    double alpha_plus_coeff = 0.05;  // experiment-1 soma release coefficient
    double v0 = -1.0;                // scaled drift; <0 means preset default
    double eta = 10.0;               // reserved tuning knob, not used by the presets
    HeavisideParams heaviside;

    // initial data (spatially constant densities)
    std::array<double, 2> lengths0{1.1, 1.0};
    double lambda_som0 = 1.0;
    std::array<double, 2> lambda0{0.25, 1.5};
    std::array<double, 2> f_plus0{0.1, 0.1};
    std::array<double, 2> f_minus0{0.1, 0.1};

    // linear-stationary specifics
    std::array<double, 2> f_inf{0.25, 0.25};
    std::array<double, 2> lambda_inf{50.0, 50.0};
    double lambda_som_inf = 3000.0;
    double lambda_som_max = 6000.0;
    double lambda_cone_max = 100.0;
    double stationary_kappa_D = 0.1;
    double stationary_v0 = 1.0;

    // at most one of these two may be present; otherwise the preset decides
    std::optional<PhysicalScales> scales;
    std::optional<DimensionlessParams> params;
};

/// Everything required to run one configured experiment.
struct BuiltExperiment {
    std::string name;
    DimensionlessParams params;
    ModelFunctions functions;
    Grid1D grid{1, 1.0};
    StepperConfig stepper;
    SamplingConfig sampling;
    SimState initial;
};

namespace detail {

inline void check_initial_data(const SimState& s, const DimensionlessParams& p) {
    auto fail = [](const std::string& what) {
        throw std::invalid_argument("initial data: " + what);
    };
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < s.fields[j].n_cells(); ++k) {
            const double fp = s.fields[j].f_plus[static_cast<size_t>(k)];
            const double fm = s.fields[j].f_minus[static_cast<size_t>(k)];
            if (fp < 0.0 || fm < 0.0 || fp + fm > p.rho_cap)
                fail("(H1) densities must satisfy f >= 0 and rho <= " +
                     std::to_string(p.rho_cap));
        }
        if (s.lengths[j] < p.ell_min[j])
            fail("(H0) initial length below the minimal length");
        if (s.lambda[j] < 0.0 || s.lambda[j] > p.lambda_cone_cap)
            fail("(H0) growth cone pool outside [0, cap]");
    }
    if (s.lambda_som < 0.0 || s.lambda_som > p.lambda_som_cap)
        fail("(H0) soma pool outside [0, cap]");
}

inline void read_array2(const nlohmann::json& j, const char* key, std::array<double, 2>& out) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (!v.is_array() || v.size() != 2)
        throw std::invalid_argument(std::string("config: ") + key + " must be an array of 2");
    out = {v[0].get<double>(), v[1].get<double>()};
}

inline void apply_scale_overrides(const nlohmann::json& j, PhysicalScales& ps) {
    auto set = [&](const char* key, double& field) {
        if (j.contains(key)) field = j.at(key).get<double>();
    };
    set("L_typ", ps.L_typ);
    set("t_typ", ps.t_typ);
    set("D_T", ps.D_T);
    set("v0", ps.v0);
    set("lambda_rate", ps.lambda_rate);
    set("c_inout", ps.c_inout);
    set("gamma_typ", ps.gamma_typ);
    set("f_typ", ps.f_typ);
    set("rho_max", ps.rho_max);
    set("c_h", ps.c_h);
    set("lambda_som_max", ps.lambda_som_max);
    set("lambda_cone_max", ps.lambda_cone_max);
    set("lambda_som_typ", ps.lambda_som_typ);
    set("lambda_cone_typ", ps.lambda_cone_typ);
    set("h_typ", ps.h_typ);
    set("L_min", ps.L_min);
    set("lambda_min", ps.lambda_min);
    set("vesicle_diameter", ps.vesicle_diameter);
    set("neurite_diameter", ps.neurite_diameter);
}

inline void apply_param_overrides(const nlohmann::json& j, DimensionlessParams& p) {
    auto set = [&](const char* key, double& field) {
        if (j.contains(key)) field = j.at(key).get<double>();
    };
    set("kappa_v", p.kappa_v);
    set("kappa_D", p.kappa_D);
    set("kappa_lambda", p.kappa_lambda);
    set("kappa_som", p.kappa_som);
    set("kappa_gamma", p.kappa_gamma);
    set("kappa_cone", p.kappa_cone);
    set("kappa_h", p.kappa_h);
    set("kappa_L", p.kappa_L);
    set("rho_cap", p.rho_cap);
    set("lambda_som_cap", p.lambda_som_cap);
    set("lambda_cone_cap", p.lambda_cone_cap);
    set("lambda_min", p.lambda_min);
    read_array2(j, "ell_min", p.ell_min);
    read_array2(j, "c_growth", p.c_growth);
    p.derive_mass_weights();
}

}  // namespace detail

/// Parses a configuration from its JSON representation.
inline ExperimentConfig parse_config(const nlohmann::json& j) {
    ExperimentConfig cfg;
    if (j.contains("name")) cfg.name = j.at("name").get<std::string>();
    if (j.contains("preset")) cfg.preset = j.at("preset").get<std::string>();
    if (cfg.preset != "experiment-1" && cfg.preset != "experiment-2" &&
        cfg.preset != "linear-stationary")
        throw std::invalid_argument("config: unknown preset '" + cfg.preset + "'");

    if (j.contains("n_cells")) cfg.n_cells = j.at("n_cells").get<int>();
    if (cfg.n_cells < 3) throw std::invalid_argument("config: n_cells must be >= 3");
    if (j.contains("tau")) cfg.stepper.tau = j.at("tau").get<double>();
    if (j.contains("t_end")) cfg.stepper.t_end = j.at("t_end").get<double>();
    if (j.contains("stationarity_tol"))
        cfg.stepper.stationarity_tol = j.at("stationarity_tol").get<double>();
    if (j.contains("max_steps")) cfg.stepper.max_steps = j.at("max_steps").get<long long>();
    cfg.stepper.validate();

    if (j.contains("sampling")) {
        const auto& s = j.at("sampling");
        if (s.contains("stride")) cfg.sampling.stride = s.at("stride").get<long long>();
        if (s.contains("snapshot_times"))
            cfg.sampling.snapshot_times = s.at("snapshot_times").get<std::vector<double>>();
    }

    if (j.contains("alpha_plus_coeff"))
        cfg.alpha_plus_coeff = j.at("alpha_plus_coeff").get<double>();
    if (j.contains("v0")) cfg.v0 = j.at("v0").get<double>();
    if (j.contains("eta")) cfg.eta = j.at("eta").get<double>();
    if (j.contains("heaviside")) {
        const auto& h = j.at("heaviside");
        if (h.contains("steepness")) cfg.heaviside.steepness = h.at("steepness").get<double>();
        if (h.contains("offset")) cfg.heaviside.offset = h.at("offset").get<double>();
    }

    if (j.contains("initial")) {
        const auto& ini = j.at("initial");
        detail::read_array2(ini, "lengths", cfg.lengths0);
        if (ini.contains("lambda_som")) cfg.lambda_som0 = ini.at("lambda_som").get<double>();
        detail::read_array2(ini, "lambda", cfg.lambda0);
        detail::read_array2(ini, "f_plus", cfg.f_plus0);
        detail::read_array2(ini, "f_minus", cfg.f_minus0);
    } else if (cfg.preset == "experiment-2") {
        cfg.lambda0 = {0.9, 0.9};
        cfg.f_plus0 = {0.0, 0.0};
        cfg.f_minus0 = {0.0, 0.0};
    }

    if (j.contains("stationary")) {
        const auto& st = j.at("stationary");
        detail::read_array2(st, "f_inf", cfg.f_inf);
        detail::read_array2(st, "lambda_inf", cfg.lambda_inf);
        if (st.contains("lambda_som_inf"))
            cfg.lambda_som_inf = st.at("lambda_som_inf").get<double>();
        if (st.contains("lambda_som_max"))
            cfg.lambda_som_max = st.at("lambda_som_max").get<double>();
        if (st.contains("lambda_cone_max"))
            cfg.lambda_cone_max = st.at("lambda_cone_max").get<double>();
        if (st.contains("kappa_D")) cfg.stationary_kappa_D = st.at("kappa_D").get<double>();
        if (st.contains("v0")) cfg.stationary_v0 = st.at("v0").get<double>();
    }

    if (j.contains("scales") && j.contains("params"))
        throw std::invalid_argument("config: give at most one of 'scales' and 'params'");
    if (j.contains("scales")) {
        PhysicalScales ps = PhysicalScales::reference();
        detail::apply_scale_overrides(j.at("scales"), ps);
        cfg.scales = ps;
    }
    if (j.contains("params")) {
        DimensionlessParams p;  // overrides are applied on top of a clean default
        detail::apply_param_overrides(j.at("params"), p);
        cfg.params = p;
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    return parse_config(j);
}

/// Assembles parameters, model functions, grid and initial state for a
/// parsed configuration.
inline BuiltExperiment build_experiment(const ExperimentConfig& cfg) {
    BuiltExperiment b;
    b.name = cfg.name;
    b.grid = Grid1D::uniform(cfg.n_cells);
    b.stepper = cfg.stepper;
    b.sampling = cfg.sampling;

    if (cfg.preset == "linear-stationary") {
        const ConstantStationaryState st =
            solve_constant_state(cfg.f_inf, cfg.lambda_inf, cfg.lambda_som_inf,
                                 cfg.lambda_som_max, cfg.lambda_cone_max, cfg.stationary_v0);
        b.params = cfg.params ? *cfg.params : stationary_params(st, cfg.stationary_kappa_D);
        b.functions = stationary_model_functions(st);
        b.initial = stationary_sim_state(st, cfg.n_cells);
    } else {
        const double v0 = cfg.v0 > 0.0 ? cfg.v0 : (cfg.preset == "experiment-2" ? 0.04 : 0.1);
        if (cfg.params) {
            b.params = *cfg.params;
        } else if (cfg.scales) {
            b.params = nondimensionalize(*cfg.scales);
            b.params.kappa_v = v0;
            b.params.kappa_lambda = 0.0;
            b.params.derive_mass_weights();
        } else {
            b.params = experiment_params(v0);
        }
        b.functions = cfg.preset == "experiment-2"
                          ? experiment2_functions(b.params, cfg.heaviside)
                          : experiment1_functions(b.params, cfg.alpha_plus_coeff, cfg.heaviside);

        for (int j = 0; j < 2; ++j) {
            b.initial.fields[j] =
                NeuriteField::constant(cfg.n_cells, cfg.f_plus0[j], cfg.f_minus0[j]);
            b.initial.lengths[j] = cfg.lengths0[j];
            b.initial.lambda[j] = cfg.lambda0[j];
        }
        b.initial.lambda_som = cfg.lambda_som0;
    }
    b.params.validate();
    detail::check_initial_data(b.initial, b.params);
    return b;
}

}  // namespace neurite
