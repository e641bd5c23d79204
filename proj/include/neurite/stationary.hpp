#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

#include "neurite/fv.hpp"
#include "neurite/grid.hpp"
#include "neurite/model.hpp"
#include "neurite/params.hpp"

namespace neurite {

/// A spatially constant equilibrium in the unscaled (cap = 1) convention,
/// together with the linear-rate coefficients that sustain it.
struct ConstantStationaryState {
    std::array<double, 2> f_inf{};       // f_+ = f_- = f_inf per neurite
    std::array<double, 2> lambda_inf{};
    double lambda_som_inf = 0.0;
    std::array<double, 2> L_inf{1.0, 1.0};

    LinearCoefficients coefficients;
    double lambda_som_max = 0.0;
    double lambda_cone_max = 0.0;
    double v0 = 0.0;

    double rho_inf(int j) const { return 2.0 * f_inf[j]; }
    double flux_inf(int j) const { return v0 * f_inf[j] * (1.0 - rho_inf(j)); }
};

/// Computes the boundary-rate coefficients that make the given constant
/// densities and pool values stationary.
inline ConstantStationaryState solve_constant_state(std::array<double, 2> f_inf,
                                                    std::array<double, 2> lambda_inf,
                                                    double lambda_som_inf, double lambda_som_max,
                                                    double lambda_cone_max, double v0) {
    auto req = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("solve_constant_state: ") + what);
    };
    req(lambda_som_inf > 0.0 && lambda_som_inf < lambda_som_max,
        "need 0 < lambda_som_inf < lambda_som_max");
    ConstantStationaryState st;
    st.lambda_som_max = lambda_som_max;
    st.lambda_cone_max = lambda_cone_max;
    st.v0 = v0;
    st.f_inf = f_inf;
    st.lambda_inf = lambda_inf;
    st.lambda_som_inf = lambda_som_inf;
    for (int j = 0; j < 2; ++j) {
        req(f_inf[j] > 0.0 && f_inf[j] <= 0.5, "need 0 < f_inf <= 1/2");
        req(lambda_inf[j] > 0.0 && lambda_inf[j] < lambda_cone_max,
            "need 0 < lambda_inf < lambda_cone_max");
        const double one_minus_rho = 1.0 - st.rho_inf(j);
        st.coefficients.c_alpha_plus[j] = v0 * lambda_som_max / lambda_som_inf;
        st.coefficients.c_beta_minus[j] =
            v0 * one_minus_rho * lambda_som_max / (lambda_som_max - lambda_som_inf);
        st.coefficients.c_alpha_minus[j] = v0 * lambda_cone_max / lambda_inf[j];
        st.coefficients.c_beta_plus[j] =
            v0 * one_minus_rho * lambda_cone_max / (lambda_cone_max - lambda_inf[j]);
    }
    return st;
}

/// Model functions realizing the constant stationary state (linear rates,
/// exclusion-type g with cap 1). The growth law defaults to zero.
inline ModelFunctions stationary_model_functions(
    const ConstantStationaryState& st,
    std::array<ModelFunctions::GrowthFn, 2> h = {nullptr, nullptr}) {
    ModelFunctions mf = linear_stationary_functions(st.coefficients, st.lambda_som_max,
                                                  st.lambda_cone_max, 1.0);
    for (int j = 0; j < 2; ++j)
        if (h[j]) mf.h[j] = h[j];
    return mf;
}

/// Dimensionless parameters in the unscaled convention: drift v0, cap 1,
/// pool equations with unit rate scales and growth consumption c_j.
inline DimensionlessParams stationary_params(const ConstantStationaryState& st, double kappa_D,
                                             double kappa_lambda = 0.0,
                                             std::array<double, 2> c_growth = {1.0, 1.0},
                                             std::array<double, 2> ell_min = {0.1, 0.1}) {
    DimensionlessParams p;
    p.kappa_v = st.v0;
    p.kappa_D = kappa_D;
    p.kappa_lambda = kappa_lambda;
    p.kappa_som = 1.0;
    p.kappa_cone = 1.0;
    p.kappa_gamma = 0.0;
    p.kappa_h = std::max(c_growth[0], c_growth[1]);
    p.kappa_L = 1.0;
    p.rho_cap = 1.0;
    p.lambda_som_cap = st.lambda_som_max;
    p.lambda_cone_cap = st.lambda_cone_max;
    p.ell_min = ell_min;
    p.lambda_min = 0.0;
    p.c_growth = c_growth;
    p.derive_mass_weights();
    return p;
}

inline SimState stationary_sim_state(const ConstantStationaryState& st, int n_cells) {
    SimState s;
    for (int j = 0; j < 2; ++j) {
        s.fields[j] = NeuriteField::constant(n_cells, st.f_inf[j], st.f_inf[j]);
        s.lambda[j] = st.lambda_inf[j];
        s.lengths[j] = st.L_inf[j];
    }
    s.lambda_som = st.lambda_som_inf;
    return s;
}

/// Root of h(lambda_inf, .) on [ell_min, inf), found by bisection with
/// interval doubling; requires h increasing in its second argument.
inline std::optional<double> h_length_root(const ModelFunctions::GrowthFn& h, double lambda_inf,
                                           double ell_min, double tol = 1e-12) {
    double lo = ell_min;
    double f_lo = h(lambda_inf, lo);
    if (f_lo == 0.0) return lo;
    if (f_lo > 0.0) return std::nullopt;  // increasing in L, positive already at ell_min
    double hi = std::max(2.0 * ell_min, 1.0);
    int doublings = 0;
    while (h(lambda_inf, hi) < 0.0) {
        hi *= 2.0;
        if (++doublings > 60) return std::nullopt;
    }
    while (hi - lo > tol * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (h(lambda_inf, mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Maximum absolute entry of the full discrete right-hand side (densities,
/// pools, lengths) evaluated at the constant state.
inline double stationary_residual(const ConstantStationaryState& st, const Grid1D& grid,
                                  const DimensionlessParams& p, const ModelFunctions& mf) {
    SimState s = stationary_sim_state(st, grid.n_cells);
    double worst = 0.0;
    std::vector<double> conv_p, conv_m, reac_p, reac_m, diff(static_cast<size_t>(grid.n_cells));
    const TridiagonalOperator A = assemble_diffusion(grid);
    std::array<BoundaryFluxes, 2> bf{};
    for (int j = 0; j < 2; ++j) {
        convective_residual(s.fields[j], s.lengths[j], 0.0, s.lambda_som, s.lambda[j], j, mf, p,
                            grid, conv_p, conv_m, &bf[static_cast<size_t>(j)]);
        reaction_geometric_residual(s.fields[j], s.lengths[j], 0.0, p, reac_p, reac_m);
        const double dscale = p.kappa_D / (s.lengths[j] * s.lengths[j] * grid.h);
        A.apply(s.fields[j].f_plus, diff);
        for (int k = 0; k < grid.n_cells; ++k) {
            const size_t ku = static_cast<size_t>(k);
            worst = std::max(worst, std::abs(conv_p[ku] + reac_p[ku] - dscale * diff[ku]));
        }
        A.apply(s.fields[j].f_minus, diff);
        for (int k = 0; k < grid.n_cells; ++k) {
            const size_t ku = static_cast<size_t>(k);
            worst = std::max(worst, std::abs(conv_m[ku] + reac_m[ku] - dscale * diff[ku]));
        }
    }
    const std::array<double, 3> pools = pool_rhs(s, bf, mf, p, 0.0);
    for (double r : pools) worst = std::max(worst, std::abs(r));
    for (int j = 0; j < 2; ++j)
        worst = std::max(worst, std::abs(length_rhs(j, s.lambda[j], s.lengths[j], mf, p)));
    return worst;
}

/// Total mass of the constant state (exact quadrature of constants).
inline double mass_of_state(const ConstantStationaryState& st) {
    double m = st.lambda_som_inf;
    for (int j = 0; j < 2; ++j) m += st.L_inf[j] * st.rho_inf(j) + st.lambda_inf[j];
    return m;
}

}  // namespace neurite
