#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "neurite/params.hpp"

namespace neurite {

/// Cell averages of the antero-/retrograde densities in one neurite.
struct NeuriteField {
    std::vector<double> f_plus;
    std::vector<double> f_minus;

    int n_cells() const { return static_cast<int>(f_plus.size()); }

    static NeuriteField constant(int n, double fp, double fm) {
        NeuriteField f;
        f.f_plus.assign(static_cast<size_t>(n), fp);
        f.f_minus.assign(static_cast<size_t>(n), fm);
        return f;
    }

    double rho(int k) const { return f_plus[static_cast<size_t>(k)] + f_minus[static_cast<size_t>(k)]; }
};

/// All evolving unknowns at one time point.
struct SimState {
    std::array<NeuriteField, 2> fields;
    double lambda_som = 0.0;
    std::array<double, 2> lambda{0.0, 0.0};
    std::array<double, 2> lengths{1.0, 1.0};
    double time = 0.0;
};

/// The pluggable coupling functions of the model.
///
/// alpha/beta take a pool amount, g takes the boundary traces
/// (f_plus, f_minus), h takes (Lambda_j, L_j) and gamma the time.
struct ModelFunctions {
    using PoolFn = std::function<double(double)>;
    using TraceFn = std::function<double(double, double)>;
    using GrowthFn = std::function<double(double, double)>;
    using TimeFn = std::function<double(double)>;

    std::array<PoolFn, 2> alpha_plus, alpha_minus, beta_plus, beta_minus;
    std::array<TraceFn, 2> g_plus, g_minus;
    std::array<GrowthFn, 2> h;
    TimeFn gamma;
    std::string name;

    static ModelFunctions trivial() {
        ModelFunctions mf;
        auto zero1 = [](double) { return 0.0; };
        auto zero2 = [](double, double) { return 0.0; };
        for (int j = 0; j < 2; ++j) {
            mf.alpha_plus[j] = zero1;
            mf.alpha_minus[j] = zero1;
            mf.beta_plus[j] = zero1;
            mf.beta_minus[j] = zero1;
            mf.g_plus[j] = zero2;
            mf.g_minus[j] = zero2;
            mf.h[j] = zero2;
        }
        mf.gamma = zero1;
        mf.name = "trivial";
        return mf;
    }
};

enum class Direction { antero, retro };

/// Drift velocity at a cell face in the fixed (y = x/L) coordinates.
/// The 1/L factor of the transformed flux is applied by the assembly.
inline double convective_velocity(double y, double rho_face, double /*L*/, double dLdt,
                                  Direction direction, const DimensionlessParams& p) {
    const double drift = p.kappa_v * (1.0 - rho_face / p.rho_cap);
    const double geometric = dLdt * y;
    return (direction == Direction::antero ? drift : -drift) - geometric;
}

/// The four boundary flux magnitudes of one neurite.
struct BoundaryFluxes {
    double inflow_left = 0.0;    // soma -> neurite, anterograde
    double outflow_left = 0.0;   // neurite -> soma, retrograde
    double outflow_right = 0.0;  // neurite -> cone, anterograde
    double inflow_right = 0.0;   // cone -> neurite, retrograde

    bool nonnegative() const {
        return inflow_left >= 0.0 && outflow_left >= 0.0 && outflow_right >= 0.0 &&
               inflow_right >= 0.0;
    }
};

inline BoundaryFluxes boundary_fluxes(int j, double fp0, double fm0, double fp1, double fm1,
                                      double lambda_som, double lambda_j,
                                      const ModelFunctions& mf) {
    BoundaryFluxes bf;
    bf.inflow_left = mf.alpha_plus[j](lambda_som) * mf.g_plus[j](fp0, fm0);
    bf.outflow_left = mf.beta_minus[j](lambda_som) * fm0;
    bf.outflow_right = mf.beta_plus[j](lambda_j) * fp1;
    bf.inflow_right = mf.alpha_minus[j](lambda_j) * mf.g_minus[j](fp1, fm1);
    return bf;
}

/// Right-hand sides of the three pool equations, given the boundary fluxes
/// evaluated at the same state. Returns (dLambda_som, dLambda_1, dLambda_2).
inline std::array<double, 3> pool_rhs(const SimState& s, const std::array<BoundaryFluxes, 2>& bf,
                                      const ModelFunctions& mf, const DimensionlessParams& p,
                                      double t) {
    double soma = 0.0;
    std::array<double, 3> rhs{};
    for (int j = 0; j < 2; ++j) {
        soma += bf[j].outflow_left - bf[j].inflow_left;
        rhs[static_cast<size_t>(j + 1)] =
            p.kappa_cone * (bf[j].outflow_right - bf[j].inflow_right) -
            p.kappa_h * mf.h[j](s.lambda[j], s.lengths[j]);
    }
    rhs[0] = p.kappa_som * soma + p.kappa_gamma * mf.gamma(t);
    return rhs;
}

inline double length_rhs(int j, double lambda_j, double L_j, const ModelFunctions& mf,
                         const DimensionlessParams& p) {
    return p.kappa_L * mf.h[j](lambda_j, L_j);
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

/// Smoothed-Heaviside gate used in the experiment growth law.
struct HeavisideParams {
    double steepness = 4.0;
    double offset = 0.2;
};

namespace detail {

inline ModelFunctions::GrowthFn atan_logistic_growth(double lambda_min, double ell_min,
                                                     HeavisideParams hs) {
    return [=](double lam, double L) {
        return std::atan(lam - lambda_min) /
               (1.0 + std::exp(-hs.steepness * (L - ell_min - hs.offset)));
    };
}

}  // namespace detail

/// Coupling functions of the first numerical experiment. The small default
/// soma outflow coefficient (0.05) lets the locally advantaged neurite win;
/// passing 1.0 gives the strong-coupling variant.
inline ModelFunctions experiment1_functions(const DimensionlessParams& p,
                                            double alpha_plus_coeff = 0.05,
                                            HeavisideParams hs = {}) {
    ModelFunctions mf = ModelFunctions::trivial();
    mf.name = "experiment-1";
    for (int j = 0; j < 2; ++j) {
        mf.alpha_plus[j] = [=](double lam) { return alpha_plus_coeff * lam / 2.0; };
        mf.alpha_minus[j] = [](double lam) { return 0.1 * (1.0 - lam / 2.0) * lam / 2.0; };
        mf.beta_plus[j] = [](double lam) { return 0.7 * (1.0 - lam / 2.0); };
        mf.beta_minus[j] = [](double lam) { return 0.7 * (1.0 - lam / 2.0); };
        mf.g_plus[j] = [](double fp, double fm) { return 1.0 - 0.5 * (fp + fm); };
        mf.g_minus[j] = [](double fp, double fm) { return 1.0 - 0.5 * (fp + fm); };
        mf.h[j] = detail::atan_logistic_growth(p.lambda_min, p.ell_min[j], hs);
    }
    mf.gamma = [](double) { return 0.0; };
    return mf;
}

/// Coupling functions of the second numerical experiment: the soma release
/// rate grows when few retrograde vesicles arrive, which closes a nonlocal
/// feedback loop between growth cones and soma.
inline ModelFunctions experiment2_functions(const DimensionlessParams& p,
                                            HeavisideParams hs = {}) {
    ModelFunctions mf = experiment1_functions(p, 0.6, hs);
    mf.name = "experiment-2";
    for (int j = 0; j < 2; ++j) {
        mf.alpha_plus[j] = [](double lam) { return 0.6 * lam / 2.0; };
        mf.alpha_minus[j] = [](double lam) { return (1.0 - lam / 2.0) * lam / 2.0; };
        mf.g_plus[j] = [](double fp, double fm) {
            const double c = std::max(0.0, 1.0 - 3.0 * fm);
            return (std::sqrt(c * c + 0.1) + 0.5) * (1.0 - 0.5 * (fp + fm));
        };
    }
    return mf;
}

/// Coefficients of the linear boundary-rate choice.
struct LinearCoefficients {
    std::array<double, 2> c_alpha_plus{0.0, 0.0};
    std::array<double, 2> c_alpha_minus{0.0, 0.0};
    std::array<double, 2> c_beta_plus{0.0, 0.0};
    std::array<double, 2> c_beta_minus{0.0, 0.0};
};

/// Linear pool rates with exclusion-type g:
///   alpha_+(s) = c s/cap_som,  alpha_-(s) = c s/cap_cone,
///   beta_+(s)  = c (1 - s/cap_cone),  beta_-(s) = c (1 - s/cap_som),
///   g_+-(f+,f-) = f_+- (1 - rho/rho_cap).
inline ModelFunctions linear_stationary_functions(const LinearCoefficients& c,
                                                double lambda_som_cap, double lambda_cone_cap,
                                                double rho_cap) {
    ModelFunctions mf = ModelFunctions::trivial();
    mf.name = "linear-stationary";
    for (int j = 0; j < 2; ++j) {
        const double cap = rho_cap;
        mf.alpha_plus[j] = [=, cc = c.c_alpha_plus[j]](double s) { return cc * s / lambda_som_cap; };
        mf.alpha_minus[j] = [=, cc = c.c_alpha_minus[j]](double s) { return cc * s / lambda_cone_cap; };
        mf.beta_plus[j] = [=, cc = c.c_beta_plus[j]](double s) { return cc * (1.0 - s / lambda_cone_cap); };
        mf.beta_minus[j] = [=, cc = c.c_beta_minus[j]](double s) { return cc * (1.0 - s / lambda_som_cap); };
        mf.g_plus[j] = [cap](double fp, double fm) { return fp * (1.0 - (fp + fm) / cap); };
        mf.g_minus[j] = [cap](double fp, double fm) { return fm * (1.0 - (fp + fm) / cap); };
    }
    mf.gamma = [](double) { return 0.0; };
    return mf;
}

}  // namespace neurite
