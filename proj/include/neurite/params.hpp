#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace neurite {

/// Dimensionless parameters of the scaled transport model.
///
/// The same structure covers both normalizations in use: with
/// rho_cap = 2 and pool caps = 2 it is the scaled system (densities
/// relative to the typical density, pools relative to half capacity);
/// with rho_cap = 1, kappa_som = kappa_cone = kappa_L = 1 and
/// kappa_h = c_j it reduces to the unscaled model.
struct DimensionlessParams {
    double kappa_v = 0.0;       // drift coefficient in transformed coordinates
    double kappa_D = 0.0;       // diffusion coefficient
    double kappa_lambda = 0.0;  // effective direction-switching rate

    // boundary in/outflow velocity scales (used by the scaled linear choice)
    std::array<double, 2> kappa_alpha_plus{0.0, 0.0};
    std::array<double, 2> kappa_alpha_minus{0.0, 0.0};
    std::array<double, 2> kappa_beta_plus{0.0, 0.0};
    std::array<double, 2> kappa_beta_minus{0.0, 0.0};

    double kappa_som = 1.0;    // soma pool rate scale
    double kappa_gamma = 0.0;  // production rate scale
    double kappa_cone = 1.0;   // growth-cone pool rate scale
    double kappa_h = 0.0;      // growth consumption scale
    double kappa_L = 1.0;      // length change scale

    double rho_cap = 2.0;  // total density at full exclusion
    double lambda_som_cap = 2.0;
    double lambda_cone_cap = 2.0;

    std::array<double, 2> ell_min{0.1, 0.1};  // minimal neurite lengths
    double lambda_min = 1.0;                  // growth/shrinkage switching level

    std::array<double, 2> c_growth{1.0, 1.0};  // vesicles consumed per unit length

    // Mass ledger weights. They convert the four compartments to one common
    // unit so that the discrete dynamics conserve
    //   mass_unit_density * sum_j (h L_j sum_k rho_jk)
    //   + mass_weight_som * Lambda_som + mass_weight_cone * (Lambda_1+Lambda_2)
    //   + mass_weight_len * (L_1 + L_2)
    // up to production. Consistency requires w_som*kappa_som = w_density,
    // w_cone*kappa_cone = w_density and w_len*kappa_L = w_cone*kappa_h.
    double mass_unit_density = 1.0;
    double mass_weight_som = 1.0;
    double mass_weight_cone = 1.0;
    double mass_weight_len = 0.0;

    void derive_mass_weights() {
        mass_unit_density = 1.0;
        mass_weight_som = kappa_som > 0.0 ? 1.0 / kappa_som : 1.0;
        mass_weight_cone = kappa_cone > 0.0 ? 1.0 / kappa_cone : 1.0;
        mass_weight_len = (kappa_L > 0.0 && kappa_cone > 0.0)
                              ? kappa_h / (kappa_cone * kappa_L)
                              : 0.0;
    }

    void validate() const {
        auto req = [](bool ok, const std::string& what) {
            if (!ok) throw std::invalid_argument("DimensionlessParams: " + what);
        };
        auto fin = [](double x) { return std::isfinite(x); };
        req(fin(kappa_v) && fin(kappa_D) && fin(kappa_lambda), "non-finite kappa");
        req(kappa_D >= 0.0 && kappa_lambda >= 0.0, "kappa_D, kappa_lambda must be >= 0");
        req(kappa_som >= 0.0 && kappa_gamma >= 0.0 && kappa_cone >= 0.0 &&
                kappa_h >= 0.0 && kappa_L >= 0.0,
            "pool/length kappas must be >= 0");
        req(rho_cap > 0.0, "rho_cap must be > 0");
        req(lambda_som_cap > 0.0 && lambda_cone_cap > 0.0, "pool caps must be > 0");
        for (int j = 0; j < 2; ++j) {
            req(ell_min[j] > 0.0, "ell_min must be > 0");
            req(c_growth[j] >= 0.0, "c_growth must be >= 0");
        }
    }
};

}  // namespace neurite
