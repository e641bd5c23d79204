#pragma once

#include <vector>

#include "neurite/grid.hpp"
#include "neurite/model.hpp"
#include "neurite/params.hpp"

namespace neurite {

/// Lax-Friedrichs face flux with the dissipation coefficient fixed at 1/2:
/// F = <v f> - (1/2) [f], jump oriented as (f_R - f_L).
inline double lax_friedrichs_face_flux(double v_L, double v_R, double f_L, double f_R) {
    return 0.5 * (v_L * f_L + v_R * f_R) - 0.5 * (f_R - f_L);
}

/// Convective contribution to df/dt for both directions of one neurite,
/// including the 1/(hL) factor. Interior faces use the Lax-Friedrichs flux
/// with face velocities built from the arithmetic mean of the adjacent total
/// densities; the outermost faces carry the coupling boundary fluxes instead.
inline void convective_residual(const NeuriteField& field, double L, double dLdt,
                                double lambda_som, double lambda_j, int j,
                                const ModelFunctions& mf, const DimensionlessParams& p,
                                const Grid1D& grid, std::vector<double>& out_plus,
                                std::vector<double>& out_minus,
                                BoundaryFluxes* bf_out = nullptr) {
    const int n = field.n_cells();
    out_plus.resize(static_cast<size_t>(n));
    out_minus.resize(static_cast<size_t>(n));

    const double* fp = field.f_plus.data();
    const double* fm = field.f_minus.data();
    const BoundaryFluxes bf = boundary_fluxes(j, fp[0], fm[0], fp[n - 1], fm[n - 1],
                                              lambda_som, lambda_j, mf);
    if (bf_out) *bf_out = bf;

    const double inv_hL = 1.0 / (grid.h * L);
    const double drift_scale = p.kappa_v / p.rho_cap;
    // With no drift and a static length every face velocity vanishes
    // identically; the dissipation term must not survive in that case or a
    // transport-free run would acquire O(h) artificial diffusion.
    const bool transport_free = p.kappa_v == 0.0 && dLdt == 0.0;

    // Signed face fluxes. F_plus[-1/2] is the anterograde inflow from the
    // soma, F_minus[-1/2] = -outflow_left, and correspondingly at y = 1.
    double Fp_prev = bf.inflow_left;
    double Fm_prev = -bf.outflow_left;
    for (int k = 0; k < n; ++k) {
        double Fp_next, Fm_next;
        if (k == n - 1) {
            Fp_next = bf.outflow_right;
            Fm_next = -bf.inflow_right;
        } else if (transport_free) {
            Fp_next = 0.0;
            Fm_next = 0.0;
        } else {
            const double rho_face = 0.5 * (fp[k] + fm[k] + fp[k + 1] + fm[k + 1]);
            const double y = grid.face(k + 1);
            const double drift = p.kappa_v - drift_scale * rho_face;
            const double geo = dLdt * y;
            const double v_plus = drift - geo;
            const double v_minus = -drift - geo;
            Fp_next = lax_friedrichs_face_flux(v_plus, v_plus, fp[k], fp[k + 1]);
            Fm_next = lax_friedrichs_face_flux(v_minus, v_minus, fm[k], fm[k + 1]);
        }
        out_plus[static_cast<size_t>(k)] = inv_hL * (Fp_prev - Fp_next);
        out_minus[static_cast<size_t>(k)] = inv_hL * (Fm_prev - Fm_next);
        Fp_prev = Fp_next;
        Fm_prev = Fm_next;
    }
}

/// Direction switching plus the geometric dilution term of the moving frame:
/// kappa_lambda (f_-+ - f_+-) - (L'/L) f_+-.
inline void reaction_geometric_residual(const NeuriteField& field, double L, double dLdt,
                                        const DimensionlessParams& p,
                                        std::vector<double>& out_plus,
                                        std::vector<double>& out_minus) {
    const int n = field.n_cells();
    out_plus.resize(static_cast<size_t>(n));
    out_minus.resize(static_cast<size_t>(n));
    const double dilution = dLdt / L;
    const double lam = p.kappa_lambda;
    for (int k = 0; k < n; ++k) {
        const double fpk = field.f_plus[static_cast<size_t>(k)];
        const double fmk = field.f_minus[static_cast<size_t>(k)];
        out_plus[static_cast<size_t>(k)] = lam * (fmk - fpk) - dilution * fpk;
        out_minus[static_cast<size_t>(k)] = lam * (fpk - fmk) - dilution * fmk;
    }
}

}  // namespace neurite
