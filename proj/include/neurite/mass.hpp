#pragma once

#include <vector>

#include "neurite/grid.hpp"
#include "neurite/model.hpp"
#include "neurite/params.hpp"

namespace neurite {

namespace detail {

inline double forward_sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

// Pairwise (tree) summation, used as an independent reduction-order oracle.
inline double pairwise_sum(const double* v, size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace detail

/// Discrete total mass of a state in the common ledger unit, including the
/// membrane-bound share accumulated by neurite growth.
inline double total_mass(const SimState& s, const Grid1D& grid, const DimensionlessParams& p) {
    double m = p.mass_weight_som * s.lambda_som;
    for (int j = 0; j < 2; ++j) {
        const double cell_mass = grid.h * s.lengths[j];
        double neurite = 0.0;
        for (int k = 0; k < s.fields[j].n_cells(); ++k) neurite += s.fields[j].rho(k);
        m += p.mass_unit_density * cell_mass * neurite;
        m += p.mass_weight_cone * s.lambda[j];
        m += p.mass_weight_len * s.lengths[j];
    }
    return m;
}

/// Same quantity with tree summation of the density blocks.
inline double total_mass_pairwise(const SimState& s, const Grid1D& grid,
                                  const DimensionlessParams& p) {
    double m = p.mass_weight_som * s.lambda_som;
    for (int j = 0; j < 2; ++j) {
        std::vector<double> rho(static_cast<size_t>(s.fields[j].n_cells()));
        for (int k = 0; k < s.fields[j].n_cells(); ++k)
            rho[static_cast<size_t>(k)] = s.fields[j].rho(k);
        m += p.mass_unit_density * grid.h * s.lengths[j] *
             detail::pairwise_sum(rho.data(), rho.size());
        m += p.mass_weight_cone * s.lambda[j];
        m += p.mass_weight_len * s.lengths[j];
    }
    return m;
}

}  // namespace neurite
