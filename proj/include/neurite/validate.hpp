#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "neurite/model.hpp"
#include "neurite/params.hpp"
#include "neurite/stepper.hpp"

namespace neurite {

/// Box-constraint summary of one run: densities nonnegative, total density
/// below the exclusion cap, lengths above the minimum.
struct BoxReport {
    double min_f = 0.0;
    double max_rho = 0.0;
    double min_length = 0.0;
    bool densities_ok = false;
    bool lengths_ok = false;
    std::optional<double> first_violation_time;

    bool ok() const { return densities_ok && lengths_ok; }
};

inline BoxReport box_constraint_monitor(const RunRecord& rec, const DimensionlessParams& p,
                                        double density_tol = 1e-10, double length_tol = 1e-12) {
    BoxReport r;
    r.min_f = rec.min_f;
    r.max_rho = rec.max_rho;
    r.min_length = rec.min_length;
    r.densities_ok = rec.min_f >= -density_tol && rec.max_rho <= p.rho_cap + density_tol;
    const double ell = std::min(p.ell_min[0], p.ell_min[1]);
    r.lengths_ok = rec.min_length >= ell - length_tol;
    r.first_violation_time = rec.first_box_violation;
    return r;
}

/// One structural-assumption warning, identified by the assumption label.
struct HypothesisWarning {
    std::string hypothesis;
    std::string message;
};

struct HypothesisReport {
    std::vector<HypothesisWarning> warnings;
    bool ok() const { return warnings.empty(); }
};

/// Samples the model functions and reports violations of the structural
/// assumptions they are expected to satisfy. Warnings do not stop a run;
/// some presets violate an assumption by design.
inline HypothesisReport hypothesis_diagnostics(const ModelFunctions& mf,
                                               const DimensionlessParams& p,
                                               int n_samples = 41) {
    HypothesisReport rep;
    auto warn = [&](const char* hyp, std::string msg) {
        rep.warnings.push_back({hyp, std::move(msg)});
    };
    const double tol = 1e-12;
    auto sample = [&](double lo, double hi, int i) {
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_samples - 1);
    };

    for (int j = 0; j < 2; ++j) {
        const std::string nj = " (neurite " + std::to_string(j + 1) + ")";

        // (H2): g vanishes at full exclusion, and carriers moving toward a
        // boundary do not enter through it: g_+(0, s) = g_-(s, 0) = 0.
        bool full_cap_ok = true, oneside_plus_ok = true, oneside_minus_ok = true;
        for (int i = 0; i < n_samples; ++i) {
            const double s = sample(0.0, p.rho_cap, i);
            if (std::abs(mf.g_plus[j](s, p.rho_cap - s)) > tol ||
                std::abs(mf.g_minus[j](s, p.rho_cap - s)) > tol)
                full_cap_ok = false;
            if (std::abs(mf.g_plus[j](0.0, s)) > tol) oneside_plus_ok = false;
            if (std::abs(mf.g_minus[j](s, 0.0)) > tol) oneside_minus_ok = false;
        }
        if (!full_cap_ok) warn("H2", "g does not vanish at full exclusion" + nj);
        if (!oneside_plus_ok) warn("H2", "g_+(0, s) != 0 for some s" + nj);
        if (!oneside_minus_ok) warn("H2", "g_-(s, 0) != 0 for some s" + nj);

        // (H3): growth law finite and nondecreasing in the length argument.
        bool h_finite = true, h_monotone = true;
        for (int i = 0; i < n_samples; ++i) {
            const double lam = sample(0.0, p.lambda_cone_cap, i);
            double prev = -std::numeric_limits<double>::infinity();
            for (int k = 0; k < n_samples; ++k) {
                const double L = sample(p.ell_min[j], p.ell_min[j] + 4.0, k);
                const double v = mf.h[j](lam, L);
                if (!std::isfinite(v)) h_finite = false;
                if (v < prev - tol) h_monotone = false;
                prev = v;
            }
        }
        if (!h_finite) warn("H3", "growth law h is not finite on the sampled range" + nj);
        if (!h_monotone) warn("H3", "growth law h decreases in the length argument" + nj);

        // (H4): influx rates nondecreasing in the pool amount, alpha_-(0) = 0.
        auto check_increasing = [&](const ModelFunctions::PoolFn& f, double cap) {
            double prev = f(0.0);
            for (int i = 1; i < n_samples; ++i) {
                const double v = f(sample(0.0, cap, i));
                if (v < prev - tol) return false;
                prev = v;
            }
            return true;
        };
        if (!check_increasing(mf.alpha_plus[j], p.lambda_som_cap))
            warn("H4", "alpha_+ is not nondecreasing" + nj);
        if (!check_increasing(mf.alpha_minus[j], p.lambda_cone_cap))
            warn("H4", "alpha_- is not nondecreasing" + nj);
        if (std::abs(mf.alpha_minus[j](0.0)) > tol) warn("H4", "alpha_-(0) != 0" + nj);

        // (H5): outflux rates nonnegative with a zero of beta_+ on the pool
        // range, so that a full growth cone stops accepting vesicles.
        bool beta_nonneg = true, beta_plus_zero = false;
        for (int i = 0; i < n_samples; ++i) {
            const double s_som = sample(0.0, p.lambda_som_cap, i);
            const double s_cone = sample(0.0, p.lambda_cone_cap, i);
            if (mf.beta_minus[j](s_som) < -tol || mf.beta_plus[j](s_cone) < -tol)
                beta_nonneg = false;
            if (std::abs(mf.beta_plus[j](s_cone)) <= 1e-9) beta_plus_zero = true;
        }
        if (std::abs(mf.beta_plus[j](p.lambda_cone_cap)) <= 1e-9) beta_plus_zero = true;
        if (!beta_nonneg) warn("H5", "beta takes negative values" + nj);
        if (!beta_plus_zero) warn("H5", "beta_+ has no zero on the pool range" + nj);
    }

    // (H7): production switches off eventually.
    if (mf.gamma) {
        const double late = std::abs(mf.gamma(1e6));
        if (late > 1e-9) warn("H7", "production gamma does not vanish for large times");
    }
    return rep;
}

/// Conservative projection onto a grid with half as many cells: averaging
/// adjacent pairs preserves the cell-average integral exactly.
inline std::vector<double> project_to_coarse(const std::vector<double>& fine) {
    if (fine.size() % 2 != 0)
        throw std::invalid_argument("project_to_coarse: need an even number of cells");
    std::vector<double> coarse(fine.size() / 2);
    for (size_t k = 0; k < coarse.size(); ++k)
        coarse[k] = 0.5 * (fine[2 * k] + fine[2 * k + 1]);
    return coarse;
}

/// Least-squares slope of log(err) against log(scale); expects matching
/// positive sequences, e.g. mass residuals against step sizes.
inline double refinement_slope(const std::vector<double>& scales,
                               const std::vector<double>& errors) {
    if (scales.size() != errors.size() || scales.size() < 2)
        throw std::invalid_argument("refinement_slope: need matching sequences, length >= 2");
    const size_t n = scales.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        if (!(scales[i] > 0.0) || !(errors[i] > 0.0))
            throw std::invalid_argument("refinement_slope: entries must be positive");
        const double x = std::log(scales[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

/// Observed orders log2(e_i / e_{i+1}) of an error sequence under halving.
inline std::vector<double> observed_orders(const std::vector<double>& errors) {
    std::vector<double> orders;
    for (size_t i = 0; i + 1 < errors.size(); ++i)
        orders.push_back(std::log2(errors[i] / errors[i + 1]));
    return orders;
}

/// First local maximum followed by a local minimum in a sampled signal,
/// both required to stand out by at least `prominence` against the
/// neighboring extremum.
struct OscillationResult {
    bool found = false;
    double t_max = 0.0, v_max = 0.0;
    double t_min = 0.0, v_min = 0.0;
};

inline OscillationResult detect_oscillation(const std::vector<double>& times,
                                            const std::vector<double>& values,
                                            double prominence) {
    OscillationResult r;
    if (times.size() != values.size() || values.size() < 3) return r;
    size_t i_max = 0;
    bool have_max = false;
    for (size_t i = 1; i + 1 < values.size(); ++i) {
        if (!have_max) {
            if (values[i] >= values[i - 1] && values[i] >= values[i + 1] &&
                values[i] - values[0] >= prominence) {
                i_max = i;
                have_max = true;
            }
        } else if (values[i] <= values[i - 1] && values[i] <= values[i + 1] &&
                   values[i_max] - values[i] >= prominence) {
            r.found = true;
            r.t_max = times[i_max];
            r.v_max = values[i_max];
            r.t_min = times[i];
            r.v_min = values[i];
            return r;
        }
    }
    return r;
}

}  // namespace neurite
