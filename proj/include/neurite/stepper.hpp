#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "neurite/fv.hpp"
#include "neurite/grid.hpp"
#include "neurite/mass.hpp"
#include "neurite/model.hpp"
#include "neurite/params.hpp"

namespace neurite {

struct StepperConfig {
    double tau = 1e-4;
    double t_end = 1000.0;
    double stationarity_tol = 1e-9;
    long long max_steps = -1;  // <0: derived from t_end/tau
    double newton_tol = 1e-12;
    int newton_max_iter = 50;

    void validate() const {
        if (!(tau > 0.0)) throw std::invalid_argument("StepperConfig: tau must be > 0");
        if (!(stationarity_tol > 0.0))
            throw std::invalid_argument("StepperConfig: stationarity_tol must be > 0");
        if (!(t_end >= 0.0)) throw std::invalid_argument("StepperConfig: t_end must be >= 0");
    }

    long long planned_steps() const {
        const long long by_time = static_cast<long long>(std::llround(t_end / tau));
        return max_steps >= 0 ? std::min(max_steps, by_time) : by_time;
    }
};

enum class Termination { reached_t_end, stationary, max_steps };

inline const char* to_string(Termination t) {
    switch (t) {
        case Termination::reached_t_end: return "reached_t_end";
        case Termination::stationary: return "stationary";
        case Termination::max_steps: return "max_steps";
    }
    return "?";
}

struct Snapshot {
    double time = 0.0;
    std::array<double, 2> lengths{};
    std::array<std::vector<double>, 2> f_plus, f_minus;
};

struct SamplingConfig {
    long long stride = 1000;
    std::vector<double> snapshot_times;
};

/// Time series and run-wide diagnostics of one simulation.
struct RunRecord {
    std::vector<double> times;
    std::array<std::vector<double>, 2> lengths, lambda;
    std::vector<double> lambda_som;
    std::vector<double> mass;
    std::vector<double> mass_residual;
    std::vector<Snapshot> snapshots;

    Termination termination = Termination::reached_t_end;
    long long steps_taken = 0;
    double final_time = 0.0;
    SimState final_state;

    // run-wide extrema, tracked at every step
    double min_f = std::numeric_limits<double>::infinity();
    double max_rho = -std::numeric_limits<double>::infinity();
    double min_length = std::numeric_limits<double>::infinity();
    std::optional<double> first_box_violation;
    long long negative_flux_events = 0;

    double initial_mass = 0.0;
    double produced = 0.0;  // cumulative production in ledger units
};

/// Solves the scalar implicit equation x = c + tau*G(x).
/// Affine G is resolved in closed form through the secant; otherwise a
/// damped Newton iteration with fixed-point fallback takes over.
template <class F>
double solve_scalar_implicit(F&& G, double c, double tau, double x0, double tol, int max_iter,
                             const char* what) {
    auto phi = [&](double x) { return x - c - tau * G(x); };
    const double scale = std::max(1.0, std::abs(x0));
    const double d = 1e-6 * scale;

    const double g0 = G(x0);
    const double slope = (G(x0 + d) - g0) / d;
    const double denom = 1.0 - tau * slope;
    double x = std::abs(denom) > 1e-14 ? (c + tau * (g0 - slope * x0)) / denom : x0;
    if (!std::isfinite(x)) x = x0;
    if (std::abs(phi(x)) <= tol * std::max(1.0, std::abs(x))) return x;

    for (int it = 0; it < max_iter; ++it) {
        const double fx = phi(x);
        if (std::abs(fx) <= tol * std::max(1.0, std::abs(x))) return x;
        const double dd = 1e-7 * std::max(1.0, std::abs(x));
        const double dphi = (phi(x + dd) - phi(x - dd)) / (2.0 * dd);
        if (std::abs(dphi) < 1e-12 || !std::isfinite(dphi)) {
            x = c + tau * G(x);  // fixed point fallback
            continue;
        }
        double step = fx / dphi;
        double xn = x - step;
        int halvings = 0;
        while ((!std::isfinite(phi(xn)) || std::abs(phi(xn)) > std::abs(fx)) && halvings < 30) {
            step *= 0.5;
            xn = x - step;
            ++halvings;
        }
        x = xn;
    }
    if (std::abs(phi(x)) <= 1e3 * tol * std::max(1.0, std::abs(x))) return x;
    throw std::runtime_error(std::string("implicit scalar solve failed to converge: ") + what);
}

/// The implicit-explicit stepper: diffusion implicit, convection and
/// reaction explicit, followed by backward-Euler pool and length updates.
/// One instance owns the scratch buffers for a fixed grid.
class Stepper {
  public:
    Stepper(const ModelFunctions& mf, const DimensionlessParams& p, const Grid1D& grid,
            const StepperConfig& cfg)
        : mf_(mf), p_(p), grid_(grid), cfg_(cfg), A_(assemble_diffusion(grid)) {
        cfg_.validate();
        p_.validate();
        const size_t n = static_cast<size_t>(grid.n_cells);
        conv_p_.resize(n);
        conv_m_.resize(n);
        reac_p_.resize(n);
        reac_m_.resize(n);
        rhs_.resize(n);
        diag_.resize(n);
        sub_.resize(n);
        super_.resize(n);
        scratch_.resize(n);
    }

    const Grid1D& grid() const { return grid_; }
    const DimensionlessParams& params() const { return p_; }
    long long negative_flux_events() const { return negative_flux_events_; }

    /// One IMEX density step for both neurites. Returns the largest 2-norm
    /// of the per-vector updates (the stationarity measure).
    double step_densities(SimState& s, const std::array<double, 2>& dLdt) {
        double max_diff = 0.0;
        for (int j = 0; j < 2; ++j) {
            const double L = s.lengths[j];
            BoundaryFluxes bf;
            convective_residual(s.fields[j], L, dLdt[j], s.lambda_som, s.lambda[j], j, mf_, p_,
                                grid_, conv_p_, conv_m_, &bf);
            if (!bf.nonnegative()) ++negative_flux_events_;
            reaction_geometric_residual(s.fields[j], L, dLdt[j], p_, reac_p_, reac_m_);

            const double c = cfg_.tau * p_.kappa_D / (L * L * grid_.h);
            const size_t n = static_cast<size_t>(grid_.n_cells);
            for (size_t k = 0; k < n; ++k) {
                sub_[k] = c * A_.sub[k];
                diag_[k] = 1.0 + c * A_.diag[k];
                super_[k] = c * A_.super[k];
            }

            max_diff = std::max(max_diff,
                                solve_direction(s.fields[j].f_plus, conv_p_, reac_p_, c));
            max_diff = std::max(max_diff,
                                solve_direction(s.fields[j].f_minus, conv_m_, reac_m_, c));
        }
        return max_diff;
    }

    /// Backward-Euler pool update using the boundary traces of the freshly
    /// updated densities. The growth-consumption term is lagged, exactly as
    /// in the discrete scheme.
    void step_pools(SimState& s, double t_n) {
        const int last = grid_.n_cells - 1;
        const std::array<std::array<double, 4>, 2> tr = {
            std::array<double, 4>{s.fields[0].f_plus.front(), s.fields[0].f_minus.front(),
                                  s.fields[0].f_plus[static_cast<size_t>(last)],
                                  s.fields[0].f_minus[static_cast<size_t>(last)]},
            std::array<double, 4>{s.fields[1].f_plus.front(), s.fields[1].f_minus.front(),
                                  s.fields[1].f_plus[static_cast<size_t>(last)],
                                  s.fields[1].f_minus[static_cast<size_t>(last)]}};

        const double tau = cfg_.tau;
        auto soma_rate = [&](double lam) {
            double r = 0.0;
            for (int j = 0; j < 2; ++j)
                r += mf_.beta_minus[j](lam) * tr[static_cast<size_t>(j)][1] -
                     mf_.alpha_plus[j](lam) *
                         mf_.g_plus[j](tr[static_cast<size_t>(j)][0], tr[static_cast<size_t>(j)][1]);
            return p_.kappa_som * r;
        };
        const double c_som = s.lambda_som + tau * p_.kappa_gamma * mf_.gamma(t_n);
        const double lam_som =
            solve_scalar_implicit(soma_rate, c_som, tau, s.lambda_som, cfg_.newton_tol,
                                  cfg_.newton_max_iter, "soma pool");

        std::array<double, 2> lam_cone{};
        for (int j = 0; j < 2; ++j) {
            const auto& t4 = tr[static_cast<size_t>(j)];
            auto cone_rate = [&, j](double lam) {
                return p_.kappa_cone * (mf_.beta_plus[j](lam) * t4[2] -
                                        mf_.alpha_minus[j](lam) * mf_.g_minus[j](t4[2], t4[3]));
            };
            const double c_cone =
                s.lambda[j] - tau * p_.kappa_h * mf_.h[j](s.lambda[j], s.lengths[j]);
            lam_cone[j] = solve_scalar_implicit(cone_rate, c_cone, tau, s.lambda[j],
                                                cfg_.newton_tol, cfg_.newton_max_iter,
                                                "growth cone pool");
        }
        s.lambda_som = lam_som;
        s.lambda = lam_cone;
    }

    /// Implicit length update L = L^n + tau kappa_L h(Lambda^{n+1}, L);
    /// dLdt receives the backward difference quotient for the next step.
    void step_length(SimState& s, std::array<double, 2>& dLdt) {
        for (int j = 0; j < 2; ++j) {
            auto rate = [&, j](double L) { return p_.kappa_L * mf_.h[j](s.lambda[j], L); };
            const double L_new =
                solve_scalar_implicit(rate, s.lengths[j], cfg_.tau, s.lengths[j],
                                      cfg_.newton_tol, cfg_.newton_max_iter, "length");
            dLdt[j] = (L_new - s.lengths[j]) / cfg_.tau;
            s.lengths[j] = L_new;
        }
    }

    RunRecord run(const SimState& initial, const SamplingConfig& sampling = {}) {
        SimState s = initial;
        RunRecord rec;
        rec.initial_mass = total_mass(s, grid_, p_);

        std::vector<long long> snap_steps;
        for (double t : sampling.snapshot_times)
            snap_steps.push_back(static_cast<long long>(std::llround(t / cfg_.tau)));
        std::sort(snap_steps.begin(), snap_steps.end());
        size_t next_snap = 0;

        std::array<double, 2> dLdt{};
        for (int j = 0; j < 2; ++j) dLdt[j] = length_rhs(j, s.lambda[j], s.lengths[j], mf_, p_);

        track_extrema(rec, s);
        record_sample(rec, s);
        while (next_snap < snap_steps.size() && snap_steps[next_snap] == 0) {
            record_snapshot(rec, s);
            ++next_snap;
        }

        const long long n_steps = cfg_.planned_steps();
        const long long by_time = static_cast<long long>(std::llround(cfg_.t_end / cfg_.tau));
        rec.termination =
            n_steps < by_time ? Termination::max_steps : Termination::reached_t_end;

        for (long long n = 0; n < n_steps; ++n) {
            const double t_n = static_cast<double>(n) * cfg_.tau;
            double diff;
            try {
                diff = step_densities(s, dLdt);
                step_pools(s, t_n);
                step_length(s, dLdt);
            } catch (const std::runtime_error& e) {
                throw std::runtime_error(std::string(e.what()) + " (step " + std::to_string(n) +
                                         ", t = " + std::to_string(t_n) + ")");
            }
            rec.produced += cfg_.tau * p_.mass_weight_som * p_.kappa_gamma * mf_.gamma(t_n);
            s.time = static_cast<double>(n + 1) * cfg_.tau;
            rec.steps_taken = n + 1;

            track_extrema(rec, s);

            const bool stationary = diff <= cfg_.stationarity_tol;
            const bool last = stationary || n + 1 == n_steps;
            if (last || (sampling.stride > 0 && (n + 1) % sampling.stride == 0))
                record_sample(rec, s);
            while (next_snap < snap_steps.size() &&
                   (snap_steps[next_snap] == n + 1 || (last && snap_steps[next_snap] > n + 1))) {
                record_snapshot(rec, s);
                ++next_snap;
            }
            if (stationary) {
                rec.termination = Termination::stationary;
                break;
            }
        }
        rec.final_time = s.time;
        rec.final_state = s;
        rec.negative_flux_events = negative_flux_events_;
        return rec;
    }

  private:
    double solve_direction(std::vector<double>& f, const std::vector<double>& conv,
                           const std::vector<double>& reac, double c) {
        const size_t n = f.size();
        for (size_t k = 0; k < n; ++k)
            rhs_[k] = std::fma(cfg_.tau, conv[k] + reac[k], f[k]);
        explicit_stage_ = rhs_;
        thomas_solve(sub_, diag_, super_, rhs_, scratch_);
        // Rewrite the implicit update in flux form, using the face differences
        // of the solver output. This coincides with the solver output up to
        // its own residual, but makes the diffusive exchange telescope exactly
        // in floating point, so mass drift stays a zero-mean rounding walk
        // instead of inheriting the elimination sweep's bias.
        const double c_face = c / grid_.h;
        double ss = 0.0;
        double G_prev = 0.0;
        for (size_t k = 0; k < n; ++k) {
            const double G_next = k + 1 < n ? rhs_[k + 1] - rhs_[k] : 0.0;
            const double fk = std::fma(c_face, G_next - G_prev, explicit_stage_[k]);
            G_prev = G_next;
            const double d = fk - f[k];
            ss += d * d;
            f[k] = fk;
        }
        return std::sqrt(ss);
    }

    void track_extrema(RunRecord& rec, const SimState& s) {
        double mn = rec.min_f, mx = rec.max_rho;
        for (int j = 0; j < 2; ++j) {
            const auto& fp = s.fields[j].f_plus;
            const auto& fm = s.fields[j].f_minus;
            for (size_t k = 0; k < fp.size(); ++k) {
                mn = std::min(mn, std::min(fp[k], fm[k]));
                mx = std::max(mx, fp[k] + fm[k]);
            }
            rec.min_length = std::min(rec.min_length, s.lengths[j]);
        }
        rec.min_f = mn;
        rec.max_rho = mx;
        if (!rec.first_box_violation &&
            (mn < -kBoxTol || mx > p_.rho_cap + kBoxTol))
            rec.first_box_violation = s.time;
    }

    void record_sample(RunRecord& rec, const SimState& s) {
        rec.times.push_back(s.time);
        for (int j = 0; j < 2; ++j) {
            rec.lengths[j].push_back(s.lengths[j]);
            rec.lambda[j].push_back(s.lambda[j]);
        }
        rec.lambda_som.push_back(s.lambda_som);
        const double m = total_mass(s, grid_, p_);
        rec.mass.push_back(m);
        rec.mass_residual.push_back(std::abs(m - rec.initial_mass - rec.produced));
    }

    void record_snapshot(RunRecord& rec, const SimState& s) {
        Snapshot snap;
        snap.time = s.time;
        snap.lengths = s.lengths;
        for (int j = 0; j < 2; ++j) {
            snap.f_plus[j] = s.fields[j].f_plus;
            snap.f_minus[j] = s.fields[j].f_minus;
        }
        rec.snapshots.push_back(std::move(snap));
    }

    static constexpr double kBoxTol = 1e-10;

    ModelFunctions mf_;
    DimensionlessParams p_;
    Grid1D grid_;
    StepperConfig cfg_;
    TridiagonalOperator A_;
    long long negative_flux_events_ = 0;

    std::vector<double> conv_p_, conv_m_, reac_p_, reac_m_;
    std::vector<double> rhs_, diag_, sub_, super_, scratch_, explicit_stage_;
};

inline RunRecord run(const SimState& initial, const StepperConfig& cfg, const ModelFunctions& mf,
                     const DimensionlessParams& p, const Grid1D& grid,
                     const SamplingConfig& sampling = {}) {
    Stepper st(mf, p, grid, cfg);
    return st.run(initial, sampling);
}

}  // namespace neurite
