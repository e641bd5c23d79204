#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "neurite/scaling.hpp"
#include "neurite/stationary.hpp"
#include "neurite/stepper.hpp"
#include "neurite/validate.hpp"

using namespace neurite;

TEST_CASE("zero-dynamics run reports no box violation") {
    DimensionlessParams p;
    p.kappa_v = 0.0;
    p.kappa_D = 0.0;
    p.derive_mass_weights();
    const Grid1D g = Grid1D::uniform(10);
    StepperConfig cfg;
    cfg.tau = 1e-3;
    cfg.t_end = 0.1;
    SimState s;
    for (int j = 0; j < 2; ++j) s.fields[j] = NeuriteField::constant(10, 0.2, 0.3);
    const RunRecord rec = run(s, cfg, ModelFunctions::trivial(), p, g);
    const BoxReport box = box_constraint_monitor(rec, p);
    CHECK(box.ok());
    CHECK_FALSE(box.first_violation_time.has_value());
    CHECK(box.min_f == Catch::Approx(0.2));
    CHECK(box.max_rho == Catch::Approx(0.5));
}

TEST_CASE("violating initial data is flagged at time zero") {
    DimensionlessParams p;
    p.rho_cap = 2.0;
    p.derive_mass_weights();
    const Grid1D g = Grid1D::uniform(10);
    StepperConfig cfg;
    cfg.tau = 1e-3;
    cfg.t_end = 0.0;
    SimState s;
    for (int j = 0; j < 2; ++j)
        s.fields[j] = NeuriteField::constant(10, 1.5, 1.5);  // rho = 1.5 * rho_cap
    const RunRecord rec = run(s, cfg, ModelFunctions::trivial(), p, g);
    const BoxReport box = box_constraint_monitor(rec, p);
    CHECK_FALSE(box.ok());
    REQUIRE(box.first_violation_time.has_value());
    CHECK(*box.first_violation_time == 0.0);
}

TEST_CASE("linear-rate preset satisfies the structural assumptions") {
    const auto st = solve_constant_state({0.25, 0.25}, {50.0, 50.0}, 3000.0, 6000.0, 100.0, 1.0);
    const ModelFunctions mf = stationary_model_functions(st);
    const DimensionlessParams p = stationary_params(st, 0.1);
    const HypothesisReport rep = hypothesis_diagnostics(mf, p);
    for (const auto& w : rep.warnings) {
        INFO(w.hypothesis << ": " << w.message);
        CHECK((w.hypothesis != "H2" && w.hypothesis != "H4" && w.hypothesis != "H5"));
    }
}

TEST_CASE("experiment-1 preset warns about its nonvanishing g at the empty trace") {
    const DimensionlessParams p = experiment_params(0.1);
    const ModelFunctions mf = experiment1_functions(p);
    const HypothesisReport rep = hypothesis_diagnostics(mf, p);
    const bool h2_warned = std::any_of(rep.warnings.begin(), rep.warnings.end(),
                                       [](const HypothesisWarning& w) { return w.hypothesis == "H2"; });
    CHECK(h2_warned);
    // beta_+ vanishes at the cap, so no H5 warning
    const bool h5_warned = std::any_of(rep.warnings.begin(), rep.warnings.end(),
                                       [](const HypothesisWarning& w) { return w.hypothesis == "H5"; });
    CHECK_FALSE(h5_warned);
}

TEST_CASE("conservative projection preserves the integral") {
    std::vector<double> fine{1.0, 3.0, 2.0, 2.0, 0.0, 4.0};
    const std::vector<double> coarse = project_to_coarse(fine);
    REQUIRE(coarse.size() == 3);
    CHECK(coarse[0] == 2.0);
    CHECK(coarse[1] == 2.0);
    CHECK(coarse[2] == 2.0);
    double fine_sum = 0.0, coarse_sum = 0.0;
    for (double v : fine) fine_sum += v / 6.0;
    for (double v : coarse) coarse_sum += v / 3.0;
    CHECK(fine_sum == Catch::Approx(coarse_sum));
    CHECK_THROWS_AS(project_to_coarse({1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("refinement slope recovers a synthetic order") {
    std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
    std::vector<double> e;
    for (double x : h) e.push_back(3.0 * std::pow(x, 1.5));
    CHECK(refinement_slope(h, e) == Catch::Approx(1.5).epsilon(1e-12));
    CHECK_THROWS_AS(refinement_slope({0.1}, {1.0}), std::invalid_argument);
}

TEST_CASE("observed orders under halving") {
    const std::vector<double> e{1.0, 0.25, 0.0625};
    const auto orders = observed_orders(e);
    REQUIRE(orders.size() == 2);
    CHECK(orders[0] == Catch::Approx(2.0));
    CHECK(orders[1] == Catch::Approx(2.0));
}

TEST_CASE("oscillation detector finds a damped cycle") {
    std::vector<double> t, v;
    for (int i = 0; i <= 200; ++i) {
        const double x = 0.05 * i;
        t.push_back(x);
        v.push_back(1.0 + 0.5 * std::exp(-0.2 * x) * std::sin(x));
    }
    const OscillationResult r = detect_oscillation(t, v, 1e-3);
    REQUIRE(r.found);
    CHECK(r.t_max < r.t_min);
    CHECK(r.v_max > r.v_min);

    // a monotone signal has no cycle
    std::vector<double> mono(t.size());
    for (size_t i = 0; i < t.size(); ++i) mono[i] = t[i];
    CHECK_FALSE(detect_oscillation(t, mono, 1e-3).found);
}
