#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "neurite/scaling.hpp"

using namespace neurite;

TEST_CASE("cross-section packing estimate reproduces the reference density") {
    const MaxDensityResult r = max_density(130.0, 1000.0, 0.9, 7, 3.0);
    CHECK(r.n_max == 65);
    CHECK(r.raw == 455.0);
    CHECK(r.exact == Catch::Approx(455.0 / 3.0));
    CHECK(r.reported == 155.0);
}

TEST_CASE("one vesicle fits when it fills the cross section") {
    const MaxDensityResult r = max_density(500.0, 500.0, 1.0, 1, 1.0);
    CHECK(r.n_max == 1);
    CHECK(r.reported == 1.0);
}

TEST_CASE("doubling the neurite diameter quadruples the per-slice count") {
    const MaxDensityResult a = max_density(130.0, 1000.0, 1.0, 1, 1.0);
    const MaxDensityResult b = max_density(130.0, 2000.0, 1.0, 1, 1.0);
    CHECK(b.n_max >= 4 * a.n_max - 3);  // up to floor effects
    CHECK(b.n_max <= 4 * a.n_max + 3);
}

TEST_CASE("membrane consumption per micron of growth") {
    const double c = vesicles_per_micron_growth(130.0, 1000.0);
    CHECK(c == Catch::Approx(59.17).epsilon(1e-3));
    CHECK(vesicles_per_micron_growth(260.0, 1000.0) == Catch::Approx(c / 4.0));
    CHECK(vesicles_per_micron_growth(130.0, 2000.0) == Catch::Approx(2.0 * c));
}

TEST_CASE("reference scale set stores its fixed growth cost") {
    // the scale set pins 58.4; the geometric formula gives 59.2, and the
    // two are kept separate on purpose
    const PhysicalScales ps = PhysicalScales::reference();
    CHECK(ps.c_h == 58.4);
}

TEST_CASE("nondimensionalization of the reference scale set") {
    const DimensionlessParams p = nondimensionalize(PhysicalScales::reference());
    CHECK(p.kappa_v == Catch::Approx(2.0).epsilon(1e-14));
    CHECK(p.kappa_D == Catch::Approx(0.004).epsilon(1e-14));
    CHECK(p.kappa_lambda == Catch::Approx(100.0).epsilon(1e-14));
    CHECK(p.ell_min[0] == Catch::Approx(0.1).epsilon(1e-14));
    CHECK(p.lambda_min == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(p.rho_cap == 2.0);
    CHECK(p.lambda_som_cap == Catch::Approx(2.0).epsilon(1e-14));
    CHECK(p.lambda_cone_cap == Catch::Approx(2.0).epsilon(1e-14));
    // derived pool and growth scales
    CHECK(p.kappa_som == Catch::Approx(0.13).epsilon(1e-12));
    CHECK(p.kappa_cone == Catch::Approx(7.8).epsilon(1e-12));
    CHECK(p.kappa_gamma == Catch::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(p.kappa_h == Catch::Approx(100.0 / 50.0 * 0.01 * 58.4).epsilon(1e-12));
    CHECK(p.kappa_L == Catch::Approx(0.02).epsilon(1e-14));
    CHECK(p.kappa_alpha_plus[0] == Catch::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("experiment parameter sets override drift and switch off reactions") {
    const DimensionlessParams p = experiment_params(0.1);
    CHECK(p.kappa_v == 0.1);
    CHECK(p.kappa_lambda == 0.0);
    CHECK(p.kappa_D == Catch::Approx(0.004));
    // ledger weights stay consistent with the pool rate scales
    CHECK(p.mass_weight_som == Catch::Approx(1.0 / p.kappa_som));
    CHECK(p.mass_weight_cone == Catch::Approx(1.0 / p.kappa_cone));
    CHECK(p.mass_weight_len ==
          Catch::Approx(p.kappa_h / (p.kappa_cone * p.kappa_L)));
}

TEST_CASE("invalid scale sets are rejected") {
    PhysicalScales ps = PhysicalScales::reference();
    ps.t_typ = 0.0;
    CHECK_THROWS_AS(nondimensionalize(ps), std::invalid_argument);
    PhysicalScales ps2 = PhysicalScales::reference();
    ps2.f_typ = 10.0;  // breaks the half-filled convention
    CHECK_THROWS_AS(nondimensionalize(ps2), std::invalid_argument);
}
