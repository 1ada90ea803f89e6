#include "doctest.h"

#include "tanhwave/energy.hpp"
#include "tanhwave/random_fields.hpp"
#include "tanhwave/solver.hpp"

#include <cmath>

using namespace tanhwave;

TEST_CASE("energy levels: zero field, quadratic part, rejection") {
    GridPtr g = make_grid(256, 2.0 * M_PI * 8.0);
    EnergyReport zero = energy_E(zero_field(g), 3);
    for (double e : zero.levels)
        CHECK(e == 0.0);
    CHECK_THROWS(energy_E(zero_field(g), 1));
}

TEST_CASE("two-mode field against the hand convolution oracle") {
    GridPtr g = make_grid(512, 2.0 * M_PI * 8.0);
    const double k1 = g->wavenumber_spacing() * 8.0; // k1 = 1
    const double a = 0.31, b = 0.17;
    Field u = zero_field(g);
    for (int i = 0; i < g->num_points(); ++i)
        u.v[i] = a * std::cos(k1 * g->x(i)) + b * std::cos(2.0 * k1 * g->x(i));

    EnergyReport rep = energy_E(u, 2);
    const double L = g->length();
    const double t1 = std::tanh(k1), t2 = std::tanh(2.0 * k1);

    // E_0 = 1/2 ||u||^2 = L (a^2 + b^2)/4 and the quadratic parts
    CHECK(rep.levels[0] == doctest::Approx(0.25 * L * (a * a + b * b)).epsilon(1e-12));
    const double q2 = 0.5 * (a * a * std::pow(k1, 4) + b * b * std::pow(2.0 * k1, 4)) * L / 2.0;
    CHECK(rep.sobolev_half_squares[2] == doctest::Approx(q2).epsilon(1e-12));

    // hand-computed closing triads for the l = 2 cubic terms:
    // E_2 cubic = (2 + 1/2) int G2 G2 G1 dx = -3.75 L k1^5 a^2 b / (t1^2 t2)
    const double cubic_oracle = -3.75 * L * std::pow(k1, 5) * a * a * b / (t1 * t1 * t2);
    CHECK(rep.cubic_remainder[2] == doctest::Approx(cubic_oracle).epsilon(1e-10));

    // single mode: no closing triads, cubic terms vanish
    Field mono = zero_field(g);
    for (int i = 0; i < g->num_points(); ++i)
        mono.v[i] = a * std::cos(k1 * g->x(i));
    EnergyReport mrep = energy_E(mono, 3);
    for (int l = 1; l <= 3; ++l)
        CHECK(std::fabs(mrep.cubic_remainder[l]) < 1e-12);
}

TEST_CASE("cubic remainder scales with the third power of amplitude") {
    GridPtr g = make_grid(256, 128.0);
    Field base = random_with_norm(g, 21, 4.0 * g->wavenumber_spacing(), 2.0, 2.0, 1.0);
    EnergyReport r1 = energy_E(base, 4);
    EnergyReport r2 = energy_E(scaled(base, 0.5), 4);
    for (int l = 1; l <= 4; ++l) {
        if (std::fabs(r1.cubic_remainder[l]) < 1e-14)
            continue;
        CHECK(r1.cubic_remainder[l] / r2.cubic_remainder[l] ==
              doctest::Approx(8.0).epsilon(1e-10));
    }
    // total = sum of levels
    double total = 0.0;
    for (double e : r1.levels)
        total += e;
    CHECK(r1.total == doctest::Approx(total).epsilon(1e-14));
}

TEST_CASE("E_0 is conserved along trajectories") {
    GridPtr g = make_grid(256, 128.0);
    Field u0 = random_with_norm(g, 8, 4.0 * g->wavenumber_spacing(), 2.0, 2.0, 0.1);
    const double e0 = energy_E(u0, 2).levels[0];
    SolverConfig sc = make_solver_config(g, 0.05, 50.0, 50);
    double drift = 0.0;
    run(u0, sc, [&](const SimulationState& st) -> std::vector<double> {
        drift = std::max(drift, std::fabs(energy_E(st.u, 2).levels[0] / e0 - 1.0));
        return {};
    });
    CHECK(drift < 1e-9);
}

TEST_CASE("commutator ratio against the one-mode hand computation") {
    GridPtr g = make_grid(512, 2.0 * M_PI * 8.0);
    const double k1 = g->wavenumber_spacing() * 8.0;
    const double a = 0.7;
    Field u = zero_field(g);
    for (int i = 0; i < g->num_points(); ++i)
        u.v[i] = a * std::cos(k1 * g->x(i));

    const int j = 2;
    const double q = 1.0;
    const double got = commutator_ratio(u, j, q);

    // by hand: with the DC mode of u^2 projected out,
    // comm = (k1 a^2 / (2 t1)) + (k1 a^2/2)(1/t1 - 1/t2) cos(2 k1 x)
    const double L = g->length();
    const double t1 = std::tanh(k1), t2 = std::tanh(2.0 * k1);
    const double c0 = k1 * a * a / (2.0 * t1);
    const double c2 = 0.5 * k1 * a * a * (1.0 / t1 - 1.0 / t2);
    const double comm_hj =
        std::sqrt(L * (c0 * c0 + 0.5 * c2 * c2 * std::pow(1.0 + 4.0 * k1 * k1, j)));
    const double u_norm = [&](double s) {
        return std::sqrt(L * 0.5 * a * a * std::pow(1.0 + k1 * k1, s));
    }(1.0 + q);
    const double u_hj = std::sqrt(L * 0.5 * a * a * std::pow(1.0 + k1 * k1, j));
    CHECK(got == doctest::Approx(comm_hj / (u_norm * u_hj)).epsilon(1e-10));

    // quadratic scaling on both sides: the ratio is amplitude invariant
    CHECK(commutator_ratio(scaled(u, 5.0), j, q) == doctest::Approx(got).epsilon(1e-12));

    CHECK_THROWS(commutator_ratio(zero_field(g), 2, 1.0));
}
