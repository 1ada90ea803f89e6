#include "doctest.h"

#include "tanhwave/ansatz.hpp"
#include "tanhwave/experiments.hpp"
#include "tanhwave/multiplier.hpp"

#include <cmath>

using namespace tanhwave;

TEST_CASE("envelope-equation coefficients at k0 = 1") {
    auto [nu1, nu2] = nls_coefficients(1.0);
    // frozen 40-digit evaluations of the closed forms
    CHECK(nu1 == doctest::Approx(-0.31985000422461225).epsilon(1e-13));
    CHECK(nu2 == doctest::Approx(-0.06433287939603058).epsilon(1e-13));

    // nu1 = (1/2) tanh''(k0) by central differences
    const double h = 1e-5;
    const double tanh_dd =
        (std::tanh(1.0 + h) - 2.0 * std::tanh(1.0) + std::tanh(1.0 - h)) / (h * h);
    CHECK(nu1 == doctest::Approx(0.5 * tanh_dd).epsilon(1e-6));

    // second route: assemble nu2 from the corrector couplings
    const double om = std::tanh(1.0), cg = 1.0 - om * om;
    const double nu2_route2 = 1.0 / (std::tanh(2.0) - 2.0 * om) + 1.0 / (1.0 - cg);
    CHECK(nu2 == doctest::Approx(nu2_route2).epsilon(1e-13));

    // sech^2 decay of nu1
    CHECK(std::fabs(nls_coefficients(20.0).nu1) < 1e-15);
    CHECK_THROWS(nls_coefficients(-1.0));
}

TEST_CASE("carrier parameter bundle invariants") {
    CarrierParams p = make_carrier(1.0);
    CHECK(p.omega0 == doctest::Approx(std::tanh(1.0)).epsilon(1e-14));
    CHECK(p.cg == doctest::Approx(1.0 - std::tanh(1.0) * std::tanh(1.0)).epsilon(1e-14));
    CHECK(p.delta == doctest::Approx(0.9 / 20.0).epsilon(1e-14));
    CHECK(nonresonance_margin(p) > 0.0);
}

TEST_CASE("quadratic correctors solve their defining equations") {
    CarrierParams p = make_carrier(1.0);
    std::vector<cplx> a1{cplx(1.0, 0.0), cplx(0.3, -0.4), cplx(0.0, 0.0)};

    auto a2 = corrector_a2(a1, p);
    auto a0 = corrector_a0(a1, p);
    CHECK(std::abs(a2[2]) == 0.0);
    CHECK(std::abs(a0[2]) == 0.0);

    // i(2 omega0 - tanh 2k0) A2 = i k0 A1^2 pointwise (the eps^2 E^2 row)
    const cplx i(0.0, 1.0);
    for (size_t n = 0; n < a1.size(); ++n) {
        const cplx lhs = i * (2.0 * p.omega0 - std::tanh(2.0 * p.k0)) * a2[n];
        const cplx rhs = i * p.k0 * a1[n] * a1[n];
        CHECK(std::abs(lhs - rhs) < 1e-14);
    }
    // (cg - 1) A0 = |A1|^2 (the eps^3 E^0 row, integrated with zero constant)
    for (size_t n = 0; n < a1.size(); ++n)
        CHECK(std::abs((p.cg - 1.0) * a0[n] - cplx(std::norm(a1[n]), 0.0)) < 1e-14);

    // magnitudes frozen from the closed forms at k0 = 1, A1 = 1
    CHECK(a2[0].real() == doctest::Approx(1.7883945403623410).epsilon(1e-13));
    CHECK(a0[0].real() == doctest::Approx(-1.7240616609663105).epsilon(1e-13));
}

TEST_CASE("split-step envelope integrator") {
    GridPtr slow = make_grid(256, 64.0);
    CarrierParams p = make_carrier(1.0);

    SUBCASE("linear phase is exact on a single mode") {
        Envelope env{slow, zero_field(slow, false), 0.0};
        const double K = slow->wavenumber_spacing() * 5.0;
        for (int i = 0; i < slow->num_points(); ++i)
            env.a.v[i] = std::polar(1.0, K * slow->x(i));
        CarrierParams lin = p;
        lin.nu2 = 0.0;
        Envelope out = nls_step(env, 0.25, lin);
        double worst = 0.0;
        for (int i = 0; i < slow->num_points(); ++i) {
            const cplx expect =
                std::polar(1.0, K * slow->x(i) - lin.nu1 * K * K * 0.25);
            worst = std::max(worst, std::abs(out.a.v[i] - expect));
        }
        CHECK(worst < 1e-13);
    }

    SUBCASE("L2 norm conserved over a thousand steps") {
        Envelope env = gaussian_envelope(slow, 1.0, 6.0, 32.0);
        const double n0 = l2_norm(env.a);
        for (int s = 0; s < 1000; ++s)
            env = nls_step(env, 1e-3, p);
        CHECK(std::fabs(l2_norm(env.a) / n0 - 1.0) < 1e-12);
    }

    SUBCASE("plane-wave solution reproduced") {
        Envelope env{slow, zero_field(slow, false), 0.0};
        const double alpha = 0.8;
        for (auto& z : env.a.v)
            z = alpha;
        Envelope out = nls_evolve(env, 1.0, 1e-3, p);
        const cplx expect = std::polar(alpha, p.nu2 * alpha * alpha * 1.0);
        double worst = 0.0;
        for (const auto& z : out.a.v)
            worst = std::max(worst, std::abs(z - expect));
        CHECK(worst < 1e-8);
    }
}

namespace {
struct Fixture {
    CarrierParams p = make_carrier(1.0);
    double eps;
    WaveGrids grids;
    Envelope env0;
    Fixture(double eps_, double band = 3.0)
        : eps(eps_), grids(make_wave_grids(1.0, eps_, 64.0, 0, band)),
          env0(gaussian_envelope(grids.slow, 1.0, 8.0, 0.5 * grids.slow->length())) {}
};
} // namespace

TEST_CASE("assembled ansatz: realness, supports, conjugate packets") {
    Fixture fx(0.1);
    AnsatzBundle b =
        assemble_psi(fx.env0, 0.0, fx.eps, fx.p, AnsatzOrder::corrected2, fx.grids.fast);

    Field psi = psi_total(b);
    CHECK(max_imag(psi) < 1e-12 * linf_norm(psi));

    // hard cutoff: packet j vanishes outside |k - j k0| <= delta
    for (const auto& [j, spec] : b.packets) {
        for (int i = 0; i < spec.size(); ++i) {
            const double k = spec.grid->wavenumber(i);
            if (std::fabs(k - j * fx.p.k0) > fx.p.delta + 1e-12)
                CHECK(std::abs(spec.c[i]) == 0.0);
        }
    }

    // conjugate symmetry: packet(-j) is the conjugate reflection of packet(j)
    for (int j : {1, 2}) {
        const Spectrum& sp = b.packets.at(j);
        const Spectrum& sm = b.packets.at(-j);
        double worst = 0.0;
        for (int m = -sp.grid->num_points() / 2 + 1; m < sp.grid->num_points() / 2; ++m)
            worst = std::max(worst, std::abs(sm.c[sp.grid->index_of_mode(-m)] -
                                             std::conj(sp.c[sp.grid->index_of_mode(m)])));
        CHECK(worst < 1e-14);
    }

    // psi = psi_c + eps psi_s against the packet sum
    Spectrum direct = zero_spectrum(b.grid);
    for (const auto& [j, spec] : b.packets)
        direct = add(direct, spec);
    CHECK(l2_norm(sub(inverse_transform(direct), psi)) < 1e-13 * l2_norm(psi) + 1e-15);

    // zero envelope assembles to zero
    Envelope zero_env{fx.grids.slow, zero_field(fx.grids.slow, false), 0.0};
    AnsatzBundle zb =
        assemble_psi(zero_env, 0.0, fx.eps, fx.p, AnsatzOrder::basic, fx.grids.fast);
    CHECK(linf_norm(psi_total(zb)) == 0.0);
    CHECK(linf_norm(residual(zb)) == 0.0);
}

TEST_CASE("corrector layer is the eps^{3/2} gap to the plain carrier ansatz") {
    std::vector<std::pair<double, double>> rows;
    for (double eps : {0.1, 0.05, 0.025}) {
        Fixture fx(eps);
        AnsatzBundle b =
            assemble_psi(fx.env0, 0.0, eps, fx.p, AnsatzOrder::basic, fx.grids.fast);
        Field psi_nls = nls_packet_field(fx.env0, 0.0, fx.p, fx.grids.fast);
        const double gap =
            eps * sobolev_norm(sub(psi_total(b), psi_nls), 7.0);
        rows.emplace_back(eps, gap);
    }
    SlopeFit fit = fit_slope(rows);
    CHECK(fit.defined);
    CHECK(fit.slope >= 1.4);
    CHECK(fit.slope < 1.7);
}

TEST_CASE("exact ansatz time derivative matches central differences") {
    Fixture fx(0.1);
    const double t0 = 3.0, dt = 1e-3;
    auto bundle_at = [&](double t) {
        Envelope env = nls_evolve(fx.env0, fx.eps * fx.eps * t, 1e-4, fx.p);
        return assemble_psi(env, t, fx.eps, fx.p, AnsatzOrder::corrected2, fx.grids.fast);
    };
    AnsatzBundle b0 = bundle_at(t0);
    Field dpsi = psi_time_derivative(b0);

    Field plus = psi_total(bundle_at(t0 + dt));
    Field minus = psi_total(bundle_at(t0 - dt));
    Field fd = scaled(sub(plus, minus), 1.0 / (2.0 * dt));
    const double err = l2_norm(sub(dpsi, fd));
    CHECK(err < 1e-5 * l2_norm(dpsi));
}

TEST_CASE("residual scaling pins the corrector signs") {
    // With the correctors solving the coefficient rows, the basic-order
    // residual is formally eps^3 pointwise, i.e. eps^{5/2} in L2; halving eps
    // must shrink it by about 2^{2.5}. A sign flip in A0/A2 would leave an
    // uncancelled eps^2 row and a ratio near 2^{1.5}.
    auto res_norm = [&](double eps, AnsatzOrder ord) {
        Fixture fx(eps, 5.0);
        AnsatzBundle b = assemble_psi(fx.env0, 0.0, eps, fx.p, ord, fx.grids.fast);
        return l2_norm(residual(b));
    };
    const double r1 = res_norm(0.1, AnsatzOrder::basic);
    const double r2 = res_norm(0.05, AnsatzOrder::basic);
    const double ratio = r1 / r2;
    CHECK(ratio > 4.5);  // 2^{2.5} = 5.66
    CHECK(ratio < 7.0);

    // corrected2 gains one more eps power: ratio near 2^{3.5} = 11.3
    const double c1 = res_norm(0.1, AnsatzOrder::corrected2);
    const double c2 = res_norm(0.05, AnsatzOrder::corrected2);
    const double cratio = c1 / c2;
    CHECK(cratio > 9.0);
    CHECK(cratio < 14.0);

    // and at fixed eps the corrected ansatz has the smaller residual
    CHECK(c1 < r1);
    CHECK(c2 < r2);
}

TEST_CASE("assembly geometry contracts") {
    Fixture fx(0.1);
    // wrong slow-grid length
    GridPtr bad_slow = make_grid(256, 10.0);
    Envelope env{bad_slow, zero_field(bad_slow, false), 0.0};
    CHECK_THROWS(assemble_psi(env, 0.0, fx.eps, fx.p, AnsatzOrder::basic, fx.grids.fast));
    // envelope not at T = eps^2 t
    CHECK_THROWS(assemble_psi(fx.env0, 5.0, fx.eps, fx.p, AnsatzOrder::basic, fx.grids.fast));
}
