// Acceptance gate: every criterion of the study runs here at its stated
// tolerance and prints one PASS/FAIL line. Exit code 0 only if all pass.

#include "tanhwave/energy.hpp"
#include "tanhwave/experiments.hpp"
#include "tanhwave/multiplier.hpp"
#include "tanhwave/normal_form.hpp"
#include "tanhwave/random_fields.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

using namespace tanhwave;

namespace {

int failures = 0;

void report(int num, const char* name, bool pass, const std::string& detail) {
    if (!pass)
        ++failures;
    std::printf("[%s] criterion %2d: %-34s %s\n", pass ? "PASS" : "FAIL", num, name,
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

struct PacketFixture {
    CarrierParams params = make_carrier(1.0);
    double eps;
    WaveGrids grids;
    AnsatzBundle bundle;
    explicit PacketFixture(double eps_)
        : eps(eps_), grids(make_wave_grids(1.0, eps_, 64.0, 0, 3.0)) {
        Envelope env =
            gaussian_envelope(grids.slow, 0.5, 8.0, 0.5 * grids.slow->length());
        bundle = assemble_psi(env, 0.0, eps, params, AnsatzOrder::basic, grids.fast);
    }
};

// 1. K0(fg) - K0(f)g - f K0(g) = K0(K0 f K0 g) over seeded random pairs.
void criterion_1() {
    GridPtr g = make_grid(1024, 2.0 * M_PI * 16.0);
    const Multiplier k0m = k0_multiplier(g);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        Field f = random_band_limited(g, 9000 + 2 * trial, g->wavenumber_spacing(), 5.0);
        Field h = random_band_limited(g, 9001 + 2 * trial, g->wavenumber_spacing(), 5.0);
        Field lhs = apply(k0m, dealiased_product(f, h));
        add_scaled(lhs, dealiased_product(apply(k0m, f), h), -1.0);
        add_scaled(lhs, dealiased_product(f, apply(k0m, h)), -1.0);
        Field rhs = apply(k0m, dealiased_product(apply(k0m, f), apply(k0m, h)));
        worst = std::max(worst, l2_norm(sub(lhs, rhs)) / (l2_norm(f) * l2_norm(h)));
    }
    report(1, "K0 product identity", worst < 1e-10, fmt("max residual %.3e < 1e-10", worst));
}

// 2. tanh three-point identity on a 10^4-point scan of [-20,20]^2.
void criterion_2() {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j) {
            const double k = -20.0 + 40.0 * i / 99.0;
            const double m = -20.0 + 40.0 * j / 99.0;
            auto [lhs, rhs] = verify_tanh_identity(k, m);
            worst = std::max(worst, std::fabs(lhs - rhs));
        }
    report(2, "tanh three-point identity", worst < 1e-12, fmt("max |LHS-RHS| %.3e", worst));
}

// 3. |k| <= |tanh k| sqrt(1+k^2) at every wavenumber of a 2^16 grid.
void criterion_3() {
    GridPtr g = make_grid(1 << 16, 2.0 * M_PI);
    bool ok = true;
    double worst = -INFINITY;
    for (double k : g->wavenumbers()) {
        const double slack = std::fabs(k) - std::fabs(std::tanh(k)) * std::sqrt(1.0 + k * k);
        worst = std::max(worst, slack);
        ok = ok && slack <= 0.0;
    }
    report(3, "symbol bound on 2^16 grid", ok, fmt("max(|k| - bound) = %.3e", worst));
}

// 4. Envelope-equation coefficients against frozen 40-digit evaluations.
void criterion_4() {
    auto [nu1, nu2] = nls_coefficients(1.0);
    const double d1 = std::fabs(nu1 - (-0.31985000422461225));
    const double d2 = std::fabs(nu2 - (-0.06433287939603058));
    report(4, "nu1/nu2 closed forms", d1 < 1e-12 && d2 < 1e-12,
           fmt("nu1 %.12f (dev %.1e), nu2 %.12f (dev %.1e)", nu1, d1, nu2, d2));
}

// 5. L2 conservation over t = 10/eps^2 at eps = 0.1.
void criterion_5() {
    const double eps = 0.1;
    ExperimentConfig cfg;
    CarrierParams p = make_carrier(1.0);
    WaveGrids grids = make_wave_grids(1.0, eps, cfg.slow_length, 0, 3.0);
    Envelope env = make_initial_envelope(cfg, grids.slow);
    AnsatzBundle b = assemble_psi(env, 0.0, eps, p, AnsatzOrder::corrected2, grids.fast);
    Field u0 = scaled(psi_total(b), eps);
    u0.real_valued = true;
    const double l2_0 = l2_norm(u0);
    SolverConfig sc = make_solver_config(grids.fast, 0.05, 10.0 / (eps * eps), 100);
    double drift = 0.0;
    RunLog log = run(u0, sc, [&](const SimulationState& st) -> std::vector<double> {
        drift = std::max(drift, std::fabs(l2_norm(st.u) / l2_0 - 1.0));
        return {};
    });
    report(5, "L2 conservation to t = 1000", !log.nan_detected && drift < 1e-6,
           fmt("relative drift %.3e < 1e-6", drift));
}

// 6. Long-time boundedness: sup-ratio spread < 2 across eps.
void criterion_6() {
    ExperimentConfig cfg;
    cfg.eps_list = {0.2, 0.1, 0.05};
    ScalingReport r = run_long_time_existence(cfg);
    double mx = 0.0, mn = 1e300;
    for (const auto& row : r.rows) {
        mx = std::max(mx, row.metric);
        mn = std::min(mn, row.metric);
    }
    const bool ok = r.rows.size() == 3 && mx / mn < 2.0;
    report(6, "H^7 boundedness to t = 1/eps^2", ok,
           fmt("sup ratios spread %.3f < 2 (max %.3f)", mx / mn, mx));
}

// 7. |E_l - 1/2||d^l u||^2| scales with amplitude^3, slope 3.0 +- 0.3.
void criterion_7() {
    GridPtr g = make_grid(256, 128.0);
    Field shape = random_band_limited(g, 4242, 4.0 * g->wavenumber_spacing(), 2.0);
    const double base = sobolev_norm(shape, 7.0);
    const std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
    std::vector<EnergyReport> reps;
    for (double eps : eps_list)
        reps.push_back(energy_E(scaled(shape, eps / base), 7));
    bool ok = true;
    double worst_slope = 3.0;
    for (int l = 1; l <= 7; ++l) {
        std::vector<std::pair<double, double>> rows;
        for (size_t i = 0; i < eps_list.size(); ++i)
            rows.emplace_back(eps_list[i], std::fabs(reps[i].cubic_remainder[l]));
        const SlopeFit fit = fit_slope(rows);
        if (std::fabs(fit.slope - 3.0) > std::fabs(worst_slope - 3.0))
            worst_slope = fit.slope;
        ok = ok && fit.defined && std::fabs(fit.slope - 3.0) <= 0.3;
    }
    report(7, "energy equivalence slope 3.0", ok,
           fmt("worst level slope %.4f in [2.7, 3.3]", worst_slope));
}

// 8. Energy drift rates bounded in units of eps^2.
void criterion_8() {
    ExperimentConfig cfg;
    cfg.eps_list = {0.2, 0.1, 0.05};
    ScalingReport r = run_energy_drift(cfg);
    double mx = 0.0, mn = 1e300, growth = 0.0;
    for (size_t i = 0; i < r.rows.size(); ++i) {
        mx = std::max(mx, r.rows[i].metric);
        mn = std::min(mn, r.rows[i].metric);
        growth = std::max(growth, r.row_extras[i].at("ln_growth_max"));
    }
    const bool bounded = mx <= 1.0 && growth <= 1.0;
    const bool resolved = mx * cfg.T0 > 0.05;
    const bool ok = r.rows.size() == 3 && bounded && (!resolved || mx / mn < 3.0);
    report(8, "energy drift rho/eps^2 bounded", ok,
           fmt("max rho/eps^2 %.3e, ln-growth %.3e, spread %.2f", mx, growth, mx / mn));
}

// 9. The headline: sup_t ||u - eps psi_NLS||_{H^7} slope >= 1.4.
void criterion_9() {
    ExperimentConfig cfg; // defaults: eps {0.1,0.05,0.025}, k0 1, T0 1, gaussian:1:10
    ScalingReport out = run_nls_validity(cfg);
    const bool ok = out.rows.size() == 3 && out.fit.defined && out.fit.slope >= 1.4;
    report(9, "NLS validity slope >= 1.4", ok,
           fmt("slope %.4f (r^2 %.5f), metrics %.4g/%.4g/%.4g", out.fit.slope,
               out.fit.r_squared, out.rows.size() > 0 ? out.rows[0].metric : 0.0,
               out.rows.size() > 1 ? out.rows[1].metric : 0.0,
               out.rows.size() > 2 ? out.rows[2].metric : 0.0));
}

// 10. Residual scaling: basic 2.5 +- 0.3, corrected2 >= 3.3.
void criterion_10() {
    ExperimentConfig cfg;
    cfg.eps_list = {0.2, 0.1, 0.05, 0.025};
    auto reports = run_residual_scaling(cfg);
    const auto& basic = reports.at("basic");
    const auto& corr = reports.at("corrected2");
    const bool ok = basic.fit.defined && std::fabs(basic.fit.slope - 2.5) <= 0.3 &&
                    corr.fit.defined && corr.fit.slope >= 3.3;
    report(10, "residual slopes 2.5 / >=3.3", ok,
           fmt("basic %.4f, corrected2 %.4f", basic.fit.slope, corr.fit.slope));
}

// 11. N-operator properties at the stated tolerances.
void criterion_11() {
    double p0n = 0.0, anti = 0.0;
    std::vector<double> n_bound;
    for (double eps : {0.1, 0.05, 0.025}) {
        PacketFixture fx(eps);
        const GridPtr& g = fx.grids.fast;
        auto [plow, phigh] = projections(g, fx.params.delta);
        (void)phigh;
        Multiplier th = weight_theta(g, eps, fx.params.delta);
        double nb = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            Field f = random_band_limited(g, 7100 + trial, g->wavenumber_spacing(), 2.0);
            Field h = random_band_limited(g, 7200 + trial, g->wavenumber_spacing(), 2.0);
            Field nlow = operator_N(fx.bundle.psi_c, apply(plow, f), eps, fx.params);
            p0n = std::max(p0n, l2_norm(apply(plow, nlow)) / l2_norm(f));
            Field nf = operator_N(fx.bundle.psi_c, f, eps, fx.params);
            Field ng = operator_N(fx.bundle.psi_c, h, eps, fx.params);
            nb = std::max(nb, eps * l2_norm(nf) / sobolev_norm(f, 1.0));
            const double lhs =
                inner_product(f, apply(th, ng)) + inner_product(h, apply(th, nf));
            const double s_term =
                triple_product_integral(apply(k0_inv_dx(g), fx.bundle.psi_c), f, h);
            const double z_term =
                inner_product(f, operator_Q(fx.bundle.psi_c, h, eps, fx.params)) +
                inner_product(h, operator_Q(fx.bundle.psi_c, f, eps, fx.params));
            anti = std::max(anti, std::fabs(lhs - s_term - z_term) /
                                      (sobolev_norm(f, 1.0) * sobolev_norm(h, 1.0)));
        }
        n_bound.push_back(nb);
    }
    const double spread = *std::max_element(n_bound.begin(), n_bound.end()) /
                          *std::min_element(n_bound.begin(), n_bound.end());
    const bool ok = p0n < 1e-12 && spread < 3.0 && anti < 1e-8;
    report(11, "N-operator properties", ok,
           fmt("P0NP0 %.2e, eps-bound spread %.2f, antisym %.2e", p0n, spread, anti));
}

// 12. Cubic kernel: multiplier form vs literal double convolution on 64 points.
void criterion_12() {
    const int n = 64, m0 = 6;
    GridPtr g = make_grid(n, 2.0 * M_PI * m0);
    CarrierParams p = make_carrier(1.0);
    const double dk = g->wavenumber_spacing();
    const double eps = 0.1;

    Spectrum ps = zero_spectrum(g);
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int m = -n / 2 + 1; m < n / 2; ++m)
        if (std::fabs(m * dk - p.k0) <= p.delta)
            ps.c[g->index_of_mode(m)] = cplx(gauss(rng), gauss(rng));
    Field psi_j = inverse_transform(ps);
    Field big_r = random_band_limited(g, 5150, dk, 2.2);

    // multiplier path, kept spectral so the support statement is exact
    Spectrum conv = forward_transform(
        dealiased_product(dealiased_product(psi_j, psi_j), big_r));
    Spectrum got = apply(kernel_t(g, 1, p, eps), conv);

    Spectrum rs = forward_transform(big_r);
    double worst = 0.0, sup = 0.0, outside = 0.0;
    for (int kk = -n / 2 + 1; kk < n / 2; ++kk) {
        const double tk = kernel_t_value(kk * dk, 1, p, eps);
        cplx acc(0.0, 0.0);
        if (tk != 0.0) {
            for (int m = -n / 2 + 1; m < n / 2; ++m) {
                const int km = kk - m;
                if (km <= -n / 2 || km >= n / 2)
                    continue;
                const cplx pa = ps.c[g->index_of_mode(km)];
                if (pa == cplx(0.0, 0.0))
                    continue;
                for (int nn = -n / 2 + 1; nn < n / 2; ++nn) {
                    const int mn = m - nn;
                    if (mn <= -n / 2 || mn >= n / 2)
                        continue;
                    acc += pa * ps.c[g->index_of_mode(mn)] * rs.c[g->index_of_mode(nn)];
                }
            }
        }
        const cplx oracle = tk * acc;
        const int idx = g->index_of_mode(kk);
        worst = std::max(worst, std::abs(got.c[idx] - oracle));
        sup = std::max(sup, std::abs(oracle));
        if (std::fabs(kk * dk) > p.delta)
            outside = std::max(outside, std::abs(got.c[idx]));
    }
    const bool ok = worst / sup < 1e-10 && outside == 0.0;
    report(12, "T kernel vs double convolution", ok,
           fmt("rel err %.3e < 1e-10, mass outside delta %.1e", worst / sup, outside));
}

// 13. Modified-energy equivalence: c stable under eps halving.
void criterion_13() {
    double c[2] = {0.0, 0.0};
    const double eps_list[2] = {0.1, 0.05};
    for (int which = 0; which < 2; ++which) {
        PacketFixture fx(eps_list[which]);
        double rmax = 0.0, rmin = 1e300;
        for (int trial = 0; trial < 50; ++trial) {
            Field r = random_band_limited(fx.grids.fast, 9000 + trial, 0.3, 2.0);
            ModEnergyReport rep = mod_energy(r, fx.bundle, 7, fx.eps, fx.params);
            const double ratio = std::sqrt(rep.total) / sobolev_norm(r, 7.0);
            rmax = std::max(rmax, ratio);
            rmin = std::min(rmin, ratio);
        }
        c[which] = std::max(rmax, 1.0 / rmin);
    }
    const double change = std::fabs(c[1] - c[0]) / c[0];
    report(13, "mod-energy equivalence stability", change < 0.10,
           fmt("c(0.1) %.4f, c(0.05) %.4f, change %.2f%% < 10%%", c[0], c[1],
               100.0 * change));
}

// 14. Commutator ratio bounded and amplitude invariant.
void criterion_14() {
    GridPtr g = make_grid(1024, 2.0 * M_PI * 16.0);
    double worst_ratio = 0.0, worst_change = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        Field u = random_band_limited(g, 3300 + trial, g->wavenumber_spacing(), 3.0);
        const double r = commutator_ratio(u, 2, 1.0);
        worst_ratio = std::max(worst_ratio, r);
        for (double a : {0.5, 2.0, 10.0})
            worst_change =
                std::max(worst_change, std::fabs(commutator_ratio(scaled(u, a), 2, 1.0) - r));
    }
    const bool ok = worst_ratio < 10.0 && worst_change < 1e-10;
    report(14, "commutator bounded + scale invariant", ok,
           fmt("max ratio %.4f, rescaling dev %.2e", worst_ratio, worst_change));
}

// 15. Determinism: repeated validity runs produce byte-identical CSV.
void criterion_15() {
    ExperimentConfig cfg;
    cfg.eps_list = {0.1}; // the cheapest member of criterion 9
    cfg.dt_auto_halvings = 0;
    auto run_to_string = [&]() {
        ScalingReport r = run_nls_validity(cfg);
        std::ostringstream out;
        out << "eps,metric,t_of_sup,grid_n,dt\n";
        for (const auto& row : r.rows)
            out << format_double(row.eps) << "," << format_double(row.metric) << ","
                << format_double(row.t_of_sup) << "," << row.grid_n << ","
                << format_double(row.dt) << "\n";
        return out.str();
    };
    const std::string a = run_to_string();
    const std::string b = run_to_string();
    report(15, "byte-identical CSV on rerun", a == b,
           a == b ? "identical" : "outputs differ");
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    criterion_14();
    criterion_15();
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("acceptance: %d/15 criteria passed (%.1f s)\n", 15 - failures, wall);
    return failures == 0 ? 0 : 1;
}
