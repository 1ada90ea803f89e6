#include "tanhwave/energy.hpp"
#include "tanhwave/experiments.hpp"
#include "tanhwave/multiplier.hpp"
#include "tanhwave/normal_form.hpp"
#include "tanhwave/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

namespace tanhwave {

namespace {

struct Suite {
    PropertyReport report;

    void add(const std::string& name, double measured, double threshold, bool pass,
             const std::string& detail = "") {
        report.checks.push_back({name, pass, measured, threshold, detail});
        report.all_pass = report.all_pass && pass;
    }
    // value must stay below threshold
    void below(const std::string& name, double measured, double threshold,
               const std::string& detail = "") {
        add(name, measured, threshold, measured < threshold, detail);
    }
    // value must stay above threshold
    void above(const std::string& name, double measured, double threshold,
               const std::string& detail = "") {
        add(name, measured, threshold, measured > threshold, detail);
    }
};

double linear_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    return denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
}

struct PacketFixture {
    CarrierParams params;
    WaveGrids grids;
    AnsatzBundle bundle;
};

PacketFixture make_packet_fixture(const ExperimentConfig& cfg, double eps) {
    PacketFixture fx{make_carrier(cfg.k0, cfg.delta),
                     make_wave_grids(cfg.k0, eps, 64.0, 0, 3.0),
                     {}};
    Envelope env = gaussian_envelope(fx.grids.slow, 0.5, 8.0, 0.5 * fx.grids.slow->length());
    fx.bundle = assemble_psi(env, 0.0, eps, fx.params, AnsatzOrder::basic, fx.grids.fast);
    return fx;
}

} // namespace

PropertyReport run_property_suite(const ExperimentConfig& cfg) {
    Suite s;
    s.report.config_hash = cfg.hash();
    std::vector<std::string> config_warnings;
    cfg.validate_common(config_warnings);

    const std::uint64_t seed = cfg.seed;

    // --- tanh three-point identity (with the tamper hook for the negative control)
    {
        const bool tampered = cfg.tamper == "tanh_sign_flip";
        double worst = 0.0;
        const int side = 100; // 10^4 scan points in [-20,20]^2
        for (int i = 0; i < side; ++i)
            for (int j = 0; j < side; ++j) {
                const double k = -20.0 + 40.0 * i / (side - 1);
                const double m = -20.0 + 40.0 * j / (side - 1);
                auto [lhs, rhs] = verify_tanh_identity(k, m);
                if (tampered)
                    rhs = -rhs;
                worst = std::max(worst, std::fabs(lhs - rhs));
            }
        s.below("tanh_three_point_identity", worst, 1e-12);
    }

    // --- symbol bound |k| <= |tanh k| (1+k^2)^{1/2} on a 2^16 grid
    {
        GridPtr g = make_grid(1 << 16, 2.0 * M_PI);
        double worst = -INFINITY; // max of |k| - bound
        for (double k : g->wavenumbers())
            worst = std::max(worst,
                             std::fabs(k) - std::fabs(std::tanh(k)) * std::sqrt(1.0 + k * k));
        s.below("symbol_bound_lemma", worst, 1e-12, "max(|k| - |tanh k| sqrt(1+k^2))");

        Multiplier kid = k0_inv_dx(g);
        double worst2 = -INFINITY;
        for (int i = 0; i < g->num_points(); ++i) {
            const double k = g->wavenumber(i);
            worst2 = std::max(worst2, std::abs(kid.symbol[i]) - std::sqrt(1.0 + k * k));
        }
        s.below("k0_inv_dx_symbol_bound", worst2, 1e-12);
    }

    // Spectral fixture: band-limited random fields on a moderate grid.
    GridPtr gp = make_grid(1024, 2.0 * M_PI * 16.0);
    const Multiplier k0m = k0_multiplier(gp);

    // --- Lemma identity K0(fg) - K0(f)g - f K0(g) = K0(K0 f K0 g)
    {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            Field f = random_band_limited(gp, seed + 2 * trial, gp->wavenumber_spacing(), 5.0);
            Field g = random_band_limited(gp, seed + 2 * trial + 1, gp->wavenumber_spacing(), 5.0);
            Field lhs = apply(k0m, dealiased_product(f, g));
            add_scaled(lhs, dealiased_product(apply(k0m, f), g), -1.0);
            add_scaled(lhs, dealiased_product(f, apply(k0m, g)), -1.0);
            Field rhs = apply(k0m, dealiased_product(apply(k0m, f), apply(k0m, g)));
            const double rel =
                l2_norm(sub(lhs, rhs)) / std::max(l2_norm(f) * l2_norm(g), 1e-300);
            worst = std::max(worst, rel);
        }
        s.below("k0_product_identity", worst, 1e-10);
    }

    // --- skew symmetry of K0
    {
        Field u = random_band_limited(gp, seed + 777, gp->wavenumber_spacing(), 5.0);
        const double v = std::fabs(inner_product(u, apply(k0m, u)));
        s.below("k0_skew_symmetry", v / (l2_norm(u) * l2_norm(u)), 1e-12);
    }

    // --- weight and projections on a grid with delta exactly resolved
    {
        const double eps = 0.1, delta = 0.045;
        GridPtr ga = make_grid(2048, 2.0 * M_PI * 200.0); // dk = 0.005, delta = 9 dk
        Multiplier th = weight_theta(ga, eps, delta);
        Multiplier thi = weight_theta_inv(ga, eps, delta);
        double mn = INFINITY, mx = -INFINITY, prod_dev = 0.0, sup_inv = 0.0, sup_kinv_low = 0.0,
               sup_kinv = 0.0;
        for (int i = 0; i < ga->num_points(); ++i) {
            const double t = th.symbol[i].real();
            mn = std::min(mn, t);
            mx = std::max(mx, t);
            prod_dev = std::max(prod_dev,
                                std::abs(th.symbol[i] * thi.symbol[i] - cplx(1.0, 0.0)));
            sup_inv = std::max(sup_inv, std::abs(thi.symbol[i]));
            const double k = ga->wavenumber(i);
            const double kinv = std::fabs(k) * std::abs(thi.symbol[i]);
            sup_kinv = std::max(sup_kinv, kinv);
            if (std::fabs(k) <= delta)
                sup_kinv_low = std::max(sup_kinv_low, kinv);
        }
        s.below("theta_range", std::max(eps - mn, mx - 1.0), 1e-15, "theta in [eps,1]");
        s.below("theta_times_inverse", prod_dev, 1e-15);
        s.below("theta_inv_sup", std::fabs(sup_inv - 1.0 / eps), 1e-12, "sup = 1/eps");
        s.below("k_theta_inv_low_band", std::fabs(sup_kinv_low - delta), 1e-12,
                "sup over |k|<=delta equals delta");
        s.below("k_theta_inv_global",
                std::fabs(sup_kinv - std::max(delta, ga->max_wavenumber())), 1e-9);

        auto [plow, phigh] = projections(ga, delta);
        double symbol_dev = 0.0; // idempotence and orthogonality are exact symbolwise
        for (int i = 0; i < ga->num_points(); ++i) {
            symbol_dev = std::max(symbol_dev, std::abs(plow.symbol[i] * phigh.symbol[i]));
            symbol_dev = std::max(
                symbol_dev, std::abs(plow.symbol[i] * plow.symbol[i] - plow.symbol[i]));
            symbol_dev = std::max(
                symbol_dev, std::abs(plow.symbol[i] + phigh.symbol[i] - cplx(1.0, 0.0)));
        }
        s.below("projection_symbol_algebra", symbol_dev, 1e-300,
                "idempotent, orthogonal, complementary (exact)");
        Field u = random_band_limited(ga, seed + 11, ga->wavenumber_spacing(), 3.0);
        Field lo = apply(plow, u), hi = apply(phigh, u);
        s.below("projection_complement", l2_norm(sub(add(lo, hi), u)) / l2_norm(u), 1e-14);
        s.below("projection_idempotent",
                l2_norm(sub(apply(plow, lo), lo)) / std::max(l2_norm(u), 1e-300), 1e-13);
        s.below("projection_orthogonal", l2_norm(apply(plow, hi)) / l2_norm(u), 1e-13);

        // theta P_{0,eps'} bound with eps' < delta: sharp at |k| = eps'
        const double eps_small = 0.02;
        auto [pl2, ph2] = projections(ga, eps_small);
        (void)ph2;
        Field tp = apply(th, apply(pl2, u));
        const double bound = eps_small + (1.0 - eps_small) * eps_small / delta;
        s.below("theta_p0_bound", l2_norm(tp) / l2_norm(u), bound + 1e-12,
                "||theta P_{0,eps} f|| <= (eps + (1-eps) eps/delta)||f||");
    }

    // --- non-resonance margin at (k0, delta)
    {
        CarrierParams p = make_carrier(cfg.k0, cfg.delta);
        const double m_fine = nonresonance_margin(p, 20001);
        const double m_coarse = nonresonance_margin(p, 2001);
        s.above("nonresonance_margin", m_fine, 0.4);
        s.below("nonresonance_scan_refinement", m_fine - m_coarse, 1e-12,
                "finer scan can only shrink the margin");
        CarrierParams pj = p;
        double asym = 0.0;
        for (int i = 0; i < 2001; ++i) {
            const double k = -p.delta + 2.0 * p.delta * i / 2000;
            const double a =
                std::fabs(std::tanh(k) - 2.0 * std::tanh(p.k0) - std::tanh(k - 2.0 * p.k0));
            const double b = std::fabs(std::tanh(-k) - 2.0 * std::tanh(-p.k0) -
                                       std::tanh(-k + 2.0 * p.k0));
            asym = std::max(asym, std::fabs(a - b));
        }
        (void)pj;
        s.below("nonresonance_j_symmetry", asym, 1e-14);
    }

    // --- perfect-derivative identity int f g f_x dx = -1/2 int f^2 g_x dx
    {
        Field f = random_band_limited(gp, seed + 21, gp->wavenumber_spacing(), 5.0);
        Field g = random_band_limited(gp, seed + 22, gp->wavenumber_spacing(), 5.0);
        const double lhs = triple_product_integral(f, g, derivative(f, 1));
        const double rhs = -0.5 * triple_product_integral(f, f, derivative(g, 1));
        const double scale = l2_norm(f) * l2_norm(f) * sobolev_norm(g, 1.0);
        s.below("perfect_derivative_identity", std::fabs(lhs - rhs) / scale, 1e-12);
    }

    // --- commutator ratio: bounded and invariant under amplitude rescaling
    {
        double worst_ratio = 0.0, worst_change = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            Field u = random_band_limited(gp, seed + 100 + trial, gp->wavenumber_spacing(), 3.0);
            const double r = commutator_ratio(u, 2, 1.0);
            worst_ratio = std::max(worst_ratio, r);
            for (double a : {0.5, 2.0, 10.0}) {
                const double ra = commutator_ratio(scaled(u, a), 2, 1.0);
                worst_change = std::max(worst_change, std::fabs(ra - r) / r);
            }
        }
        s.below("commutator_ratio_bounded", worst_ratio, 10.0);
        s.below("commutator_amplitude_invariance", worst_change, 1e-10);
    }

    // --- packet-operator fixtures across an eps halving sweep
    std::vector<double> eps_sweep{0.1, 0.05, 0.025};
    std::vector<double> n_bound, c_up, c_down;
    for (double eps : eps_sweep) {
        PacketFixture fx = make_packet_fixture(cfg, eps);
        const GridPtr& g = fx.grids.fast;
        const double dk = g->wavenumber_spacing();
        auto [plow, phigh] = projections(g, fx.params.delta);
        (void)phigh;

        double p0n = 0.0, nb = 0.0, anti = 0.0, qdev = 0.0, up = 0.0, down = 0.0;
        for (int trial = 0; trial < 12; ++trial) {
            Field f = random_band_limited(g, seed + 300 + trial, dk, 2.0);
            Field h = random_band_limited(g, seed + 400 + trial, dk, 2.0);

            // Lemma: P_{0,delta} N(psi_c, P_{0,delta} f) = 0
            Field nlow = operator_N(fx.bundle.psi_c, apply(plow, f), eps, fx.params);
            p0n = std::max(p0n, l2_norm(apply(plow, nlow)) / l2_norm(f));

            // ||N(psi_c,f)|| <= C eps^{-1} ||f||_{H^1}
            Field nf = operator_N(fx.bundle.psi_c, f, eps, fx.params);
            nb = std::max(nb, eps * l2_norm(nf) / sobolev_norm(f, 1.0));

            // antisymmetry relation with S and the literal Q remainder
            Multiplier th = weight_theta(g, eps, fx.params.delta);
            Field ng = operator_N(fx.bundle.psi_c, h, eps, fx.params);
            const double lhs = inner_product(f, apply(th, ng)) +
                               inner_product(h, apply(th, nf));
            const double s_term =
                triple_product_integral(apply(k0_inv_dx(g), fx.bundle.psi_c), f, h);
            const double z_term =
                inner_product(f, operator_Q(fx.bundle.psi_c, h, eps, fx.params)) +
                inner_product(h, operator_Q(fx.bundle.psi_c, f, eps, fx.params));
            anti = std::max(anti, std::fabs(lhs - s_term - z_term) /
                                      (sobolev_norm(f, 1.0) * sobolev_norm(h, 1.0)));

            // Q is linear with an L2->L2 bound; ratio invariant under scaling
            const double q1 = l2_norm(operator_Q(fx.bundle.psi_c, f, eps, fx.params)) /
                              l2_norm(f);
            const double q2 =
                l2_norm(operator_Q(fx.bundle.psi_c, scaled(f, 10.0), eps, fx.params)) /
                (10.0 * l2_norm(f));
            qdev = std::max(qdev, std::fabs(q1 - q2) / q1);

            // check-R equivalence constants
            Field rcheck = check_R(f, fx.bundle, eps, fx.params);
            up = std::max(up, l2_norm(rcheck) / sobolev_norm(f, 1.0));
            down = std::max(down, l2_norm(f) / l2_norm(rcheck));
        }
        n_bound.push_back(nb);
        c_up.push_back(up);
        c_down.push_back(down);
        if (eps == eps_sweep.front()) {
            s.below("p0_n_p0_vanishes", p0n, 1e-12);
            s.below("partN_antisymmetry", anti, 1e-8);
            s.below("q_amplitude_linearity", qdev, 1e-10);
        }
    }
    {
        const double nb_spread = *std::max_element(n_bound.begin(), n_bound.end()) /
                                 std::max(*std::min_element(n_bound.begin(), n_bound.end()),
                                          1e-300);
        s.below("n_eps_bound_spread", nb_spread, 3.0,
                "eps ||N||/||f||_{H^1} stable across eps halvings");
        const double up_change = std::fabs(c_up[1] - c_up[0]) / c_up[0];
        const double down_change = std::fabs(c_down[1] - c_down[0]) / c_down[0];
        s.below("checkR_upper_constant_stability", up_change, 0.2);
        s.below("checkR_lower_constant_stability", down_change, 0.2);
    }

    // --- cubic kernel: multiplier form against the literal double convolution
    for (int ncase : {64, 256}) {
        const int m0 = ncase == 64 ? 6 : 24;
        GridPtr g = make_grid(ncase, 2.0 * M_PI * m0); // k0 = 1 on-grid
        CarrierParams p = make_carrier(1.0, cfg.delta);
        const double dk = g->wavenumber_spacing();

        // single-sided packet at +k0 (width delta) and a random real R
        Spectrum ps = zero_spectrum(g);
        std::mt19937_64 rng(seed + ncase);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int m = -ncase / 2 + 1; m < ncase / 2; ++m) {
            if (std::fabs(m * dk - p.k0) > p.delta)
                continue;
            ps.c[g->index_of_mode(m)] = cplx(gauss(rng), gauss(rng));
        }
        Field psi_j = inverse_transform(ps);
        Field big_r = random_band_limited(g, seed + 1000 + ncase, dk, 2.2);

        Field t_field = operator_T(psi_j, big_r, 1, 0.1, p);
        Spectrum t_spec = forward_transform(t_field);

        // oracle: T^(k) = t(k) sum_m sum_n psi^(k-m) psi^(m-n) R^(n)
        Spectrum rs = forward_transform(big_r);
        Spectrum oracle = zero_spectrum(g);
        double sup_t = 0.0;
        for (int kk = -ncase / 2 + 1; kk < ncase / 2; ++kk) {
            const double tk = kernel_t_value(kk * dk, 1, p, 0.1);
            if (tk == 0.0)
                continue;
            cplx acc(0.0, 0.0);
            for (int m = -ncase / 2 + 1; m < ncase / 2; ++m) {
                const int km = kk - m;
                if (km <= -ncase / 2 || km >= ncase / 2)
                    continue;
                const cplx pa = ps.c[g->index_of_mode(km)];
                if (pa == cplx(0.0, 0.0))
                    continue;
                for (int n = -ncase / 2 + 1; n < ncase / 2; ++n) {
                    const int mn = m - n;
                    if (mn <= -ncase / 2 || mn >= ncase / 2)
                        continue;
                    acc += pa * ps.c[g->index_of_mode(mn)] * rs.c[g->index_of_mode(n)];
                }
            }
            oracle.c[g->index_of_mode(kk)] = tk * acc;
            sup_t = std::max(sup_t, std::abs(oracle.c[g->index_of_mode(kk)]));
        }
        double worst = 0.0, outside = 0.0;
        for (int i = 0; i < ncase; ++i) {
            worst = std::max(worst, std::abs(t_spec.c[i] - oracle.c[i]));
            if (std::fabs(g->wavenumber(i)) > p.delta)
                outside = std::max(outside, std::abs(t_spec.c[i]));
        }
        s.below("t_kernel_convolution_n" + std::to_string(ncase),
                worst / std::max(sup_t, 1e-300), 1e-10);
        s.below("t_kernel_support_n" + std::to_string(ncase), outside, 1e-14,
                "output confined to |k| <= delta");
    }

    // --- linear dispersion: single mode advances with phase tanh(k) t exactly
    {
        GridPtr g = make_grid(512, 2.0 * M_PI * 16.0);
        Field u0 = zero_field(g);
        for (int i = 0; i < g->num_points(); ++i)
            u0.v[i] = std::cos(g->x(i));
        SolverConfig sc = make_solver_config(g, 0.05, 5.0, 1000000);
        sc.nonlinear = false;
        RunLog log = run(u0, sc, nullptr);
        (void)log;
        SimulationState st{0.0, u0, 0};
        Spectrum uh = forward_transform(u0);
        IfRk4 engine(g, sc.linear_symbol, sc.dt, false);
        for (int i = 0; i < 100; ++i)
            engine.step(uh);
        Field ut = inverse_transform(uh);
        const double t = 100 * sc.dt;
        double worst = 0.0;
        for (int i = 0; i < g->num_points(); ++i)
            worst = std::max(worst,
                             std::abs(ut.v[i] - std::cos(g->x(i) - std::tanh(1.0) * t)));
        s.below("linear_dispersion_exact", worst, 1e-12);
        (void)st;
    }

    // --- group velocity of a linear packet
    {
        const double eps = 0.1;
        PacketFixture fx = make_packet_fixture(cfg, eps);
        Field u0 = fx.bundle.psi_c;
        const GridPtr& g = fx.grids.fast;
        const double L = g->length();
        SolverConfig sc = make_solver_config(g, 0.05, 10.0 / eps, 20);
        sc.nonlinear = false;
        std::vector<double> times, centers;
        run(u0, sc, [&](const SimulationState& st) -> std::vector<double> {
            cplx z(0.0, 0.0);
            for (int i = 0; i < g->num_points(); ++i)
                z += std::norm(st.u.v[i]) *
                     std::polar(1.0, 2.0 * M_PI * g->x(i) / L);
            double c = std::arg(z) * L / (2.0 * M_PI);
            if (!centers.empty()) {
                while (c < centers.back() - 0.5 * L)
                    c += L;
                while (c > centers.back() + 0.5 * L)
                    c -= L;
            }
            times.push_back(st.t);
            centers.push_back(c);
            return {c};
        });
        const double v = linear_slope(times, centers);
        s.below("group_velocity", std::fabs(v - fx.params.cg) / fx.params.cg, 0.02,
                "center-of-mass speed vs cg");
    }

    for (const auto& w : config_warnings)
        s.report.checks.push_back({"config_warning", true, 0.0, 0.0, w});

    return s.report;
}

} // namespace tanhwave
