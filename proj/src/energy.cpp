#include "tanhwave/energy.hpp"

#include "tanhwave/multiplier.hpp"

#include <cmath>
#include <stdexcept>

namespace tanhwave {

EnergyReport energy_E(const Field& u, int s) {
    if (s < 2)
        throw std::invalid_argument("energy_E: s must be >= 2 (energy equivalence needs it)");
    if (!u.real_valued)
        throw std::invalid_argument("energy_E: u must be real");

    const Multiplier kinv_dx = k0_inv_dx(u.grid);

    // d[m] = d^m u, g[m] = K0^{-1} d^m u = (K0^{-1} d/dx) d^{m-1} u.
    std::vector<Field> d(s + 1), g(s + 1);
    d[0] = u;
    for (int m = 1; m <= s; ++m)
        d[m] = derivative(d[m - 1], 1);
    for (int m = 1; m <= s; ++m)
        g[m] = apply(kinv_dx, d[m - 1]);

    // Binomials up to s by Pascal's rule.
    std::vector<std::vector<double>> binom(s + 1, std::vector<double>(s + 1, 0.0));
    for (int nn = 0; nn <= s; ++nn) {
        binom[nn][0] = 1.0;
        for (int kk = 1; kk <= nn; ++kk)
            binom[nn][kk] = binom[nn - 1][kk - 1] + (kk <= nn - 1 ? binom[nn - 1][kk] : 0.0);
    }

    EnergyReport rep;
    rep.s = s;
    rep.levels.resize(s + 1);
    rep.sobolev_half_squares.resize(s + 1);
    rep.cubic_remainder.resize(s + 1);

    for (int l = 0; l <= s; ++l) {
        const double quad = 0.5 * inner_product(d[l], d[l]);
        double cubic = 0.0;
        if (l >= 1) {
            for (int a = 1; a <= l - 1; ++a)
                cubic += binom[l][a] * triple_product_integral(g[l], g[a], g[l - a + 1]);
            cubic += 0.5 * triple_product_integral(g[l], g[l], g[1]);
        }
        rep.sobolev_half_squares[l] = quad;
        rep.cubic_remainder[l] = cubic;
        rep.levels[l] = quad + cubic;
        rep.total += rep.levels[l];
    }
    return rep;
}

double commutator_ratio(const Field& u, int j, double q) {
    if (!(q > 0.5))
        throw std::invalid_argument("commutator_ratio: q must exceed 1/2");
    const double den = sobolev_norm(u, 1.0 + q) * sobolev_norm(u, static_cast<double>(j));
    if (!(den > 1e-300))
        throw std::invalid_argument("commutator_ratio: degenerate input");

    const Multiplier kinv_dx = k0_inv_dx(u.grid);

    // K0^{-1}(u u_x) via the bounded path: u u_x = (1/2) d/dx(u^2), so apply
    // K0^{-1} d/dx to u^2/2 with the DC bin removed.
    Spectrum s_usq = forward_transform(dealiased_product(u, u));
    s_usq.c[0] = cplx(0.0, 0.0);
    Field term1 = inverse_transform(apply(kinv_dx, scaled(s_usq, 0.5)));

    // u * K0^{-1} u_x.
    Field term2 = dealiased_product(u, apply(kinv_dx, u));

    Field comm = sub(term1, term2);
    return sobolev_norm(comm, static_cast<double>(j)) / den;
}

} // namespace tanhwave
