#include "tanhwave/multiplier.hpp"

#include <cmath>
#include <stdexcept>

namespace tanhwave {

namespace {
double x_over_tanh(double x) {
    // Removable singularity: x/tanh(x) -> 1 as x -> 0. The ratio itself is
    // numerically stable away from exact zero.
    return x == 0.0 ? 1.0 : x / std::tanh(x);
}
} // namespace

Multiplier make_multiplier(const GridPtr& grid, std::string name,
                           const std::function<cplx(double)>& symbol_fn) {
    const int n = grid->num_points();
    Multiplier m{std::move(name), grid, std::vector<cplx>(n)};
    for (int i = 0; i < n; ++i) {
        cplx v = symbol_fn(grid->wavenumber(i));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("make_multiplier: non-finite symbol value in " + m.name);
        // Nyquist is its own conjugate partner; keep only the real part there.
        if (i == n / 2)
            v = cplx(v.real(), 0.0);
        m.symbol[i] = v;
    }
    return m;
}

Spectrum apply(const Multiplier& m, const Spectrum& s) {
    require_same_grid(m.grid, s.grid, "apply(multiplier)");
    Spectrum out = s;
    for (int i = 0; i < out.size(); ++i)
        out.c[i] *= m.symbol[i];
    return out;
}

Field apply(const Multiplier& m, const Field& f) {
    Spectrum s = apply(m, forward_transform(f));
    Field out = inverse_transform(s);
    return out;
}

Multiplier compose(const Multiplier& a, const Multiplier& b) {
    require_same_grid(a.grid, b.grid, "compose(multiplier)");
    Multiplier out{a.name + "*" + b.name, a.grid, a.symbol};
    for (int i = 0; i < static_cast<int>(out.symbol.size()); ++i)
        out.symbol[i] *= b.symbol[i];
    return out;
}

Multiplier identity_multiplier(const GridPtr& grid) {
    return make_multiplier(grid, "id", [](double) { return cplx(1.0, 0.0); });
}

Multiplier k0_multiplier(const GridPtr& grid) {
    return make_multiplier(grid, "K0", [](double k) { return cplx(0.0, -std::tanh(k)); });
}

Multiplier hilbert_multiplier(const GridPtr& grid) {
    return make_multiplier(grid, "H", [](double k) {
        return cplx(0.0, k > 0.0 ? -1.0 : (k < 0.0 ? 1.0 : 0.0));
    });
}

Multiplier k0_inv_dx(const GridPtr& grid) {
    // (ik) / (-i tanh k) = -k/tanh(k); the k=0 limit is -1.
    return make_multiplier(grid, "K0invDx", [](double k) { return cplx(-x_over_tanh(k), 0.0); });
}

double theta_hat(double k, double eps, double delta) {
    return std::fabs(k) > delta ? 1.0 : eps + (1.0 - eps) * std::fabs(k) / delta;
}

Multiplier weight_theta(const GridPtr& grid, double eps, double delta) {
    if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0))
        throw std::invalid_argument("weight_theta: need 0 < eps < 1, delta > 0");
    return make_multiplier(grid, "theta",
                           [=](double k) { return cplx(theta_hat(k, eps, delta), 0.0); });
}

Multiplier weight_theta_inv(const GridPtr& grid, double eps, double delta) {
    if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0))
        throw std::invalid_argument("weight_theta_inv: need 0 < eps < 1, delta > 0");
    return make_multiplier(grid, "theta_inv",
                           [=](double k) { return cplx(1.0 / theta_hat(k, eps, delta), 0.0); });
}

std::pair<Multiplier, Multiplier> projections(const GridPtr& grid, double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("projections: alpha must be positive");
    Multiplier low = make_multiplier(grid, "P_low", [=](double k) {
        return cplx(std::fabs(k) <= alpha ? 1.0 : 0.0, 0.0);
    });
    Multiplier high = make_multiplier(grid, "P_high", [=](double k) {
        return cplx(std::fabs(k) <= alpha ? 0.0 : 1.0, 0.0);
    });
    return {low, high};
}

double kernel_t_value(double k, int j, const CarrierParams& p, double eps) {
    if (std::fabs(k) > p.delta)
        return 0.0;
    const double jk0 = j * p.k0;
    const double nonres = std::tanh(k) - 2.0 * std::tanh(jk0) - std::tanh(k - 2.0 * jk0);
    // -(k (k - j k0) theta(k - 2 j k0)) / (theta(k) tanh(k) tanh(j k0) tanh(k - j k0) nonres),
    // with the trivial resonance k/tanh(k) continued by 1 at k = 0.
    const double num = x_over_tanh(k) * x_over_tanh(k - jk0) * theta_hat(k - 2.0 * jk0, eps, p.delta);
    const double den = theta_hat(k, eps, p.delta) * std::tanh(jk0) * nonres;
    return -num / den;
}

Multiplier kernel_t(const GridPtr& grid, int j, const CarrierParams& p, double eps) {
    if (j != 1 && j != -1)
        throw std::invalid_argument("kernel_t: j must be +1 or -1");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("kernel_t: need 0 < eps < 1");
    if (!(nonresonance_margin(p) > 1e-6))
        throw std::invalid_argument("kernel_t: non-resonance margin too small");
    return make_multiplier(grid, j > 0 ? "t_+1" : "t_-1",
                           [=](double k) { return cplx(kernel_t_value(k, j, p, eps), 0.0); });
}

std::pair<double, double> verify_tanh_identity(double k, double m) {
    const double lhs = std::tanh(k) - std::tanh(m) - std::tanh(k - m);
    const double rhs = -std::tanh(k) * std::tanh(m) * std::tanh(k - m);
    return {lhs, rhs};
}

} // namespace tanhwave
