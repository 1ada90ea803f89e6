#include "tanhwave/carrier.hpp"

#include <cmath>
#include <stdexcept>

namespace tanhwave {

NlsCoefficients nls_coefficients(double k0) {
    if (!(k0 > 0.0))
        throw std::invalid_argument("nls_coefficients: k0 must be positive");
    const long double k = k0;
    const long double th = std::tanh(k);
    const long double sech2 = 1.0L - th * th;
    const long double nu1 = -th * sech2; // = tanh''(k0)/2
    const long double nu2 = k * (k / (std::tanh(2.0L * k) - 2.0L * th) + 1.0L / (th * th));
    return {static_cast<double>(nu1), static_cast<double>(nu2)};
}

CarrierParams make_carrier(double k0, double delta) {
    if (!(k0 > 0.0))
        throw std::invalid_argument("make_carrier: k0 must be positive");
    if (delta <= 0.0)
        delta = 0.9 * k0 / 20.0;
    if (!(delta < k0 / 20.0))
        throw std::invalid_argument("make_carrier: delta must satisfy delta < k0/20");
    const double th = std::tanh(k0);
    auto nu = nls_coefficients(k0);
    CarrierParams p{k0, th, 1.0 - th * th, nu.nu1, nu.nu2, delta};
    if (!(nonresonance_margin(p) > 0.0))
        throw std::invalid_argument("make_carrier: non-resonance margin not positive");
    return p;
}

double nonresonance_margin(const CarrierParams& p, int scan_points) {
    if (scan_points < 2)
        throw std::invalid_argument("nonresonance_margin: need at least 2 scan points");
    double best = INFINITY;
    for (int j : {1, -1}) {
        const double t0 = 2.0 * std::tanh(j * p.k0);
        for (int i = 0; i < scan_points; ++i) {
            const double k = -p.delta + 2.0 * p.delta * i / (scan_points - 1);
            const double v = std::fabs(std::tanh(k) - t0 - std::tanh(k - 2.0 * j * p.k0));
            if (v < best)
                best = v;
        }
    }
    return best;
}

} // namespace tanhwave
