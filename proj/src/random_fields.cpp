#include "tanhwave/random_fields.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tanhwave {

Field random_band_limited(const GridPtr& grid, std::uint64_t seed, double kmin, double kmax) {
    if (!(kmax > kmin) || !(kmin >= 0.0))
        throw std::invalid_argument("random_band_limited: need 0 <= kmin < kmax");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Spectrum s = zero_spectrum(grid);
    const int n = grid->num_points();
    for (int m = 1; m < n / 2; ++m) {
        const double k = grid->wavenumber_spacing() * m;
        if (k < kmin || k > kmax)
            continue;
        const double amp = std::exp(-(k / kmax) * (k / kmax));
        const cplx c(amp * gauss(rng), amp * gauss(rng));
        s.c[grid->index_of_mode(m)] = c;
        s.c[grid->index_of_mode(-m)] = std::conj(c);
    }
    Field f = inverse_transform(s);
    f.real_valued = true;
    return f;
}

Field random_with_norm(const GridPtr& grid, std::uint64_t seed, double kmin, double kmax,
                       double s, double target) {
    Field f = random_band_limited(grid, seed, kmin, kmax);
    const double norm = sobolev_norm(f, s);
    if (!(norm > 0.0))
        throw std::runtime_error("random_with_norm: empty band");
    return scaled(f, target / norm);
}

} // namespace tanhwave
