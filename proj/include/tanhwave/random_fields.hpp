#pragma once

#include "tanhwave/spectral.hpp"

#include <cstdint>

namespace tanhwave {

// Seeded real random field with Hermitian spectrum supported on
// kmin <= |k| <= kmax and Gaussian mode amplitudes damped by
// exp(-(k/kmax)^2). Deterministic for a fixed seed and grid.
Field random_band_limited(const GridPtr& grid, std::uint64_t seed, double kmin, double kmax);

// Same field rescaled so that ||u||_{H^s} = target.
Field random_with_norm(const GridPtr& grid, std::uint64_t seed, double kmin, double kmax,
                       double s, double target);

} // namespace tanhwave
