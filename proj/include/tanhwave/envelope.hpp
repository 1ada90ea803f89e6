#pragma once

#include "tanhwave/carrier.hpp"
#include "tanhwave/spectral.hpp"

#include <string>

namespace tanhwave {

// Complex amplitude A(X, T) on the slow grid X in [0, L_X), L_X = eps * L.
struct Envelope {
    GridPtr slow_grid;
    Field a; // complex
    double T = 0.0;
};

// dA/dT = i nu1 A_XX + i nu2 A |A|^2, evaluated spectrally.
Field nls_rhs(const Field& a, const CarrierParams& p);

// Strang split step: half nonlinear phase rotation, exact linear spectral
// step exp(-i nu1 K^2 dT), half nonlinear. Conserves ||A||_L2 to roundoff.
Envelope nls_step(const Envelope& env, double dT, const CarrierParams& p);
Envelope nls_evolve(const Envelope& env, double T_target, double dT, const CarrierParams& p);

Envelope gaussian_envelope(const GridPtr& slow_grid, double amplitude, double width,
                           double center);

// Two-column text format: each line "X  Re(A) [Im(A)]"; samples must be on a
// uniform grid covering [0, L_X) and are spectrally resampled if the point
// count differs from the target grid.
Envelope load_envelope(const std::string& path, const GridPtr& slow_grid);

} // namespace tanhwave
