#pragma once

#include "tanhwave/spectral.hpp"

#include <vector>

namespace tanhwave {

// Per-level normal-form energies
//   E_0 = 1/2 ||u||^2,
//   E_l = 1/2 ||d^l u||^2
//         + sum_{a=1}^{l-1} C(l,a) int G_l G_a G_{l-a+1} dx
//         + 1/2 int G_l G_l G_1 dx,          G_m := K0^{-1} d^m u,
// where every G_m is computed through the bounded combination K0^{-1} d/dx
// applied to d^{m-1} u. Cubic integrals use dealiased pairwise products.
struct EnergyReport {
    int s = 0;
    std::vector<double> levels;               // E_l, l = 0..s
    std::vector<double> sobolev_half_squares; // 1/2 ||d^l u||^2
    std::vector<double> cubic_remainder;      // E_l minus the quadratic part
    double total = 0.0;                       // sum of levels
};

EnergyReport energy_E(const Field& u, int s);

// ||[K0^{-1}, u] u_x||_{H^j} / (||u||_{H^{1+q}} ||u||_{H^j}). The commutator
// acts on u u_x = (1/2) d/dx(u^2); the mean of u^2 is projected out before the
// inversion, matching the continuum where the k = 0 resonance is trivial.
double commutator_ratio(const Field& u, int j, double q);

} // namespace tanhwave
