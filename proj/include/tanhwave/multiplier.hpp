#pragma once

#include "tanhwave/carrier.hpp"
#include "tanhwave/spectral.hpp"

#include <functional>
#include <string>
#include <utility>

namespace tanhwave {

// A Fourier multiplier sampled on the grid wavenumbers. Symbols that map real
// fields to real fields satisfy m(-k) = conj(m(k)); the constructor enforces
// this at the self-conjugate Nyquist entry by dropping its imaginary part.
struct Multiplier {
    std::string name;
    GridPtr grid;
    std::vector<cplx> symbol;

    cplx at_index(int i) const { return symbol[i]; }
};

Multiplier make_multiplier(const GridPtr& grid, std::string name,
                           const std::function<cplx(double)>& symbol_fn);

Field apply(const Multiplier& m, const Field& f);
Spectrum apply(const Multiplier& m, const Spectrum& s);
Multiplier compose(const Multiplier& a, const Multiplier& b); // symbol product

Multiplier identity_multiplier(const GridPtr& grid);
Multiplier k0_multiplier(const GridPtr& grid);         // -i tanh(k)
Multiplier hilbert_multiplier(const GridPtr& grid);    // -i sign(k)
Multiplier k0_inv_dx(const GridPtr& grid);             // -k/tanh(k), -1 at k = 0

Multiplier weight_theta(const GridPtr& grid, double eps, double delta);
Multiplier weight_theta_inv(const GridPtr& grid, double eps, double delta);

// {P_{0,alpha}, P_{alpha,inf}} sharp cutoff pair; they sum to the identity.
std::pair<Multiplier, Multiplier> projections(const GridPtr& grid, double alpha);

// Cubic normal-form kernel t_j, j = +-1. Supported in |k| <= delta; the
// k/tanh(k) factor is continued by 1 at k = 0. Construction refuses
// parameter sets whose non-resonance margin is not safely positive.
Multiplier kernel_t(const GridPtr& grid, int j, const CarrierParams& params, double eps);

// Pointwise kernel value (shared by the multiplier and the convolution oracle).
double kernel_t_value(double k, int j, const CarrierParams& params, double eps);

double theta_hat(double k, double eps, double delta);

// Returns {LHS, RHS} of tanh(k) - tanh(m) - tanh(k-m) = -tanh(k) tanh(m) tanh(k-m).
std::pair<double, double> verify_tanh_identity(double k, double m);

} // namespace tanhwave
