#pragma once

#include "tanhwave/grid.hpp"

#include <complex>
#include <vector>

namespace tanhwave {

using cplx = std::complex<double>;

// Point samples on a grid. Real-valued fields keep samples in complex storage
// (the solver and the ansatz machinery mix real and complex data freely);
// real_valued records the intent and is checked where it matters.
struct Field {
    GridPtr grid;
    std::vector<cplx> v;
    bool real_valued = true;

    int size() const { return static_cast<int>(v.size()); }
};

// DFT coefficients in FFT storage order, normalized so that
// f(x) = sum_k c(k) e^{i k x}. For real fields c(-k) = conj(c(k)).
struct Spectrum {
    GridPtr grid;
    std::vector<cplx> c;

    int size() const { return static_cast<int>(c.size()); }
};

Field zero_field(const GridPtr& grid, bool real_valued = true);
Spectrum zero_spectrum(const GridPtr& grid);

Spectrum forward_transform(const Field& f);
Field inverse_transform(const Spectrum& s);

// 2/3-rule product: both inputs truncated to |m| <= dealias_limit, multiplied
// pointwise, result truncated again. Exact product of the band-limited inputs.
Field dealiased_product(const Field& f, const Field& g);
Spectrum dealiased_product_spectrum(const Spectrum& f, const Spectrum& g);

Field derivative(const Field& f, int order);
Spectrum derivative(const Spectrum& s, int order);
void truncate_above(Spectrum& s, int mode_limit);

// Continuum-normalized norms: the L2 norm carries the dx weight, and
// ||f||_{H^s}^2 = L * sum_k |c(k)|^2 (1+k^2)^s, so H^0 equals L2.
double l2_norm(const Field& f);
double sobolev_norm(const Field& f, double s);
double sobolev_norm(const Spectrum& s, double order);
double linf_norm(const Field& f);
double max_imag(const Field& f);

double integral(const Field& f);                  // int f dx (real part)
double inner_product(const Field& f, const Field& g); // int f g dx (real part)
// int f g h dx with the pairwise product dealiased; exact for band-limited factors.
double triple_product_integral(const Field& f, const Field& g, const Field& h);

// Elementwise helpers (value semantics, inputs never mutated).
Field add(const Field& a, const Field& b);
Field sub(const Field& a, const Field& b);
Field scaled(const Field& a, cplx factor);
void add_scaled(Field& acc, const Field& a, cplx factor);
Spectrum add(const Spectrum& a, const Spectrum& b);
Spectrum sub(const Spectrum& a, const Spectrum& b);
Spectrum scaled(const Spectrum& a, cplx factor);
void add_scaled(Spectrum& acc, const Spectrum& a, cplx factor);

Field real_part(const Field& f);
Field conj_field(const Field& f);

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* where);

} // namespace tanhwave
