#include "tanhwave/spectral.hpp"

#include "tanhwave/fft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tanhwave {

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* where) {
    if (!a || !b || !a->same_as(*b))
        throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

Field zero_field(const GridPtr& grid, bool real_valued) {
    return Field{grid, std::vector<cplx>(grid->num_points(), cplx(0.0, 0.0)), real_valued};
}

Spectrum zero_spectrum(const GridPtr& grid) {
    return Spectrum{grid, std::vector<cplx>(grid->num_points(), cplx(0.0, 0.0))};
}

Spectrum forward_transform(const Field& f) {
    const int n = f.grid->num_points();
    Spectrum s{f.grid, std::vector<cplx>(n)};
    FftPlan::get(n).forward(f.v.data(), s.c.data());
    const double inv_n = 1.0 / n;
    for (auto& c : s.c)
        c *= inv_n;
    return s;
}

Field inverse_transform(const Spectrum& s) {
    const int n = s.grid->num_points();
    Field f{s.grid, std::vector<cplx>(n), false};
    FftPlan::get(n).backward(s.c.data(), f.v.data());
    // Flag realness when the samples come out numerically real.
    double max_im = 0.0, max_abs = 0.0;
    for (const auto& z : f.v) {
        max_im = std::max(max_im, std::abs(z.imag()));
        max_abs = std::max(max_abs, std::abs(z));
    }
    f.real_valued = (max_im <= 1e-12 * std::max(max_abs, 1e-300));
    return f;
}

void truncate_above(Spectrum& s, int mode_limit) {
    const int n = s.grid->num_points();
    for (int i = 0; i < n; ++i) {
        int m = s.grid->mode_of_index(i);
        if (std::abs(m) > mode_limit)
            s.c[i] = cplx(0.0, 0.0);
    }
}

Spectrum dealiased_product_spectrum(const Spectrum& fs, const Spectrum& gs) {
    require_same_grid(fs.grid, gs.grid, "dealiased_product");
    const int lim = fs.grid->dealias_limit();
    Spectrum ft = fs, gt = gs;
    truncate_above(ft, lim);
    truncate_above(gt, lim);
    Field fp = inverse_transform(ft);
    Field gp = inverse_transform(gt);
    for (int i = 0; i < fp.size(); ++i)
        fp.v[i] *= gp.v[i];
    Spectrum prod = forward_transform(fp);
    truncate_above(prod, lim);
    return prod;
}

Field dealiased_product(const Field& f, const Field& g) {
    Spectrum prod = dealiased_product_spectrum(forward_transform(f), forward_transform(g));
    Field out = inverse_transform(prod);
    out.real_valued = f.real_valued && g.real_valued;
    return out;
}

Spectrum derivative(const Spectrum& s, int order) {
    if (order < 0)
        throw std::invalid_argument("derivative: order must be >= 0");
    Spectrum out = s;
    if (order == 0)
        return out;
    const int n = s.grid->num_points();
    for (int i = 0; i < n; ++i) {
        const double k = s.grid->wavenumber(i);
        cplx ik(0.0, k);
        cplx fac = 1.0;
        for (int p = 0; p < order; ++p)
            fac *= ik;
        // Odd derivatives of the self-conjugate Nyquist mode have no real
        // representation; zero it so real fields stay real.
        if (i == n / 2 && (order % 2) == 1)
            fac = 0.0;
        out.c[i] *= fac;
    }
    return out;
}

Field derivative(const Field& f, int order) {
    Spectrum s = derivative(forward_transform(f), order);
    Field out = inverse_transform(s);
    out.real_valued = f.real_valued;
    return out;
}

double l2_norm(const Field& f) {
    double acc = 0.0;
    for (const auto& z : f.v)
        acc += std::norm(z);
    return std::sqrt(acc * f.grid->spacing());
}

double sobolev_norm(const Spectrum& s, double order) {
    double acc = 0.0;
    const int n = s.grid->num_points();
    for (int i = 0; i < n; ++i) {
        const double k = s.grid->wavenumber(i);
        acc += std::norm(s.c[i]) * std::pow(1.0 + k * k, order);
    }
    return std::sqrt(acc * s.grid->length());
}

double sobolev_norm(const Field& f, double s) {
    return sobolev_norm(forward_transform(f), s);
}

double linf_norm(const Field& f) {
    double m = 0.0;
    for (const auto& z : f.v)
        m = std::max(m, std::abs(z));
    return m;
}

double max_imag(const Field& f) {
    double m = 0.0;
    for (const auto& z : f.v)
        m = std::max(m, std::abs(z.imag()));
    return m;
}

double integral(const Field& f) {
    double acc = 0.0;
    for (const auto& z : f.v)
        acc += z.real();
    return acc * f.grid->spacing();
}

double inner_product(const Field& f, const Field& g) {
    require_same_grid(f.grid, g.grid, "inner_product");
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i)
        acc += (f.v[i] * g.v[i]).real();
    return acc * f.grid->spacing();
}

double triple_product_integral(const Field& f, const Field& g, const Field& h) {
    return inner_product(dealiased_product(f, g), h);
}

Field add(const Field& a, const Field& b) {
    require_same_grid(a.grid, b.grid, "add");
    Field out = a;
    for (int i = 0; i < out.size(); ++i)
        out.v[i] += b.v[i];
    out.real_valued = a.real_valued && b.real_valued;
    return out;
}

Field sub(const Field& a, const Field& b) {
    require_same_grid(a.grid, b.grid, "sub");
    Field out = a;
    for (int i = 0; i < out.size(); ++i)
        out.v[i] -= b.v[i];
    out.real_valued = a.real_valued && b.real_valued;
    return out;
}

Field scaled(const Field& a, cplx factor) {
    Field out = a;
    for (auto& z : out.v)
        z *= factor;
    out.real_valued = a.real_valued && factor.imag() == 0.0;
    return out;
}

void add_scaled(Field& acc, const Field& a, cplx factor) {
    require_same_grid(acc.grid, a.grid, "add_scaled");
    for (int i = 0; i < acc.size(); ++i)
        acc.v[i] += factor * a.v[i];
    acc.real_valued = acc.real_valued && a.real_valued && factor.imag() == 0.0;
}

Spectrum add(const Spectrum& a, const Spectrum& b) {
    require_same_grid(a.grid, b.grid, "add");
    Spectrum out = a;
    for (int i = 0; i < out.size(); ++i)
        out.c[i] += b.c[i];
    return out;
}

Spectrum sub(const Spectrum& a, const Spectrum& b) {
    require_same_grid(a.grid, b.grid, "sub");
    Spectrum out = a;
    for (int i = 0; i < out.size(); ++i)
        out.c[i] -= b.c[i];
    return out;
}

Spectrum scaled(const Spectrum& a, cplx factor) {
    Spectrum out = a;
    for (auto& z : out.c)
        z *= factor;
    return out;
}

void add_scaled(Spectrum& acc, const Spectrum& a, cplx factor) {
    require_same_grid(acc.grid, a.grid, "add_scaled");
    for (int i = 0; i < acc.size(); ++i)
        acc.c[i] += factor * a.c[i];
}

Field real_part(const Field& f) {
    Field out = f;
    for (auto& z : out.v)
        z = cplx(z.real(), 0.0);
    out.real_valued = true;
    return out;
}

Field conj_field(const Field& f) {
    Field out = f;
    for (auto& z : out.v)
        z = std::conj(z);
    return out;
}

} // namespace tanhwave
