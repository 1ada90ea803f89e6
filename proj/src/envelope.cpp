#include "tanhwave/envelope.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tanhwave {

Field nls_rhs(const Field& a, const CarrierParams& p) {
    Field axx = derivative(a, 2);
    Field out = a;
    for (int i = 0; i < a.size(); ++i) {
        const cplx ai = a.v[i];
        out.v[i] = cplx(0.0, 1.0) * (p.nu1 * axx.v[i] + p.nu2 * std::norm(ai) * ai);
    }
    out.real_valued = false;
    return out;
}

namespace {
void nonlinear_half_step(Field& a, double dT, double nu2) {
    for (auto& z : a.v) {
        const double phase = nu2 * std::norm(z) * 0.5 * dT;
        z *= cplx(std::cos(phase), std::sin(phase));
    }
}
} // namespace

Envelope nls_step(const Envelope& env, double dT, const CarrierParams& p) {
    Envelope out = env;
    nonlinear_half_step(out.a, dT, p.nu2);
    Spectrum s = forward_transform(out.a);
    for (int i = 0; i < s.size(); ++i) {
        const double k = s.grid->wavenumber(i);
        const double phase = -p.nu1 * k * k * dT;
        s.c[i] *= cplx(std::cos(phase), std::sin(phase));
    }
    out.a = inverse_transform(s);
    out.a.real_valued = false;
    nonlinear_half_step(out.a, dT, p.nu2);
    out.T = env.T + dT;
    return out;
}

Envelope nls_evolve(const Envelope& env, double T_target, double dT, const CarrierParams& p) {
    Envelope cur = env;
    while (cur.T < T_target - 1e-12) {
        const double step = std::min(dT, T_target - cur.T);
        cur = nls_step(cur, step, p);
    }
    cur.T = T_target;
    return cur;
}

Envelope gaussian_envelope(const GridPtr& slow_grid, double amplitude, double width,
                           double center) {
    Field a = zero_field(slow_grid, false);
    const double L = slow_grid->length();
    for (int i = 0; i < a.size(); ++i) {
        // Periodized Gaussian; images beyond the nearest one are negligible
        // for widths a small fraction of the domain.
        double d = slow_grid->x(i) - center;
        d -= L * std::round(d / L);
        const double arg = d / width;
        a.v[i] = amplitude * std::exp(-arg * arg);
    }
    return Envelope{slow_grid, a, 0.0};
}

Envelope load_envelope(const std::string& path, const GridPtr& slow_grid) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_envelope: cannot open " + path);
    std::vector<cplx> samples;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        double x = 0.0, re = 0.0, im = 0.0;
        if (!(ls >> x >> re))
            continue; // blank or comment line
        ls >> im;
        samples.emplace_back(re, im);
        (void)x;
    }
    if (samples.size() < 2)
        throw std::runtime_error("load_envelope: no samples in " + path);

    const int n_in = static_cast<int>(samples.size());
    const int n_out = slow_grid->num_points();
    if (n_in == n_out)
        return Envelope{slow_grid, Field{slow_grid, samples, false}, 0.0};

    // Spectral resampling between uniform grids of the same period.
    GridPtr gin = make_grid(1, 1.0);
    {
        // input count must be a power of two for the transform
        if ((n_in & (n_in - 1)) != 0)
            throw std::runtime_error("load_envelope: sample count must be a power of two");
        gin = make_grid(n_in, slow_grid->length());
    }
    Spectrum sin_ = forward_transform(Field{gin, samples, false});
    Spectrum sout = zero_spectrum(slow_grid);
    const int half = std::min(n_in, n_out) / 2;
    for (int m = -half; m < half; ++m)
        sout.c[slow_grid->index_of_mode(m)] = sin_.c[gin->index_of_mode(m)];
    Field a = inverse_transform(sout);
    a.real_valued = false;
    return Envelope{slow_grid, a, 0.0};
}

} // namespace tanhwave
