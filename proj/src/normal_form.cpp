#include "tanhwave/normal_form.hpp"

#include "tanhwave/multiplier.hpp"

#include <cmath>
#include <stdexcept>

namespace tanhwave {

namespace {

// K0^{-1} restricted to the carrier packet band: i/tanh(k) on
// {k0 - delta <= |k| <= k0 + delta}, zero elsewhere.
Multiplier k0_inv_on_packband(const GridPtr& grid, const CarrierParams& p) {
    return make_multiplier(grid, "K0inv|pack", [&](double k) {
        const double a = std::fabs(k);
        if (a < p.k0 - p.delta - 1e-12 || a > p.k0 + p.delta + 1e-12)
            return cplx(0.0, 0.0);
        return cplx(0.0, 1.0 / std::tanh(k));
    });
}

// Bounded combination K0^{-1} theta P_{eps,inf}: i theta(k)/tanh(k) outside
// |k| <= eps, zero inside. Its sup is (1+delta)/tanh(delta).
Multiplier k0_inv_theta_phigh(const GridPtr& grid, double eps, const CarrierParams& p) {
    return make_multiplier(grid, "K0inv*theta*P_high", [&, eps](double k) {
        if (std::fabs(k) <= eps)
            return cplx(0.0, 0.0);
        return cplx(0.0, theta_hat(k, eps, p.delta) / std::tanh(k));
    });
}

void require_packet_support(const Field& psi_c, const CarrierParams& p, const char* where) {
    Spectrum s = forward_transform(psi_c);
    double inside = 0.0, outside = 0.0;
    for (int i = 0; i < s.size(); ++i) {
        const double a = std::fabs(s.grid->wavenumber(i));
        const double m = std::norm(s.c[i]);
        if (a >= p.k0 - p.delta - 1e-12 && a <= p.k0 + p.delta + 1e-12)
            inside += m;
        else
            outside += m;
    }
    if (outside > 1e-20 * std::max(inside, 1e-300))
        throw std::invalid_argument(std::string(where) +
                                    ": psi_c has spectral mass outside the packet band");
}

} // namespace

Field operator_N(const Field& psi_c, const Field& R, double eps, const CarrierParams& p) {
    require_same_grid(psi_c.grid, R.grid, "operator_N");
    require_packet_support(psi_c, p, "operator_N");
    const GridPtr& g = psi_c.grid;

    Field lhs = apply(k0_inv_on_packband(g, p), psi_c);
    Field rhs = apply(k0_inv_theta_phigh(g, eps, p), R);
    Field prod = dealiased_product(lhs, rhs);

    Multiplier outer = compose(weight_theta_inv(g, eps, p.delta), k0_inv_dx(g));
    Field out = inverse_transform(apply(outer, forward_transform(prod)));
    return scaled(out, -1.0);
}

Field operator_T(const Field& psi_j, const Field& R, int j, double eps,
                 const CarrierParams& p) {
    require_same_grid(psi_j.grid, R.grid, "operator_T");
    Field psi_sq = dealiased_product(psi_j, psi_j);
    Field conv = dealiased_product(psi_sq, R);
    return apply(kernel_t(psi_j.grid, j, p, eps), conv);
}

Field check_R(const Field& R, const AnsatzBundle& bundle, double eps,
              const CarrierParams& p) {
    Field out = R;
    add_scaled(out, operator_N(bundle.psi_c, R, eps, p), eps);
    for (int j : {1, -1}) {
        Field psi_j = inverse_transform(bundle.packets.at(j));
        add_scaled(out, operator_T(psi_j, R, j, eps, p), eps * eps);
    }
    return out;
}

ErrorField error_field(const Field& u, const AnsatzBundle& bundle, double eps) {
    require_same_grid(u.grid, bundle.grid, "error_field");
    const double beta = 2.5;
    Field diff = sub(u, scaled(psi_total(bundle), eps));
    Multiplier theta_inv = weight_theta_inv(bundle.grid, eps, bundle.params.delta);
    Field R = scaled(apply(theta_inv, diff), std::pow(eps, -beta));
    R.real_valued = u.real_valued;
    ErrorField err;
    err.R = R;
    err.eps = eps;
    err.beta = beta;
    err.definition = bundle.order == AnsatzOrder::basic ? "basic" : "corrected2";
    return err;
}

Field reconstruct(const ErrorField& err, const AnsatzBundle& bundle) {
    Multiplier theta = weight_theta(bundle.grid, err.eps, bundle.params.delta);
    Field out = scaled(psi_total(bundle), err.eps);
    add_scaled(out, apply(theta, err.R), std::pow(err.eps, err.beta));
    return out;
}

ModEnergyReport mod_energy(const Field& R, const AnsatzBundle& bundle, int s, double eps,
                           const CarrierParams& p) {
    if (s < 1)
        throw std::invalid_argument("mod_energy: s must be >= 1");
    ModEnergyReport rep;
    rep.s = s;
    rep.levels.resize(s + 1);

    rep.check_r_l2 = l2_norm(check_R(R, bundle, eps, p));
    rep.levels[0] = rep.check_r_l2 * rep.check_r_l2;

    Field n = operator_N(bundle.psi_c, R, eps, p);
    Field dl_r = R, dl_n = n;
    for (int l = 1; l <= s; ++l) {
        dl_r = derivative(dl_r, 1);
        dl_n = derivative(dl_n, 1);
        rep.levels[l] = 0.5 * inner_product(dl_r, dl_r) + eps * inner_product(dl_r, dl_n);
    }
    for (double e : rep.levels)
        rep.total += e;
    return rep;
}

Field operator_Q(const Field& psi_c, const Field& f, double eps, const CarrierParams& p) {
    const GridPtr& g = psi_c.grid;
    Field theta_n = apply(weight_theta(g, eps, p.delta), operator_N(psi_c, f, eps, p));
    Field leading = derivative(dealiased_product(apply(k0_inv_on_packband(g, p), psi_c), f), 1);
    return sub(theta_n, leading);
}

} // namespace tanhwave
