#include "tanhwave/ansatz.hpp"

#include "tanhwave/multiplier.hpp"

#include <cmath>
#include <stdexcept>

namespace tanhwave {

namespace {

// Coefficients of the corrector hierarchy. The quadratic pair (c2, c0) is the
// unique choice cancelling the eps^2 E^2 / eps^3 E^0 rows of the residual;
// the cubic layer (c3, c21, c01) cancels the eps^3 E^3 / eps^3 E^2 / eps^4 E^0
// rows. All follow from expanding tanh(j k0 + eps K) around j k0.
struct CorrectorCoeffs {
    double c2;   // A2  = c2 * A^2
    double c0;   // A0  = c0 * |A|^2
    double c3;   // A3  = c3 * c2 * A^3
    cplx c21;    // A2' = c21 * A * A_X
    double c01;  // A0' = c01 * Im(conj(A) A_X)
    double mu2;  // cg - tanh'(2 k0)
};

CorrectorCoeffs corrector_coeffs(const CarrierParams& p) {
    CorrectorCoeffs c{};
    const double lam2 = 2.0 * p.omega0 - std::tanh(2.0 * p.k0);
    const double lam3 = 3.0 * p.omega0 - std::tanh(3.0 * p.k0);
    const double th2 = std::tanh(2.0 * p.k0);
    c.c2 = p.k0 / lam2;
    c.c0 = -1.0 / (1.0 - p.cg);
    c.c3 = 3.0 * p.k0 / lam3;
    c.mu2 = p.cg - (1.0 - th2 * th2);
    c.c21 = cplx(0.0, -1.0) * (1.0 - 2.0 * c.mu2 * c.c2) / lam2;
    c.c01 = -2.0 * p.nu1 / ((1.0 - p.cg) * (1.0 - p.cg));
    return c;
}

// One mode family of the ansatz: slow-grid values, their T-derivative, the
// carrier multiple j, and the eps power the family carries inside psi.
struct Family {
    int j;
    double weight;
    std::vector<cplx> vals;
    std::vector<cplx> tvals;
};

std::vector<Family> build_families(const Envelope& env, double eps, const CarrierParams& p,
                                   AnsatzOrder order) {
    const auto cc = corrector_coeffs(p);
    const Field& a = env.a;
    const Field at = nls_rhs(a, p);
    const Field ax = derivative(a, 1);
    const Field atx = derivative(at, 1);
    const int n = a.size();

    auto conj_of = [&](const std::vector<cplx>& v) {
        std::vector<cplx> out(v.size());
        for (size_t i = 0; i < v.size(); ++i)
            out[i] = std::conj(v[i]);
        return out;
    };

    std::vector<Family> fams;

    // j = +-1: the carrier pair, weight 1.
    fams.push_back({1, 1.0, a.v, at.v});
    fams.push_back({-1, 1.0, conj_of(a.v), conj_of(at.v)});

    // j = 0 and j = +-2: quadratic correctors, weight eps.
    std::vector<cplx> a2(n), a2t(n), a0(n), a0t(n);
    for (int i = 0; i < n; ++i) {
        const cplx A = a.v[i], At = at.v[i];
        a2[i] = cc.c2 * A * A;
        a2t[i] = 2.0 * cc.c2 * A * At;
        a0[i] = cc.c0 * std::norm(A);
        a0t[i] = 2.0 * cc.c0 * (std::conj(A) * At).real();
    }
    if (order == AnsatzOrder::corrected2) {
        for (int i = 0; i < n; ++i) {
            const cplx A = a.v[i], At = at.v[i], Ax = ax.v[i], Atx = atx.v[i];
            a2[i] += eps * cc.c21 * A * Ax;
            a2t[i] += eps * cc.c21 * (At * Ax + A * Atx);
            a0[i] += eps * cc.c01 * (std::conj(A) * Ax).imag();
            a0t[i] += eps * cc.c01 * (std::conj(At) * Ax + std::conj(A) * Atx).imag();
        }
    }
    fams.push_back({0, eps, a0, a0t});
    fams.push_back({2, eps, a2, a2t});
    fams.push_back({-2, eps, conj_of(a2), conj_of(a2t)});

    if (order == AnsatzOrder::corrected2) {
        std::vector<cplx> a3(n), a3t(n);
        for (int i = 0; i < n; ++i) {
            const cplx A = a.v[i], At = at.v[i];
            a3[i] = cc.c3 * cc.c2 * A * A * A;
            a3t[i] = 3.0 * cc.c3 * cc.c2 * A * A * At;
        }
        fams.push_back({3, eps * eps, a3, a3t});
        fams.push_back({-3, eps * eps, conj_of(a3), conj_of(a3t)});
    }
    return fams;
}

int carrier_mode_index(const GridPtr& fast, double k0) {
    const double dk = fast->wavenumber_spacing();
    const int m0 = static_cast<int>(std::lround(k0 / dk));
    if (std::fabs(m0 * dk - k0) > 1e-9 * k0)
        throw std::invalid_argument("assemble_psi: k0 is not a fast-grid wavenumber");
    return m0;
}

// Place a family on the fast grid. With L_X = eps * L, slow mode m lands
// exactly at fast wavenumber j k0 + m dk; its time phase combines the carrier
// rotation and the group-velocity translation of the envelope.
// mode_limit < 0 disables the packet cutoff.
// When time_derivative is set, assembles d/dt of the packet instead.
void place_family(Spectrum& target, const Family& fam, const Envelope& env, double t,
                  double eps, const CarrierParams& p, int m0, int mode_limit,
                  bool time_derivative, double* lost_fraction) {
    const GridPtr& fast = target.grid;
    const GridPtr& slow = env.slow_grid;
    const double dk = fast->wavenumber_spacing();
    const int ns = slow->num_points();

    Spectrum sv = forward_transform(Field{slow, fam.vals, false});
    Spectrum st;
    if (time_derivative)
        st = forward_transform(Field{slow, fam.tvals, false});

    double kept = 0.0, total = 0.0;
    for (int m = -ns / 2 + 1; m < ns / 2; ++m) {
        const cplx cv = sv.c[slow->index_of_mode(m)];
        total += std::norm(cv);
        if (mode_limit >= 0 && std::abs(m) > mode_limit)
            continue;
        kept += std::norm(cv);
        const int fast_mode = fam.j * m0 + m;
        if (fast_mode <= -fast->num_points() / 2 || fast_mode >= fast->num_points() / 2)
            throw std::invalid_argument("assemble_psi: packet exceeds fast-grid bandwidth");
        const double omega = fam.j * p.omega0 + m * dk * p.cg;
        const cplx phase(std::cos(omega * t), -std::sin(omega * t));
        cplx coeff;
        if (time_derivative)
            coeff = (cplx(0.0, -omega) * cv + eps * eps * st.c[slow->index_of_mode(m)]) * phase;
        else
            coeff = cv * phase;
        target.c[fast->index_of_mode(fast_mode)] += fam.weight * coeff;
    }
    if (lost_fraction && total > 0.0)
        *lost_fraction = std::max(*lost_fraction, 1.0 - kept / total);
}

void check_geometry(const Envelope& env, double t, double eps, const GridPtr& fast) {
    const double lx = env.slow_grid->length();
    if (std::fabs(lx - eps * fast->length()) > 1e-9 * lx)
        throw std::invalid_argument("assemble_psi: slow grid length must equal eps * fast length");
    if (std::fabs(env.T - eps * eps * t) > 1e-8 * (1.0 + std::fabs(env.T)))
        throw std::invalid_argument("assemble_psi: envelope not evolved to T = eps^2 t");
}

} // namespace

std::vector<cplx> corrector_a2(const std::vector<cplx>& a1, const CarrierParams& p) {
    const auto cc = corrector_coeffs(p);
    std::vector<cplx> out(a1.size());
    for (size_t i = 0; i < a1.size(); ++i)
        out[i] = cc.c2 * a1[i] * a1[i];
    return out;
}

std::vector<cplx> corrector_a0(const std::vector<cplx>& a1, const CarrierParams& p) {
    const auto cc = corrector_coeffs(p);
    std::vector<cplx> out(a1.size());
    for (size_t i = 0; i < a1.size(); ++i)
        out[i] = cplx(cc.c0 * std::norm(a1[i]), 0.0);
    return out;
}

AnsatzBundle assemble_psi(const Envelope& env, double t, double eps, const CarrierParams& p,
                          AnsatzOrder order, const GridPtr& fast_grid) {
    check_geometry(env, t, eps, fast_grid);
    const int m0 = carrier_mode_index(fast_grid, p.k0);
    const double dk = fast_grid->wavenumber_spacing();
    const int cutoff_modes = static_cast<int>(std::floor(p.delta / dk + 1e-12));

    AnsatzBundle b;
    b.params = p;
    b.eps = eps;
    b.t = t;
    b.order = order;
    b.env = env;
    b.grid = fast_grid;

    auto fams = build_families(env, eps, p, order);
    Spectrum carrier_sum = zero_spectrum(fast_grid);
    Spectrum corrector_sum = zero_spectrum(fast_grid);
    for (const auto& fam : fams) {
        Spectrum packet = zero_spectrum(fast_grid);
        place_family(packet, fam, env, t, eps, p, m0, cutoff_modes, false,
                     &b.truncated_fraction);
        if (std::abs(fam.j) == 1)
            carrier_sum = add(carrier_sum, packet);
        else
            corrector_sum = add(corrector_sum, packet);
        b.packets.emplace(fam.j, std::move(packet));
    }
    b.psi_c = inverse_transform(carrier_sum);
    b.psi_c.real_valued = true;
    b.psi_s = inverse_transform(scaled(corrector_sum, 1.0 / eps));
    b.psi_s.real_valued = true;
    return b;
}

Field psi_total(const AnsatzBundle& b) {
    Field out = b.psi_c;
    add_scaled(out, b.psi_s, b.eps);
    return out;
}

Field psi_time_derivative(const AnsatzBundle& b) {
    const int m0 = carrier_mode_index(b.grid, b.params.k0);
    const double dk = b.grid->wavenumber_spacing();
    const int cutoff_modes = static_cast<int>(std::floor(b.params.delta / dk + 1e-12));
    auto fams = build_families(b.env, b.eps, b.params, b.order);
    Spectrum sum = zero_spectrum(b.grid);
    for (const auto& fam : fams)
        place_family(sum, fam, b.env, b.t, b.eps, b.params, m0, cutoff_modes, true, nullptr);
    Field out = inverse_transform(sum);
    out.real_valued = true;
    return out;
}

Field residual(const AnsatzBundle& b) {
    const Field psi = psi_total(b);
    const Field psi_t = psi_time_derivative(b);
    const Field k0psi = apply(k0_multiplier(b.grid), psi);
    const Field nonlin = dealiased_product(psi, derivative(psi, 1));
    // Res(eps psi) = eps(K0 psi - psi_t) - eps^2 psi psi_x
    Field res = sub(k0psi, psi_t);
    Field out = scaled(res, b.eps);
    add_scaled(out, nonlin, -b.eps * b.eps);
    out.real_valued = true;
    return out;
}

Field nls_packet_field(const Envelope& env, double t, const CarrierParams& p,
                       const GridPtr& fast_grid) {
    const double eps = env.slow_grid->length() / fast_grid->length();
    check_geometry(env, t, eps, fast_grid);
    const int m0 = carrier_mode_index(fast_grid, p.k0);

    const Field at = nls_rhs(env.a, p);
    std::vector<cplx> av = env.a.v, atv = at.v;
    std::vector<cplx> avc(av.size()), atvc(av.size());
    for (size_t i = 0; i < av.size(); ++i) {
        avc[i] = std::conj(av[i]);
        atvc[i] = std::conj(atv[i]);
    }
    Spectrum sum = zero_spectrum(fast_grid);
    Family plus{1, 1.0, av, atv}, minus{-1, 1.0, avc, atvc};
    place_family(sum, plus, env, t, eps, p, m0, -1, false, nullptr);
    place_family(sum, minus, env, t, eps, p, m0, -1, false, nullptr);
    Field out = inverse_transform(sum);
    out.real_valued = true;
    return out;
}

} // namespace tanhwave
