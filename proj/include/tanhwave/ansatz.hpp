#pragma once

#include "tanhwave/carrier.hpp"
#include "tanhwave/envelope.hpp"
#include "tanhwave/spectral.hpp"

#include <map>

namespace tanhwave {

// Corrector depth of the wave-packet ansatz.
//   basic:      carrier pair plus the quadratic correctors (mean flow A0,
//               second harmonic A2) at relative weight eps.
//   corrected2: adds the cubic layer (third harmonic A3 and the first
//               corrections A2', A0') at relative weight eps^2, pushing the
//               formal residual one order higher.
enum class AnsatzOrder { basic, corrected2 };

// The assembled approximation psi with u = eps * psi. Packet j holds the full
// mode-j contribution to psi (relative eps weights folded in), band-limited to
// |k - j k0| <= delta. psi = psi_c + eps * psi_s with psi_c the carrier pair.
struct AnsatzBundle {
    CarrierParams params;
    double eps = 0.0;
    double t = 0.0;
    AnsatzOrder order = AnsatzOrder::basic;
    Envelope env; // envelope at T = eps^2 t
    GridPtr grid; // fast grid
    std::map<int, Spectrum> packets;
    Field psi_c;
    Field psi_s;
    double truncated_fraction = 0.0; // worst cutoff-lost spectral mass fraction
};

// Second-harmonic corrector: A2 = k0 A1^2 / (2 omega0 - tanh(2 k0)),
// the choice that cancels the eps^2 E^2 residual terms.
std::vector<cplx> corrector_a2(const std::vector<cplx>& a1, const CarrierParams& p);

// Mean-flow corrector: A0 = -|A1|^2 / (1 - cg), zero integration constant.
std::vector<cplx> corrector_a0(const std::vector<cplx>& a1, const CarrierParams& p);

// Assemble the cutoff ansatz at time t from the envelope (already evolved to
// T = eps^2 t). The fast grid must carry k0 exactly and satisfy
// slow length = eps * fast length.
AnsatzBundle assemble_psi(const Envelope& env, double t, double eps, const CarrierParams& p,
                          AnsatzOrder order, const GridPtr& fast_grid);

Field psi_total(const AnsatzBundle& b); // psi_c + eps psi_s

// Exact d/dt of the assembled ansatz via the chain rule, with dA/dT from the
// envelope equation and the corrector time derivatives in closed form.
Field psi_time_derivative(const AnsatzBundle& b);

// Res(eps psi) = -d/dt(eps psi) + K0(eps psi) - eps psi d/dx(eps psi).
Field residual(const AnsatzBundle& b);

// Plain carrier-pair approximation psi_NLS (no cutoff, no correctors);
// u_NLS = eps * psi_NLS is the subtraction target of the validity metric.
Field nls_packet_field(const Envelope& env, double t, const CarrierParams& p,
                       const GridPtr& fast_grid);

} // namespace tanhwave
