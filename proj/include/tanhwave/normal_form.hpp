#pragma once

#include "tanhwave/ansatz.hpp"
#include "tanhwave/carrier.hpp"
#include "tanhwave/spectral.hpp"

#include <string>
#include <vector>

namespace tanhwave {

// Rescaled approximation error: u = eps psi_c + eps^2 psi_s + eps^beta theta R.
struct ErrorField {
    Field R;
    double eps = 0.0;
    double beta = 2.5;
    std::string definition; // which psi was subtracted
};

// Modified energies built on the normal-form operators:
//   E~_0 = ||R_check||_L2^2,
//   E~_l = 1/2 ||d^l R||^2 + eps int d^l R d^l N(psi_c, R) dx   (l >= 1).
struct ModEnergyReport {
    int s = 0;
    std::vector<double> levels;
    double check_r_l2 = 0.0;
    double total = 0.0;
};

// N(psi_c, R) = -theta^{-1} K0^{-1} d/dx (K0^{-1} psi_c * K0^{-1} theta P_{eps,inf} R).
// K0^{-1} is never materialized alone: it acts on the packet-supported psi_c,
// in the bounded pair K0^{-1} d/dx, and in the bounded K0^{-1} theta P_{eps,inf}.
// Refuses psi_c with spectral mass outside {|k| in [k0-delta, k0+delta]}.
Field operator_N(const Field& psi_c, const Field& R, double eps, const CarrierParams& p);

// T_j(psi_j, psi_j, R): kernel t_j(k) times the double convolution, which for a
// k-only kernel is apply(t_j, dealias(psi_j^2, R)).
Field operator_T(const Field& psi_j, const Field& R, int j, double eps,
                 const CarrierParams& p);

// R_check = R + eps N(psi_c, R) + eps^2 sum_{j=+-1} T_j(psi_j, psi_j, R).
Field check_R(const Field& R, const AnsatzBundle& bundle, double eps,
              const CarrierParams& p);

ErrorField error_field(const Field& u, const AnsatzBundle& bundle, double eps);

// Reconstruct eps psi_c + eps^2 psi_s + eps^beta theta R (round-trip check).
Field reconstruct(const ErrorField& err, const AnsatzBundle& bundle);

ModEnergyReport mod_energy(const Field& R, const AnsatzBundle& bundle, int s, double eps,
                           const CarrierParams& p);

// theta N(psi_c, f) - d/dx(K0^{-1} psi_c * f): the bounded remainder Q.
Field operator_Q(const Field& psi_c, const Field& f, double eps, const CarrierParams& p);

} // namespace tanhwave
