#pragma once

namespace tanhwave {

// Carrier-wave parameter bundle for the dispersion relation w(k) = tanh(k).
// nu1, nu2 are the envelope-equation coefficients
//   dA/dT = i nu1 d^2A/dX^2 + i nu2 A|A|^2
// with nu1 = (1/2) tanh''(k0) and
// nu2 = k0 ( k0/(tanh(2 k0) - 2 tanh(k0)) + 1/tanh(k0)^2 ).
struct CarrierParams {
    double k0;
    double omega0; // tanh(k0)
    double cg;     // sech(k0)^2
    double nu1;
    double nu2;
    double delta;  // packet half-width in k, < k0/20
};

// Closed forms evaluated in extended precision; returns {nu1, nu2}.
struct NlsCoefficients {
    double nu1;
    double nu2;
};
NlsCoefficients nls_coefficients(double k0);

// delta defaults to 0.9 * k0/20 when passed <= 0.
CarrierParams make_carrier(double k0, double delta = -1.0);

// Minimum over j = +-1 and |k| <= delta (scan step <= delta/1e4) of
// |tanh(k) - 2 tanh(j k0) - tanh(k - 2 j k0)|. Must stay positive for the
// cubic normal-form kernel to exist.
double nonresonance_margin(const CarrierParams& p, int scan_points = 20001);

} // namespace tanhwave
