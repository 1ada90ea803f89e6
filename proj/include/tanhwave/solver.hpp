#pragma once

#include "tanhwave/multiplier.hpp"
#include "tanhwave/spectral.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tanhwave {

// Time integration of du/dt = K0 u - u u_x with the linear flow handled by its
// exact propagator and the quadratic term dealiased. The linear symbol can be
// swapped (Hilbert variant) or the nonlinearity disabled for control runs.
struct SolverConfig {
    double dt = 0.05;
    double t_end = 0.0;
    int observer_stride = 1; // in steps
    Multiplier linear_symbol; // K0 by default (set by make_solver_config)
    bool nonlinear = true;
};

SolverConfig make_solver_config(const GridPtr& grid, double dt, double t_end,
                                int observer_stride = 1);

struct SimulationState {
    double t = 0.0;
    Field u;
    long step_count = 0;
};

struct RunLog {
    double dt = 0.0;
    long steps = 0;
    std::vector<double> times;
    std::vector<std::vector<double>> observations; // one row per sample
    std::vector<std::string> warnings;
    bool nan_detected = false;
};

// -u u_x as a dealiased product; equal to -(1/2) d/dx (u^2) to roundoff.
Field rhs_nonlinear(const Field& u);

// One integrating-factor RK4 step of the spectral state.
class IfRk4 {
  public:
    IfRk4(const GridPtr& grid, const Multiplier& linear_symbol, double dt, bool nonlinear);

    void step(Spectrum& uhat) const;
    double dt() const { return dt_; }

  private:
    GridPtr grid_;
    double dt_;
    bool nonlinear_;
    std::vector<cplx> e_half_, e_full_; // exp(symbol * dt/2), exp(symbol * dt)
};

using Observer = std::function<std::vector<double>(const SimulationState&)>;

// Advance to t_end, sampling the observer every observer_stride steps
// (plus the initial and final states). Deterministic for a fixed config.
RunLog run(const Field& initial, const SolverConfig& config, const Observer& observer);

// Convenience single-step interface matching the state/config contract.
void step(SimulationState& state, const SolverConfig& config);

} // namespace tanhwave
